#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "nashx/groebner.hpp"
#include "nashx/pipeline.hpp"
#include "nashx/weierstrass.hpp"

using namespace nashx;

namespace {

Jet jet_of(const std::string& text, const std::vector<std::string>& vars, int order) {
  return Jet::from_poly(parse_poly(text, vars), vars, order);
}

MPoly random_poly_in(std::mt19937_64& rng, const std::vector<std::string>& vars,
                     const std::string& main_var, int deg) {
  MPoly p(vars);
  size_t mi = 0;
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == main_var) mi = i;
  for (int k = 0; k <= deg; ++k) {
    Exponents e(vars.size(), 0);
    e[mi] = k;
    int room = deg - k;
    for (size_t i = 0; i < vars.size(); ++i)
      if (i != mi && room > 0) {
        e[i] = static_cast<int>(rng() % static_cast<unsigned>(room + 1));
        room -= e[i];
      }
    long c = static_cast<long>(rng() % 11) - 5;
    if (k == deg && c == 0) c = 1;
    if (c != 0) p.set_term(e, Scalar(c));
  }
  return p;
}

void bm_resultant(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<std::string> vars{"t", "u", "v"};
  int deg = static_cast<int>(state.range(0));
  MPoly a = random_poly_in(rng, vars, "t", deg);
  MPoly b = random_poly_in(rng, vars, "t", deg);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(a, b, "t"));
}
BENCHMARK(bm_resultant)->Arg(2)->Arg(3)->Arg(4);

void bm_prepare(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  std::vector<std::string> vars{"x1", "x2"};
  Jet u = jet_of("1 + x1 + x2", vars, order) * jet_of("x2^2 - x1", vars, order);
  for (auto _ : state) benchmark::DoNotOptimize(prepare(u, 2));
}
BENCHMARK(bm_prepare)->Arg(8)->Arg(12)->Arg(16);

void bm_divide(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  std::vector<std::string> vars{"x1", "x2"};
  auto [h, w] = prepare(jet_of("1 + x1 + x2", vars, order) * jet_of("x2^2 - x1", vars, order), 2);
  Jet f = jet_of("x2^3 + x1*x2 + x1^2", vars, order);
  for (auto _ : state) benchmark::DoNotOptimize(divide(f, w));
}
BENCHMARK(bm_divide)->Arg(8)->Arg(12)->Arg(16);

void bm_eliminate(benchmark::State& state) {
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<MPoly> gens{parse_poly("z - y^2", vars), parse_poly("y^3 - x", vars)};
  for (auto _ : state)
    benchmark::DoNotOptimize(buchberger_eliminate(gens, {"x", "z"}, 10000));
}
BENCHMARK(bm_eliminate);

void bm_pipeline_hyperbola(benchmark::State& state) {
  int order = static_cast<int>(state.range(0));
  NashProblem p;
  p.x_vars = {"x"};
  p.unknowns = {"y1", "y2"};
  p.variety.ambient_vars = p.unknowns;
  p.variety.generators = {parse_poly("y1*y2 - 1", p.unknowns)};
  p.variety.codim = 1;
  p.jet_order = order;
  p.nu_min = 2;
  p.nu_max = 4;
  p.seed = 42;
  Jet e(p.x_vars, order), einv(p.x_vars, order);
  mpq_class c(1);
  for (int k = 0; k <= order; ++k) {
    e.add_term(Exponents{k}, Scalar(c));
    einv.add_term(Exponents{k}, Scalar(k % 2 == 1 ? mpq_class(-c) : c));
    c /= k + 1;
  }
  p.f = MapJet({e, einv});
  for (auto _ : state) benchmark::DoNotOptimize(approximate(p));
}
BENCHMARK(bm_pipeline_hyperbola)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
