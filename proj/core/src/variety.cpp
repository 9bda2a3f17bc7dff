#include "nashx/variety.hpp"

#include <algorithm>
#include <random>
#include <cstdlib>
#include <iostream>
#include <set>
#include <sstream>

namespace nashx {

namespace {

// all k-subsets of {0..n-1}, lexicographic
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

MPoly minor_det(const std::vector<std::vector<MPoly>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  MPoly acc;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<MPoly>> sub;
    for (size_t r = 1; r < n; ++r) {
      std::vector<MPoly> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      sub.push_back(std::move(row));
    }
    MPoly term = m[0][j] * minor_det(sub);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

std::map<std::string, Jet> component_assignment(const VarietyPresentation& v, const MapJet& f) {
  std::map<std::string, Jet> assign;
  for (size_t i = 0; i < v.ambient_vars.size(); ++i) assign.emplace(v.ambient_vars[i], f.components[i]);
  return assign;
}

bool all_vanish_at_jet_level(const std::vector<MPoly>& gens,
                             const std::map<std::string, Jet>& assign) {
  for (const auto& g : gens)
    if (!eval_poly_at_jets(g, assign).is_zero()) return false;
  return true;
}


void vtrace(const std::string& msg) {
  if (std::getenv("NASHX_TRACE")) std::cerr << "[nashx]   " << msg << "\n";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stage, std::uint64_t attempt) {
  std::uint64_t x = seed ^ (stage * 0x9e3779b97f4a7c15ULL) ^ (attempt * 0xbf58476d1ce4e5b9ULL);
  x ^= x >> 30;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

}  // namespace

std::vector<MPoly> singular_locus_generators(const VarietyPresentation& v) {
  int c = v.codim;
  int g = static_cast<int>(v.generators.size());
  int n = v.ambient_dim();
  if (c < 1 || g < c)
    throw std::invalid_argument(
        "singular_locus_generators: input outside the supported class (need >= codim generators)");
  std::vector<MPoly> out = v.generators;
  std::vector<std::vector<MPoly>> jac(static_cast<size_t>(g));
  for (int r = 0; r < g; ++r)
    for (int col = 0; col < n; ++col)
      jac[static_cast<size_t>(r)].push_back(v.generators[static_cast<size_t>(r)].derivative(v.ambient_vars[static_cast<size_t>(col)]));
  for (const auto& rows : subsets(g, c)) {
    for (const auto& cols : subsets(n, c)) {
      std::vector<std::vector<MPoly>> m;
      for (int r : rows) {
        std::vector<MPoly> row;
        for (int col : cols) row.push_back(jac[static_cast<size_t>(r)][static_cast<size_t>(col)]);
        m.push_back(std::move(row));
      }
      MPoly det = minor_det(m);
      if (!det.is_zero()) out.push_back(det.aligned_to(v.ambient_vars));
    }
  }
  return out;
}

VarietyPresentation singular_descent(const VarietyPresentation& v, const MapJet& f) {
  if (f.size() != v.ambient_vars.size())
    throw std::invalid_argument("singular_descent: component count mismatch");
  auto assign = component_assignment(v, f);
  if (!all_vanish_at_jet_level(v.generators, assign))
    throw std::invalid_argument("singular_descent: f does not lie on V at jet level");

  VarietyPresentation cur = v;
  for (int step = 0; step <= v.ambient_dim(); ++step) {
    // Enumerate minors lazily: stop as soon as one fails to vanish along f,
    // and keep only one representative per scalar class to bound growth.
    int c = cur.codim;
    vtrace("descent round " + std::to_string(step) + ": codim " + std::to_string(cur.codim) + ", " + std::to_string(cur.generators.size()) + " gens");
    int g = static_cast<int>(cur.generators.size());
    int n = cur.ambient_dim();
    if (c < 1 || g < c)
      throw std::invalid_argument(
          "singular_descent: input outside the supported class (need >= codim generators)");
    std::vector<std::vector<MPoly>> jac(static_cast<size_t>(g));
    for (int r = 0; r < g; ++r)
      for (int col = 0; col < n; ++col)
        jac[static_cast<size_t>(r)].push_back(
            cur.generators[static_cast<size_t>(r)].derivative(cur.ambient_vars[static_cast<size_t>(col)]));
    std::vector<MPoly> minors;
    std::set<std::string> seen;
    bool landed = true;
    for (const auto& rows : subsets(g, c)) {
      for (const auto& cols : subsets(n, c)) {
        std::vector<std::vector<MPoly>> m;
        for (int r : rows) {
          std::vector<MPoly> row;
          for (int col : cols) row.push_back(jac[static_cast<size_t>(r)][static_cast<size_t>(col)]);
          m.push_back(std::move(row));
        }
        MPoly det = minor_det(m);
        if (det.is_zero()) continue;
        MPoly norm = (det * det.terms().begin()->second.inverse()).aligned_to(cur.ambient_vars);
        if (!seen.insert(norm.str()).second) continue;
        if (!eval_poly_at_jets(norm, assign).is_zero()) {
          landed = false;
          break;
        }
        minors.push_back(std::move(norm));
      }
      if (!landed) break;
    }
    if (!landed) return cur;
    // f lands in the singular locus: descend
    for (auto& p : minors) cur.generators.push_back(std::move(p));
    cur.codim += 1;
    if (cur.codim > cur.ambient_dim())
      throw std::invalid_argument("singular_descent: image contained in a finite singular set");
  }
  throw std::invalid_argument("singular_descent: input outside the supported class");
}

namespace {

std::vector<MPoly> transformed_generators(const VarietyPresentation& v, const LinearChange& m) {
  std::vector<MPoly> out;
  for (const auto& g : v.generators)
    out.push_back(m.apply(g.aligned_to(v.ambient_vars), v.ambient_vars));
  return out;
}

bool proper_witnesses(const std::vector<MPoly>& gens, const std::vector<std::string>& ambient,
                      int m, long elim_budget, std::vector<MPoly>* witnesses) {
  std::vector<std::string> base(ambient.begin(), ambient.begin() + m);
  if (witnesses) witnesses->clear();
  for (int j = m; j < static_cast<int>(ambient.size()); ++j) {
    std::vector<std::string> keep = base;
    keep.push_back(ambient[static_cast<size_t>(j)]);
    std::vector<MPoly> elim;
    try {
      elim = buchberger_eliminate(gens, keep, elim_budget);
    } catch (const EliminationBudgetExhausted&) {
      return false;
    }
    UnitaryWitness w;
    if (!find_unitary_witness(elim, ambient[static_cast<size_t>(j)], base, &w)) return false;
    if (witnesses) witnesses->push_back(w.poly);
  }
  return true;
}

}  // namespace

LinearChange properize(const VarietyPresentation& v, int m, std::uint64_t seed,
                       const GenericityBudgets& budgets) {
  if (m < 0 || m > v.ambient_dim()) throw std::invalid_argument("properize: bad base count");
  if (proper_witnesses(v.generators, v.ambient_vars, m, budgets.elimination, nullptr))
    return LinearChange::identity(v.ambient_dim());
  for (int attempt = 0; attempt < budgets.retries; ++attempt) {
    LinearChange cand = random_linear_change(v.ambient_dim(),
                                             derive_seed(seed, 2, static_cast<std::uint64_t>(attempt)), 2);
    if (proper_witnesses(transformed_generators(v, cand), v.ambient_vars, m, budgets.elimination,
                         nullptr))
      return cand;
  }
  throw std::runtime_error("properize: retry budget exhausted");
}

namespace {

Scalar small_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 41) - 20;
  long den = static_cast<long>(rng() % 3) + 1;
  mpq_class q(num, den);
  q.canonicalize();
  return Scalar(q);
}

// distinct-solution count over one sampled base point; -1 when degenerate
int fiber_count_once(const VarietyPresentation& v, int m, std::mt19937_64& rng,
                     long elim_budget) {
  std::vector<std::string> base(v.ambient_vars.begin(), v.ambient_vars.begin() + m);
  std::vector<std::string> fiber(v.ambient_vars.begin() + m, v.ambient_vars.end());
  std::map<std::string, MPoly> point;
  for (const auto& b : base) point.emplace(b, MPoly::constant(small_rational(rng)));
  std::vector<MPoly> gens;
  for (const auto& g : v.generators) gens.push_back(g.substitute(point));
  // separating linear form w = sum lambda_j v_j
  const std::string w = "_w";
  MPoly form = MPoly::variable(w, merged_vars({w}, fiber));
  for (const auto& fv : fiber) {
    long lam = static_cast<long>(rng() % 9) + 1;
    form = form - MPoly::variable(fv, merged_vars({w}, fiber)) * Scalar(lam);
  }
  gens.push_back(form);
  std::vector<MPoly> elim;
  try {
    elim = buchberger_eliminate(gens, {w}, elim_budget);
  } catch (const EliminationBudgetExhausted&) {
    return -1;
  }
  if (elim.empty()) return -1;  // fiber not finite over this point
  MPoly p = elim.front();
  for (const auto& e : elim)
    if (e.degree(w) < p.degree(w)) p = e;
  if (p.degree(w) == 0) return 0;  // empty fiber
  return squarefree_part(p, w).degree(w);
}

}  // namespace

int generic_fiber_count(const VarietyPresentation& v, int m, std::uint64_t seed,
                        const GenericityBudgets& budgets) {
  for (int attempt = 0; attempt < budgets.retries; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, 3, static_cast<std::uint64_t>(attempt)));
    int a = fiber_count_once(v, m, rng, budgets.elimination);
    int b = fiber_count_once(v, m, rng, budgets.elimination);
    if (a >= 0 && a == b) return a;
  }
  throw std::runtime_error("generic_fiber_count: retry budget exhausted");
}

int probe_dimension(const VarietyPresentation& v, std::uint64_t seed,
                    const GenericityBudgets& budgets) {
  for (int m = 0; m < v.ambient_dim(); ++m) {
    try {
      properize(v, m, derive_seed(seed, 4, static_cast<std::uint64_t>(m)), budgets);
      return m;
    } catch (const std::runtime_error&) {
      continue;
    }
  }
  throw std::runtime_error("probe_dimension: variety appears to fill the ambient space");
}

BranchedCoverData choose_form_and_discriminant(const VarietyPresentation& v, int m,
                                               const std::vector<Jet>& base_f,
                                               std::uint64_t seed,
                                               const GenericityBudgets& budgets) {
  int s = v.ambient_dim() - m;
  if (s < 1) throw std::invalid_argument("choose_form_and_discriminant: empty fiber block");
  std::vector<std::string> base(v.ambient_vars.begin(), v.ambient_vars.begin() + m);
  std::vector<std::string> fiber(v.ambient_vars.begin() + m, v.ambient_vars.end());
  int target = generic_fiber_count(v, m, seed, budgets);
  if (target < 1)
    throw std::runtime_error("choose_form_and_discriminant: generic fiber is empty");

  const std::string z = "_z";
  bool saw_vanishing_pullback = false;
  for (int attempt = 0; attempt < budgets.retries; ++attempt) {
    // L = (1, l2, ..., ls) with deterministic small integers; first try 1,1,..
    std::vector<Scalar> form(static_cast<size_t>(s), Scalar(1));
    std::mt19937_64 rng(derive_seed(seed, 5, static_cast<std::uint64_t>(attempt)));
    if (attempt > 0)
      for (int j = 1; j < s; ++j)
        form[static_cast<size_t>(j)] = Scalar(static_cast<long>(rng() % 7) + 1);

    std::vector<std::string> all = v.ambient_vars;
    all.push_back(z);
    MPoly lhs = MPoly::variable(z, all);
    for (int j = 0; j < s; ++j)
      lhs = lhs - MPoly::variable(fiber[static_cast<size_t>(j)], all) * form[static_cast<size_t>(j)];
    std::vector<MPoly> gens;
    for (const auto& g : v.generators) gens.push_back(g.aligned_to(all));
    gens.push_back(lhs);

    std::vector<std::string> keep = base;
    keep.push_back(z);
    std::vector<MPoly> elim;
    try {
      elim = buchberger_eliminate(gens, keep, budgets.elimination);
    } catch (const EliminationBudgetExhausted&) {
      continue;
    }
    UnitaryWitness w;
    std::vector<std::string> order_for_witness = base;  // coefficients in y
    if (!find_unitary_witness(elim, z, order_for_witness, &w)) continue;
    MPoly p = squarefree_part(w.poly, z);
    if (p.degree(z) != target) continue;
    MPoly plead = p.coeff(z, p.degree(z));
    if (!plead.is_constant()) continue;
    p = (p * plead.constant_term().inverse()).pruned();
    MPoly r = discriminant(p, z);
    if (r.is_zero()) continue;

    // R o rho o f must not vanish to jet order
    std::map<std::string, Jet> assign;
    for (int i = 0; i < m; ++i) assign.emplace(base[static_cast<size_t>(i)], base_f[static_cast<size_t>(i)]);
    bool vanishes = false;
    if (m > 0) {
      Jet pulled = eval_poly_at_jets(r.aligned_to(base), assign);
      vanishes = pulled.is_zero();
    } else {
      vanishes = r.eval(std::map<std::string, Scalar>{}).is_zero();
    }
    if (vanishes) {
      saw_vanishing_pullback = true;
      continue;
    }
    return BranchedCoverData{form, z, p.aligned_to(keep), r.aligned_to(base), target};
  }
  if (saw_vanishing_pullback)
    throw PrecisionInconclusive(
        "choose_form_and_discriminant: R o rho o f vanishes to jet order for all candidate forms");
  throw std::runtime_error("choose_form_and_discriminant: retry budget exhausted");
}

std::pair<VarietyPresentation, int> parse_variety(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  in >> tok;
  if (tok != "variety") throw std::runtime_error("parse_variety: expected 'variety'");
  VarietyPresentation v;
  int base_count = -1;
  std::vector<std::string> eqs;
  std::string mode;
  std::string current_eq;
  auto flush_eq = [&]() {
    if (!current_eq.empty()) {
      eqs.push_back(current_eq);
      current_eq.clear();
    }
  };
  while (in >> tok) {
    if (tok.rfind("vars=", 0) == 0) {
      flush_eq();
      mode.clear();
      std::string spec = tok.substr(5);
      size_t semi = spec.find(';');
      if (semi == std::string::npos) throw std::runtime_error("parse_variety: vars= needs ';'");
      auto split = [](const std::string& s) {
        std::vector<std::string> out;
        size_t start = 0;
        while (start <= s.size()) {
          size_t comma = s.find(',', start);
          std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
          if (!piece.empty()) out.push_back(piece);
          if (comma == std::string::npos) break;
          start = comma + 1;
        }
        return out;
      };
      auto base_vars = split(spec.substr(0, semi));
      auto fiber_vars = split(spec.substr(semi + 1));
      base_count = static_cast<int>(base_vars.size());
      v.ambient_vars = base_vars;
      for (const auto& f : fiber_vars) v.ambient_vars.push_back(f);
    } else if (tok == "eq") {
      flush_eq();
      mode = "eq";
    } else if (tok.rfind("codim=", 0) == 0) {
      flush_eq();
      mode.clear();
      v.codim = std::stoi(tok.substr(6));
    } else if (mode == "eq") {
      if (!current_eq.empty()) current_eq += " ";
      current_eq += tok;
    } else {
      throw std::runtime_error("parse_variety: unexpected token '" + tok + "'");
    }
  }
  flush_eq();
  if (base_count < 0) throw std::runtime_error("parse_variety: missing vars=");
  if (eqs.empty()) throw std::runtime_error("parse_variety: missing equations");
  for (const auto& e : eqs) v.generators.push_back(parse_poly(e, v.ambient_vars));
  if (v.codim < 1) v.codim = static_cast<int>(v.generators.size());
  return {v, base_count};
}

}  // namespace nashx
