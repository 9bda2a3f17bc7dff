#include "nashx/groebner.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace nashx {

namespace {

// All polynomials in this unit are aligned to the same order_vars tuple, so
// the std::map key order is exactly lex and rbegin() is the leading term.

const std::pair<const Exponents, Scalar>& lead(const MPoly& p) { return *p.terms().rbegin(); }

bool divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

bool coprime(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents e(a.size());
  for (size_t i = 0; i < a.size(); ++i) e[i] = std::max(a[i], b[i]);
  return e;
}

MPoly monomial(const std::vector<std::string>& vars, const Exponents& e, const Scalar& c) {
  MPoly m(vars);
  m.set_term(e, c);
  return m;
}

// full normal form of p modulo basis
MPoly normal_form(MPoly p, const std::vector<MPoly>& basis, const std::vector<std::string>& vars) {
  MPoly out(vars);
  while (!p.is_zero()) {
    const auto& lt = lead(p);
    bool reduced = false;
    for (const auto& b : basis) {
      const auto& ltb = lead(b);
      if (!divides(ltb.first, lt.first)) continue;
      Exponents q(vars.size());
      for (size_t i = 0; i < vars.size(); ++i) q[i] = lt.first[i] - ltb.first[i];
      p = p - b * monomial(vars, q, lt.second / ltb.second);
      reduced = true;
      break;
    }
    if (!reduced) {
      out.add_term(lt.first, lt.second);
      p = p - monomial(vars, lt.first, lt.second);
    }
  }
  return out;
}

MPoly make_monic(const MPoly& p) { return p * lead(p).second.inverse(); }

}  // namespace

std::vector<MPoly> groebner_basis(const std::vector<MPoly>& gens,
                                  const std::vector<std::string>& order_vars, long budget) {
  std::vector<MPoly> basis;
  for (const auto& g : gens) {
    MPoly a = g.aligned_to(order_vars);
    if (!a.is_zero()) basis.push_back(make_monic(a));
  }
  std::deque<std::pair<size_t, size_t>> pairs;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  long steps = 0;
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const auto& lti = lead(basis[i]).first;
    const auto& ltj = lead(basis[j]).first;
    if (coprime(lti, ltj)) continue;  // Buchberger's first criterion
    if (++steps > budget) throw EliminationBudgetExhausted("elimination budget exhausted");
    Exponents l = lcm(lti, ltj);
    Exponents qi(l.size()), qj(l.size());
    for (size_t k = 0; k < l.size(); ++k) {
      qi[k] = l[k] - lti[k];
      qj[k] = l[k] - ltj[k];
    }
    MPoly s = basis[i] * monomial(order_vars, qi, Scalar(1)) -
              basis[j] * monomial(order_vars, qj, Scalar(1));
    MPoly r = normal_form(std::move(s), basis, order_vars);
    if (r.is_zero()) continue;
    r = make_monic(r);
    for (size_t k = 0; k < basis.size(); ++k) pairs.emplace_back(k, basis.size());
    basis.push_back(std::move(r));
  }

  // interreduce to the unique reduced basis
  std::vector<MPoly> reduced;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (divides(lead(basis[j]).first, lead(basis[i]).first) &&
          (lead(basis[j]).first != lead(basis[i]).first || j < i)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) reduced.push_back(basis[i]);
  }
  std::vector<MPoly> out;
  for (size_t i = 0; i < reduced.size(); ++i) {
    std::vector<MPoly> others;
    for (size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    MPoly r = normal_form(reduced[i], others, order_vars);
    if (!r.is_zero()) out.push_back(make_monic(r));
  }
  std::sort(out.begin(), out.end(), [](const MPoly& a, const MPoly& b) {
    return lead(a).first < lead(b).first;
  });
  return out;
}

std::vector<MPoly> buchberger_eliminate(const std::vector<MPoly>& gens,
                                        const std::vector<std::string>& keep_vars, long budget) {
  std::vector<std::string> all;
  for (const auto& g : gens) all = merged_vars(all, g.vars());
  std::vector<std::string> eliminated;
  for (const auto& v : all)
    if (std::find(keep_vars.begin(), keep_vars.end(), v) == keep_vars.end())
      eliminated.push_back(v);
  std::vector<std::string> order_vars = eliminated;
  for (const auto& v : keep_vars) order_vars.push_back(v);

  auto basis = groebner_basis(gens, order_vars, budget);
  std::vector<MPoly> out;
  for (const auto& b : basis) {
    bool pure = true;
    for (const auto& v : eliminated)
      if (b.degree(v) > 0) { pure = false; break; }
    if (pure) out.push_back(b.aligned_to(order_vars).pruned().aligned_to(keep_vars));
  }
  return out;
}

bool find_unitary_witness(const std::vector<MPoly>& basis, const std::string& var,
                          const std::vector<std::string>& coeff_vars, UnitaryWitness* out) {
  std::vector<std::string> order_vars{var};
  for (const auto& v : coeff_vars) order_vars.push_back(v);
  bool found = false;
  int best = 0;
  MPoly best_poly;
  for (const auto& b : basis) {
    MPoly a;
    try {
      a = b.aligned_to(order_vars);
    } catch (const std::runtime_error&) {
      continue;  // uses variables outside (var, coeff_vars)
    }
    if (a.is_zero() || a.degree(var) < 1) continue;
    const auto& lt = lead(a).first;
    bool pure = lt[0] > 0;
    for (size_t i = 1; i < lt.size(); ++i)
      if (lt[i] != 0) pure = false;
    if (!pure) continue;
    if (!found || a.degree(var) < best) {
      found = true;
      best = a.degree(var);
      best_poly = make_monic(a);
    }
  }
  if (found && out) *out = UnitaryWitness{best_poly, best};
  return found;
}

}  // namespace nashx
