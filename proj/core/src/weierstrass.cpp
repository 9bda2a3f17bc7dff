#include "nashx/weierstrass.hpp"

#include <algorithm>
#include <cassert>

namespace nashx {

namespace {

int exp_tdeg(const Exponents& e) {
  int s = 0;
  for (int k : e) s += k;
  return s;
}

// terms of j whose x'-degree (total degree minus last variable) equals k
Jet xprime_layer(const Jet& j, int k) {
  Jet out(j.vars(), j.order());
  size_t last = j.vars().size() - 1;
  for (const auto& [e, c] : j.terms())
    if (exp_tdeg(e) - e[last] == k) out.add_term(e, c);
  return out;
}

// coefficient of var^k, kept over the full variable tuple
Jet coeff_full(const Jet& j, int k) {
  Jet out(j.vars(), j.order());
  size_t last = j.vars().size() - 1;
  for (const auto& [e, c] : j.terms()) {
    if (e[last] != k) continue;
    Exponents e2 = e;
    e2[last] = 0;
    out.add_term(e2, c);
  }
  return out;
}

// coefficient of var^k restricted to the x' tuple
Jet coeff_xprime(const Jet& j, int k, const std::vector<std::string>& xp) {
  Jet full = coeff_full(j, k);
  Jet out(xp, j.order());
  size_t last = j.vars().size() - 1;
  for (const auto& [e, c] : full.terms()) {
    Exponents e2(e.begin(), e.begin() + static_cast<long>(last));
    out.add_term(e2, c);
  }
  return out;
}

int var_degree(const Jet& j, size_t last) {
  int d = -1;
  for (const auto& [e, c] : j.terms()) d = std::max(d, e[last]);
  return d;
}

// divide by var^k (every stored term must have var-exponent >= k)
Jet shift_down(const Jet& j, int k) {
  Jet out(j.vars(), j.order());
  size_t last = j.vars().size() - 1;
  for (const auto& [e, c] : j.terms()) {
    if (e[last] < k)
      throw PrecisionInconclusive("weierstrass: remainder not divisible by distinguished power");
    Exponents e2 = e;
    e2[last] -= k;
    out.add_term(e2, c);
  }
  return out;
}

Jet var_power(const std::vector<std::string>& vars, int k, int order) {
  Jet out(vars, order);
  if (k > order) return out;
  Exponents e(vars.size(), 0);
  e[vars.size() - 1] = k;
  out.add_term(e, Scalar(1));
  return out;
}

}  // namespace

bool DistinguishedPoly::is_distinguished() const {
  return std::all_of(coeffs.begin(), coeffs.end(),
                     [](const Jet& c) { return c.constant_term().is_zero(); });
}

std::vector<std::string> DistinguishedPoly::full_vars() const {
  auto v = xprime_vars;
  v.push_back(var);
  return v;
}

Jet DistinguishedPoly::to_jet(int order) const {
  auto fv = full_vars();
  Jet out = var_power(fv, degree(), order);
  for (int k = 0; k < degree(); ++k)
    out = out + coeffs[static_cast<size_t>(k)].aligned_to(fv) * var_power(fv, k, order);
  return out;
}

MPoly DistinguishedPoly::truncate_to_poly(int nu) const {
  auto fv = full_vars();
  MPoly out = MPoly::variable(var, fv).pow(degree());
  for (int k = 0; k < degree(); ++k)
    out = out + coeffs[static_cast<size_t>(k)].truncate_to_poly(nu).aligned_to(fv) *
                    MPoly::variable(var, fv).pow(k);
  return out;
}

DistinguishedPoly DistinguishedPoly::derivative_in_var() const {
  DistinguishedPoly out{xprime_vars, var, {}};
  for (int k = 1; k < degree(); ++k)
    out.coeffs.push_back(coeffs[static_cast<size_t>(k)] * Scalar(k));
  // leading term d*var^{d-1} is imposed by the caller; kept implicit here
  return out;
}

std::string DistinguishedPoly::str() const {
  std::string s = var + "^" + std::to_string(degree());
  for (int k = degree() - 1; k >= 0; --k) {
    const Jet& c = coeffs[static_cast<size_t>(k)];
    if (c.is_zero()) continue;
    s += " + (" + c.to_poly().str() + ")";
    if (k > 0) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

Jet DivisionResult::remainder_jet(const std::vector<std::string>& full_vars,
                                  const std::string& var, int order) const {
  Jet out(full_vars, order);
  for (size_t k = 0; k < remainder_coeffs.size(); ++k)
    out = out + remainder_coeffs[k].aligned_to(full_vars) *
                    var_power(full_vars, static_cast<int>(k), order);
  (void)var;
  return out;
}

std::pair<LinearChange, int> regularize(const Jet& u, std::uint64_t seed) {
  int n = static_cast<int>(u.vars().size());
  int d = u.valuation();
  if (d > u.order())
    throw PrecisionInconclusive("regularize: input vanishes identically to jet order");
  size_t last = u.vars().size() - 1;

  auto slice_valuation = [&](const Jet& j) {
    int v = j.order() + 1;
    for (const auto& [e, c] : j.terms()) {
      bool pure = true;
      for (size_t i = 0; i < e.size(); ++i)
        if (i != last && e[i] != 0) { pure = false; break; }
      if (pure) v = std::min(v, e[last]);
    }
    return v;
  };

  if (slice_valuation(u) == d) return {LinearChange::identity(n), d};
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    LinearChange m = random_linear_change(n, seed * 1000003ULL + attempt + 1, 3);
    if (slice_valuation(u.linear_change(m)) == d) return {m, d};
  }
  throw std::runtime_error("regularize: retry budget exhausted");
}

std::pair<Jet, DistinguishedPoly> prepare(const Jet& u, int d) {
  const auto& vars = u.vars();
  size_t last = vars.size() - 1;
  std::vector<std::string> xp(vars.begin(), vars.end() - 1);
  int order = u.order();
  if (d == 0) return {u, DistinguishedPoly{xp, vars[last], {}}};

  Jet u0 = xprime_layer(u, 0);
  Jet e0 = shift_down(u0, d);  // throws if u is not regular of order d
  if (e0.constant_term().is_zero())
    throw std::invalid_argument("prepare: input not regular of order " + std::to_string(d));
  Jet inv_e0 = e0.invert_unit();

  Jet wpoly(vars, order);  // W - var^d
  Jet unit = e0;
  Jet xd = var_power(vars, d, order);
  for (int k = 1; k <= order; ++k) {
    Jet defect = xprime_layer(u - (xd + wpoly) * unit, k);
    if (defect.is_zero()) continue;
    Jet q = defect * inv_e0;
    Jet wk(vars, order);
    for (int j = 0; j < d; ++j)
      wk = wk + coeff_full(q, j) * var_power(vars, j, order);
    Jet ek = shift_down(defect - e0 * wk, d);
    wpoly = wpoly + wk;
    unit = unit + ek;
  }
  if (!(u - (xd + wpoly) * unit).is_zero())
    throw PrecisionInconclusive("prepare: preparation identity failed at jet order");

  DistinguishedPoly w{xp, vars[last], {}};
  for (int k = 0; k < d; ++k) w.coeffs.push_back(coeff_xprime(wpoly, k, xp));
  assert(w.is_distinguished());
  return {unit, w};
}

DivisionResult divide(const Jet& f, const DistinguishedPoly& w) {
  auto fv = w.full_vars();
  int order = f.order();
  int d = w.degree();
  Jet rem = f.aligned_to(fv);
  Jet h(fv, order);
  if (d == 0) {
    return DivisionResult{rem, {}};
  }
  Jet wj = w.to_jet(order);
  size_t last = fv.size() - 1;
  for (int k = var_degree(rem, last); k >= d; --k) {
    Jet c = coeff_full(rem, k);
    if (c.is_zero()) continue;
    Jet mono = c * var_power(fv, k - d, order);
    h = h + mono;
    rem = rem - mono * wj;
  }
  DivisionResult out;
  out.quotient = h;
  for (int k = 0; k < d; ++k) out.remainder_coeffs.push_back(coeff_xprime(rem, k, w.xprime_vars));
  return out;
}

// ---------------------------------------------------------------------------
// squarefree (optimal) factorization over the jet coefficient ring

namespace {

// polynomial in the distinguished variable with jet coefficients in x'
struct UP {
  std::vector<Jet> c;  // c[k] = coefficient of var^k

  int deg() const {
    for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k)
      if (!c[static_cast<size_t>(k)].is_zero()) return k;
    return -1;
  }
  bool is_zero() const { return deg() < 0; }
  const Jet& lc() const { return c[static_cast<size_t>(deg())]; }
};

UP up_from(const DistinguishedPoly& w, int order, const std::vector<std::string>& xp) {
  UP out;
  for (const auto& cj : w.coeffs) out.c.push_back(cj.aligned_to(xp));
  out.c.push_back(Jet::constant(Scalar(1), xp, order));
  return out;
}

UP up_zero() { return UP{}; }

UP up_mul(const UP& a, const UP& b, const std::vector<std::string>& xp, int order) {
  UP out;
  if (a.is_zero() || b.is_zero()) return out;
  out.c.assign(a.c.size() + b.c.size() - 1, Jet(xp, order));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] = out.c[i + j] + a.c[i] * b.c[j];
  return out;
}

UP up_sub(const UP& a, const UP& b, const std::vector<std::string>& xp, int order) {
  UP out;
  out.c.assign(std::max(a.c.size(), b.c.size()), Jet(xp, order));
  for (size_t i = 0; i < out.c.size(); ++i) {
    if (i < a.c.size()) out.c[i] = out.c[i] + a.c[i];
    if (i < b.c.size()) out.c[i] = out.c[i] - b.c[i];
  }
  return out;
}

UP up_scale(const UP& a, const Jet& s) {
  UP out = a;
  for (auto& cj : out.c) cj = cj * s;
  return out;
}

UP up_shift(const UP& a, int k, const std::vector<std::string>& xp, int order) {
  UP out;
  out.c.assign(a.c.size() + static_cast<size_t>(k), Jet(xp, order));
  for (size_t i = 0; i < a.c.size(); ++i) out.c[i + static_cast<size_t>(k)] = a.c[i];
  return out;
}

UP up_derivative(const UP& a) {
  UP out;
  for (size_t k = 1; k < a.c.size(); ++k) out.c.push_back(a.c[k] * Scalar(static_cast<long>(k)));
  return out;
}

// pseudo-remainder of a by b in the distinguished variable
UP up_prem(UP a, const UP& b, const std::vector<std::string>& xp, int order) {
  int db = b.deg();
  const Jet lcb = b.lc();
  while (!a.is_zero() && a.deg() >= db) {
    int da = a.deg();
    Jet lca = a.lc();
    a = up_sub(up_scale(a, lcb), up_scale(up_shift(b, da - db, xp, order), lca), xp, order);
    if (!a.is_zero() && a.deg() >= da)
      throw std::logic_error("up_prem: degree did not drop");
  }
  return a;
}

// long division by a monic divisor; returns {quotient, remainder}
std::pair<UP, UP> up_divmod_monic(UP a, const UP& b, const std::vector<std::string>& xp,
                                  int order) {
  int db = b.deg();
  UP q;
  q.c.assign(a.c.size(), Jet(xp, order));
  while (!a.is_zero() && a.deg() >= db) {
    int da = a.deg();
    Jet lca = a.lc();
    q.c[static_cast<size_t>(da - db)] = q.c[static_cast<size_t>(da - db)] + lca;
    a = up_sub(a, up_scale(up_shift(b, da - db, xp, order), lca), xp, order);
    if (!a.is_zero() && a.deg() >= da) throw std::logic_error("up_divmod: degree did not drop");
  }
  return {q, a};
}

UP up_divide_exact_monic(const UP& a, const UP& b, const std::vector<std::string>& xp,
                         int order) {
  auto [q, r] = up_divmod_monic(a, b, xp, order);
  if (!r.is_zero())
    throw PrecisionInconclusive("optimal_factorization: inexact division at jet order");
  return q;
}

UP up_make_monic(const UP& a, const std::vector<std::string>& xp, int order) {
  UP out;
  const Jet& lc = a.lc();
  out.c.assign(static_cast<size_t>(a.deg()) + 1, Jet(xp, order));
  out.c.back() = Jet::constant(Scalar(1), xp, order);
  for (int k = 0; k < a.deg(); ++k) {
    const Jet& ck = a.c[static_cast<size_t>(k)];
    if (ck.is_zero()) continue;
    try {
      out.c[static_cast<size_t>(k)] =
          lc.constant_term().is_zero() ? jet_exact_divide(ck, lc) : ck * lc.invert_unit();
    } catch (const std::domain_error&) {
      throw PrecisionInconclusive("optimal_factorization: gcd not monic-izable at jet order");
    }
  }
  return out;
}

UP up_gcd_monic(UP a, UP b, const std::vector<std::string>& xp, int order) {
  if (a.deg() < b.deg()) std::swap(a, b);
  if (b.is_zero()) return up_make_monic(a, xp, order);
  while (true) {
    UP r = up_prem(a, b, xp, order);
    if (r.is_zero()) break;
    a = b;
    b = r;
  }
  if (b.deg() == 0) {
    UP one;
    one.c.push_back(Jet::constant(Scalar(1), xp, order));
    return one;
  }
  return up_make_monic(b, xp, order);
}

// Yun's squarefree decomposition for a monic input
std::vector<std::pair<UP, int>> up_yun(const UP& f, const std::vector<std::string>& xp,
                                       int order) {
  UP fp = up_derivative(f);
  UP g = up_gcd_monic(f, fp, xp, order);
  std::vector<std::pair<UP, int>> out;
  if (g.deg() == 0) {
    out.emplace_back(f, 1);
    return out;
  }
  UP cpart = up_divide_exact_monic(f, g, xp, order);
  UP dpart = up_sub(up_divide_exact_monic(fp, g, xp, order), up_derivative(cpart), xp, order);
  int mult = 1;
  while (cpart.deg() > 0) {
    UP a = up_gcd_monic(cpart, dpart, xp, order);
    if (a.deg() > 0) out.emplace_back(a, mult);
    cpart = up_divide_exact_monic(cpart, a, xp, order);
    dpart = up_sub(up_divide_exact_monic(dpart, a, xp, order), up_derivative(cpart), xp, order);
    ++mult;
  }
  return out;
}

std::vector<int> degree_profile(const std::vector<std::pair<UP, int>>& f) {
  std::vector<int> out;
  for (const auto& [p, k] : f) {
    out.push_back(k);
    out.push_back(p.deg());
  }
  return out;
}

UP up_truncated(const UP& a, int order) {
  UP out;
  for (const auto& cj : a.c) out.c.push_back(cj.truncated(order));
  return out;
}

}  // namespace

std::vector<std::pair<DistinguishedPoly, int>> optimal_factorization(const DistinguishedPoly& w) {
  if (w.degree() < 1) throw std::invalid_argument("optimal_factorization: degree must be >= 1");
  int order = w.coeffs.front().order();
  const auto& xp = w.xprime_vars;
  UP f = up_from(w, order, xp);

  auto factors = up_yun(f, xp, order);

  // stability: the degree profile must agree when the jet order is reduced
  if (order >= 2) {
    auto low = up_yun(up_truncated(f, order - 2), xp, order - 2);
    if (degree_profile(low) != degree_profile(factors))
      throw PrecisionInconclusive(
          "optimal_factorization: degree profile unstable between orders N and N-2");
  }

  // identity and coprimality checks
  UP prod;
  prod.c.push_back(Jet::constant(Scalar(1), xp, order));
  for (const auto& [p, k] : factors)
    for (int i = 0; i < k; ++i) prod = up_mul(prod, p, xp, order);
  if (!up_sub(prod, f, xp, order).is_zero())
    throw PrecisionInconclusive("optimal_factorization: factor product mismatch at jet order");
  for (size_t i = 0; i < factors.size(); ++i) {
    if (up_gcd_monic(factors[i].first, up_derivative(factors[i].first), xp, order).deg() != 0)
      throw PrecisionInconclusive("optimal_factorization: factor not squarefree at jet order");
    for (size_t j = i + 1; j < factors.size(); ++j)
      if (up_gcd_monic(factors[i].first, factors[j].first, xp, order).deg() != 0)
        throw PrecisionInconclusive("optimal_factorization: factors share a root at jet order");
  }

  std::vector<std::pair<DistinguishedPoly, int>> out;
  for (const auto& [p, k] : factors) {
    DistinguishedPoly dp{xp, w.var, {}};
    for (int c = 0; c < p.deg(); ++c) dp.coeffs.push_back(p.c[static_cast<size_t>(c)]);
    out.emplace_back(std::move(dp), k);
  }
  return out;
}

}  // namespace nashx
