#include "nashx/jet.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace nashx {

namespace {

int exp_tdeg(const Exponents& e) {
  int s = 0;
  for (int k : e) s += k;
  return s;
}

}  // namespace

Jet Jet::constant(const Scalar& c, std::vector<std::string> vars, int order) {
  Jet j(std::move(vars), order);
  if (!c.is_zero()) j.terms_[Exponents(j.vars_.size(), 0)] = c;
  return j;
}

Jet Jet::coordinate(const std::string& name, std::vector<std::string> vars, int order) {
  Jet j(std::move(vars), order);
  auto it = std::find(j.vars_.begin(), j.vars_.end(), name);
  if (it == j.vars_.end()) throw std::runtime_error("Jet::coordinate: unknown variable " + name);
  if (order >= 1) {
    Exponents e(j.vars_.size(), 0);
    e[static_cast<size_t>(it - j.vars_.begin())] = 1;
    j.terms_[e] = Scalar(1);
  }
  return j;
}

Jet Jet::from_poly(const MPoly& p, const std::vector<std::string>& vars, int order) {
  MPoly a = p.aligned_to(vars);
  Jet j(vars, order);
  for (const auto& [e, c] : a.terms())
    if (exp_tdeg(e) <= order) j.terms_[e] = c;
  return j;
}

Scalar Jet::constant_term() const {
  auto it = terms_.find(Exponents(vars_.size(), 0));
  return it == terms_.end() ? Scalar() : it->second;
}

int Jet::valuation() const {
  int v = order_ + 1;
  for (const auto& [e, c] : terms_) v = std::min(v, exp_tdeg(e));
  return v;
}

void Jet::add_term(const Exponents& e, const Scalar& c) {
  assert(e.size() == vars_.size());
  if (exp_tdeg(e) > order_) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[e] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Jet Jet::operator-() const {
  Jet out(vars_, order_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

Jet Jet::aligned_to(const std::vector<std::string>& vars) const {
  Jet out(vars, order_);
  MPoly p = to_poly().aligned_to(vars);
  for (const auto& [e, c] : p.terms()) out.terms_[e] = c;
  return out;
}

Jet Jet::operator+(const Jet& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  int order = std::min(order_, o.order_);
  Jet a = aligned_to(vars).truncated(order);
  Jet b = o.aligned_to(vars).truncated(order);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  return a;
}

Jet Jet::operator-(const Jet& o) const { return *this + (-o); }

Jet Jet::operator*(const Jet& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  int order = std::min(order_, o.order_);
  Jet a = aligned_to(vars), b = o.aligned_to(vars);
  Jet out(vars, order);
  for (const auto& [ea, ca] : a.terms_) {
    if (exp_tdeg(ea) > order) continue;
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(vars.size());
      int d = 0;
      for (size_t i = 0; i < vars.size(); ++i) d += (e[i] = ea[i] + eb[i]);
      if (d > order) continue;
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Jet Jet::operator*(const Scalar& c) const {
  Jet out(vars_, order_);
  if (c.is_zero()) return out;
  for (const auto& [e, t] : terms_) out.terms_[e] = t * c;
  return out;
}

bool Jet::operator==(const Jet& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  return order_ == o.order_ && aligned_to(vars).terms_ == o.aligned_to(vars).terms_;
}

Jet Jet::truncated(int order) const {
  Jet out(vars_, order);
  for (const auto& [e, c] : terms_)
    if (exp_tdeg(e) <= order) out.terms_[e] = c;
  return out;
}

MPoly Jet::truncate_to_poly(int nu) const {
  MPoly p(vars_);
  for (const auto& [e, c] : terms_)
    if (exp_tdeg(e) <= nu) p.set_term(e, c);
  return p;
}

Jet Jet::invert_unit() const {
  Scalar c0 = constant_term();
  if (c0.is_zero()) throw std::domain_error("invert_unit: constant term is zero");
  Scalar inv_c0 = c0.inverse();
  // u = c0 (1 - w), 1/u = (1/c0) sum w^k
  Jet w = Jet::constant(Scalar(1), vars_, order_) - *this * inv_c0;
  Jet acc = Jet::constant(Scalar(1), vars_, order_);
  for (int k = 0; k < order_; ++k)
    acc = Jet::constant(Scalar(1), vars_, order_) + w * acc;
  return acc * inv_c0;
}

Jet Jet::compose(const std::map<std::string, Jet>& inner) const {
  int order = order_;
  std::vector<std::string> out_vars;
  for (const auto& v : vars_) {
    auto it = inner.find(v);
    if (it == inner.end()) throw std::runtime_error("compose: missing inner jet for " + v);
    if (!it->second.constant_term().is_zero())
      throw std::domain_error("compose: inner jet for " + v + " has nonzero constant term");
    order = std::min(order, it->second.order());
    out_vars = merged_vars(out_vars, it->second.vars());
  }
  if (vars_.empty()) out_vars = {};
  Jet out(out_vars, order);
  std::map<std::pair<size_t, int>, Jet> pow_cache;
  for (const auto& [e, c] : terms_) {
    Jet prod = Jet::constant(c, out_vars, order);
    for (size_t i = 0; i < vars_.size() && !prod.is_zero(); ++i) {
      if (e[i] == 0) continue;
      auto key = std::make_pair(i, e[i]);
      auto pit = pow_cache.find(key);
      if (pit == pow_cache.end()) {
        Jet p = Jet::constant(Scalar(1), out_vars, order);
        const Jet& base = inner.at(vars_[i]);
        for (int k = 0; k < e[i]; ++k) p = p * base;
        pit = pow_cache.emplace(key, std::move(p)).first;
      }
      prod = prod * pit->second;
    }
    out = out + prod;
  }
  return out;
}

Jet Jet::derivative(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  Jet out(vars_, order_ > 0 ? order_ - 1 : 0);
  if (it == vars_.end()) return out;
  size_t idx = static_cast<size_t>(it - vars_.begin());
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents e2 = e;
    e2[idx] -= 1;
    out.add_term(e2, c * Scalar(e[idx]));
  }
  return out;
}

Jet Jet::linear_change(const LinearChange& m) const {
  if (m.dim() != static_cast<int>(vars_.size()))
    throw std::invalid_argument("Jet::linear_change: dimension mismatch");
  std::map<std::string, Jet> inner;
  for (size_t i = 0; i < vars_.size(); ++i) {
    Jet row(vars_, order_);
    for (size_t j = 0; j < vars_.size(); ++j) {
      if (m.matrix()[i][j].is_zero()) continue;
      row = row + Jet::coordinate(vars_[j], vars_, order_) * m.matrix()[i][j];
    }
    inner.emplace(vars_[i], std::move(row));
  }
  return compose(inner);
}

std::complex<double> Jet::eval(
    const std::map<std::string, std::complex<double>>& point) const {
  return to_poly().eval(point);
}

std::string Jet::str() const {
  std::string head = "jet N=" + std::to_string(order_) + " vars=";
  for (size_t i = 0; i < vars_.size(); ++i) {
    if (i) head += ",";
    head += vars_[i];
  }
  return head + " : " + to_poly().str();
}

Jet jet_exact_divide(const Jet& a, const Jet& b) {
  if (b.is_zero()) throw std::domain_error("jet_exact_divide: divisor vanishes to jet order");
  auto vars = merged_vars(a.vars(), b.vars());
  int v = b.valuation();
  int order = std::min(a.order(), b.order()) - v;
  if (order < 0) throw std::domain_error("jet_exact_divide: no determined terms");
  if (!a.is_zero() && a.valuation() < v)
    throw std::domain_error("jet_exact_divide: not divisible (valuation)");

  // homogeneous layers
  auto layer = [&](const Jet& j, int k) {
    MPoly p(vars);
    Jet ja = j.aligned_to(vars);
    for (const auto& [e, c] : ja.terms())
      if (exp_tdeg(e) == k) p.set_term(e, c);
    return p;
  };
  MPoly b_low = layer(b, v);
  std::vector<MPoly> q_layers;
  Jet q(vars, order);
  for (int k = 0; k <= order; ++k) {
    MPoly rhs = layer(a, v + k);
    for (int j2 = 1; j2 <= k; ++j2) rhs = rhs - layer(b, v + j2) * q_layers[static_cast<size_t>(k - j2)];
    MPoly qk = rhs.is_zero() ? MPoly(vars) : exact_divide(rhs, b_low);
    q_layers.push_back(qk);
    for (const auto& [e, c] : qk.terms()) q.add_term(e, c);
  }
  return q;
}

Jet eval_poly_at_jets(const MPoly& p, const std::map<std::string, Jet>& assign) {
  if (assign.empty()) throw std::invalid_argument("eval_poly_at_jets: empty assignment");
  int order = assign.begin()->second.order();
  std::vector<std::string> out_vars;
  for (const auto& [name, j] : assign) {
    order = std::min(order, j.order());
    out_vars = merged_vars(out_vars, j.vars());
  }
  Jet out(out_vars, order);
  std::map<std::pair<size_t, int>, Jet> pow_cache;
  const auto& vars = p.vars();
  for (const auto& [e, c] : p.terms()) {
    Jet prod = Jet::constant(c, out_vars, order);
    for (size_t i = 0; i < vars.size() && !prod.is_zero(); ++i) {
      if (e[i] == 0) continue;
      auto it = assign.find(vars[i]);
      if (it == assign.end())
        throw std::runtime_error("eval_poly_at_jets: missing assignment for " + vars[i]);
      auto key = std::make_pair(i, e[i]);
      auto pit = pow_cache.find(key);
      if (pit == pow_cache.end()) {
        Jet pw = Jet::constant(Scalar(1), out_vars, order);
        for (int k = 0; k < e[i]; ++k) pw = pw * it->second;
        pit = pow_cache.emplace(key, std::move(pw)).first;
      }
      prod = prod * pit->second;
    }
    out = out + prod;
  }
  return out;
}

MapJet::MapJet(std::vector<Jet> comps) : components(std::move(comps)) {
  for (const auto& c : components) {
    if (c.order() != components.front().order() || c.vars() != components.front().vars())
      throw std::invalid_argument("MapJet: components must share variables and order");
  }
}

MapJet invert_map_jet(const MapJet& phi) {
  size_t n = phi.size();
  if (n == 0 || phi.vars().size() != n)
    throw std::invalid_argument("invert_map_jet: map must be square");
  int order = phi.order();
  const auto& vars = phi.vars();

  std::vector<std::vector<Scalar>> lin(n, std::vector<Scalar>(n));
  for (size_t i = 0; i < n; ++i) {
    if (!phi.components[i].constant_term().is_zero())
      throw std::domain_error("invert_map_jet: phi(0) != 0");
    for (size_t j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      auto it = phi.components[i].terms().find(e);
      lin[i][j] = it == phi.components[i].terms().end() ? Scalar() : it->second;
    }
  }
  std::vector<std::vector<Scalar>> inv_lin;
  try {
    inv_lin = invert_matrix(lin);
  } catch (const std::domain_error&) {
    throw std::domain_error("invert_map_jet: linear part not invertible");
  }

  // psi <- psi - A^{-1} (phi o psi - id); gains one order per pass
  std::vector<Jet> psi(n);
  for (size_t i = 0; i < n; ++i) {
    Jet row(vars, order);
    for (size_t j = 0; j < n; ++j)
      if (!inv_lin[i][j].is_zero())
        row = row + Jet::coordinate(vars[j], vars, order) * inv_lin[i][j];
    psi[i] = row;
  }
  for (int pass = 1; pass < order; ++pass) {
    std::map<std::string, Jet> inner;
    for (size_t j = 0; j < n; ++j) inner.emplace(vars[j], psi[j]);
    std::vector<Jet> defect(n);
    bool all_zero = true;
    for (size_t i = 0; i < n; ++i) {
      defect[i] = phi.components[i].compose(inner) - Jet::coordinate(vars[i], vars, order);
      all_zero = all_zero && defect[i].is_zero();
    }
    if (all_zero) break;
    for (size_t i = 0; i < n; ++i) {
      Jet corr(vars, order);
      for (size_t j = 0; j < n; ++j)
        if (!inv_lin[i][j].is_zero()) corr = corr + defect[j] * inv_lin[i][j];
      psi[i] = psi[i] - corr;
    }
  }
  return MapJet(std::move(psi));
}

Jet parse_jet(const std::string& text) {
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error("parse_jet: " + msg + " in '" + text + "'");
  };
  size_t colon = text.find(':');
  if (colon == std::string::npos) fail("missing ':'");
  std::istringstream head(text.substr(0, colon));
  std::string tok;
  int order = -1;
  std::vector<std::string> vars;
  while (head >> tok) {
    if (tok == "jet") continue;
    if (tok.rfind("N=", 0) == 0) order = std::stoi(tok.substr(2));
    else if (tok.rfind("vars=", 0) == 0) {
      std::string list = tok.substr(5);
      size_t start = 0;
      while (start <= list.size()) {
        size_t comma = list.find(',', start);
        std::string v = list.substr(start, comma == std::string::npos ? comma : comma - start);
        if (!v.empty()) vars.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else {
      fail("unexpected token '" + tok + "'");
    }
  }
  if (order < 0) fail("missing N=");
  if (vars.empty()) fail("missing vars=");
  MPoly body = parse_poly(text.substr(colon + 1), vars);
  if (body.total_degree() > order) fail("term exceeds jet order");
  return Jet::from_poly(body, vars, order);
}

}  // namespace nashx
