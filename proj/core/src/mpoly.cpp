#include "nashx/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <sstream>

namespace nashx {

std::string rational_str(const mpq_class& q) { return q.get_str(); }

std::string Scalar::str() const {
  if (is_zero()) return "0";
  std::string imart;
  if (im != 0) {
    if (im == 1) imart = "i";
    else if (im == -1) imart = "-i";
    else imart = rational_str(im) + "*i";
  }
  if (im == 0) return rational_str(re);
  if (re == 0) return imart;
  std::string s = rational_str(re);
  if (im > 0) s += "+";
  return s + imart;
}

std::vector<std::string> merged_vars(const std::vector<std::string>& a,
                                     const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

MPoly MPoly::constant(const Scalar& c, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  if (!c.is_zero()) p.terms_[Exponents(p.vars_.size(), 0)] = c;
  return p;
}

MPoly MPoly::variable(const std::string& name, std::vector<std::string> vars) {
  MPoly p(std::move(vars));
  Exponents e(p.vars_.size(), 0);
  auto it = std::find(p.vars_.begin(), p.vars_.end(), name);
  if (it == p.vars_.end()) throw std::runtime_error("MPoly::variable: unknown variable " + name);
  e[static_cast<size_t>(it - p.vars_.begin())] = 1;
  p.terms_[e] = Scalar(1);
  return p;
}

int MPoly::var_index(const std::string& var) const {
  auto it = std::find(vars_.begin(), vars_.end(), var);
  return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
}

Scalar MPoly::constant_term() const {
  Exponents zero(vars_.size(), 0);
  auto it = terms_.find(zero);
  return it == terms_.end() ? Scalar() : it->second;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int t = 0;
    for (int k : e) t += k;
    d = std::max(d, t);
  }
  return d;
}

int MPoly::degree(const std::string& var) const {
  int idx = var_index(var);
  if (idx < 0) return terms_.empty() ? -1 : 0;
  int d = terms_.empty() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[idx]);
  return d;
}

MPoly MPoly::coeff(const std::string& var, int k) const {
  int idx = var_index(var);
  MPoly out(vars_);
  if (idx < 0) {
    if (k == 0) return *this;
    return out;
  }
  for (const auto& [e, c] : terms_) {
    if (e[idx] == k) {
      Exponents e2 = e;
      e2[idx] = 0;
      out.terms_[e2] = c;
    }
  }
  return out;
}

MPoly MPoly::lead_coeff(const std::string& var) const {
  return coeff(var, std::max(degree(var), 0));
}

bool MPoly::is_unitary_in(const std::string& var) const {
  if (degree(var) < 1) return false;
  MPoly lc = lead_coeff(var);
  return lc.is_constant() && lc.constant_term().is_one();
}

void MPoly::set_term(const Exponents& e, const Scalar& c) {
  assert(e.size() == vars_.size());
  if (c.is_zero()) terms_.erase(e);
  else terms_[e] = c;
}

void MPoly::add_term(const Exponents& e, const Scalar& c) {
  assert(e.size() == vars_.size());
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_[e] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::aligned_to(const std::vector<std::string>& vars) const {
  MPoly out(vars);
  std::vector<int> pos(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) {
      // only legal if the variable is unused
      for (const auto& [e, c] : terms_)
        if (e[i] != 0) throw std::runtime_error("aligned_to: variable " + vars_[i] + " dropped");
      pos[i] = -1;
    } else {
      pos[i] = static_cast<int>(it - vars.begin());
    }
  }
  for (const auto& [e, c] : terms_) {
    Exponents e2(vars.size(), 0);
    for (size_t i = 0; i < vars_.size(); ++i)
      if (e[i] != 0) e2[static_cast<size_t>(pos[i])] = e[i];
    out.terms_[e2] = c;
  }
  return out;
}

MPoly MPoly::pruned() const {
  std::vector<std::string> used;
  for (size_t i = 0; i < vars_.size(); ++i) {
    bool occurs = false;
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) { occurs = true; break; }
    if (occurs) used.push_back(vars_[i]);
  }
  return aligned_to(used);
}

MPoly MPoly::operator-() const {
  MPoly out(vars_);
  for (const auto& [e, c] : terms_) out.terms_[e] = -c;
  return out;
}

MPoly MPoly::operator+(const MPoly& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  MPoly a = aligned_to(vars), b = o.aligned_to(vars);
  for (const auto& [e, c] : b.terms_) a.add_term(e, c);
  return a;
}

MPoly MPoly::operator-(const MPoly& o) const { return *this + (-o); }

MPoly MPoly::operator*(const MPoly& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  MPoly a = aligned_to(vars), b = o.aligned_to(vars);
  MPoly out(vars);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(vars.size());
      for (size_t i = 0; i < vars.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MPoly MPoly::operator*(const Scalar& c) const {
  MPoly out(vars_);
  if (c.is_zero()) return out;
  for (const auto& [e, t] : terms_) out.terms_[e] = t * c;
  return out;
}

MPoly MPoly::pow(int k) const {
  if (k < 0) throw std::domain_error("MPoly::pow: negative exponent");
  MPoly out = constant(Scalar(1), vars_);
  MPoly base = *this;
  while (k > 0) {
    if (k & 1) out = out * base;
    base = (k >>= 1) ? base * base : base;
  }
  return out;
}

bool MPoly::operator==(const MPoly& o) const {
  auto vars = merged_vars(vars_, o.vars_);
  return aligned_to(vars).terms_ == o.aligned_to(vars).terms_;
}

MPoly MPoly::substitute(const std::map<std::string, MPoly>& repl) const {
  std::vector<std::string> out_vars;
  for (const auto& v : vars_) {
    auto it = repl.find(v);
    if (it == repl.end()) out_vars = merged_vars(out_vars, {v});
    else out_vars = merged_vars(out_vars, it->second.vars());
  }
  MPoly out(out_vars);
  std::map<std::pair<size_t, int>, MPoly> pow_cache;
  for (const auto& [e, c] : terms_) {
    MPoly prod = constant(c, out_vars);
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto key = std::make_pair(i, e[i]);
      auto pit = pow_cache.find(key);
      if (pit == pow_cache.end()) {
        auto rit = repl.find(vars_[i]);
        MPoly base = (rit == repl.end()) ? variable(vars_[i], {vars_[i]}) : rit->second;
        pit = pow_cache.emplace(key, base.pow(e[i])).first;
      }
      prod = prod * pit->second;
    }
    out = out + prod;
  }
  return out;
}

MPoly MPoly::derivative(const std::string& var) const {
  int idx = var_index(var);
  MPoly out(vars_);
  if (idx < 0) return out;
  for (const auto& [e, c] : terms_) {
    if (e[idx] == 0) continue;
    Exponents e2 = e;
    e2[idx] -= 1;
    out.add_term(e2, c * Scalar(e[idx]));
  }
  return out;
}

Scalar MPoly::eval(const std::map<std::string, Scalar>& point) const {
  Scalar acc;
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw std::runtime_error("eval: missing value for " + vars_[i]);
      Scalar p = it->second;
      for (int k = 0; k < e[i]; ++k) t *= p;
    }
    acc += t;
  }
  return acc;
}

std::complex<double> MPoly::eval(
    const std::map<std::string, std::complex<double>>& point) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms_) {
    std::complex<double> t = c.to_complex();
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw std::runtime_error("eval: missing value for " + vars_[i]);
      for (int k = 0; k < e[i]; ++k) t *= it->second;
    }
    acc += t;
  }
  return acc;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  // sort: total degree descending, then exponent vector descending
  std::vector<const std::pair<const Exponents, Scalar>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  auto tdeg = [](const Exponents& e) { int s = 0; for (int k : e) s += k; return s; };
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) {
    int da = tdeg(a->first), db = tdeg(b->first);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  bool first = true;
  for (auto* t : order) {
    const Exponents& e = t->first;
    Scalar c = t->second;
    std::string mono;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    bool negative = false;
    if (c.im == 0 && c.re < 0) { negative = true; c = -c; }
    else if (c.re == 0 && c.im < 0) { negative = true; c = -c; }
    std::string cs;
    if (mono.empty()) cs = c.str();
    else if (c.is_one()) cs = "";
    else if (c.re != 0 && c.im != 0) cs = "(" + c.str() + ")";
    else cs = c.str();
    std::string term = cs.empty() ? mono : (mono.empty() ? cs : cs + "*" + mono);
    if (first) {
      out += negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// exact division

namespace {

int exp_tdeg(const Exponents& e) {
  int s = 0;
  for (int k : e) s += k;
  return s;
}

// graded-lex leading term
const std::pair<const Exponents, Scalar>* leading_term(const MPoly& p) {
  const std::pair<const Exponents, Scalar>* best = nullptr;
  for (const auto& t : p.terms()) {
    if (!best) { best = &t; continue; }
    int da = exp_tdeg(t.first), db = exp_tdeg(best->first);
    if (da > db || (da == db && t.first > best->first)) best = &t;
  }
  return best;
}

}  // namespace

MPoly exact_divide(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  auto vars = merged_vars(a.vars(), b.vars());
  MPoly rem = a.aligned_to(vars), div = b.aligned_to(vars);
  MPoly q(vars);
  auto* ltb = leading_term(div);
  while (!rem.is_zero()) {
    auto* lta = leading_term(rem);
    Exponents e(vars.size());
    for (size_t i = 0; i < vars.size(); ++i) {
      e[i] = lta->first[i] - ltb->first[i];
      if (e[i] < 0) throw std::domain_error("exact_divide: not exactly divisible");
    }
    Scalar c = lta->second / ltb->second;
    MPoly t(vars);
    t.set_term(e, c);
    q = q + t;
    rem = rem - t * div;
  }
  return q;
}

// ---------------------------------------------------------------------------
// resultant / discriminant

MPoly resultant(const MPoly& a, const MPoly& b, const std::string& var) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("resultant: both inputs zero");
  auto vars = merged_vars(merged_vars(a.vars(), b.vars()), {var});
  MPoly pa = a.aligned_to(vars), pb = b.aligned_to(vars);
  int da = std::max(pa.degree(var), 0), db = std::max(pb.degree(var), 0);
  if (pa.is_zero() || pb.is_zero()) return MPoly(vars);
  if (da == 0 && db == 0) return MPoly::constant(Scalar(1), vars);
  if (da == 0) return pa.pow(db);
  if (db == 0) return pb.pow(da);

  // Sylvester matrix, then fraction-free Bareiss elimination.
  int n = da + db;
  std::vector<std::vector<MPoly>> M(static_cast<size_t>(n),
                                    std::vector<MPoly>(static_cast<size_t>(n), MPoly(vars)));
  for (int r = 0; r < db; ++r)
    for (int k = 0; k <= da; ++k) M[r][r + k] = pa.coeff(var, da - k);
  for (int r = 0; r < da; ++r)
    for (int k = 0; k <= db; ++k) M[db + r][r + k] = pb.coeff(var, db - k);

  MPoly prev = MPoly::constant(Scalar(1), vars);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (!M[r][k].is_zero()) { swap_row = r; break; }
      if (swap_row < 0) return MPoly(vars);  // singular: resultant 0
      std::swap(M[k], M[swap_row]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c)
        M[r][c] = exact_divide(M[r][c] * M[k][k] - M[r][k] * M[k][c], prev);
      M[r][k] = MPoly(vars);
    }
    prev = M[k][k];
  }
  MPoly det = M[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

MPoly discriminant(const MPoly& p, const std::string& var) {
  int d = p.degree(var);
  if (d < 1 || !p.is_unitary_in(var))
    throw std::domain_error("discriminant: input not unitary in " + var);
  MPoly r = resultant(p, p.derivative(var), var);
  int sign_exp = (d * (d - 1) / 2) % 2;
  return sign_exp ? -r : r;
}

// ---------------------------------------------------------------------------
// gcd over Q(i)[vars]

namespace {

// pseudo-remainder of a by b in var (deg a >= deg b >= 0 in var)
MPoly pseudo_rem(MPoly a, const MPoly& b, const std::string& var) {
  int db = b.degree(var);
  MPoly lcb = b.lead_coeff(var);
  MPoly xv = MPoly::variable(var, {var});
  while (!a.is_zero() && a.degree(var) >= db) {
    int da = a.degree(var);
    MPoly lca = a.lead_coeff(var);
    a = a * lcb - b * lca * xv.pow(da - db);
    if (a.degree(var) >= da && !a.is_zero())
      throw std::logic_error("pseudo_rem: degree did not drop");
  }
  return a;
}

// normalize so the graded-lex leading coefficient is 1
MPoly normalize_unit(const MPoly& p) {
  if (p.is_zero()) return p;
  auto* lt = leading_term(p);
  return p * lt->second.inverse();
}

MPoly content_in(const MPoly& p, const std::string& var) {
  MPoly c(p.vars());
  for (int k = 0; k <= std::max(p.degree(var), 0); ++k) {
    MPoly ck = p.coeff(var, k);
    if (ck.is_zero()) continue;
    c = c.is_zero() ? ck : poly_gcd(c, ck);
    if (c.is_constant()) break;
  }
  return c.is_zero() ? MPoly::constant(Scalar(1), p.vars()) : c;
}

}  // namespace

MPoly poly_gcd(const MPoly& a, const MPoly& b) {
  MPoly pa = a.pruned(), pb = b.pruned();
  if (pa.is_zero()) return normalize_unit(pb);
  if (pb.is_zero()) return normalize_unit(pa);
  if (pa.is_constant() || pb.is_constant())
    return MPoly::constant(Scalar(1));

  // main variable: one occurring in both (else the gcd is constant)
  std::string var;
  for (const auto& v : pa.vars())
    if (pb.degree(v) > 0 && pa.degree(v) > 0) { var = v; break; }
  if (var.empty()) return MPoly::constant(Scalar(1));

  MPoly ca = content_in(pa, var), cb = content_in(pb, var);
  MPoly r0 = exact_divide(pa, ca), r1 = exact_divide(pb, cb);
  if (r0.degree(var) < r1.degree(var)) std::swap(r0, r1);
  while (true) {
    MPoly r = pseudo_rem(r0, r1, var);
    if (r.is_zero()) break;
    if (r.degree(var) == 0) {
      r1 = MPoly::constant(Scalar(1));
      break;
    }
    r = exact_divide(r, content_in(r, var));
    r0 = r1;
    r1 = r;
  }
  MPoly g = exact_divide(r1, content_in(r1, var)) * poly_gcd(ca, cb);
  return normalize_unit(g.pruned());
}

MPoly squarefree_part(const MPoly& p, const std::string& var) {
  if (p.degree(var) < 1) return p;
  MPoly g = poly_gcd(p, p.derivative(var));
  if (g.is_constant()) return normalize_unit(p);
  return normalize_unit(exact_divide(p, g));
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
  const std::string& text;
  const std::vector<std::string>& vars;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("parse error at position " + std::to_string(pos) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) { ++pos; return true; }
    return false;
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  MPoly expr() {
    MPoly acc = term();
    while (true) {
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else return acc;
    }
  }

  MPoly term() {
    MPoly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  MPoly factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    MPoly base = atom();
    while (eat('^')) {
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected integer exponent after '^'");
      long e = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        e = e * 10 + (text[pos++] - '0');
      base = base.pow(static_cast<int>(e));
    }
    return base;
  }

  MPoly atom() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '(') {
      ++pos;
      MPoly inner = expr();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        num += text[pos++];
      std::string den = "1";
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den.clear();
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          den += text[pos++];
        if (den.empty()) fail("expected denominator");
      }
      mpq_class q(num + "/" + den);
      q.canonicalize();
      return MPoly::constant(Scalar(q), vars);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
              text[pos] == '\''))
        name += text[pos++];
      if (name == "i") return MPoly::constant(Scalar::imaginary_unit(), vars);
      if (std::find(vars.begin(), vars.end(), name) == vars.end())
        fail("unknown variable '" + name + "'");
      return MPoly::variable(name, vars);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

MPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  Parser p{text, vars};
  MPoly out = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out.aligned_to(vars);
}

}  // namespace nashx
