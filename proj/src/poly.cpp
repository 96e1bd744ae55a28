#include "pspin/poly.hpp"

#include <sstream>

namespace pspin {

namespace {
const Q kZero(0);
}

Poly::Poly(const Q& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Q> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return monomial(Q(1), 1); }

Poly Poly::monomial(const Q& c, int degree) {
  if (degree < 0) throw DomainError("negative monomial degree");
  Poly p;
  if (c == 0) return p;
  p.c_.assign(degree + 1, Q(0));
  p.c_[degree] = c;
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Q& Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0) return static_cast<int>(i);
  return -1;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Q(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Q(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  if (is_zero() || o.is_zero()) {
    c_.clear();
    return *this;
  }
  std::vector<Q> r(c_.size() + o.c_.size() - 1, Q(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(const Q& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& c : c_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw DomainError("negative polynomial power");
  Poly r(Q(1)), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly r = *this;
  Q inv = Q(1) / lc();
  r *= inv;
  return r;
}

Poly Poly::derivative() const {
  Poly r;
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * Q(static_cast<long>(i));
  r.trim();
  return r;
}

Poly Poly::scale_var(const Q& s) const {
  Poly r = *this;
  Q f = 1;
  for (auto& c : r.c_) {
    c *= f;
    f *= s;
  }
  r.trim();
  return r;
}

Q Poly::eval(const Q& t) const {
  Q r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
  return r;
}

double Poly::eval(double t) const {
  double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + it->get_d();
  return r;
}

int Poly::root_order(const Q& t) const {
  if (is_zero()) throw DomainError("root order of zero polynomial");
  int k = 0;
  Poly lin(std::vector<Q>{-t, Q(1)});
  Poly cur = *this;
  while (true) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) return k;
    cur = q;
    ++k;
  }
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  Poly q, r = a;
  if (a.degree() < b.degree()) return {q, r};
  q.c_.assign(a.degree() - b.degree() + 1, Q(0));
  Q inv = Q(1) / b.lc();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    int shift = r.degree() - b.degree();
    Q f = r.lc() * inv;
    q.c_[shift] = f;
    for (int i = 0; i <= b.degree(); ++i) r.c_[i + shift] -= f * b.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Q& c = c_[i];
    if (c == 0) continue;
    Q mag = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = (mag == 1 && i > 0);
    if (!unit) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  reduce();
}

RatFunc RatFunc::xpow(int e) {
  if (e >= 0) return RatFunc(Poly::monomial(Q(1), e));
  return RatFunc(Poly(Q(1)), Poly::monomial(Q(1), -e));
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = Poly(Q(1));
    return;
  }
  if (den_.degree() > 0) {
    Poly g = Poly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Poly::divmod(num_, g).first;
      den_ = Poly::divmod(den_, g).first;
    }
  }
  Q l = den_.lc();
  if (l != 1) {
    Q inv = Q(1) / l;
    num_ *= inv;
    den_ *= inv;
  }
}

Q RatFunc::constant() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.coeff(0);
}

bool RatFunc::is_laurent() const {
  int d = den_.degree();
  return den_.coeff(d) == 1 && den_.valuation() == d;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    reduce();
    return *this;
  }
  Poly g = Poly::gcd(den_, o.den_);
  Poly d1 = Poly::divmod(den_, g).first;
  Poly d2 = Poly::divmod(o.den_, g).first;
  num_ = num_ * d2 + o.num_ * d1;
  den_ = den_ * d2;
  reduce();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (is_polynomial() && o.is_polynomial()) {
    num_ *= o.num_;
    return *this;
  }
  // Cross-cancel before multiplying to keep degrees small.
  Poly g1 = Poly::gcd(num_, o.den_);
  Poly g2 = Poly::gcd(o.num_, den_);
  Poly n1 = Poly::divmod(num_, g1).first, d2 = Poly::divmod(o.den_, g1).first;
  Poly n2 = Poly::divmod(o.num_, g2).first, d1 = Poly::divmod(den_, g2).first;
  num_ = n1 * n2;
  den_ = d1 * d2;
  Q l = den_.lc();
  if (l != 1) {
    Q inv = Q(1) / l;
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) {
  if (o.is_zero()) throw DomainError("rational function division by zero");
  return *this *= RatFunc(o.den_, o.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(den_, num_).pow(-e);
  return RatFunc(num_.pow(e), den_.pow(e));
}

int RatFunc::pole_order(const Q& t) const {
  if (den_.eval(t) != 0) return 0;
  return den_.root_order(t);
}

Q RatFunc::eval(const Q& t) const {
  Q d = den_.eval(t);
  if (d == 0) {
    throw DomainError("pole of order " + std::to_string(pole_order(t)) + " at " + t.get_str());
  }
  return num_.eval(t) / d;
}

double RatFunc::eval(double t) const { return num_.eval(t) / den_.eval(t); }

std::vector<std::pair<int, Q>> RatFunc::laurent_terms() const {
  if (!is_laurent()) throw DomainError("rational function is not a Laurent polynomial");
  std::vector<std::pair<int, Q>> out;
  int shift = den_.degree();
  for (int i = 0; i <= num_.degree(); ++i)
    if (num_.coeff(i) != 0) out.emplace_back(i - shift, num_.coeff(i));
  return out;
}

std::string RatFunc::to_string(const std::string& var) const {
  if (is_polynomial()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace pspin
