#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pspin/rational.hpp"

namespace pspin {

// Dense univariate polynomial over Q.
class Poly {
 public:
  Poly() = default;
  Poly(const Q& c);  // NOLINT: implicit constant
  Poly(long c) : Poly(Q(c)) {}  // NOLINT
  explicit Poly(std::vector<Q> coeffs);

  static Poly x();
  static Poly monomial(const Q& c, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Q& coeff(int i) const;
  const Q& lc() const { return c_.back(); }
  const std::vector<Q>& coeffs() const { return c_; }
  // Lowest exponent with a nonzero coefficient; -1 for the zero polynomial.
  int valuation() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Q& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Q& s) { return a *= s; }
  Poly operator-() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly pow(int e) const;
  Poly monic() const;
  Poly derivative() const;
  // Polynomial with x replaced by s*x.
  Poly scale_var(const Q& s) const;
  Q eval(const Q& t) const;
  double eval(double t) const;
  // Multiplicity of t as a root.
  int root_order(const Q& t) const;

  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  static Poly gcd(Poly a, Poly b);

  std::string to_string(const std::string& var = "a") const;

 private:
  void trim();
  std::vector<Q> c_;
};

// Reduced quotient num/den with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(Q(1)) {}
  RatFunc(const Poly& p) : num_(p), den_(Q(1)) {}  // NOLINT
  RatFunc(const Q& c) : num_(c), den_(Q(1)) {}     // NOLINT
  RatFunc(long c) : RatFunc(Q(c)) {}               // NOLINT
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc x() { return RatFunc(Poly::x()); }
  // x^e for any integer e.
  static RatFunc xpow(int e);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  Q constant() const;
  // True when the denominator is a power of x.
  bool is_laurent() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  RatFunc operator-() const { return RatFunc(-num_, den_, true); }
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc pow(int e) const;
  // Throws DomainError carrying the pole order when den vanishes at t.
  Q eval(const Q& t) const;
  double eval(double t) const;
  int pole_order(const Q& t) const;

  // Laurent expansion (exponent, coefficient); requires is_laurent().
  std::vector<std::pair<int, Q>> laurent_terms() const;

  std::string to_string(const std::string& var = "a") const;

 private:
  RatFunc(Poly num, Poly den, bool /*reduced*/) : num_(std::move(num)), den_(std::move(den)) {}
  void reduce();
  Poly num_;
  Poly den_;
};

}  // namespace pspin
