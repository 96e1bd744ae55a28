#pragma once

#include <map>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pspin/rational.hpp"

namespace pspin {

using mp50 = boost::multiprecision::cpp_bin_float_50;

// rational * pi^k * prod prime^e (0 < e < 1) * prod Gamma(q)^m (0 < q < 1).
// Always held in canonical form, so structural equality is value equality
// within the tracked token set.
class ExactScalar {
 public:
  ExactScalar() : coeff_(1) {}
  ExactScalar(const Q& r);  // NOLINT: implicit from rational
  ExactScalar(long r) : ExactScalar(Q(r)) {}  // NOLINT

  static ExactScalar pi(int k = 1);
  static ExactScalar gamma(const Q& arg, int multiplicity = 1);
  // base^exponent for rational base > 0.
  static ExactScalar power(const Q& base, const Q& exponent);
  static ExactScalar sqrt(const Q& r) { return power(r, make_q(1, 2)); }

  const Q& rational_part() const { return coeff_; }
  int pi_power() const { return pi_; }
  const std::map<unsigned long, Q>& radicals() const { return rad_; }
  const std::map<Q, int>& gamma_tokens() const { return gam_; }

  bool is_zero() const { return coeff_ == 0; }
  bool is_rational() const { return pi_ == 0 && rad_.empty() && gam_.empty(); }
  // The scalar with rational part set to 1.
  ExactScalar shape() const;

  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
  ExactScalar operator-() const;
  ExactScalar inverse() const;
  ExactScalar pow(int e) const;

  bool operator==(const ExactScalar& o) const;
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }
  // Total order on canonical forms (shape first, then rational part).
  bool operator<(const ExactScalar& o) const;

  double to_double() const;
  mp50 to_mp() const;

  // <sign><num>/<den> * pi^<k> * sqrt(<r>) * Gamma(<a>/<b>)^<m> * <q>^(<e>)
  std::string to_string() const;

 private:
  void normalize();
  void apply_reflection();
  Q coeff_;
  int pi_ = 0;
  std::map<unsigned long, Q> rad_;
  std::map<Q, int> gam_;
};

// Canonical form; ExactScalar is kept normalized so this is the identity,
// exposed as an operation for callers that build raw token products.
ExactScalar gamma_normalize(const ExactScalar& x);

// Finite Q-linear combination of ExactScalar shapes.
class ExactSum {
 public:
  ExactSum() = default;
  ExactSum(const ExactScalar& s);  // NOLINT
  ExactSum(const Q& r) : ExactSum(ExactScalar(r)) {}  // NOLINT

  ExactSum& operator+=(const ExactSum& o);
  ExactSum& operator-=(const ExactSum& o);
  ExactSum& operator*=(const ExactScalar& s);
  ExactSum& operator*=(const ExactSum& o);
  friend ExactSum operator+(ExactSum a, const ExactSum& b) { return a += b; }
  friend ExactSum operator-(ExactSum a, const ExactSum& b) { return a -= b; }
  friend ExactSum operator*(ExactSum a, const ExactScalar& s) { return a *= s; }
  friend ExactSum operator*(ExactSum a, const ExactSum& b) { return a *= b; }
  bool operator==(const ExactSum& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExactSum& o) const { return !(*this == o); }

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const;
  // Value when the sum is a plain rational; throws otherwise.
  Q rational_value() const;
  // Single-term sums collapse to their scalar; throws otherwise.
  ExactScalar as_scalar() const;
  const std::map<ExactScalar, Q>& terms() const { return terms_; }

  double to_double() const;
  std::string to_string() const;

 private:
  std::map<ExactScalar, Q> terms_;  // shape -> rational multiplier
};

}  // namespace pspin
