#pragma once

#include <map>
#include <string>

#include "pspin/poly.hpp"

namespace pspin {

// Laurent polynomial in p.
class LaurentP {
 public:
  LaurentP() = default;
  LaurentP(const Q& c);  // NOLINT
  static LaurentP monomial(const Q& c, int e);
  static LaurentP from_ratfunc(const RatFunc& f);

  const std::map<int, Q>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  LaurentP& operator+=(const LaurentP& o);
  LaurentP& operator*=(const LaurentP& o);
  friend LaurentP operator+(LaurentP a, const LaurentP& b) { return a += b; }
  friend LaurentP operator*(LaurentP a, const LaurentP& b) { return a *= b; }
  bool operator==(const LaurentP& o) const { return c_ == o.c_; }

  Q eval(const Q& p) const;
  RatFunc to_ratfunc() const;
  std::string to_string(const std::string& var = "p") const;

 private:
  std::map<int, Q> c_;
};

// Exact value of a rational function of p; poles raise DomainError naming the order.
Q laurent_eval(const RatFunc& f, const Q& p);

// Rendering as factored-looking "num/den" with the variable p.
std::string render_p(const RatFunc& f);

}  // namespace pspin
