#pragma once

#include <map>
#include <string>
#include <vector>

#include "pspin/exact_scalar.hpp"

namespace pspin {

// Exponent m + (1+j)/p. j = -1 encodes an integer exponent m; proper spin
// labels have 0 <= j <= p-2.
struct FracExp {
  int m = 0;
  int j = -1;

  static FracExp from_numerator(long e, int p);  // e/p
  long numerator(int p) const { return static_cast<long>(p) * m + j + 1; }
  bool is_integer() const { return j == -1; }
  auto operator<=>(const FracExp&) const = default;
};

using Monomial = std::vector<FracExp>;

class FractionalSeries {
 public:
  // cutoff: maximum total degree, as a numerator over p; negative = none.
  FractionalSeries(int p, int vars, long cutoff_num = -1);

  static FractionalSeries one(int p, int vars, long cutoff_num = -1);
  static FractionalSeries term(int p, const std::vector<long>& numerators, const ExactSum& c,
                               long cutoff_num = -1);

  int p() const { return p_; }
  int vars() const { return vars_; }
  long cutoff() const { return cutoff_; }
  const std::map<Monomial, ExactSum>& terms() const { return terms_; }

  void add_term(const Monomial& mono, const ExactSum& c);
  void add_term(const std::vector<long>& numerators, const ExactSum& c);
  ExactSum coefficient(const Monomial& mono) const;

  FractionalSeries& operator+=(const FractionalSeries& o);
  FractionalSeries& operator*=(const ExactScalar& s);
  bool operator==(const FractionalSeries& o) const;

  // Exchange two variables.
  FractionalSeries swapped(int i, int k) const;
  std::string to_string() const;

 private:
  void check_compatible(const FractionalSeries& o) const;
  long total(const Monomial& m) const;
  int p_;
  int vars_;
  long cutoff_;
  std::map<Monomial, ExactSum> terms_;
};

FractionalSeries series_add(const FractionalSeries& f, const FractionalSeries& g);
FractionalSeries series_mul(const FractionalSeries& f, const FractionalSeries& g);

}  // namespace pspin
