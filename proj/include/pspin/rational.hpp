#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace pspin {

using Q = mpq_class;
using Z = mpz_class;

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Quadrature or series evaluation that could not reach its tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Q make_q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

Z factorial(long n);
Z binomial(long n, long k);
Q qpow(const Q& base, long e);
long to_long(const Z& z);

// Floor of a rational, as an integer.
Z qfloor(const Q& x);
bool is_integer(const Q& x);

// Signed Bernoulli number B_n (B_1 = -1/2).
Q bernoulli(long n);

std::string to_string(const Q& x);
std::string to_string(const Z& x);

}  // namespace pspin
