#include "pspin/rational.hpp"

#include <mutex>
#include <vector>

namespace pspin {

Z factorial(long n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  Z r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Z binomial(long n, long k) {
  if (k < 0) return 0;
  Z r;
  if (n >= 0) {
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
  }
  Z nn = n;
  mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

Q qpow(const Q& base, long e) {
  if (e < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return qpow(Q(1) / base, -e);
  }
  Q num, den;
  mpz_pow_ui(num.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_num_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return num / den;
}

long to_long(const Z& z) {
  if (!z.fits_slong_p()) throw DomainError("integer out of range");
  return z.get_si();
}

Z qfloor(const Q& x) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

bool is_integer(const Q& x) { return x.get_den() == 1; }

Q bernoulli(long n) {
  static std::mutex mu;
  static std::vector<Q> table{Q(1)};
  if (n < 0) throw DomainError("Bernoulli index must be non-negative");
  std::lock_guard<std::mutex> lock(mu);
  // sum_{k=0}^{m} C(m+1,k) B_k = 0
  while (static_cast<long>(table.size()) <= n) {
    long m = static_cast<long>(table.size());
    Q acc = 0;
    for (long k = 0; k < m; ++k) acc += Q(binomial(m + 1, k)) * table[k];
    table.push_back(-acc / Q(m + 1));
  }
  return table[n];
}

std::string to_string(const Q& x) { return x.get_str(); }
std::string to_string(const Z& x) { return x.get_str(); }

}  // namespace pspin
