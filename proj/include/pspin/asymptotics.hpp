#pragma once

#include <complex>
#include <string>
#include <vector>

#include "pspin/poly.hpp"

namespace pspin {

// B_g / ((2g)! 2g) with B_g = |B_{2g}|.
Q bernoulli_leading(int g);
// B_g/((2g)!(2g)) == zeta(2g)/((2 pi)^{2g} g), compared as exact scalars.
bool zeta_identity_holds(int g);

enum class LargePVerdict { match, mismatch, negligible };
std::string verdict_name(LargePVerdict v);
// Compares the p^g coefficient at large p with bernoulli_leading(g).
LargePVerdict large_p_check(const RatFunc& formula, int g);

// Coefficients c_n of log(sinh(s/2)/(s/2)) = sum c_n s^{2n}, n = 1..order.
std::vector<Q> log_sinh_series(int order);
double log_sinh_partial_sum(const std::vector<Q>& coeffs, double sigma);

std::complex<double> complex_digamma(std::complex<double> z);
std::complex<double> complex_lgamma(std::complex<double> z);

struct BinetResult {
  double lhs = 0;  // psi(z)
  double rhs = 0;  // log z - 1/(2z) - int_0^inf (1/2 - 1/s + 1/(e^s - 1)) e^{-s z} ds
  double diff = 0;
  double bridge_diff = 0;  // max |d/ds(s U(s)) - (1/s - 1/2 - 1/(e^s - 1))| on a sample of s
};
BinetResult binet_check(double z);

struct DensityConfig {
  std::vector<double> E_grid;
  double epsilon = 1.0;
  double tol = 1e-10;
  static DensityConfig linear(double e_min, double e_max, int samples);
};

struct DensityPoint {
  double E = 0;
  double rho = 0;     // Re psi(iE) - pi/2 - 1/(2E)
  double rho_fd = 0;  // same from a central difference of Im log Gamma(iE)
};
std::vector<DensityPoint> rho_density(const DensityConfig& cfg);

// (2/pi) d/dE Im log Gamma(-iE) + (1/pi) log epsilon
double blackhole_density(double E, double epsilon);

struct AffineFitReport {
  double alpha = 0;
  double beta = 0;
  double max_residual = 0;
  std::vector<double> E, rho_matrix, rho_bh, residual;
  std::string to_csv() const;
};
AffineFitReport blackhole_density_compare(const DensityConfig& cfg);

// C = 2 - 6/(k+2); negative branch C = 2 + 6/(k' - 2).
Q central_charge(const Q& k);
Q central_charge_negative(const Q& kprime);

}  // namespace pspin
