#include "pspin/asymptotics.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pspin/exact_scalar.hpp"
#include "pspin/oracle.hpp"
#include "pspin/tautology.hpp"

namespace pspin {

Q bernoulli_leading(int g) { return bernoulli_g(g) / Q(factorial(2 * g) * (2 * g)); }

bool zeta_identity_holds(int g) {
  if (g < 1) throw DomainError("zeta identity needs g >= 1");
  ZetaValue z = zeta_oracle(2 * g);
  ExactScalar rhs = z.value / (ExactScalar::pi(2 * g) * ExactScalar(qpow(Q(2), 2 * g) * g));
  return rhs == ExactScalar(bernoulli_leading(g));
}

std::string verdict_name(LargePVerdict v) {
  switch (v) {
    case LargePVerdict::match:
      return "match";
    case LargePVerdict::mismatch:
      return "mismatch";
    case LargePVerdict::negligible:
      return "negligible";
  }
  return "?";
}

LargePVerdict large_p_check(const RatFunc& formula, int g) {
  if (formula.is_zero()) return LargePVerdict::negligible;
  int order = formula.num().degree() - formula.den().degree();
  if (order < g) return LargePVerdict::negligible;
  if (order > g) return LargePVerdict::mismatch;
  Q lead = formula.num().lc() / formula.den().lc();
  return lead == bernoulli_leading(g) ? LargePVerdict::match : LargePVerdict::mismatch;
}

std::vector<Q> log_sinh_series(int order) {
  if (order < 0 || order > 12) throw DomainError("log-sinh series order must be in 0..12");
  std::vector<Q> out;
  for (int n = 1; n <= order; ++n) {
    Q c = bernoulli_g(n) / Q(factorial(2 * n) * (2 * n));
    out.push_back(n % 2 ? c : Q(-c));
  }
  return out;
}

double log_sinh_partial_sum(const std::vector<Q>& coeffs, double sigma) {
  double acc = 0, pw = sigma * sigma, s2 = pw;
  for (auto& c : coeffs) {
    acc += c.get_d() * pw;
    pw *= s2;
  }
  return acc;
}

namespace {

// B_{2k} for the Stirling tails
const std::vector<double>& stirling_bernoulli() {
  static const std::vector<double> b = [] {
    std::vector<double> v;
    for (int k = 1; k <= 10; ++k) v.push_back(bernoulli(2 * k).get_d());
    return v;
  }();
  return b;
}

constexpr double kShift = 16.0;

}  // namespace

std::complex<double> complex_digamma(std::complex<double> z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw DomainError("digamma pole at a non-positive integer");
  std::complex<double> acc = 0;
  while (std::abs(z) < kShift || z.real() < 0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  std::complex<double> inv2 = 1.0 / (z * z), pw = inv2;
  std::complex<double> r = std::log(z) - 0.5 / z;
  const auto& b = stirling_bernoulli();
  for (size_t k = 0; k < b.size(); ++k) {
    r -= b[k] / (2.0 * (k + 1)) * pw;
    pw *= inv2;
  }
  return acc + r;
}

std::complex<double> complex_lgamma(std::complex<double> z) {
  if (z.imag() == 0 && z.real() <= 0 && z.real() == std::floor(z.real()))
    throw DomainError("log-gamma pole at a non-positive integer");
  // sum of principal logs keeps Im continuous along the shift path
  std::complex<double> acc = 0;
  while (std::abs(z) < kShift || z.real() < 0) {
    acc -= std::log(z);
    z += 1.0;
  }
  std::complex<double> inv = 1.0 / z, inv2 = inv * inv, pw = inv;
  std::complex<double> r = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi);
  const auto& b = stirling_bernoulli();
  for (size_t k = 0; k < b.size(); ++k) {
    double n = 2.0 * (k + 1);
    r += b[k] / (n * (n - 1)) * pw;
    pw *= inv2;
  }
  return acc + r;
}

BinetResult binet_check(double z) {
  if (!(z > 0)) throw DomainError("binet check needs z > 0");
  auto kernel = [](double s) {
    if (s < 1e-3) {
      double s2 = s * s;
      return s / 12.0 - s * s2 / 720.0 + s * s2 * s2 / 30240.0;
    }
    return 0.5 - 1.0 / s + 1.0 / std::expm1(s);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0;
  double I = integrator.integrate([&](double s) { return kernel(s) * std::exp(-s * z); }, 1e-14, &err);
  if (err > 1e-10 * std::max(1.0, std::abs(I))) throw NumericError("binet integral did not converge");
  BinetResult r;
  r.lhs = complex_digamma({z, 0}).real();
  r.rhs = std::log(z) - 0.5 / z - I;
  r.diff = std::abs(r.lhs - r.rhs);
  // s U(s) = -log(sinh(s/2)/(s/2))
  auto sU = [](double s) { return -std::log(std::sinh(s / 2) / (s / 2)); };
  for (double s : {0.25, 0.5, 1.0, 2.0, 5.0}) {
    double h = 1e-5;
    double d = (sU(s + h) - sU(s - h)) / (2 * h);
    double want = 1 / s - 0.5 - 1 / std::expm1(s);
    r.bridge_diff = std::max(r.bridge_diff, std::abs(d - want));
  }
  return r;
}

DensityConfig DensityConfig::linear(double e_min, double e_max, int samples) {
  if (!(e_min > 0)) throw DomainError("energy grid must be strictly positive (pole at E = 0)");
  if (samples < 2 || !(e_max > e_min)) throw DomainError("energy grid needs e_max > e_min and >= 2 samples");
  DensityConfig c;
  for (int i = 0; i < samples; ++i) c.E_grid.push_back(e_min + (e_max - e_min) * i / (samples - 1));
  return c;
}

std::vector<DensityPoint> rho_density(const DensityConfig& cfg) {
  std::vector<DensityPoint> out;
  for (double E : cfg.E_grid) {
    if (!(E > 0)) throw DomainError("density needs E > 0");
    DensityPoint d;
    d.E = E;
    double tail = std::numbers::pi / 2 + 0.5 / E;
    d.rho = complex_digamma({0, E}).real() - tail;
    double h = 1e-4 * std::max(1.0, E * 1e-2);
    double fd = (complex_lgamma({0, E + h}).imag() - complex_lgamma({0, E - h}).imag()) / (2 * h);
    d.rho_fd = fd - tail;
    out.push_back(d);
  }
  return out;
}

double blackhole_density(double E, double epsilon) {
  // d/dE Im log Gamma(-iE) = -Re psi(-iE)
  return -2 / std::numbers::pi * complex_digamma({0, -E}).real() + std::log(epsilon) / std::numbers::pi;
}

AffineFitReport blackhole_density_compare(const DensityConfig& cfg) {
  AffineFitReport r;
  auto rho = rho_density(cfg);
  const size_t n = rho.size();
  if (n < 2) throw DomainError("affine fit needs at least two energies");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& d : rho) {
    double x = blackhole_density(d.E, cfg.epsilon);
    r.E.push_back(d.E);
    r.rho_matrix.push_back(d.rho);
    r.rho_bh.push_back(x);
    sx += x;
    sy += d.rho;
    sxx += x * x;
    sxy += x * d.rho;
  }
  double det = n * sxx - sx * sx;
  if (det == 0) throw NumericError("degenerate affine fit");
  r.alpha = (n * sxy - sx * sy) / det;
  r.beta = (sy - r.alpha * sx) / n;
  for (size_t i = 0; i < n; ++i) {
    double res = r.rho_matrix[i] - (r.alpha * r.rho_bh[i] + r.beta);
    r.residual.push_back(res);
    r.max_residual = std::max(r.max_residual, std::abs(res));
  }
  return r;
}

std::string AffineFitReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "E,rho_matrix,rho_bh,residual\n";
  for (size_t i = 0; i < E.size(); ++i) os << E[i] << "," << rho_matrix[i] << "," << rho_bh[i] << "," << residual[i] << "\n";
  return os.str();
}

Q central_charge(const Q& k) {
  if (k == -2) throw DomainError("central charge has a pole at k = -2");
  return Q(2) - Q(6) / (k + 2);
}

Q central_charge_negative(const Q& kprime) {
  if (kprime == 2) throw DomainError("central charge has a pole at k' = 2");
  return Q(2) + Q(6) / (kprime - 2);
}

}  // namespace pspin
