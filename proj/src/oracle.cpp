#include "pspin/oracle.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <cstdio>
#include <complex>
#include <random>

#include "json.hpp"
#include "pspin/airy.hpp"

namespace pspin {

double quad_moment(int n, int b, int c, double a, double tol) {
  if (n < 0 || b < 0 || c < 0) throw DomainError("moment indices must be non-negative");
  if (a < 0) throw DomainError("quad_moment needs a >= 0");
  // Ai^(b)(y) < y^(b/2+1) e^{-2/3 y^{3/2}}; beyond y = 40 the integrand is below 1e-60.
  constexpr double upper = 40.0;
  auto f = [&](double y) { return std::pow(y, n) * airy_deriv(b, y) * airy_deriv(c, -a * y); };
  double total = 0, err_total = 0;
  // panels keep the oscillating second factor well resolved; shallow refinement
  // makes an unreachable tolerance fail fast instead of stalling
  constexpr int panels = 20;
  constexpr unsigned max_depth = 6;
  for (int k = 0; k < panels; ++k) {
    double lo = upper * k / panels, hi = upper * (k + 1) / panels;
    double err = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, max_depth, tol / panels, &err);
    err_total += err;
  }
  if (err_total > tol * std::max(1.0, std::abs(total)))
  {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", err_total);
    throw NumericError(std::string("quad_moment: achieved error bound ") + buf);
  }
  return total;
}

std::vector<McEstimate> mc_trace_moments(const McConfig& cfg) {
  const int N = cfg.N;
  if (N < 1 || static_cast<int>(cfg.eigenvalues.size()) != N) throw DomainError("McConfig: need N eigenvalues");
  if (cfg.samples < 2) throw DomainError("McConfig: need at least two samples");
  for (auto& pt : cfg.points)
    if (pt.empty() || pt.size() > 2) throw DomainError("McConfig: points have one or two s values");
  const size_t P = cfg.points.size();
  std::vector<double> sum(P, 0.0), sumsq(P, 0.0);
  Eigen::MatrixXcd M(N, N);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(N);
  const double sd = 1.0 / std::sqrt(static_cast<double>(N));
  const double sd_off = 1.0 / std::sqrt(2.0 * N);
  std::vector<double> ev(N);
  for (long i = 0; i < cfg.samples; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(static_cast<std::uint64_t>(i) >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int r = 0; r < N; ++r) {
      M(r, r) = cfg.eigenvalues[r] + sd * normal(rng);
      for (int c = r + 1; c < N; ++c) {
        double re = normal(rng), im = normal(rng);
        M(r, c) = std::complex<double>(re, im) * sd_off;
        M(c, r) = std::conj(M(r, c));
      }
    }
    solver.compute(M, Eigen::EigenvaluesOnly);
    for (int r = 0; r < N; ++r) ev[r] = solver.eigenvalues()[r];
    for (size_t k = 0; k < P; ++k) {
      auto tr = [&](double s) {
        double t = 0;
        for (double e : ev) t += std::exp(s * e);
        return t / N;
      };
      double v = tr(cfg.points[k][0]);
      if (cfg.points[k].size() == 2) v *= tr(cfg.points[k][1]);
      sum[k] += v;
      sumsq[k] += v * v;
    }
  }
  std::vector<McEstimate> out(P);
  const double S = static_cast<double>(cfg.samples);
  for (size_t k = 0; k < P; ++k) {
    double mean = sum[k] / S;
    double var = std::max(0.0, (sumsq[k] / S - mean * mean) * S / (S - 1));
    out[k] = {mean, std::sqrt(var / S)};
  }
  return out;
}

ZetaValue zeta_oracle(int n) {
  if (n == 1) throw DomainError("zeta has a pole at 1");
  ZetaValue z;
  if (n <= 0) {
    // zeta(-k) = (-1)^k B_{k+1}/(k+1); zero at negative even integers
    int k = -n;
    Q v = (k % 2 ? Q(-1) : Q(1)) * bernoulli(k + 1) / Q(k + 1);
    if (k == 0) v = Q(-1, 2);
    z.exact = true;
    z.value = ExactScalar(v);
    z.numeric = z.value.to_mp();
    return z;
  }
  if (n % 2 == 0) {
    // zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!)
    int k = n / 2;
    Q v = ((k + 1) % 2 ? Q(-1) : Q(1)) * bernoulli(n) * qpow(Q(2), n) / Q(2 * factorial(n));
    z.exact = true;
    z.value = ExactScalar(v) * ExactScalar::pi(n);
    z.numeric = z.value.to_mp();
    return z;
  }
  z.numeric = boost::math::zeta(mp50(n));
  return z;
}

const std::vector<NamedMoment>& airy_named_moments() {
  static const std::vector<NamedMoment> m = {
      {"I1", 5, 0, 0}, {"I2", 1, 2, 0}, {"I3", 1, 0, 2}, {"I4", 1, 1, 1}, {"I5", 3, 1, 0},
      {"I6", 3, 0, 1}, {"J1", 7, 0, 0}, {"J2", 5, 1, 0}, {"J3", 5, 0, 1}, {"J4", 3, 1, 1},
      {"J5", 3, 2, 0}, {"J6", 3, 0, 2}, {"J7", 1, 3, 0}, {"J8", 1, 0, 3}, {"J9", 1, 2, 1},
      {"J10", 1, 1, 2}, {"K1", 0, 2, 0}, {"K2", 0, 1, 1},
  };
  return m;
}

namespace {

MomentEngine& airy3_engine() {
  static MomentEngine engine(AiryFamily(3, KernelMode::contour));
  return engine;
}

double ratfunc_at(const RatFunc& f, double a) { return f.num().eval(a) / f.den().eval(a); }

}  // namespace

double evaluate_reduction(const ReductionResult& r, double a, double tol) {
  if (!r.ode_constant.empty()) throw DomainError("numeric evaluation covers the contour kernel only");
  AiryFamily fam(3, KernelMode::contour);
  double v = 0;
  for (auto& [ij, f] : r.boundary)
    v += ratfunc_at(f, a) * phi_deriv_zero(fam, ij.first).to_double() * phi_deriv_zero(fam, ij.second).to_double();
  for (auto& [m, f] : r.irreducible) v += ratfunc_at(f, a) * quad_moment(m.n, m.b, m.c, a, tol);
  return v;
}

std::vector<OracleRecord> airy_identity_records(double a, double tol) {
  std::vector<OracleRecord> out;
  const std::string params = "p=3 a=" + std::to_string(a);
  const double qtol = tol * 1e-3;
  MomentEngine& engine = airy3_engine();
  for (auto& nm : airy_named_moments()) {
    double sign = std::pow(-a, nm.c);
    OracleRecord r;
    r.identity = nm.name + " reduction";
    r.parameters = params;
    r.lhs = sign * quad_moment(nm.n, nm.b, nm.c, a, qtol);
    r.rhs = sign * evaluate_reduction(engine.reduce({nm.n, nm.b, nm.c}), a, qtol);
    r.tolerance = tol;
    out.push_back(r);
  }
  AiryFamily fam(3, KernelMode::contour);
  const double ai0 = phi_deriv_zero(fam, 0).to_double(), aip0 = phi_deriv_zero(fam, 1).to_double();
  {
    // (1 + a^3) I2 = Ai(0)^2 + 2 T, T = int Ai(y) d/dy[Ai(-a y)] dy
    OracleRecord r;
    r.identity = "I2 boundary identity";
    r.parameters = params;
    r.lhs = (1 + a * a * a) * quad_moment(1, 2, 0, a, qtol);
    r.rhs = ai0 * ai0 + 2 * (-a) * quad_moment(0, 0, 1, a, qtol);
    r.tolerance = tol;
    out.push_back(r);
  }
  {
    OracleRecord r;
    r.identity = "K1 closed form";
    r.parameters = params;
    r.lhs = quad_moment(0, 2, 0, a, qtol);
    r.rhs = -(1 + a) / (1 + a * a * a) * ai0 * aip0;
    r.tolerance = tol;
    out.push_back(r);
  }
  {
    OracleRecord r;
    r.identity = "K2 closed form";
    r.parameters = params;
    r.lhs = -a * quad_moment(0, 1, 1, a, qtol);
    r.rhs = (a - a * a * a) / (1 + a * a * a) * ai0 * aip0;
    r.tolerance = tol;
    out.push_back(r);
  }
  return out;
}

double OracleRecord::abs_diff() const { return std::abs(lhs - rhs); }

std::string oracle_report_json(const std::vector<OracleRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& r : records) {
    arr.push_back({{"identity", r.identity},
                   {"parameters", r.parameters},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"abs_diff", r.abs_diff()},
                   {"tolerance", r.tolerance},
                   {"pass", r.pass()}});
  }
  return arr.dump(2);
}

}  // namespace pspin
