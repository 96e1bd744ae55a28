#include "pspin/airy.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

namespace pspin {

std::string mode_name(KernelMode m) { return m == KernelMode::real ? "real" : "contour"; }

AiryFamily::AiryFamily(int p_, KernelMode mode_) : p(p_), mode(mode_) {
  if (p < 3) throw DomainError("Airy family needs p >= 3");
}

ExactScalar phi_deriv_zero(const AiryFamily& fam, int k) {
  const int p = fam.p;
  if (k < 0) throw DomainError("negative derivative order");
  if (k <= p - 2) {
    Q q = make_q(k + 1, p);
    ExactScalar pw = ExactScalar::power(Q(p), q - 1);
    if (fam.mode == KernelMode::real) return pw * ExactScalar::gamma(q);
    ExactScalar v = pw / ExactScalar::gamma(Q(1) - q);
    return (k % 2) ? -v : v;
  }
  int r = k - (p - 1);
  if (r == 0) return ExactScalar(fam.ode_constant());
  return ExactScalar(Q(r)) * phi_deriv_zero(fam, r - 1);
}

ExactScalar phi_deriv_zero(int p, int k) { return phi_deriv_zero(AiryFamily(p, KernelMode::real), k); }

OdeRewrite ode_rewrite(const AiryFamily& fam, int b) {
  const int p = fam.p;
  OdeRewrite out;
  out.phi_terms[{0, 0}] = 1;
  if (b < p - 1) {
    out.noop = true;
    out.phi_terms.clear();
    out.phi_terms[{0, b}] = 1;
    return out;
  }
  const bool real = fam.mode == KernelMode::real;
  for (int step = 0; step < b; ++step) {
    std::map<std::pair<int, int>, Q> nc;
    std::map<int, Q> nk;
    for (auto& [key, v] : out.phi_terms) {
      auto [e, i] = key;
      if (e > 0) nc[{e - 1, i}] += v * e;
      if (i + 1 == p - 1) {
        nc[{e + 1, 0}] += v;
        if (real) nk[e] += v;
      } else {
        nc[{e, i + 1}] += v;
      }
    }
    for (auto& [e, v] : out.constant_terms)
      if (e > 0) nk[e - 1] += v * e;
    out.phi_terms.clear();
    out.constant_terms.clear();
    for (auto& [k, v] : nc)
      if (v != 0) out.phi_terms[k] = v;
    for (auto& [k, v] : nk)
      if (v != 0) out.constant_terms[k] = v;
  }
  return out;
}

std::string OdeRewrite::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : phi_terms) {
    os << (first ? "" : " + ") << v.get_str() << "*y^" << k.first << "*phi^(" << k.second << ")";
    first = false;
  }
  for (auto& [e, v] : constant_terms) {
    os << (first ? "" : " + ") << v.get_str() << "*y^" << e << "*c0";
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

constexpr double kSplit = 12.0;

// Maclaurin series in 50-digit floats; both Ai and Ai' from one pass.
std::pair<double, double> airy_series(double yd) {
  const mp50 y = yd;
  const mp50 y3 = y * y * y;
  static const mp50 c1 = phi_deriv_zero(AiryFamily(3, KernelMode::contour), 0).to_mp();
  static const mp50 c2 = -phi_deriv_zero(AiryFamily(3, KernelMode::contour), 1).to_mp();
  const mp50 eps = mp50("1e-48");
  mp50 f = 1, g = y, fp = 0, gp = 1;
  mp50 t = 1, u = y, v = y * y / 2, d = 1;
  fp = v;
  for (int k = 0; k < 2000; ++k) {
    t *= y3 / ((3 * k + 2) * (3 * k + 3));
    u *= y3 / ((3 * k + 3) * (3 * k + 4));
    d *= y3 / ((3 * k + 1) * (3 * k + 3));
    if (k >= 1) v *= y3 / (mp50(3 * k) * (3 * k + 2));
    f += t;
    g += u;
    gp += d;
    if (k >= 1) fp += v;
    if (abs(t) < eps && abs(u) < eps && abs(d) < eps && abs(v) < eps && k > 4) break;
  }
  mp50 ai = c1 * f - c2 * g;
  mp50 aip = c1 * fp - c2 * gp;
  return {static_cast<double>(ai), static_cast<double>(aip)};
}

// Asymptotic expansions for |y| > kSplit, truncated at the smallest term.
std::pair<double, double> airy_asymptotic(double y) {
  const double pi = boost::math::constants::pi<double>();
  const double x = std::abs(y);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  std::vector<double> uk{1.0}, vk{1.0};
  for (int k = 1; k < 200; ++k) {
    double u = uk.back() * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    uk.push_back(u);
    vk.push_back(-(6.0 * k + 1) / (6.0 * k - 1) * u);
    if (u / std::pow(zeta, k) < 1e-30) break;
  }
  auto truncated = [&](const std::vector<double>& c, double sign_base, int start, int stride) {
    double s = 0, prev = INFINITY;
    int sgn = 1;
    for (size_t k = start; k < c.size(); k += stride) {
      double term = c[k] / std::pow(zeta, static_cast<double>(k));
      if (std::abs(term) > prev) break;
      prev = std::abs(term);
      s += sgn * term;
      sgn = static_cast<int>(sgn * sign_base);
    }
    return s;
  };
  if (y > 0) {
    double e = std::exp(-zeta) / (2.0 * std::sqrt(pi));
    double su = truncated(uk, -1, 0, 1);
    double sv = truncated(vk, -1, 0, 1);
    return {e / std::pow(x, 0.25) * su, -e * std::pow(x, 0.25) * sv};
  }
  double th = zeta + pi / 4;
  double ue = truncated(uk, -1, 0, 2), uo = truncated(uk, -1, 1, 2);
  double ve = truncated(vk, -1, 0, 2), vo = truncated(vk, -1, 1, 2);
  double ai = (std::sin(th) * ue - std::cos(th) * uo) / (std::sqrt(pi) * std::pow(x, 0.25));
  double aip = -std::pow(x, 0.25) / std::sqrt(pi) * (std::cos(th) * ve + std::sin(th) * vo);
  return {ai, aip};
}

std::pair<double, double> airy_pair(double y) {
  return std::abs(y) <= kSplit ? airy_series(y) : airy_asymptotic(y);
}

}  // namespace

double airy_ai(double y) { return airy_pair(y).first; }
double airy_ai_prime(double y) { return airy_pair(y).second; }

double airy_deriv(int b, double y) {
  // Ai^(b) = P_b(y) Ai + R_b(y) Ai', with P' and R' from Ai'' = y Ai.
  std::vector<double> P{1.0}, R{0.0};
  for (int s = 0; s < b; ++s) {
    std::vector<double> nP(std::max(P.size(), R.size() + 1) + 1, 0.0), nR(nP.size(), 0.0);
    for (size_t i = 1; i < P.size(); ++i) nP[i - 1] += i * P[i];
    for (size_t i = 0; i < P.size(); ++i) nR[i] += P[i];
    for (size_t i = 1; i < R.size(); ++i) nR[i - 1] += i * R[i];
    for (size_t i = 0; i < R.size(); ++i) nP[i + 1] += R[i];
    P = nP;
    R = nR;
  }
  auto ev = [y](const std::vector<double>& c) {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * y + *it;
    return r;
  };
  auto [ai, aip] = airy_pair(y);
  return ev(P) * ai + ev(R) * aip;
}

double phi_eval(const AiryFamily& fam, double y, double tol) {
  if (fam.mode == KernelMode::contour) {
    if (fam.p != 3) throw DomainError("contour-mode evaluation is implemented for p=3 only");
    return airy_ai(y);
  }
  const double p = fam.p;
  auto expo = [p, y](double u) { return -std::pow(u, p) / p + y * u; };
  double peak = y > 0 ? std::pow(y, 1.0 / (p - 1)) : 0.0;
  double top = expo(peak);
  if (top > 700) throw DomainError("real-mode phi overflows at this argument");
  double U = peak + 1;
  while (expo(U) > top - 90) U *= 1.5;
  auto f = [&](double u) { return std::exp(expo(u)); };
  double err = 0;
  double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, U, 20, tol, &err);
  if (err > std::max(tol * std::abs(v), 1e-300) * 10)
    throw DomainError("real-mode phi quadrature did not converge");
  return v;
}

}  // namespace pspin
