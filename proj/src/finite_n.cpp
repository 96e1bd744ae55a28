#include "pspin/finite_n.hpp"

#include <cmath>
#include <map>

#include "pspin/rational.hpp"

namespace pspin {

FiniteNSource::FiniteNSource(std::vector<double> a) : N(static_cast<int>(a.size())), eigenvalues(std::move(a)) {
  if (N < 1) throw DomainError("finite-N source needs at least one eigenvalue");
}

double FiniteNSource::scaling_constant(int p) const {
  if (p < 2) throw DomainError("scaling constant needs p >= 2");
  double acc = 0;
  for (double a : eigenvalues) {
    if (a == 0) throw DomainError("scaling constant needs nonzero eigenvalues");
    acc += std::pow(a, -p - 1);
  }
  return N * acc / (static_cast<double>(p) * p - 1);
}

namespace {

using Series = std::vector<double>;  // truncated power series in t

Series mul(const Series& x, const Series& y) {
  Series r(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t k = 0; i + k < x.size(); ++k) r[i + k] += x[i] * y[k];
  return r;
}

// (t + c) / (t + d), d != 0
Series ratio_linear(double c, double d, size_t len) {
  Series r(len, 0.0);
  // (t + c)/(t + d) = 1 + (c - d)/d * sum (-t/d)^k
  double q = (c - d) / d;
  double pw = 1;
  for (size_t k = 0; k < len; ++k) {
    r[k] = q * pw;
    pw *= -1 / d;
  }
  r[0] += 1;
  return r;
}

// Sum of residues of e^{s u} prod_gamma (u - a_gamma + s/N)/(u - a_gamma) over u = a_gamma.
double one_point_residues(const FiniteNSource& src, double s) {
  std::map<double, int> mult;
  for (double a : src.eigenvalues) ++mult[a];
  const double h = s / src.N;
  double total = 0;
  for (auto& [b, k] : mult) {
    size_t len = static_cast<size_t>(k);
    // g(t) = e^{s(b+t)} (t + h)^k prod_{other} (t + b - a + h)/(t + b - a); residue = [t^{k-1}] g
    Series g(len, 0.0);
    double ex = std::exp(s * b), fact = 1;
    for (size_t i = 0; i < len; ++i) {
      g[i] = ex / fact;
      ex *= s;
      fact *= static_cast<double>(i + 1);
    }
    Series lin(len, 0.0);
    lin[0] = h;
    if (len > 1) lin[1] = 1;
    for (int i = 0; i < k; ++i) g = mul(g, lin);
    for (auto& [a, m] : mult) {
      if (a == b) continue;
      Series r = ratio_linear(b - a + h, b - a, len);
      for (int i = 0; i < m; ++i) g = mul(g, r);
    }
    total += g[len - 1];
  }
  return total;
}

double simple_residue(const std::vector<double>& a, int N, double s, size_t alpha) {
  double v = (s / N) * std::exp(s * a[alpha]);
  for (size_t g = 0; g < a.size(); ++g)
    if (g != alpha) v *= 1 + s / (N * (a[alpha] - a[g]));
  return v;
}

}  // namespace

double finite_n_evaluate(const FiniteNSource& src, const std::vector<double>& s) {
  const int N = src.N;
  if (N < 1 || static_cast<int>(src.eigenvalues.size()) != N) throw DomainError("inconsistent finite-N source");
  if (s.empty() || s.size() > 2) throw DomainError("finite-N evaluation supports one or two points");
  auto one = [&](double x) {
    if (x == 0) return 1.0;
    return std::exp(x * x / (2.0 * N)) * one_point_residues(src, x) / x;
  };
  if (s.size() == 1) return one(s[0]);
  double s1 = s[0], s2 = s[1];
  if (s1 == 0) return one(s2);
  if (s2 == 0) return one(s1);
  if (s1 + s2 == 0) throw DomainError("two-point residue formula needs s1 + s2 != 0");
  const auto& a = src.eigenvalues;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = i + 1; k < a.size(); ++k)
      if (a[i] == a[k]) throw DomainError("coincident eigenvalues: confluent two-point residues are not implemented");
  double t = 0;
  for (size_t al = 0; al < a.size(); ++al) {
    double inner = 0;
    for (size_t be = 0; be < a.size(); ++be) {
      double u1 = a[al], u2 = a[be];
      double D = static_cast<double>(N) * N / (s1 * s2) - 1 / ((u1 - u2 + s1 / N) * (u2 - u1 + s2 / N));
      inner += simple_residue(a, N, s2, be) * D;
    }
    // pole of the kernel at u2 = u1 + s1/N
    double w = a[al] + s1 / N;
    double r = N / (s1 + s2) * std::exp(w * s2);
    for (double ab : a) r *= 1 + s2 / (N * (w - ab));
    inner += r;
    t += simple_residue(a, N, s1, al) * inner;
  }
  return std::exp((s1 * s1 + s2 * s2) / (2.0 * N)) * t / (static_cast<double>(N) * N);
}

}  // namespace pspin
