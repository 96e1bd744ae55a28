#pragma once

#include <vector>

namespace pspin {

// Gaussian Hermitian M with measure exp(-N/2 tr M^2 + N tr M A), A = diag(eigenvalues).
struct FiniteNSource {
  int N = 1;
  std::vector<double> eigenvalues;

  FiniteNSource() = default;
  explicit FiniteNSource(std::vector<double> a);

  // c = N/(p^2-1) * sum a^(-p-1); tuning uses c (p+1) = 1.
  double scaling_constant(int p) const;
};

// n = 1: (1/N) <tr e^{sM}>; n = 2: (1/N^2) <tr e^{s1 M} tr e^{s2 M}>.
// Residue sums of the contour representation, prefactor exp(s^2/(2N)) per point.
// Coincident eigenvalues go through higher-order residues (one point only).
double finite_n_evaluate(const FiniteNSource& src, const std::vector<double>& s);

}  // namespace pspin
