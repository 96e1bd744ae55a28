#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pspin/exact_scalar.hpp"
#include "pspin/moment.hpp"

namespace pspin {

// int_0^inf y^n Ai^(b)(y) Ai^(c)(-a y) dy, derivatives taken in the argument.
double quad_moment(int n, int b, int c, double a, double tol = 1e-10);

struct McConfig {
  int N = 1;
  std::vector<double> eigenvalues;  // size N
  long samples = 100000;
  std::uint64_t seed = 1;
  // Each point is {s} for (1/N) tr e^{sM} or {s1, s2} for (1/N^2) tr e^{s1 M} tr e^{s2 M}.
  std::vector<std::vector<double>> points;
};

struct McEstimate {
  double mean = 0;
  double stderr_ = 0;
};

std::vector<McEstimate> mc_trace_moments(const McConfig& cfg);

struct ZetaValue {
  bool exact = false;
  ExactScalar value;  // exact value when available
  mp50 numeric = 0;
};

ZetaValue zeta_oracle(int n);

// {identity, parameters, lhs, rhs, abs_diff, tolerance, pass}
struct OracleRecord {
  std::string identity;
  std::string parameters;
  double lhs = 0;
  double rhs = 0;
  double tolerance = 0;
  double abs_diff() const;
  bool pass() const { return abs_diff() <= tolerance; }
};
// Named p=3 integrals int y^n Ai^(b)(y) (d/dy)^c [Ai(-a y)] dy = (-a)^c M(n,b,c).
struct NamedMoment {
  std::string name;
  int n, b, c;
};
const std::vector<NamedMoment>& airy_named_moments();

// Numeric value of a p=3 contour reduction; irreducible masters by quadrature.
double evaluate_reduction(const ReductionResult& r, double a, double tol = 1e-10);

// Quadrature against reduction for every named moment, the I2 identity and the K closed forms.
std::vector<OracleRecord> airy_identity_records(double a, double tol = 1e-6);

std::string oracle_report_json(const std::vector<OracleRecord>& records);

}  // namespace pspin
