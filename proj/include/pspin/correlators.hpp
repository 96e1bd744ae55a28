#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pspin/airy.hpp"
#include "pspin/laurent.hpp"
#include "pspin/moment.hpp"
#include "pspin/series.hpp"

namespace pspin {

struct Mark {
  int m = 0;
  int j = 0;
  auto operator<=>(const Mark&) const = default;
};

struct TauCorrelator {
  Q p;
  int genus = 0;
  std::vector<Mark> marks;
  Q value;
  // Labels obtained from the selection rule with |p| (differs only for p < 0).
  std::vector<Mark> abs_p_marks;
  std::string key() const;  // e.g. <tau_{0,1} tau_{4,1}>_2
};

// Corrections exp(-sum_k A_k ...) expanded to total weight K = sum k n_k.
// A_k = C(p+1, 2k+1) / ((p+1) 4^k).
Q correction_coefficient(int p, int k);
struct CorrectionTerm {
  Q coef;     // prod (-A_k)^{n_k} / n_k!
  int count;  // N = sum n_k
  int order;  // D = sum n_k (p - 2k)
};
std::vector<CorrectionTerm> corrections(int p, int K);

enum class Route { automatic, exact_in_a, small_a };

struct TwoPointOptions {
  KernelMode mode = KernelMode::real;
  Route route = Route::automatic;
};

// Cancellation bookkeeping of the exact-in-a route at one genus.
struct LedgerReport {
  int p = 0;
  int genus = 0;
  KernelMode mode = KernelMode::real;
  bool irreducible_cancelled = false;
  bool ode_constant_clean = false;  // no ode-constant term on a fractional grade
  int fractional_grades = 0;
  int ode_constant_terms = 0;  // nonzero ledger entries (integer grades only if clean)
  bool pattern_1_plus_a_p = false;
  std::string detail;
};

// The genus-g part of U(s1,s2), graded by s1^(E1/p) s2^(E2/p), E1+E2 = 2g(p+1).
FractionalSeries two_point_series(int p, int g, const TwoPointOptions& opt = {});
// Sum of genera 1..g_max.
FractionalSeries two_point_series_upto(int p, int g_max, const TwoPointOptions& opt = {});
LedgerReport cancellation_ledger(int p, int g, KernelMode mode);

// phi^(p-2-j)(0) = p^(-(1+j)/p) * spin_unit(j).
ExactScalar spin_unit(int p, int j, KernelMode mode);

// Overall constants fixed by the anchor values; n = 1 or 2.
Q calibration_constant(int points);

std::vector<TauCorrelator> extract_intersections(const FractionalSeries& series, int p, int g,
                                                 KernelMode mode = KernelMode::real);
std::vector<TauCorrelator> two_point_table(int p, int g, const TwoPointOptions& opt = {});
std::optional<Q> two_point_value(int p, int g, Mark a, Mark b, const TwoPointOptions& opt = {});

// One-point genus coefficients as rational functions of p; the correlator is
// coefficient * Gamma(1-(2g-1)/p) / Gamma(1-(1+j)/p).
struct OnePointCoefficient {
  int genus;
  RatFunc raw;          // before normalization
  RatFunc coefficient;  // kappa_1 (-p)^(1-g) raw
  int gamma_shift;      // gamma factor Gamma(1 - gamma_shift/p), gamma_shift = 2g-1
};
std::vector<OnePointCoefficient> one_point_series(int g_max);
// Exact one-point entry at rational (integer) p; nullopt when no admissible j or a pole.
std::optional<TauCorrelator> one_point_value(const Q& p, int g);
std::vector<TauCorrelator> one_point_table(int p, int g_max);

struct InterpolationError : DomainError {
  using DomainError::DomainError;
};
// Fits p^den_power * value by a degree num_degree polynomial through the first
// num_degree+1 samples; all remaining samples are held out and must match.
RatFunc general_p_interpolate(const std::map<int, Q>& samples, int num_degree, int den_power);

// A two-point entry followed across p; a negative j means p + j.
struct InterpolationFamily {
  std::string name;
  int genus;
  Mark a, b;
  int num_degree;
  int den_power;
  int p_first;
};
const std::vector<InterpolationFamily>& interpolation_families();
// Exact values at p_first, ..., p_first + count - 1 (zero where the entry vanishes).
std::map<int, Q> sample_family(const InterpolationFamily& f, int count);
RatFunc interpolate_family(const InterpolationFamily& f, int held_out = 2);

std::string table_json(const std::vector<TauCorrelator>& rows, const std::string& p, int genus, int points);
std::string table_csv(const std::vector<TauCorrelator>& rows);

}  // namespace pspin
