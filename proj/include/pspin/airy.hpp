#pragma once

#include <map>
#include <string>
#include <utility>

#include "pspin/exact_scalar.hpp"

namespace pspin {

enum class KernelMode { contour, real };

std::string mode_name(KernelMode m);

// phi^(p-1)(y) = y phi(y) + c0, with c0 = 0 (contour) or 1 (real kernel).
struct AiryFamily {
  int p = 3;
  KernelMode mode = KernelMode::real;

  AiryFamily() = default;
  AiryFamily(int p_, KernelMode mode_);
  Q ode_constant() const { return mode == KernelMode::real ? Q(1) : Q(0); }
};

// phi^(k)(0). Real kernel: p^((k+1)/p-1) Gamma((k+1)/p). Contour kernel:
// (-1)^k p^((k+1)/p-1) / Gamma(1-(k+1)/p), which is Ai(0), Ai'(0) at p=3.
// Orders k >= p-1 are reduced with the ODE.
ExactScalar phi_deriv_zero(const AiryFamily& fam, int k);
ExactScalar phi_deriv_zero(int p, int k);

// phi^(b)(y) = sum C[e,i] y^e phi^(i)(y) + c0 * sum K[e] y^e, all i <= p-2.
struct OdeRewrite {
  bool noop = false;
  std::map<std::pair<int, int>, Q> phi_terms;  // (e, i) -> C
  std::map<int, Q> constant_terms;             // e -> K (multiplies c0)
  std::string to_string() const;
};

OdeRewrite ode_rewrite(const AiryFamily& fam, int b);

// Standard Airy function and derivative.
double airy_ai(double y);
double airy_ai_prime(double y);
// Ai^(b)(y) for any b >= 0, via Ai'' = y Ai.
double airy_deriv(int b, double y);

// Contour mode (p=3 only) returns Ai; real mode integrates exp(-u^p/p + y u).
double phi_eval(const AiryFamily& fam, double y, double tol = 1e-12);

}  // namespace pspin
