#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pspin/airy.hpp"
#include "pspin/poly.hpp"

namespace pspin {

// int_0^inf y^n phi^(b)(y) phi^(c)(-a y) dy, derivatives taken in the argument.
struct MomentSymbol {
  int n = 0;
  int b = 0;
  int c = 0;
  auto operator<=>(const MomentSymbol&) const = default;
  std::string to_string() const;
};

// Terms multiplying the inhomogeneous ODE constant (real kernel only).
enum class LedgerKind { phi_zero, first_moment, second_moment };

struct LedgerKey {
  LedgerKind kind;
  int index = 0;  // derivative order for phi_zero
  auto operator<=>(const LedgerKey&) const = default;
  std::string to_string() const;
};

struct ReductionResult {
  std::map<std::pair<int, int>, RatFunc> boundary;  // phi^(i)(0) phi^(j)(0), i <= j
  std::map<MomentSymbol, RatFunc> irreducible;
  std::map<LedgerKey, RatFunc> ode_constant;

  void add_boundary(int i, int j, const RatFunc& c);
  void add_irreducible(const MomentSymbol& m, const RatFunc& c);
  void add_ode_constant(const LedgerKey& k, const RatFunc& c);
  void add(const ReductionResult& o, const RatFunc& scale = RatFunc(1));

  bool operator==(const ReductionResult& o) const = default;
  bool is_zero() const { return boundary.empty() && irreducible.empty() && ode_constant.empty(); }
  // Whether every denominator divides a power of (1 + a^p) times a power of a.
  bool denominators_in_pattern(int p) const;
  std::string dump() const;
};

struct CancellationFailure : std::runtime_error {
  CancellationFailure(const std::string& what, RatFunc coefficient)
      : std::runtime_error(what), offending(std::move(coefficient)) {}
  RatFunc offending;
};

struct MomentContribution {
  RatFunc coefficient;
  MomentSymbol symbol;
};

// Single-factor moments first: int y^n phi^(b)(y); second: int y^n phi^(c)(-a y).
struct SingleContribution {
  RatFunc coefficient;
  bool second = false;
  int n = 0;
  int order = 0;
};

struct GradeAssembly {
  std::map<std::pair<int, int>, RatFunc> boundary;
  std::map<LedgerKey, RatFunc> ode_constant;
};

class MomentEngine {
 public:
  // order_seed != 0 shuffles the elimination order (used for confluence checks).
  explicit MomentEngine(AiryFamily fam, int nmax = 8, unsigned order_seed = 0);

  const AiryFamily& family() const { return fam_; }
  int nmax() const;

  // Any b, c: orders >= p-1 are first rewritten with the ODE.
  ReductionResult reduce(const MomentSymbol& m);
  ReductionResult reduce_single(bool second, int n, int order);

  // Reduces and sums; irreducible coefficients must vanish identically.
  GradeAssembly assemble_grade(const std::vector<MomentContribution>& moments,
                               const std::vector<SingleContribution>& singles = {});

 private:
  enum class Kind { boundary, first, second, moment };
  struct Sym {
    Kind kind;
    int n, b, c;
    auto operator<=>(const Sym&) const = default;
  };
  using Expr = std::map<Sym, RatFunc>;

  void build(int nmax);
  Expr canonical_moment(int n, int b, int c) const;
  ReductionResult reduce_canonical(const MomentSymbol& m);
  void reduce_single_into(bool second, int n, int order, const RatFunc& scale, ReductionResult& out);
  static bool heavier(const Sym& x, const Sym& y);

  AiryFamily fam_;
  unsigned seed_;
  int nmax_ = -1;
  std::map<Sym, Expr> solution_;
  std::map<MomentSymbol, ReductionResult> memo_;
  mutable std::recursive_mutex mu_;
};

// Closed forms for K1 = int Ai'' (y) Ai(-ay) dy and K2 = int Ai'(y) d/dy[Ai(-ay)] dy
// (p=3, contour kernel), in units of Ai(0)Ai'(0).
struct K2ClosedForm {
  ReductionResult k1;
  ReductionResult k2;
};
K2ClosedForm k2_closed_form();

}  // namespace pspin
