#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pspin/correlators.hpp"

namespace pspin {

// (p+1)(2g-2+n) = sum (p m_i + j_i + 1)
bool selection_rule(long p, int g, const std::vector<Mark>& marks);

struct TautologyCheck {
  std::string identity;
  std::string lhs;
  std::vector<std::string> rhs;
  bool pass = false;
  Q difference;
};

struct TautologyReport {
  std::vector<TautologyCheck> checked;
  bool all_pass() const;
  std::string to_json() const;
  std::string to_text() const;
  void append(const TautologyReport& o);
};

// <tau_{0,0} tau_{m,j}>_g = <tau_{m-1,j}>_g over both tables at one p and genus.
TautologyReport string_check(const std::vector<TauCorrelator>& two_point,
                             const std::vector<TauCorrelator>& one_point, int p, int g);
// <tau_{1,0} tau_{m,j}>_g = (2g-1) <tau_{m,j}>_g as a ratio identity.
TautologyReport dilaton_check(const std::vector<TauCorrelator>& two_point,
                              const std::vector<TauCorrelator>& one_point, int p, int g);
// Every entry satisfies the selection rule at its own p.
TautologyReport selection_check(const std::vector<TauCorrelator>& table);

// B_g = |B_{2g}| indexed by genus (1/6, 1/30, 1/42, 1/30, ...).
Q bernoulli_g(int g);
// Standard signed B_{2n} from the genus-indexed values.
Q signed_bernoulli(int n);

// chi(M_{g,s}) = -(2g-1)/(2g)! (2g+s-3)! B_g
Q euler_characteristic(int g, int s);

struct NegativePEntry {
  int genus = 0;
  std::optional<TauCorrelator> value;
  std::string status;  // "value", "pole" or "no admissible spin"
};
std::vector<NegativePEntry> negative_p_table(int p, int g_max);

}  // namespace pspin
