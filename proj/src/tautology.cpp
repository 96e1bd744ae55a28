#include "pspin/tautology.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace pspin {

bool selection_rule(long p, int g, const std::vector<Mark>& marks) {
  long lhs = (p + 1) * (2L * g - 2 + static_cast<long>(marks.size()));
  long rhs = 0;
  for (auto& m : marks) rhs += p * m.m + m.j + 1;
  return lhs == rhs;
}

bool TautologyReport::all_pass() const {
  for (auto& c : checked)
    if (!c.pass) return false;
  return true;
}

void TautologyReport::append(const TautologyReport& o) {
  checked.insert(checked.end(), o.checked.begin(), o.checked.end());
}

std::string TautologyReport::to_json() const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& c : checked)
    arr.push_back({{"identity", c.identity},
                   {"lhs", c.lhs},
                   {"rhs", c.rhs},
                   {"pass", c.pass},
                   {"difference", c.difference.get_str()}});
  nlohmann::ordered_json j;
  j["checked"] = arr;
  j["pass"] = all_pass();
  return j.dump(2);
}

std::string TautologyReport::to_text() const {
  std::ostringstream os;
  for (auto& c : checked) {
    os << (c.pass ? "PASS " : "FAIL ") << c.identity << ": " << c.lhs << " vs";
    for (auto& r : c.rhs) os << " " << r;
    os << "  diff=" << c.difference.get_str() << "\n";
  }
  os << (all_pass() ? "all checks passed" : "some checks failed") << " (" << checked.size() << ")\n";
  return os.str();
}

namespace {

std::string one_key(Mark m, int g) { return TauCorrelator{Q(0), g, {m}, Q(0), {}}.key(); }

Q lookup_one(const std::vector<TauCorrelator>& one_point, Mark m, int g) {
  for (auto& t : one_point)
    if (t.genus == g && t.marks.size() == 1 && t.marks[0] == m) return t.value;
  return 0;
}

// Two-point entries containing `probe` against factor * <target(partner)>_g; one-point
// entries whose two-point counterpart is missing count as failures.
template <class Target, class Partner>
TautologyReport insertion_check(const std::string& name, Mark probe, const std::vector<TauCorrelator>& two_point,
                                const std::vector<TauCorrelator>& one_point, int g, const Q& factor, Target target_of,
                                Partner partner_of) {
  TautologyReport rep;
  std::vector<Mark> seen;
  for (auto& t : two_point) {
    if (t.genus != g || t.marks.size() != 2) continue;
    int side = t.marks[0] == probe ? 0 : t.marks[1] == probe ? 1 : -1;
    if (side < 0) continue;
    Mark target = target_of(t.marks[1 - side]);
    TautologyCheck c;
    c.identity = name;
    c.lhs = t.key();
    Q rhs = 0;
    if (target.m >= 0) {
      rhs = factor * lookup_one(one_point, target, g);
      c.rhs = {one_key(target, g)};
      seen.push_back(target);
    } else {
      c.rhs = {"0"};
    }
    c.difference = t.value - rhs;
    c.pass = c.difference == 0;
    rep.checked.push_back(c);
  }
  for (auto& o : one_point) {
    if (o.genus != g || o.marks.size() != 1) continue;
    if (std::find(seen.begin(), seen.end(), o.marks[0]) != seen.end()) continue;
    TautologyCheck c;
    c.identity = name;
    c.lhs = TauCorrelator{o.p, g, {probe, partner_of(o.marks[0])}, Q(0), {}}.key() + " (absent)";
    c.rhs = {o.key()};
    c.difference = -factor * o.value;
    c.pass = c.difference == 0;
    rep.checked.push_back(c);
  }
  return rep;
}

}  // namespace

TautologyReport string_check(const std::vector<TauCorrelator>& two_point,
                             const std::vector<TauCorrelator>& one_point, int, int g) {
  return insertion_check(
      "string", Mark{0, 0}, two_point, one_point, g, Q(1), [](Mark m) { return Mark{m.m - 1, m.j}; },
      [](Mark m) { return Mark{m.m + 1, m.j}; });
}

TautologyReport dilaton_check(const std::vector<TauCorrelator>& two_point,
                              const std::vector<TauCorrelator>& one_point, int, int g) {
  return insertion_check(
      "dilaton", Mark{1, 0}, two_point, one_point, g, Q(2 * g - 1), [](Mark m) { return m; },
      [](Mark m) { return m; });
}

TautologyReport selection_check(const std::vector<TauCorrelator>& table) {
  TautologyReport rep;
  for (auto& t : table) {
    if (t.value == 0) continue;
    TautologyCheck c;
    c.identity = "selection";
    c.lhs = t.key();
    c.pass = selection_rule(t.p.get_num().get_si(), t.genus, t.marks);
    c.difference = c.pass ? 0 : 1;
    rep.checked.push_back(c);
  }
  return rep;
}

Q bernoulli_g(int g) {
  if (g < 1) throw DomainError("g-indexed Bernoulli number starts at 1");
  Q b = bernoulli(2 * g);
  return b < 0 ? Q(-b) : b;
}

Q signed_bernoulli(int n) { return n % 2 ? bernoulli_g(n) : Q(-bernoulli_g(n)); }

Q euler_characteristic(int g, int s) {
  if (g < 1 || s < 1) throw DomainError("euler characteristic needs g >= 1, s >= 1");
  if (2 * g + s - 3 < 0) throw DomainError("unstable range");
  return Q(-(2 * g - 1)) / Q(factorial(2 * g)) * Q(factorial(2 * g + s - 3)) * bernoulli_g(g);
}

std::vector<NegativePEntry> negative_p_table(int p, int g_max) {
  std::vector<NegativePEntry> out;
  for (int g = 1; g <= g_max; ++g) {
    NegativePEntry e;
    e.genus = g;
    long ap = p < 0 ? -p : p;
    long j = (2L * g - 2) % ap;
    if (p > 0 && j == p - 1) {
      e.status = "no admissible spin";
    } else {
      e.value = one_point_value(Q(p), g);
      e.status = e.value ? "value" : "pole";
    }
    out.push_back(e);
  }
  return out;
}

}  // namespace pspin
