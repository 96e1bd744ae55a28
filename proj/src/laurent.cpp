#include "pspin/laurent.hpp"

#include <map>
#include <vector>

namespace pspin {

LaurentP::LaurentP(const Q& c) {
  if (c != 0) c_[0] = c;
}

LaurentP LaurentP::monomial(const Q& c, int e) {
  LaurentP r;
  if (c != 0) r.c_[e] = c;
  return r;
}

LaurentP LaurentP::from_ratfunc(const RatFunc& f) {
  LaurentP r;
  for (auto [e, c] : f.laurent_terms()) r.c_[e] = c;
  return r;
}

LaurentP& LaurentP::operator+=(const LaurentP& o) {
  for (auto& [e, c] : o.c_) {
    c_[e] += c;
    if (c_[e] == 0) c_.erase(e);
  }
  return *this;
}

LaurentP& LaurentP::operator*=(const LaurentP& o) {
  std::map<int, Q> r;
  for (auto& [e1, c1] : c_)
    for (auto& [e2, c2] : o.c_) r[e1 + e2] += c1 * c2;
  c_.clear();
  for (auto& [e, c] : r)
    if (c != 0) c_[e] = c;
  return *this;
}

Q LaurentP::eval(const Q& p) const {
  if (p == 0 && !c_.empty() && c_.begin()->first < 0)
    throw DomainError("pole of order " + std::to_string(-c_.begin()->first) + " at 0");
  Q r = 0;
  for (auto& [e, c] : c_) r += c * qpow(p, e);
  return r;
}

RatFunc LaurentP::to_ratfunc() const {
  RatFunc r;
  for (auto& [e, c] : c_) r += RatFunc(c) * RatFunc::xpow(e);
  return r;
}

std::string LaurentP::to_string(const std::string& var) const {
  return to_ratfunc().to_string(var);
}

Q laurent_eval(const RatFunc& f, const Q& p) { return f.eval(p); }

namespace {

std::vector<Z> divisors(Z n) {
  if (n < 0) n = -n;
  std::vector<Z> out;
  if (n == 0 || n > Z("1000000000000")) return out;
  for (Z d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    if (d * d != n) out.push_back(n / d);
  }
  return out;
}

// Splits f = content * prod (v p - u) * rest over the integers.
struct Factored {
  Q content;
  std::vector<std::pair<Z, Z>> roots;  // (u, v): factor v p - u
  Poly rest;
};

Factored factor_rational_roots(const Poly& f) {
  Factored out;
  Z den_lcm = 1;
  for (auto& c : f.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Poly g = f * Q(den_lcm);
  Z content = 0;
  for (auto& c : g.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  if (g.lc() < 0) content = -content;
  out.content = Q(content) / Q(den_lcm);
  out.content.canonicalize();
  g = g * (Q(1) / Q(content));
  for (int v = g.valuation(); v > 0; --v) {
    out.roots.push_back({0, 1});
    g = Poly::divmod(g, Poly::x()).first;
  }
  bool found = true;
  while (found && g.degree() >= 1) {
    found = false;
    auto nums = divisors(g.coeff(0).get_num());
    auto dens = divisors(g.lc().get_num());
    for (auto& v : dens) {
      for (auto& u0 : nums) {
        for (int sgn : {1, -1}) {
          Z u = u0 * sgn;
          if (gcd(u, v) != 1) continue;
          Q r(u, v);
          r.canonicalize();
          if (g.eval(r) != 0) continue;
          g = Poly::divmod(g, Poly(std::vector<Q>{Q(-u), Q(v)})).first;
          out.roots.push_back({u, v});
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
  }
  out.rest = g;
  return out;
}

std::string linear_factor(const Z& u, const Z& v) {
  std::string s = (v == 1 ? std::string() : v.get_str()) + "p";
  if (u == 0) return s;
  return "(" + s + (u > 0 ? " - " : " + ") + Z(abs(u)).get_str() + ")";
}

std::string render_factored(const Factored& f, bool& unit) {
  std::string body;
  std::map<std::pair<Z, Z>, int> mult;
  for (auto& r : f.roots) ++mult[r];
  for (auto& [r, m] : mult) body += linear_factor(r.first, r.second) + (m > 1 ? "^" + std::to_string(m) : "");
  if (f.rest.degree() > 0) body += "(" + f.rest.to_string("p") + ")";
  unit = body.empty();
  return body;
}

}  // namespace

std::string render_p(const RatFunc& f) {
  if (f.is_zero()) return "0";
  Factored n = factor_rational_roots(f.num());
  Factored d = factor_rational_roots(f.den());
  Q c = n.content / d.content;
  bool nu = false, du = false;
  std::string nb = render_factored(n, nu), db = render_factored(d, du);
  std::string num;
  Q cn = c.get_num();
  if (nu)
    num = cn.get_str();
  else if (cn == 1)
    num = nb;
  else if (cn == -1)
    num = "-" + nb;
  else
    num = cn.get_str() + " " + nb;
  Z cd = c.get_den();
  if (cd == 1 && du) return num;
  std::string den = cd == 1 ? db : (du ? cd.get_str() : cd.get_str() + " " + db);
  return num + "/(" + den + ")";
}

}  // namespace pspin
