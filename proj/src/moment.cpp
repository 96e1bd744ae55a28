#include "pspin/moment.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace pspin {

std::string MomentSymbol::to_string() const {
  return "M(" + std::to_string(n) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

std::string LedgerKey::to_string() const {
  switch (kind) {
    case LedgerKind::phi_zero:
      return "c0*phi^(" + std::to_string(index) + ")(0)";
    case LedgerKind::first_moment:
      return "c0*int phi(y)";
    case LedgerKind::second_moment:
      return "c0*int phi(-a y)";
  }
  return "?";
}

namespace {
template <class K>
void accumulate(std::map<K, RatFunc>& m, const K& k, const RatFunc& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}
}  // namespace

void ReductionResult::add_boundary(int i, int j, const RatFunc& c) {
  accumulate(boundary, std::make_pair(std::min(i, j), std::max(i, j)), c);
}
void ReductionResult::add_irreducible(const MomentSymbol& m, const RatFunc& c) { accumulate(irreducible, m, c); }
void ReductionResult::add_ode_constant(const LedgerKey& k, const RatFunc& c) { accumulate(ode_constant, k, c); }

void ReductionResult::add(const ReductionResult& o, const RatFunc& scale) {
  if (scale.is_zero()) return;
  for (auto& [k, v] : o.boundary) accumulate(boundary, k, v * scale);
  for (auto& [k, v] : o.irreducible) accumulate(irreducible, k, v * scale);
  for (auto& [k, v] : o.ode_constant) accumulate(ode_constant, k, v * scale);
}

bool ReductionResult::denominators_in_pattern(int p) const {
  Poly base = Poly::monomial(Q(1), p) + Poly(Q(1));
  auto ok = [&](const RatFunc& f) {
    Poly d = f.den();
    while (d.valuation() > 0) d = Poly::divmod(d, Poly::x()).first;
    // lowest terms can leave a proper divisor of (1 + a^p), so strip common factors
    while (d.degree() > 0) {
      Poly g = Poly::gcd(d, base);
      if (g.degree() <= 0) return false;
      d = Poly::divmod(d, g).first;
    }
    return true;
  };
  for (auto& [k, v] : boundary)
    if (!ok(v)) return false;
  for (auto& [k, v] : irreducible)
    if (!ok(v)) return false;
  for (auto& [k, v] : ode_constant)
    if (!ok(v)) return false;
  return true;
}

std::string ReductionResult::dump() const {
  std::ostringstream os;
  for (auto& [k, v] : boundary)
    os << "boundary phi^(" << k.first << ")(0)*phi^(" << k.second << ")(0) : " << v.to_string() << "\n";
  for (auto& [k, v] : irreducible) os << "irreducible " << k.to_string() << " : " << v.to_string() << "\n";
  for (auto& [k, v] : ode_constant) os << "ode_constant " << k.to_string() << " : " << v.to_string() << "\n";
  return os.str();
}

MomentEngine::MomentEngine(AiryFamily fam, int nmax, unsigned order_seed) : fam_(fam), seed_(order_seed) {
  build(nmax);
}

int MomentEngine::nmax() const {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return nmax_;
}

MomentEngine::Expr MomentEngine::canonical_moment(int n, int b, int c) const {
  const int p = fam_.p;
  const bool real = fam_.mode == KernelMode::real;
  Expr d;
  if (b == p - 1) {
    d[{Kind::moment, n + 1, 0, c}] = RatFunc(1);
    if (real) d[{Kind::second, n, c, 0}] = RatFunc(1);
    return d;
  }
  if (c == p - 1) {
    d[{Kind::moment, n + 1, b, 0}] = -RatFunc::x();
    if (real) d[{Kind::first, n, b, 0}] = RatFunc(1);
    return d;
  }
  d[{Kind::moment, n, b, c}] = RatFunc(1);
  return d;
}

bool MomentEngine::heavier(const Sym& x, const Sym& y) {
  return std::make_tuple(x.n, x.b + x.c, x.b) > std::make_tuple(y.n, y.b + y.c, y.b);
}

void MomentEngine::build(int nmax) {
  const int p = fam_.p;
  std::vector<Expr> rels;
  for (int n = 0; n <= nmax; ++n) {
    for (int b = 0; b <= p - 2; ++b) {
      for (int c = 0; c <= p - 2; ++c) {
        Expr d;
        auto add = [&d](const Expr& e, const RatFunc& s) {
          for (auto& [k, v] : e) accumulate(d, k, v * s);
        };
        add(canonical_moment(n, b + 1, c), RatFunc(1));
        add(canonical_moment(n, b, c + 1), -RatFunc::x());
        if (n > 0)
          accumulate(d, Sym{Kind::moment, n - 1, b, c}, RatFunc(Q(n)));
        else
          accumulate(d, Sym{Kind::boundary, 0, b, c}, RatFunc(1));
        rels.push_back(std::move(d));
      }
    }
  }
  if (seed_ != 0) {
    std::mt19937 rng(seed_);
    std::shuffle(rels.begin(), rels.end(), rng);
  }
  std::map<Sym, Expr> sol;
  for (auto& rel : rels) {
    Expr r;
    for (auto& [k, v] : rel) {
      auto it = sol.find(k);
      if (it == sol.end()) {
        accumulate(r, k, v);
      } else {
        for (auto& [k2, v2] : it->second) accumulate(r, k2, v * v2);
      }
    }
    const Sym* piv = nullptr;
    for (auto& [k, v] : r)
      if (k.kind == Kind::moment && (!piv || heavier(k, *piv))) piv = &k;
    if (!piv) continue;  // relation among lower-level symbols only
    Sym pk = *piv;
    RatFunc inv = RatFunc(-1) / r.at(pk);
    r.erase(pk);
    for (auto& [k, v] : r) v *= inv;
    for (auto& [key, e] : sol) {
      auto it = e.find(pk);
      if (it == e.end()) continue;
      RatFunc f = it->second;
      e.erase(it);
      for (auto& [k2, v2] : r) accumulate(e, k2, f * v2);
    }
    sol[pk] = std::move(r);
  }
  solution_ = std::move(sol);
  nmax_ = nmax;
  memo_.clear();
}

void MomentEngine::reduce_single_into(bool second, int n, int order, const RatFunc& scale,
                                      ReductionResult& out) {
  const int p = fam_.p;
  if (scale.is_zero()) return;
  RatFunc inv_a = RatFunc::xpow(-1);
  if (!second) {
    if (order >= 1) {
      if (n == 0) {
        out.add_ode_constant({LedgerKind::phi_zero, order - 1}, -scale);
      } else {
        reduce_single_into(false, n - 1, order - 1, scale * RatFunc(Q(-n)), out);
      }
      return;
    }
    if (n == 0) {
      out.add_ode_constant({LedgerKind::first_moment, 0}, scale);
      return;
    }
    reduce_single_into(false, n - 1, p - 1, scale, out);
    return;
  }
  if (order >= 1) {
    if (n == 0) {
      out.add_ode_constant({LedgerKind::phi_zero, order - 1}, scale * inv_a);
    } else {
      reduce_single_into(true, n - 1, order - 1, scale * RatFunc(Q(n)) * inv_a, out);
    }
    return;
  }
  if (n == 0) {
    out.add_ode_constant({LedgerKind::second_moment, 0}, scale);
    return;
  }
  reduce_single_into(true, n - 1, p - 1, -scale * inv_a, out);
}

ReductionResult MomentEngine::reduce_single(bool second, int n, int order) {
  ReductionResult r;
  reduce_single_into(second, n, order, RatFunc(1), r);
  return r;
}

ReductionResult MomentEngine::reduce_canonical(const MomentSymbol& m) {
  auto memo = memo_.find(m);
  if (memo != memo_.end()) return memo->second;
  ReductionResult out;
  Sym key{Kind::moment, m.n, m.b, m.c};
  auto it = solution_.find(key);
  if (it == solution_.end()) {
    out.add_irreducible(m, RatFunc(1));
  } else {
    for (auto& [k, v] : it->second) {
      switch (k.kind) {
        case Kind::boundary:
          out.add_boundary(k.b, k.c, v);
          break;
        case Kind::moment:
          out.add_irreducible({k.n, k.b, k.c}, v);
          break;
        case Kind::first:
          reduce_single_into(false, k.n, k.b, v, out);
          break;
        case Kind::second:
          reduce_single_into(true, k.n, k.b, v, out);
          break;
      }
    }
  }
  memo_[m] = out;
  return out;
}

ReductionResult MomentEngine::reduce(const MomentSymbol& m) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (m.n < 0 || m.b < 0 || m.c < 0) throw DomainError("negative moment index");
  const int p = fam_.p;
  OdeRewrite r1 = ode_rewrite(fam_, m.b);
  OdeRewrite r2 = ode_rewrite(fam_, m.c);
  // Second factor: y^e phi^(j)(-a y) picks up (-a)^e.
  auto neg_a_pow = [](int e) { return RatFunc(Poly::monomial(Q(e % 2 ? -1 : 1), e)); };
  for (int attempt = 0; attempt < 8; ++attempt) {
    int need = 0;
    for (auto& [k1, v1] : r1.phi_terms)
      for (auto& [k2, v2] : r2.phi_terms) need = std::max(need, m.n + k1.first + k2.first);
    if (need + 4 > nmax_) build(need + 4);
    ReductionResult out;
    for (auto& [k1, v1] : r1.phi_terms) {
      for (auto& [k2, v2] : r2.phi_terms) {
        RatFunc coef = RatFunc(v1 * v2) * neg_a_pow(k2.first);
        out.add(reduce_canonical({m.n + k1.first + k2.first, k1.second, k2.second}), coef);
      }
      for (auto& [e2, v2] : r2.constant_terms)
        reduce_single_into(false, m.n + k1.first + e2, k1.second, RatFunc(v1 * v2) * neg_a_pow(e2), out);
    }
    for (auto& [e1, v1] : r1.constant_terms)
      for (auto& [k2, v2] : r2.phi_terms)
        reduce_single_into(true, m.n + e1 + k2.first, k2.second, RatFunc(v1 * v2) * neg_a_pow(k2.first), out);
    bool clean = true;
    for (auto& [s, v] : out.irreducible)
      if (s.n != 0 || s.b != 0 || s.c > p - 2) clean = false;
    if (clean) return out;
    build(nmax_ + 4);  // truncation artifacts at the top level
  }
  throw std::runtime_error("moment reduction did not reach the master basis for " + m.to_string());
}

GradeAssembly MomentEngine::assemble_grade(const std::vector<MomentContribution>& moments,
                                           const std::vector<SingleContribution>& singles) {
  ReductionResult total;
  for (auto& c : moments) total.add(reduce(c.symbol), c.coefficient);
  for (auto& s : singles) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    reduce_single_into(s.second, s.n, s.order, s.coefficient, total);
  }
  for (auto& [sym, coef] : total.irreducible) {
    throw CancellationFailure("irreducible " + sym.to_string() + " survives with coefficient " +
                                  coef.to_string(),
                              coef);
  }
  GradeAssembly g;
  g.boundary = std::move(total.boundary);
  g.ode_constant = std::move(total.ode_constant);
  return g;
}

K2ClosedForm k2_closed_form() {
  RatFunc a = RatFunc::x();
  RatFunc den = RatFunc(1) + a.pow(3);
  K2ClosedForm k;
  k.k1.add_boundary(0, 1, -(RatFunc(1) + a) / den);
  k.k2.add_boundary(0, 1, (a - a.pow(3)) / den);
  return k;
}

}  // namespace pspin
