#include "pspin/series.hpp"

#include <sstream>

namespace pspin {

FracExp FracExp::from_numerator(long e, int p) {
  if (p < 2) throw DomainError("series base p must be at least 2");
  if (e < 0) throw DomainError("negative exponent in fractional series");
  FracExp f;
  long r = e % p;
  f.j = static_cast<int>(r) - 1;
  f.m = static_cast<int>((e - r) / p);
  return f;
}

FractionalSeries::FractionalSeries(int p, int vars, long cutoff_num)
    : p_(p), vars_(vars), cutoff_(cutoff_num) {
  if (p < 2) throw DomainError("series base p must be at least 2");
}

FractionalSeries FractionalSeries::one(int p, int vars, long cutoff_num) {
  FractionalSeries s(p, vars, cutoff_num);
  s.add_term(std::vector<long>(vars, 0), ExactSum(Q(1)));
  return s;
}

FractionalSeries FractionalSeries::term(int p, const std::vector<long>& numerators,
                                        const ExactSum& c, long cutoff_num) {
  FractionalSeries s(p, static_cast<int>(numerators.size()), cutoff_num);
  s.add_term(numerators, c);
  return s;
}

long FractionalSeries::total(const Monomial& m) const {
  long t = 0;
  for (auto& f : m) t += f.numerator(p_);
  return t;
}

void FractionalSeries::add_term(const Monomial& mono, const ExactSum& c) {
  if (static_cast<int>(mono.size()) != vars_) throw DomainError("monomial arity mismatch");
  if (c.is_zero()) return;
  if (cutoff_ >= 0 && total(mono) > cutoff_) return;
  auto [it, inserted] = terms_.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void FractionalSeries::add_term(const std::vector<long>& numerators, const ExactSum& c) {
  Monomial m;
  for (long e : numerators) m.push_back(FracExp::from_numerator(e, p_));
  add_term(m, c);
}

ExactSum FractionalSeries::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? ExactSum() : it->second;
}

void FractionalSeries::check_compatible(const FractionalSeries& o) const {
  if (p_ != o.p_) throw std::invalid_argument("series with different base p");
  if (vars_ != o.vars_) throw std::invalid_argument("series with different arity");
}

FractionalSeries& FractionalSeries::operator+=(const FractionalSeries& o) {
  check_compatible(o);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FractionalSeries& FractionalSeries::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

bool FractionalSeries::operator==(const FractionalSeries& o) const {
  return p_ == o.p_ && vars_ == o.vars_ && terms_ == o.terms_;
}

FractionalSeries FractionalSeries::swapped(int i, int k) const {
  FractionalSeries r(p_, vars_, cutoff_);
  for (auto& [m, c] : terms_) {
    Monomial mm = m;
    std::swap(mm.at(i), mm.at(k));
    r.add_term(mm, c);
  }
  return r;
}

std::string FractionalSeries::to_string() const {
  std::ostringstream os;
  for (auto& [m, c] : terms_) {
    os << "(" << c.to_string() << ")";
    for (size_t i = 0; i < m.size(); ++i) {
      long e = m[i].numerator(p_);
      if (e == 0) continue;
      Q ex(e, p_);
      ex.canonicalize();
      os << " s" << (i + 1) << "^(" << ex.get_str() << ")";
    }
    os << "\n";
  }
  return os.str();
}

FractionalSeries series_add(const FractionalSeries& f, const FractionalSeries& g) {
  if (f.cutoff() != g.cutoff()) throw std::invalid_argument("series with different cutoffs");
  FractionalSeries r = f;
  r += g;
  return r;
}

FractionalSeries series_mul(const FractionalSeries& f, const FractionalSeries& g) {
  if (f.p() != g.p()) throw std::invalid_argument("series with different base p");
  if (f.vars() != g.vars()) throw std::invalid_argument("series with different arity");
  if (f.cutoff() != g.cutoff()) throw std::invalid_argument("series with different cutoff");
  FractionalSeries r(f.p(), f.vars(), f.cutoff());
  for (auto& [m1, c1] : f.terms()) {
    for (auto& [m2, c2] : g.terms()) {
      std::vector<long> e(m1.size());
      for (size_t i = 0; i < m1.size(); ++i) e[i] = m1[i].numerator(f.p()) + m2[i].numerator(f.p());
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

}  // namespace pspin
