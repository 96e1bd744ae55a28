#include "pspin/exact_scalar.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <sstream>
#include <tuple>

namespace pspin {

namespace {

std::map<unsigned long, int> factor_integer(Z n) {
  std::map<unsigned long, int> out;
  if (n < 0) n = -n;
  for (unsigned long d = 2; d < 1000000 && Z(d) * d <= n; ++d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++out[d];
    }
  }
  if (n > 1) {
    if (!n.fits_ulong_p()) throw DomainError("radical base too large to factor");
    ++out[n.get_ui()];
  }
  return out;
}

// Reflection factor pi / sin(pi q) for q in {1/6, 1/4, 1/3}.
ExactScalar reflection_factor(const Q& q) {
  if (q == make_q(1, 3)) return ExactScalar(make_q(2, 3)) * ExactScalar::pi() * ExactScalar::sqrt(3);
  if (q == make_q(1, 4)) return ExactScalar::pi() * ExactScalar::sqrt(2);
  if (q == make_q(1, 6)) return ExactScalar(2) * ExactScalar::pi();
  throw DomainError("no tracked reflection value");
}

bool reflectable(const Q& q) {
  const Z& d = q.get_den();
  return d == 2 || d == 3 || d == 4 || d == 6;
}

}  // namespace

ExactScalar::ExactScalar(const Q& r) : coeff_(r) {}

ExactScalar ExactScalar::pi(int k) {
  ExactScalar s;
  s.pi_ = k;
  return s;
}

ExactScalar ExactScalar::gamma(const Q& arg, int multiplicity) {
  if (is_integer(arg) && arg <= 0) throw DomainError("Gamma pole at " + arg.get_str());
  ExactScalar s;
  if (multiplicity == 0) return s;
  Q q = arg;
  Q factor = 1;
  while (q > 1) {
    q -= 1;
    factor *= q;
  }
  while (q <= 0) {
    factor /= q;
    q += 1;
  }
  s.coeff_ = qpow(factor, multiplicity);
  if (q != 1) s.gam_[q] = multiplicity;
  s.normalize();
  return s;
}

ExactScalar ExactScalar::power(const Q& base, const Q& exponent) {
  if (base <= 0) throw DomainError("radical base must be positive");
  ExactScalar s;
  if (exponent == 0) return s;
  for (auto [p, e] : factor_integer(base.get_num())) s.rad_[p] += exponent * e;
  for (auto [p, e] : factor_integer(base.get_den())) s.rad_[p] -= exponent * e;
  s.normalize();
  return s;
}

ExactScalar ExactScalar::shape() const {
  ExactScalar s = *this;
  s.coeff_ = 1;
  return s;
}

void ExactScalar::normalize() {
  if (coeff_ == 0) {
    pi_ = 0;
    rad_.clear();
    gam_.clear();
    return;
  }
  for (auto it = rad_.begin(); it != rad_.end();) {
    Z fl = qfloor(it->second);
    if (fl != 0) {
      coeff_ *= qpow(Q(Z(it->first)), to_long(fl));
      it->second -= fl;
    }
    if (it->second == 0)
      it = rad_.erase(it);
    else
      ++it;
  }
  for (auto it = gam_.begin(); it != gam_.end();) {
    if (it->second == 0)
      it = gam_.erase(it);
    else
      ++it;
  }
  apply_reflection();
}

void ExactScalar::apply_reflection() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [q, m] : gam_) {
      if (!reflectable(q)) continue;
      if (q == make_q(1, 2)) {
        int k = m / 2;
        if (k == 0) continue;
        m -= 2 * k;
        pi_ += k;
        changed = true;
        break;
      }
      if (q > make_q(1, 2)) continue;
      Q other = Q(1) - q;
      auto jt = gam_.find(other);
      if (jt == gam_.end() || static_cast<long>(m) * jt->second <= 0) continue;
      int k = (m > 0) ? std::min(m, jt->second) : std::max(m, jt->second);
      m -= k;
      jt->second -= k;
      ExactScalar f = reflection_factor(q).pow(k);
      coeff_ *= f.coeff_;
      pi_ += f.pi_;
      for (auto& [p, e] : f.rad_) rad_[p] += e;
      changed = true;
      break;
    }
    if (changed) {
      for (auto it = gam_.begin(); it != gam_.end();) {
        if (it->second == 0)
          it = gam_.erase(it);
        else
          ++it;
      }
      for (auto it = rad_.begin(); it != rad_.end();) {
        Z fl = qfloor(it->second);
        if (fl != 0) {
          coeff_ *= qpow(Q(Z(it->first)), to_long(fl));
          it->second -= fl;
        }
        if (it->second == 0)
          it = rad_.erase(it);
        else
          ++it;
      }
    }
  }
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  coeff_ *= o.coeff_;
  pi_ += o.pi_;
  for (auto& [p, e] : o.rad_) rad_[p] += e;
  for (auto& [q, m] : o.gam_) gam_[q] += m;
  normalize();
  return *this;
}

ExactScalar ExactScalar::inverse() const {
  if (coeff_ == 0) throw DomainError("inverse of zero scalar");
  ExactScalar s;
  s.coeff_ = Q(1) / coeff_;
  s.pi_ = -pi_;
  for (auto& [p, e] : rad_) s.rad_[p] = -e;
  for (auto& [q, m] : gam_) s.gam_[q] = -m;
  s.normalize();
  return s;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

ExactScalar ExactScalar::operator-() const {
  ExactScalar s = *this;
  s.coeff_ = -s.coeff_;
  return s;
}

ExactScalar ExactScalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  ExactScalar r;
  for (int i = 0; i < e; ++i) r *= *this;
  return r;
}

bool ExactScalar::operator==(const ExactScalar& o) const {
  return coeff_ == o.coeff_ && pi_ == o.pi_ && rad_ == o.rad_ && gam_ == o.gam_;
}

bool ExactScalar::operator<(const ExactScalar& o) const {
  return std::tie(pi_, rad_, gam_, coeff_) < std::tie(o.pi_, o.rad_, o.gam_, o.coeff_);
}

double ExactScalar::to_double() const { return static_cast<double>(to_mp()); }

mp50 ExactScalar::to_mp() const {
  using boost::multiprecision::pow;
  mp50 v = mp50(coeff_.get_num().get_str()) / mp50(coeff_.get_den().get_str());
  if (pi_ != 0) v *= pow(boost::math::constants::pi<mp50>(), pi_);
  for (auto& [p, e] : rad_) {
    mp50 ex = mp50(e.get_num().get_str()) / mp50(e.get_den().get_str());
    v *= pow(mp50(p), ex);
  }
  for (auto& [q, m] : gam_) {
    mp50 arg = mp50(q.get_num().get_str()) / mp50(q.get_den().get_str());
    v *= pow(boost::math::tgamma(arg), m);
  }
  return v;
}

std::string ExactScalar::to_string() const {
  std::vector<std::string> parts;
  if (pi_ != 0) parts.push_back("pi^" + std::to_string(pi_));
  Z sq = 1;
  std::vector<std::string> other;
  for (auto& [p, e] : rad_) {
    if (e == make_q(1, 2))
      sq *= p;
    else
      other.push_back(std::to_string(p) + "^(" + e.get_str() + ")");
  }
  if (sq != 1) parts.push_back("sqrt(" + sq.get_str() + ")");
  for (auto& [q, m] : gam_) {
    std::string t = "Gamma(" + q.get_str() + ")";
    if (m != 1) t += "^" + std::to_string(m);
    parts.push_back(t);
  }
  for (auto& o : other) parts.push_back(o);
  std::ostringstream os;
  if (parts.empty() || coeff_ == 0) return coeff_.get_str();
  if (coeff_ == -1)
    os << "-";
  else if (coeff_ != 1)
    os << coeff_.get_str() << " * ";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? " * " : "") << parts[i];
  return os.str();
}

ExactScalar gamma_normalize(const ExactScalar& x) {
  ExactScalar r = x;
  r *= ExactScalar(1);
  return r;
}

ExactSum::ExactSum(const ExactScalar& s) {
  if (!s.is_zero()) terms_[s.shape()] = s.rational_part();
}

ExactSum& ExactSum::operator+=(const ExactSum& o) {
  for (auto& [k, v] : o.terms_) {
    auto [it, inserted] = terms_.emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

ExactSum& ExactSum::operator-=(const ExactSum& o) {
  ExactSum neg = o;
  for (auto& [k, v] : neg.terms_) v = -v;
  return *this += neg;
}

ExactSum& ExactSum::operator*=(const ExactScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  std::map<ExactScalar, Q> out;
  for (auto& [k, v] : terms_) {
    ExactScalar t = k * s;
    Q c = v * t.rational_part();
    ExactScalar sh = t.shape();
    auto [it, inserted] = out.emplace(sh, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  terms_ = std::move(out);
  return *this;
}

ExactSum& ExactSum::operator*=(const ExactSum& o) {
  ExactSum acc;
  for (auto& [k, v] : o.terms_) {
    ExactSum part = *this;
    part *= k * ExactScalar(v);
    acc += part;
  }
  return *this = acc;
}

bool ExactSum::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_rational());
}

Q ExactSum::rational_value() const {
  if (terms_.empty()) return 0;
  if (!is_rational()) throw DomainError("non-rational residue: " + to_string());
  return terms_.begin()->second;
}

ExactScalar ExactSum::as_scalar() const {
  if (terms_.empty()) return ExactScalar(0);
  if (terms_.size() != 1) throw DomainError("sum has several shapes: " + to_string());
  return terms_.begin()->first * ExactScalar(terms_.begin()->second);
}

double ExactSum::to_double() const {
  double v = 0;
  for (auto& [k, c] : terms_) v += (k * ExactScalar(c)).to_double();
  return v;
}

std::string ExactSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : terms_) {
    if (!first) os << " + ";
    os << (k * ExactScalar(c)).to_string();
    first = false;
  }
  return os.str();
}

}  // namespace pspin
