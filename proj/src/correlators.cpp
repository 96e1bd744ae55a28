#include "pspin/correlators.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

#include "json.hpp"

namespace pspin {

std::string TauCorrelator::key() const {
  std::ostringstream os;
  os << "<";
  for (size_t i = 0; i < marks.size(); ++i)
    os << (i ? " " : "") << "tau_{" << marks[i].m << "," << marks[i].j << "}";
  os << ">_" << genus;
  return os.str();
}

Q correction_coefficient(int p, int k) {
  Q a(binomial(p + 1, 2 * k + 1), Z(p + 1) * (Z(1) << (2 * k)));
  a.canonicalize();
  return a;
}

std::vector<CorrectionTerm> corrections(int p, int K) {
  std::vector<CorrectionTerm> out;
  struct Rec {
    int p;
    std::vector<CorrectionTerm>& out;
    void operator()(int k, int rem, const Q& coef, int count, int order) const {
      if (rem == 0) {
        out.push_back({coef, count, order});
        return;
      }
      if (k > rem) return;
      Q a = correction_coefficient(p, k);
      for (int n = 0; n * k <= rem; ++n) {
        if (n > 0 && a == 0) break;
        Q c = coef * qpow(-a, n) / Q(factorial(n));
        (*this)(k + 1, rem - n * k, c, count + n, order + n * (p - 2 * k));
      }
    }
  };
  Rec{p, out}(1, K, Q(1), 0, 0);
  return out;
}

namespace {

// int_0^inf v^k exp(-v^p/p) dv, continued to negative k; nullopt at poles.
std::optional<ExactScalar> real_moment(int p, int k) {
  Q q = make_q(k + 1, p);
  if (is_integer(q) && q <= 0) return std::nullopt;
  return ExactScalar::power(Q(p), q - 1) * ExactScalar::gamma(q);
}

std::vector<OnePointCoefficient> one_point_raw(int g_max);

bool fractional_grade(long e1, long e2, int p) { return e1 % p != 0 && e2 % p != 0; }

FractionalSeries small_a_series(int p, int g) {
  const long total = 2L * g * (p + 1);
  FractionalSeries out(p, 2);
  for (int K = 0; K <= g; ++K) {
    const int l = 2 * g + 1 - 2 * K;
    for (int K1 = 0; K1 <= K; ++K1) {
      const int K2 = K - K1;
      for (auto& t1 : corrections(p, K1)) {
        for (auto& t2 : corrections(p, K2)) {
          // 2/(S (p s2)^{1/p}) * (S (p s1)^{1/p} x / 2)^l / l!, S = s1 + s2
          Q pref = Q(2) / Q(factorial(l) * (Z(1) << l)) * t1.coef * t2.coef;
          Q pe = make_q(l - 1, p) + make_q(2 * K, p) - t1.count - t2.count;
          ExactScalar ppow = ExactScalar::power(Q(p), pe);
          for (int i = 0; i < l; ++i) {
            long e1b = l + static_cast<long>(p) * (l - 1 - i) + 2L * K1 * (p + 1);
            long e2b = -1 + static_cast<long>(p) * i + 2L * K2 * (p + 1);
            for (int r = 0; e1b + r <= total; ++r) {
              long e1 = e1b + r, e2 = e2b - r;
              int n = l + r;
              // phi^(D2)(-a x) = sum_r (-a x)^r/r! phi^(D2+r)(0), a^r = s1^{r/p} s2^{-r/p};
              // int x^n phi^(D1) = (-1)^{n+1} n! G(D1-n-1)
              Q coef = pref * Q(binomial(l - 1, i)) * Q(r % 2 ? -1 : 1) / Q(factorial(r)) *
                       Q((n + 1) % 2 ? -1 : 1) * Q(factorial(n));
              auto ga = real_moment(p, t1.order - n - 1);
              if (!ga) {
                if (fractional_grade(e1, e2, p))
                  throw std::runtime_error("pole on a fractional grade in the small-a expansion");
                continue;
              }
              auto gb = real_moment(p, t2.order + r);
              out.add_term(std::vector<long>{e1, e2}, ExactSum(ExactScalar(coef) * ppow * *ga * *gb));
            }
          }
        }
      }
    }
  }
  return out;
}

MomentEngine& engine_for(int p, KernelMode mode) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MomentEngine>> engines;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, static_cast<int>(mode));
  auto it = engines.find(key);
  if (it == engines.end())
    it = engines.emplace(key, std::make_unique<MomentEngine>(AiryFamily(p, mode), 8)).first;
  return *it->second;
}

struct ExactAssembly {
  FractionalSeries series;
  LedgerReport ledger;
};

ExactAssembly exact_series(int p, int g, KernelMode mode) {
  const long total = 2L * g * (p + 1);
  AiryFamily fam(p, mode);
  RatFunc a = RatFunc::x();
  RatFunc one_plus = RatFunc(1) + a.pow(p);
  std::vector<MomentContribution> moments;
  for (int K = 0; K <= g; ++K) {
    const int l = 2 * g + 1 - 2 * K;
    for (int K1 = 0; K1 <= K; ++K1) {
      const int K2 = K - K1;
      for (auto& t1 : corrections(p, K1)) {
        for (auto& t2 : corrections(p, K2)) {
          Q pref = Q(2) / Q(factorial(l) * (Z(1) << l)) * t1.coef * t2.coef;
          // p-power relative to the common factor p^{2g/p}; always an integer.
          Q ip = make_q(l - 1, p) + make_q(2 * K, p) - t1.count - t2.count - make_q(2 * g, p);
          if (!is_integer(ip)) throw std::logic_error("non-integer relative p-power");
          pref *= qpow(Q(p), to_long(ip.get_num()));
          RatFunc afac = one_plus.pow(l - 1) * RatFunc::xpow(l + 2 * K1 * (p + 1));
          moments.push_back({RatFunc(pref) * afac, {l, t1.order, t2.order}});
        }
      }
    }
  }
  ExactAssembly out{FractionalSeries(p, 2), LedgerReport{}};
  LedgerReport& rep = out.ledger;
  rep.p = p;
  rep.genus = g;
  rep.mode = mode;
  MomentEngine& engine = engine_for(p, mode);
  GradeAssembly ga;
  try {
    ga = engine.assemble_grade(moments);
    rep.irreducible_cancelled = true;
  } catch (const CancellationFailure& e) {
    rep.irreducible_cancelled = false;
    rep.detail = e.what();
    return out;
  }
  {
    ReductionResult tmp;
    for (auto& [k, v] : ga.boundary) tmp.add_boundary(k.first, k.second, v);
    for (auto& [k, v] : ga.ode_constant) tmp.add_ode_constant(k, v);
    rep.pattern_1_plus_a_p = tmp.denominators_in_pattern(p);
  }
  ExactScalar common = ExactScalar::power(Q(p), make_q(2 * g, p));
  std::ostringstream detail;
  for (auto& [ij, f] : ga.boundary) {
    if (!f.is_laurent()) throw std::runtime_error("boundary coefficient is not a Laurent polynomial in a");
    ExactScalar bval = phi_deriv_zero(fam, ij.first) * phi_deriv_zero(fam, ij.second) * common;
    for (auto& [m, c] : f.laurent_terms()) {
      long e1 = m, e2 = total - m;
      if (e1 < 0 || e2 < 0) throw std::runtime_error("negative s-exponent in assembled grade");
      if (fractional_grade(e1, e2, p)) ++rep.fractional_grades;
      out.series.add_term(std::vector<long>{e1, e2}, ExactSum(bval * ExactScalar(c)));
    }
  }
  rep.ode_constant_clean = true;
  for (auto& [key, f] : ga.ode_constant) {
    // int phi(-a y) dy carries a hidden 1/a.
    int shift = key.kind == LedgerKind::second_moment ? -1 : 0;
    if (!f.is_laurent()) {
      rep.ode_constant_clean = false;
      detail << "non-Laurent ledger entry " << key.to_string() << "; ";
      continue;
    }
    for (auto& [m, c] : f.laurent_terms()) {
      ++rep.ode_constant_terms;
      long e1 = m + shift, e2 = total - e1;
      if (fractional_grade(e1, e2, p)) {
        rep.ode_constant_clean = false;
        detail << "ode-constant leak " << key.to_string() << " a^" << (m + shift) << " coeff " << c.get_str()
               << "; ";
      }
    }
  }
  rep.detail += detail.str();
  return out;
}

Route resolve(int p, const TwoPointOptions& opt) {
  if (opt.route != Route::automatic) return opt.route;
  if (opt.mode == KernelMode::contour) return Route::exact_in_a;
  return p == 3 ? Route::exact_in_a : Route::small_a;
}

std::vector<TauCorrelator> extract_raw(const FractionalSeries& series, int p, int g, KernelMode mode,
                                       const Q& kappa) {
  const long total = 2L * g * (p + 1);
  std::vector<TauCorrelator> out;
  for (auto& [mono, coef] : series.terms()) {
    if (mono.size() != 2) throw DomainError("two-point extraction needs a two-variable series");
    if (mono[0].numerator(p) + mono[1].numerator(p) != total) continue;
    if (mono[0].is_integer() || mono[1].is_integer()) continue;
    Mark a{mono[0].m, mono[0].j}, b{mono[1].m, mono[1].j};
    if (b < a) continue;
    ExactSum v = coef;
    v *= (spin_unit(p, a.j, mode) * spin_unit(p, b.j, mode)).inverse();
    v *= ExactScalar(qpow(Q(-p), 1 - g) * kappa);
    Q val;
    try {
      val = v.rational_value();
    } catch (const DomainError&) {
      throw DomainError("calibration error: non-rational residue " + v.to_string() + " at " +
                        TauCorrelator{Q(p), g, {a, b}, Q(0), {}}.key());
    }
    if (val == 0) continue;
    out.push_back(TauCorrelator{Q(p), g, {a, b}, val, {a, b}});
  }
  return out;
}

}  // namespace

FractionalSeries two_point_series(int p, int g, const TwoPointOptions& opt) {
  if (p < 3) throw DomainError("two-point expansion needs integer p >= 3");
  if (g < 0) throw DomainError("negative genus");
  if (g == 0) return FractionalSeries(p, 2);
  Route r = resolve(p, opt);
  if (r == Route::small_a) {
    if (opt.mode != KernelMode::real) throw DomainError("the small-a route uses the real kernel");
    return small_a_series(p, g);
  }
  ExactAssembly ea = exact_series(p, g, opt.mode);
  if (!ea.ledger.irreducible_cancelled) throw CancellationFailure(ea.ledger.detail, RatFunc());
  if (!ea.ledger.ode_constant_clean) throw CancellationFailure(ea.ledger.detail, RatFunc());
  return ea.series;
}

FractionalSeries two_point_series_upto(int p, int g_max, const TwoPointOptions& opt) {
  FractionalSeries s(p, 2);
  for (int g = 1; g <= g_max; ++g) s += two_point_series(p, g, opt);
  return s;
}

LedgerReport cancellation_ledger(int p, int g, KernelMode mode) { return exact_series(p, g, mode).ledger; }

ExactScalar spin_unit(int p, int j, KernelMode mode) {
  if (j < 0 || j > p - 2) throw DomainError("spin index out of range 0..p-2");
  Q q = make_q(1 + j, p);
  if (mode == KernelMode::real) return ExactScalar::gamma(Q(1) - q);
  int k = p - 2 - j;
  ExactScalar u = ExactScalar::gamma(q).inverse();
  return k % 2 ? -u : u;
}

Q calibration_constant(int points) {
  if (points == 2) {
    static const Q kappa2 = [] {
      auto raw = extract_raw(two_point_series(3, 2), 3, 2, KernelMode::real, Q(1));
      for (auto& t : raw)
        if (t.marks == std::vector<Mark>{{0, 1}, {4, 1}}) return Q(make_q(1, 864) / t.value);
      throw std::runtime_error("two-point anchor grade missing");
    }();
    return kappa2;
  }
  if (points == 1) {
    static const Q kappa1 = [] {
      auto s = one_point_raw(1);
      RatFunc target = RatFunc(Poly(std::vector<Q>{Q(-1), Q(1)})) / RatFunc(24);
      RatFunc k = target / s.at(0).raw;
      if (!k.is_constant()) throw std::runtime_error("one-point anchor ratio depends on p");
      return k.constant();
    }();
    return kappa1;
  }
  throw DomainError("calibration exists for one or two points");
}

std::vector<TauCorrelator> extract_intersections(const FractionalSeries& series, int p, int g, KernelMode mode) {
  return extract_raw(series, p, g, mode, calibration_constant(2));
}

std::vector<TauCorrelator> two_point_table(int p, int g, const TwoPointOptions& opt) {
  if (g <= 0) return {};
  return extract_intersections(two_point_series(p, g, opt), p, g, opt.mode);
}

std::optional<Q> two_point_value(int p, int g, Mark a, Mark b, const TwoPointOptions& opt) {
  if (b < a) std::swap(a, b);
  for (auto& t : two_point_table(p, g, opt))
    if (t.marks[0] == a && t.marks[1] == b) return t.value;
  return std::nullopt;
}

namespace {

RatFunc genus_factor(int g) {
  // (-p)^(1-g)
  RatFunc r = RatFunc::xpow(1 - g);
  return (g - 1) % 2 ? -r : r;
}

std::vector<OnePointCoefficient> one_point_raw(int g_max) {
  if (g_max < 1 || g_max > 8) throw DomainError("one-point series supports 1 <= g <= 8");
  RatFunc P = RatFunc::x();
  auto A = [&](int k) {
    // C(p+1,2k+1)/((p+1) 4^k) = prod_{i=1}^{2k} (p+1-i) / ((2k+1)! 4^k)
    RatFunc r(1);
    for (int i = 1; i <= 2 * k; ++i) r *= P + RatFunc(Q(1 - i));
    return r / RatFunc(Q(factorial(2 * k + 1) * (Z(1) << (2 * k))));
  };
  std::vector<OnePointCoefficient> out;
  for (int g = 1; g <= g_max; ++g) {
    RatFunc q = RatFunc(Q(1 - 2 * g)) / P;
    RatFunc total;
    std::vector<int> n(g + 1, 0);
    // partitions of g by multiplicities n_k
    std::function<void(int, int)> rec = [&](int k, int rem) {
      if (rem == 0) {
        RatFunc t(1);
        int N = 0;
        for (int kk = 1; kk <= g; ++kk) {
          if (!n[kk]) continue;
          t *= (-A(kk)).pow(n[kk]) / RatFunc(Q(factorial(n[kk])));
          N += n[kk];
        }
        // v^D with D = N p - 2g: Gamma((D+1)/p) = Gamma(1+q) prod_{i=1}^{N-1} (q+i)
        for (int i = 1; i < N; ++i) t *= q + RatFunc(Q(i));
        total += t;
        return;
      }
      if (k > rem) return;
      for (int m = 0; m * k <= rem; ++m) {
        n[k] = m;
        rec(k + 1, rem - m * k);
      }
      n[k] = 0;
    };
    rec(1, g);
    RatFunc raw = total / P;
    out.push_back({g, raw, RatFunc(), 2 * g - 1});
  }
  return out;
}

}  // namespace

std::vector<OnePointCoefficient> one_point_series(int g_max) {
  auto out = one_point_raw(g_max);
  Q kappa = calibration_constant(1);
  for (auto& c : out) c.coefficient = c.raw * genus_factor(c.genus) * RatFunc(kappa);
  return out;
}

std::optional<TauCorrelator> one_point_value(const Q& p, int g) {
  if (!is_integer(p) || p == 0) throw DomainError("one-point tables need nonzero integer p");
  long pi = p.get_num().get_si();
  long ap = pi < 0 ? -pi : pi;
  long j = (2L * g - 2) % ap;
  if (pi > 0 && j == pi - 1) return std::nullopt;
  Z num = Z(pi + 1) * (2 * g - 1) - j - 1;
  if (num % pi != 0) return std::nullopt;
  Z n = num / pi;
  if (n < 0) return std::nullopt;
  RatFunc c = one_point_series(g).back().coefficient;
  Q cv;
  ExactScalar ratio;
  try {
    cv = c.eval(p);
    ratio = ExactScalar::gamma(Q(1) - Q(2 * g - 1) / p) / ExactScalar::gamma(Q(1) - Q(1 + j) / p);
  } catch (const DomainError&) {
    return std::nullopt;
  }
  if (!ratio.is_rational()) throw DomainError("one-point Gamma ratio is not rational: " + ratio.to_string());
  Z nabs = (Z(ap + 1) * (2 * g - 1) - j - 1) / ap;
  TauCorrelator t{p, g, {{static_cast<int>(n.get_si()), static_cast<int>(j)}}, cv * ratio.rational_part(),
                  {{static_cast<int>(nabs.get_si()), static_cast<int>(j)}}};
  return t;
}

std::vector<TauCorrelator> one_point_table(int p, int g_max) {
  std::vector<TauCorrelator> out;
  for (int g = 1; g <= g_max; ++g) {
    auto t = one_point_value(Q(p), g);
    if (t && t->value != 0) out.push_back(*t);
  }
  return out;
}

RatFunc general_p_interpolate(const std::map<int, Q>& samples, int num_degree, int den_power) {
  if (num_degree < 0) throw DomainError("negative interpolation degree");
  if (static_cast<int>(samples.size()) < num_degree + 1) throw InterpolationError("too few samples");
  std::vector<std::pair<Q, Q>> pts;
  for (auto& [p, v] : samples) pts.emplace_back(Q(p), v * qpow(Q(p), den_power));
  Poly fit;
  for (int i = 0; i <= num_degree; ++i) {
    Poly basis(Q(1));
    Q denom = 1;
    for (int k = 0; k <= num_degree; ++k) {
      if (k == i) continue;
      basis *= Poly(std::vector<Q>{-pts[k].first, Q(1)});
      denom *= pts[i].first - pts[k].first;
    }
    fit += basis * (pts[i].second / denom);
  }
  for (size_t i = num_degree + 1; i < pts.size(); ++i) {
    if (fit.eval(pts[i].first) != pts[i].second)
      throw InterpolationError("held-out sample at p=" + pts[i].first.get_str() + " does not match");
  }
  return RatFunc(fit) / RatFunc::xpow(den_power);
}

const std::vector<InterpolationFamily>& interpolation_families() {
  static const std::vector<InterpolationFamily> fams = {
      {"tau00_tau20_g1", 1, {0, 0}, {2, 0}, 1, 0, 3},
      {"tau02_tau1top_g1", 1, {0, 2}, {1, -2}, 1, 1, 4},
      {"tau00_tau42_g2", 2, {0, 0}, {4, 2}, 3, 1, 4},
      {"tau01_tau41_g2", 2, {0, 1}, {4, 1}, 3, 1, 3},
      {"tau02_tau40_g2", 2, {0, 2}, {4, 0}, 3, 1, 4},
      {"tau04_tau3top_g2", 2, {0, 4}, {3, -2}, 3, 2, 6},
      {"tau00_tau64_g3", 3, {0, 0}, {6, 4}, 5, 2, 6},
      {"tau01_tau63_g3", 3, {0, 1}, {6, 3}, 5, 2, 5},
      {"tau02_tau62_g3", 3, {0, 2}, {6, 2}, 5, 2, 4},
  };
  return fams;
}

std::map<int, Q> sample_family(const InterpolationFamily& f, int count) {
  std::map<int, Q> out;
  for (int p = f.p_first; p < f.p_first + count; ++p) {
    auto resolve_mark = [p](Mark m) { return Mark{m.m, m.j < 0 ? p + m.j : m.j}; };
    Mark a = resolve_mark(f.a), b = resolve_mark(f.b);
    auto v = two_point_value(p, f.genus, a, b);
    out[p] = v ? *v : Q(0);
  }
  return out;
}

RatFunc interpolate_family(const InterpolationFamily& f, int held_out) {
  return general_p_interpolate(sample_family(f, f.num_degree + 1 + held_out), f.num_degree, f.den_power);
}

std::string table_json(const std::vector<TauCorrelator>& rows, const std::string& p, int genus, int points) {
  nlohmann::ordered_json j;
  if (p == "symbolic")
    j["p"] = "symbolic";
  else
    j["p"] = std::stoi(p);
  j["genus"] = genus;
  j["points"] = points;
  j["entries"] = nlohmann::ordered_json::array();
  for (auto& r : rows) {
    nlohmann::ordered_json e;
    std::vector<int> ms, js;
    for (auto& mk : r.marks) {
      ms.push_back(mk.m);
      js.push_back(mk.j);
    }
    e["m"] = ms;
    e["j"] = js;
    e["num"] = r.value.get_num().get_str();
    e["den"] = r.value.get_den().get_str();
    j["entries"].push_back(e);
  }
  return j.dump(2);
}

std::string table_csv(const std::vector<TauCorrelator>& rows) {
  std::ostringstream os;
  os << "p,genus,m,j,num,den\n";
  for (auto& r : rows) {
    std::string ms, js;
    for (size_t i = 0; i < r.marks.size(); ++i) {
      ms += (i ? ";" : "") + std::to_string(r.marks[i].m);
      js += (i ? ";" : "") + std::to_string(r.marks[i].j);
    }
    os << r.p.get_str() << "," << r.genus << "," << ms << "," << js << "," << r.value.get_num().get_str() << ","
       << r.value.get_den().get_str() << "\n";
  }
  return os.str();
}

}  // namespace pspin
