#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pspin/moment.hpp"
#include "pspin/oracle.hpp"

using namespace pspin;

namespace {

RatFunc a() { return RatFunc::x(); }
RatFunc den() { return RatFunc(1) + a().pow(3); }

MomentEngine& airy3() {
  static MomentEngine e(AiryFamily(3, KernelMode::contour));
  return e;
}

// Integrals with derivatives taken in y, so phi^(c)(-ay) picks up (-a)^c.
ReductionResult J(int n, int b, int c) {
  ReductionResult r;
  r.add(airy3().reduce({n, b, c}), (-a()).pow(c));
  return r;
}

ReductionResult comb(std::initializer_list<std::pair<ReductionResult, RatFunc>> terms) {
  ReductionResult r;
  for (auto& [x, c] : terms) r.add(x, c);
  return r;
}

ReductionResult L() {
  ReductionResult r;
  r.add_boundary(0, 1, RatFunc(1));
  return r;
}

}  // namespace

TEST_CASE("K closed forms") {
  K2ClosedForm k = k2_closed_form();
  CHECK(J(0, 2, 0) == k.k1);
  CHECK(J(0, 1, 1) == k.k2);
  // K2 vanishes at a = 1
  CHECK(k.k2.boundary.at({0, 1}).eval(Q(1)) == 0);
  // K1 = -Ai(0)Ai'(0) - K2
  CHECK(k.k1 == comb({{L(), RatFunc(-1)}, {k.k2, RatFunc(-1)}}));
}

TEST_CASE("genus three integral relations") {
  RatFunc d = den(), x = a();
  auto K1 = J(0, 2, 0), K2 = J(0, 1, 1);
  auto J1 = J(7, 0, 0), J2 = J(5, 1, 0), J3 = J(5, 0, 1), J4 = J(3, 1, 1), J5 = J(3, 2, 0);
  auto J6 = J(3, 0, 2), J7 = J(1, 3, 0), J8 = J(1, 0, 3), J9 = J(1, 2, 1), J10 = J(1, 1, 2);
  CHECK(J10 == comb({{K1, RatFunc(2) * x.pow(3) / d}, {K2, -x.pow(3) / d}}));
  CHECK(J9 == comb({{K2, RatFunc(-1)}, {J10, RatFunc(-1)}}));
  CHECK(J8 == comb({{L(), (x.pow(3) + RatFunc(2) * x.pow(4) - RatFunc(2) * x.pow(6) - x.pow(7)) / d.pow(2)}}));
  CHECK(J7 == comb({{J8, RatFunc(1) / x.pow(3)}}));
  CHECK(J6 == comb({{J7, RatFunc(6) * x.pow(3) / d}}));
  CHECK(J5 == comb({{J6, RatFunc(-1) / x.pow(3)}}));
  CHECK(J4 == comb({{J5, x.pow(3)}, {J9, RatFunc(-3)}}));
  CHECK(J1 == comb({{J5, RatFunc(30) / d}, {J3, RatFunc(12) / d}}));
  CHECK(J2 == comb({{J5, RatFunc(-5) / d}, {J4, RatFunc(4) / d}}));
  CHECK(J3 == comb({{J5, RatFunc(-5) * x.pow(3) / d}, {J4, RatFunc(-4) / d}}));
  for (auto* r : {&J1, &J2, &J3, &J4, &J5, &J6, &J7, &J8, &J9, &J10}) CHECK(r->irreducible.empty());
}

TEST_CASE("I2 boundary identity holds symbolically") {
  // (1 + a^3) I2 = Ai(0)^2 + 2T with T = -a M(0,0,1)
  ReductionResult lhs = comb({{J(1, 2, 0), den()}});
  ReductionResult rhs;
  rhs.add_boundary(0, 0, RatFunc(1));
  rhs.add(J(0, 0, 1), RatFunc(2));
  CHECK(lhs == rhs);
}

TEST_CASE("genus two integrals carry the T cross term") {
  const MomentSymbol T{0, 0, 1};
  int with_t = 0;
  for (auto [n, b, c] : {std::tuple{5, 0, 0}, {1, 2, 0}, {1, 0, 2}, {1, 1, 1}, {3, 1, 0}, {3, 0, 1}}) {
    ReductionResult r = airy3().reduce({n, b, c});
    for (auto& [s, _] : r.irreducible) CHECK(s == T);
    with_t += r.irreducible.count(T);
  }
  CHECK(with_t > 0);
  CHECK(airy3().reduce(T).irreducible.size() == 1);
}

TEST_CASE("reduction is confluent under a shuffled rule order") {
  std::mt19937 rng(20240611);
  for (int p : {3, 4, 5}) {
    for (KernelMode mode : {KernelMode::contour, KernelMode::real}) {
      MomentEngine first(AiryFamily(p, mode));
      MomentEngine second(AiryFamily(p, mode), 8, 977);
      for (int i = 0; i < 200; ++i) {
        MomentSymbol m{int(rng() % 9), int(rng() % (p - 1)), int(rng() % (p - 1))};
        CAPTURE(p);
        CAPTURE(m.to_string());
        CHECK(first.reduce(m) == second.reduce(m));
      }
    }
  }
}

TEST_CASE("reduction is linear") {
  std::mt19937 rng(7);
  MomentEngine e(AiryFamily(4, KernelMode::real));
  for (int i = 0; i < 40; ++i) {
    MomentSymbol m1{int(rng() % 7), int(rng() % 3), int(rng() % 3)};
    MomentSymbol m2{int(rng() % 7), int(rng() % 3), int(rng() % 3)};
    RatFunc c1 = RatFunc(Q(int(rng() % 11) - 5)) + a();
    RatFunc c2 = RatFunc(Q(int(rng() % 7) + 1)) / (RatFunc(1) + a().pow(4));
    GradeAssembly g;
    try {
      g = e.assemble_grade({{c1, m1}, {c2, m2}});
    } catch (const CancellationFailure&) {
      continue;  // irreducible leftovers are checked below through reduce
    }
    ReductionResult direct = comb({{e.reduce(m1), c1}, {e.reduce(m2), c2}});
    CHECK(direct.boundary == g.boundary);
    CHECK(direct.ode_constant == g.ode_constant);
  }
  ReductionResult r = comb({{airy3().reduce({2, 1, 0}), RatFunc(3)}, {airy3().reduce({2, 1, 0}), RatFunc(-3)}});
  CHECK(r.is_zero());
}

TEST_CASE("assemble_grade") {
  MomentEngine& e = airy3();
  SUBCASE("single pure contribution returns itself") {
    GradeAssembly g = e.assemble_grade({{RatFunc(1), {0, 2, 0}}});
    CHECK(g.boundary == k2_closed_form().k1.boundary);
  }
  SUBCASE("a lone T symbol fails with the offending coefficient") {
    RatFunc c = RatFunc(2) * a();
    try {
      e.assemble_grade({{c, {0, 0, 1}}});
      FAIL("expected CancellationFailure");
    } catch (const CancellationFailure& f) {
      CHECK(f.offending == c);
    }
  }
  SUBCASE("T contributions that cancel pass") {
    GradeAssembly g = e.assemble_grade({{RatFunc(1), {0, 0, 1}}, {RatFunc(-1), {0, 0, 1}}});
    CHECK(g.boundary.empty());
  }
}

TEST_CASE("denominators are powers of (1 + a^p) times powers of a") {
  for (int p : {3, 4, 5}) {
    MomentEngine e(AiryFamily(p, KernelMode::real));
    for (int n = 0; n <= 6; ++n)
      for (int b = 0; b < p - 1; ++b)
        for (int c = 0; c < p - 1; ++c) CHECK(e.reduce({n, b, c}).denominators_in_pattern(p));
  }
}

TEST_CASE("real kernel reductions expose the ode constant only for real mode") {
  MomentEngine r(AiryFamily(3, KernelMode::real));
  bool any = false;
  for (int n = 0; n <= 4; ++n) any = any || !r.reduce({n, 1, 1}).ode_constant.empty() || !r.reduce_single(false, n, 2).ode_constant.empty();
  CHECK(any);
  for (int n = 0; n <= 4; ++n) CHECK(airy3().reduce({n, 1, 1}).ode_constant.empty());
}

TEST_CASE("reductions agree with quadrature") {
  for (double av : {0.5, 0.8, 1.0}) {
    for (auto& rec : airy_identity_records(av, 1e-6)) {
      CAPTURE(rec.identity);
      CAPTURE(av);
      CHECK(rec.pass());
    }
  }
}
