#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>

#include "pspin/airy.hpp"

using namespace pspin;

TEST_CASE("phi^(p-2)(0) = p^(-1/p) Gamma(1 - 1/p)") {
  for (int p = 3; p <= 9; ++p) {
    ExactScalar want = ExactScalar::power(Q(p), make_q(-1, p)) * ExactScalar::gamma(Q(1) - make_q(1, p));
    CHECK(phi_deriv_zero(p, p - 2) == want);
  }
}

TEST_CASE("contour kernel at p=3 gives Ai(0) and Ai'(0)") {
  AiryFamily fam(3, KernelMode::contour);
  CHECK(phi_deriv_zero(fam, 0) == ExactScalar::power(Q(3), make_q(-2, 3)) / ExactScalar::gamma(make_q(2, 3)));
  CHECK(phi_deriv_zero(fam, 0).to_double() == doctest::Approx(0.3550280539).epsilon(1e-10));
  CHECK(phi_deriv_zero(fam, 1).to_double() == doctest::Approx(-0.2588194038).epsilon(1e-10));
  // Ai''(0) = 0 from the ODE, Ai'''(0) = Ai(0)
  CHECK(phi_deriv_zero(fam, 2).is_zero());
  CHECK(phi_deriv_zero(fam, 3) == phi_deriv_zero(fam, 0));
}

TEST_CASE("real kernel derivatives at zero match quadrature") {
  boost::math::quadrature::exp_sinh<double> q;
  for (int p = 3; p <= 7; ++p) {
    for (int k = 0; k <= p; ++k) {
      double oracle = q.integrate([&](double u) { return u > 60 ? 0.0 : std::pow(u, k) * std::exp(-std::pow(u, p) / p); });
      CAPTURE(p);
      CAPTURE(k);
      CHECK(phi_deriv_zero(p, k).to_double() == doctest::Approx(oracle).epsilon(1e-8));
    }
  }
  CHECK(phi_deriv_zero(4, 0).to_double() == doctest::Approx(std::pow(4.0, -0.75) * std::tgamma(0.25)).epsilon(1e-10));
}

TEST_CASE("ode_rewrite examples") {
  AiryFamily c3(3, KernelMode::contour), r4(4, KernelMode::real);
  OdeRewrite a = ode_rewrite(c3, 2);
  CHECK(a.phi_terms == std::map<std::pair<int, int>, Q>{{{1, 0}, Q(1)}});
  CHECK(a.constant_terms.empty());
  OdeRewrite b = ode_rewrite(r4, 3);
  CHECK(b.phi_terms == std::map<std::pair<int, int>, Q>{{{1, 0}, Q(1)}});
  CHECK(b.constant_terms == std::map<int, Q>{{0, Q(1)}});
  OdeRewrite c = ode_rewrite(c3, 3);
  CHECK(c.phi_terms == std::map<std::pair<int, int>, Q>{{{0, 0}, Q(1)}, {{1, 1}, Q(1)}});
  CHECK(ode_rewrite(c3, 1).noop);
  CHECK(r4.ode_constant() == 1);
  CHECK(c3.ode_constant() == 0);
}

TEST_CASE("ode_rewrite agrees with the real-kernel derivatives at zero") {
  for (int p = 3; p <= 6; ++p) {
    AiryFamily fam(p, KernelMode::real);
    for (int b = p - 1; b <= 2 * p + 1; ++b) {
      OdeRewrite r = ode_rewrite(fam, b);
      ExactSum at0;
      for (auto& [ei, c] : r.phi_terms)
        if (ei.first == 0) at0 += ExactSum(ExactScalar(c) * phi_deriv_zero(fam, ei.second));
      for (auto& [e, c] : r.constant_terms)
        if (e == 0) at0 += ExactSum(c * fam.ode_constant());
      CHECK(at0 == ExactSum(phi_deriv_zero(fam, b)));
    }
  }
}

TEST_CASE("Airy evaluation matches an independent implementation to 1e-12 on [-10, 10]") {
  for (int i = -100; i <= 100; ++i) {
    double y = i / 10.0;
    double scale = std::max(1.0, std::abs(boost::math::airy_ai(y)));
    CHECK(std::abs(airy_ai(y) - boost::math::airy_ai(y)) < 1e-12 * scale);
    CHECK(std::abs(airy_ai_prime(y) - boost::math::airy_ai_prime(y)) < 1e-12 * std::max(1.0, std::abs(y)));
  }
  CHECK(airy_ai(0) == doctest::Approx(0.3550280539).epsilon(1e-10));
  CHECK(airy_ai_prime(0) == doctest::Approx(-0.2588194038).epsilon(1e-10));
}

TEST_CASE("Ai satisfies the ODE numerically") {
  for (double y : {-2.0, -1.0, 0.0, 1.0}) {
    double h = 1e-3;
    double d2 = (airy_ai(y + h) - 2 * airy_ai(y) + airy_ai(y - h)) / (h * h);
    CHECK(std::abs(d2 - y * airy_ai(y)) < 1e-6);
    CHECK(std::abs(airy_deriv(2, y) - y * airy_ai(y)) < 1e-12);
  }
}

TEST_CASE("phi_eval") {
  CHECK(phi_eval(AiryFamily(4, KernelMode::real), 0.0) == doctest::Approx(std::pow(4.0, -0.75) * std::tgamma(0.25)).epsilon(1e-10));
  CHECK(phi_eval(AiryFamily(3, KernelMode::contour), 0.0) == doctest::Approx(0.3550280539).epsilon(1e-10));
  CHECK_THROWS_AS(phi_eval(AiryFamily(4, KernelMode::contour), 0.0), DomainError);
  // real kernel: phi'' = y phi + 1 at p = 3
  AiryFamily r3(3, KernelMode::real);
  double y = -0.7, h = 1e-3;
  double d2 = (phi_eval(r3, y + h) - 2 * phi_eval(r3, y) + phi_eval(r3, y - h)) / (h * h);
  CHECK(d2 == doctest::Approx(y * phi_eval(r3, y) + 1).epsilon(1e-5));
}

TEST_CASE("reflection consistency of the p=3 boundary product") {
  AiryFamily fam(3, KernelMode::contour);
  ExactScalar prod = phi_deriv_zero(fam, 0) * phi_deriv_zero(fam, 1);
  CHECK(prod == ExactScalar(make_q(-1, 6)) * ExactScalar::sqrt(Q(3)) / ExactScalar::pi());
}

TEST_CASE("families below p=3 are rejected") { CHECK_THROWS_AS(AiryFamily(2, KernelMode::real), DomainError); }
