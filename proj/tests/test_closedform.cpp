#include <doctest.h>

#include <cmath>

#include "ergo/closedform.hpp"
#include "ergo/errors.hpp"
#include "ergo/quad.hpp"
#include "ergo/rng.hpp"

using namespace ergo;
namespace cf = ergo::closedform;

// Expected values below were frozen from a 40-digit evaluation of the same
// formulas (and, where marked, from an independent quadrature/grid oracle).
TEST_SUITE("closedform") {

TEST_CASE("driftless piecewise-linear boundaries") {
  const auto sym = cf::bm_piecewise_nodrift(1.0, 1.0, 1.0);
  CHECK(sym.a_star == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sym.b_star == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sym.lambda_star == doctest::Approx(1.0).epsilon(1e-14));

  const auto asym = cf::bm_piecewise_nodrift(0.5, 1.0, 1.0);
  CHECK(asym.a_star == doctest::Approx(-1.6329931618554521).epsilon(1e-14));
  CHECK(asym.b_star == doctest::Approx(0.8164965809277260).epsilon(1e-14));
  CHECK(asym.lambda_star == doctest::Approx(0.8164965809277260).epsilon(1e-14));

  // b*/a* = -k1/k2 for random parameters
  SplitMix64 rng(33);
  for (int i = 0; i < 25; ++i) {
    const double k1 = 0.2 + 2.0 * rng.uniform();
    const double k2 = 0.2 + 2.0 * rng.uniform();
    const double s = 0.3 + 1.5 * rng.uniform();
    const auto sol = cf::bm_piecewise_nodrift(k1, k2, s);
    CHECK(sol.b_star / sol.a_star == doctest::Approx(-k1 / k2).epsilon(1e-12));
  }
}

TEST_CASE("symmetric drifted boundaries and the driftless limit") {
  const auto [a, b] = cf::bm_symmetric_drift(0.1, 1.0, 1.0);
  CHECK(a == doctest::Approx(-1.1033366428298453).epsilon(1e-13));
  CHECK(b == doctest::Approx(0.9033366428298453).epsilon(1e-13));

  // mu -> 0+ limit: a* -> -sigma/sqrt(k)
  const auto [a0, b0] = cf::bm_symmetric_drift(1e-7, 1.3, 0.7);
  CHECK(a0 == doctest::Approx(-1.3 / std::sqrt(0.7)).epsilon(1e-5));
  CHECK(b0 == doctest::Approx(1.3 / std::sqrt(0.7)).epsilon(1e-5));
}

TEST_CASE("closed-form g of the drifted piecewise-linear model") {
  // g(ahat) = (s^2 k1 / 2 mu^2)(1 - e^{-4 mu^2/(s^2 k1)}) at ahat = -2mu/k1
  const double g_ahat = cf::bm_piecewise_gfun(0.1, 1.0, 0.5, 1.0, -2.0 * 0.1 / 0.5);
  CHECK(g_ahat == doctest::Approx(1.9220913403341054).epsilon(1e-13));
  CHECK(g_ahat > 0.0);
  CHECK(cf::bm_piecewise_gfun(0.1, 1.0, 0.5, 1.0, -50.0) < 0.0);
  // root and companion boundary, frozen from the oracle
  CHECK(cf::bm_piecewise_gfun(0.1, 1.0, 0.5, 1.0, -1.8195138820288037) ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("kappa* of the symmetric linear-drift model") {
  CHECK(cf::symmetric_kappa(0.05) == doctest::Approx(0.9720443544312385).epsilon(1e-9));
  CHECK(cf::symmetric_kappa(0.5) == doctest::Approx(0.7945067510694635).epsilon(1e-9));
  CHECK(cf::symmetric_kappa(1.0) == doctest::Approx(0.6789852502043862).epsilon(1e-9));
}

TEST_CASE("exponential cost: boundary exists iff sigma < sqrt(2)") {
  const auto b1 = cf::exp_cost_boundary(1.0);
  REQUIRE(b1.has_value());
  CHECK(*b1 == doctest::Approx(1.6783469900166607).epsilon(1e-9));
  CHECK(cf::exp_cost_h(1.0, *b1) == doctest::Approx(0.0).epsilon(1e-9));

  CHECK(!cf::exp_cost_boundary(1.5).has_value());
  CHECK(!cf::exp_cost_boundary(std::sqrt(2.0)).has_value());

  // h(b) -> 1/2 - 1/sigma^2 as b -> inf, negative exactly when sigma < sqrt(2)
  CHECK(cf::exp_cost_h(1.0, 500.0) == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(cf::exp_cost_h(1.5, 500.0) == doctest::Approx(0.5 - 1.0 / 2.25).epsilon(1e-12));
}

TEST_CASE("alternating drift boundary vs a brute-force cost scan") {
  const ScalarFn c{[](double x) { return std::fabs(x); }, {0.0}, "|x|"};
  const double y = cf::alternating_drift_boundary(0.1, 1.0, 1.0, c);
  CHECK(y == doctest::Approx(0.9677485357586481).epsilon(1e-9));

  // oracle: assemble C(-y, y) for the sgn-drift model from its piecewise
  // exponential scale/speed densities and scan a grid of step 1e-4
  auto Sp = [](double x) { return std::exp(-0.2 * std::fabs(x)); };
  auto mp = [&](double x) { return 2.0 / Sp(x); };
  auto C = [&](double yy) {
    const double num =
        integrate([&](double t) { return std::fabs(t) * mp(t); }, -yy, yy, 1e-12,
                  std::vector<double>{0.0})
            .value +
        2.0 / Sp(yy);
    return num / integrate(mp, -yy, yy, 1e-12, std::vector<double>{0.0}).value;
  };
  double best_y = 0.5, best_val = C(0.5);
  for (double yy = 0.5; yy <= 1.5; yy += 1e-4) {
    const double v = C(yy);
    if (v < best_val) {
      best_val = v;
      best_y = yy;
    }
  }
  CHECK(y == doctest::Approx(best_y).epsilon(2e-4));
  CHECK(C(y) <= best_val + 1e-10);

  // mu -> 0: approaches the driftless even-cost boundary (q - b^2 = 0 -> b=1)
  CHECK(cf::alternating_drift_boundary(1e-6, 1.0, 1.0, c) ==
        doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("alternating drift with a smooth even cost") {
  const ScalarFn c{[](double x) { return x * x; }, {}, "x^2"};
  const double y = cf::alternating_drift_boundary(0.1, 1.0, 1.0, c);
  // same brute-force oracle, quadratic cost
  auto Sp = [](double x) { return std::exp(-0.2 * std::fabs(x)); };
  auto mp = [&](double x) { return 2.0 / Sp(x); };
  auto C = [&](double yy) {
    const double num =
        integrate([&](double t) { return t * t * mp(t); }, -yy, yy, 1e-12,
                  std::vector<double>{0.0})
            .value +
        2.0 / Sp(yy);
    return num / integrate(mp, -yy, yy, 1e-12, std::vector<double>{0.0}).value;
  };
  double best_y = 0.6, best_val = C(0.6);
  for (double yy = 0.6; yy <= 1.6; yy += 1e-4) {
    const double v = C(yy);
    if (v < best_val) {
      best_val = v;
      best_y = yy;
    }
  }
  CHECK(y == doctest::Approx(best_y).epsilon(2e-4));
}

TEST_CASE("one-sided mean-reverting multiplier zeta*") {
  CHECK(cf::ou_one_sided_zeta(1.0, 0.1) ==
        doctest::Approx(0.5352347055779203).epsilon(1e-9));
  CHECK(cf::ou_one_sided_zeta(0.5, 0.1) ==
        doctest::Approx(0.6960379936529588).epsilon(1e-9));
  CHECK(cf::ou_one_sided_zeta(2.0, 0.1) ==
        doctest::Approx(0.4481142417704277).epsilon(1e-9));
  // decreasing in the reversion rate
  double prev = 1e9;
  for (double mu : {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0}) {
    const double z = cf::ou_one_sided_zeta(mu, 0.1);
    CHECK(z < prev);
    prev = z;
  }
  // q_d mu >= 1 leaves the right-hand side nonpositive: no root
  CHECK_THROWS_AS(cf::ou_one_sided_zeta(2.0, 0.6), BracketError);
}

TEST_CASE("mean-reverting closed forms match direct quadrature") {
  const double alpha = 0.1, beta = 0.1, sigma = 0.5, k1 = 0.5, k2 = 1.0;
  auto Sp = [&](double x) {
    return std::exp(-2.0 * alpha * x / (sigma * sigma) +
                    beta * x * x / (sigma * sigma));
  };
  auto mp = [&](double x) { return 2.0 / (sigma * sigma * Sp(x)); };
  const double m_quad = integrate(mp, -1.0, 1.0, 1e-12).value;
  CHECK(cf::ou_speed_measure(alpha, beta, sigma, -1.0, 1.0) ==
        doctest::Approx(m_quad).epsilon(1e-10));
  const double cm_quad =
      integrate([&](double t) { return std::max(-k1 * t, k2 * t) * mp(t); }, -1.0,
                1.0, 1e-12, std::vector<double>{0.0})
          .value;
  CHECK(cf::ou_cost_speed_integral(alpha, beta, sigma, k1, k2, -1.0, 1.0) ==
        doctest::Approx(cm_quad).epsilon(1e-10));
  // frozen oracle values
  CHECK(cf::ou_speed_measure(alpha, beta, sigma, -1.0, 1.0) ==
        doctest::Approx(15.491851660682202).epsilon(1e-12));
  CHECK(cf::ou_cost_speed_integral(alpha, beta, sigma, k1, k2, -1.0, 1.0) ==
        doctest::Approx(6.6059745443180135).epsilon(1e-12));
}

TEST_CASE("mean-reverting two-boundary reference") {
  const auto [a, b] = cf::ou_two_boundary_reference(0.1, 0.1, 0.5, 0.5, 1.0);
  CHECK(a == doctest::Approx(-1.2072403041893744).epsilon(1e-9));
  CHECK(b == doctest::Approx(0.3143290240841664).epsilon(1e-9));

  // higher volatility expands the continuation region
  const auto [a2, b2] = cf::ou_two_boundary_reference(0.1, 0.1, 0.75, 0.5, 1.0);
  CHECK(a2 == doctest::Approx(-1.6726725673073564).epsilon(1e-9));
  CHECK(b2 == doctest::Approx(0.5211878076921584).epsilon(1e-9));
  CHECK(a2 < a);
  CHECK(b2 > b);

  // a higher downward marginal cost k2 lowers both boundaries
  double prev_a = 1e9, prev_b = 1e9;
  for (double k2 : {0.6, 1.0, 2.0}) {
    const auto [ak, bk] = cf::ou_two_boundary_reference(0.1, 0.1, 0.5, 0.5, k2);
    CHECK(ak < prev_a);
    CHECK(bk < prev_b);
    prev_a = ak;
    prev_b = bk;
  }

  CHECK_THROWS_AS(cf::ou_two_boundary_reference(0.1, 0.6, 0.5, 0.5, 1.0),
                  InputError);
}

}  // TEST_SUITE
