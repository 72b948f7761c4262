#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specd/specd.hpp"
#include "test_support.hpp"

using namespace specd;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double sqrt2_minus_1 = 0.41421356237309504880;
}

TEST_CASE("a_formula reference values", "[specular]") {
  CHECK_THAT(a_formula(1.0, 0.0), WithinAbs(sqrt2_minus_1, 1e-15));
  CHECK_THAT(a_formula(2.0, 2.0), WithinAbs(2.0, 1e-15));
  // (1 + sqrt(10)) / 3, cross-checked against the textbook expression in
  // extended precision
  const double expected_21 = 1.3874258867227931;
  CHECK_THAT(a_formula(2.0, 1.0), WithinAbs(expected_21, 1e-14));
  CHECK_THAT(double(testsup::a_formula_textbook(2.0L, 1.0L)), WithinAbs(expected_21, 1e-14));
  CHECK_THAT(a_formula(-1.0, -3.0), WithinAbs(-1.6180339887498949, 1e-14));
  CHECK_THAT(a_formula(0.5, -1.0), WithinAbs(-0.16227766016837933, 1e-14));
}

TEST_CASE("a_formula rejects exact cancellation", "[specular]") {
  CHECK_THROWS_AS(a_formula(1.0, -1.0), degenerate_sum);
  CHECK_THROWS_AS(a_formula(0.0, 0.0), degenerate_sum);
}

TEST_CASE("a_formula agrees with the textbook expression on random pairs", "[specular]") {
  splitmix64 g(11);
  for (int i = 0; i < 20000; ++i) {
    const double alpha = testsup::heavy_tailed(g);
    const double beta = testsup::heavy_tailed(g);
    if (std::abs(alpha + beta) < 1e-9) continue;
    const double mine = a_formula(alpha, beta);
    const double oracle = double(testsup::a_formula_textbook(alpha, beta));
    const double scale = std::max({1.0, std::abs(mine), std::abs(oracle)});
    CHECK(std::abs(mine - oracle) <= 1e-9 * scale);
  }
}

TEST_CASE("a_formula is symmetric and antisymmetric under negation", "[specular]") {
  splitmix64 g(12);
  for (int i = 0; i < 20000; ++i) {
    const double alpha = testsup::heavy_tailed(g);
    const double beta = testsup::heavy_tailed(g);
    if (std::abs(alpha + beta) < 1e-9) continue;
    const double a = a_formula(alpha, beta);
    CHECK(a_formula(beta, alpha) == a);  // exact: the evaluation commutes
    const double neg = a_formula(-beta, -alpha);
    CHECK(std::abs(neg + a) <= 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("a_formula stays between ordered one-sided values", "[specular]") {
  splitmix64 g(13);
  for (int i = 0; i < 20000; ++i) {
    double alpha = testsup::heavy_tailed(g);
    double beta = testsup::heavy_tailed(g);
    if (beta > alpha) std::swap(alpha, beta);
    if (std::abs(alpha + beta) < 1e-9) continue;
    const double a = a_formula(alpha, beta);
    const double tol = 1e-12 * std::max({1.0, std::abs(alpha), std::abs(beta)});
    CHECK(a >= beta - tol);
    CHECK(a <= alpha + tol);
  }
}

TEST_CASE("specular_from_pair branches", "[specular]") {
  CHECK(specular_from_pair<double>({1.0, -1.0}) == 0.0);
  CHECK(specular_from_pair<double>({0.0, 0.0}) == 0.0);
  CHECK_THAT(specular_from_pair<double>({1.0, 0.0}), WithinAbs(sqrt2_minus_1, 1e-15));
  // near-cancellation relative to the pair scale also lands on zero
  CHECK(specular_from_pair<double>({1e6, -1e6 + 1e-8}) == 0.0);
}

TEST_CASE("specular derivative collapses to the classical one", "[specular]") {
  splitmix64 g(14);
  for (int i = 0; i < 20000; ++i) {
    const double d = testsup::heavy_tailed(g);
    const double spd = specular_from_pair<double>({d, d});
    CHECK(std::abs(spd - d) <= 1e-12 * std::max(1.0, std::abs(d)));
    CHECK(symmetric_from_pair<double>({d, d}) == d);
  }
}

TEST_CASE("symmetric_from_pair", "[specular]") {
  CHECK(symmetric_from_pair<double>({1.0, -1.0}) == 0.0);
  CHECK(symmetric_from_pair<double>({1.0, 0.0}) == 0.5);
  CHECK(symmetric_from_pair<double>({3.0, 3.0}) == 3.0);
}

TEST_CASE("specular_sign matches the evaluated sign exactly", "[specular]") {
  CHECK(specular_sign<double>({1.0, 0.0}) == 1);
  CHECK(specular_sign<double>({1.0, -1.0}) == 0);
  CHECK(specular_sign<double>({-1.0, -3.0}) == -1);

  splitmix64 g(15);
  for (long i = 0; i < 100000; ++i) {
    double right = testsup::heavy_tailed(g);
    double left = testsup::heavy_tailed(g);
    if (i % 16 == 15) left = right;
    if (i % 8 == 7) left = -right;
    const one_sided_pair<double> p{right, left};
    const double v = specular_from_pair(p);
    const int sv = v > 0 ? 1 : v < 0 ? -1 : 0;
    REQUIRE(specular_sign(p) == sv);
  }
}

TEST_CASE("twice the specular derivative is bounded by the pair sum", "[specular]") {
  splitmix64 g(16);
  for (long i = 0; i < 100000; ++i) {
    const one_sided_pair<double> p{testsup::heavy_tailed(g), testsup::heavy_tailed(g)};
    CHECK(2.0 * std::abs(specular_from_pair(p)) <= std::abs(p.right + p.left) + 1e-12);
  }
}

TEST_CASE("one_sided_fd on linear pieces", "[derivatives]") {
  const auto f = testsup::make_abs();
  const auto right_at_1 = one_sided_fd(f, 1.0, 1e-6, fd_side::right);
  CHECK_THAT(right_at_1.value, WithinAbs(1.0, 1e-9));
  CHECK(right_at_1.method == deriv_method::finite_difference);
  CHECK(right_at_1.mesh == 1e-6);

  // the quotient is exact at the kink: |h| and |-h| evaluate exactly
  CHECK(one_sided_fd(f, 0.0, 1e-6, fd_side::left).value == -1.0);
  CHECK(one_sided_fd(f, 0.0, 1e-6, fd_side::right).value == 1.0);
}

TEST_CASE("one_sided_fd forward quotient on the square", "[derivatives]") {
  const auto f = builtin_power_p(2.0);  // x^2 / 2, derivative x
  const double h = 1e-6;
  const auto est = one_sided_fd(f, 1.0, h, fd_side::right);
  // algebra of the forward quotient: ((1+h)^2 - 1)/(2h) = 1 + h/2
  CHECK_THAT(est.value, WithinAbs(1.0 + h / 2.0, 1e-9));
  CHECK_THAT(est.value, WithinAbs(1.0, 2e-6));
}

TEST_CASE("one_sided_fd shrinks the mesh near the boundary", "[derivatives]") {
  specd::objective f;
  f.name = "unit_ramp";
  f.domain = {0.0, 1.0};
  f.value = [](double x) { return 2.0 * x; };

  const double x = 1.0 - 1e-7;  // x + 1e-6 would leave (0, 1)
  const auto est = one_sided_fd(f, x, 1e-6, fd_side::right);
  CHECK(est.mesh < 1e-6);
  CHECK_THAT(est.value, WithinAbs(2.0, 1e-6));

  // no interior probe above the mesh floor remains
  CHECK_THROWS_AS(one_sided_fd(f, 1.0 - 1e-13, 1e-6, fd_side::right), out_of_domain);
  // and a point outside the domain is rejected outright
  CHECK_THROWS_AS(one_sided_fd(f, 1.5, 1e-6, fd_side::right), out_of_domain);
  CHECK_THROWS_AS(one_sided_fd(f, 0.5, 0.0, fd_side::right), bad_parameter);
}

TEST_CASE("pair_at dispatches between analytic and differences", "[derivatives]") {
  const auto kink = builtin_kink_counterexample();
  const auto analytic = pair_at(kink, 0.0, 1e-6, deriv_method::analytic);
  CHECK(analytic.right == 1.0);
  CHECK(analytic.left == 0.0);

  const auto fd = pair_at(kink, 0.0, 1e-6, deriv_method::finite_difference);
  CHECK(fd.right == 1.0);  // linear branch, exact quotient
  CHECK_THAT(fd.left, WithinAbs(0.0, 2e-6));
  CHECK_THAT(specular_from_pair(fd), WithinAbs(sqrt2_minus_1, 1e-4));

  const auto huber = builtin_huber(0.5);
  const auto flat = pair_at(huber, 1.5, 1e-6, deriv_method::analytic);
  CHECK(flat.right == 0.5);
  CHECK(flat.left == 0.5);

  // objectives without an analytic pair silently use differences
  specd::objective plain;
  plain.name = "plain_square";
  plain.domain = {-1.0, 1.0};
  plain.value = [](double x) { return x * x; };
  const auto p = pair_at(plain, 0.25, 1e-8);
  CHECK_THAT(p.right, WithinAbs(0.5, 1e-6));
  CHECK_THAT(p.left, WithinAbs(0.5, 1e-6));
}

TEST_CASE("finite differences track analytic pairs away from singular points",
          "[derivatives]") {
  const double h = 1e-6;
  const double bound = 10.0 * h;
  struct target {
    specd::objective f;
    std::vector<double> singular;  // kinks and curvature blowups
    double radius;                 // exclusion radius around them
  };
  std::vector<target> targets;
  {
    target t{builtin_sum_abs(), {}, 2.0 * h};
    for (int i = -99; i < 100; ++i) t.singular.push_back(i / 100.0);
    targets.push_back(t);
  }
  // the power pieces have unbounded curvature at 0; within about 0.01 of it
  // the first-order error of a one-sided difference exceeds any fixed C*h
  targets.push_back({builtin_piecewise_power(), {0.0, 0.5}, 0.01});
  targets.push_back({builtin_huber(0.5), {-0.5, 0.5}, 2.0 * h});
  targets.push_back({builtin_power_p(1.3), {0.0}, 0.01});
  targets.push_back({builtin_kink_counterexample(), {0.0}, 2.0 * h});

  for (const auto& t : targets) {
    const auto g = eval_grid<double>::over(t.f, 151);
    for (const double x : g.points()) {
      // stay 2h away from kinks and from the domain boundary, where the
      // probe mesh shrinks and the quotient is dominated by rounding
      bool excluded = x - t.f.domain.lo < 2.0 * h || t.f.domain.hi - x < 2.0 * h;
      for (const double s : t.singular) {
        if (std::abs(x - s) < t.radius) excluded = true;
      }
      if (excluded) continue;
      const auto exact = pair_at(t.f, x, h, deriv_method::analytic);
      const auto fd = pair_at(t.f, x, h, deriv_method::finite_difference);
      INFO(t.f.name << " at x=" << x);
      CHECK(std::abs(fd.right - exact.right) <= bound);
      CHECK(std::abs(fd.left - exact.left) <= bound);
    }
  }
}

TEST_CASE("symmetric_derivative uses the central difference in fd mode", "[derivatives]") {
  const auto f = builtin_huber(0.5);
  const double h = 1e-6;
  const double x = 0.25;
  const double central = (f(x + h) - f(x - h)) / (2.0 * h);
  CHECK(symmetric_derivative(f, x, h, deriv_method::finite_difference) == central);
  CHECK(symmetric_derivative(f, x, h, deriv_method::analytic) == x);
}
