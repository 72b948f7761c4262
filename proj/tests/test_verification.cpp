#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "specd/specd.hpp"
#include "test_support.hpp"

using namespace specd;
using Catch::Matchers::WithinAbs;

TEST_CASE("a_formula bounds hold over the full sample budget", "[verify]") {
  const auto rep = check_a_bounds<double>(100000, 42);
  CHECK(rep.passed);
  CHECK(rep.samples == 100000);
  CHECK(rep.worst_violation <= 1e-12);
}

TEST_CASE("sign and magnitude identities over random pairs", "[verify]") {
  CHECK(check_sign_identity<double>(100000, 43).passed);
  const auto mag = check_magnitude_identity<double>(100000, 44);
  CHECK(mag.passed);
  CHECK(mag.worst_violation <= 1e-12);
}

TEST_CASE("supporting lines hold for every builtin and fail for the cubic", "[verify]") {
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin(name);
    const auto rep = check_subgradient_inequality(f, eval_grid<double>::over(f, 201));
    INFO(name);
    CHECK(rep.passed);
    CHECK(rep.samples == 201L * 201L);
  }
  const auto cubic = testsup::make_cubic();
  const auto rep = check_subgradient_inequality(cubic, eval_grid<double>::over(cubic, 201));
  CHECK(!rep.passed);
  CHECK(rep.worst_violation > 1.0);
}

TEST_CASE("the counterexample's supporting line at the origin", "[verify]") {
  // f(x) >= (sqrt(2) - 1) x for all x: the line through (0, 0) with the
  // specular slope supports the graph
  const auto f = builtin_kink_counterexample();
  const double slope = specular_from_pair(f.one_sided(0.0));
  const auto g = eval_grid<double>::over(f, 401);
  for (const double x : g.points()) {
    CHECK(f(x) >= slope * x - 1e-9);
  }
}

TEST_CASE("specular derivative is nondecreasing on a grid for convex objectives",
          "[verify]") {
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin(name);
    const auto rep = check_specular_monotone(f, eval_grid<double>::over(f, 201));
    INFO(name);
    CHECK(rep.passed);
    CHECK(rep.worst_violation <= 1e-12);
  }
  CHECK(check_specular_monotone(testsup::make_abs(), eval_grid<double>{-1.0, 1.0, 101}).passed);
}

TEST_CASE("sign runs imply strict monotonicity or constancy", "[verify]") {
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin(name);
    INFO(name);
    CHECK(check_sign_monotonicity(f, eval_grid<double>::over(f, 201)).passed);
  }
  // a flat function is one long zero run
  const auto flat = testsup::make_constant(1.0);
  CHECK(check_sign_monotonicity(flat, eval_grid<double>{-0.9, 0.9, 51}).passed);
  // |x| on a symmetric grid: a negative run, possibly a zero point, a
  // positive run
  CHECK(check_sign_monotonicity(testsup::make_abs(), eval_grid<double>{-1.5, 1.5, 101}).passed);
}

TEST_CASE("alignment with the nearest minimizer", "[verify]") {
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin(name);
    INFO(name);
    CHECK(check_alignment(f, eval_grid<double>::over(f, 201)).passed);
  }
  // equality case at the minimizer itself
  const auto f = builtin_kink_counterexample();
  const double sd = specular_from_pair(f.one_sided(0.0));
  CHECK(sd * (0.0 - 0.0) == 0.0);
  auto no_min = testsup::make_abs();
  no_min.minimizers.clear();
  CHECK_THROWS_AS(check_alignment(no_min, eval_grid<double>{-1.0, 1.0, 11}), bad_parameter);
}

TEST_CASE("envelope check on an isgm trace", "[verify]") {
  run_config<double> cfg;
  cfg.x0 = 0.995;
  cfg.max_iters = 30;
  cfg.eta = 1e-30;
  cfg.derivatives = deriv_method::analytic;
  const auto tr = isgm_run(testsup::make_abs(-1.0, 1.0), cfg);
  const auto rep = check_envelope(tr, 0.0);
  CHECK(rep.passed);
  CHECK(rep.witness.empty());
  // the fitted rate constant is small as well
  const auto rate = check_rlinear(tr, 0.0);
  CHECK(rate.passed);
  REQUIRE(rate.witness.size() == 1);
  CHECK(rate.witness[0] <= 2.0);
}

TEST_CASE("sgm overshoot is logged as a witness without failing", "[verify]") {
  // wide domain so nothing clamps: from x0 = 1 with t0 = 4 the first step
  // lands at -3, past the minimizer but within the shifted envelope
  auto f = testsup::make_abs(-5.0, 5.0);
  run_config<double> cfg;
  cfg.x0 = 1.0;
  cfg.schedule = step_schedule<double>::shor_halving(4.0);
  cfg.max_iters = 6;
  cfg.derivatives = deriv_method::analytic;
  const auto tr = sgm_run(f, cfg);
  REQUIRE(tr.records.size() >= 2);
  CHECK(tr.records[1].x == -3.0);

  const auto rep = check_envelope(tr, 0.0);
  CHECK(rep.passed);  // |x_1| = 3 <= t_0 = 4
  REQUIRE(rep.witness.size() >= 3);
  CHECK(rep.witness[0] == 1.0);  // overshoot at k = 1: 3 > t_1 = 2
  CHECK(rep.witness[1] == 3.0);
  CHECK(rep.witness[2] == 2.0);
}

TEST_CASE("envelope check applies to halving traces only", "[verify]") {
  run_config<double> cfg;
  cfg.x0 = 1.0;
  cfg.schedule = step_schedule<double>::constant_step(0.005);
  cfg.derivatives = deriv_method::analytic;
  const auto tr = sm_run(testsup::make_abs(), cfg);
  CHECK_THROWS_AS(check_envelope(tr, 0.0), bad_trace);

  auto sg = cfg;
  const auto tr2 = sgm_run(testsup::make_abs(), sg);
  CHECK_THROWS_AS(check_envelope(tr2, 0.0), bad_trace);  // constant schedule
}

TEST_CASE("single-record traces pass the envelope vacuously", "[verify]") {
  run_config<double> cfg;
  cfg.x0 = 0.0;
  cfg.derivatives = deriv_method::analytic;
  const auto tr = isgm_run(testsup::make_abs(-1.0, 1.0), cfg);
  REQUIRE(tr.records.size() == 1);
  CHECK(check_envelope(tr, 0.0).passed);
  const auto rate = check_rlinear(tr, 0.0);
  CHECK(rate.passed);
  CHECK(rate.witness[0] == 0.0);  // already at the minimizer
}

TEST_CASE("constant-step traces fail the geometric fit", "[verify]") {
  run_config<double> cfg;
  cfg.x0 = 1.0;
  cfg.schedule = step_schedule<double>::constant_step(0.005);
  cfg.max_iters = 40;
  cfg.derivatives = deriv_method::analytic;
  const auto tr = sm_run(testsup::make_abs(), cfg);
  REQUIRE(tr.records.size() == 41);
  const auto rep = check_rlinear(tr, 0.0);
  CHECK(!rep.passed);  // error decays linearly, no c <= 4(b-a) fits
  CHECK(rep.witness[0] > 4.0 * tr.domain.width());
}

TEST_CASE("quasi mean value witnesses", "[verify]") {
  // |x| over [-1, 0.5]: chord slope -1/3; any negative point is a witness
  // below, any positive point a witness above
  const auto f = testsup::make_abs();
  const auto rep = quasi_mvt_witness(f, -1.0, 0.5, 101, deriv_method::analytic);
  CHECK(rep.passed);
  REQUIRE(rep.witness.size() == 2);
  CHECK(rep.witness[0] > 0.0);  // specular derivative +1 >= -1/3
  CHECK(rep.witness[1] < 0.0);  // specular derivative -1 <= -1/3

  // differentiable case: the classical mean value point witnesses both sides
  const auto sq = builtin_power_p(2.0);
  CHECK(quasi_mvt_witness(sq, -1.0, 2.0, 1001, deriv_method::analytic).passed);

  // the counterexample over [-1, 1]: slope 0, bracketed by 2x < 0 and 1 > 0
  const auto kink = builtin_kink_counterexample();
  CHECK(quasi_mvt_witness(kink, -1.0, 1.0, 101, deriv_method::analytic).passed);

  CHECK_THROWS_AS(quasi_mvt_witness(f, -1.0, 0.5, 2, deriv_method::analytic), bad_parameter);
  CHECK_THROWS_AS(quasi_mvt_witness(f, -3.0, 0.5, 11, deriv_method::analytic), out_of_domain);
}

TEST_CASE("specular, symmetric, and classical derivatives coincide on smooth objectives",
          "[verify]") {
  // huber everywhere and power_p away from 0 are differentiable, so all
  // three derivative notions must agree
  struct probe {
    objective f;
    std::vector<double> points;
    std::function<double(double)> classical;
  };
  std::vector<probe> probes;
  probes.push_back({builtin_huber(0.5),
                    {-1.9, -0.5, -0.1, 0.0, 0.3, 0.5, 1.2},
                    [](double x) { return std::abs(x) <= 0.5 ? x : (x > 0 ? 0.5 : -0.5); }});
  probes.push_back({builtin_power_p(1.3),
                    {-2.5, -1.0, -0.2, 0.2, 1.0, 2.5},
                    [](double x) {
                      return (x > 0 ? 1.0 : -1.0) * std::pow(std::abs(x), 0.3);
                    }});
  for (const auto& p : probes) {
    for (const double x : p.points) {
      INFO(p.f.name << " at x=" << x);
      const auto exact = pair_at(p.f, x, 1e-6, deriv_method::analytic);
      CHECK(std::abs(specular_from_pair(exact) - p.classical(x)) <= 1e-12);
      CHECK(std::abs(symmetric_from_pair(exact) - p.classical(x)) <= 1e-12);

      const auto fd = pair_at(p.f, x, 1e-6, deriv_method::finite_difference);
      CHECK(std::abs(specular_from_pair(fd) - p.classical(x)) <= 1e-4);
      CHECK(std::abs(symmetric_from_pair(fd) - p.classical(x)) <= 1e-4);
    }
  }
}

TEST_CASE("check report line format", "[verify]") {
  check_report<double> rep;
  rep.name = "demo_check";
  rep.passed = true;
  rep.worst_violation = 0.0;
  rep.samples = 5;
  CHECK(rep.line() == "CHECK demo_check PASS worst=0 samples=5");

  rep.passed = false;
  rep.worst_violation = 0.25;
  rep.witness = {1.5, -2.0};
  CHECK(rep.line() == "CHECK demo_check FAIL worst=0.25 samples=5 witness=1.5,-2");
}

TEST_CASE("full suite passes in analytic mode and is deterministic", "[verify]") {
  verify_options opt;
  opt.mode = deriv_method::analytic;
  opt.samples = 20000;
  opt.mvt_intervals = 5;
  opt.mvt_grid = 301;
  const auto reports = run_verification_suite<double>(opt);
  REQUIRE(!reports.empty());
  for (const auto& rep : reports) {
    INFO(rep.line());
    CHECK(rep.passed);
  }
  for (std::size_t i = 1; i < reports.size(); ++i) {
    CHECK(reports[i - 1].name < reports[i].name);  // sorted, no duplicates
  }
  const auto again = run_verification_suite<double>(opt);
  REQUIRE(again.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(again[i].line() == reports[i].line());
  }
}

TEST_CASE("full suite passes in finite-difference mode", "[verify]") {
  verify_options opt;
  opt.mode = deriv_method::finite_difference;
  opt.samples = 20000;
  opt.mvt_intervals = 5;
  opt.mvt_grid = 301;
  for (const auto& rep : run_verification_suite<double>(opt)) {
    INFO(rep.line());
    CHECK(rep.passed);
  }
}

TEST_CASE("planted nonconvex objective fails exactly one check", "[verify]") {
  verify_options opt;
  opt.mode = deriv_method::analytic;
  opt.samples = 5000;
  opt.mvt_intervals = 2;
  opt.mvt_grid = 101;
  opt.planted_nonconvex = true;
  int failed = 0;
  std::string failed_name;
  for (const auto& rep : run_verification_suite<double>(opt)) {
    if (!rep.passed) {
      ++failed;
      failed_name = rep.name;
    }
  }
  CHECK(failed == 1);
  CHECK(failed_name == "subgradient_inequality.planted_cubic");
}
