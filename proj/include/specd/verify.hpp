#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "specd/builtins.hpp"
#include "specd/derivatives.hpp"
#include "specd/error.hpp"
#include "specd/io.hpp"
#include "specd/objective.hpp"
#include "specd/optimize.hpp"
#include "specd/rng.hpp"
#include "specd/specular.hpp"

// Machine checks over grids, random samples, and solver traces. Each check
// is deterministic given its inputs (and seed), reports a nonnegative worst
// violation, and records witness points for the worst case or for logged
// anomalies. passed is always equivalent to worst_violation <= tolerance.

namespace specd {

template <std::floating_point Real>
struct check_report {
  std::string name;
  bool passed = true;
  Real worst_violation = 0;
  Real tolerance = 0;
  std::vector<Real> witness;
  long samples = 0;

  /// "CHECK <name> PASS|FAIL worst=<v> samples=<n> [witness=<p1,p2,...>]"
  std::string line() const {
    std::string out = "CHECK ";
    out += name;
    out += passed ? " PASS" : " FAIL";
    out += " worst=";
    out += format_real(worst_violation);
    out += " samples=";
    out += std::to_string(samples);
    if (!witness.empty()) {
      out += " witness=";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) out += ',';
        out += format_real(witness[i]);
      }
    }
    return out;
  }
};

/// Evenly spaced evaluation grid with both endpoints held strictly inside an
/// open domain.
template <std::floating_point Real>
struct eval_grid {
  Real lo;
  Real hi;
  int n = 201;

  static eval_grid over(const basic_objective<Real>& f, int n_points) {
    if (n_points < 2) throw bad_parameter("grid needs at least 2 points");
    if (!f.domain.bounded()) throw bad_parameter("grid needs a bounded domain");
    const Real mu = f.domain.inset();
    return {f.domain.lo + mu, f.domain.hi - mu, n_points};
  }

  Real point(int i) const {
    if (i == 0) return lo;
    if (i == n - 1) return hi;
    // affine blend: endpoint-exact, and exactly zero at the midpoint of a
    // symmetric grid
    return (lo * Real(n - 1 - i) + hi * Real(i)) / Real(n - 1);
  }

  std::vector<Real> points() const {
    std::vector<Real> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = point(i);
    return xs;
  }
};

namespace detail {

// Sign-symmetric heavy-tailed draw covering magnitudes 1e-6 .. 1e6.
template <std::floating_point Real>
Real heavy_tailed(splitmix64& g) {
  const Real mag = std::pow(Real(10), Real(g.uniform(-6.0, 6.0)));
  return (g.next() & 1u) ? mag : -mag;
}

// Pair with left <= right whose sum stays away from exact cancellation.
template <std::floating_point Real>
one_sided_pair<Real> random_ordered_pair(splitmix64& g) {
  for (;;) {
    Real a = heavy_tailed<Real>(g);
    Real b = heavy_tailed<Real>(g);
    if (a < b) std::swap(a, b);
    if (std::abs(a + b) >= Real(1e-9)) return {a, b};
  }
}

// Unordered independent pair.
template <std::floating_point Real>
one_sided_pair<Real> random_pair(splitmix64& g) {
  const Real a = heavy_tailed<Real>(g);
  const Real b = heavy_tailed<Real>(g);
  return {a, b};
}

// Every 8th draw is an exact cancellation and every 16th an exactly equal
// pair, so both branch edges of the sign logic are exercised.
template <std::floating_point Real>
one_sided_pair<Real> random_pair_with_edges(splitmix64& g, long i) {
  const auto p = random_pair<Real>(g);
  if (i % 16 == 15) return {p.right, p.right};
  if (i % 8 == 7) return {p.right, -p.right};
  return p;
}

template <std::floating_point Real>
Real grid_zero_tol(deriv_method mode) {
  return mode == deriv_method::analytic ? Real(1e-12) : Real(1e-4);
}

// Folds per-instance reports (same check over several traces or intervals)
// into one: worst case wins, witnesses of the worst case are kept, sample
// counts add up.
template <std::floating_point Real>
check_report<Real> fold_reports(std::string name, const std::vector<check_report<Real>>& parts) {
  check_report<Real> folded;
  folded.name = std::move(name);
  if (parts.empty()) return folded;
  folded.tolerance = parts.front().tolerance;
  std::size_t worst_at = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    folded.samples += parts[i].samples;
    folded.passed = folded.passed && parts[i].passed;
    if (parts[i].worst_violation > parts[worst_at].worst_violation) worst_at = i;
  }
  folded.worst_violation = parts[worst_at].worst_violation;
  folded.witness = parts[worst_at].witness;
  return folded;
}

}  // namespace detail

/// Samples ordered pairs (left <= right) with heavy-tailed magnitudes and
/// verifies that the closed form stays between them:
/// left - tol <= A(right, left) <= right + tol, relative to the pair scale.
template <std::floating_point Real = double>
check_report<Real> check_a_bounds(long samples, std::uint64_t seed) {
  check_report<Real> rep;
  rep.name = "a_formula_bounds";
  rep.tolerance = Real(1e-12);
  rep.samples = samples;
  splitmix64 g(seed);
  for (long i = 0; i < samples; ++i) {
    const auto p = detail::random_ordered_pair<Real>(g);
    const Real a = a_formula(p.right, p.left);
    const Real viol =
        std::max(p.left - a, a - p.right) / detail::pair_scale(p.right, p.left);
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.witness = {p.right, p.left};
    }
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// specular_sign must agree with the sign of the evaluated specular
/// derivative exactly, zero branch included. Violations are counted.
template <std::floating_point Real = double>
check_report<Real> check_sign_identity(long samples, std::uint64_t seed) {
  check_report<Real> rep;
  rep.name = "sign_identity";
  rep.samples = samples;
  splitmix64 g(seed);
  for (long i = 0; i < samples; ++i) {
    const auto p = detail::random_pair_with_edges<Real>(g, i);
    const Real v = specular_from_pair(p);
    const int sv = v > Real(0) ? 1 : v < Real(0) ? -1 : 0;
    if (specular_sign(p) != sv) {
      rep.worst_violation += Real(1);
      if (rep.witness.size() < 8) {
        rep.witness.push_back(p.right);
        rep.witness.push_back(p.left);
      }
    }
  }
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Twice the specular derivative never exceeds the magnitude of the
/// one-sided sum: 2|f^spd| <= |f'_+ + f'_-| + 1e-12.
template <std::floating_point Real = double>
check_report<Real> check_magnitude_identity(long samples, std::uint64_t seed) {
  check_report<Real> rep;
  rep.name = "magnitude_identity";
  rep.tolerance = Real(1e-12);
  rep.samples = samples;
  splitmix64 g(seed);
  for (long i = 0; i < samples; ++i) {
    const auto p = detail::random_pair<Real>(g);
    const Real viol = Real(2) * std::abs(specular_from_pair(p)) - std::abs(p.right + p.left);
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.witness = {p.right, p.left};
    }
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Supporting-line test over all ordered grid pairs:
/// f(x) >= f^spd(y) (x - y) + f(y). Fails on nonconvex objectives.
template <std::floating_point Real>
check_report<Real> check_subgradient_inequality(const basic_objective<Real>& f,
                                                const eval_grid<Real>& g,
                                                deriv_method mode = deriv_method::analytic,
                                                Real mesh = Real(1e-6)) {
  check_report<Real> rep;
  rep.name = "subgradient_inequality." + f.name;
  rep.tolerance = mode == deriv_method::analytic ? Real(1e-9) : Real(1e-4);
  const auto xs = g.points();
  const std::size_t n = xs.size();
  std::vector<Real> fv(n), sd(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(xs[i]);
    sd[i] = specular_from_pair(pair_at(f, xs[i], mesh, mode));
  }
  rep.samples = static_cast<long>(n) * static_cast<long>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const Real viol = sd[j] * (xs[i] - xs[j]) + fv[j] - fv[i];
      if (viol > rep.worst_violation) {
        rep.worst_violation = viol;
        rep.witness = {xs[i], xs[j]};
      }
    }
  }
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// The specular derivative of a convex function is nondecreasing along the
/// grid.
template <std::floating_point Real>
check_report<Real> check_specular_monotone(const basic_objective<Real>& f,
                                           const eval_grid<Real>& g,
                                           deriv_method mode = deriv_method::analytic,
                                           Real mesh = Real(1e-6)) {
  check_report<Real> rep;
  rep.name = "monotone_specular." + f.name;
  rep.tolerance = mode == deriv_method::analytic ? Real(1e-12) : Real(1e-4);
  const auto xs = g.points();
  rep.samples = static_cast<long>(xs.size());
  Real prev = specular_from_pair(pair_at(f, xs[0], mesh, mode));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Real cur = specular_from_pair(pair_at(f, xs[i], mesh, mode));
    const Real viol = prev - cur;
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.witness = {xs[i - 1], xs[i]};
    }
    prev = cur;
  }
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Splits the grid into maximal runs by the sign of the specular derivative
/// and verifies the implied behavior of f on each run: strictly increasing
/// where positive, strictly decreasing where negative, constant (within
/// 1e-9) where zero. The reported violation is the excess beyond each
/// run-local allowance, so the tolerance is zero.
template <std::floating_point Real>
check_report<Real> check_sign_monotonicity(const basic_objective<Real>& f,
                                           const eval_grid<Real>& g,
                                           deriv_method mode = deriv_method::analytic,
                                           Real mesh = Real(1e-6)) {
  check_report<Real> rep;
  rep.name = "sign_runs." + f.name;
  const Real zero_tol = detail::grid_zero_tol<Real>(mode);
  const auto xs = g.points();
  const std::size_t n = xs.size();
  rep.samples = static_cast<long>(n);
  std::vector<Real> fv(n);
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    fv[i] = f(xs[i]);
    const Real sd = specular_from_pair(pair_at(f, xs[i], mesh, mode));
    cls[i] = std::abs(sd) <= zero_tol ? 0 : (sd > Real(0) ? 1 : -1);
  }
  const Real slack = mode == deriv_method::analytic ? Real(1e-12) : Real(1e-4);
  auto note = [&](Real excess, Real a, Real b) {
    if (excess > rep.worst_violation) {
      rep.worst_violation = excess;
      rep.witness = {a, b};
    }
  };
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && cls[j + 1] == cls[i]) ++j;
    if (j > i) {
      if (cls[i] > 0) {
        for (std::size_t t = i; t < j; ++t) note(fv[t] - fv[t + 1] - slack, xs[t], xs[t + 1]);
        if (!(fv[j] > fv[i])) note(std::max(fv[i] - fv[j], zero_tol), xs[i], xs[j]);
      } else if (cls[i] < 0) {
        for (std::size_t t = i; t < j; ++t) note(fv[t + 1] - fv[t] - slack, xs[t], xs[t + 1]);
        if (!(fv[i] > fv[j])) note(std::max(fv[j] - fv[i], zero_tol), xs[i], xs[j]);
      } else {
        for (std::size_t t = i; t <= j; ++t)
          note(std::abs(fv[t] - fv[i]) - Real(1e-9), xs[i], xs[t]);
      }
    }
    i = j + 1;
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// The specular derivative points away from the nearest minimizer:
/// f^spd(x) (x - x*) >= 0 on the grid, strictly positive (>= 1e-12) at
/// points at least 1e-3 from the minimizer with a nonzero derivative.
/// Reported as excess beyond those allowances, tolerance zero.
template <std::floating_point Real>
check_report<Real> check_alignment(const basic_objective<Real>& f, const eval_grid<Real>& g,
                                   deriv_method mode = deriv_method::analytic,
                                   Real mesh = Real(1e-6)) {
  if (f.minimizers.empty()) throw bad_parameter(f.name + ": alignment needs a minimizer");
  check_report<Real> rep;
  rep.name = "alignment." + f.name;
  const Real zero_tol = detail::grid_zero_tol<Real>(mode);
  const auto xs = g.points();
  rep.samples = static_cast<long>(xs.size());
  for (const Real x : xs) {
    const Real sd = specular_from_pair(pair_at(f, x, mesh, mode));
    const Real xs_near = f.nearest_minimizer(x);
    const Real prod = sd * (x - xs_near);
    Real excess = -prod - Real(1e-12);
    if (std::abs(x - xs_near) >= Real(1e-3) && std::abs(sd) > zero_tol) {
      excess = std::max(excess, Real(1e-12) - prod);
    }
    if (excess > rep.worst_violation) {
      rep.worst_violation = excess;
      rep.witness = {x, xs_near};
    }
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Halving-envelope check on a trace produced with a halving radius (sgm
/// with the halving schedule, or isgm).
///
/// The guaranteed bound is the shifted envelope |x_k - x*| <= t_{k-1} for
/// k >= 1 (one-dimensional sign alignment plus the halving recursion); its
/// violation fails the check. For sgm traces the unshifted bound
/// |x_k - x*| <= t_k can additionally break when an iterate lands closer to
/// the minimizer than the next radius and the following step jumps past it;
/// such overshoots are logged in the witness as (k, error, t_k) triples
/// without failing the check.
template <std::floating_point Real>
check_report<Real> check_envelope(const run_trace<Real>& tr, Real x_star,
                                  Real tol = Real(1e-9)) {
  if (tr.records.empty()) throw bad_trace("check_envelope: empty trace");
  const bool from_isgm = tr.method == method_kind::isgm;
  const bool from_shor = tr.method == method_kind::sgm &&
                         tr.config.schedule.kind == schedule_kind::shor_halving;
  if (!from_isgm && !from_shor) {
    throw bad_trace("check_envelope: trace has no halving radius");
  }
  check_report<Real> rep;
  rep.name = "envelope." + tr.objective_name;
  rep.tolerance = tol;
  rep.samples = static_cast<long>(tr.records.size());
  std::vector<Real> overshoots;
  std::vector<Real> failures;
  for (std::size_t k = 0; k < tr.records.size(); ++k) {
    const Real e = std::abs(tr.records[k].x - x_star);
    // at k = 0 the isgm radius only bounds half the initial error
    const Real bound = k == 0 ? (from_isgm ? Real(2) * *tr.records[0].envelope
                                           : *tr.records[0].envelope)
                              : *tr.records[k - 1].envelope;
    const Real excess = e - bound;
    if (excess > rep.worst_violation) rep.worst_violation = excess;
    if (excess > tol) {
      failures.push_back(Real(k));
      failures.push_back(e);
      failures.push_back(bound);
    }
    if (from_shor && k >= 1 && e - *tr.records[k].envelope > tol) {
      overshoots.push_back(Real(k));
      overshoots.push_back(e);
      overshoots.push_back(*tr.records[k].envelope);
    }
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= tol;
  rep.witness = rep.passed ? overshoots : failures;
  return rep;
}

/// Fits the smallest c with |x_k - x*| <= c 2^{-k} over the trace and
/// requires c <= 4 (domain width); the fitted bound sequence halves exactly
/// by construction. Constant- or diminishing-step traces fail the fit on
/// kinked objectives, which is the intended contrast.
template <std::floating_point Real>
check_report<Real> check_rlinear(const run_trace<Real>& tr, Real x_star) {
  if (tr.records.empty()) throw bad_trace("check_rlinear: empty trace");
  check_report<Real> rep;
  rep.name = "rlinear." + tr.objective_name;
  rep.samples = static_cast<long>(tr.records.size());
  Real c = 0;
  for (const auto& r : tr.records) {
    c = std::max(c, std::ldexp(std::abs(r.x - x_star), r.k));
  }
  // the bound sequence c, c/2, c/4, ... has ratio exactly one half as long
  // as it stays in the normal range
  bool ratio_exact = true;
  Real tau = c;
  for (std::size_t k = 1; k < tr.records.size() && tau > Real(1e-300); ++k) {
    const Real next = tau / Real(2);
    if (next * Real(2) != tau) ratio_exact = false;
    tau = next;
  }
  const Real cap = Real(4) * tr.domain.width();
  rep.worst_violation = std::max(Real(0), c - cap) + (ratio_exact ? Real(0) : Real(1));
  rep.witness = {c};
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Searches an interior grid of (lo, hi) for points whose specular
/// derivative brackets the chord slope (f(hi) - f(lo)) / (hi - lo):
/// a witness above the slope and a witness below it, within 1e-6.
template <std::floating_point Real>
check_report<Real> quasi_mvt_witness(const basic_objective<Real>& f, Real lo, Real hi,
                                     int grid_n, deriv_method mode = deriv_method::analytic,
                                     Real mesh = Real(1e-6)) {
  if (grid_n < 3) throw bad_parameter("quasi_mvt_witness: grid_n must be at least 3");
  if (!(f.domain.lo < lo && lo < hi && hi < f.domain.hi)) {
    throw out_of_domain(f.name + ": interval outside the domain");
  }
  check_report<Real> rep;
  rep.name = "quasi_mvt." + f.name;
  rep.tolerance = Real(1e-6);
  const Real slope = (f(hi) - f(lo)) / (hi - lo);
  const eval_grid<Real> g{lo, hi, grid_n};
  Real best_above = -std::numeric_limits<Real>::infinity();
  Real best_below = std::numeric_limits<Real>::infinity();
  Real c_above = lo, c_below = lo;
  for (int i = 1; i + 1 < grid_n; ++i) {
    const Real x = g.point(i);
    const Real sd = specular_from_pair(pair_at(f, x, mesh, mode));
    if (sd > best_above) {
      best_above = sd;
      c_above = x;
    }
    if (sd < best_below) {
      best_below = sd;
      c_below = x;
    }
  }
  rep.samples = grid_n - 2;
  rep.worst_violation = std::max(Real(0), std::max(slope - best_above, best_below - slope));
  rep.passed = rep.worst_violation <= rep.tolerance;
  rep.witness = {c_above, c_below};
  return rep;
}

/// A convex function has at most one point where the one-sided derivatives
/// have strictly opposite signs; counts such grid points.
template <std::floating_point Real>
check_report<Real> check_kink_uniqueness(const basic_objective<Real>& f, const eval_grid<Real>& g,
                                         deriv_method mode = deriv_method::analytic,
                                         Real mesh = Real(1e-6)) {
  check_report<Real> rep;
  rep.name = "kink_uniqueness." + f.name;
  const auto xs = g.points();
  rep.samples = static_cast<long>(xs.size());
  long count = 0;
  for (const Real x : xs) {
    const auto p = pair_at(f, x, mesh, mode);
    if (p.right * p.left < Real(-1e-12)) {
      ++count;
      rep.witness.push_back(x);
    }
  }
  rep.worst_violation = Real(std::max(0L, count - 1));
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Midpoint convexity over all grid pairs:
/// f((u+v)/2) <= (f(u) + f(v))/2 + 1e-9.
template <std::floating_point Real>
check_report<Real> check_midpoint_convexity(const basic_objective<Real>& f,
                                            const eval_grid<Real>& g) {
  check_report<Real> rep;
  rep.name = "midpoint_convexity." + f.name;
  rep.tolerance = Real(1e-9);
  const auto xs = g.points();
  const std::size_t n = xs.size();
  std::vector<Real> fv(n);
  for (std::size_t i = 0; i < n; ++i) fv[i] = f(xs[i]);
  rep.samples = static_cast<long>(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Real viol = f((xs[i] + xs[j]) / Real(2)) - (fv[i] + fv[j]) / Real(2);
      if (viol > rep.worst_violation) {
        rep.worst_violation = viol;
        rep.witness = {xs[i], xs[j]};
      }
    }
  }
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

/// Every declared minimizer must match the best grid value up to 1e-9.
template <std::floating_point Real>
check_report<Real> check_minimizer_optimality(const basic_objective<Real>& f,
                                              const eval_grid<Real>& g) {
  if (f.minimizers.empty()) throw bad_parameter(f.name + ": no declared minimizer");
  check_report<Real> rep;
  rep.name = "minimizer_optimality." + f.name;
  rep.tolerance = Real(1e-9);
  const auto xs = g.points();
  rep.samples = static_cast<long>(xs.size());
  Real grid_min = std::numeric_limits<Real>::infinity();
  for (const Real x : xs) grid_min = std::min(grid_min, f(x));
  for (const Real m : f.minimizers) {
    const Real viol = f(m) - grid_min;
    if (viol > rep.worst_violation) {
      rep.worst_violation = viol;
      rep.witness = {m};
    }
  }
  rep.worst_violation = std::max(Real(0), rep.worst_violation);
  rep.passed = rep.worst_violation <= rep.tolerance;
  return rep;
}

struct verify_options {
  int grid_n = 201;
  std::uint64_t seed = 42;
  long samples = 100000;
  deriv_method mode = deriv_method::analytic;
  double mesh = 1e-6;
  int mvt_intervals = 20;
  int mvt_grid = 1001;
  int envelope_trials = 3;
  int envelope_iters = 30;
  bool planted_nonconvex = false;
};

namespace detail {

// Random subinterval of the domain, at least a thousandth of its width.
template <std::floating_point Real>
std::pair<Real, Real> random_subinterval(const basic_objective<Real>& f, splitmix64& g) {
  const Real mu = f.domain.inset();
  const Real lo = f.domain.lo + mu;
  const Real hi = f.domain.hi - mu;
  for (;;) {
    Real a = Real(g.uniform(double(lo), double(hi)));
    Real b = Real(g.uniform(double(lo), double(hi)));
    if (a > b) std::swap(a, b);
    if (b - a >= Real(1e-3) * f.domain.width()) return {a, b};
  }
}

template <std::floating_point Real>
basic_objective<Real> planted_cubic() {
  basic_objective<Real> f;
  f.name = "planted_cubic";
  f.domain = {Real(-1), Real(1)};
  f.value = [](Real x) { return x * x * x; };
  f.one_sided = [](Real x) {
    const Real d = Real(3) * x * x;
    return one_sided_pair<Real>{d, d};
  };
  f.convex = false;
  return f;
}

}  // namespace detail

/// Runs the full check suite over every builtin objective, plus the global
/// random-pair identities. Reports come back sorted by name. In
/// finite-difference mode the envelope tolerance is relaxed to 10x the mesh,
/// since sign resolution is lost within one mesh width of a minimizer.
template <std::floating_point Real = double>
std::vector<check_report<Real>> run_verification_suite(const verify_options& opt) {
  std::vector<check_report<Real>> out;
  const Real mesh = Real(opt.mesh);
  out.push_back(check_a_bounds<Real>(opt.samples, opt.seed));
  out.push_back(check_sign_identity<Real>(opt.samples, opt.seed + 1));
  out.push_back(check_magnitude_identity<Real>(opt.samples, opt.seed + 2));

  int obj_index = 0;
  for (const auto& name : builtin_names()) {
    const auto f = make_builtin<Real>(name);
    const auto g = eval_grid<Real>::over(f, opt.grid_n);
    out.push_back(check_subgradient_inequality(f, g, opt.mode, mesh));
    out.push_back(check_specular_monotone(f, g, opt.mode, mesh));
    out.push_back(check_sign_monotonicity(f, g, opt.mode, mesh));
    out.push_back(check_alignment(f, g, opt.mode, mesh));
    out.push_back(check_kink_uniqueness(f, g, opt.mode, mesh));
    out.push_back(check_midpoint_convexity(f, g));
    out.push_back(check_minimizer_optimality(f, g));

    {
      splitmix64 g_mvt(opt.seed + 1000 + static_cast<std::uint64_t>(obj_index));
      std::vector<check_report<Real>> parts;
      for (int i = 0; i < opt.mvt_intervals; ++i) {
        const auto [lo, hi] = detail::random_subinterval(f, g_mvt);
        parts.push_back(quasi_mvt_witness(f, lo, hi, opt.mvt_grid, opt.mode, mesh));
      }
      out.push_back(detail::fold_reports("quasi_mvt." + f.name, parts));
    }

    {
      const bool analytic = opt.mode == deriv_method::analytic;
      const Real env_tol = analytic ? Real(1e-9) : Real(10) * mesh;
      // differences cannot resolve a halving radius below the mesh, so the
      // fd sweep stops while t_k is still well above it
      const int iters = analytic ? opt.envelope_iters : std::min(opt.envelope_iters, 18);
      std::vector<check_report<Real>> env_parts, rate_parts;
      for (int i = 0; i < opt.envelope_trials; ++i) {
        splitmix64 g_x0(opt.seed + 2000 + static_cast<std::uint64_t>(obj_index) * 100 +
                        static_cast<std::uint64_t>(i));
        const Real mu = f.domain.inset();
        run_config<Real> cfg;
        cfg.x0 = Real(g_x0.uniform(double(f.domain.lo + mu), double(f.domain.hi - mu)));
        cfg.eta = Real(1e-30);
        cfg.max_iters = iters;
        cfg.mesh = mesh;
        cfg.derivatives = opt.mode;
        const auto tr = isgm_run(f, cfg);
        const Real x_star = f.nearest_minimizer(cfg.x0);
        env_parts.push_back(check_envelope(tr, x_star, env_tol));
        rate_parts.push_back(check_rlinear(tr, x_star));
      }
      out.push_back(detail::fold_reports("isgm_envelope." + f.name, env_parts));
      out.push_back(detail::fold_reports("isgm_rlinear." + f.name, rate_parts));
    }
    ++obj_index;
  }

  if (opt.planted_nonconvex) {
    const auto cubic = detail::planted_cubic<Real>();
    out.push_back(check_subgradient_inequality(cubic, eval_grid<Real>::over(cubic, opt.grid_n),
                                               opt.mode, mesh));
  }

  std::sort(out.begin(), out.end(),
            [](const check_report<Real>& a, const check_report<Real>& b) { return a.name < b.name; });
  return out;
}

}  // namespace specd
