#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "specd/derivatives.hpp"
#include "specd/error.hpp"
#include "specd/objective.hpp"
#include "specd/specular.hpp"

// The iterative methods: the specular gradient method (step along the
// specular derivative), its implicit variant (sign steps with a halving
// radius), and the baseline subgradient method driven by the symmetric
// derivative. A single run is strictly sequential; distinct runs are
// independent and may execute concurrently.

namespace specd {

enum class method_kind { sgm, isgm, sm };

enum class stop_reason { tolerance_met, max_iters, zero_derivative, out_of_domain };

enum class schedule_kind { constant, diminishing, shor_halving };

enum class subgradient_choice { symmetric_derivative };

/// t_k = t0 * 2^{-k}, evaluated exactly in binary.
template <std::floating_point Real>
Real shor_t(Real t0, int k) {
  if (!(t0 > Real(0))) throw bad_parameter("shor_t: t0 must be positive");
  if (k < 0) throw bad_parameter("shor_t: k must be nonnegative");
  return std::ldexp(t0, -k);
}

/// Step-size rule. `gamma` is used by the constant schedule, `t0` by the
/// halving schedule; the diminishing schedule is 1/(k+1).
template <std::floating_point Real>
struct step_schedule {
  schedule_kind kind = schedule_kind::constant;
  Real gamma = Real(0.005);
  Real t0 = Real(1);

  static step_schedule constant_step(Real g) {
    if (!(g > Real(0))) throw bad_parameter("constant step must be positive");
    return {schedule_kind::constant, g, Real(1)};
  }
  static step_schedule diminishing() { return {schedule_kind::diminishing, Real(0), Real(1)}; }
  static step_schedule shor_halving(Real t0) {
    if (!(t0 > Real(0))) throw bad_parameter("halving start must be positive");
    return {schedule_kind::shor_halving, Real(0), t0};
  }
};

template <std::floating_point Real>
struct run_config {
  Real x0 = Real(0);
  Real eta = Real(1e-6);  // stopping tolerance
  int max_iters = 20;
  Real mesh = Real(1e-6);  // finite-difference step
  step_schedule<Real> schedule{};
  deriv_method derivatives = deriv_method::finite_difference;
};

/// One row of a solver trace. `deriv` is the quantity the method steered by
/// at this iterate: the specular derivative (sgm), the sum of one-sided
/// derivatives (isgm), or the symmetric derivative (sm). `step` is the step
/// size applied to leave this iterate (zero on the final row); `envelope`
/// is the halving radius t_k where one exists. `x_best`/`f_best` fold in
/// the current iterate, so f_best <= fx and f_best is nonincreasing in k.
template <std::floating_point Real>
struct iteration_record {
  int k;
  Real x;
  Real fx;
  Real deriv;
  Real step;
  std::optional<Real> envelope;
  Real x_best;
  Real f_best;
};

template <std::floating_point Real>
struct run_trace {
  method_kind method;
  run_config<Real> config;
  std::string objective_name;
  interval<Real> domain;
  std::vector<iteration_record<Real>> records;
  stop_reason stop = stop_reason::max_iters;
};

template <std::floating_point Real>
struct point_value {
  Real x;
  Real f;
};

/// Smaller objective value wins; ties keep the incumbent.
template <std::floating_point Real>
point_value<Real> best_update(point_value<Real> best, point_value<Real> candidate) {
  return candidate.f < best.f ? candidate : best;
}

namespace detail {

template <std::floating_point Real>
void validate_config(const basic_objective<Real>& f, const run_config<Real>& cfg) {
  if (!f.domain.contains(cfg.x0)) throw bad_config(f.name + ": x0 outside the domain");
  if (!(cfg.eta > Real(0))) throw bad_config("eta must be positive");
  if (cfg.max_iters < 1) throw bad_config("max_iters must be at least 1");
  if (!(cfg.mesh > Real(0))) throw bad_config("mesh must be positive");
}

// Applies the interior clamp on bounded domains and tracks consecutive
// clamps; two in a row mean the iterates are pinned at the boundary and the
// run stops with out_of_domain.
template <std::floating_point Real>
struct domain_guard {
  const interval<Real>& dom;
  int consecutive = 0;

  Real clamp(Real x) {
    if (!dom.bounded()) return x;
    const Real c = dom.clamp_interior(x);
    consecutive = (c == x) ? 0 : consecutive + 1;
    return c;
  }
  bool escaped() const { return consecutive >= 2; }
};

}  // namespace detail

/// Specular gradient method: x <- x - gamma_k * f^spd(x) until the
/// derivative magnitude falls to eta or the iteration budget runs out.
/// Under the halving schedule the step is gamma_k = t_k / |f^spd(x_k)| and
/// an exactly zero derivative stops the run with zero_derivative (such an
/// iterate is a global minimizer of a convex objective). Iterates that
/// leave a bounded domain are clamped just inside it; two consecutive
/// clamps end the run with out_of_domain.
template <std::floating_point Real>
run_trace<Real> sgm_run(const basic_objective<Real>& f, const run_config<Real>& cfg) {
  detail::validate_config(f, cfg);
  const bool halving = cfg.schedule.kind == schedule_kind::shor_halving;
  if (halving && !(cfg.schedule.t0 > Real(0))) throw bad_config("halving start must be positive");
  if (cfg.schedule.kind == schedule_kind::constant && !(cfg.schedule.gamma > Real(0))) {
    throw bad_config("constant step must be positive");
  }

  run_trace<Real> tr{method_kind::sgm, cfg, f.name, f.domain, {}, stop_reason::max_iters};
  detail::domain_guard<Real> guard{f.domain};
  Real x = cfg.x0;
  Real fx = f(x);
  point_value<Real> best{x, fx};

  for (int k = 0;; ++k) {
    const Real d = specular_from_pair(pair_at(f, x, cfg.mesh, cfg.derivatives));
    std::optional<Real> env;
    if (halving) env = shor_t(cfg.schedule.t0, k);

    std::optional<stop_reason> stop;
    if (halving && d == Real(0)) {
      stop = stop_reason::zero_derivative;
    } else if (std::abs(d) <= cfg.eta) {
      stop = stop_reason::tolerance_met;
    } else if (k == cfg.max_iters) {
      stop = stop_reason::max_iters;
    }

    Real gamma = Real(0);
    if (!stop) {
      switch (cfg.schedule.kind) {
        case schedule_kind::constant: gamma = cfg.schedule.gamma; break;
        case schedule_kind::diminishing: gamma = Real(1) / Real(k + 1); break;
        case schedule_kind::shor_halving: gamma = *env / std::abs(d); break;
      }
    }
    tr.records.push_back({k, x, fx, d, gamma, env, best.x, best.f});
    if (stop) {
      tr.stop = *stop;
      return tr;
    }

    x = guard.clamp(x - gamma * d);
    fx = f(x);
    best = best_update(best, {x, fx});
    if (guard.escaped()) {
      const Real d2 = specular_from_pair(pair_at(f, x, cfg.mesh, cfg.derivatives));
      std::optional<Real> env2;
      if (halving) env2 = shor_t(cfg.schedule.t0, k + 1);
      tr.records.push_back({k + 1, x, fx, d2, Real(0), env2, best.x, best.f});
      tr.stop = stop_reason::out_of_domain;
      return tr;
    }
  }
}

/// Implicit specular gradient method: sign steps x <- x - t * sign(f'_+ +
/// f'_-) with the radius t starting at half the domain width and halving
/// after every step. Requires a bounded domain; the schedule field of the
/// config is ignored. Stops when |f'_+ + f'_-| <= eta.
template <std::floating_point Real>
run_trace<Real> isgm_run(const basic_objective<Real>& f, const run_config<Real>& cfg) {
  detail::validate_config(f, cfg);
  if (!f.domain.bounded()) throw bad_config(f.name + ": isgm needs a bounded domain");

  run_trace<Real> tr{method_kind::isgm, cfg, f.name, f.domain, {}, stop_reason::max_iters};
  detail::domain_guard<Real> guard{f.domain};
  Real t = f.domain.width() / Real(2);
  Real x = cfg.x0;
  Real fx = f(x);
  point_value<Real> best{x, fx};

  for (int k = 0;; ++k) {
    const one_sided_pair<Real> pr = pair_at(f, x, cfg.mesh, cfg.derivatives);
    const Real sum = pr.right + pr.left;

    std::optional<stop_reason> stop;
    if (std::abs(sum) <= cfg.eta) {
      stop = stop_reason::tolerance_met;
    } else if (k == cfg.max_iters) {
      stop = stop_reason::max_iters;
    }
    tr.records.push_back({k, x, fx, sum, stop ? Real(0) : t, t, best.x, best.f});
    if (stop) {
      tr.stop = *stop;
      return tr;
    }

    x = guard.clamp(x - t * Real(specular_sign(pr)));
    t /= Real(2);
    fx = f(x);
    best = best_update(best, {x, fx});
    if (guard.escaped()) {
      const one_sided_pair<Real> pr2 = pair_at(f, x, cfg.mesh, cfg.derivatives);
      tr.records.push_back({k + 1, x, fx, pr2.right + pr2.left, Real(0), t, best.x, best.f});
      tr.stop = stop_reason::out_of_domain;
      return tr;
    }
  }
}

/// Baseline subgradient method with the symmetric derivative as the
/// subgradient. Accepts the constant and diminishing schedules only; the
/// halving schedule is reserved for sgm_run. Stops when the symmetric
/// derivative magnitude falls to eta.
template <std::floating_point Real>
run_trace<Real> sm_run(const basic_objective<Real>& f, const run_config<Real>& cfg,
                       subgradient_choice = subgradient_choice::symmetric_derivative) {
  detail::validate_config(f, cfg);
  if (cfg.schedule.kind == schedule_kind::shor_halving) {
    throw bad_config("sm: the halving schedule is reserved for sgm");
  }
  if (cfg.schedule.kind == schedule_kind::constant && !(cfg.schedule.gamma > Real(0))) {
    throw bad_config("constant step must be positive");
  }

  run_trace<Real> tr{method_kind::sm, cfg, f.name, f.domain, {}, stop_reason::max_iters};
  detail::domain_guard<Real> guard{f.domain};
  Real x = cfg.x0;
  Real fx = f(x);
  point_value<Real> best{x, fx};

  for (int k = 0;; ++k) {
    const Real s = symmetric_derivative(f, x, cfg.mesh, cfg.derivatives);

    std::optional<stop_reason> stop;
    if (std::abs(s) <= cfg.eta) {
      stop = stop_reason::tolerance_met;
    } else if (k == cfg.max_iters) {
      stop = stop_reason::max_iters;
    }
    const Real gamma = stop           ? Real(0)
                       : cfg.schedule.kind == schedule_kind::constant
                           ? cfg.schedule.gamma
                           : Real(1) / Real(k + 1);
    tr.records.push_back({k, x, fx, s, gamma, std::nullopt, best.x, best.f});
    if (stop) {
      tr.stop = *stop;
      return tr;
    }

    x = guard.clamp(x - gamma * s);
    fx = f(x);
    best = best_update(best, {x, fx});
    if (guard.escaped()) {
      const Real s2 = symmetric_derivative(f, x, cfg.mesh, cfg.derivatives);
      tr.records.push_back({k + 1, x, fx, s2, Real(0), std::nullopt, best.x, best.f});
      tr.stop = stop_reason::out_of_domain;
      return tr;
    }
  }
}

}  // namespace specd
