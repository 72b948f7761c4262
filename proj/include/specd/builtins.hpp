#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>
#include <vector>

#include "specd/error.hpp"
#include "specd/objective.hpp"

// The builtin benchmark objectives. All of them are convex on a bounded open
// interval, carry exact one-sided derivatives, and declare their global
// minimizer.

namespace specd {

namespace detail {

// One-sided slopes of t -> |t|; the two conventions differ only at t = 0.
template <std::floating_point Real>
Real abs_slope_right(Real t) {
  return t >= Real(0) ? Real(1) : Real(-1);
}

template <std::floating_point Real>
Real abs_slope_left(Real t) {
  return t > Real(0) ? Real(1) : Real(-1);
}

}  // namespace detail

/// Sum of 100 pairs |x - i/100| + |x + i/100| on (-1, 1). Piecewise linear
/// with kinks every 0.01, minimized at 0 where f = 99; near the minimizer it
/// behaves like 99 + 2|x|.
template <std::floating_point Real = double>
basic_objective<Real> builtin_sum_abs() {
  basic_objective<Real> f;
  f.name = "sum_abs";
  f.domain = {Real(-1), Real(1)};
  f.value = [](Real x) {
    Real s = 0;
    for (int i = 0; i < 100; ++i) {
      const Real c = Real(i) / Real(100);
      s += std::abs(x - c) + std::abs(x + c);
    }
    return s;
  };
  f.one_sided = [](Real x) {
    Real r = 0;
    Real l = 0;
    for (int i = 0; i < 100; ++i) {
      const Real c = Real(i) / Real(100);
      r += detail::abs_slope_right(x - c) + detail::abs_slope_right(x + c);
      l += detail::abs_slope_left(x - c) + detail::abs_slope_left(x + c);
    }
    return one_sided_pair<Real>{r, l};
  };
  f.minimizers = {Real(0)};
  f.convex = true;
  return f;
}

/// Three-piece convex function on (-1, 1): |x|^1.3/1.3 left of 0,
/// x^1.2/1.2 on [0, 1/2), and a slope-3 line on [1/2, 1) glued
/// continuously. Differentiable at 0, kinked at 1/2, minimized at 0.
template <std::floating_point Real = double>
basic_objective<Real> builtin_piecewise_power() {
  basic_objective<Real> f;
  f.name = "piecewise_power";
  f.domain = {Real(-1), Real(1)};
  f.value = [](Real x) -> Real {
    if (x < Real(0)) return std::pow(-x, Real(1.3)) / Real(1.3);
    if (x < Real(0.5)) return std::pow(x, Real(1.2)) / Real(1.2);
    return Real(3) * (x - Real(0.5)) + std::pow(Real(0.5), Real(1.2)) / Real(1.2);
  };
  f.one_sided = [](Real x) -> one_sided_pair<Real> {
    if (x < Real(0)) {
      const Real d = -std::pow(-x, Real(0.3));
      return {d, d};
    }
    if (x == Real(0)) return {Real(0), Real(0)};
    if (x < Real(0.5)) {
      const Real d = std::pow(x, Real(0.2));
      return {d, d};
    }
    if (x == Real(0.5)) return {Real(3), std::pow(Real(0.5), Real(0.2))};
    return {Real(3), Real(3)};
  };
  f.minimizers = {Real(0)};
  f.convex = true;
  return f;
}

/// Huber function on (-2, 2): x^2/2 inside [-delta, delta] and the linear
/// continuation delta*(|x| - delta/2) outside. Continuously differentiable.
template <std::floating_point Real = double>
basic_objective<Real> builtin_huber(Real delta = Real(0.5)) {
  if (!(delta > Real(0))) {
    throw bad_parameter("huber: delta must be positive");
  }
  basic_objective<Real> f;
  f.name = "huber";
  f.domain = {Real(-2), Real(2)};
  f.value = [delta](Real x) {
    const Real ax = std::abs(x);
    return ax <= delta ? x * x / Real(2) : delta * (ax - delta / Real(2));
  };
  f.one_sided = [delta](Real x) -> one_sided_pair<Real> {
    const Real d = std::abs(x) <= delta ? x : (x > Real(0) ? delta : -delta);
    return {d, d};
  };
  f.minimizers = {Real(0)};
  f.convex = true;
  return f;
}

/// Power objective |x|^p / p on (-3, 3) for p > 1. Differentiable
/// everywhere (derivative sign(x)*|x|^{p-1}, zero at the minimizer 0), but
/// with unbounded curvature at 0 when p < 2.
template <std::floating_point Real = double>
basic_objective<Real> builtin_power_p(Real p = Real(1.3)) {
  if (!(p > Real(1))) {
    throw bad_parameter("power_p: p must exceed 1");
  }
  basic_objective<Real> f;
  f.name = "power_p";
  f.domain = {Real(-3), Real(3)};
  f.value = [p](Real x) { return std::pow(std::abs(x), p) / p; };
  f.one_sided = [p](Real x) -> one_sided_pair<Real> {
    if (x == Real(0)) return {Real(0), Real(0)};
    const Real d = (x > Real(0) ? Real(1) : Real(-1)) * std::pow(std::abs(x), p - Real(1));
    return {d, d};
  };
  f.minimizers = {Real(0)};
  f.convex = true;
  return f;
}

/// x for x >= 0 and x^2 for x < 0, on (-10, 10). Globally minimized at 0,
/// yet the specular derivative there is sqrt(2) - 1, not zero: a zero
/// specular derivative implies a minimizer but not conversely.
template <std::floating_point Real = double>
basic_objective<Real> builtin_kink_counterexample() {
  basic_objective<Real> f;
  f.name = "kink_counterexample";
  f.domain = {Real(-10), Real(10)};
  f.value = [](Real x) { return x >= Real(0) ? x : x * x; };
  f.one_sided = [](Real x) -> one_sided_pair<Real> {
    if (x > Real(0)) return {Real(1), Real(1)};
    if (x < Real(0)) return {Real(2) * x, Real(2) * x};
    return {Real(1), Real(0)};
  };
  f.minimizers = {Real(0)};
  f.convex = true;
  return f;
}

/// Builtin objective names in registry order (the CLI vocabulary).
inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "sum_abs", "piecewise_power", "huber", "power_p", "kink_counterexample"};
  return names;
}

/// Builds a builtin by registry name with its standard parameters
/// (huber delta = 0.5, power_p p = 1.3). Throws bad_parameter for unknown
/// names.
template <std::floating_point Real = double>
basic_objective<Real> make_builtin(std::string_view name) {
  if (name == "sum_abs") return builtin_sum_abs<Real>();
  if (name == "piecewise_power") return builtin_piecewise_power<Real>();
  if (name == "huber") return builtin_huber<Real>();
  if (name == "power_p") return builtin_power_p<Real>();
  if (name == "kink_counterexample") return builtin_kink_counterexample<Real>();
  throw bad_parameter("unknown objective: " + std::string(name));
}

}  // namespace specd
