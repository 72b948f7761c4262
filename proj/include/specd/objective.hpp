#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <string>
#include <vector>

#include "specd/error.hpp"
#include "specd/specular.hpp"

namespace specd {

/// Open interval (lo, hi); the endpoints are excluded.
template <std::floating_point Real>
struct interval {
  Real lo;
  Real hi;

  bool contains(Real x) const { return lo < x && x < hi; }
  Real width() const { return hi - lo; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

  /// Margin used to keep probes, grids, and clamped iterates strictly
  /// interior: one billionth of the width.
  Real inset() const { return Real(1e-9) * width(); }

  /// x pushed to the nearest point of [lo + inset, hi - inset].
  Real clamp_interior(Real x) const {
    const Real mu = inset();
    if (x < lo + mu) return lo + mu;
    if (x > hi - mu) return hi - mu;
    return x;
  }
};

/// A scalar objective on an open interval.
///
/// `value` must be finite everywhere on the domain. `one_sided`, when
/// present, returns exact right/left derivatives at interior points.
/// `minimizers` lists known global minimizers for objectives that have been
/// analyzed by hand; solvers that need a reference point use the one nearest
/// to the query. Instances are immutable after construction; concurrent
/// evaluation is safe as long as the stored callables are.
template <std::floating_point Real>
struct basic_objective {
  std::string name;
  interval<Real> domain{Real(-1), Real(1)};
  std::function<Real(Real)> value;
  std::function<one_sided_pair<Real>(Real)> one_sided;  // empty: differences only
  std::vector<Real> minimizers;
  bool convex = false;

  /// Domain-checked evaluation. Throws out_of_domain for points outside the
  /// open interval and for non-finite results.
  Real operator()(Real x) const {
    if (!domain.contains(x)) {
      throw out_of_domain(name + ": evaluation outside the open domain");
    }
    const Real v = value(x);
    if (!std::isfinite(v)) {
      throw out_of_domain(name + ": non-finite value");
    }
    return v;
  }

  bool has_analytic_pair() const { return static_cast<bool>(one_sided); }

  /// Declared minimizer closest to x.
  Real nearest_minimizer(Real x) const {
    if (minimizers.empty()) {
      throw bad_config(name + ": no declared minimizer");
    }
    Real best = minimizers.front();
    for (const Real m : minimizers) {
      if (std::abs(x - m) < std::abs(x - best)) best = m;
    }
    return best;
  }

  /// Objective value at the declared minimizers.
  Real min_value() const {
    if (minimizers.empty()) {
      throw bad_config(name + ": no declared minimizer");
    }
    Real best = (*this)(minimizers.front());
    for (const Real m : minimizers) best = std::min(best, (*this)(m));
    return best;
  }
};

using objective = basic_objective<double>;

}  // namespace specd
