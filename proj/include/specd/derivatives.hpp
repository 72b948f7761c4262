#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include "specd/error.hpp"
#include "specd/objective.hpp"
#include "specd/specular.hpp"

// Derivative estimation against an objective: one-sided finite differences
// with boundary shrinking, pair assembly, the symmetric derivative, and the
// interval Lipschitz bound.

namespace specd {

enum class deriv_method { analytic, finite_difference };

enum class fd_side { right, left };

/// A derivative value together with how it was obtained. `mesh` is the step
/// actually used (after boundary shrinking); it is meaningful only for
/// finite differences.
template <std::floating_point Real>
struct derivative_estimate {
  Real value;
  deriv_method method;
  Real mesh;
};

namespace detail {

// Mesh steps below this floor are rejected: the probe would be dominated by
// rounding.
inline constexpr double mesh_floor = 1e-12;

// Halve h until the requested probes are interior.
template <std::floating_point Real>
Real shrink_mesh(const interval<Real>& dom, Real x, Real h, bool need_right, bool need_left) {
  while ((need_right && !dom.contains(x + h)) || (need_left && !dom.contains(x - h))) {
    h /= Real(2);
    if (h < Real(mesh_floor)) {
      throw out_of_domain("finite difference: no interior probe above the mesh floor");
    }
  }
  return h;
}

}  // namespace detail

/// One-sided difference quotient (f(x+h) - f(x))/h or (f(x) - f(x-h))/h.
/// If the probe would leave the open domain, the mesh is halved until the
/// probe is interior (down to 1e-12, below which out_of_domain is thrown).
template <std::floating_point Real>
derivative_estimate<Real> one_sided_fd(const basic_objective<Real>& f, Real x, Real h,
                                       fd_side side) {
  if (!(h > Real(0))) throw bad_parameter("one_sided_fd: mesh must be positive");
  if (!f.domain.contains(x)) throw out_of_domain(f.name + ": point outside the open domain");
  const bool right = side == fd_side::right;
  const Real hh = detail::shrink_mesh(f.domain, x, h, right, !right);
  const Real fx = f(x);
  const Real q = right ? (f(x + hh) - fx) / hh : (fx - f(x - hh)) / hh;
  return {q, deriv_method::finite_difference, hh};
}

/// One-sided derivative pair at x by the requested method. Analytic mode
/// falls back to finite differences when the objective carries no exact
/// pair. Throws out_of_domain for exterior points or non-finite pairs.
template <std::floating_point Real>
one_sided_pair<Real> pair_at(const basic_objective<Real>& f, Real x, Real mesh,
                             deriv_method mode) {
  if (mode == deriv_method::analytic && f.has_analytic_pair()) {
    if (!f.domain.contains(x)) throw out_of_domain(f.name + ": point outside the open domain");
    const one_sided_pair<Real> p = f.one_sided(x);
    if (!std::isfinite(p.right) || !std::isfinite(p.left)) {
      throw out_of_domain(f.name + ": non-finite one-sided derivatives");
    }
    return p;
  }
  return {one_sided_fd(f, x, mesh, fd_side::right).value,
          one_sided_fd(f, x, mesh, fd_side::left).value};
}

/// Dispatches to the analytic pair when the objective has one, otherwise to
/// finite differences on both sides.
template <std::floating_point Real>
one_sided_pair<Real> pair_at(const basic_objective<Real>& f, Real x, Real mesh) {
  return pair_at(f, x, mesh,
                 f.has_analytic_pair() ? deriv_method::analytic : deriv_method::finite_difference);
}

/// Symmetric derivative at x: (f'_+ + f'_-)/2 in analytic mode, the central
/// difference (f(x+h) - f(x-h))/(2h) in finite-difference mode.
template <std::floating_point Real>
Real symmetric_derivative(const basic_objective<Real>& f, Real x, Real mesh, deriv_method mode) {
  if (mode == deriv_method::analytic && f.has_analytic_pair()) {
    return symmetric_from_pair(pair_at(f, x, mesh, mode));
  }
  if (!f.domain.contains(x)) throw out_of_domain(f.name + ": point outside the open domain");
  const Real hh = detail::shrink_mesh(f.domain, x, mesh, true, true);
  return (f(x + hh) - f(x - hh)) / (Real(2) * hh);
}

/// Lipschitz constant of a convex objective relative to [c, d]:
/// max(|f'_+(c)|, |f'_-(d)|).
template <std::floating_point Real>
Real lipschitz_bound(const basic_objective<Real>& f, Real c, Real d, Real mesh = Real(1e-6)) {
  if (!(f.domain.lo < c && c < d && d < f.domain.hi)) {
    throw bad_parameter(f.name + ": lipschitz_bound needs lo < c < d < hi");
  }
  return std::max(std::abs(pair_at(f, c, mesh).right), std::abs(pair_at(f, d, mesh).left));
}

}  // namespace specd
