#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

#include "specd/error.hpp"

// Specular derivative calculus on one-sided derivative pairs. Everything in
// this header is a pure function of its arguments and safe to call
// concurrently.

namespace specd {

/// Right- and left-hand derivative values of a function at one point.
template <std::floating_point Real>
struct one_sided_pair {
  Real right;  // f'_+(x)
  Real left;   // f'_-(x)
};

/// Relative threshold below which the sum of the one-sided derivatives is
/// treated as an exact cancellation and the zero branch is taken.
inline constexpr double cancel_rel_tol = 1e-12;

namespace detail {

template <std::floating_point Real>
Real pair_scale(Real a, Real b) {
  return std::max({Real(1), std::abs(a), std::abs(b)});
}

template <std::floating_point Real>
bool cancels(Real right, Real left) {
  return std::abs(right + left) <= Real(cancel_rel_tol) * pair_scale(right, left);
}

}  // namespace detail

/// Closed-form combination of one-sided derivatives,
///
///   A(alpha, beta) = (alpha*beta - 1 + sqrt((alpha^2+1)(beta^2+1))) / (alpha + beta),
///
/// defined for alpha + beta != 0. Evaluated through the identity
/// (alpha^2+1)(beta^2+1) = (1 - alpha*beta)^2 + (alpha + beta)^2, which removes
/// the cancellation between alpha*beta - 1 and the root when the inputs are
/// small or nearly opposite. The value always lies between min(alpha, beta)
/// and max(alpha, beta) and carries the sign of alpha + beta; A(t, t) = t.
///
/// Throws degenerate_sum when alpha + beta is exactly zero.
template <std::floating_point Real>
Real a_formula(Real alpha, Real beta) {
  const Real sum = alpha + beta;
  if (sum == Real(0)) {
    throw degenerate_sum("a_formula: alpha + beta == 0; use the zero branch");
  }
  const Real m = Real(1) - alpha * beta;
  const Real root = std::hypot(m, sum);
  if (m >= Real(0)) {
    return sum / (m + root);  // numerator rationalized; both terms >= 0
  }
  return (root - m) / sum;  // root >= |m|, so the numerator is still >= 0
}

/// Specular derivative from a pair of one-sided derivatives: A(right, left)
/// when the pair does not cancel, exactly zero when it does. Cancellation is
/// detected relative to the pair's magnitude so that finite-difference pairs
/// straddling a symmetric kink land on the zero branch. Total function.
template <std::floating_point Real>
Real specular_from_pair(one_sided_pair<Real> p) {
  if (detail::cancels(p.right, p.left)) return Real(0);
  return a_formula(p.right, p.left);
}

/// Symmetric derivative from a pair of one-sided derivatives.
template <std::floating_point Real>
Real symmetric_from_pair(one_sided_pair<Real> p) {
  return (p.right + p.left) / Real(2);
}

/// Sign of the specular derivative without evaluating the closed form.
/// Agrees with sign(specular_from_pair(p)) in every case, including the
/// zero branch.
template <std::floating_point Real>
int specular_sign(one_sided_pair<Real> p) {
  if (detail::cancels(p.right, p.left)) return 0;
  return p.right + p.left > Real(0) ? 1 : -1;
}

}  // namespace specd
