#pragma once

#include <stdexcept>

namespace specd {

/// Base class for every error thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The closed-form derivative combination is undefined when the one-sided
/// derivatives cancel exactly; the caller must take the zero branch.
struct degenerate_sum : error {
  using error::error;
};

/// A point (or probe) left an objective's open domain, or an evaluation
/// produced a non-finite value.
struct out_of_domain : error {
  using error::error;
};

/// An argument is outside its admissible range.
struct bad_parameter : error {
  using error::error;
};

/// A solver configuration violates the method's preconditions.
struct bad_config : error {
  using error::error;
};

/// A trace was handed to a check that does not apply to it.
struct bad_trace : error {
  using error::error;
};

}  // namespace specd
