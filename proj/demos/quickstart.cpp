// Minimal library walkthrough: the derivative calculus on a hand-built
// objective, then one implicit run with its trace printed as CSV.

#include <iostream>

#include "specd/specd.hpp"

int main() {
  using namespace specd;

  // f(x) = |x - 1| + x/2 on (-4, 4): kinked at 1, minimized there.
  objective f;
  f.name = "shifted_abs";
  f.domain = {-4.0, 4.0};
  f.value = [](double x) { return std::abs(x - 1.0) + 0.5 * x; };
  f.one_sided = [](double x) -> one_sided_pair<double> {
    if (x > 1.0) return {1.5, 1.5};
    if (x < 1.0) return {-0.5, -0.5};
    return {1.5, -0.5};
  };
  f.minimizers = {1.0};
  f.convex = true;

  const auto at_kink = pair_at(f, 1.0, 1e-6);
  std::cout << "one-sided pair at the kink: (" << at_kink.right << ", " << at_kink.left << ")\n";
  std::cout << "specular derivative there:  " << specular_from_pair(at_kink) << "\n";
  std::cout << "symmetric derivative there: " << symmetric_from_pair(at_kink) << "\n\n";

  run_config<double> cfg;
  cfg.x0 = -3.5;
  cfg.max_iters = 12;
  cfg.derivatives = deriv_method::analytic;
  const auto trace = isgm_run(f, cfg);
  std::cout << trace_csv(trace, f.min_value());
  return 0;
}
