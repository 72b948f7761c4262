#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specd/builtins.hpp"
#include "specd/error.hpp"
#include "specd/io.hpp"
#include "specd/optimize.hpp"
#include "specd/rng.hpp"

// Multi-trial benchmarks: repeated runs from seeded random initial points,
// averaged per iteration. Trial i draws its initial point from the stream
// seeded with base_seed + i, so results do not depend on execution order and
// a fixed spec always produces byte-identical CSV.

namespace specd {

enum class bench_method { sm_const, sm_dimin, isgm, sgm_shor };

inline constexpr std::array<bench_method, 4> all_bench_methods = {
    bench_method::sm_const, bench_method::sm_dimin, bench_method::isgm, bench_method::sgm_shor};

constexpr std::string_view bench_method_name(bench_method m) {
  switch (m) {
    case bench_method::sm_const: return "sm_const";
    case bench_method::sm_dimin: return "sm_dimin";
    case bench_method::isgm: return "isgm";
    case bench_method::sgm_shor: return "sgm_shor";
  }
  return "unknown";
}

inline std::optional<bench_method> parse_bench_method(std::string_view name) {
  for (const bench_method m : all_bench_methods) {
    if (bench_method_name(m) == name) return m;
  }
  return std::nullopt;
}

template <std::floating_point Real = double>
struct bench_spec {
  std::string objective;
  std::vector<bench_method> methods{all_bench_methods.begin(), all_bench_methods.end()};
  int trials = 20;
  int iterations = 20;
  std::uint64_t seed = 42;
  Real gamma_const = Real(0.005);
  Real eta = Real(1e-6);
  Real mesh = Real(1e-6);
  deriv_method derivatives = deriv_method::finite_difference;
  std::optional<Real> x0_override;  // pins every trial to one initial point
};

/// Across-trial means of f(x_k) and of f(x_k) - f(x*), indexed [k][method].
template <std::floating_point Real = double>
struct bench_table {
  std::vector<bench_method> methods;
  int trials = 0;
  std::vector<std::vector<Real>> mean_value;
  std::vector<std::vector<Real>> mean_subopt;
};

/// One solver run for a named benchmark method. sgm_shor uses the full
/// domain width as its initial radius.
template <std::floating_point Real>
run_trace<Real> run_bench_method(const basic_objective<Real>& f, bench_method m,
                                 const bench_spec<Real>& spec, Real x0) {
  run_config<Real> cfg;
  cfg.x0 = x0;
  cfg.eta = spec.eta;
  cfg.max_iters = spec.iterations;
  cfg.mesh = spec.mesh;
  cfg.derivatives = spec.derivatives;
  switch (m) {
    case bench_method::sm_const:
      cfg.schedule = step_schedule<Real>::constant_step(spec.gamma_const);
      return sm_run(f, cfg);
    case bench_method::sm_dimin:
      cfg.schedule = step_schedule<Real>::diminishing();
      return sm_run(f, cfg);
    case bench_method::isgm:
      return isgm_run(f, cfg);
    case bench_method::sgm_shor:
      cfg.schedule = step_schedule<Real>::shor_halving(f.domain.width());
      return sgm_run(f, cfg);
  }
  throw bad_parameter("unknown bench method");
}

/// Runs trials x methods on a builtin objective and averages per iteration.
/// Runs that stop early hold their final iterate for the remaining rows.
template <std::floating_point Real = double>
bench_table<Real> run_bench(const bench_spec<Real>& spec) {
  if (spec.trials < 1) throw bad_parameter("bench: trials must be at least 1");
  if (spec.iterations < 1) throw bad_parameter("bench: iterations must be at least 1");
  if (spec.methods.empty()) throw bad_parameter("bench: no methods selected");
  const auto f = make_builtin<Real>(spec.objective);
  const Real f_star = f.min_value();

  const std::size_t rows = static_cast<std::size_t>(spec.iterations) + 1;
  const std::size_t cols = spec.methods.size();
  bench_table<Real> table;
  table.methods = spec.methods;
  table.trials = spec.trials;
  table.mean_value.assign(rows, std::vector<Real>(cols, Real(0)));
  table.mean_subopt.assign(rows, std::vector<Real>(cols, Real(0)));

  const Real mu = f.domain.inset();
  for (int trial = 0; trial < spec.trials; ++trial) {
    splitmix64 g(spec.seed + static_cast<std::uint64_t>(trial));
    const Real x0 = spec.x0_override
                        ? *spec.x0_override
                        : Real(g.uniform(double(f.domain.lo + mu), double(f.domain.hi - mu)));
    for (std::size_t m = 0; m < cols; ++m) {
      const auto tr = run_bench_method(f, spec.methods[m], spec, x0);
      for (std::size_t k = 0; k < rows; ++k) {
        const auto& rec = tr.records[std::min(k, tr.records.size() - 1)];
        table.mean_value[k][m] += rec.fx;
        table.mean_subopt[k][m] += rec.fx - f_star;
      }
    }
  }
  for (std::size_t k = 0; k < rows; ++k) {
    for (std::size_t m = 0; m < cols; ++m) {
      table.mean_value[k][m] /= Real(spec.trials);
      table.mean_subopt[k][m] /= Real(spec.trials);
    }
  }
  return table;
}

/// CSV with a raw-mean block and a suboptimality-mean block:
/// block,k,<method columns>. LF line endings, shortest round-trip decimals.
template <std::floating_point Real>
std::string bench_csv(const bench_table<Real>& table) {
  std::string out = "block,k";
  for (const bench_method m : table.methods) {
    out += ',';
    out += bench_method_name(m);
  }
  out += '\n';
  const auto block = [&](std::string_view label, const std::vector<std::vector<Real>>& rows) {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out += label;
      out += ',';
      out += std::to_string(k);
      for (const Real v : rows[k]) {
        out += ',';
        out += format_real(v);
      }
      out += '\n';
    }
  };
  block("mean_f", table.mean_value);
  block("mean_subopt", table.mean_subopt);
  return out;
}

}  // namespace specd
