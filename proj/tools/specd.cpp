// Command-line front end: single solver runs, multi-trial benchmark tables,
// verification sweeps, and the registry listing.
//
// Exit codes: 0 ok, 1 usage or parameter error, 2 run escaped its domain,
// 3 at least one verification check failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specd/specd.hpp"

namespace {

struct common_flags {
  std::string objective;
  double eta = 1e-6;
  double mesh = 1e-6;
  int iters = 20;
  std::uint64_t seed = 42;
  std::string derivatives = "fd";
  std::string output;
};

specd::deriv_method parse_derivatives(const std::string& s) {
  if (s == "analytic") return specd::deriv_method::analytic;
  if (s == "fd") return specd::deriv_method::finite_difference;
  throw specd::bad_parameter("--derivatives must be 'analytic' or 'fd'");
}

int write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "specd: cannot open output file: " << path << "\n";
    return 1;
  }
  out << text;
  return 0;
}

void add_common(CLI::App* cmd, common_flags& fl, bool with_objective) {
  cmd->set_help_flag("--help", "print this help message and exit");
  if (with_objective) {
    cmd->add_option("--objective", fl.objective, "objective name (see `specd list`)")
        ->required();
  }
  cmd->add_option("--eta", fl.eta, "stopping tolerance");
  cmd->add_option("--h", fl.mesh, "finite-difference mesh");
  cmd->add_option("--iters", fl.iters, "maximum number of iterations");
  cmd->add_option("--seed", fl.seed, "random seed");
  cmd->add_option("--derivatives", fl.derivatives, "derivative mode: analytic|fd");
  cmd->add_option("--output", fl.output, "output file (default: stdout)");
}

int cmd_run(const common_flags& fl, const std::string& method, double x0, double gamma) {
  const auto f = specd::make_builtin<double>(fl.objective);
  const auto m = specd::parse_bench_method(method);
  if (!m) throw specd::bad_parameter("unknown method: " + method);

  specd::bench_spec<double> spec;
  spec.objective = fl.objective;
  spec.iterations = fl.iters;
  spec.eta = fl.eta;
  spec.mesh = fl.mesh;
  spec.gamma_const = gamma;
  spec.derivatives = parse_derivatives(fl.derivatives);
  const auto trace = specd::run_bench_method(f, *m, spec, x0);

  const int rc = write_output(fl.output, specd::trace_csv(trace, f.min_value()));
  if (rc != 0) return rc;
  return trace.stop == specd::stop_reason::out_of_domain ? 2 : 0;
}

int cmd_bench(const common_flags& fl, const std::vector<std::string>& methods, int trials,
              double gamma, std::optional<double> x0) {
  specd::bench_spec<double> spec;
  spec.objective = fl.objective;
  spec.trials = trials;
  spec.iterations = fl.iters;
  spec.seed = fl.seed;
  spec.gamma_const = gamma;
  spec.eta = fl.eta;
  spec.mesh = fl.mesh;
  spec.derivatives = parse_derivatives(fl.derivatives);
  spec.x0_override = x0;
  if (!methods.empty()) {
    spec.methods.clear();
    for (const auto& name : methods) {
      const auto m = specd::parse_bench_method(name);
      if (!m) throw specd::bad_parameter("unknown method: " + name);
      spec.methods.push_back(*m);
    }
  }
  const auto table = specd::run_bench(spec);
  return write_output(fl.output, specd::bench_csv(table));
}

int cmd_verify(const common_flags& fl, int grid_n, bool planted) {
  specd::verify_options opt;
  opt.grid_n = grid_n;
  opt.seed = fl.seed;
  opt.mode = parse_derivatives(fl.derivatives);
  opt.mesh = fl.mesh;
  opt.planted_nonconvex = planted;
  const auto reports = specd::run_verification_suite<double>(opt);

  std::string text;
  bool all_passed = true;
  for (const auto& rep : reports) {
    text += rep.line();
    text += '\n';
    all_passed = all_passed && rep.passed;
  }
  const int rc = write_output(fl.output, text);
  if (rc != 0) return rc;
  return all_passed ? 0 : 3;
}

int cmd_list() {
  for (const auto& name : specd::builtin_names()) {
    std::cout << "objective " << name << "\n";
  }
  for (const specd::bench_method m : specd::all_bench_methods) {
    std::cout << "method " << specd::bench_method_name(m) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-dimensional nonsmooth convex optimization toolkit"};
  app.set_help_flag("--help", "print this help message and exit");
  app.require_subcommand(1);

  common_flags run_fl, bench_fl, verify_fl;
  std::string run_method;
  double run_x0 = 0;
  double run_gamma = 0.005;
  std::vector<std::string> bench_methods;
  int bench_trials = 20;
  double bench_gamma = 0.005;
  std::optional<double> bench_x0;
  int verify_grid = 201;
  bool verify_planted = false;

  CLI::App* run = app.add_subcommand("run", "one solver run, trace CSV out");
  add_common(run, run_fl, true);
  run->add_option("--method", run_method, "sm_const|sm_dimin|isgm|sgm_shor")->required();
  run->add_option("--x0", run_x0, "initial point")->required();
  run->add_option("--gamma", run_gamma, "constant step size (sm_const)");

  CLI::App* bench = app.add_subcommand("bench", "multi-trial averages, table CSV out");
  add_common(bench, bench_fl, true);
  bench->add_option("--method", bench_methods, "method subset (repeatable; default: all)");
  bench->add_option("--trials", bench_trials, "number of random initial points");
  bench->add_option("--gamma", bench_gamma, "constant step size (sm_const)");
  double bench_x0_value = 0;
  CLI::Option* bench_x0_opt =
      bench->add_option("--x0", bench_x0_value, "pin every trial to this initial point");

  CLI::App* verify = app.add_subcommand("verify", "run the full check suite");
  add_common(verify, verify_fl, false);
  verify->add_option("--grid", verify_grid, "grid resolution for the checks");
  verify->add_flag("--planted-nonconvex", verify_planted,
                   "inject a nonconvex objective that must fail the supporting-line check");

  CLI::App* list = app.add_subcommand("list", "print objective and method names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(run_fl, run_method, run_x0, run_gamma);
    if (bench->parsed()) {
      if (*bench_x0_opt) bench_x0 = bench_x0_value;
      return cmd_bench(bench_fl, bench_methods, bench_trials, bench_gamma, bench_x0);
    }
    if (verify->parsed()) return cmd_verify(verify_fl, verify_grid, verify_planted);
    if (list->parsed()) return cmd_list();
  } catch (const specd::error& e) {
    std::cerr << "specd: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
