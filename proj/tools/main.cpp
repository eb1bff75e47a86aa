// Benchmark harness for the splitting solvers: generate synthetic instances,
// run single solves with trace output, sweep benchmark grids, and verify the
// convergence identities and ergodic bounds.

#include "splitadmm/datagen.hpp"
#include "splitadmm/diagnostics.hpp"
#include "splitadmm/io.hpp"
#include "splitadmm/solvers.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;
using namespace splitadmm;

namespace {

constexpr int kExitConverged = 0;
constexpr int kExitMaxIter = 2;
constexpr int kExitNumericFailure = 3;
constexpr int kExitUsage = 64;

enum class Problem { Bp, Lvggms, Rpca };

struct GenOptions {
  std::string problem;
  std::uint64_t seed = 1;
  std::string out;
  // bp
  Index n = 300, p = 1000;
  double sparsity = 0.06;
  // lvggms
  Index lv_r = 3;
  double alpha1 = 0.005, alpha2 = 0.05;
  // rpca
  Index rows = 60, cols = 60, rank = 4;
  double sparse_frac = 0.05, sr = 0.8, noise = 0.0, tau_w = 0.0, delta = 1e-2;
};

Problem parse_problem(const std::string& name) {
  if (name == "bp") return Problem::Bp;
  if (name == "lvggms") return Problem::Lvggms;
  if (name == "rpca") return Problem::Rpca;
  throw CLI::ValidationError("--problem", "unknown problem kind: " + name);
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "multadmm") return Algorithm::MultiBlock;
  if (name == "psadmm") return Algorithm::PrimalSplit;
  if (name == "dsadmm") return Algorithm::DualSplit;
  throw CLI::ValidationError("--algo", "unknown algorithm: " + name +
                                           " (expected multadmm|psadmm|dsadmm)");
}

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::MultiBlock: return "multadmm";
    case Algorithm::PrimalSplit: return "psadmm";
    case Algorithm::DualSplit: return "dsadmm";
  }
  return "?";
}

double entrywise_l1(const Matrix& M) { return M.cwiseAbs().sum(); }

// Paper-tuned penalty presets per problem and algorithm; any --beta flag
// overrides them.
double beta_preset(Problem problem, Algorithm algo, const io::InstanceManifest& inst) {
  switch (problem) {
    case Problem::Bp: {
      const double b1 = inst.bp.b.lpNorm<1>();
      return algo == Algorithm::DualSplit ? 10.0 : 400.0 / b1;
    }
    case Problem::Lvggms:
      return algo == Algorithm::MultiBlock ? 0.1 : 0.01;
    case Problem::Rpca: {
      const double m1 = entrywise_l1(inst.rpca.M);
      if (algo == Algorithm::MultiBlock) return 0.002 / m1;
      if (algo == Algorithm::PrimalSplit) return 0.004 / m1;
      return 2.0 * m1;
    }
  }
  return 1.0;
}

struct SolveOptions {
  std::string instance_path;
  std::string algo = "multadmm";
  Index m = 0;        // 0 -> per-problem default
  std::string mode;   // "", "exact", "inexact"
  double beta = 0.0;  // 0 -> preset
  double tau_safety = 1.01;
  double tol = 0.0;   // 0 -> per-problem default
  int max_iter = 2000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "text";
  bool literal_svt = false;
};

struct PreparedSolve {
  SeparableProblem problem;
  SolverConfig config;
  Problem kind = Problem::Bp;
  Index m = 0;
};

PreparedSolve prepare(const io::InstanceManifest& manifest, const SolveOptions& opt) {
  PreparedSolve prep;
  const Algorithm algo = parse_algorithm(opt.algo);

  if (manifest.problem == "bp") {
    prep.kind = Problem::Bp;
    const Index p = manifest.bp.A.cols();
    prep.m = opt.m > 0 ? opt.m : (algo == Algorithm::MultiBlock ? p : 2);
    prep.problem = problems::bp_build(manifest.bp, prep.m);
    prep.config.stop.kind = StopKind::ResidualOnly;
    prep.config.stop.tolerance = opt.tol > 0.0 ? opt.tol : 1e-5;
    if (manifest.bp.has_planted() && manifest.bp.planted.norm() > 0.0) {
      prep.config.stop.kind = StopKind::RelativeErrorToReference;
      prep.config.stop.reference = manifest.bp.planted;
    }
    prep.config.mode = algo == Algorithm::MultiBlock ? SubproblemMode::Exact
                                                     : SubproblemMode::Inexact;
  } else if (manifest.problem == "lvggms") {
    prep.kind = Problem::Lvggms;
    prep.m = 3;
    prep.problem = problems::lvggms_build(manifest.lvggms, opt.literal_svt);
    prep.config.stop.kind = StopKind::LvggmsRule;
    prep.config.stop.tolerance = opt.tol > 0.0 ? opt.tol : 1e-5;
    prep.config.mode = SubproblemMode::Exact;
  } else if (manifest.problem == "rpca") {
    prep.kind = Problem::Rpca;
    prep.m = 3;
    prep.problem = problems::rpca_build(manifest.rpca);
    prep.config.stop.kind = StopKind::RpcaRule;
    prep.config.stop.tolerance = opt.tol > 0.0 ? opt.tol : 1e-3;
    prep.config.mode = SubproblemMode::Exact;
  } else {
    throw IoError("unsupported problem kind: " + manifest.problem);
  }
  if (prep.kind != Problem::Bp && opt.m > 0 && opt.m != 3) {
    throw ArgumentError("this problem always has 3 blocks");
  }

  prep.config.algorithm = algo;
  if (!opt.mode.empty()) {
    if (opt.mode != "exact" && opt.mode != "inexact") {
      throw CLI::ValidationError("--mode", "expected exact or inexact");
    }
    prep.config.mode = opt.mode == "exact" ? SubproblemMode::Exact : SubproblemMode::Inexact;
  }
  prep.config.beta = opt.beta > 0.0 ? opt.beta : beta_preset(prep.kind, algo, manifest);
  prep.config.tau_safety = opt.tau_safety;
  prep.config.max_iter = opt.max_iter;
  prep.config.seed = opt.seed;
  return prep;
}

struct Summary {
  std::string algo;
  Index m = 0;
  double tol = 0.0;
  long iters = 0;
  double objective = 0.0;
  double seconds = 0.0;
  double error = 0.0;
  Termination termination = Termination::MaxIterations;
};

Summary summarize(const PreparedSolve& prep, const SolveResult& result) {
  Summary s;
  s.algo = algorithm_name(prep.config.algorithm);
  s.m = prep.m;
  s.tol = prep.config.stop.tolerance;
  s.iters = static_cast<long>(result.report.records.size());
  if (!result.report.records.empty()) {
    const IterationRecord& last = result.report.records.back();
    s.objective = last.objective;
    s.seconds = last.elapsed_seconds;
    s.error = last.error;
  }
  s.termination = result.report.termination;
  return s;
}

void write_trace_csv(const fs::path& path, const ConvergenceReport& report) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write trace: " + path.string());
  out << "k,objective,residual,error,elapsed_seconds\n";
  for (const IterationRecord& rec : report.records) {
    out << rec.k << ',' << io::format_double(rec.objective) << ','
        << io::format_double(rec.residual) << ',' << io::format_double(rec.error) << ','
        << io::format_double(rec.elapsed_seconds) << '\n';
  }
}

std::string status_name(Termination t) {
  switch (t) {
    case Termination::Converged: return "converged";
    case Termination::MaxIterations: return "max-iter";
    case Termination::NumericFailure: return "failed";
  }
  return "?";
}

void print_summary_table(std::ostream& out, const std::vector<Summary>& rows,
                         const std::string& format) {
  if (format == "csv") {
    out << "algo,m,tol,iter,obj,time,error,status\n";
    for (const Summary& s : rows) {
      out << s.algo << ',' << s.m << ',' << io::format_double(s.tol) << ',' << s.iters
          << ',' << io::format_double(s.objective) << ',' << io::format_double(s.seconds)
          << ','
          << (s.termination == Termination::Converged ? io::format_double(s.error) : "~")
          << ',' << status_name(s.termination) << '\n';
    }
    return;
  }
  char line[160];
  std::snprintf(line, sizeof(line), "%-10s %6s %10s %8s %14s %10s %12s", "Method", "m",
                "tol", "Iter", "Obj", "Time", "Error");
  out << line << '\n';
  for (const Summary& s : rows) {
    char err[32];
    std::snprintf(err, sizeof(err), "%.3e", s.error);
    std::snprintf(line, sizeof(line), "%-10s %6lld %10.1e %8ld %14.6f %10.2f %12s",
                  s.algo.c_str(), static_cast<long long>(s.m), s.tol, s.iters, s.objective,
                  s.seconds, s.termination == Termination::Converged ? err : "~");
    out << line << '\n';
  }
}

int exit_code_for(Termination t) {
  switch (t) {
    case Termination::Converged: return kExitConverged;
    case Termination::MaxIterations: return kExitMaxIter;
    case Termination::NumericFailure: return kExitNumericFailure;
  }
  return kExitNumericFailure;
}

int cmd_gen(const GenOptions& opt, bool quiet = false) {
  fs::path manifest(opt.out);
  if (manifest.extension() != ".json") manifest += ".json";
  if (!manifest.parent_path().empty()) fs::create_directories(manifest.parent_path());
  datagen::Rng rng(opt.seed);

  switch (parse_problem(opt.problem)) {
    case Problem::Bp: {
      const auto inst = datagen::gen_bp(opt.n, opt.p, opt.sparsity, rng);
      io::write_bp_instance(manifest, inst, opt.seed);
      Index nnz = 0;
      for (Index i = 0; i < inst.planted.size(); ++i) {
        if (inst.planted[i] != 0.0) ++nnz;
      }
      if (!quiet) {
        std::printf("bp instance: n=%lld p=%lld nnz(x*)=%lld seed=%llu -> %s\n",
                    static_cast<long long>(opt.n), static_cast<long long>(opt.p),
                    static_cast<long long>(nnz), static_cast<unsigned long long>(opt.seed),
                    manifest.string().c_str());
      }
      break;
    }
    case Problem::Lvggms: {
      auto gen = datagen::gen_lvggms(opt.p, opt.lv_r, rng);
      gen.instance.alpha1 = opt.alpha1;
      gen.instance.alpha2 = opt.alpha2;
      io::write_lvggms_instance(manifest, gen.instance, opt.seed, &gen.theta_x,
                                &gen.low_rank);
      if (!quiet) {
        std::printf("lvggms instance: p=%lld r=%lld alpha1=%g alpha2=%g seed=%llu -> %s\n",
                    static_cast<long long>(opt.p), static_cast<long long>(opt.lv_r),
                    opt.alpha1, opt.alpha2, static_cast<unsigned long long>(opt.seed),
                    manifest.string().c_str());
      }
      break;
    }
    case Problem::Rpca: {
      auto inst = datagen::gen_rpca(opt.rows, opt.cols, opt.rank, opt.sparse_frac, opt.sr,
                                    opt.noise, rng);
      if (opt.tau_w > 0.0) inst.tau_w = opt.tau_w;
      inst.ball.radius = opt.delta;
      io::write_rpca_instance(manifest, inst, opt.seed);
      if (!quiet) {
        std::printf(
            "rpca instance: %lldx%lld rank=%lld sparse=%g |mask|=%zu seed=%llu -> %s\n",
            static_cast<long long>(opt.rows), static_cast<long long>(opt.cols),
            static_cast<long long>(opt.rank), opt.sparse_frac, inst.ball.mask.size(),
            static_cast<unsigned long long>(opt.seed), manifest.string().c_str());
      }
      break;
    }
  }
  return 0;
}

int cmd_solve(const SolveOptions& opt) {
  const io::InstanceManifest manifest = io::read_instance(opt.instance_path);
  const PreparedSolve prep = prepare(manifest, opt);

  RunHooks hooks;
  hooks.record_x_history = false;
  const SolveResult result = solve(prep.problem, prep.config, hooks);
  const Summary summary = summarize(prep, result);

  if (!opt.out.empty()) {
    fs::create_directories(opt.out);
    std::ostringstream name;
    name << "trace_" << summary.algo << "_m" << prep.m << ".csv";
    write_trace_csv(fs::path(opt.out) / name.str(), result.report);
    std::ofstream sf(fs::path(opt.out) / ("summary_" + summary.algo + ".csv"));
    print_summary_table(sf, {summary}, "csv");
  }
  print_summary_table(std::cout, {summary}, opt.format);
  return exit_code_for(result.report.termination);
}

struct BenchOptions {
  GenOptions gen;
  std::string algos = "multadmm,psadmm,dsadmm";
  std::string m_list;
  std::string tols = "1e-3,1e-5";
  int reps = 1;
  std::uint64_t seed_base = 1;
  int max_iter = 2000;
  double tau_safety = 1.01;
  double beta = 0.0;
  std::string out;
  std::string format = "text";
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> parts;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

int worker_count(std::size_t cells) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SPLITADMM_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) n = static_cast<unsigned>(parsed);
  }
  n = std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(cells)));
  return static_cast<int>(n);
}

struct BenchCell {
  std::string algo;
  Index m = 0;
  double tol = 0.0;
  double iters = 0.0, obj = 0.0, seconds = 0.0, error = 0.0;
  bool all_converged = true;
  bool failed = false;
};

int cmd_bench(const BenchOptions& opt) {
  const Problem kind = parse_problem(opt.gen.problem);
  const std::vector<std::string> algos = split_list(opt.algos);
  std::vector<Index> ms;
  for (const std::string& tok : split_list(opt.m_list)) {
    ms.push_back(static_cast<Index>(std::stoll(tok)));
  }
  if (ms.empty()) ms.push_back(0);
  std::vector<double> tols;
  for (const std::string& tok : split_list(opt.tols)) {
    tols.push_back(std::stod(tok));
  }
  if (opt.reps < 1) throw ArgumentError("bench: repetitions must be at least 1");

  struct CellSpec {
    std::string algo;
    Index m;
    double tol;
  };
  std::vector<CellSpec> specs;
  for (const std::string& algo : algos) {
    const bool splits_blocks = kind == Problem::Bp && algo != "multadmm";
    for (const Index m : splits_blocks ? ms : std::vector<Index>{0}) {
      for (const double tol : tols) {
        specs.push_back({algo, m, tol});
      }
    }
  }

  // one instance per repetition, shared across cells (matched seeds)
  std::vector<io::InstanceManifest> instances;
  const fs::path tmp =
      fs::temp_directory_path() / ("splitadmm-bench-" + std::to_string(::getpid()));
  fs::create_directories(tmp);
  for (int rep = 0; rep < opt.reps; ++rep) {
    GenOptions g = opt.gen;
    g.seed = opt.seed_base + static_cast<std::uint64_t>(rep);
    g.out = (tmp / ("rep" + std::to_string(rep) + ".json")).string();
    cmd_gen(g, /*quiet=*/true);
    instances.push_back(io::read_instance(g.out));
  }

  std::vector<BenchCell> cells(specs.size());
  std::atomic<std::size_t> next{0};
  auto run_cells = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      const CellSpec& spec = specs[i];
      BenchCell& cell = cells[i];
      cell.algo = spec.algo;
      cell.tol = spec.tol;
      for (int rep = 0; rep < opt.reps; ++rep) {
        SolveOptions so;
        so.algo = spec.algo;
        so.m = spec.m;
        so.tol = spec.tol;
        so.max_iter = opt.max_iter;
        so.tau_safety = opt.tau_safety;
        so.beta = opt.beta;
        so.seed = opt.seed_base + static_cast<std::uint64_t>(rep);
        const PreparedSolve prep = prepare(instances[static_cast<std::size_t>(rep)], so);
        cell.m = prep.m;
        RunHooks hooks;
        hooks.record_x_history = false;
        const SolveResult result = solve(prep.problem, prep.config, hooks);
        const Summary s = summarize(prep, result);
        cell.iters += static_cast<double>(s.iters) / opt.reps;
        cell.obj += s.objective / opt.reps;
        cell.seconds += s.seconds / opt.reps;
        cell.error += s.error / opt.reps;
        if (s.termination != Termination::Converged) cell.all_converged = false;
        if (s.termination == Termination::NumericFailure) cell.failed = true;
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < worker_count(specs.size()); ++w) {
    pool.emplace_back(run_cells);
  }
  for (auto& t : pool) {
    t.join();
  }
  fs::remove_all(tmp);

  std::ostringstream csv;
  csv << "algo,m,tol,mean_iter,mean_obj,mean_time,mean_error\n";
  for (const BenchCell& c : cells) {
    csv << c.algo << ',' << c.m << ',' << io::format_double(c.tol) << ','
        << io::format_double(c.iters) << ',' << io::format_double(c.obj) << ','
        << io::format_double(c.seconds) << ','
        << (c.failed ? "!" : (c.all_converged ? io::format_double(c.error) : "~")) << '\n';
  }
  if (!opt.out.empty()) {
    fs::create_directories(opt.out);
    std::ofstream f(fs::path(opt.out) / "bench.csv");
    f << csv.str();
  }
  if (opt.format == "csv") {
    std::cout << csv.str();
  } else {
    std::printf("%-10s %6s %10s %10s %14s %10s %12s\n", "Method", "m", "tol", "Iter", "Obj",
                "Time", "Error");
    for (const BenchCell& c : cells) {
      char err[32];
      std::snprintf(err, sizeof(err), "%.3e", c.error);
      std::printf("%-10s %6lld %10.1e %10.1f %14.6f %10.2f %12s\n", c.algo.c_str(),
                  static_cast<long long>(c.m), c.tol, c.iters, c.obj, c.seconds,
                  c.failed ? "!" : (c.all_converged ? err : "~"));
    }
  }
  return 0;
}

struct CheckOptions {
  SolveOptions solve;
  int window = 300;
  int ref_iters = 50000;
};

int cmd_check(const CheckOptions& opt) {
  const io::InstanceManifest manifest = io::read_instance(opt.solve.instance_path);
  PreparedSolve prep = prepare(manifest, opt.solve);

  if (prep.config.algorithm == Algorithm::MultiBlock) {
    std::printf("multadmm: ergodic bound and splitting identity checks are not applicable "
                "(they quantify the two splitting methods); nothing to verify\n");
    return 0;
  }

  // bounded-window run with full state recording
  SolverConfig window_config = prep.config;
  window_config.max_iter = opt.window;
  window_config.stop = StoppingRule{StopKind::ResidualOnly, 1e-300, Vector()};
  RunHooks hooks;
  hooks.record_state_history = true;
  const SolveResult run = solve(prep.problem, window_config, hooks);

  // exact-mode reference pushed far beyond the window
  SolverConfig ref_config = prep.config;
  ref_config.mode = SubproblemMode::Exact;
  ref_config.max_iter = opt.ref_iters;
  ref_config.stop = StoppingRule{StopKind::LvggmsRule, 1e-13, Vector()};
  RunHooks quiet;
  quiet.record_x_history = false;
  const SolveResult ref = solve(prep.problem, ref_config, quiet);

  const Index m = prep.problem.num_blocks();
  const std::vector<Vector> zeros_l(static_cast<std::size_t>(m),
                                    Vector::Zero(prep.problem.constraint_dim()));
  std::vector<Vector> x0;
  for (const auto& blk : prep.problem.blocks) {
    x0.emplace_back(Vector::Zero(blk.objective.dim));
  }

  bool clean = true;
  diagnostics::BoundCheckResult bound;
  if (prep.config.algorithm == Algorithm::PrimalSplit) {
    const std::vector<double> ptaus = prep.config.mode == SubproblemMode::Inexact
                                          ? resolve_taus(prep.problem, prep.config)
                                          : std::vector<double>();
    bound = diagnostics::check_primal_bound(run.report, prep.problem, ref.state.x, zeros_l,
                                            x0, prep.config.beta, prep.config.mode, ptaus);
    std::printf("primal ergodic bound: constant=%.6e violations=%zu over K=1..%ld\n",
                bound.constant, bound.violations.size(), bound.checked);
    clean = clean && bound.ok();

    double worst = 0.0;
    for (std::size_t k = 1; k < run.report.state_history.size(); ++k) {
      const IterateState& s = run.report.state_history[k];
      Vector total = Vector::Zero(prep.problem.constraint_dim());
      double max_norm = 0.0;
      for (const Vector& yi : s.y) {
        total += yi;
        max_norm = std::max(max_norm, yi.norm());
      }
      worst = std::max(worst, total.norm() / (1.0 + max_norm));
    }
    std::printf("splitting feasibility: max scaled |sum y_i| = %.3e (tolerance 1e-10)\n",
                worst);
    clean = clean && worst <= 1e-10;
  } else {
    const std::vector<double> taus = prep.config.mode == SubproblemMode::Inexact
                                         ? resolve_taus(prep.problem, prep.config)
                                         : std::vector<double>();
    bound = diagnostics::check_dual_bound(run.report, prep.problem, ref.state.x, zeros_l,
                                          zeros_l, x0, prep.config.beta, prep.config.mode,
                                          taus);
    std::printf("dual ergodic bound: constant=%.6e violations=%zu over K=1..%ld\n",
                bound.constant, bound.violations.size(), bound.checked);
    clean = clean && bound.ok();

    double worst = 0.0;
    for (std::size_t k = 1; k < run.report.state_history.size(); ++k) {
      const IterateState& s = run.report.state_history[k];
      for (Index i = 0; i < m; ++i) {
        const Vector Ax = prep.problem.blocks[static_cast<std::size_t>(i)].coupling.apply(
            s.x[static_cast<std::size_t>(i)]);
        worst = std::max(
            worst, (s.t[static_cast<std::size_t>(i)] + Ax).norm() / std::max(1.0, Ax.norm()));
      }
    }
    std::printf("multiplier identity t_i = -A_i x_i: max relative deviation = %.3e "
                "(tolerance 1e-9)\n",
                worst);
    clean = clean && worst <= 1e-9;

    if (prep.config.mode == SubproblemMode::Inexact) {
      const std::vector<double> taus2 = resolve_taus(prep.problem, prep.config);
      const auto trace = diagnostics::dual_split_lyapunov_trace(
          run.report, ref.state.x, ref.state.lambda_copies, taus2, prep.config.beta);
      const double slack = 1e-12 * (1.0 + trace.front());
      long bad = 0;
      for (std::size_t k = 1; k < trace.size(); ++k) {
        if (trace[k] > trace[k - 1] + slack) ++bad;
      }
      std::printf("lyapunov monotonicity: %ld increases out of %zu steps (slack %.3e)\n",
                  bad, trace.size() - 1, slack);
      clean = clean && bad == 0;
    }
  }

  if (!opt.solve.out.empty()) {
    fs::create_directories(opt.solve.out);
    std::ofstream f(fs::path(opt.solve.out) / "bound_check.csv");
    f << "K,gap,bound,violated\n";
    for (long k = 1; k <= bound.checked; ++k) {
      const std::size_t i = static_cast<std::size_t>(k - 1);
      bool violated = false;
      for (const auto& v : bound.violations) {
        if (v.K == k) violated = true;
      }
      f << k << ',' << io::format_double(bound.gaps[i]) << ','
        << io::format_double(bound.bounds[i]) << ',' << (violated ? 1 : 0) << '\n';
    }
  }

  std::printf("%s\n", clean ? "all checks passed" : "CHECK VIOLATIONS FOUND");
  return clean ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splitting-based solvers for multi-block separable convex programs"};
  app.require_subcommand(1);

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate a synthetic instance");
  gen->add_option("--problem", gen_opt.problem, "bp | lvggms | rpca")->required();
  gen->add_option("--seed", gen_opt.seed, "generator seed");
  gen->add_option("--out", gen_opt.out, "manifest path (.json)")->required();
  gen->add_option("--n", gen_opt.n, "bp: rows of A");
  gen->add_option("--p", gen_opt.p, "bp: columns of A / lvggms: observed dimension");
  gen->add_option("--sparsity", gen_opt.sparsity, "bp: planted support fraction");
  gen->add_option("--r", gen_opt.lv_r, "lvggms: latent dimension");
  gen->add_option("--alpha1", gen_opt.alpha1, "lvggms: l1 weight");
  gen->add_option("--alpha2", gen_opt.alpha2, "lvggms: trace weight");
  gen->add_option("--rows", gen_opt.rows, "rpca: rows");
  gen->add_option("--cols", gen_opt.cols, "rpca: cols");
  gen->add_option("--rank", gen_opt.rank, "rpca: planted rank");
  gen->add_option("--sparse-frac", gen_opt.sparse_frac, "rpca: sparse fraction");
  gen->add_option("--sr", gen_opt.sr, "rpca: sampling ratio");
  gen->add_option("--noise", gen_opt.noise, "rpca: noise stdev on observed entries");
  gen->add_option("--tauw", gen_opt.tau_w, "rpca: l1 weight (default 1/sqrt(rows))");
  gen->add_option("--delta", gen_opt.delta, "rpca: noise ball radius");

  SolveOptions solve_opt;
  CLI::App* sol = app.add_subcommand("solve", "run one solver on an instance");
  sol->add_option("instance", solve_opt.instance_path, "instance manifest")->required();
  sol->add_option("--algo", solve_opt.algo, "multadmm | psadmm | dsadmm");
  sol->add_option("--m", solve_opt.m, "block count (bp only)");
  sol->add_option("--mode", solve_opt.mode, "exact | inexact");
  sol->add_option("--beta", solve_opt.beta, "penalty parameter (default: preset)");
  sol->add_option("--tau-safety", solve_opt.tau_safety, "multiplier on the tau bound");
  sol->add_option("--tol", solve_opt.tol, "stopping tolerance");
  sol->add_option("--max-iter", solve_opt.max_iter, "iteration cap");
  sol->add_option("--seed", solve_opt.seed, "seed recorded in the config");
  sol->add_option("--out", solve_opt.out, "directory for trace/summary CSV");
  sol->add_option("--format", solve_opt.format, "text | csv");
  sol->add_flag("--literal-svt-l", solve_opt.literal_svt,
                "lvggms: plain singular value thresholding for the L update");

  BenchOptions bench_opt;
  CLI::App* bench = app.add_subcommand("bench", "sweep a benchmark grid");
  bench->add_option("--problem", bench_opt.gen.problem, "bp | lvggms | rpca")->required();
  bench->add_option("--n", bench_opt.gen.n, "bp rows");
  bench->add_option("--p", bench_opt.gen.p, "bp cols / lvggms observed dimension");
  bench->add_option("--sparsity", bench_opt.gen.sparsity, "bp sparsity");
  bench->add_option("--r", bench_opt.gen.lv_r, "lvggms latent dimension");
  bench->add_option("--alpha1", bench_opt.gen.alpha1, "lvggms l1 weight");
  bench->add_option("--alpha2", bench_opt.gen.alpha2, "lvggms trace weight");
  bench->add_option("--rows", bench_opt.gen.rows, "rpca rows");
  bench->add_option("--cols", bench_opt.gen.cols, "rpca cols");
  bench->add_option("--rank", bench_opt.gen.rank, "rpca rank");
  bench->add_option("--sparse-frac", bench_opt.gen.sparse_frac, "rpca sparse fraction");
  bench->add_option("--sr", bench_opt.gen.sr, "rpca sampling ratio");
  bench->add_option("--noise", bench_opt.gen.noise, "rpca noise stdev");
  bench->add_option("--tauw", bench_opt.gen.tau_w, "rpca l1 weight");
  bench->add_option("--delta", bench_opt.gen.delta, "rpca ball radius");
  bench->add_option("--algos", bench_opt.algos, "comma list of algorithms");
  bench->add_option("--m", bench_opt.m_list, "comma list of block counts (bp)");
  bench->add_option("--tols", bench_opt.tols, "comma list of tolerances");
  bench->add_option("--reps", bench_opt.reps, "repetitions per cell");
  bench->add_option("--seed", bench_opt.seed_base, "base seed (repetition r uses seed+r)");
  bench->add_option("--max-iter", bench_opt.max_iter, "iteration cap");
  bench->add_option("--tau-safety", bench_opt.tau_safety, "multiplier on the tau bound");
  bench->add_option("--beta", bench_opt.beta, "penalty override for every cell");
  bench->add_option("--out", bench_opt.out, "directory for bench.csv");
  bench->add_option("--format", bench_opt.format, "text | csv");

  CheckOptions check_opt;
  CLI::App* check = app.add_subcommand("check", "verify bounds and identities on a run");
  check->add_option("instance", check_opt.solve.instance_path, "instance manifest")
      ->required();
  check->add_option("--algo", check_opt.solve.algo, "multadmm | psadmm | dsadmm");
  check->add_option("--m", check_opt.solve.m, "block count (bp only)");
  check->add_option("--mode", check_opt.solve.mode, "exact | inexact");
  check->add_option("--beta", check_opt.solve.beta, "penalty parameter");
  check->add_option("--tau-safety", check_opt.solve.tau_safety, "tau bound multiplier");
  check->add_option("--k-window", check_opt.window, "bound-check window length");
  check->add_option("--ref-iters", check_opt.ref_iters, "reference run iteration cap");
  check->add_option("--out", check_opt.solve.out, "directory for bound_check.csv");

  try {
    app.parse(argc, argv);
    if (gen->parsed()) return cmd_gen(gen_opt);
    if (sol->parsed()) return cmd_solve(solve_opt);
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (check->parsed()) return cmd_check(check_opt);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  } catch (const splitadmm::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
