// xsmoo: solve, exact reference, scoring, benchmark sweeps and format conversion.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "xsmoo/dimacs.hpp"
#include "xsmoo/errors.hpp"
#include "xsmoo/exact.hpp"
#include "xsmoo/hashing.hpp"
#include "xsmoo/io.hpp"
#include "xsmoo/metrics.hpp"
#include "xsmoo/sat.hpp"
#include "xsmoo/scenarios.hpp"
#include "xsmoo/solver.hpp"

namespace {

using namespace xsmoo;

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kInput = 3,
  kLimit = 4,
  kAllIndeterminate = 5,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string default_backend() {
  const char* env = std::getenv("XSMOO_BACKEND");
  return env && *env ? env : "cdcl";
}

// Writes to `path`, or stdout for "-".
void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  write_file(path, text);
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

Point to_point(const std::vector<Rational>& scores, const std::optional<Rational>& cost) {
  Point p;
  for (const Rational& v : scores) p.push_back(to_double(v));
  if (cost) p.push_back(-to_double(*cost));
  return p;
}

// Objective values of each witness, exactly, in metric space.
PointSet witness_points(const SmooProblem& problem, const Frontier& f) {
  PointSet out;
  for (const FrontierEntry& e : f) {
    std::optional<Rational> cost;
    if (problem.has_costs()) cost = exact_cost(problem, e.x);
    out.push_back(to_point(exact_objectives(problem, e.x), cost));
  }
  return out;
}

PointSet frontier_points(const Frontier& f) {
  PointSet out;
  for (const FrontierEntry& e : f) out.push_back(to_point(e.p, e.cost));
  return out;
}

struct SolveFlags {
  std::string instance;
  double delta = 0.2;
  std::optional<int> epsilon;
  std::optional<double> gamma;
  std::optional<int> T;
  std::optional<int> b;
  std::uint64_t seed = 0;
  std::string backend = default_backend();
  std::string oracle = "decomposed";
  double time_limit = 0;
  std::size_t jobs = 0;
  std::string out = "-";
  std::string report;
  bool reproducible = false;
};

SolveConfig config_from(const SolveFlags& f) {
  SolveConfig cfg;
  cfg.delta = f.delta;
  if (f.epsilon) cfg.epsilon = *f.epsilon;
  cfg.gamma = f.gamma;
  cfg.T = f.T;
  cfg.b = f.b;
  cfg.seed = f.seed;
  cfg.backend = f.backend;
  cfg.strategy = parse_strategy(f.oracle);
  cfg.time_limit_s = f.time_limit;
  cfg.jobs = f.jobs;
  return cfg;
}

std::pair<Frontier, RunReport> run_solver(const SmooProblem& problem, const SolveFlags& f) {
  if (f.gamma && (f.T || f.b)) throw UsageError("--gamma cannot be combined with --T/--b");
  if (problem.is_weighted()) {
    if (f.epsilon && *f.epsilon != 3) throw UsageError("weighted instances always run with --epsilon 3");
    if (!f.gamma && !(f.T && f.b)) throw UsageError("weighted instances need --gamma or both --T and --b");
    return w_xor_smoo(problem, config_from(f));
  }
  if (f.gamma || f.T || f.b) throw UsageError("--gamma/--T/--b apply to weighted instances only");
  return xor_smoo(problem, config_from(f));
}

int cmd_solve(const SolveFlags& f) {
  const SmooProblem problem = load_problem(f.instance);
  auto [frontier, report] = run_solver(problem, f);
  emit(f.out, frontier_to_csv(frontier, problem.objective_count()));
  if (!f.report.empty()) emit(f.report, report_to_json(report, !f.reproducible));
  std::cerr << "xsmoo: " << frontier.size() << " frontier entries; " << report.sat << " sat, " << report.unsat
            << " unsat, " << report.indeterminate << " indeterminate of " << report.grid_size << " grid points\n";
  if (report.all_indeterminate) {
    std::cerr << "xsmoo: every oracle call was indeterminate (time limit too small?)\n";
    return kAllIndeterminate;
  }
  return kOk;
}

struct ExactFlags {
  std::string instance;
  std::string pareto = "-";
  std::string threshold;
  std::vector<std::string> compare;
};

std::string metrics_table(const MetricsReport& m) {
  std::ostringstream ss;
  ss << "metric,value\n";
  ss << "gd," << fmt(m.gd) << "\n";
  ss << "igd," << fmt(m.igd) << "\n";
  ss << "hv," << fmt(m.hv) << "\n";
  ss << "hv_std_error," << fmt(m.hv_std_error) << "\n";
  ss << "sp," << fmt(m.sp) << "\n";
  ss << "degenerate," << (m.degenerate ? 1 : 0) << "\n";
  return ss.str();
}

PointSet read_csv_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_points_csv(in);
}

int cmd_exact(const ExactFlags& f) {
  if (!f.compare.empty()) {
    if (f.compare.size() < 2) throw UsageError("--compare needs a candidate CSV and at least one reference CSV");
    const PointSet cand = read_csv_file(f.compare[0]);
    std::vector<PointSet> refs;
    for (std::size_t i = 1; i < f.compare.size(); ++i) refs.push_back(read_csv_file(f.compare[i]));
    std::cout << metrics_table(compare(cand, refs));
    return kOk;
  }
  if (f.instance.empty()) throw UsageError("exact needs an instance file or --compare");
  const SmooProblem problem = load_problem(f.instance);
  const Frontier pareto = exact_pareto(problem);
  emit(f.pareto, frontier_to_csv(pareto, problem.objective_count()));
  if (!f.threshold.empty()) {
    emit(f.threshold, frontier_to_csv(exact_threshold_frontier(problem), problem.objective_count()));
  }
  return kOk;
}

struct BenchFlags {
  std::string family = "supply";
  std::size_t reps = 5;
  std::uint64_t master_seed = 0;
  GeneratorParams gen;
  SolveFlags solve;
  int weight_scale = 1000;
  std::string out = "-";
  std::string runs;
};

double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0;
  const double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

int cmd_bench(BenchFlags f) {
  if (f.reps == 0) throw UsageError("--reps must be at least 1");
  const Family family = f.family == "road" ? Family::Road : Family::Supply;
  if (f.family != "road" && f.family != "supply") throw UsageError("--family is supply or road");
  std::ostringstream runs;
  runs << "rep,instance_seed,solver_seed,decisions,frontier_size,reference_size,gd,igd,hv,sp,sat,unsat,indeterminate\n";
  std::map<std::string, std::vector<double>> cols;
  const char* names[] = {"gd", "igd", "hv", "sp", "frontier_size"};
  for (std::size_t r = 0; r < f.reps; ++r) {
    const std::uint64_t inst_seed = split_seed(f.master_seed, 2 * r);
    const std::uint64_t solver_seed = split_seed(f.master_seed, 2 * r + 1);
    const GeneratedInstance gi = generate_random_instance(family, f.gen, inst_seed);
    const SmooProblem problem = family == Family::Supply ? encode_supply_chain(gi.network).problem
                                                         : encode_road_network(gi.network, *gi.events, f.weight_scale);
    SolveFlags sf = f.solve;
    sf.seed = solver_seed;
    auto [frontier, report] = run_solver(problem, sf);
    const PointSet cand = witness_points(problem, frontier);
    const PointSet ref = frontier_points(exact_pareto(problem));
    MetricsReport m;
    m.gd = m.igd = m.hv = m.sp = std::nan("");
    if (!cand.empty() && !ref.empty()) m = compare(cand, {ref});
    runs << r << ',' << inst_seed << ',' << solver_seed << ',' << problem.decision_count() << ',' << frontier.size()
         << ',' << ref.size() << ',' << fmt(m.gd) << ',' << fmt(m.igd) << ',' << fmt(m.hv) << ',' << fmt(m.sp) << ','
         << report.sat << ',' << report.unsat << ',' << report.indeterminate << "\n";
    const double vals[] = {m.gd, m.igd, m.hv, m.sp, static_cast<double>(frontier.size())};
    for (int i = 0; i < 5; ++i) {
      if (!std::isnan(vals[i])) cols[names[i]].push_back(vals[i]);
    }
  }
  std::ostringstream summary;
  summary << "metric,mean,std,count\n";
  for (const char* n : names) {
    const auto& v = cols[n];
    summary << n << ',' << (v.empty() ? "nan" : fmt(mean_of(v))) << ',' << (v.empty() ? "nan" : fmt(stddev_of(v)))
            << ',' << v.size() << "\n";
  }
  emit(f.out, summary.str());
  if (!f.runs.empty()) emit(f.runs, runs.str());
  return kOk;
}

struct GenerateFlags {
  std::string family = "supply";
  std::uint64_t seed = 0;
  GeneratorParams gen;
  int weight_scale = 1000;
  std::string out = "-";
  std::string network_out;
  std::string events_out;
};

int cmd_generate(const GenerateFlags& f) {
  if (f.family != "road" && f.family != "supply") throw UsageError("--family is supply or road");
  const Family family = f.family == "road" ? Family::Road : Family::Supply;
  const GeneratedInstance gi = generate_random_instance(family, f.gen, f.seed);
  const SmooProblem problem = family == Family::Supply ? encode_supply_chain(gi.network).problem
                                                       : encode_road_network(gi.network, *gi.events, f.weight_scale);
  emit(f.out, problem_to_json(problem));
  if (!f.network_out.empty()) emit(f.network_out, network_to_json(gi.network));
  if (!f.events_out.empty() && gi.events) emit(f.events_out, events_to_json(*gi.events));
  return kOk;
}

struct ConvertFlags {
  std::string tsplib;
  std::string network;
  std::string events;
  std::string instance;
  int weight_scale = 1000;
  std::optional<std::size_t> dimacs_objective;
  std::string out = "-";
};

int cmd_convert(const ConvertFlags& f) {
  const int sources = !f.tsplib.empty() + !f.network.empty() + !f.instance.empty();
  if (sources != 1) throw UsageError("convert takes exactly one of --tsplib, --network, --instance");
  if (!f.tsplib.empty()) {
    std::istringstream in(read_file(f.tsplib));
    emit(f.out, problem_to_json(encode_supply_chain(read_tsplib(in)).problem));
    return kOk;
  }
  if (!f.network.empty()) {
    const NetworkSpec net = network_from_json(read_file(f.network));
    if (f.events.empty()) {
      emit(f.out, problem_to_json(encode_supply_chain(net).problem));
    } else {
      emit(f.out, problem_to_json(encode_road_network(net, events_from_json(read_file(f.events)), f.weight_scale)));
    }
    return kOk;
  }
  const SmooProblem problem = load_problem(f.instance);
  if (!f.dimacs_objective) throw UsageError("--instance needs --dimacs-objective");
  if (*f.dimacs_objective >= problem.objective_count()) throw UsageError("objective index out of range");
  emit(f.out, to_dimacs(problem.objective_formula(*f.dimacs_objective), "objective " + std::to_string(*f.dimacs_objective)));
  return kOk;
}

void add_solver_flags(CLI::App* app, SolveFlags& f) {
  app->add_option("--delta", f.delta, "Failure budget delta")->check(CLI::Range(1e-9, 0.999999));
  auto* eps = app->add_option("--epsilon", f.epsilon, "Approximation exponent (factor 2^epsilon)")->check(CLI::Range(2, 30));
  auto* gamma = app->add_option("--gamma", f.gamma, "Target factor for weighted instances")->check(CLI::PositiveNumber);
  auto* t = app->add_option("--T", f.T, "Pseudo-problem copies")->check(CLI::Range(1, 64));
  auto* b = app->add_option("--b", f.b, "Counter bits per copy")->check(CLI::Range(0, 30));
  gamma->excludes(t)->excludes(b);
  (void)eps;
  app->add_option("--backend", f.backend, "Decision procedure (env XSMOO_BACKEND)")
      ->check(CLI::IsMember(backend_names()));
  app->add_option("--oracle", f.oracle, "Oracle strategy")->check(CLI::IsMember({"decomposed", "monolithic"}));
  app->add_option("--time-limit", f.time_limit, "Seconds per oracle call, 0 = none")->check(CLI::NonNegativeNumber);
  app->add_option("--jobs", f.jobs, "Worker threads, 0 = available parallelism");
}

void add_generator_flags(CLI::App* app, GeneratorParams& g, int& weight_scale) {
  app->add_option("--nodes", g.nodes, "Supply: node count");
  app->add_option("--degree", g.degree, "Supply: out-edges per node");
  app->add_option("--rows", g.rows, "Road: grid rows");
  app->add_option("--cols", g.cols, "Road: grid columns");
  app->add_option("--events", g.events, "Road: disruption events");
  app->add_option("--regimes", g.regimes, "Road: regime variables");
  app->add_option("--weight-scale", weight_scale, "Road: integer table scale, 0 keeps exact rationals")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xsmoo: approximate Pareto frontiers for model-counting objectives"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "xsmoo 0.1.0");

  SolveFlags solve;
  auto* sc = app.add_subcommand("solve", "Run the XOR-hashing frontier search on an instance");
  sc->add_option("instance", solve.instance, "Instance JSON")->required();
  add_solver_flags(sc, solve);
  sc->add_option("--seed", solve.seed, "Master seed");
  sc->add_option("--out", solve.out, "Frontier CSV path, - for stdout");
  sc->add_option("--report", solve.report, "Run-report JSON path");
  sc->add_flag("--reproducible", solve.reproducible, "Leave wall time out of the report");

  ExactFlags exact;
  auto* ec = app.add_subcommand("exact", "Exhaustive Pareto and threshold frontiers, or metric comparison");
  ec->add_option("instance", exact.instance, "Instance JSON");
  ec->add_option("--pareto", exact.pareto, "Exact Pareto CSV path, - for stdout");
  ec->add_option("--threshold", exact.threshold, "Exact threshold-frontier CSV path");
  ec->add_option("--compare", exact.compare, "CANDIDATE.csv REFERENCE.csv [...]: print GD/IGD/HV/SP")
      ->expected(2, 64);

  BenchFlags bench;
  auto* bc = app.add_subcommand("bench", "Seeded sweep: solver against the exact reference");
  bc->add_option("--family", bench.family, "supply or road");
  bc->add_option("--reps", bench.reps, "Repetitions");
  bc->add_option("--seed", bench.master_seed, "Master seed");
  add_generator_flags(bc, bench.gen, bench.weight_scale);
  add_solver_flags(bc, bench.solve);
  bc->add_option("--out", bench.out, "Summary CSV path, - for stdout");
  bc->add_option("--runs", bench.runs, "Per-repetition CSV path");

  GenerateFlags gen;
  auto* gc = app.add_subcommand("generate", "Write a seeded random instance");
  gc->add_option("--family", gen.family, "supply or road");
  gc->add_option("--seed", gen.seed, "Seed");
  add_generator_flags(gc, gen.gen, gen.weight_scale);
  gc->add_option("--out", gen.out, "Instance JSON path, - for stdout");
  gc->add_option("--network-out", gen.network_out, "Also write the network JSON");
  gc->add_option("--events-out", gen.events_out, "Also write the event-model JSON (road)");

  ConvertFlags conv;
  auto* cc = app.add_subcommand("convert", "Build instances from TSPLIB or network JSON; export DIMACS");
  cc->add_option("--tsplib", conv.tsplib, "TSPLIB file with NODE_COORD_SECTION (supply instance)");
  cc->add_option("--network", conv.network, "Network JSON (supply, or road with --events)");
  cc->add_option("--events", conv.events, "Event-model JSON");
  cc->add_option("--instance", conv.instance, "Instance JSON to export");
  cc->add_option("--dimacs-objective", conv.dimacs_objective, "Objective whose formula is written as DIMACS");
  cc->add_option("--weight-scale", conv.weight_scale, "Integer table scale, 0 keeps exact rationals")
      ->check(CLI::NonNegativeNumber);
  cc->add_option("--out", conv.out, "Output path, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sc) return cmd_solve(solve);
    if (*ec) return cmd_exact(exact);
    if (*bc) return cmd_bench(bench);
    if (*gc) return cmd_generate(gen);
    if (*cc) return cmd_convert(conv);
  } catch (const UsageError& e) {
    std::cerr << "xsmoo: usage: " << e.what() << "\n";
    return kUsage;
  } catch (const LimitExceeded& e) {
    std::cerr << "xsmoo: limit: " << e.what() << "\n";
    return kLimit;
  } catch (const ParseError& e) {
    std::cerr << "xsmoo: input: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "xsmoo: input: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    // unreadable files land here too
    std::cerr << "xsmoo: error: " << e.what() << "\n";
    return std::string(e.what()).rfind("cannot ", 0) == 0 ? kInput : kInternal;
  }
  return kInternal;
}
