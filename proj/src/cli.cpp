#include "streampack/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "streampack/error.hpp"
#include "streampack/estimator.hpp"
#include "streampack/gk_summary.hpp"
#include "streampack/kernels.hpp"
#include "streampack/sched_round.hpp"
#include "streampack/streams.hpp"
#include "streampack/vbp.hpp"
#include "streampack/vsched.hpp"

namespace streampack::cli {

namespace {

using json = nlohmann::json;

json memory_json(const MemoryReport& m) {
  return {{"stored_entries", m.stored_entries}, {"peak_entries", m.peak_entries}, {"stream_length", m.stream_length}};
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RoundingMode parse_mode(const std::string& s) {
  if (s == "simple") return RoundingMode::Simple;
  if (s == "geometric") return RoundingMode::Geometric;
  throw ConfigError("unknown rounding mode '" + s + "'");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv)) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
    throw ConfigError(std::string(kSeedEnv) + " is not an unsigned integer");
  }
  return 1;
}

json bin_estimate_json(const BinEstimate& e) {
  return {{"bins", e.bins},
          {"regime", std::string(case_name(e.regime))},
          {"solution_bins", e.solution_bins},
          {"free_space", e.free_space},
          {"small_total", e.small_total},
          {"overflow", e.overflow},
          {"sigma", e.sigma},
          {"k", e.k},
          {"epsilon", e.epsilon},
          {"solver", std::string(solver_name(e.solver_used))},
          {"solver_converged", e.solver_converged}};
}

struct Options {
  std::string file = "-";
  double epsilon = 0.1;
  double delta = 0.01;
  std::string mode = "geometric";
  std::string solver = "gg";
  std::string variant = "linf";
  std::size_t machines = 2;
  std::optional<double> gamma;
  std::optional<std::uint64_t> seed;
  std::size_t exact_limit = 14;
  std::vector<double> queries;
  double q = 0.6;
  std::string kind = "uniform";
  std::string order = "descending";
  std::string output;
  GenParams gen;
};

json cmd_bp_estimate(const Options& o) {
  const Solver solver = parse_solver(o.solver);
  BinPackingEstimator est(o.epsilon, parse_mode(o.mode));
  const auto items = parse_scalar_stream(read_source(o.file), ScalarDomain::UnitInterval);
  est.process(items);
  json r = bin_estimate_json(est.finalize(solver));
  r["items"] = est.items_seen();
  r["big_items"] = est.rounder().items();
  r["small_items"] = est.small_items();
  r["mode"] = o.mode;
  return {{"parameters", {{"epsilon", o.epsilon}, {"mode", o.mode}, {"solver", o.solver}}},
          {"result", r},
          {"memory", memory_json(est.memory())}};
}

json cmd_vbp_estimate(const Options& o) {
  const Solver solver = parse_solver(o.solver);
  const RoundingMode mode = parse_mode(o.mode);
  if (o.variant != "linf" && o.variant != "groupsplit") throw ConfigError("unknown variant '" + o.variant + "'");
  if (!(o.epsilon > 0.0 && o.epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  const auto items = parse_vector_stream(read_source(o.file));
  if (items.empty()) throw InputError("empty vector stream");
  const std::size_t d = items.front().size();
  VectorBinEstimate e;
  if (o.variant == "linf") {
    VectorBinPackingEstimator est(d, o.epsilon, mode);
    for (const auto& v : items) est.process(v);
    e = est.finalize(solver);
  } else {
    GroupSplitEstimator est(d, o.epsilon, mode);
    for (const auto& v : items) est.process(v);
    e = est.finalize(solver);
  }
  json r = bin_estimate_json(e.scalar);
  r["bins"] = e.bins;
  r["items"] = e.items;
  r["zero_items"] = e.zero_items;
  r["dimension"] = d;
  r["scalar_epsilon"] = e.scalar_epsilon;
  if (!e.group_bins.empty()) r["group_bins"] = e.group_bins;
  return {{"parameters", {{"epsilon", o.epsilon}, {"variant", o.variant}, {"mode", o.mode}, {"solver", o.solver}}},
          {"result", r},
          {"memory", memory_json(e.memory)}};
}

json cmd_vsched(const Options& o) {
  if (!(o.epsilon > 0.0 && o.epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (o.machines == 0) throw ConfigError("machine count must be at least 1");
  const auto items = parse_vector_stream(read_source(o.file));
  if (items.empty()) throw InputError("empty vector stream");
  const std::size_t d = items.front().size();
  ContainerState state(o.machines, d, o.epsilon, o.gamma);
  for (const auto& v : items) state.process_job(v);
  const VsSummary s = state.summarize();
  const auto jobs = s.jobs();

  json r;
  r["machines"] = s.m;
  r["dimension"] = s.d;
  r["epsilon"] = s.epsilon;
  r["gamma"] = s.gamma;
  r["scale"] = s.scale();
  r["loads"] = s.loads;
  r["container_loads"] = s.container_loads;
  r["big_jobs"] = s.big_jobs.size();
  r["containers"] = s.containers.size();
  r["summary_jobs"] = jobs.size();
  r["summary_bound"] = static_cast<double>(d * s.m) / s.gamma + 1.0;
  const VsMakespan ms = summary_makespan(s, o.exact_limit);
  r["makespan_greedy"] = ms.greedy;
  r["makespan_exact"] = ms.exact ? json(ms.value) : json(nullptr);
  r["estimate"] = ms.value;
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();
  json placement;
  try {
    const Placement p = place_containers(s.normalized_containers(), s.m, s.epsilon, s.gamma, seed);
    placement = {{"met_bound", true}, {"seed", p.seed}, {"attempts", p.attempts}, {"worst_excess", p.worst_excess},
                 {"overflowed", p.overflowed}, {"bound", p.bound}};
  } catch (const PlacementError& e) {
    const Placement& p = e.best();
    placement = {{"met_bound", false}, {"seed", p.seed}, {"attempts", p.attempts}, {"worst_excess", p.worst_excess},
                 {"overflowed", p.overflowed}, {"bound", p.bound}};
  }
  r["placement"] = placement;
  json params = {{"machines", o.machines}, {"epsilon", o.epsilon}, {"seed", seed}, {"exact_limit", o.exact_limit}};
  params["gamma"] = o.gamma ? json(*o.gamma) : json(nullptr);
  return {{"parameters", params}, {"result", r}, {"memory", memory_json(state.memory())}};
}

json cmd_vsched_round(const Options& o) {
  if (!(o.epsilon > 0.0 && o.epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0, 1]");
  if (o.machines == 0) throw ConfigError("machine count must be at least 1");
  const auto items = parse_vector_stream(read_source(o.file));
  if (items.empty()) throw InputError("empty vector stream");
  VectorTypeSummary s(items.front().size(), o.epsilon);
  for (const auto& v : items) s.process(v);
  const auto rebuilt = s.reconstruct();
  json r;
  r["dimension"] = s.dimension();
  r["delta"] = s.delta();
  r["p_max"] = s.p_max();
  r["big_types"] = s.big_types().size();
  r["small_types"] = s.small_types().size();
  r["big_type_bound"] = s.big_type_bound();
  r["zero_jobs"] = s.zero_jobs();
  r["reconstructed_jobs"] = rebuilt.size();
  r["makespan_greedy"] = greedy_min_makespan(rebuilt, o.machines).makespan;
  if (rebuilt.size() <= o.exact_limit) {
    r["estimate"] = s.estimate(o.machines, o.exact_limit);
  } else {
    r["estimate"] = nullptr;
  }
  return {{"parameters", {{"machines", o.machines}, {"epsilon", o.epsilon}, {"exact_limit", o.exact_limit}}},
          {"result", r},
          {"memory", memory_json(s.memory())}};
}

json cmd_msched(const Options& o) {
  if (o.machines == 0) throw ConfigError("machine count must be at least 1");
  ScalarSchedSummary s(o.epsilon);
  const auto items = parse_scalar_stream(read_source(o.file), ScalarDomain::Positive);
  for (double p : items) s.process(p);
  json r;
  r["estimate"] = s.estimate(o.machines);
  r["k"] = s.k();
  r["q"] = s.q();
  r["p_max"] = s.p_max();
  r["counters"] = s.counters().size();
  r["small_volume"] = s.small_volume();
  r["rounded_big_jobs"] = s.rounded_big_jobs().size();
  r["jobs"] = s.jobs_seen();
  return {{"parameters", {{"machines", o.machines}, {"epsilon", o.epsilon}}},
          {"result", r},
          {"memory", memory_json(s.memory())}};
}

json cmd_quantile(const Options& o) {
  GKSummary gk(o.delta);
  for (double phi : o.queries)
    if (!(phi >= 0.0 && phi <= 1.0)) throw ConfigError("quantile queries must lie in [0, 1]");
  const auto items = parse_scalar_stream(read_source(o.file));
  MemoryAccountant acc;
  for (double x : items) {
    gk.insert(x);
    acc.observe(static_cast<std::int64_t>(gk.size()));
  }
  json answers = json::array();
  for (double phi : o.queries) answers.push_back({{"phi", phi}, {"value", gk.query(phi)}});
  json r = {{"n", gk.count()}, {"tuples", gk.size()}, {"band", gk.band()}, {"answers", answers}};
  return {{"parameters", {{"delta", o.delta}, {"queries", o.queries}}}, {"result", r}, {"memory", memory_json(acc.report())}};
}

json cmd_rankdemo(const Options& o) {
  const Solver solver = parse_solver(o.solver);
  const RoundingMode mode = parse_mode(o.mode);
  if (!(o.epsilon > 0.0 && o.epsilon <= 1.0 / 3.0)) throw ConfigError("epsilon must lie in (0, 1/3]");
  const auto values = parse_scalar_stream(read_source(o.file));
  const RankEstimate est = rank_reduction_demo(values, o.q, o.epsilon, mode, solver);
  const auto true_rank = std::count_if(values.begin(), values.end(), [&](double v) { return v > o.q; });
  json r = {{"rank", est.rank}, {"bins", est.bins}, {"n", est.n}, {"true_rank", true_rank},
            {"error_bound", 4.0 * o.epsilon * static_cast<double>(values.size())}};
  MemoryReport mem;
  mem.stream_length = 4 * est.n;
  return {{"parameters", {{"q", o.q}, {"epsilon", o.epsilon}, {"mode", o.mode}, {"solver", o.solver}}},
          {"result", r},
          {"memory", memory_json(mem)}};
}

std::optional<json> cmd_gen(Options o, std::ostream& out) {
  const StreamKind kind = parse_kind(o.kind);
  o.gen.order = parse_ordering(o.order);
  o.gen.q = o.q;
  if (o.gamma) o.gen.gamma = *o.gamma;
  o.gen.machines = o.machines;
  const std::uint64_t seed = o.seed ? *o.seed : default_seed();
  const std::string text = generate(kind, o.gen, seed);
  if (o.output.empty()) {
    out << text;
    return std::nullopt;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InputError("cannot write '" + o.output + "'");
  f << text;
  const auto lines = std::count(text.begin(), text.end(), '\n');
  return json{{"parameters", {{"kind", o.kind}, {"seed", seed}}}, {"result", {{"path", o.output}, {"lines", lines}}}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Streaming summaries for bin packing and scheduling", "streampack"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", o.file, "input file, - for stdin")->required(); };
  auto add_eps = [&](CLI::App* sub) { sub->add_option("--epsilon,-e", o.epsilon, "precision")->required(); };

  auto* bp = app.add_subcommand("bp-estimate", "estimate the optimal number of bins");
  add_eps(bp);
  bp->add_option("--mode", o.mode, "simple or geometric");
  bp->add_option("--solver", o.solver, "ffd, gg or exact");
  add_file(bp);

  auto* vbp = app.add_subcommand("vbp-estimate", "vector bin packing estimate");
  add_eps(vbp);
  vbp->add_option("--variant", o.variant, "linf or groupsplit");
  vbp->add_option("--mode", o.mode, "simple or geometric");
  vbp->add_option("--solver", o.solver, "ffd, gg or exact");
  add_file(vbp);

  auto* vs = app.add_subcommand("vsched", "container summary for vector scheduling");
  vs->add_option("--machines,-m", o.machines, "machine count")->required();
  add_eps(vs);
  vs->add_option("--gamma", o.gamma, "override the big/small threshold");
  vs->add_option("--seed", o.seed, "placement seed");
  vs->add_option("--exact-limit", o.exact_limit, "largest summary solved exactly");
  add_file(vs);

  auto* vsr = app.add_subcommand("vsched-round", "vector type summary for scheduling");
  vsr->add_option("--machines,-m", o.machines, "machine count")->required();
  add_eps(vsr);
  vsr->add_option("--exact-limit", o.exact_limit, "largest reconstruction solved exactly");
  add_file(vsr);

  auto* ms = app.add_subcommand("msched", "scalar makespan summary");
  ms->add_option("--machines,-m", o.machines, "machine count")->required();
  add_eps(ms);
  add_file(ms);

  auto* qt = app.add_subcommand("quantile", "approximate quantiles");
  qt->add_option("--delta", o.delta, "rank precision")->required();
  qt->add_option("--query", o.queries, "quantile in [0, 1], repeatable")->required();
  add_file(qt);

  auto* rd = app.add_subcommand("rankdemo", "rank estimate through bin packing");
  rd->add_option("--q", o.q, "rank query in (1/2, 2/3)")->required();
  add_eps(rd);
  rd->add_option("--mode", o.mode, "simple or geometric");
  o.solver = "gg";
  rd->add_option("--solver", o.solver, "ffd, gg or exact (default exact)");
  add_file(rd);

  auto* gen = app.add_subcommand("gen", "write a generated stream");
  gen->add_option("--kind", o.kind, "uniform, clustered, sorted-adversarial, tight-vsched, rank-reduction")
      ->required();
  gen->add_option("--n", o.gen.n, "number of lines");
  gen->add_option("--lo", o.gen.lo, "values lie in (lo, hi]");
  gen->add_option("--hi", o.gen.hi, "values lie in (lo, hi]");
  gen->add_option("--d", o.gen.d, "coordinates per line");
  gen->add_option("--clusters", o.gen.clusters, "cluster count");
  gen->add_option("--spread", o.gen.spread, "cluster half-width relative to hi - lo");
  gen->add_option("--order", o.order, "ascending, descending or zigzag");
  gen->add_option("--machines,-m", o.machines, "machines of the tight instance");
  gen->add_option("--gamma", o.gamma, "threshold of the tight instance");
  gen->add_option("--values", o.gen.values, "rank-reduction values")->delimiter(',');
  gen->add_option("--q", o.q, "rank-reduction query");
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_option("--output,-o", o.output, "write to this file instead of stdout");

  const auto start = std::chrono::steady_clock::now();
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  // rankdemo defaults to the exact solver.
  if (rd->parsed() && rd->count("--solver") == 0) o.solver = "exact";

  try {
    std::optional<json> report;
    std::string name;
    if (bp->parsed()) {
      name = "bp-estimate";
      report = cmd_bp_estimate(o);
    } else if (vbp->parsed()) {
      name = "vbp-estimate";
      report = cmd_vbp_estimate(o);
    } else if (vs->parsed()) {
      name = "vsched";
      report = cmd_vsched(o);
    } else if (vsr->parsed()) {
      name = "vsched-round";
      report = cmd_vsched_round(o);
    } else if (ms->parsed()) {
      name = "msched";
      report = cmd_msched(o);
    } else if (qt->parsed()) {
      name = "quantile";
      report = cmd_quantile(o);
    } else if (rd->parsed()) {
      name = "rankdemo";
      report = cmd_rankdemo(o);
    } else if (gen->parsed()) {
      name = "gen";
      report = cmd_gen(o, out);
    }
    if (report) {
      (*report)["subcommand"] = name;
      (*report)["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      (*report)["isa"] = std::string(kernels::isa_name(kernels::active_isa()));
      out << report->dump(2) << "\n";
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace streampack::cli
