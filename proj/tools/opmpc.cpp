#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opmpc/bench.hpp"
#include "opmpc/errors.hpp"
#include "opmpc/instances.hpp"
#include "opmpc/io.hpp"
#include "opmpc/search.hpp"

namespace {

using namespace opmpc;

// --seed wins, then $OPMPC_SEED, then 0.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("OPMPC_SEED")) {
    std::uint64_t v = 0;
    const std::string_view text(env);
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || end != text.data() + text.size()) {
      throw InputError("OPMPC_SEED must be an unsigned integer, got '" + std::string(text) + "'");
    }
    return v;
  }
  return 0;
}

// "64" or "n/2" (n = number of POIs).
std::size_t parse_queue_limit(const std::string& text, std::size_t poi_count) {
  auto parse_positive = [&](std::string_view s) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || v == 0) {
      throw InputError("--queue-limit: expected a positive integer or n/k, got '" + text + "'");
    }
    return v;
  };
  if (text.rfind("n/", 0) == 0) {
    const std::size_t k = parse_positive(std::string_view(text).substr(2));
    return std::max<std::size_t>(1, poi_count / k);
  }
  if (text == "n") return std::max<std::size_t>(1, poi_count);
  return parse_positive(text);
}

struct GenerateArgs {
  bool grid = false;
  bool spider = false;
  GridSpec grid_spec;
  SpiderSpec spider_spec;
  PoiSpec pois;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_generate(const GenerateArgs& a) {
  const std::uint64_t seed = resolve_seed(a.seed);
  Instance inst;
  if (a.grid) {
    GridSpec spec = a.grid_spec;
    spec.pois = a.pois;
    spec.seed = seed;
    spec.validate();
    inst = gen_grid(spec);
  } else {
    SpiderSpec spec = a.spider_spec;
    spec.pois = a.pois;
    spec.seed = seed;
    spec.validate();
    inst = gen_spider(spec);
  }
  save_instance(inst, a.out);
  std::cout << "wrote " << a.out << ": " << inst.graph().nodes.size() << " nodes, "
            << inst.graph().edges.size() << " edges, " << inst.poi_count() << " POIs, "
            << inst.category_count() << " categories (seed " << seed << ")\n";
  return 0;
}

struct SolveArgs {
  std::string instance;
  std::string query_file;
  std::optional<NodeId> s, d;
  std::optional<Seconds> t_max;
  std::vector<std::uint32_t> max_k;
  std::string mode = "exact";
  double cut_factor = 1.2;
  std::string queue_limit;
  std::optional<double> time_limit_ms;
  double greedy_threshold = 1.0;
  bool append_only = false;
  std::string json_out;
};

int cmd_solve(const SolveArgs& a) {
  const Instance inst = load_instance(a.instance);
  Query q;
  if (!a.query_file.empty()) {
    q = load_query(a.query_file);
  } else {
    if (!a.s || !a.d || !a.t_max || a.max_k.empty()) {
      throw CLI::ValidationError("solve", "need --query or all of --s, --d, --tmax-seconds, --max-k");
    }
    q = Query{*a.s, *a.d, *a.t_max, a.max_k};
  }
  if (q.t_max <= 0) throw InputError("--tmax-seconds must be positive");
  if (q.max_k.size() != inst.category_count()) {
    throw InputError("--max-k needs " + std::to_string(inst.category_count()) +
                     " values, got " + std::to_string(q.max_k.size()));
  }
  const Problem problem(inst, q);

  const SolveMode mode = parse_mode(a.mode);
  SearchConfig config;
  config.cut_factor = a.cut_factor;
  config.greedy_threshold = a.greedy_threshold;
  if (!a.queue_limit.empty()) config.max_queue_len = parse_queue_limit(a.queue_limit, inst.poi_count());
  if (a.time_limit_ms) {
    if (*a.time_limit_ms < 0) throw InputError("--time-limit-ms must not be negative");
    config.time_limit = std::chrono::duration_cast<Duration>(
        std::chrono::duration<double, std::milli>(*a.time_limit_ms));
  }
  if (a.append_only) config.reachability = Reachability::append_only;
  config.validate();

  const RunResult r = run_mode(problem, mode, config);
  const Itinerary& it = r.best;

  std::vector<Seconds> legs;
  std::ostringstream route;
  route << "s(" << q.s << ")";
  for (std::size_t i = 0; i <= it.sequence.size(); ++i) {
    Seconds leg;
    if (it.sequence.empty()) {
      leg = problem.direct();
    } else if (i == 0) {
      leg = problem.from_start(it.sequence[0]);
    } else if (i == it.sequence.size()) {
      leg = problem.to_end(it.sequence.back());
    } else {
      leg = problem.travel(it.sequence[i - 1], it.sequence[i]);
    }
    legs.push_back(leg);
    route << " -" << leg << "s-> ";
    if (i < it.sequence.size()) {
      const Poi& p = inst.poi(it.sequence[i]);
      route << "p" << p.id << "[k" << p.category << ", visit " << p.visit_seconds << "s]";
    } else {
      route << "d(" << q.d << ")";
    }
  }

  std::cout << "mode:      " << to_string(mode) << '\n'
            << "itinerary: " << route.str() << '\n'
            << "pois:      " << it.sequence.size() << '\n'
            << "score:     " << it.score << '\n'
            << "cost:      " << it.cost << " s of " << q.t_max << " s\n";
  if (r.alpha) std::cout << "alpha:     " << *r.alpha << '\n';
  if (mode == SolveMode::exact || mode == SolveMode::approx) {
    std::cout << "expanded:  " << r.stats.expanded << " (pruned " << r.stats.pruned
              << ", overflow " << r.stats.overflow << ")\n";
  }
  std::cout << "runtime:   " << r.runtime_ms << " ms\n";

  if (!a.json_out.empty()) {
    nlohmann::json doc{{"mode", to_string(mode)},
                       {"sequence", it.sequence},
                       {"legs_seconds", legs},
                       {"score", it.score},
                       {"cost_seconds", it.cost},
                       {"alpha", r.alpha ? nlohmann::json(*r.alpha) : nlohmann::json()},
                       {"expanded", r.stats.expanded},
                       {"pruned", r.stats.pruned},
                       {"runtime_ms", r.runtime_ms}};
    if (a.json_out == "-") {
      std::cout << doc.dump() << '\n';
    } else {
      std::ofstream out(a.json_out);
      if (!(out << doc.dump() << '\n')) throw InputError(a.json_out + ": write failed");
    }
  }
  return 0;
}

struct BenchArgs {
  std::string instance;
  std::string instance_id;
  std::string mode = "approx";
  std::uint32_t queries = 25;
  Seconds t_max = 7200;
  std::uint32_t cap = 2;
  double cut_factor = 1.2;
  std::string queue_limit;
  std::optional<double> time_limit_ms;
  double greedy_threshold = 1.0;
  std::vector<double> cut_factors, queue_lengths, time_limits, thresholds, max_ks, categories;
  bool with_oracle = false;
  unsigned workers = 1;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_bench(const BenchArgs& a) {
  const Instance inst = load_instance(a.instance);
  BenchSpec spec;
  spec.instance_id = a.instance_id.empty()
                         ? std::filesystem::path(a.instance).stem().string()
                         : a.instance_id;
  spec.mode = parse_mode(a.mode);
  spec.config.cut_factor = a.cut_factor;
  spec.config.greedy_threshold = a.greedy_threshold;
  if (!a.queue_limit.empty()) spec.config.max_queue_len = parse_queue_limit(a.queue_limit, inst.poi_count());
  if (a.time_limit_ms) {
    spec.config.time_limit = std::chrono::duration_cast<Duration>(
        std::chrono::duration<double, std::milli>(*a.time_limit_ms));
  }
  spec.t_max = a.t_max;
  spec.cap = a.cap;
  spec.query_count = a.queries;
  spec.seed = resolve_seed(a.seed);
  spec.with_oracle = a.with_oracle;
  spec.workers = a.workers;

  struct Option {
    const std::vector<double>* values;
    SweepKind kind;
  };
  const Option options[] = {
      {&a.cut_factors, SweepKind::cut_factor},     {&a.queue_lengths, SweepKind::queue_length},
      {&a.time_limits, SweepKind::time_limit_ms},  {&a.thresholds, SweepKind::greedy_threshold},
      {&a.max_ks, SweepKind::max_k},               {&a.categories, SweepKind::category_count},
  };
  int chosen = 0;
  for (const Option& o : options) {
    if (!o.values->empty()) {
      ++chosen;
      spec.sweep = o.kind;
      spec.points = *o.values;
    }
  }
  if (chosen != 1) {
    throw CLI::ValidationError("bench", "give exactly one non-empty sweep list");
  }

  const auto rows = run_bench(inst, spec);
  std::ofstream out(a.out);
  if (!out) throw InputError(a.out + ": cannot open file for writing");
  write_csv(out, rows);
  if (!out.flush()) throw InputError(a.out + ": write failed");
  std::cout << "wrote " << rows.size() << " rows to " << a.out << " (" << spec.points.size()
            << " points x " << spec.query_count << " queries, seed " << spec.seed << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orienteering with per-category caps: generate, solve, bench"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "write a synthetic grid or spider instance");
  auto* grid_flag = g->add_flag("--grid", gen.grid, "square lattice");
  auto* spider_flag = g->add_flag("--spider", gen.spider, "concentric polygons");
  grid_flag->excludes(spider_flag);
  g->add_option("--side", gen.grid_spec.side, "grid side length in nodes")->capture_default_str();
  g->add_option("--edge-seconds", gen.grid_spec.edge_seconds)->capture_default_str();
  g->add_option("--sides", gen.spider_spec.sides, "vertices per polygon")->capture_default_str();
  g->add_option("--levels", gen.spider_spec.levels)->capture_default_str();
  g->add_option("--radial-seconds", gen.spider_spec.radial_seconds)->capture_default_str();
  g->add_option("--innermost-side-seconds", gen.spider_spec.innermost_side_seconds)->capture_default_str();
  g->add_option("--pois", gen.pois.poi_count)->capture_default_str();
  g->add_option("--categories", gen.pois.category_count)->capture_default_str();
  g->add_option("--visit-min", gen.pois.visit_min)->capture_default_str();
  g->add_option("--visit-max", gen.pois.visit_max)->capture_default_str();
  g->add_option("--score-min", gen.pois.score_min)->capture_default_str();
  g->add_option("--score-max", gen.pois.score_max)->capture_default_str();
  g->add_option("--seed", gen.seed, "default: $OPMPC_SEED, else 0");
  g->add_option("--out", gen.out)->required();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "answer one query");
  s->add_option("--instance", sol.instance)->required()->check(CLI::ExistingFile);
  s->add_option("--query", sol.query_file, "query JSON instead of the flags below")->check(CLI::ExistingFile);
  s->add_option("--s", sol.s);
  s->add_option("--d", sol.d);
  s->add_option("--tmax-seconds", sol.t_max);
  s->add_option("--max-k", sol.max_k, "one cap per category")->delimiter(',');
  s->add_option("--mode", sol.mode)->check(CLI::IsMember({"exact", "approx", "greedy", "oracle"}))->capture_default_str();
  s->add_option("--cut-factor", sol.cut_factor)->capture_default_str();
  s->add_option("--queue-limit", sol.queue_limit, "integer or n/k");
  s->add_option("--time-limit-ms", sol.time_limit_ms);
  s->add_option("--greedy-threshold", sol.greedy_threshold)->capture_default_str();
  s->add_flag("--append-only", sol.append_only, "cheaper, inadmissible reachability test");
  s->add_option("--json", sol.json_out, "also write the result as JSON ('-' for stdout)");

  BenchArgs ben;
  auto* b = app.add_subcommand("bench", "sweep one knob over a fixed query set, write CSV");
  b->add_option("--instance", ben.instance)->required()->check(CLI::ExistingFile);
  b->add_option("--instance-id", ben.instance_id, "default: instance file stem");
  b->add_option("--mode", ben.mode)->check(CLI::IsMember({"exact", "approx", "greedy", "oracle"}))->capture_default_str();
  b->add_option("--queries", ben.queries)->capture_default_str();
  b->add_option("--tmax-seconds", ben.t_max)->capture_default_str();
  b->add_option("--cap", ben.cap, "max_k for every category")->capture_default_str();
  b->add_option("--cut-factor", ben.cut_factor)->capture_default_str();
  b->add_option("--queue-limit", ben.queue_limit, "integer or n/k");
  b->add_option("--time-limit-ms", ben.time_limit_ms);
  b->add_option("--greedy-threshold", ben.greedy_threshold)->capture_default_str();
  b->add_option("--cut-factors", ben.cut_factors)->delimiter(',');
  b->add_option("--queue-lengths", ben.queue_lengths)->delimiter(',');
  b->add_option("--time-limits-ms", ben.time_limits)->delimiter(',');
  b->add_option("--greedy-thresholds", ben.thresholds)->delimiter(',');
  b->add_option("--max-k-values", ben.max_ks)->delimiter(',');
  b->add_option("--category-counts", ben.categories)->delimiter(',');
  b->add_flag("--with-oracle", ben.with_oracle, "also fill oracle_score (small instances only)");
  b->add_option("--workers", ben.workers)->capture_default_str();
  b->add_option("--seed", ben.seed, "default: $OPMPC_SEED, else 0");
  b->add_option("--out", ben.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (g->parsed()) {
      if (!gen.grid && !gen.spider) throw CLI::ValidationError("generate", "choose --grid or --spider");
      return cmd_generate(gen);
    }
    if (s->parsed()) return cmd_solve(sol);
    return cmd_bench(ben);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const InfeasibleQuery& e) {
    std::cerr << "infeasible query: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
