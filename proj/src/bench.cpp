#include "opmpc/bench.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "opmpc/errors.hpp"
#include "opmpc/instances.hpp"
#include "opmpc/oracle.hpp"

namespace opmpc {

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::exact: return "exact";
    case SolveMode::approx: return "approx";
    case SolveMode::greedy: return "greedy";
    case SolveMode::oracle: return "oracle";
  }
  return "?";
}

SolveMode parse_mode(std::string_view text) {
  for (SolveMode m : {SolveMode::exact, SolveMode::approx, SolveMode::greedy,
                      SolveMode::oracle}) {
    if (text == to_string(m)) return m;
  }
  throw InputError("unknown mode '" + std::string(text) +
                   "' (expected exact, approx, greedy or oracle)");
}

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::cut_factor: return "cut_factor";
    case SweepKind::queue_length: return "queue_length";
    case SweepKind::time_limit_ms: return "time_limit_ms";
    case SweepKind::greedy_threshold: return "greedy_threshold";
    case SweepKind::max_k: return "max_k";
    case SweepKind::category_count: return "category_count";
  }
  return "?";
}

RunResult run_mode(const Problem& problem, SolveMode mode, const SearchConfig& config) {
  using Clock = std::chrono::steady_clock;
  RunResult result;
  const auto start = Clock::now();
  switch (mode) {
    case SolveMode::exact:
    case SolveMode::approx: {
      SearchConfig effective = config;
      if (mode == SolveMode::exact) {
        effective.cut_factor = 1.0;
        effective.max_queue_len.reset();
        effective.time_limit.reset();
      }
      SearchOutcome out = solve(problem, effective);
      result.best = std::move(out.best);
      result.alpha = out.alpha;
      result.stats = out.stats;
      break;
    }
    case SolveMode::greedy:
      if (!problem.has_feasible_route()) {
        throw InfeasibleQuery("c(s, d) = " + std::to_string(problem.direct()) +
                              " exceeds t_max = " + std::to_string(problem.t_max()));
      }
      result.best = greedy_baseline(problem);
      break;
    case SolveMode::oracle:
      result.best = oracle_solve(problem);
      result.alpha = 1.0;
      break;
  }
  result.runtime_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  return result;
}

void BenchSpec::validate() const {
  if (points.empty()) throw InputError("the sweep needs at least one value");
  if (query_count == 0) throw InputError("query count must be positive");
  if (workers == 0) throw InputError("need at least one worker");
  if (mode == SolveMode::exact &&
      (sweep == SweepKind::cut_factor || sweep == SweepKind::queue_length ||
       sweep == SweepKind::time_limit_ms)) {
    throw InputError("exact mode cannot sweep " + std::string(to_string(sweep)));
  }
  for (double v : points) {
    const bool integral = std::floor(v) == v;
    switch (sweep) {
      case SweepKind::cut_factor:
        if (!(v >= 1.0)) throw InputError("cut factors must be >= 1");
        break;
      case SweepKind::greedy_threshold:
        if (!(v >= 0.0 && v <= 1.0)) throw InputError("greedy thresholds must lie in [0, 1]");
        break;
      case SweepKind::time_limit_ms:
        if (!(v >= 0.0)) throw InputError("time limits must not be negative");
        break;
      case SweepKind::queue_length:
      case SweepKind::category_count:
        if (!integral || v < 1.0) throw InputError(std::string(to_string(sweep)) + " values must be positive integers");
        break;
      case SweepKind::max_k:
        if (!integral || v < 0.0) throw InputError("max_k values must be non-negative integers");
        break;
    }
  }
  config.validate();
}

namespace {

struct Point {
  const Instance* instance;
  SearchConfig config;
  std::vector<std::uint32_t> caps;
};

Point make_point(const Instance& base, const BenchSpec& spec, double value,
                 std::vector<Instance>& relabelled) {
  Point pt{&base, spec.config, std::vector<std::uint32_t>(base.category_count(), spec.cap)};
  switch (spec.sweep) {
    case SweepKind::cut_factor: pt.config.cut_factor = value; break;
    case SweepKind::queue_length: pt.config.max_queue_len = static_cast<std::size_t>(value); break;
    case SweepKind::time_limit_ms:
      pt.config.time_limit = std::chrono::duration_cast<Duration>(
          std::chrono::duration<double, std::milli>(value));
      break;
    case SweepKind::greedy_threshold: pt.config.greedy_threshold = value; break;
    case SweepKind::max_k:
      pt.caps.assign(base.category_count(), static_cast<std::uint32_t>(value));
      break;
    case SweepKind::category_count: {
      const auto m = static_cast<std::uint32_t>(value);
      std::mt19937_64 rng(derive_seed(spec.seed, "categories-" + std::to_string(m)));
      std::uniform_int_distribution<CategoryId> pick(0, m - 1);
      std::vector<CategoryId> cats(base.poi_count());
      for (auto& c : cats) c = pick(rng);
      relabelled.push_back(base.with_categories(cats, m));
      pt.instance = &relabelled.back();
      pt.caps.assign(m, spec.cap);
      break;
    }
  }
  if (spec.mode == SolveMode::exact) {
    pt.config.cut_factor = 1.0;
    pt.config.max_queue_len.reset();
    pt.config.time_limit.reset();
  }
  return pt;
}

}  // namespace

std::vector<BenchRow> run_bench(const Instance& instance, const BenchSpec& spec) {
  spec.validate();
  const std::vector<Query> queries = gen_queries(
      instance, QuerySpec{spec.t_max,
                          std::vector<std::uint32_t>(instance.category_count(), spec.cap),
                          spec.query_count, spec.seed});

  std::vector<Instance> relabelled;
  relabelled.reserve(spec.points.size());
  std::vector<Point> points;
  for (double v : spec.points) points.push_back(make_point(instance, spec, v, relabelled));

  const std::size_t cells = points.size() * queries.size();
  std::vector<BenchRow> rows(cells);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      try {
        const Point& pt = points[cell / queries.size()];
        const auto qid = static_cast<std::uint32_t>(cell % queries.size());
        Query q = queries[qid];
        q.max_k = pt.caps;
        const Problem problem(*pt.instance, q);

        const RunResult run = run_mode(problem, spec.mode, pt.config);
        BenchRow& row = rows[cell];
        row.instance_id = spec.instance_id;
        row.query_id = qid;
        row.mode = to_string(spec.mode);
        row.g = pt.config.greedy_threshold;
        row.cut_factor = pt.config.cut_factor;
        row.l_max = pt.config.max_queue_len;
        if (pt.config.time_limit) {
          row.time_limit_ms =
              std::chrono::duration<double, std::milli>(*pt.config.time_limit).count();
        }
        row.score = run.best.score;
        row.greedy_score = greedy_baseline(problem).score;
        if (spec.with_oracle) row.oracle_score = oracle_solve(problem).score;
        row.alpha = run.alpha;
        row.runtime_ms = run.runtime_ms;
        row.expanded = run.stats.expanded;
        row.pruned = run.stats.pruned;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cells;
      }
    }
  };

  if (spec.workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < spec.workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string_view csv_header() {
  return "instance_id,query_id,mode,g,cut_factor,l_max,time_limit_ms,score,"
         "greedy_score,oracle_score,alpha,runtime_ms,expanded,pruned";
}

namespace {

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <class T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << csv_header() << '\n';
  for (const BenchRow& r : rows) {
    out << quote(r.instance_id) << ',' << r.query_id << ',' << r.mode << ','
        << fmt(r.g) << ',' << fmt(r.cut_factor) << ',' << fmt_opt(r.l_max) << ','
        << fmt_opt(r.time_limit_ms) << ',' << fmt(r.score) << ','
        << fmt(r.greedy_score) << ',' << fmt_opt(r.oracle_score) << ','
        << fmt_opt(r.alpha) << ',' << fmt(r.runtime_ms) << ',' << r.expanded
        << ',' << r.pruned << '\n';
  }
}

}  // namespace opmpc
