#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <dipaths/dipaths.hpp>

using namespace dipaths;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 2;
constexpr int kInvalidInput = 3;
constexpr int kBudget = 4;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// FNV-1a, hex encoded.
std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Manifest {
  std::string log_path;
  std::string command;
  json config = json::object();
  std::uint64_t seed = 0;
  std::string input_digest;
  json outcome;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(int code) const {
    if (log_path.empty()) return;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json rec = {{"command", command},   {"config", config},   {"seed", seed},        {"input_digest", input_digest},
                {"outcome", outcome},   {"exit_code", code},  {"wall_time_s", secs}};
    std::ofstream out(log_path, std::ios::app);
    out << rec.dump() << '\n';
  }
};

Manifest manifest;

Digraph load_digraph(const std::string& path, bool undirected, std::uint64_t seed) {
  const auto text = read_file(path);
  manifest.input_digest = digest(text);
  if (undirected) return orient_random(parse_graph(text), seed);
  return parse_digraph(text);
}

Graph load_graph(const std::string& path) {
  const auto text = read_file(path);
  manifest.input_digest = digest(text);
  return parse_graph(text);
}

void add_config_flags(CLI::App* cmd, PipelineConfig& cfg) {
  cmd->add_option("--m", cfg.m, "tangent paths reserved per cycle on the first try");
  cmd->add_option("--max-m", cfg.max_m);
  cmd->add_option("--cycle-degree-floor", cfg.cycle_degree_floor);
  cmd->add_option("--sparsity-k", cfg.sparsity_k);
  cmd->add_option("--theta", cfg.theta, "short-path length cap, 0 for ceil(log2 n)");
  cmd->add_option("--attempts", cfg.attempts);
  cmd->add_option("--lll-budget", cfg.lll_budget);
  cmd->add_option("-p,--short-cycle-length", cfg.short_cycle_length);
  cmd->add_option("--census-cap", cfg.census_cap, "0 for 3 + floor(log2 log2 n)");
  cmd->add_option("--distance-floor", cfg.distance_floor);
  cmd->add_flag("--strict", cfg.strict);
  cmd->add_option("--seed", cfg.seed);
}

Outcome run_mode(const std::string& mode, const Digraph& d, const PipelineConfig& cfg) {
  if (mode == "acyclic") return detail::finish(d, decompose_acyclic(d), "acyclic");
  if (mode == "no-zero") return decompose_no_zero(d, cfg);
  if (mode == "k-sparse") return decompose_k_sparse(d, cfg);
  if (mode == "discrete") return decompose_discrete(d, cfg.short_cycle_length, cfg);
  return decompose_auto(d, cfg);
}

struct DecomposeArgs {
  std::string file;
  std::string mode = "auto";
  std::string out;
  bool json_output = false;
  bool verify_only = false;
  bool undirected = false;
  PipelineConfig cfg;
};

int cmd_decompose(const DecomposeArgs& a) {
  manifest.config = a.cfg;
  manifest.config["mode"] = a.mode;
  manifest.seed = a.cfg.seed;
  const auto d = load_digraph(a.file, a.undirected, a.cfg.seed);
  const auto o = run_mode(a.mode, d, a.cfg);
  if (const auto* f = std::get_if<Failure>(&o)) {
    const auto j = failure_json(*f, a.cfg);
    manifest.outcome = j;
    std::cerr << "failure at stage " << to_string(f->stage) << ": " << f->detail << '\n';
    std::cout << j.dump(2) << '\n';
    return kFailure;
  }
  const auto& dec = std::get<Decomposition>(o);
  manifest.outcome = {{"method", dec.method}, {"paths", dec.size()}, {"excess", dec.host_excess}};
  if (a.verify_only) {
    std::cout << "verified=true paths=" << dec.size() << " ex=" << dec.host_excess << " method=" << dec.method << '\n';
    return kOk;
  }
  const auto text = to_json(dec).dump(a.json_output ? -1 : 2);
  if (!a.out.empty()) {
    std::ofstream(a.out) << text << '\n';
  } else {
    std::cout << text << '\n';
  }
  return kOk;
}

int cmd_exact(const std::string& file, std::size_t limit, bool json_output) {
  manifest.config = {{"limit", limit}};
  const auto d = load_digraph(file, false, 0);
  const auto r = exact_pn(d, limit);
  manifest.outcome = {{"pn", r.pn}, {"excess", r.excess}};
  std::cout << "pn=" << r.pn << " ex=" << r.excess << " consistent=" << (r.consistent() ? "true" : "false") << '\n';
  if (json_output) std::cout << to_json(r.certificate).dump() << '\n';
  return kOk;
}

int cmd_scan(const std::string& file, std::size_t limit, std::size_t jobs) {
  manifest.config = {{"limit", limit}, {"jobs", jobs}};
  const auto g = load_graph(file);
  const auto r = strong_consistency_scan(g, limit, jobs);
  manifest.outcome = {{"strongly_consistent", r.strongly_consistent}, {"orientations", r.orientations}};
  std::cout << "strongly_consistent=" << (r.strongly_consistent ? "true" : "false") << " orientations=" << r.orientations
            << '\n';
  if (r.witness) {
    std::cout << "witness (pn=" << r.witness_result->pn << " ex=" << r.witness_result->excess << "):\n"
              << serialize(*r.witness);
  }
  return kOk;
}

int cmd_check(const std::string& file, const std::string& decomposition) {
  const auto d = load_digraph(file, false, 0);
  std::vector<Path> paths;
  try {
    paths = parse_decomposition(read_file(decomposition));
  } catch (const Error& e) {
    manifest.outcome = {{"verdict", "unreadable"}};
    std::cerr << e.what() << '\n';
    return kInvalidInput;
  }
  const auto r = verify(d, paths);
  const char* verdict = r.verdict == Verdict::Perfect ? "perfect" : r.verdict == Verdict::ValidNotPerfect ? "valid-not-perfect" : "invalid";
  manifest.outcome = {{"verdict", verdict}, {"problems", r.problems}};
  std::cout << "verdict=" << verdict << " paths=" << r.path_count << " ex=" << r.excess << '\n';
  for (const auto& p : r.problems) std::cout << "  " << p << '\n';
  return r.ok() ? kOk : kFailure;
}

struct ExperimentArgs {
  std::vector<std::size_t> ns{50, 100, 200};
  std::size_t d = 3;
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  PipelineConfig cfg;
};

int cmd_experiment(const ExperimentArgs& a) {
  manifest.config = {{"n", a.ns}, {"d", a.d}, {"samples", a.samples}, {"jobs", a.jobs}, {"pipeline", a.cfg}};
  manifest.seed = a.seed;
  if (a.d % 2 == 0)
    std::cerr << "warning: d is even; Eulerian orientations have excess zero, so perfect decompositions "
                 "cannot exist in general\n";
  json rows = json::array();
  std::cout << "n\td\tsamples\tsuccess\trate\tdiscrete\tbad\tfailure stages\n";
  for (std::size_t n : a.ns) {
    struct Row {
      bool ok = false;
      bool discrete = false;
      bool bad = false;
      std::string stage;
    };
    std::vector<Row> out(a.samples);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (std::size_t s; (s = next.fetch_add(1)) < a.samples;) {
        try {
          auto rng = Rng::substream(a.seed ^ (n * 0x9E3779B97F4A7C15ULL), s);
          const auto g = sample_regular(n, a.d, rng.next());
          const auto d = orient_random(g, rng.next());
          auto cfg = a.cfg;
          cfg.seed = rng.next();
          const auto o = decompose_auto(d, cfg);
          if (const auto* dec = std::get_if<Decomposition>(&o)) {
            out[s].ok = true;
            out[s].discrete = dec->method.starts_with("discrete") || dec->method == "acyclic";
            out[s].bad = !verify(d, *dec).ok();
          } else {
            out[s].stage = std::string(to_string(std::get<Failure>(o).stage));
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 1; j < std::max<std::size_t>(1, a.jobs); ++j) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);

    std::size_t ok = 0, discrete = 0, bad = 0;
    std::map<std::string, std::size_t> stages;
    for (const auto& r : out) {
      ok += r.ok;
      discrete += r.discrete;
      bad += r.bad;
      if (!r.ok) ++stages[r.stage];
    }
    const double rate = a.samples ? 100.0 * static_cast<double>(ok) / static_cast<double>(a.samples) : 0.0;
    std::string stage_text;
    for (const auto& [s, c] : stages) stage_text += s + ":" + std::to_string(c) + " ";
    std::printf("%zu\t%zu\t%zu\t%zu\t%.1f%%\t%zu\t%zu\t%s\n", n, a.d, a.samples, ok, rate, discrete, bad,
                stage_text.empty() ? "-" : stage_text.c_str());
    rows.push_back({{"n", n}, {"success", ok}, {"discrete", discrete}, {"bad", bad}, {"stages", stages}});
  }
  manifest.outcome = rows;
  return kOk;
}

int cmd_discrete_check(const std::string& file, std::size_t p, std::optional<std::size_t> cap,
                       std::optional<std::size_t> floor, std::size_t sparsity_k) {
  const auto g = load_graph(file);
  const std::size_t census = cap.value_or(PipelineConfig{}.census_cap_for(g.num_vertices()));
  const std::size_t dist = floor.value_or(2 * sparsity_k);
  manifest.config = {{"p", p}, {"census_cap", census}, {"distance_floor", dist}};
  const auto r = check_discrete(g, p, census, dist);
  json j = {{"discrete", r.verdict()},     {"short_cycles", r.short_cycles.size()}, {"census_ok", r.census_ok},
            {"disjoint_ok", r.disjoint_ok}, {"distance_ok", r.distance_ok},          {"census_cap", census},
            {"distance_floor", dist},       {"witness", r.witness}};
  manifest.outcome = j;
  std::cout << j.dump(2) << '\n';
  return r.verdict() ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum directed path decompositions"};
  app.require_subcommand(1);
  app.add_option("--log", manifest.log_path, "append a JSON-lines run manifest to this file");

  DecomposeArgs dec;
  auto* decompose = app.add_subcommand("decompose", "decompose a digraph into paths");
  decompose->add_option("file", dec.file)->required();
  decompose->add_option("--mode", dec.mode)->check(CLI::IsMember({"auto", "acyclic", "no-zero", "k-sparse", "discrete"}));
  decompose->add_option("-o,--out", dec.out, "write the decomposition JSON here");
  decompose->add_flag("--json", dec.json_output, "compact single-line JSON");
  decompose->add_flag("--verify-only", dec.verify_only, "print only the verification summary");
  decompose->add_flag("--undirected", dec.undirected, "input is undirected; orient it at random with --seed");
  add_config_flags(decompose, dec.cfg);

  std::string exact_file;
  std::size_t exact_limit = 24;
  bool exact_json = false;
  auto* exact = app.add_subcommand("exact-pn", "exact minimum path number by search");
  exact->add_option("file", exact_file)->required();
  exact->add_option("--limit", exact_limit, "maximum number of edges");
  exact->add_flag("--json", exact_json, "also print an optimal decomposition");

  std::string scan_file;
  std::size_t scan_limit = 16, scan_jobs = 1;
  auto* scan = app.add_subcommand("scan-orientations", "check every orientation of an undirected graph");
  scan->add_option("file", scan_file)->required();
  scan->add_option("--limit", scan_limit, "maximum number of edges");
  scan->add_option("--jobs", scan_jobs);

  std::string check_file, check_json;
  auto* check = app.add_subcommand("check", "verify a decomposition JSON against its digraph");
  check->add_option("file", check_file)->required();
  check->add_option("decomposition", check_json)->required();

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "pipeline success rates on random regular orientations");
  experiment->add_option("--n", ex.ns)->delimiter(',');
  experiment->add_option("--d", ex.d);
  experiment->add_option("--samples", ex.samples);
  experiment->add_option("--seed", ex.seed);
  experiment->add_option("--jobs", ex.jobs);

  auto* gen = app.add_subcommand("gen", "generate graphs in the edge-list format");
  gen->require_subcommand(1);
  std::size_t gen_n = 0, gen_d = 3, gen_k = 0;
  std::uint64_t gen_seed = 1;
  bool gen_simple = false;
  auto* regular = gen->add_subcommand("regular", "random d-regular graph from the configuration model");
  regular->add_option("-n", gen_n)->required();
  regular->add_option("-d", gen_d)->required();
  regular->add_option("--seed", gen_seed);
  regular->add_flag("--simple", gen_simple, "reject until the pairing is simple");
  auto* d0 = gen->add_subcommand("d0", "the five-vertex inconsistent digraph");
  auto* counter = gen->add_subcommand("counterexample", "the inconsistent family member G_k");
  counter->add_option("-k", gen_k)->required();

  auto* stats = app.add_subcommand("stats", "random graph statistics");
  stats->require_subcommand(1);
  std::size_t st_n = 1000, st_d = 3, st_len = 6, st_samples = 100, st_jobs = 1;
  std::uint64_t st_seed = 1;
  auto* cycles = stats->add_subcommand("cycles", "short cycle census against its Poisson means");
  cycles->add_option("-n", st_n);
  cycles->add_option("-d", st_d);
  cycles->add_option("--max-len", st_len);
  cycles->add_option("--samples", st_samples);
  cycles->add_option("--seed", st_seed);
  cycles->add_option("--jobs", st_jobs);

  std::string dc_file;
  std::size_t dc_p = 6, dc_k = PipelineConfig{}.sparsity_k;
  std::optional<std::size_t> dc_cap, dc_floor;
  auto* dcheck = app.add_subcommand("discrete-check", "test an undirected graph for discreteness");
  dcheck->add_option("file", dc_file)->required();
  dcheck->add_option("-p", dc_p);
  dcheck->add_option("--census-cap", dc_cap);
  dcheck->add_option("--distance-floor", dc_floor);
  dcheck->add_option("--sparsity-k", dc_k, "the distance floor defaults to twice this");

  CLI11_PARSE(app, argc, argv);

  int code = kOk;
  try {
    if (decompose->parsed()) {
      manifest.command = "decompose";
      code = cmd_decompose(dec);
    } else if (exact->parsed()) {
      manifest.command = "exact-pn";
      code = cmd_exact(exact_file, exact_limit, exact_json);
    } else if (scan->parsed()) {
      manifest.command = "scan-orientations";
      code = cmd_scan(scan_file, scan_limit, scan_jobs);
    } else if (check->parsed()) {
      manifest.command = "check";
      code = cmd_check(check_file, check_json);
    } else if (experiment->parsed()) {
      manifest.command = "experiment";
      code = cmd_experiment(ex);
    } else if (regular->parsed()) {
      manifest.command = "gen regular";
      manifest.seed = gen_seed;
      manifest.config = {{"n", gen_n}, {"d", gen_d}, {"simple", gen_simple}};
      std::cout << serialize(sample_regular(gen_n, gen_d, gen_seed, gen_simple));
    } else if (d0->parsed()) {
      manifest.command = "gen d0";
      std::cout << serialize(gen_D0());
    } else if (counter->parsed()) {
      manifest.command = "gen counterexample";
      manifest.config = {{"k", gen_k}};
      std::cout << serialize(gen_Gk(gen_k).digraph);
    } else if (cycles->parsed()) {
      manifest.command = "stats cycles";
      manifest.seed = st_seed;
      manifest.config = {{"n", st_n}, {"d", st_d}, {"max_len", st_len}, {"samples", st_samples}, {"jobs", st_jobs}};
      const auto census = cycle_census(st_n, st_d, st_len, st_samples, st_seed, st_jobs);
      manifest.outcome = census.to_json();
      std::cout << census.to_json().dump(2) << '\n';
    } else if (dcheck->parsed()) {
      manifest.command = "discrete-check";
      code = cmd_discrete_check(dc_file, dc_p, dc_cap, dc_floor, dc_k);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (e.line() != 0) std::cerr << " (line " << e.line() << ')';
    std::cerr << '\n';
    manifest.outcome = {{"error", to_string(e.code())}, {"message", e.what()}};
    code = e.code() == ErrorCode::BudgetExceeded ? kBudget : kInvalidInput;
  }
  manifest.write(code);
  return code;
}
