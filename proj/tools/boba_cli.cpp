// Command-line front end: generate, ingest, reorder, metrics, bench, compare.
//
// Exit codes: 0 success, 1 usage error, 2 parse or data error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "boba/boba.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::uint32_t line_size = 32;
  std::uint32_t window = 1;
  std::string mode = "deterministic";
  std::string output;
  bool assume_randomized = false;
};

boba::BobaMode parse_mode(const std::string& s) {
  if (s == "deterministic") return boba::BobaMode::deterministic;
  if (s == "relaxed") return boba::BobaMode::relaxed;
  throw UsageError("unknown --mode '" + s + "' (deterministic|relaxed)");
}

boba::Ordering parse_ordering_or_usage(const std::string& s) {
  if (const auto o = boba::parse_ordering(s)) return *o;
  throw UsageError("unknown ordering '" + s +
                   "' (random|boba|boba-relaxed|degree|hub|rcm|identity)");
}

std::string dataset_name(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw boba::error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void require_output(const GlobalOptions& g) {
  if (g.output.empty()) throw UsageError("--output is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph reordering toolkit: BOBA, baseline orderings, locality metrics, benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  if (const char* env = std::getenv("BOBA_THREADS")) {
    try {
      g.threads = static_cast<unsigned>(std::stoul(env));
    } catch (...) {
    }
  }
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (default $BOBA_THREADS or all cores)");
  app.add_option("--line-size", g.line_size, "vertex IDs per cache line for NBR")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--w", g.window, "GScore window")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--mode", g.mode, "BOBA mode: deterministic|relaxed")->capture_default_str();
  app.add_option("--output", g.output, "output path");
  app.add_flag("--assume-randomized", g.assume_randomized,
               "bench: accept input whose labels were not randomized by 'ingest'");

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic graph as an edge list");
  std::string kind;
  std::uint32_t gen_n = 0, gen_c = 1, gen_d = 2, rows = 0, cols = 0;
  gen->add_option("kind", kind, "lcd | regular | grid")->required();
  gen->add_option("--n", gen_n, "vertex count (lcd, regular)");
  gen->add_option("--c", gen_c, "attachments per vertex (lcd)")->capture_default_str();
  gen->add_option("--d", gen_d, "degree (regular)")->capture_default_str();
  gen->add_option("--rows", rows, "grid rows");
  gen->add_option("--cols", cols, "grid columns");

  // ingest
  auto* ing = app.add_subcommand("ingest", "read .mtx or edge list, randomize labels, write edge list");
  std::string ingest_in;
  bool symmetrize_flag = false, no_randomize = false;
  ing->add_option("input", ingest_in, "input file (.mtx or edge list)")->required();
  ing->add_flag("--symmetrize", symmetrize_flag, "add reverse edges, drop duplicates and self-loops");
  ing->add_flag("--no-randomize", no_randomize, "keep the parsed labels");

  // reorder
  auto* reo = app.add_subcommand("reorder", "relabel an edge list with an ordering");
  std::string reorder_in, method, perm_out;
  reo->add_option("input", reorder_in, "input file")->required();
  reo->add_option("--method", method, "random|boba|boba-relaxed|degree|hub|rcm|identity")->required();
  reo->add_option("--perm-out", perm_out, "also write the permutation");

  // metrics
  auto* met = app.add_subcommand("metrics", "locality report for one ordering as a CSV row");
  std::string metrics_in, metrics_ordering = "identity", perm_in;
  bool in_neighbors = false;
  met->add_option("input", metrics_in, "input file")->required();
  met->add_option("--ordering", metrics_ordering, "ordering method")->capture_default_str();
  met->add_option("--perm", perm_in, "read the ordering from a permutation file instead");
  met->add_flag("--in-neighbors", in_neighbors, "compute NBR over in-neighborhoods");

  // bench
  auto* ben = app.add_subcommand("bench", "timed reorder -> convert -> kernel pipeline (CSV)");
  std::string bench_in, bench_kernel = "spmv";
  std::vector<std::string> bench_orderings{"boba"};
  unsigned repeats = 3;
  bool skip_locality = false, no_header = false;
  boba::PageRankParams pr;
  ben->add_option("input", bench_in, "input file")->required();
  ben->add_option("--ordering", bench_orderings, "ordering(s), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  ben->add_option("--kernel", bench_kernel, "spmv|pr|tc|sssp")->capture_default_str();
  ben->add_option("--repeats", repeats, "pipeline repetitions")->capture_default_str()->check(CLI::PositiveNumber);
  ben->add_option("--pr-damping", pr.damping)->capture_default_str();
  ben->add_option("--pr-tol", pr.tol)->capture_default_str();
  ben->add_option("--pr-max-iters", pr.max_iters)->capture_default_str();
  ben->add_flag("--skip-locality", skip_locality, "leave locality columns empty");
  ben->add_flag("--no-header", no_header, "omit the CSV header row");

  // compare
  auto* cmp = app.add_subcommand("compare", "speedups relative to the random ordering");
  std::vector<std::string> csv_inputs;
  cmp->add_option("records", csv_inputs, "bench CSV files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    const boba::BobaMode mode = parse_mode(g.mode);
    const unsigned threads = boba::resolve_threads(g.threads);

    if (*gen) {
      require_output(g);
      boba::CooGraph graph;
      boba::Provenance prov;
      if (kind == "lcd") {
        if (gen_n < 1 || gen_c < 1) throw UsageError("lcd needs --n >= 1 and --c >= 1");
        graph = boba::generate_lcd({gen_n, gen_c, g.seed});
        prov.append("lcd(n=" + std::to_string(gen_n) + ",c=" + std::to_string(gen_c) +
                    ",seed=" + std::to_string(g.seed) + ")");
      } else if (kind == "regular") {
        graph = boba::generate_regular_sorted(gen_n, gen_d, g.seed);
        prov.append("regular(n=" + std::to_string(gen_n) + ",d=" + std::to_string(gen_d) +
                    ",seed=" + std::to_string(g.seed) + ")");
      } else if (kind == "grid") {
        if (rows < 1 || cols < 1) throw UsageError("grid needs --rows >= 1 and --cols >= 1");
        graph = boba::generate_grid(rows, cols);
        prov.append("grid(rows=" + std::to_string(rows) + ",cols=" + std::to_string(cols) + ")");
      } else {
        throw UsageError("unknown generator '" + kind + "' (lcd|regular|grid)");
      }
      boba::write_edge_list(graph, g.output, prov);
      std::cerr << "wrote n=" << graph.n() << " m=" << graph.m() << " to " << g.output << '\n';
      return 0;
    }

    if (*ing) {
      require_output(g);
      auto in = boba::read_graph(ingest_in);
      boba::CooGraph graph = std::move(in.graph);
      if (symmetrize_flag) {
        graph = boba::symmetrize(graph, /*drop_self_loops=*/true);
        in.provenance.append("symmetrize");
      }
      if (!no_randomize) {
        graph = boba::randomize_labels(graph, g.seed, threads).graph;
        in.provenance.append("randomize(seed=" + std::to_string(g.seed) + ")");
      }
      boba::write_edge_list(graph, g.output, in.provenance);
      std::cerr << "wrote n=" << graph.n() << " m=" << graph.m() << " chain=" << in.provenance.chain
                << '\n';
      return 0;
    }

    if (*reo) {
      require_output(g);
      const auto ordering = parse_ordering_or_usage(method);
      auto in = boba::read_graph(reorder_in);
      boba::Permutation p;
      boba::CooGraph relabeled;
      boba::Stopwatch sw;
      p = boba::make_ordering(in.graph, ordering, g.seed, mode, threads);
      relabeled = boba::apply_permutation(in.graph, p, threads);
      const double ms = sw.elapsed_ms();
      in.provenance.append("reorder(" + std::string(boba::to_string(ordering)) + ")");
      boba::write_edge_list(relabeled, g.output, in.provenance);
      if (!perm_out.empty()) boba::write_permutation(p, perm_out);
      std::cout << "method=" << boba::to_string(ordering) << " n=" << relabeled.n()
                << " m=" << relabeled.m() << " threads=" << threads
                << " reorder_ms=" << boba::detail::format_double(ms, "%.3f") << '\n';
      return 0;
    }

    if (*met) {
      auto in = boba::read_graph(metrics_in);
      std::string label;
      boba::Permutation p;
      if (!perm_in.empty()) {
        p = boba::read_permutation(perm_in);
        label = "perm:" + dataset_name(perm_in);
      } else {
        const auto ordering = parse_ordering_or_usage(metrics_ordering);
        p = boba::make_ordering(in.graph, ordering, g.seed, mode, threads);
        label = std::string(boba::to_string(ordering));
      }
      const auto r = boba::locality_report(in.graph, p, g.window, g.line_size, in_neighbors);
      Sink sink(g.output);
      auto& os = sink.stream();
      os << "dataset,ordering,n,m,nscore,gscore,gscore_w,nbr,bandwidth,line_size,nscore_le_m\n";
      os << boba::detail::sanitize_field(dataset_name(metrics_in)) << ',' << label << ','
         << in.graph.n() << ',' << r.m << ',' << r.nscore << ',' << r.gscore << ','
         << r.gscore_window << ',' << boba::detail::format_double(r.nbr, "%.6f") << ','
         << r.bandwidth << ',' << r.line_size << ',' << (r.nscore <= r.m ? 1 : 0) << '\n';
      return 0;
    }

    if (*ben) {
      const auto kernel = boba::parse_kernel(bench_kernel);
      if (!kernel) throw UsageError("unknown kernel '" + bench_kernel + "' (spmv|pr|tc|sssp)");
      std::vector<boba::Ordering> orderings;
      for (const auto& o : bench_orderings) orderings.push_back(parse_ordering_or_usage(o));
      auto in = boba::read_graph(bench_in);
      if (!in.provenance.randomized() && !g.assume_randomized)
        throw boba::error("input labels are not randomized (chain '" + in.provenance.chain +
                          "'); run 'ingest' first or pass --assume-randomized");
      Sink sink(g.output);
      auto& os = sink.stream();
      if (!no_header) os << boba::bench_csv_header() << '\n';
      for (const auto ordering : orderings) {
        boba::BenchConfig cfg;
        cfg.dataset = dataset_name(bench_in);
        cfg.ordering = ordering;
        cfg.kernel = *kernel;
        cfg.mode = mode;
        cfg.seed = g.seed;
        cfg.threads = threads;
        cfg.repeats = repeats;
        cfg.window = g.window;
        cfg.line_size = g.line_size;
        cfg.locality = !skip_locality;
        cfg.pr = pr;
        for (const auto& rec : boba::run_bench(in.graph, cfg)) os << boba::to_csv_row(rec) << '\n';
        os.flush();
      }
      return 0;
    }

    if (*cmp) {
      std::vector<boba::BenchRecord> records;
      for (const auto& path : csv_inputs) {
        std::ifstream f(path);
        if (!f) throw boba::error("cannot open " + path);
        auto part = boba::parse_bench_csv(f);
        records.insert(records.end(), part.begin(), part.end());
      }
      const auto rows = boba::compare_records(records);
      Sink sink(g.output);
      auto& os = sink.stream();
      os << boba::speedup_csv_header() << '\n';
      for (const auto& r : rows) os << boba::to_csv_row(r) << '\n';
      boba::print_speedup_table(std::cerr, rows);
      for (const auto& r : rows)
        if (!r.checksum_match)
          std::cerr << "warning: " << r.dataset << '/' << r.kernel << '/' << r.ordering
                    << " checksum differs from the random baseline\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
