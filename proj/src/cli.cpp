#include "emgraph/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "emgraph/classify.hpp"
#include "emgraph/errors.hpp"
#include "emgraph/modsearch.hpp"

namespace emgraph {

Json to_json(const Node& node) {
  return Json{{"root", to_decimal(node.root)},
              {"edges", nat_array(node.edges)},
              {"value", to_decimal(node.value)},
              {"level", std::to_string(node.level())},
              {"complete", node.complete}};
}

Node node_from_json(const Json& j) {
  try {
    Node n = Node::make_root(nat_from_json(j.at("root")));
    for (const auto& p : nat_array_from_json(j.at("edges"))) n = n.child(p);
    n.complete = j.value("complete", true);
    if (j.contains("value") && nat_from_json(j.at("value")) != n.value) {
      throw FormatError("node value does not match root and edges");
    }
    return n;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("bad node: ") + e.what());
  }
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_tables(const std::vector<PairRecord>& records) {
  std::map<Nat, std::vector<PairRecord>> groups;
  for (const auto& r : records) groups[r.modulus].push_back(r);
  std::map<Nat, std::string> density;
  for (const auto& [m, recs] : groups) density[m] = density_report(recs).inverse_density();

  std::ostringstream out;
  out << "tuple,partner,modulus,residue,kind,inverse_density\n";
  for (const auto& r : records) {
    std::string residue = r.residues.empty() ? "" : to_decimal(r.residues.front().a);
    out << csv_quote(r.p.to_string()) << ',' << csv_quote(r.q.to_string()) << ','
        << to_decimal(r.modulus) << ',' << residue << ',' << to_string(r.kind) << ','
        << density[r.modulus] << '\n';
  }
  return out.str();
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Nat nat_arg(const std::string& s, const char* flag) {
  try {
    return parse_nat(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": not a non-negative integer: " + s);
  }
}

// Destination for data records: a file given by --out, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback, bool append = false) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, append ? std::ios::app : std::ios::trunc);
    if (!*file_) throw std::runtime_error("cannot open output file " + path);
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void check_output_path(const std::string& path) {
  if (path.empty()) return;
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw UsageError("output directory does not exist: " + parent.string());
  }
}

std::vector<Json> read_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return read_jsonl(in);
}

// Keeps the first `lines` lines of a file, dropping a partially written tail.
void truncate_lines(const std::string& path, std::uint64_t lines) {
  std::ifstream in(path);
  std::vector<std::string> kept;
  std::string line;
  while (kept.size() < lines && std::getline(in, line)) kept.push_back(line);
  in.close();
  if (kept.size() < lines) {
    throw FormatError(path + ": fewer lines than the checkpoint records");
  }
  std::ofstream out(path, std::ios::trunc);
  for (const auto& l : kept) out << l << '\n';
}

struct Globals {
  std::string cache_path;
  std::string policy_path;
  std::string out_path;
  std::optional<std::uint32_t> trial_bound;
  std::optional<std::uint64_t> rho_iterations;
  std::optional<std::uint32_t> ecm_curves;
  std::optional<std::uint64_t> ecm_b1;
  std::optional<double> time_budget;

  EffortPolicy policy() const {
    EffortPolicy p;
    std::string path = policy_path;
    if (path.empty()) {
      if (const char* env = std::getenv(kPolicyEnvVar)) path = env;
    }
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) throw UsageError("cannot read policy file " + path);
      try {
        p = effort_policy_from_json(Json::parse(in));
      } catch (const Json::exception& e) {
        throw UsageError("bad policy file " + path + ": " + e.what());
      }
    }
    if (trial_bound) p.trial_bound = *trial_bound;
    if (rho_iterations) p.rho_iterations = *rho_iterations;
    if (ecm_curves) p.ecm_curves = *ecm_curves;
    if (ecm_b1) p.ecm_b1 = *ecm_b1;
    if (time_budget) p.time_budget = *time_budget;
    return p;
  }

  std::unique_ptr<FactorCache> cache() const {
    if (cache_path.empty()) return std::make_unique<FactorCache>();
    return std::make_unique<FactorCache>(std::filesystem::path(cache_path));
  }
};

void write_records(std::ostream& out, const std::vector<PairRecord>& recs,
                   const std::string& format) {
  if (format == "csv") {
    out << export_tables(recs);
  } else {
    for (const auto& r : recs) write_jsonl(out, to_json(r));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explore the graph with edges n -> n*p for primes p dividing n + 1"};
  app.name("emgraph");
  app.require_subcommand(1, 1);
  app.fallthrough();

  Globals g;
  app.add_option("--cache", g.cache_path, "Factor cache file (created if missing)");
  app.add_option("--policy", g.policy_path, "Effort policy JSON file")
      ->check(CLI::ExistingFile);
  app.add_option("--trial-bound", g.trial_bound, "Trial division bound");
  app.add_option("--rho-iterations", g.rho_iterations, "Pollard rho iterations");
  app.add_option("--ecm-curves", g.ecm_curves, "ECM curves per composite");
  app.add_option("--ecm-b1", g.ecm_b1, "ECM stage 1 bound");
  app.add_option("--time-budget", g.time_budget, "Seconds per factorization (0 = none)");
  app.add_option("--out", g.out_path, "Output file (default stdout)");

  std::string format = "jsonl";
  unsigned workers = 1;

  // search-pairs
  auto* sp = app.add_subcommand("search-pairs", "Find equivalent orderings by modulus");
  std::string sp_lo = "2", sp_hi, sp_coprime = "1", sp_checkpoint;
  unsigned sp_min_k = 3;
  bool sp_irred = false;
  sp->add_option("--lo", sp_lo, "Smallest modulus")->capture_default_str();
  sp->add_option("--hi", sp_hi, "Largest modulus")->required();
  sp->add_option("--min-k", sp_min_k, "Minimum number of prime factors")
      ->check(CLI::Range(3u, 15u))
      ->capture_default_str();
  sp->add_option("--coprime-to", sp_coprime, "Skip moduli sharing a factor with this")
      ->capture_default_str();
  sp->add_flag("--irreducible-only", sp_irred, "Only irreducible pairs");
  sp->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  sp->add_option("--checkpoint", sp_checkpoint, "Resume file (requires --out)");
  sp->add_option("--format", format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // expand
  auto* ex = app.add_subcommand("expand", "Breadth-first level counts");
  std::string ex_root = "1", ex_checkpoint;
  std::size_t ex_max_level = 0;
  std::string ex_format = "text";
  bool ex_nodes = false;
  ex->add_option("--root", ex_root, "Root value")->capture_default_str();
  ex->add_option("--max-level", ex_max_level, "Deepest level")->required();
  ex->add_option("--checkpoint", ex_checkpoint, "Resume file");
  ex->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  ex->add_option("--format", ex_format, "text, csv or jsonl")
      ->check(CLI::IsMember({"text", "csv", "jsonl"}));
  ex->add_flag("--nodes", ex_nodes, "Print the nodes of the last level as JSONL");

  // explore
  auto* xp = app.add_subcommand("explore", "Follow small-prime edges only");
  std::vector<std::string> xp_roots;
  std::string xp_input, xp_watch;
  std::uint64_t xp_bound = 0;
  std::size_t xp_max_level = 0, xp_cap = 0;
  xp->add_option("--root", xp_roots, "Root value (repeatable; default 1)");
  xp->add_option("--input", xp_input, "JSONL start nodes")->check(CLI::ExistingFile);
  xp->add_option("--bound", xp_bound, "Largest edge prime")->required()->check(
      CLI::Range(std::uint64_t{2}, std::uint64_t{UINT32_MAX}));
  xp->add_option("--max-level", xp_max_level, "Deepest level")->required();
  xp->add_option("--level-cap", xp_cap, "Keep at most this many nodes per level (0 = all)");
  xp->add_option("--watch", xp_watch, "JSONL residue classes; print only hits")
      ->check(CLI::ExistingFile);

  // verify-theorem
  auto* vt = app.add_subcommand("verify-theorem", "Check the two-path nodes of G_1");

  // sequence
  auto* sq = app.add_subcommand("sequence", "Euclid-Mullin sequences");
  std::string sq_start = "1", sq_rule = "least";
  std::size_t sq_steps = 0;
  sq->add_option("--start", sq_start, "Starting product")->capture_default_str();
  sq->add_option("--rule", sq_rule, "least or largest")
      ->check(CLI::IsMember({"least", "largest"}))
      ->capture_default_str();
  sq->add_option("--steps", sq_steps, "Number of terms")->required()->check(
      CLI::PositiveNumber);

  // chains
  auto* ch = app.add_subcommand("chains", "Nodes followed by a unique chain");
  std::size_t ch_ell = 0;
  std::vector<std::string> ch_values;
  std::string ch_input;
  ch->add_option("--ell", ch_ell, "Chain length")->required()->check(CLI::PositiveNumber);
  ch->add_option("--value", ch_values, "Node value to test (repeatable)");
  ch->add_option("--input", ch_input, "JSONL nodes to test")->check(CLI::ExistingFile);

  // simulate
  auto* sm = app.add_subcommand("simulate", "Random growth model");
  std::size_t sm_k = 0, sm_trials = 1;
  std::uint64_t sm_seed = 1;
  double sm_log_n0 = 0;
  sm->add_option("--k", sm_k, "Steps per trial")->required()->check(CLI::PositiveNumber);
  sm->add_option("--trials", sm_trials, "Trials")->check(CLI::PositiveNumber);
  sm->add_option("--seed", sm_seed, "RNG seed");
  sm->add_option("--log-n0", sm_log_n0, "log of the starting value");

  // tables
  auto* tb = app.add_subcommand("tables", "Render pair records as CSV");
  std::string tb_input;
  tb->add_option("--input", tb_input, "JSONL pair records")->required()->check(
      CLI::ExistingFile);

  // triples
  auto* tr = app.add_subcommand("triples", "Prime triples from the polynomial family");
  long tr_x_max = 0;
  tr->add_option("--x-max", tr_x_max, "Largest x")->required()->check(CLI::PositiveNumber);
  tr->add_option("--format", format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  // manypairs
  auto* mp = app.add_subcommand("manypairs", "Pairs built by embedding triples");
  std::string mp_q, mp_mode = "coprime";
  long mp_x_max = 0;
  mp->add_option("--q", mp_q, "The prime or integer q")->required();
  mp->add_option("--x-max", mp_x_max, "Largest x")->required()->check(CLI::PositiveNumber);
  mp->add_option("--mode", mp_mode, "coprime or divisible")
      ->check(CLI::IsMember({"coprime", "divisible"}))
      ->capture_default_str();
  mp->add_option("--format", format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "emgraph: " << e.what() << '\n';
    if (app.get_subcommands().empty()) err << app.help();
    return 1;
  }

  try {
    check_output_path(g.out_path);
    EffortPolicy policy = g.policy();
    auto cache = g.cache();

    if (sp->parsed()) {
      SearchConfig cfg;
      cfg.lo = nat_arg(sp_lo, "--lo");
      cfg.hi = nat_arg(sp_hi, "--hi");
      cfg.min_k = sp_min_k;
      cfg.coprime_to = nat_arg(sp_coprime, "--coprime-to");
      if (cfg.coprime_to < 1) throw UsageError("--coprime-to must be positive");
      cfg.irreducible_only = sp_irred;
      cfg.worker_count = workers;
      if (cfg.lo > cfg.hi) throw UsageError("--lo exceeds --hi");
      if (!to_u64(cfg.hi)) throw UsageError("--hi must be below 2^64");
      if (!sp_checkpoint.empty() && g.out_path.empty()) {
        throw UsageError("--checkpoint requires --out");
      }
      if (!sp_checkpoint.empty() && format != "jsonl") {
        throw UsageError("--checkpoint requires jsonl output");
      }
      std::uint64_t lines = 0;
      bool append = false;
      if (!sp_checkpoint.empty()) {
        if (auto cp = read_search_checkpoint(sp_checkpoint)) {
          truncate_lines(g.out_path, cp->line_count);
          lines = cp->line_count;
          append = true;
          Nat resume = from_u64(cp->last_modulus) + 1;
          if (resume > cfg.lo) cfg.lo = resume;
          if (cfg.lo > cfg.hi) return 0;
        }
      }
      Sink sink(g.out_path, out, append);
      if (format == "csv") {
        *sink << export_tables(search_range(cfg));
        return 0;
      }
      ProgressSink progress;
      if (!sp_checkpoint.empty()) {
        progress = [&](std::uint64_t last) {
          (*sink).flush();
          write_search_checkpoint(sp_checkpoint, {last, lines});
        };
      }
      search_range(
          cfg,
          [&](const PairRecord& r) {
            write_jsonl(*sink, to_json(r));
            ++lines;
          },
          progress);
      (*sink).flush();
      return 0;
    }

    if (ex->parsed()) {
      BfsOptions opts;
      if (!ex_checkpoint.empty()) opts.checkpoint = ex_checkpoint;
      opts.workers = workers;
      Sink sink(g.out_path, out);
      if (ex_format == "csv") *sink << "level,nodes,composites\n";
      opts.on_level = [&](const LevelSummary& s) {
        if (ex_nodes) return;
        if (ex_format == "jsonl") {
          write_jsonl(*sink, Json{{"level", std::to_string(s.level)},
                                  {"nodes", std::to_string(s.node_count)},
                                  {"composites", std::to_string(s.composite_count)}});
        } else {
          const char* sep = ex_format == "csv" ? "," : ", ";
          *sink << s.level << sep << s.node_count << sep << s.composite_count << '\n';
        }
        (*sink).flush();
      };
      auto result = bfs_levels(nat_arg(ex_root, "--root"), ex_max_level, policy, cache.get(), opts);
      if (ex_nodes) {
        for (const auto& n : result.levels.back()) write_jsonl(*sink, to_json(n));
      }
      return 0;
    }

    if (xp->parsed()) {
      std::vector<Node> roots;
      for (const auto& r : xp_roots) roots.push_back(Node::make_root(nat_arg(r, "--root")));
      if (!xp_input.empty()) {
        for (const auto& j : read_jsonl_file(xp_input)) roots.push_back(node_from_json(j));
      }
      if (roots.empty()) roots.push_back(Node::make_root(1));
      std::vector<ResidueClass> watch;
      if (!xp_watch.empty()) {
        for (const auto& j : read_jsonl_file(xp_watch)) watch.push_back(residue_class_from_json(j));
      }
      Sink sink(g.out_path, out);
      auto stats = bounded_explore(
          roots, xp_bound, xp_max_level,
          [&](const Node& n) {
            if (xp_watch.empty()) {
              write_jsonl(*sink, to_json(n));
              return;
            }
            for (const auto& c : watch_matches(n, watch)) {
              write_jsonl(*sink, Json{{"node", to_json(n)}, {"class", to_json(c)}});
            }
          },
          xp_cap);
      err << "explored " << stats.nodes << " nodes, " << stats.collisions.size()
          << " collisions" << (stats.truncated ? " (levels truncated)" : "") << '\n';
      for (const auto& c : stats.collisions) {
        err << "collision at " << to_decimal(c.first.value) << '\n';
      }
      return 0;
    }

    if (vt->parsed()) {
      Sink sink(g.out_path, out);
      auto rep = verify_theorem_main();
      for (const auto& c : rep.checks) {
        *sink << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
      }
      *sink << (rep.passed() ? "all checks passed" : "some checks failed") << '\n';
      return rep.passed() ? 0 : 2;
    }

    if (sq->parsed()) {
      auto rule = sq_rule == "least" ? EmRule::Least : EmRule::Largest;
      auto terms = euclid_mullin(nat_arg(sq_start, "--start"), sq_steps, policy, rule, cache.get());
      Sink sink(g.out_path, out);
      for (const auto& t : terms) *sink << to_decimal(t) << '\n';
      if (terms.size() < sq_steps) {
        err << "stopped after " << terms.size() << " terms: factoring effort exhausted\n";
        return 2;
      }
      return 0;
    }

    if (ch->parsed()) {
      std::vector<Node> nodes;
      for (const auto& v : ch_values) nodes.push_back(Node::make_root(nat_arg(v, "--value")));
      if (!ch_input.empty()) {
        for (const auto& j : read_jsonl_file(ch_input)) nodes.push_back(node_from_json(j));
      }
      if (nodes.empty()) throw UsageError("chains needs --value or --input");
      Sink sink(g.out_path, out);
      for (const auto& n : unique_chain_scan(nodes, ch_ell)) write_jsonl(*sink, to_json(n));
      return 0;
    }

    if (sm->parsed()) {
      auto stats = simulate_growth_model(sm_k, sm_trials, sm_seed, sm_log_n0);
      Sink sink(g.out_path, out);
      Json j{{"k", std::to_string(sm_k)},
             {"trials", std::to_string(sm_trials)},
             {"seed", std::to_string(sm_seed)},
             {"mean", stats.mean},
             {"stddev", stats.stddev},
             {"ratios", stats.ratios}};
      write_jsonl(*sink, j);
      return 0;
    }

    if (tb->parsed()) {
      std::vector<PairRecord> recs;
      for (const auto& j : read_jsonl_file(tb_input)) recs.push_back(pair_record_from_json(j));
      Sink sink(g.out_path, out);
      *sink << export_tables(recs);
      return 0;
    }

    if (tr->parsed()) {
      Sink sink(g.out_path, out);
      write_records(*sink, generate_prime_triples(tr_x_max), format);
      return 0;
    }

    if (mp->parsed()) {
      auto mode = mp_mode == "coprime" ? ManypairsMode::CoprimeToQ : ManypairsMode::DivisibleByQ;
      Nat q = nat_arg(mp_q, "--q");
      if (q < 2) throw UsageError("--q must be at least 2");
      Sink sink(g.out_path, out);
      write_records(*sink, manypairs_generator(q, mp_x_max, mode, policy), format);
      return 0;
    }
  } catch (const UsageError& e) {
    err << "emgraph: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "emgraph: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace emgraph
