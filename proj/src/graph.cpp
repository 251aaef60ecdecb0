#include "emgraph/graph.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <map>
#include <thread>

#include "emgraph/errors.hpp"
#include "emgraph/jsonl.hpp"

namespace emgraph {

Node Node::make_root(const Nat& root) {
  if (root < 1) throw std::invalid_argument("graph root must be at least 1");
  Node n;
  n.root = root;
  n.value = root;
  return n;
}

Node Node::child(const Nat& p) const {
  Node c;
  c.root = root;
  c.edges = edges;
  c.edges.push_back(p);
  c.value = value * p;
  return c;
}

std::vector<Node> expand_node(Node& v, const EffortPolicy& policy, FactorCache* cache) {
  Factorization fz = factor(v.value + 1, policy, cache);
  v.complete = fz.complete();
  std::vector<Node> children;
  children.reserve(fz.factors.size());
  for (const auto& f : fz.factors) children.push_back(v.child(f.prime));
  std::sort(children.begin(), children.end(),
            [](const Node& a, const Node& b) { return a.edges.back() < b.edges.back(); });
  return children;
}

namespace {

struct Entry {
  Node node;
  bool expanded = false;
};

using Level = std::map<Nat, Entry>;

// Keeps one representative per value: the lexicographically smallest path.
void insert_child(Level& level, Node child) {
  auto it = level.find(child.value);
  if (it == level.end()) {
    Nat key = child.value;
    level.emplace(std::move(key), Entry{std::move(child), false});
  } else if (child.edges < it->second.node.edges) {
    it->second.node = std::move(child);
  }
}

struct Checkpoint {
  Nat root;
  std::size_t level = 0;
  std::string policy;
  std::vector<Level> levels;
};

void write_checkpoint(const std::filesystem::path& path, const Nat& root,
                      std::size_t level, const EffortPolicy& policy,
                      const std::vector<Level>& levels) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    write_jsonl(out, Json{{"kind", "header"},
                          {"root", to_decimal(root)},
                          {"level", level},
                          {"policy", policy.fingerprint()}});
    for (const auto& lv : levels) {
      for (const auto& [value, e] : lv) {
        write_jsonl(out, Json{{"edges", nat_array(e.node.edges)},
                              {"complete", e.node.complete},
                              {"expanded", e.expanded}});
      }
    }
    out.flush();
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  auto lines = read_jsonl(in);
  if (lines.empty() || lines[0].value("kind", "") != "header") {
    throw FormatError(path.string() + ": missing checkpoint header");
  }
  Checkpoint cp;
  try {
    cp.root = nat_from_json(lines[0].at("root"));
    cp.level = lines[0].at("level").get<std::size_t>();
    cp.policy = lines[0].at("policy").get<std::string>();
    for (std::size_t i = 1; i < lines.size(); ++i) {
      Node n = Node::make_root(cp.root);
      for (const auto& p : nat_array_from_json(lines[i].at("edges"))) n = n.child(p);
      n.complete = lines[i].at("complete").get<bool>();
      bool expanded = lines[i].at("expanded").get<bool>();
      if (cp.levels.size() <= n.level()) cp.levels.resize(n.level() + 1);
      Nat key = n.value;
      cp.levels[n.level()].emplace(std::move(key), Entry{std::move(n), expanded});
    }
  } catch (const Json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return cp;
}

}  // namespace

BfsResult bfs_levels(const Nat& root, std::size_t max_level, const EffortPolicy& policy,
                     FactorCache* cache, const BfsOptions& options) {
  std::vector<Level> levels;
  bool resumed = false;
  if (options.checkpoint) {
    if (auto cp = read_checkpoint(*options.checkpoint)) {
      if (cp->root != root) {
        throw FormatError(options.checkpoint->string() + ": checkpoint is for root " +
                          to_decimal(cp->root));
      }
      levels = std::move(cp->levels);
      resumed = true;
    }
  }
  if (levels.empty()) {
    levels.resize(1);
    Node r = Node::make_root(root);
    Nat key = r.value;
    levels[0].emplace(std::move(key), Entry{std::move(r), false});
  }
  if (levels.size() < max_level + 1) levels.resize(max_level + 1);

  auto summary = [&](std::size_t l) {
    LevelSummary s;
    s.level = l;
    s.node_count = levels[l].size();
    if (l > 0) {
      for (const auto& [v, e] : levels[l - 1]) s.composite_count += e.node.complete ? 0 : 1;
    }
    return s;
  };

  BfsResult result;
  result.summaries.push_back(summary(0));
  if (options.on_level) options.on_level(result.summaries.back());

  for (std::size_t l = 0; l < max_level; ++l) {
    std::vector<Entry*> todo;
    for (auto& [v, e] : levels[l]) {
      if (!e.expanded || (resumed && !e.node.complete)) todo.push_back(&e);
    }
    std::vector<std::vector<Node>> children(todo.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= todo.size()) return;
        try {
          children[i] = expand_node(todo[i]->node, policy, cache);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
        }
      }
    };
    unsigned workers = std::max(1u, options.workers);
    if (workers == 1 || todo.size() < 2) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < std::min<std::size_t>(workers, todo.size()); ++w) {
        pool.emplace_back(work);
      }
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < todo.size(); ++i) {
      todo[i]->expanded = true;
      for (auto& c : children[i]) insert_child(levels[l + 1], std::move(c));
    }
    if (options.checkpoint) {
      write_checkpoint(*options.checkpoint, root, l + 1, policy, levels);
    }
    result.summaries.push_back(summary(l + 1));
    if (options.on_level) options.on_level(result.summaries.back());
  }

  for (std::size_t l = 0; l <= max_level; ++l) {
    std::vector<Node> nodes;
    nodes.reserve(levels[l].size());
    for (auto& [v, e] : levels[l]) nodes.push_back(e.node);
    result.levels.push_back(std::move(nodes));
  }
  return result;
}

}  // namespace emgraph
