#include "adecodes/genealogy.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace adecodes {

std::string code_fingerprint(const LabeledCode& code) {
  const auto vectors = code.enumerate();
  std::map<std::pair<int, std::string>, long> enumerator;
  std::vector<std::vector<std::string>> profile(code.size());
  for (const auto& v : vectors) {
    const std::string h = v.h ? format_rational(*v.h) : "-";
    int weight = 0;
    std::vector<std::string> keys(code.size());
    for (std::size_t p = 0; p < code.size(); ++p) {
      const auto& vals = v.values[p];
      if (std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x == 0; })) continue;
      ++weight;
      keys[p] = character_key(code.local(p), vals);
    }
    ++enumerator[{weight, h}];
    for (std::size_t p = 0; p < code.size(); ++p)
      if (!keys[p].empty()) profile[p].push_back(keys[p] + "/" + h + "/" + std::to_string(weight));
  }
  std::vector<std::string> points;
  for (std::size_t p = 0; p < code.size(); ++p) {
    std::sort(profile[p].begin(), profile[p].end());
    std::string s = code.points()[p].label.to_string() + "[";
    for (const auto& k : profile[p]) s += k + ";";
    points.push_back(s + "]");
  }
  std::sort(points.begin(), points.end());

  std::ostringstream out;
  out << label_multiset(code.points()) << "|" << code.H1().to_string() << "|";
  for (const auto& [k, n] : enumerator) out << k.first << ":" << k.second << "=" << n << ",";
  out << "|";
  for (const auto& s : points) out << s;
  return out.str();
}

namespace {

struct Candidate {
  std::size_t parent = 0;
  Witness witness;
  LabeledCode code;
  std::string fingerprint;
};

std::vector<Candidate> candidates_of(const LabeledCode& code, std::size_t parent) {
  std::vector<Candidate> out;
  for (const auto& p : code.points())
    for (int v = 1; v <= p.label.index; ++v) out.push_back({parent, {p.id, v}, {}, {}});
  return out;
}

// Fills in code and fingerprint for every candidate, spread over threads.
void evaluate(std::vector<Candidate>& cands, const std::vector<const LabeledCode*>& parents) {
  std::vector<std::exception_ptr> errors(cands.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < cands.size(); i = next++) {
      try {
        auto& c = cands[i];
        c.code = shorten_geometric(*parents[c.parent], c.witness.point, {c.witness.vertex});
        c.fingerprint = code_fingerprint(c.code);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), cands.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

int k2_dim(const LabeledCode& code) {
  int k = 0;
  for (const auto& e : code.orders()) k += (e % 2 == 0);
  return k;
}

}  // namespace

std::vector<Descendant> descendants(const LabeledCode& code) {
  auto cands = candidates_of(code, 0);
  evaluate(cands, {&code});
  std::vector<Descendant> out;
  std::vector<std::string> prints;
  for (auto& c : cands) {
    bool dup = false;
    for (std::size_t i = 0; i < out.size() && !dup; ++i)
      dup = prints[i] == c.fingerprint && equivalent(out[i].code, c.code).has_value();
    if (dup) continue;
    prints.push_back(c.fingerprint);
    out.push_back({c.witness.point, c.witness.vertex, std::move(c.code)});
  }
  return out;
}

std::map<std::size_t, std::size_t> GenealogyDag::counts_by_nu() const {
  std::map<std::size_t, std::size_t> out;
  for (const auto& n : nodes) ++out[n.nu];
  return out;
}

std::size_t genealogy_node_cap() {
  const char* env = std::getenv("ADE_CODES_MAX_NODES");
  if (!env || !*env) return 100000;
  try {
    std::size_t pos = 0;
    long long v = std::stoll(env, &pos);
    if (pos != std::string(env).size() || v < 1) throw std::invalid_argument("cap");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw InputError(std::string("ADE_CODES_MAX_NODES must be a positive integer, got '") + env + "'");
  }
}

GenealogyDag build_dag(const LabeledCode& ancestor, std::optional<int> max_depth, std::optional<std::size_t> max_nodes) {
  const std::size_t cap = max_nodes ? *max_nodes : genealogy_node_cap();
  GenealogyDag dag;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Witness>> edges;

  auto add_node = [&](LabeledCode code, std::string print, int depth) {
    GenealogyNode n;
    n.nu = code.size();
    n.labels = label_multiset(code.points());
    n.k_order = code.order();
    n.k2_dim = k2_dim(code);
    n.rank = code.rank();
    n.depth = depth;
    n.fingerprint = print;
    n.code = std::move(code);
    buckets[print].push_back(dag.nodes.size());
    dag.nodes.push_back(std::move(n));
  };
  auto finish_edges = [&] {
    dag.edges.clear();
    for (auto& [k, w] : edges) {
      std::sort(w.begin(), w.end());
      dag.edges.push_back({k.first, k.second, w});
    }
  };

  add_node(ancestor, code_fingerprint(ancestor), 0);
  std::vector<std::size_t> frontier{0};
  for (int depth = 1; !frontier.empty(); ++depth) {
    if (max_depth && depth > *max_depth) break;
    std::vector<Candidate> cands;
    std::vector<const LabeledCode*> parents(dag.nodes.size(), nullptr);
    for (std::size_t id : frontier) {
      parents[id] = &dag.nodes[id].code;
      auto cs = candidates_of(dag.nodes[id].code, id);
      cands.insert(cands.end(), std::make_move_iterator(cs.begin()), std::make_move_iterator(cs.end()));
    }
    evaluate(cands, parents);

    std::vector<std::size_t> next;
    for (auto& c : cands) {
      std::optional<std::size_t> match;
      for (std::size_t id : buckets[c.fingerprint])
        if (equivalent(dag.nodes[id].code, c.code)) {
          match = id;
          break;
        }
      if (!match) {
        if (dag.nodes.size() >= cap) {
          dag.complete = false;
          finish_edges();
          throw GenealogyCapExceeded("genealogy exceeded the node cap of " + std::to_string(cap) +
                                         " (set ADE_CODES_MAX_NODES to raise it)",
                                     std::move(dag));
        }
        match = dag.nodes.size();
        add_node(std::move(c.code), c.fingerprint, depth);
        next.push_back(*match);
      }
      edges[{c.parent, *match}].push_back(c.witness);
    }
    frontier = std::move(next);
  }
  finish_edges();
  return dag;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string to_dot(const GenealogyDag& dag) {
  std::ostringstream out;
  out << "digraph genealogy {\n";
  out << "  node [shape=box];\n";
  if (!dag.complete) out << "  // incomplete: node cap reached\n";
  for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
    const auto& n = dag.nodes[i];
    out << "  n" << i << " [label=\"nu=" << n.nu << "\\n" << dot_escape(n.labels) << "\\n|K|=" << n.k_order << "\"];\n";
  }
  for (const auto& e : dag.edges) {
    std::string w;
    for (const auto& x : e.witnesses) {
      if (!w.empty()) w += ' ';
      w += x.point + ":" + std::to_string(x.vertex);
    }
    out << "  n" << e.from << " -> n" << e.to << " [label=\"" << dot_escape(w) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string to_csv(const GenealogyDag& dag) {
  std::ostringstream out;
  out << "nu,labels,K_order,k2_dim,rank\n";
  for (const auto& n : dag.nodes) out << n.nu << "," << n.labels << "," << n.k_order << "," << n.k2_dim << "," << n.rank << "\n";
  return out.str();
}

}  // namespace adecodes
