#pragma once

// Closure of a code under single-curve geometric shortenings, classified up
// to equivalence.

#include <optional>
#include <string>
#include <vector>

#include "adecodes/codes.hpp"

namespace adecodes {

/// A relabeling-invariant summary: labels, |K|, weight enumerator by
/// H-value and the sorted per-point profiles. Equivalent codes agree.
std::string code_fingerprint(const LabeledCode& code);

struct Descendant {
  std::string point;  // id of the shortened point in the parent
  int vertex = 0;     // deleted vertex of its diagram
  LabeledCode code;
};

/// One candidate per (point, vertex), reduced up to equivalence; the first
/// witness in (point, vertex) order is kept.
std::vector<Descendant> descendants(const LabeledCode& code);

struct GenealogyNode {
  LabeledCode code;
  std::size_t nu = 0;  // number of singular points
  std::string labels;
  Integer k_order = 1;
  int k2_dim = 0;
  int rank = 0;
  int depth = 0;
  std::string fingerprint;
};

struct Witness {
  std::string point;
  int vertex = 0;
  friend auto operator<=>(const Witness&, const Witness&) = default;
};

struct GenealogyEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<Witness> witnesses;  // sorted
};

struct GenealogyDag {
  std::vector<GenealogyNode> nodes;  // nodes[0] is the ancestor
  std::vector<GenealogyEdge> edges;  // sorted by (from, to)
  bool complete = true;

  /// Number of classes per point count, keyed by nu.
  std::map<std::size_t, std::size_t> counts_by_nu() const;
};

/// Thrown when the node cap is hit; carries the partial DAG.
class GenealogyCapExceeded : public ResourceError {
 public:
  GenealogyCapExceeded(std::string what, GenealogyDag partial)
      : ResourceError(std::move(what)), partial_(std::move(partial)) {}
  const GenealogyDag& partial() const { return partial_; }

 private:
  GenealogyDag partial_;
};

/// Node cap from ADE_CODES_MAX_NODES (default 100000).
std::size_t genealogy_node_cap();

/// Breadth-first closure; max_depth counts shortening steps from the ancestor.
GenealogyDag build_dag(const LabeledCode& ancestor, std::optional<int> max_depth = std::nullopt,
                       std::optional<std::size_t> max_nodes = std::nullopt);

std::string to_dot(const GenealogyDag& dag);
/// Header "nu,labels,K_order,k2_dim,rank", one row per node.
std::string to_csv(const GenealogyDag& dag);

}  // namespace adecodes
