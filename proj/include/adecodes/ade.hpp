#pragma once

// ADE labels, Dynkin diagrams and the local homology of Kleinian
// singularities.

#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "adecodes/abelian.hpp"

namespace adecodes {

enum class Family { A, D, E };

struct DynkinLabel {
  Family family = Family::A;
  int index = 1;

  /// Throws InputError when the index is out of range for the family.
  DynkinLabel(Family f, int n);
  DynkinLabel() = default;

  /// "A3", "D5", "E6".
  std::string to_string() const;
  /// Parses "A3", "A_3", "a3".
  static DynkinLabel parse(const std::string& text);
  static Family parse_family(const std::string& text);

  friend auto operator<=>(const DynkinLabel&, const DynkinLabel&) = default;
};

/// A Dynkin diagram with the fixed vertex numbering
///   A_n: 1-2-...-n
///   D_n: 1-...-(n-1), n attached to n-2
///   E_6: 1-2-3-5-6, 4 attached to 3
///   E_7: 1-...-6, 7 attached to 4
///   E_8: 1-...-7, 8 attached to 5
/// Vertices are 1-based in the public API.
class DynkinConfig {
 public:
  explicit DynkinConfig(DynkinLabel label);

  const DynkinLabel& label() const { return label_; }
  int size() const { return label_.index; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<int>& neighbours(int v) const { return adj_[v - 1]; }
  bool adjacent(int u, int v) const;
  /// Diagonal -2, off-diagonal 1 on edges.
  const IntMatrix& cartan() const { return cartan_; }

 private:
  DynkinLabel label_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> adj_;
  IntMatrix cartan_;
};

/// H_1 of the punctured neighbourhood: coker of the Cartan matrix, with the
/// classes of the loops gamma_i around the exceptional curves.
struct LocalHomology {
  DynkinLabel label;
  FinAbGroup group;
  std::vector<GroupElement> gamma;            // gamma[i-1] = class of gamma_i
  std::vector<int> distinguished;             // vertices whose classes generate
  std::vector<std::vector<Integer>> slot_lifts;  // integer combination of gammas hitting slot i

  int size() const { return static_cast<int>(gamma.size()); }
  /// Largest order of an element (m_x); 1 for E_8.
  Integer exponent() const { return group.exponent(); }

  /// gamma-values (chi(gamma_1), ..., chi(gamma_n)) in [0,1) -> slot numerators.
  /// Throws InputError if the values are not a character (violate a relation).
  std::vector<Integer> to_slots(const std::vector<Rational>& gamma_values) const;
  /// Slot numerators -> gamma-values.
  std::vector<Rational> to_gamma_values(const std::vector<Integer>& slots) const;
  /// True iff C c is integral, i.e. the values respect every relation.
  bool is_character(const std::vector<Rational>& gamma_values) const;
};

/// Cached per label; safe to call concurrently.
std::shared_ptr<const LocalHomology> local_homology(const DynkinLabel& label);
inline std::shared_ptr<const LocalHomology> local_homology(const DynkinConfig& c) { return local_homology(c.label()); }

/// A connected piece of a diagram after deleting vertices, renumbered
/// canonically; original[k-1] is the vertex of the parent diagram that became
/// vertex k.
struct DiagramComponent {
  DynkinLabel label;
  std::vector<int> original;
};

struct ShorteningData {
  std::vector<DiagramComponent> components;  // ordered by smallest original vertex
  FinAbGroup reduced;                        // H'_1 = H_1 / <gamma_i : i in S>
  GroupHom quotient;                         // H_1 -> H'_1
  GroupHom patch;                            // (+)_y H_1(y) -> H'_1
};

/// Deletes the vertex set S (1-based). Throws InputError when S is empty or
/// names a vertex outside the diagram.
ShorteningData delete_vertices(const DynkinConfig& c, const std::set<int>& S);

/// Identifies a connected ADE-shaped vertex set of a diagram and returns its
/// canonical numbering.
DiagramComponent identify_component(const DynkinConfig& c, const std::vector<int>& vertices);

/// Maximum number of pairwise non-adjacent vertices (exact search).
int delta_independent(const DynkinConfig& c);

/// Self-intersection of the branch divisor over a point with a character of
/// order N in {2, 3}. Throws InputError when the label admits no such
/// character or gamma_values does not have order N.
int branch_self_intersection(const DynkinLabel& label, const std::vector<Rational>& gamma_values, int N);

/// Order of a character given by gamma-values.
Integer character_order(const std::vector<Rational>& gamma_values);

}  // namespace adecodes
