#pragma once

// Generalized labeled codes: a surjection k from the sum of local homology
// groups (plus an optional H-coordinate) onto H_1, and the dual code
// K = Im(k^dual) of characters vanishing on Ker(k).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "adecodes/ade.hpp"

namespace adecodes {

struct SingularPoint {
  std::string id;
  DynkinLabel label;

  friend bool operator==(const SingularPoint&, const SingularPoint&) = default;
};

/// An element of (+)_x H_1(x)^dual (+ Z/d' for extended codes), stored as
/// gamma-values: values[p][i-1] = v_x(gamma_i) in [0, 1) at point p.
struct CodeVector {
  std::vector<std::vector<Rational>> values;
  std::optional<Rational> h;  // H-value in [0, 1), extended codes only

  bool is_zero() const;
  friend bool operator==(const CodeVector&, const CodeVector&) = default;
};

/// N with Im(v) = (1/N Z)/Z.
Integer vector_order(const CodeVector& v);

/// Upper bound on |K| for operations that enumerate every vector.
inline constexpr long long kEnumerationLimit = 1'000'000;

class LabeledCode {
 public:
  LabeledCode() = default;

  /// K generated by the given vectors. h_modulus (d') makes the code
  /// extended; gamma-values are validated against each point's relations.
  static LabeledCode from_dual(std::vector<SingularPoint> points, const std::vector<CodeVector>& generators,
                               std::optional<Integer> h_modulus = std::nullopt);

  /// H1 = V / <kernel generators>, K = characters vanishing on them.
  /// Generators are V-slot residue tuples (see v_moduli()).
  static LabeledCode from_kernel(std::vector<SingularPoint> points,
                                 const std::vector<std::vector<Integer>>& kernel_generators,
                                 std::optional<Integer> h_modulus = std::nullopt);

  /// Accepts either side (or both, which must be consistent: every dual
  /// generator has to annihilate every kernel generator).
  static LabeledCode build(std::vector<SingularPoint> points,
                           const std::vector<std::vector<Integer>>& kernel_generators,
                           const std::vector<CodeVector>& dual_generators,
                           std::optional<Integer> h_modulus = std::nullopt);

  /// From generators already in V-slot numerator form.
  static LabeledCode from_slot_generators(std::vector<SingularPoint> points,
                                          const std::vector<std::vector<Integer>>& generators,
                                          std::optional<Integer> h_modulus = std::nullopt);

  const std::vector<SingularPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const LocalHomology& local(std::size_t p) const { return *local_[p]; }
  /// Index of a point id; throws InputError when absent.
  std::size_t index_of(const std::string& id) const;

  bool is_extended() const { return h_modulus_.has_value(); }
  /// d' of an extended code.
  std::optional<Integer> h_modulus() const { return h_modulus_; }

  /// Moduli of the slots of V: each point's invariant factors in order, then
  /// the H slot when d' > 1.
  const std::vector<Integer>& v_moduli() const { return v_moduli_; }
  std::size_t slot_offset(std::size_t p) const { return offsets_[p]; }
  std::size_t slot_count(std::size_t p) const { return offsets_[p + 1] - offsets_[p]; }
  bool has_h_slot() const { return h_slot_; }

  /// H_1 = target of k; isomorphic to K.
  const FinAbGroup& H1() const { return h1_; }
  /// k as an integer matrix (H1 slots x V slots).
  IntMatrix k_matrix() const;
  std::vector<std::vector<Integer>> kernel_generators() const;

  /// Basis of K in V-slot numerators: basis()[j] has order orders()[j].
  const std::vector<std::vector<Integer>>& basis() const { return basis_; }
  const std::vector<Integer>& orders() const { return orders_; }
  std::vector<CodeVector> dual_generators() const;
  Integer order() const { return h1_.order(); }
  int rank() const;

  CodeVector to_vector(const std::vector<Integer>& slots) const;
  std::vector<Integer> to_slots(const CodeVector& v) const;
  bool contains(const CodeVector& v) const;

  /// Every vector of K as V-slot numerators (the zero vector first).
  /// Throws ResourceError beyond `limit`.
  std::vector<std::vector<Integer>> enumerate_slots(long long limit = kEnumerationLimit) const;
  std::vector<CodeVector> enumerate(long long limit = kEnumerationLimit) const;

  /// Sub-code of vectors with zero H-value (the code itself if not extended).
  LabeledCode strict_part() const;

  /// Generators (V-slot numerators) of {v in K : v vanishes on the given slots}.
  std::vector<std::vector<Integer>> vanishing_on(const std::vector<std::size_t>& slots) const;

 private:
  void init_layout();

  std::vector<SingularPoint> points_;
  std::vector<std::shared_ptr<const LocalHomology>> local_;
  std::optional<Integer> h_modulus_;
  std::vector<Integer> v_moduli_;
  std::vector<std::size_t> offsets_;
  bool h_slot_ = false;
  FinAbGroup h1_;
  std::vector<std::vector<Integer>> basis_;
  std::vector<Integer> orders_;
};

/// d' = gcd(d, lcm of the local exponents m_x).
Integer extended_modulus(const std::vector<SingularPoint>& points, const Integer& degree);

/// Canonical text key for a local character: gamma-values on the
/// distinguished generators, comma-separated ("1/2,0").
std::string character_key(const LocalHomology& lh, const std::vector<Rational>& gamma_values);

struct WeightReport {
  Integer order = 1;
  /// (label, character key) -> number of points with that nonzero value.
  std::map<std::pair<DynkinLabel, std::string>, int> refined;
  std::map<DynkinLabel, int> label_weights;
  int hamming = 0;
  // order 2
  std::map<int, int> t_A_odd;   // m -> t(A_{2m+1})
  std::map<int, int> t_D_plus;  // m -> t(D_{2m}, +)
  int t_D_minus = 0;            // D_n odd, or D_{2m} with v(gamma_1) = 0
  int t_E7 = 0;
  // order 3
  std::map<int, int> t_A_3s;  // s -> t(A_{3s-1})
  int t_E6 = 0;
  bool almost_simple = false;
  std::optional<Rational> h;
};

WeightReport weights(const LabeledCode& code, const CodeVector& v);

/// Removes z, keeping the vectors that vanish at z.
LabeledCode shorten_full(const LabeledCode& code, const std::string& z);

/// Deletes the vertices S of z's diagram; z is replaced by the components
/// (ids "<z>.1", "<z>.2", ... in component order).
LabeledCode shorten_geometric(const LabeledCode& code, const std::string& z, const std::set<int>& S);

/// K = (+)_p K_p over the primes dividing |K|.
std::map<Integer, LabeledCode> primary_decomposition(const LabeledCode& code);

/// A label-preserving bijection phi (phi[i] = index in b of a's point i)
/// carrying K_a onto K_b, or nullopt. No automorphisms of the local groups
/// are applied. Throws ResourceError when |K| exceeds kEnumerationLimit.
std::optional<std::vector<std::size_t>> equivalent(const LabeledCode& a, const LabeledCode& b);

/// Multiset of labels, e.g. "6xA1+1xA3" (sorted by label).
std::string label_multiset(const std::vector<SingularPoint>& points);

}  // namespace adecodes
