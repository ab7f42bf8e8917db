#pragma once

// Exact arithmetic for finitely generated abelian groups.
//
// Everything here is built on an integer Smith normal form. Groups are kept in
// invariant-factor form d_1 | d_2 | ... | d_k (each d_i >= 2) plus a free rank,
// and elements are residue tuples with one slot per invariant factor followed
// by one unbounded slot per free generator.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adecodes/errors.hpp"

namespace adecodes {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Dense rectangular matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(std::span<const Integer> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transpose() const;
  std::vector<Integer> column(std::size_t c) const;
  std::vector<Integer> row(std::size_t r) const;
  std::vector<Integer> apply(std::span<const Integer> x) const;

  /// Horizontal concatenation [*this | other]; row counts must agree.
  IntMatrix hconcat(const IntMatrix& other) const;

  /// Exact determinant (fraction-free Bareiss elimination).
  Integer determinant() const;

  bool is_diagonal() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, nonnegative,
/// d_1 | d_2 | ... (zeros trailing).
struct SmithForm {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  std::vector<Integer> diagonal() const;
  std::size_t rank() const;
};

SmithForm smith_normal_form(const IntMatrix& M);

/// Basis of the integer kernel {x in Z^cols : M x = 0}, as columns.
IntMatrix integer_kernel(const IntMatrix& M);

/// Inverse of a square matrix with determinant +-1; throws otherwise.
IntMatrix unimodular_inverse(const IntMatrix& U);

/// Finitely generated abelian group in invariant-factor normal form.
class FinAbGroup {
 public:
  /// The trivial group.
  FinAbGroup() = default;
  /// Validates the divisibility chain; throws InputError otherwise.
  FinAbGroup(std::vector<Integer> invariant_factors, std::size_t free_rank = 0);

  /// Normalizes an arbitrary list of cyclic orders (0 = infinite cyclic,
  /// 1 = trivial) to invariant-factor form.
  static FinAbGroup from_cyclic_orders(std::span<const Integer> orders);
  static FinAbGroup free(std::size_t rank) { return FinAbGroup({}, rank); }

  const std::vector<Integer>& invariant_factors() const { return factors_; }
  std::size_t free_rank() const { return free_rank_; }
  std::size_t num_slots() const { return factors_.size() + free_rank_; }

  /// Slot moduli: the invariant factors followed by 0 for each free slot.
  std::vector<Integer> moduli() const;

  bool is_finite() const { return free_rank_ == 0; }
  bool is_trivial() const { return factors_.empty() && free_rank_ == 0; }
  /// Order of a finite group; throws for infinite groups.
  Integer order() const;
  /// Last invariant factor (1 for the trivial group); throws when infinite.
  Integer exponent() const;

  /// "0", "Z/4", "Z/2 + Z/2", "Z^2 + Z/3".
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;

 private:
  std::vector<Integer> factors_;
  std::size_t free_rank_ = 0;
};

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b);

/// An element of a FinAbGroup, residues reduced into [0, d_i).
class GroupElement {
 public:
  GroupElement() = default;
  GroupElement(FinAbGroup group, std::vector<Integer> residues);

  static GroupElement zero(const FinAbGroup& group);

  const FinAbGroup& group() const { return group_; }
  const std::vector<Integer>& residues() const { return residues_; }

  bool is_zero() const;
  /// Additive order; 0 for elements of infinite order.
  Integer order() const;

  GroupElement operator+(const GroupElement& other) const;
  GroupElement operator-() const;
  GroupElement operator-(const GroupElement& other) const { return *this + (-other); }
  GroupElement scaled(const Integer& k) const;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const;

 private:
  FinAbGroup group_;
  std::vector<Integer> residues_;
};

/// A homomorphism A -> Q/Z on the torsion slots of A (free slots map to 0
/// here; Z-valued parts of the dual are not modeled). Slot i holds the value
/// numerator_i / d_i on the i-th invariant-factor generator.
class Character {
 public:
  Character() = default;
  Character(FinAbGroup group, std::vector<Integer> numerators);

  const FinAbGroup& group() const { return group_; }
  const std::vector<Integer>& numerators() const { return numerators_; }

  Rational value_on_slot(std::size_t slot) const;
  /// Value in [0, 1).
  Rational operator()(const GroupElement& x) const;
  Integer order() const;
  bool is_zero() const;

  friend bool operator==(const Character&, const Character&) = default;

 private:
  FinAbGroup group_;
  std::vector<Integer> numerators_;
};

/// Characters dual to the slot generators: chi_i(e_j) = delta_ij / d_i.
std::vector<Character> dual_basis(const FinAbGroup& group);

/// A homomorphism given by an integer matrix acting on residue tuples
/// (target slots x source slots).
class GroupHom {
 public:
  GroupHom() = default;
  /// Throws InputError when the matrix does not respect source relations.
  GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix);

  const FinAbGroup& source() const { return source_; }
  const FinAbGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  GroupElement operator()(const GroupElement& x) const;
  GroupElement apply(std::span<const Integer> residues) const;

  bool is_surjective() const;

 private:
  FinAbGroup source_;
  FinAbGroup target_;
  IntMatrix matrix_;
};

/// coker(M : Z^cols -> Z^rows) with the projection from Z^rows.
struct Cokernel {
  FinAbGroup group;
  GroupHom projection;
};

Cokernel cokernel(const IntMatrix& M);

/// A subgroup given by generators, with an explicit basis realising its
/// invariant-factor decomposition and the corresponding quotient.
class Subgroup {
 public:
  const FinAbGroup& ambient() const { return ambient_; }
  const FinAbGroup& group() const { return group_; }
  /// basis()[i] has order group().invariant_factors()[i]; free generators last.
  const std::vector<GroupElement>& basis() const { return basis_; }
  const FinAbGroup& quotient() const { return quotient_; }
  const GroupHom& projection() const { return projection_; }

  bool contains(const GroupElement& x) const;

 private:
  friend Subgroup subgroup(const FinAbGroup&, const std::vector<GroupElement>&);
  FinAbGroup ambient_;
  FinAbGroup group_;
  std::vector<GroupElement> basis_;
  FinAbGroup quotient_;
  GroupHom projection_;
  IntMatrix relations_;  // ambient relations | generators
};

Subgroup subgroup(const FinAbGroup& ambient, const std::vector<GroupElement>& generators);

/// Generators of ker(f).
Subgroup kernel(const GroupHom& f);

/// Subgroup data for Z^s / diag(moduli) where moduli need not form a chain.
/// Returned basis vectors are reduced residues; orders are the invariant
/// factors of the span (free generators have order 0).
struct DiagonalSpan {
  std::vector<Integer> orders;
  std::vector<std::vector<Integer>> basis;
};

DiagonalSpan span_in_diagonal(std::span<const Integer> moduli,
                              const std::vector<std::vector<Integer>>& generators);

/// Generators of the kernel of x -> M x between diagonal presentations.
std::vector<std::vector<Integer>> kernel_in_diagonal(std::span<const Integer> source_moduli,
                                                     std::span<const Integer> target_moduli,
                                                     const IntMatrix& M);

struct PrimaryComponent {
  FinAbGroup group;
  GroupHom inclusion;
  GroupHom projection;
};

/// The p-Sylow summand of a finite group with inclusion and projection,
/// projection o inclusion = id.
PrimaryComponent primary_component(const FinAbGroup& A, const Integer& p);

bool is_prime(const Integer& n);
/// Distinct prime divisors in increasing order.
std::vector<Integer> prime_divisors(Integer n);
/// Largest k with p^k | n (n != 0).
unsigned valuation(Integer n, const Integer& p);

/// Nonnegative remainder.
Integer mod_floor(const Integer& a, const Integer& m);
/// Fractional part in [0, 1).
Rational frac(const Rational& x);
/// Parses "a/b" or "a".
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& x);

}  // namespace adecodes
