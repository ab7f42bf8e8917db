#pragma once

// The lattice L = (+)_x Z[E_{j,x}] (+) Z H spanned by exceptional curves and
// a polarization, its discriminant form, and codes read off overlattices.

#include <vector>

#include "adecodes/codes.hpp"

namespace adecodes {

/// Coefficients over a lattice basis.
using RationalVector = std::vector<Rational>;

/// Cartan blocks of the points, in order, followed by [d] for H.
class PolarizedLattice {
 public:
  PolarizedLattice(std::vector<SingularPoint> points, Integer degree);

  const std::vector<SingularPoint>& points() const { return points_; }
  const Integer& degree() const { return degree_; }
  const IntMatrix& gram() const { return gram_; }
  std::size_t dimension() const { return gram_.rows(); }
  /// Basis index of E_{j,x} for point p, vertex j (1-based).
  std::size_t basis_index(std::size_t p, int j) const { return offsets_[p] + static_cast<std::size_t>(j - 1); }
  std::size_t h_index() const { return dimension() - 1; }
  bool is_even() const;

 private:
  std::vector<SingularPoint> points_;
  Integer degree_;
  IntMatrix gram_;
  std::vector<std::size_t> offsets_;
};

/// Exact inverse of a nonsingular integer matrix; throws InputError when singular.
std::vector<RationalVector> rational_inverse(const IntMatrix& M);

bool is_even_lattice(const IntMatrix& gram);

/// L^dual / L with its pairing b (values mod 1) and quadratic form q. For an
/// even lattice q lives in Q/2Z; for an odd one only q mod Z is well defined.
class DiscriminantForm {
 public:
  DiscriminantForm() = default;
  /// Throws InputError for a degenerate or non-symmetric Gram matrix.
  explicit DiscriminantForm(const IntMatrix& gram);

  const FinAbGroup& group() const { return group_; }
  const IntMatrix& gram() const { return gram_; }
  bool is_even() const { return even_; }
  /// 2 for even lattices, 1 otherwise.
  int q_modulus() const { return even_ ? 2 : 1; }

  /// A vector of L^dual representing x.
  RationalVector lift(const GroupElement& x) const;
  /// Class of lambda in L^dual / L; throws InputError when lambda is not in L^dual.
  GroupElement element_of(const RationalVector& lambda) const;

  Rational b(const GroupElement& x, const GroupElement& y) const;
  Rational q(const GroupElement& x) const;

 private:
  IntMatrix gram_;
  bool even_ = true;
  FinAbGroup group_;
  GroupHom projection_;                // Z^n -> group, y = gram * lambda
  std::vector<RationalVector> lifts_;  // lifts_[s] represents slot generator s
};

DiscriminantForm discriminant_form(const PolarizedLattice& L);

/// <lambda, mu> for rational coefficient vectors.
Rational pairing(const IntMatrix& gram, const RationalVector& lambda, const RationalVector& mu);

/// Upper bound on subgroups visited by isotropic_subgroups.
inline constexpr long long kIsotropicSearchCap = 200'000;

/// Every subgroup U of the given order on which b vanishes and q vanishes
/// (mod 2Z or mod Z, following the parity of the lattice), sorted by their
/// element lists. Throws ResourceError past `cap` visited subgroups.
std::vector<Subgroup> isotropic_subgroups(const DiscriminantForm& form, const Integer& order,
                                          long long cap = kIsotropicSearchCap);

bool is_isotropic(const DiscriminantForm& form, const std::vector<GroupElement>& generators);

/// L^sat / L for rational generators lambda in L^dual.
struct SaturationData {
  std::vector<RationalVector> generators;
  FinAbGroup quotient;
};

SaturationData saturation(const PolarizedLattice& L, const std::vector<RationalVector>& generators);

/// True when L + <generators> is itself an integral lattice.
bool saturation_is_integral(const PolarizedLattice& L, const std::vector<RationalVector>& generators);

/// The extended code K' dual to L^sat / L: each lambda gives the vector whose
/// value on gamma_j at x is the E_{j,x}-coefficient mod 1 and whose H-value
/// is the H-coefficient mod 1.
LabeledCode code_from_saturation(const PolarizedLattice& L, const std::vector<RationalVector>& generators);

/// Same, with generators taken as lifts of a subgroup of the discriminant.
LabeledCode code_from_subgroup(const PolarizedLattice& L, const DiscriminantForm& form, const Subgroup& U);

/// Lambda_G = Z^n / span{(I - g) lambda} for the generators g of G.
FinAbGroup coinvariants(const std::vector<IntMatrix>& action);

/// Code group G_ab (+) Lambda_G of a torus quotient with a semidirect product.
FinAbGroup covariants(const std::vector<IntMatrix>& action, const FinAbGroup& G_ab);

}  // namespace adecodes
