#include "adecodes/catalog.hpp"

#include <functional>
#include <map>

#include "adecodes/lattice.hpp"

namespace adecodes {

namespace {

std::vector<SingularPoint> points(const DynkinLabel& l, int n) {
  std::vector<SingularPoint> pts;
  for (int i = 0; i < n; ++i) pts.push_back({"p" + std::to_string(i + 1), l});
  return pts;
}

const DynkinLabel A1(Family::A, 1);
const DynkinLabel A2(Family::A, 2);

CatalogEntry from_lattice(std::string name, std::string description, const PolarizedLattice& L,
                          const std::vector<RationalVector>& gens, std::string notes) {
  CatalogEntry e;
  e.name = std::move(name);
  e.description = std::move(description);
  e.context = SurfaceContext::from_degree(L.degree());
  e.extended = code_from_saturation(L, gens);
  e.code = e.extended->strict_part();
  e.notes = std::move(notes);
  return e;
}

RationalVector zeros(const PolarizedLattice& L) { return RationalVector(L.dimension(), Rational(0)); }

CatalogEntry cayley() {
  PolarizedLattice L(points(A1, 4), 3);
  auto g = zeros(L);
  for (int p = 0; p < 4; ++p) g[L.basis_index(static_cast<std::size_t>(p), 1)] = Rational(1, 2);
  return from_lattice("cayley-cubic", "4-nodal Cayley cubic", L, {g},
                      "saturation by (1/2)(E1+E2+E3+E4); d' = 1, so K' = K = Z/2 (1,1,1,1)");
}

CatalogEntry three_cusp() {
  PolarizedLattice L(points(A2, 3), 3);
  const Rational t(1, 3);
  auto g1 = zeros(L), g2 = zeros(L);
  // (1/3)(E1 - E2 - E3 + E4 + H) and (1/3)(-E1 + E2 - E5 + E6 + H).
  g1[0] = t, g1[1] = -t, g1[2] = -t, g1[3] = t, g1[6] = t;
  g2[0] = -t, g2[1] = t, g2[4] = -t, g2[5] = t, g2[6] = t;
  return from_lattice("three-cusp-cubic", "cubic with three A2 singularities", L, {g1, g2},
                      "K' = (Z/3)^2, K = Z/3; the second saturation class is sign-adjusted on the first "
                      "cusp so that the two classes are orthogonal and span an integral overlattice");
}

CatalogEntry e6_cubic() {
  PolarizedLattice L({{"p1", DynkinLabel(Family::E, 6)}}, 3);
  auto form = discriminant_form(L);
  auto subs = isotropic_subgroups(form, 3);
  // Two order-3 isotropic subgroups, exchanged by the E6 diagram automorphism.
  CatalogEntry e;
  e.name = "e6-cubic";
  e.description = "cubic with an E6 singularity";
  e.context = SurfaceContext::from_degree(3);
  e.extended = code_from_subgroup(L, form, subs.at(0));
  e.code = e.extended->strict_part();
  e.notes = "K' = Z/3, K = 0, from the first of the two order-3 isotropic subgroups of the discriminant "
            "(the other is its image under the diagram automorphism and gives the same types)";
  return e;
}

CatalogEntry a5a1_cubic() {
  PolarizedLattice L({{"p1", DynkinLabel(Family::A, 5)}, {"p2", A1}}, 3);
  auto g = zeros(L);
  for (int i = 1; i <= 5; ++i) g[static_cast<std::size_t>(i - 1)] = Rational(-i, 6);
  g[5] = Rational(1, 2);
  g[6] = Rational(-1, 3);
  return from_lattice("a5a1-cubic", "cubic with an A5 and a disjoint A1 singularity", L, {g},
                      "saturation by (1/6)[-2H + 3E6 - sum_i i E_i]; K' = Z/6, K = Z/2");
}

CodeVector binary(std::uint32_t mask, int n, std::optional<Rational> h) {
  CodeVector v;
  for (int i = 0; i < n; ++i) v.values.push_back({(mask >> i & 1) ? Rational(1, 2) : Rational(0)});
  v.h = std::move(h);
  return v;
}

// Point p_{x+1} is x in F_2^4 (bit i = coordinate x_{i+1}).
std::vector<CodeVector> affine_generators(std::optional<Rational> h) {
  std::vector<CodeVector> gens;
  for (int i = 0; i < 4; ++i) {
    std::uint32_t m = 0;
    for (int x = 0; x < 16; ++x)
      if (x >> i & 1) m |= 1u << x;
    gens.push_back(binary(m, 16, h));
  }
  gens.push_back(binary(0xFFFF, 16, h));
  return gens;
}

IntMatrix minus_identity(std::size_t n) {
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) g(i, i) = -1;
  return g;
}

CatalogEntry kummer_quartic() {
  CatalogEntry e;
  e.name = "kummer-quartic";
  e.description = "Kummer quartic with 16 nodes";
  e.context = SurfaceContext::from_degree(4);
  e.code = LabeledCode::from_dual(points(A1, 16), affine_generators(std::nullopt));
  e.covariant_group = covariants({minus_identity(4)}, FinAbGroup({Integer(2)}));
  e.notes = "K = affine functions on F_2^4 (first-order Reed-Muller code), point p_{x+1} <-> x in F_2^4; "
            "matches the torus quotient by -1: Z/2 + (Z^4)_G = (Z/2)^5";
  return e;
}

CatalogEntry kummer_extended() {
  CatalogEntry e = kummer_quartic();
  e.name = "kummer-extended";
  e.description = "Kummer quartic with its extended code";
  auto gens = affine_generators(Rational(0));
  std::uint32_t q = 0;
  for (int x = 0; x < 16; ++x)
    if (((x & 1) & (x >> 1 & 1)) ^ ((x >> 2 & 1) & (x >> 3 & 1))) q |= 1u << x;
  gens.push_back(binary(q, 16, Rational(1, 2)));
  e.extended = LabeledCode::from_dual(points(A1, 16), gens, Integer(2));
  e.notes = "K' = K + <indicator of x1 x2 + x3 x4 = 1, H-value 1/2>: a reconstruction (a trope class), "
            "validated by the extended N=2 rule (weights 6 and 10) and by the genealogy counts";
  return e;
}

CatalogEntry nine_cusp() {
  CatalogEntry e;
  e.name = "nine-cusp-k3";
  e.description = "K3 surface with nine A2 singularities (quotient of an abelian surface by Z/3)";
  e.context = SurfaceContext::k3();
  // Point p_{3a+b+1} is (a, b) in F_3^2; K = affine functions f, with v(gamma_1) = f/3.
  std::vector<CodeVector> gens;
  for (int k = 0; k < 3; ++k) {
    CodeVector v;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        int f = k == 0 ? a : k == 1 ? b : 1;
        v.values.push_back({Rational(f, 3), Rational(2 * f % 3, 3)});
      }
    gens.push_back(v);
  }
  e.code = LabeledCode::from_dual(points(A2, 9), gens);
  IntMatrix g{{0, -1, 0, 0}, {1, -1, 0, 0}, {0, 0, -1, 1}, {0, 0, -1, 0}};
  e.covariant_group = covariants({g}, FinAbGroup({Integer(3)}));
  e.notes = "K = affine functions on F_3^2 = (Z/3)^3; matches G + Lambda_G for diag(zeta, zeta^2) on Z[zeta]^2";
  return e;
}

CatalogEntry quadric_cone() {
  PolarizedLattice L(points(A1, 1), 2);
  auto g = zeros(L);
  g[0] = Rational(-1, 2);
  g[1] = Rational(1, 2);
  return from_lattice("quadric-cone", "quadric cone with one node", L, {g},
                      "K = 0; K' = Z/2 from the ruling (1/2)(-E + H)");
}

const std::map<std::string, std::function<CatalogEntry()>>& registry() {
  static const std::map<std::string, std::function<CatalogEntry()>> r{
      {"a5a1-cubic", a5a1_cubic},       {"cayley-cubic", cayley},         {"e6-cubic", e6_cubic},
      {"kummer-extended", kummer_extended}, {"kummer-quartic", kummer_quartic}, {"nine-cusp-k3", nine_cusp},
      {"quadric-cone", quadric_cone},   {"three-cusp-cubic", three_cusp},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, _] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

CatalogEntry catalog_get(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) {
    std::string list;
    for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
    throw InputError("unknown catalog entry '" + name + "'; known: " + list);
  }
  return it->second();
}

}  // namespace adecodes
