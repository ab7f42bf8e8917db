#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adecodes/lattice.hpp"

using namespace adecodes;

namespace {

DynkinLabel lab(Family f, int n) { return DynkinLabel(f, n); }

std::vector<Integer> ints(std::initializer_list<long long> xs) {
  std::vector<Integer> out;
  for (auto x : xs) out.emplace_back(x);
  return out;
}

RationalVector vec(std::initializer_list<Rational> xs) { return RationalVector(xs); }

PolarizedLattice three_cusp() {
  return PolarizedLattice({{"a", lab(Family::A, 2)}, {"b", lab(Family::A, 2)}, {"c", lab(Family::A, 2)}}, Integer(3));
}

PolarizedLattice a5a1() { return PolarizedLattice({{"x", lab(Family::A, 5)}, {"y", lab(Family::A, 1)}}, Integer(3)); }

PolarizedLattice e6_cubic() { return PolarizedLattice({{"x", lab(Family::E, 6)}}, Integer(3)); }

const Rational third(1, 3), sixth(1, 6);

// (1/3)(E1 - E2 - E3 + E4 + H) and (1/3)(E1 - E2 - E5 + E6 + H), as printed.
std::vector<RationalVector> three_cusp_printed() {
  return {vec({third, -third, -third, third, 0, 0, third}), vec({third, -third, 0, 0, -third, third, third})};
}

// Same first class; the second with the first cusp's sign flipped so that
// the two classes are orthogonal mod Z.
std::vector<RationalVector> three_cusp_integral() {
  return {vec({third, -third, -third, third, 0, 0, third}), vec({-third, third, 0, 0, -third, third, third})};
}

RationalVector a5a1_generator() {
  return vec({-sixth, -2 * sixth, -3 * sixth, -4 * sixth, -5 * sixth, 3 * sixth, -2 * sixth});
}

std::vector<GroupElement> elements(const FinAbGroup& G) {
  std::vector<GroupElement> out;
  const auto& d = G.invariant_factors();
  std::vector<Integer> x(d.size(), Integer(0));
  for (;;) {
    out.emplace_back(G, x);
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == d[i]) x[i++] = 0;
    if (i == x.size()) break;
  }
  return out;
}

std::set<std::vector<Integer>> members(const Subgroup& S) {
  std::set<std::vector<Integer>> out;
  for (const auto& x : elements(S.ambient()))
    if (S.contains(x)) out.insert(x.residues());
  return out;
}

// Brute force: all subgroups generated by at most two elements, kept when
// every element is isotropic and every pair orthogonal.
std::set<std::set<std::vector<Integer>>> brute_isotropic(const DiscriminantForm& f, const Integer& order) {
  auto all = elements(f.group());
  std::set<std::set<std::vector<Integer>>> out;
  for (const auto& x : all)
    for (const auto& y : all) {
      Subgroup S = subgroup(f.group(), {x, y});
      if (S.group().order() != order) continue;
      auto m = members(S);
      bool ok = true;
      std::vector<GroupElement> es;
      for (const auto& r : m) es.emplace_back(f.group(), r);
      for (const auto& a : es) {
        Rational qa = f.q(a);
        ok = ok && qa == 0;
        for (const auto& b : es) ok = ok && f.b(a, b) == 0;
      }
      if (ok) out.insert(m);
    }
  return out;
}

}  // namespace

TEST_CASE("discriminant groups") {
  DiscriminantForm a1(IntMatrix{{-2}});
  CHECK(a1.group() == FinAbGroup(ints({2})));
  CHECK(a1.is_even());
  CHECK(a1.q(GroupElement(a1.group(), ints({1}))) == Rational(3, 2));  // -1/2 mod 2Z
  CHECK(a1.b(GroupElement(a1.group(), ints({1})), GroupElement(a1.group(), ints({1}))) == Rational(1, 2));

  auto t = discriminant_form(three_cusp());
  CHECK(t.group() == FinAbGroup(ints({3, 3, 3, 3})));
  CHECK_FALSE(t.is_even());
  auto s = discriminant_form(a5a1());
  CHECK(s.group() == FinAbGroup::from_cyclic_orders(ints({6, 2, 3})));

  auto e8 = discriminant_form(PolarizedLattice({{"x", lab(Family::E, 8)}}, Integer(1)));
  CHECK(e8.group().is_trivial());

  CHECK_THROWS_AS(DiscriminantForm(IntMatrix{{1, 1}, {1, 1}}), InputError);
  CHECK_THROWS_AS(DiscriminantForm(IntMatrix{{1, 2}, {0, 1}}), InputError);
  CHECK_THROWS_AS(PolarizedLattice({}, Integer(0)), InputError);
}

TEST_CASE("local discriminant forms") {
  // q on the generator of each local group, against closed forms:
  // A_n: -n/(n+1), D_n: -1 on the class of gamma_1 and -n/4 on gamma_n, E_6: -4/3, E_7: -3/2.
  auto check_q = [](const DynkinLabel& l, const Rational& expected, int vertex) {
    DiscriminantForm f(DynkinConfig(l).cartan());
    // gamma_v is the class of the dual basis vector to E_v, i.e. G^{-1} e_v.
    auto inv = rational_inverse(DynkinConfig(l).cartan());
    GroupElement x = f.element_of(inv[static_cast<std::size_t>(vertex - 1)]);
    CHECK(f.q(x) == frac(expected / 2) * 2);
  };
  for (int n = 1; n <= 12; ++n) check_q(lab(Family::A, n), Rational(-n, n + 1), 1);
  for (int n = 4; n <= 12; ++n) {
    check_q(lab(Family::D, n), Rational(-1), 1);
    check_q(lab(Family::D, n), Rational(-n, 4), n);
  }
  check_q(lab(Family::E, 6), Rational(-4, 3), 1);
  check_q(lab(Family::E, 7), Rational(-3, 2), 1);
}

TEST_CASE("property: discriminant forms of random lattices") {
  std::mt19937_64 rng(7);
  const std::vector<DynkinLabel> labels{lab(Family::A, 1), lab(Family::A, 2), lab(Family::A, 4), lab(Family::D, 4),
                                        lab(Family::D, 5), lab(Family::E, 6), lab(Family::E, 7)};
  std::uniform_int_distribution<int> np(1, 3), li(0, static_cast<int>(labels.size()) - 1), deg(1, 6);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SingularPoint> pts;
    int n = np(rng);
    for (int i = 0; i < n; ++i) pts.push_back({"p" + std::to_string(i), labels[li(rng)]});
    PolarizedLattice L(pts, Integer(deg(rng)));
    auto f = discriminant_form(L);
    Integer det = L.gram().determinant();
    CHECK(f.group().order() == (det < 0 ? Integer(-det) : det));
    CHECK(f.is_even() == (L.degree() % 2 == 0));
    auto all = elements(f.group());
    for (std::size_t i = 0; i < all.size(); i += 1 + all.size() / 12)
      for (std::size_t j = 0; j < all.size(); j += 1 + all.size() / 12) {
        const auto &x = all[i], &y = all[j];
        // Round trip and lift independence.
        CHECK(f.element_of(f.lift(x)) == x);
        auto shifted = f.lift(x);
        shifted[j % shifted.size()] += 1;
        Rational qs = frac(Rational(pairing(L.gram(), shifted, shifted) / f.q_modulus())) * f.q_modulus();
        CHECK(qs == f.q(x));
        // q(x+y) - q(x) - q(y) = 2 b(x, y) modulo the q-modulus.
        Rational lhs = f.q(x + y) - f.q(x) - f.q(y) - 2 * f.b(x, y);
        CHECK(boost::multiprecision::denominator(Rational(lhs / f.q_modulus())) == 1);
        CHECK(f.b(x, y) == f.b(y, x));
      }
  }
}

TEST_CASE("isotropic subgroups") {
  SUBCASE("E6 cubic") {
    auto L = e6_cubic();
    auto f = discriminant_form(L);
    CHECK(f.group() == FinAbGroup(ints({3, 3})));
    auto subs = isotropic_subgroups(f, Integer(3));
    // q is only defined mod Z on this odd lattice, so both the line class
    // (q = -1) and its image under the diagram automorphism (q = 0) count.
    REQUIRE(subs.size() == 2);
    std::set<std::set<std::vector<Integer>>> found;
    for (const auto& U : subs) found.insert(members(U));
    CHECK(found == brute_isotropic(f, Integer(3)));
    for (const auto& U : subs) {
      auto code = code_from_subgroup(L, f, U);
      CHECK(code.H1() == FinAbGroup(ints({3})));
      CHECK(code.strict_part().order() == 1);
    }
    // The automorphism 1<->6, 2<->5 of E6 swaps the two subgroups.
    auto swap = [&](const GroupElement& x) {
      auto l = f.lift(x);
      std::swap(l[0], l[5]);
      std::swap(l[1], l[4]);
      return f.element_of(l);
    };
    auto image = members(subgroup(f.group(), {swap(subs[0].basis()[0])}));
    CHECK(image == members(subs[1]));
  }
  SUBCASE("trivial discriminant") {
    auto f = discriminant_form(PolarizedLattice({{"x", lab(Family::E, 8)}}, Integer(1)));
    auto subs = isotropic_subgroups(f, Integer(1));
    REQUIRE(subs.size() == 1);
    CHECK(subs[0].group().is_trivial());
    CHECK(isotropic_subgroups(f, Integer(2)).empty());
  }
  SUBCASE("three-cusp cubic") {
    auto L = three_cusp();
    auto f = discriminant_form(L);
    auto subs = isotropic_subgroups(f, Integer(9));
    std::set<std::set<std::vector<Integer>>> found;
    for (const auto& U : subs) found.insert(members(U));
    CHECK(found == brute_isotropic(f, Integer(9)));
    std::vector<GroupElement> cls;
    for (const auto& g : three_cusp_integral()) cls.push_back(f.element_of(g));
    CHECK(found.count(members(subgroup(f.group(), cls))) == 1);
    CHECK(is_isotropic(f, cls));
    // The printed pair pairs to 2/3 mod 1, so it spans no overlattice.
    std::vector<GroupElement> printed;
    for (const auto& g : three_cusp_printed()) printed.push_back(f.element_of(g));
    CHECK(f.b(printed[0], printed[1]) == Rational(2, 3));
    CHECK_FALSE(is_isotropic(f, printed));
    for (const auto& U : subs) CHECK(code_from_subgroup(L, f, U).H1() == FinAbGroup(ints({3, 3})));
  }
  SUBCASE("A5+A1 cubic") {
    auto L = a5a1();
    auto f = discriminant_form(L);
    auto subs = isotropic_subgroups(f, Integer(6));
    std::set<std::set<std::vector<Integer>>> found;
    for (const auto& U : subs) found.insert(members(U));
    CHECK(found == brute_isotropic(f, Integer(6)));
    auto own = members(subgroup(f.group(), {f.element_of(a5a1_generator())}));
    CHECK(found.count(own) == 1);
  }
  SUBCASE("orders and cap") {
    auto f = discriminant_form(three_cusp());
    for (long long k : {1, 3, 27, 81}) {
      auto subs = isotropic_subgroups(f, Integer(k));
      CHECK(subs.size() == brute_isotropic(f, Integer(k)).size());
      for (const auto& U : subs) {
        CHECK(U.group().order() == k);
        // The overlattice discriminant has order |D| / |U|^2.
        CHECK(f.group().order() % (U.group().order() * U.group().order()) == 0);
      }
    }
    CHECK(isotropic_subgroups(f, Integer(5)).empty());
    CHECK_THROWS_AS(isotropic_subgroups(f, Integer(9), 3), ResourceError);
  }
}

TEST_CASE("codes from saturations") {
  SUBCASE("three-cusp cubic") {
    auto L = three_cusp();
    for (const auto& gens : {three_cusp_printed(), three_cusp_integral()}) {
      auto code = code_from_saturation(L, gens);
      CHECK(code.is_extended());
      CHECK(code.H1() == FinAbGroup(ints({3, 3})));
      CHECK(code.strict_part().H1() == FinAbGroup(ints({3})));
      CHECK(saturation(L, gens).quotient == code.H1());
    }
    CHECK(saturation_is_integral(L, three_cusp_integral()));
    CHECK_FALSE(saturation_is_integral(L, three_cusp_printed()));
    // The strict vector lives on all three cusps.
    auto strict = code_from_saturation(L, three_cusp_integral()).strict_part();
    for (const auto& v : strict.enumerate())
      if (!v.is_zero()) CHECK(weights(strict, v).hamming == 3);
  }
  SUBCASE("A5+A1 cubic") {
    auto L = a5a1();
    auto code = code_from_saturation(L, {a5a1_generator()});
    CHECK(code.H1() == FinAbGroup(ints({6})));
    CHECK(code.strict_part().H1() == FinAbGroup(ints({2})));
    CHECK(*code.h_modulus() == 3);
    // A_5 values -i/6 agree with i * (-1/6).
    CodeVector v;
    v.values.emplace_back();
    for (int i = 1; i <= 5; ++i) v.values[0].push_back(frac(Rational(-i, 6)));
    v.values.push_back({Rational(1, 2)});
    v.h = Rational(2, 3);
    CHECK(code.contains(v));
    CHECK(vector_order(v) == 6);
    for (const auto& g : code.enumerate())
      for (int i = 1; i <= 5; ++i) CHECK(g.values[0][i - 1] == frac(i * g.values[0][0]));
    CHECK(saturation_is_integral(L, {a5a1_generator()}));
  }
  SUBCASE("empty generator list") {
    auto code = code_from_saturation(three_cusp(), {});
    CHECK(code.order() == 1);
    CHECK(code.strict_part().order() == 1);
  }
  SUBCASE("rejections") {
    // (1/3)(E1 - E2 - E5 + E6 + H) on E6 in the chain numbering fails at vertex 3.
    RationalVector printed{third, -third, 0, 0, -third, third, third};
    CHECK_THROWS_AS(code_from_saturation(e6_cubic(), {printed}), InputError);
    CHECK_THROWS_AS(code_from_saturation(a5a1(), {vec({third})}), InputError);
    // In the dual lattice but with a gamma-inconsistent pattern is impossible:
    // every dual vector of a Cartan block yields a genuine character.
    auto f = discriminant_form(a5a1());
    for (const auto& x : elements(f.group())) CHECK_NOTHROW(code_from_saturation(a5a1(), {f.lift(x)}));
  }
}

TEST_CASE("property: saturation sizes") {
  // |K'| = |T|, |K| divides |K'|, K = vectors with zero H-value.
  std::mt19937_64 rng(19);
  for (const auto& L : {three_cusp(), a5a1(), e6_cubic()}) {
    auto f = discriminant_form(L);
    auto all = elements(f.group());
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<RationalVector> gens{f.lift(all[pick(rng)]), f.lift(all[pick(rng)])};
      auto code = code_from_saturation(L, gens);
      auto T = saturation(L, gens).quotient;
      CHECK(T.order() == code.order());
      auto strict = code.strict_part();
      CHECK(code.order() % strict.order() == 0);
      Integer zero_h = 0;
      for (const auto& v : code.enumerate()) zero_h += (!v.h || *v.h == 0);
      CHECK(zero_h == strict.order());
    }
  }
}

TEST_CASE("covariants") {
  IntMatrix minus_one(4, 4);
  for (std::size_t i = 0; i < 4; ++i) minus_one(i, i) = -1;
  CHECK(coinvariants({minus_one}) == FinAbGroup(ints({2, 2, 2, 2})));
  CHECK(covariants({minus_one}, FinAbGroup(ints({2}))) == FinAbGroup(ints({2, 2, 2, 2, 2})));

  // Multiplication by zeta and zeta^2 on Z[zeta] with basis (1, zeta).
  IntMatrix g{{0, -1, 0, 0}, {1, -1, 0, 0}, {0, 0, -1, 1}, {0, 0, -1, 0}};
  CHECK(coinvariants({g}) == FinAbGroup(ints({3, 3})));
  CHECK(covariants({g}, FinAbGroup(ints({3}))) == FinAbGroup(ints({3, 3, 3})));
  // g^3 = I.
  CHECK(g * g * g == IntMatrix::identity(4));

  CHECK(covariants({IntMatrix::identity(4)}, FinAbGroup(ints({2}))) == FinAbGroup(ints({2}), 4));
  CHECK_THROWS_AS(coinvariants({IntMatrix::identity(2), IntMatrix::identity(3)}), InputError);
  CHECK_THROWS_AS(coinvariants({}), InputError);
}
