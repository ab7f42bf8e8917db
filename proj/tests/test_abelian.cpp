#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "adecodes/abelian.hpp"

using namespace adecodes;

namespace {

std::vector<Integer> ints(std::initializer_list<long long> xs) {
  std::vector<Integer> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix M(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) M(i, j) = dist(rng);
  return M;
}

// Hom(coker M, Q/Z) as a subgroup of (1/e Z / Z)^n, e the exponent.
FinAbGroup character_group(const IntMatrix& M, const Integer& e) {
  const std::size_t n = M.rows();
  std::vector<Integer> src(n, e), tgt(M.cols(), e);
  auto gens = kernel_in_diagonal(src, tgt, M.transpose());
  auto span = span_in_diagonal(src, gens);
  return FinAbGroup::from_cyclic_orders(span.orders);
}

}  // namespace

TEST_CASE("smith normal form examples") {
  SUBCASE("identity") {
    auto snf = smith_normal_form(IntMatrix::identity(2));
    CHECK(snf.U == IntMatrix::identity(2));
    CHECK(snf.D == IntMatrix::identity(2));
    CHECK(snf.V == IntMatrix::identity(2));
  }
  SUBCASE("A2 cartan") {
    IntMatrix M{{-2, 1}, {1, -2}};
    auto snf = smith_normal_form(M);
    CHECK(snf.diagonal() == ints({1, 3}));
    CHECK(snf.U * M * snf.V == snf.D);
  }
  SUBCASE("zero") {
    auto snf = smith_normal_form(IntMatrix(1, 1));
    CHECK(snf.D(0, 0) == 0);
    CHECK(snf.rank() == 0);
  }
}

TEST_CASE("smith normal form property: 1000 random matrices") {
  std::mt19937_64 rng(20241015);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    IntMatrix M = random_matrix(rng, dim(rng), dim(rng), -50, 50);
    if (trial % 7 == 0) {
      // Force rank deficiency now and then.
      for (std::size_t c = 0; c < M.cols(); ++c) M(M.rows() - 1, c) = 2 * M(0, c);
    }
    auto snf = smith_normal_form(M);
    REQUIRE(snf.U * M * snf.V == snf.D);
    REQUIRE(snf.D.is_diagonal());
    Integer du = snf.U.determinant(), dv = snf.V.determinant();
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
    auto diag = snf.diagonal();
    for (std::size_t i = 0; i < diag.size(); ++i) {
      REQUIRE(diag[i] >= 0);
      if (i + 1 < diag.size()) {
        if (diag[i] == 0)
          REQUIRE(diag[i + 1] == 0);
        else
          REQUIRE(diag[i + 1] % diag[i] == 0);
      }
    }
  }
}

TEST_CASE("unimodular inverse and kernel") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    IntMatrix M = random_matrix(rng, 4, 6, -9, 9);
    auto snf = smith_normal_form(M);
    CHECK(unimodular_inverse(snf.V) * snf.V == IntMatrix::identity(6));
    IntMatrix K = integer_kernel(M);
    CHECK(K.cols() == 6 - snf.rank());
    CHECK(M * K == IntMatrix(4, K.cols()));
  }
  CHECK_THROWS_AS(unimodular_inverse(IntMatrix{{2, 0}, {0, 1}}), InputError);
}

TEST_CASE("cokernel of cartan matrices") {
  CHECK(cokernel(IntMatrix{{-2, 1, 0}, {1, -2, 1}, {0, 1, -2}}).group.to_string() == "Z/4");
  IntMatrix D4{{-2, 1, 0, 0}, {1, -2, 1, 1}, {0, 1, -2, 0}, {0, 1, 0, -2}};
  CHECK(cokernel(D4).group == FinAbGroup(ints({2, 2})));
  CHECK(cokernel(IntMatrix{{0}}).group == FinAbGroup::free(1));
  CHECK(cokernel(IntMatrix{{2, 0}, {0, 0}}).group.to_string() == "Z + Z/2");
}

TEST_CASE("group basics") {
  CHECK_THROWS_AS(FinAbGroup(ints({2, 3})), InputError);
  CHECK_THROWS_AS(FinAbGroup(ints({1})), InputError);
  CHECK(FinAbGroup().to_string() == "0");
  CHECK(FinAbGroup(ints({2, 2})).to_string() == "Z/2 + Z/2");
  CHECK(FinAbGroup(ints({3}), 2).to_string() == "Z^2 + Z/3");
  CHECK(FinAbGroup::from_cyclic_orders(ints({4, 6, 1})) == FinAbGroup(ints({2, 12})));
  FinAbGroup A(ints({2, 6}));
  GroupElement x(A, ints({1, 4}));
  CHECK(x.order() == 6);
  CHECK((x + x).residues() == ints({0, 2}));
  CHECK((x - x).is_zero());
  Character chi(A, ints({1, 1}));
  CHECK(chi(x) == Rational(1, 2) + Rational(4, 6) - 1);
  CHECK(chi.order() == 6);
}

TEST_CASE("homomorphisms") {
  FinAbGroup Z4(ints({4})), Z2(ints({2}));
  CHECK_NOTHROW(GroupHom(Z4, Z2, IntMatrix{{1}}));
  CHECK_THROWS_AS(GroupHom(Z2, Z4, IntMatrix{{1}}), InputError);
  GroupHom f(Z2, Z4, IntMatrix{{2}});
  CHECK_FALSE(f.is_surjective());
  CHECK(GroupHom(Z4, Z2, IntMatrix{{1}}).is_surjective());
  CHECK(kernel(GroupHom(Z4, Z2, IntMatrix{{1}})).group() == Z2);
}

TEST_CASE("subgroups") {
  FinAbGroup Z4(ints({4}));
  auto H = subgroup(Z4, {GroupElement(Z4, ints({2}))});
  CHECK(H.group() == FinAbGroup(ints({2})));
  CHECK(H.quotient() == FinAbGroup(ints({2})));
  CHECK(H.contains(GroupElement(Z4, ints({0}))));
  CHECK_FALSE(H.contains(GroupElement(Z4, ints({1}))));

  FinAbGroup Z6(ints({6}));
  auto T = subgroup(Z6, {});
  CHECK(T.group().is_trivial());
  CHECK(T.quotient() == Z6);

  FinAbGroup V(ints({2, 2}));
  auto W = subgroup(V, {GroupElement(V, ints({1, 0})), GroupElement(V, ints({0, 1}))});
  CHECK(W.group() == V);
  CHECK(W.quotient().is_trivial());

  CHECK_THROWS_AS(subgroup(V, {GroupElement(Z4, ints({1}))}), InputError);
}

TEST_CASE("subgroup basis elements have the advertised orders") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> pick(0, 100);
  for (int trial = 0; trial < 100; ++trial) {
    FinAbGroup A = FinAbGroup::from_cyclic_orders(ints({2 + pick(rng) % 6, 2 + pick(rng) % 10, 2 + pick(rng) % 4}));
    std::vector<GroupElement> gens;
    for (int g = 0; g < 2; ++g) {
      std::vector<Integer> r;
      for (std::size_t i = 0; i < A.num_slots(); ++i) r.emplace_back(pick(rng));
      gens.emplace_back(A, r);
    }
    auto H = subgroup(A, gens);
    for (std::size_t i = 0; i < H.basis().size(); ++i) CHECK(H.basis()[i].order() == H.group().invariant_factors()[i]);
    for (const auto& g : gens) CHECK(H.contains(g));
    CHECK(H.group().order() * H.quotient().order() == A.order());
  }
}

TEST_CASE("primary components") {
  CHECK(primary_component(FinAbGroup(ints({6})), 2).group == FinAbGroup(ints({2})));
  auto A = FinAbGroup::from_cyclic_orders(ints({4, 2, 3}));
  CHECK(primary_component(A, 2).group == FinAbGroup(ints({2, 4})));
  CHECK(primary_component(FinAbGroup(ints({4})), 5).group.is_trivial());
  CHECK_THROWS_AS(primary_component(A, 4), InputError);
  CHECK_THROWS_AS(primary_component(FinAbGroup::free(1), 2), InputError);
}

TEST_CASE("property: primary reassembly") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ord(1, 60);
  for (int trial = 0; trial < 200; ++trial) {
    FinAbGroup A = FinAbGroup::from_cyclic_orders(ints({ord(rng), ord(rng), ord(rng)}));
    if (A.is_trivial()) continue;
    FinAbGroup sum;
    std::vector<PrimaryComponent> parts;
    for (const Integer& p : prime_divisors(A.order())) {
      parts.push_back(primary_component(A, p));
      sum = direct_sum(sum, parts.back().group);
    }
    REQUIRE(sum == A);
    // sum_p incl_p o proj_p = id
    for (int k = 0; k < 5; ++k) {
      std::vector<Integer> r;
      for (std::size_t i = 0; i < A.num_slots(); ++i) r.emplace_back(ord(rng));
      GroupElement x(A, r);
      GroupElement acc = GroupElement::zero(A);
      for (const auto& P : parts) acc = acc + P.inclusion(P.projection(x));
      REQUIRE(acc == x);
    }
  }
}

TEST_CASE("property: biduality") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = dim(rng);
    IntMatrix M = random_matrix(rng, n, n, -6, 6);
    if (M.determinant() == 0) continue;
    FinAbGroup A = cokernel(M).group;
    FinAbGroup dual = character_group(M, A.exponent());
    REQUIRE(dual == A);
    // Dual of the dual, presented diagonally.
    auto moduli = dual.moduli();
    IntMatrix D = IntMatrix::diagonal(moduli);
    if (moduli.empty()) continue;
    REQUIRE(character_group(D, dual.exponent()) == A);
  }
}

TEST_CASE("number theory helpers") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(prime_divisors(360) == ints({2, 3, 5}));
  CHECK(valuation(48, 2) == 4);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(frac(Rational(-1, 3)) == Rational(2, 3));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(format_rational(Rational(5, 1)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}
