#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adecodes/ade.hpp"

using namespace adecodes;

namespace {

std::vector<DynkinLabel> labels_up_to(int max_index) {
  std::vector<DynkinLabel> out;
  for (int n = 1; n <= max_index; ++n) out.emplace_back(Family::A, n);
  for (int n = 4; n <= max_index; ++n) out.emplace_back(Family::D, n);
  for (int n = 6; n <= std::min(8, max_index); ++n) out.emplace_back(Family::E, n);
  return out;
}

std::vector<Integer> ints(std::initializer_list<long long> xs) {
  std::vector<Integer> out;
  for (long long x : xs) out.emplace_back(x);
  return out;
}

FinAbGroup closed_form(const DynkinLabel& l) {
  switch (l.family) {
    case Family::A: return FinAbGroup({Integer(l.index + 1)});
    case Family::D: return l.index % 2 ? FinAbGroup(ints({4})) : FinAbGroup(ints({2, 2}));
    case Family::E:
      if (l.index == 6) return FinAbGroup(ints({3}));
      if (l.index == 7) return FinAbGroup(ints({2}));
      return FinAbGroup();
  }
  return {};
}

// All characters of H_1(x) as gamma-values.
std::vector<std::vector<Rational>> all_characters(const LocalHomology& lh) {
  std::vector<std::vector<Rational>> out;
  const auto& f = lh.group.invariant_factors();
  std::vector<Integer> a(f.size(), Integer(0));
  for (;;) {
    out.push_back(lh.to_gamma_values(a));
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == f[i]) a[i++] = 0;
    if (i == a.size()) break;
  }
  return out;
}

// Branch divisor from the character: coefficient 1 on curves with value 1/2
// (order 2), +-1 on curves with value 1/3, 2/3 (order 3); B^2 = b^T C b.
Integer branch_oracle(const DynkinConfig& c, const std::vector<Rational>& vals, int N) {
  std::vector<Integer> b(vals.size(), Integer(0));
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (N == 2 && vals[i] == Rational(1, 2)) b[i] = 1;
    if (N == 3 && vals[i] == Rational(1, 3)) b[i] = 1;
    if (N == 3 && vals[i] == Rational(2, 3)) b[i] = -1;
  }
  auto Cb = c.cartan().apply(b);
  Integer s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) s += b[i] * Cb[i];
  return s;
}

}  // namespace

TEST_CASE("labels") {
  CHECK(DynkinLabel::parse("A_3") == DynkinLabel(Family::A, 3));
  CHECK(DynkinLabel::parse("e7").to_string() == "E7");
  CHECK_THROWS_AS(DynkinLabel(Family::D, 3), InputError);
  CHECK_THROWS_AS(DynkinLabel(Family::E, 9), InputError);
  CHECK_THROWS_AS(DynkinLabel::parse("B2"), InputError);
  CHECK_THROWS_AS(DynkinLabel::parse("A"), InputError);
}

TEST_CASE("diagram numbering") {
  DynkinConfig e6(DynkinLabel(Family::E, 6));
  CHECK(e6.adjacent(3, 4));
  CHECK(e6.adjacent(3, 5));
  CHECK_FALSE(e6.adjacent(4, 5));
  DynkinConfig d5(DynkinLabel(Family::D, 5));
  CHECK(d5.adjacent(3, 5));
  CHECK(d5.adjacent(3, 4));
  DynkinConfig e8(DynkinLabel(Family::E, 8));
  CHECK(e8.adjacent(5, 8));
}

TEST_CASE("cartan matrices are negative definite trees") {
  for (const auto& l : labels_up_to(12)) {
    DynkinConfig c(l);
    CHECK(c.edges().size() == static_cast<std::size_t>(l.index - 1));
    // Leading principal minors alternate in sign starting negative.
    for (int k = 1; k <= l.index; ++k) {
      IntMatrix M(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) M(i, j) = c.cartan()(i, j);
      Integer det = M.determinant();
      CHECK(((k % 2 == 1) ? det < 0 : det > 0));
    }
  }
}

TEST_CASE("local homology matches the closed-form table up to index 12") {
  for (const auto& l : labels_up_to(12)) {
    auto lh = local_homology(l);
    INFO(l.to_string());
    CHECK(lh->group == closed_form(l));
    CHECK(lh->group == cokernel(DynkinConfig(l).cartan()).group);
    // Distinguished generators generate.
    std::vector<GroupElement> gens;
    for (int v : lh->distinguished) gens.push_back(lh->gamma[v - 1]);
    CHECK(subgroup(lh->group, gens).quotient().is_trivial());
  }
}

TEST_CASE("gamma relations") {
  for (const auto& l : labels_up_to(12)) {
    auto lh = local_homology(l);
    const auto& g = lh->gamma;
    const int n = l.index;
    INFO(l.to_string());
    if (l.family == Family::A) {
      for (int j = 1; j <= n; ++j) CHECK(g[j - 1] == g[0].scaled(j));
    } else if (l.family == Family::D) {
      CHECK(g[0].scaled(2).is_zero());
      CHECK(g[n - 1].scaled(2) == g[0].scaled(n - 2));
      CHECK(g[n - 2] == g[0] + g[n - 1]);
      if (n % 2 == 1) CHECK(g[n - 1].order() == 4);
    } else if (n == 6) {
      CHECK(g[0] == g[4]);
      CHECK(g[1] == g[0].scaled(2));
      CHECK(g[5] == g[0].scaled(2));
      CHECK(g[2].is_zero());
      CHECK(g[3].is_zero());
      CHECK(g[0].order() == 3);
    } else if (n == 7) {
      CHECK(g[0] == g[2]);
      CHECK(g[0] == g[6]);
      for (int j : {2, 4, 5, 6}) CHECK(g[j - 1].is_zero());
      CHECK(g[0].order() == 2);
    } else {
      for (const auto& x : g) CHECK(x.is_zero());
    }
  }
}

TEST_CASE("character conversions round-trip") {
  for (const auto& l : labels_up_to(9)) {
    auto lh = local_homology(l);
    for (const auto& chi : all_characters(*lh)) {
      CHECK(lh->is_character(chi));
      CHECK(lh->to_gamma_values(lh->to_slots(chi)) == chi);
    }
  }
  auto a2 = local_homology(DynkinLabel(Family::A, 2));
  CHECK_FALSE(a2->is_character({Rational(1, 3), Rational(1, 3)}));
  CHECK_THROWS_AS(a2->to_slots({Rational(1, 3), Rational(1, 3)}), InputError);
  CHECK_THROWS_AS(a2->to_slots({Rational(1, 3)}), InputError);
}

TEST_CASE("vertex deletion") {
  SUBCASE("A5 minus 3") {
    auto s = delete_vertices(DynkinConfig(DynkinLabel(Family::A, 5)), {3});
    REQUIRE(s.components.size() == 2);
    CHECK(s.components[0].label.to_string() == "A2");
    CHECK(s.components[1].label.to_string() == "A2");
    CHECK(s.components[1].original == std::vector<int>{4, 5});
    CHECK(s.reduced == FinAbGroup(ints({3})));
  }
  SUBCASE("E6 minus 3") {
    auto s = delete_vertices(DynkinConfig(DynkinLabel(Family::E, 6)), {3});
    REQUIRE(s.components.size() == 3);
    CHECK(s.components[0].label.to_string() == "A2");
    CHECK(s.components[1].label.to_string() == "A1");
    CHECK(s.components[2].label.to_string() == "A2");
    // gamma_3 = 0 in H_1(E6), so killing it leaves Z/3 (hand elimination of
    // the relations with gamma_3 = 0 gives 3 gamma_1 = 0, gamma_5 = gamma_1).
    CHECK(s.reduced == FinAbGroup(ints({3})));
    CHECK(s.patch.is_surjective());
    CHECK(kernel(s.patch).group() == FinAbGroup(ints({6})));
  }
  SUBCASE("D_n patterns") {
    for (int n = 5; n <= 9; ++n) {
      DynkinConfig d(DynkinLabel(Family::D, n));
      auto s = delete_vertices(d, {n});
      REQUIRE(s.components.size() == 1);
      CHECK(s.components[0].label == DynkinLabel(Family::A, n - 1));
      auto t = delete_vertices(d, {n - 2});
      REQUIRE(t.components.size() == 3);
      CHECK(t.components[0].label == DynkinLabel(Family::A, n - 3));
      CHECK(t.components[1].label == DynkinLabel(Family::A, 1));
      CHECK(t.components[2].label == DynkinLabel(Family::A, 1));
      for (int m = 4; m < n - 1; ++m) {
        // Deleting vertex n-m-1 leaves D_m on the fork plus a chain.
        auto u = delete_vertices(d, {n - m - 1 + 0});
        bool has_d = false;
        for (const auto& comp : u.components) has_d = has_d || comp.label == DynkinLabel(Family::D, m + 1);
        CHECK(has_d);
      }
    }
  }
  SUBCASE("canonical numbering of forks") {
    DynkinConfig e8(DynkinLabel(Family::E, 8));
    auto s = delete_vertices(e8, {1});
    REQUIRE(s.components.size() == 1);
    CHECK(s.components[0].label.to_string() == "E7");
    CHECK(s.components[0].original == std::vector<int>{2, 3, 4, 5, 6, 7, 8});
    auto t = delete_vertices(e8, {7});
    CHECK(t.components[0].label.to_string() == "D7");
    CHECK(t.components[0].original == std::vector<int>{1, 2, 3, 4, 5, 6, 8});
    CHECK(delete_vertices(e8, {2}).components[1].label.to_string() == "E6");
  }
  SUBCASE("errors") {
    DynkinConfig a3(DynkinLabel(Family::A, 3));
    CHECK_THROWS_AS(delete_vertices(a3, {}), InputError);
    CHECK_THROWS_AS(delete_vertices(a3, {4}), InputError);
  }
  SUBCASE("A5 minus end vertex") {
    auto s = delete_vertices(DynkinConfig(DynkinLabel(Family::A, 5)), {1});
    CHECK(s.components.size() == 1);
    CHECK(s.reduced.is_trivial());
  }
}

TEST_CASE("A_n shortening quotients") {
  for (int n = 1; n <= 10; ++n) {
    DynkinConfig c(DynkinLabel(Family::A, n));
    for (int m = 0; m < n; ++m) {
      auto s = delete_vertices(c, {m + 1});
      Integer g = boost::multiprecision::gcd(Integer(m + 1), Integer(n - m));
      Integer l = Integer(m + 1) * (n - m) / g;
      CHECK(s.reduced.order() == g);
      CHECK(s.quotient.is_surjective());
      CHECK(s.patch.is_surjective());
      CHECK(s.patch.source().order() / s.reduced.order() == l);
      CHECK(kernel(s.patch).group().order() == l);
      CHECK(local_homology(c)->group.order() == s.reduced.order() * kernel(s.quotient).group().order());
    }
  }
}

TEST_CASE("rank drops under deletion") {
  for (const auto& l : labels_up_to(9)) {
    DynkinConfig c(l);
    for (int v = 1; v <= l.index; ++v) {
      auto s = delete_vertices(c, {v});
      int total = 0;
      for (const auto& comp : s.components) total += comp.label.index;
      CHECK(total == l.index - 1);
      CHECK(local_homology(l)->group.order() % s.reduced.order() == 0);
    }
  }
}

TEST_CASE("delta_independent") {
  CHECK(delta_independent(DynkinConfig(DynkinLabel(Family::E, 6))) == 3);
  CHECK(delta_independent(DynkinConfig(DynkinLabel(Family::E, 7))) == 4);
  CHECK(delta_independent(DynkinConfig(DynkinLabel(Family::E, 8))) == 4);
  CHECK(delta_independent(DynkinConfig(DynkinLabel(Family::A, 4))) == 2);
  CHECK(delta_independent(DynkinConfig(DynkinLabel(Family::D, 4))) == 3);
  // Against plain subset enumeration.
  for (const auto& l : labels_up_to(12)) {
    DynkinConfig c(l);
    const int n = l.index;
    int best = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      bool ok = true;
      for (auto [u, v] : c.edges())
        if ((mask >> (u - 1) & 1) && (mask >> (v - 1) & 1)) ok = false;
      if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    CHECK(delta_independent(c) == best);
  }
}

TEST_CASE("branch self-intersection tables") {
  auto chi_of_order = [](const DynkinLabel& l, int N) {
    std::vector<std::vector<Rational>> out;
    for (auto& chi : all_characters(*local_homology(l)))
      if (character_order(chi) == N) out.push_back(chi);
    return out;
  };
  CHECK(branch_self_intersection(DynkinLabel(Family::A, 3), chi_of_order(DynkinLabel(Family::A, 3), 2)[0], 2) == -4);
  DynkinLabel d6(Family::D, 6);
  for (const auto& chi : chi_of_order(d6, 2))
    CHECK(branch_self_intersection(d6, chi, 2) == (chi[0] == 0 ? -4 : -6));
  DynkinLabel e6(Family::E, 6);
  for (const auto& chi : chi_of_order(e6, 3)) CHECK(branch_self_intersection(e6, chi, 3) == -12);
  CHECK_THROWS_AS(branch_self_intersection(DynkinLabel(Family::A, 2), chi_of_order(DynkinLabel(Family::A, 2), 3)[0], 2),
                  InputError);
  CHECK_THROWS_AS(branch_self_intersection(DynkinLabel(Family::A, 4), chi_of_order(DynkinLabel(Family::A, 4), 5)[0], 5),
                  InputError);

  // Every tabulated value agrees with b^T C b of the branch divisor.
  for (const auto& l : labels_up_to(12)) {
    for (int N : {2, 3}) {
      for (const auto& chi : chi_of_order(l, N)) {
        INFO(l.to_string() << " N=" << N);
        CHECK(branch_self_intersection(l, chi, N) == branch_oracle(DynkinConfig(l), chi, N));
      }
    }
  }
}
