#include "adecodes/lattice.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace adecodes {

PolarizedLattice::PolarizedLattice(std::vector<SingularPoint> points, Integer degree)
    : points_(std::move(points)), degree_(std::move(degree)) {
  if (degree_ < 1) throw InputError("polarization degree must be positive");
  std::size_t n = 0;
  for (const auto& p : points_) {
    offsets_.push_back(n);
    n += static_cast<std::size_t>(p.label.index);
  }
  gram_ = IntMatrix(n + 1, n + 1);
  for (std::size_t p = 0; p < points_.size(); ++p) {
    const IntMatrix C = DynkinConfig(points_[p].label).cartan();
    for (std::size_t i = 0; i < C.rows(); ++i)
      for (std::size_t j = 0; j < C.cols(); ++j) gram_(offsets_[p] + i, offsets_[p] + j) = C(i, j);
  }
  gram_(n, n) = degree_;
}

bool PolarizedLattice::is_even() const { return is_even_lattice(gram_); }

bool is_even_lattice(const IntMatrix& gram) {
  for (std::size_t i = 0; i < gram.rows(); ++i)
    if (mod_floor(gram(i, i), 2) != 0) return false;
  return true;
}

// Columns of the returned matrix are stored as rows: out[c] = M^{-1} e_c.
std::vector<RationalVector> rational_inverse(const IntMatrix& M) {
  const std::size_t n = M.rows();
  if (M.cols() != n) throw InputError("inverse of a non-square matrix");
  std::vector<RationalVector> a(n, RationalVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(M(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw InputError("degenerate Gram matrix");
    std::swap(a[c], a[piv]);
    const Rational inv = 1 / a[c][c];
    for (auto& x : a[c]) x *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  std::vector<RationalVector> out(n, RationalVector(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out[c][r] = a[r][n + c];
  return out;
}

Rational pairing(const IntMatrix& gram, const RationalVector& lambda, const RationalVector& mu) {
  if (lambda.size() != gram.rows() || mu.size() != gram.rows()) throw InputError("vector length does not match lattice rank");
  Rational s = 0;
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (lambda[i] == 0) continue;
    for (std::size_t j = 0; j < gram.cols(); ++j)
      if (mu[j] != 0) s += lambda[i] * Rational(gram(i, j)) * mu[j];
  }
  return s;
}

namespace {

Rational mod_rational(const Rational& x, int m) { return frac(x / m) * m; }

std::vector<Integer> gram_apply(const IntMatrix& gram, const RationalVector& lambda) {
  std::vector<Integer> y(gram.rows());
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < gram.cols(); ++j) s += Rational(gram(i, j)) * lambda[j];
    if (boost::multiprecision::denominator(s) != 1) throw InputError("vector does not lie in the dual lattice");
    y[i] = boost::multiprecision::numerator(s);
  }
  return y;
}

}  // namespace

DiscriminantForm::DiscriminantForm(const IntMatrix& gram) : gram_(gram) {
  if (gram.rows() != gram.cols() || gram != gram.transpose()) throw InputError("Gram matrix must be square and symmetric");
  if (gram.rows() > 0 && gram.determinant() == 0) throw InputError("degenerate Gram matrix");
  even_ = is_even_lattice(gram);
  Cokernel ck = cokernel(gram);
  group_ = ck.group;
  projection_ = ck.projection;

  const std::size_t n = gram.rows();
  if (n == 0) return;
  SmithForm snf = smith_normal_form(gram);
  IntMatrix Uinv = unimodular_inverse(snf.U);
  auto Ginv = rational_inverse(gram);
  for (std::size_t i = 0; i < n; ++i) {
    if (snf.D(i, i) == 1) continue;
    // lambda = G^{-1} y with y the i-th column of U^{-1}.
    RationalVector lambda(n, Rational(0));
    for (std::size_t c = 0; c < n; ++c)
      if (Uinv(c, i) != 0)
        for (std::size_t r = 0; r < n; ++r) lambda[r] += Ginv[c][r] * Rational(Uinv(c, i));
    lifts_.push_back(std::move(lambda));
  }
}

RationalVector DiscriminantForm::lift(const GroupElement& x) const {
  if (!(x.group() == group_)) throw InputError("element does not belong to the discriminant group");
  RationalVector out(gram_.rows(), Rational(0));
  for (std::size_t s = 0; s < lifts_.size(); ++s)
    if (x.residues()[s] != 0)
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += Rational(x.residues()[s]) * lifts_[s][i];
  return out;
}

GroupElement DiscriminantForm::element_of(const RationalVector& lambda) const {
  if (lambda.size() != gram_.rows()) throw InputError("vector length does not match lattice rank");
  return projection_.apply(gram_apply(gram_, lambda));
}

Rational DiscriminantForm::b(const GroupElement& x, const GroupElement& y) const {
  return frac(pairing(gram_, lift(x), lift(y)));
}

Rational DiscriminantForm::q(const GroupElement& x) const {
  auto l = lift(x);
  return mod_rational(pairing(gram_, l, l), q_modulus());
}

DiscriminantForm discriminant_form(const PolarizedLattice& L) { return DiscriminantForm(L.gram()); }

namespace {

std::vector<GroupElement> all_elements(const FinAbGroup& G) {
  if (!G.is_finite()) throw InputError("discriminant group is infinite");
  if (G.order() > kEnumerationLimit) throw ResourceError("discriminant group too large to enumerate");
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

using Key = std::vector<std::vector<Integer>>;

Key element_key(const Subgroup& S) {
  Key key;
  const auto gens = S.basis();
  // Enumerate the subgroup from its basis.
  std::vector<Integer> c(gens.size(), Integer(0));
  const auto& e = S.group().invariant_factors();
  for (;;) {
    GroupElement x = GroupElement::zero(S.ambient());
    for (std::size_t i = 0; i < gens.size(); ++i) x = x + gens[i].scaled(c[i]);
    key.push_back(x.residues());
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == e[i]) c[i++] = 0;
    if (i == c.size()) break;
  }
  std::sort(key.begin(), key.end());
  return key;
}

}  // namespace

bool is_isotropic(const DiscriminantForm& form, const std::vector<GroupElement>& generators) {
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (form.q(generators[i]) != 0) return false;
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (form.b(generators[i], generators[j]) != 0) return false;
  }
  return true;
}

std::vector<Subgroup> isotropic_subgroups(const DiscriminantForm& form, const Integer& order, long long cap) {
  if (order < 1) throw InputError("subgroup order must be positive");
  const FinAbGroup& G = form.group();
  if (G.order() % order != 0) return {};
  std::vector<GroupElement> iso;
  for (auto& x : all_elements(G))
    if (!x.is_zero() && form.q(x) == 0) iso.push_back(std::move(x));

  // Breadth-first over isotropic subgroups whose order divides the target;
  // every subgroup of the target order is reached through such a chain.
  struct Node {
    std::vector<GroupElement> gens;
    Subgroup sub;
  };
  std::map<Key, Node> seen;
  std::deque<Key> queue;
  {
    Subgroup trivial = subgroup(G, {});
    Key k = element_key(trivial);
    seen.emplace(k, Node{{}, trivial});
    queue.push_back(k);
  }
  std::vector<Key> hits;
  while (!queue.empty()) {
    Key key = queue.front();
    queue.pop_front();
    const Node& node = seen.at(key);
    if (node.sub.group().order() == order) {
      hits.push_back(key);
      continue;
    }
    for (const auto& x : iso) {
      if (node.sub.contains(x)) continue;
      bool orth = true;
      for (const auto& g : node.gens)
        if (form.b(g, x) != 0) {
          orth = false;
          break;
        }
      if (!orth) continue;
      auto gens = node.gens;
      gens.push_back(x);
      Subgroup next = subgroup(G, gens);
      if (order % next.group().order() != 0) continue;
      Key nk = element_key(next);
      if (seen.count(nk)) continue;
      if (static_cast<long long>(seen.size()) >= cap)
        throw ResourceError("isotropic subgroup search exceeded its cap of " + std::to_string(cap) + " subgroups");
      seen.emplace(nk, Node{std::move(gens), std::move(next)});
      queue.push_back(std::move(nk));
    }
  }
  std::sort(hits.begin(), hits.end());
  std::vector<Subgroup> out;
  for (const auto& k : hits) out.push_back(seen.at(k).sub);
  return out;
}

SaturationData saturation(const PolarizedLattice& L, const std::vector<RationalVector>& generators) {
  DiscriminantForm form = discriminant_form(L);
  std::vector<GroupElement> classes;
  for (const auto& g : generators) classes.push_back(form.element_of(g));
  return {generators, subgroup(form.group(), classes).group()};
}

bool saturation_is_integral(const PolarizedLattice& L, const std::vector<RationalVector>& generators) {
  for (const auto& g : generators) gram_apply(L.gram(), g);
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i; j < generators.size(); ++j)
      if (boost::multiprecision::denominator(pairing(L.gram(), generators[i], generators[j])) != 1) return false;
  return true;
}

LabeledCode code_from_saturation(const PolarizedLattice& L, const std::vector<RationalVector>& generators) {
  std::vector<CodeVector> vectors;
  for (const auto& g : generators) {
    if (g.size() != L.dimension()) throw InputError("saturation generator has the wrong number of coefficients");
    gram_apply(L.gram(), g);  // asserts g in L^dual
    CodeVector v;
    for (std::size_t p = 0; p < L.points().size(); ++p) {
      std::vector<Rational> vals;
      for (int j = 1; j <= L.points()[p].label.index; ++j) vals.push_back(frac(g[L.basis_index(p, j)]));
      v.values.push_back(std::move(vals));
    }
    v.h = frac(g[L.h_index()]);
    vectors.push_back(std::move(v));
  }
  return LabeledCode::from_dual(L.points(), vectors, extended_modulus(L.points(), L.degree()));
}

LabeledCode code_from_subgroup(const PolarizedLattice& L, const DiscriminantForm& form, const Subgroup& U) {
  std::vector<RationalVector> gens;
  for (const auto& b : U.basis()) gens.push_back(form.lift(b));
  return code_from_saturation(L, gens);
}

FinAbGroup coinvariants(const std::vector<IntMatrix>& action) {
  if (action.empty()) throw InputError("group action needs at least one generator");
  const std::size_t n = action.front().rows();
  IntMatrix stacked(n, 0);
  for (const auto& g : action) {
    if (g.rows() != n || g.cols() != n) throw InputError("action matrices must be square of equal size");
    IntMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = (i == j ? 1 : 0) - g(i, j);
    stacked = stacked.cols() == 0 ? d : stacked.hconcat(d);
  }
  return cokernel(stacked).group;
}

FinAbGroup covariants(const std::vector<IntMatrix>& action, const FinAbGroup& G_ab) {
  return direct_sum(G_ab, coinvariants(action));
}

}  // namespace adecodes
