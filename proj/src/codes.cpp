#include "adecodes/codes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace adecodes {

namespace {

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Integer pow_int(const Integer& p, unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p;
  return r;
}

}  // namespace

bool CodeVector::is_zero() const {
  for (const auto& pt : values)
    for (const auto& x : pt)
      if (frac(x) != 0) return false;
  return !h || frac(*h) == 0;
}

Integer vector_order(const CodeVector& v) {
  Integer o = 1;
  for (const auto& pt : v.values) o = lcm_int(o, character_order(pt));
  if (v.h) o = lcm_int(o, boost::multiprecision::denominator(frac(*v.h)));
  return o;
}

Integer extended_modulus(const std::vector<SingularPoint>& points, const Integer& degree) {
  Integer m = 1;
  for (const auto& p : points) m = lcm_int(m, local_homology(p.label)->exponent());
  return boost::multiprecision::gcd(degree, m);
}

std::string character_key(const LocalHomology& lh, const std::vector<Rational>& gamma_values) {
  std::string out;
  for (std::size_t k = 0; k < lh.distinguished.size(); ++k) {
    if (k) out += ',';
    out += format_rational(frac(gamma_values[lh.distinguished[k] - 1]));
  }
  return out;
}

std::string label_multiset(const std::vector<SingularPoint>& points) {
  std::map<DynkinLabel, int> counts;
  for (const auto& p : points) ++counts[p.label];
  if (counts.empty()) return "0";
  std::string out;
  for (const auto& [l, c] : counts) {
    if (!out.empty()) out += '+';
    out += std::to_string(c) + "x" + l.to_string();
  }
  return out;
}

// ------------------------------------------------------------ construction

void LabeledCode::init_layout() {
  std::set<std::string> ids;
  local_.clear();
  offsets_.assign(1, 0);
  v_moduli_.clear();
  for (const auto& p : points_) {
    if (p.id.empty()) throw InputError("singular point with empty id");
    if (!ids.insert(p.id).second) throw InputError("duplicate singular point id '" + p.id + "'");
    local_.push_back(local_homology(p.label));
    for (const auto& d : local_.back()->group.invariant_factors()) v_moduli_.push_back(d);
    offsets_.push_back(v_moduli_.size());
  }
  if (h_modulus_ && *h_modulus_ < 1) throw InputError("H-modulus must be positive");
  h_slot_ = h_modulus_ && *h_modulus_ > 1;
  if (h_slot_) v_moduli_.push_back(*h_modulus_);
}

LabeledCode LabeledCode::from_slot_generators(std::vector<SingularPoint> points,
                                              const std::vector<std::vector<Integer>>& generators,
                                              std::optional<Integer> h_modulus) {
  LabeledCode c;
  c.points_ = std::move(points);
  c.h_modulus_ = h_modulus;
  c.init_layout();
  std::vector<std::vector<Integer>> gens;
  for (const auto& g : generators) {
    if (g.size() != c.v_moduli_.size()) throw InputError("generator has wrong number of slots");
    std::vector<Integer> r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = mod_floor(g[i], c.v_moduli_[i]);
    gens.push_back(std::move(r));
  }
  DiagonalSpan span = span_in_diagonal(c.v_moduli_, gens);
  c.orders_ = span.orders;
  c.basis_ = span.basis;
  c.h1_ = FinAbGroup(c.orders_);
  return c;
}

LabeledCode LabeledCode::from_dual(std::vector<SingularPoint> points, const std::vector<CodeVector>& generators,
                                   std::optional<Integer> h_modulus) {
  LabeledCode shape;
  shape.points_ = points;
  shape.h_modulus_ = h_modulus;
  shape.init_layout();
  std::vector<std::vector<Integer>> gens;
  for (const auto& v : generators) gens.push_back(shape.to_slots(v));
  return from_slot_generators(std::move(points), gens, h_modulus);
}

LabeledCode LabeledCode::from_kernel(std::vector<SingularPoint> points,
                                     const std::vector<std::vector<Integer>>& kernel_generators,
                                     std::optional<Integer> h_modulus) {
  LabeledCode shape;
  shape.points_ = points;
  shape.h_modulus_ = h_modulus;
  shape.init_layout();
  const auto& d = shape.v_moduli_;
  for (const auto& g : kernel_generators)
    if (g.size() != d.size()) throw InputError("kernel generator has wrong number of slots");
  if (d.empty()) return from_slot_generators(std::move(points), {}, h_modulus);
  // Characters a (a_i / d_i) with sum_i a_i g_i / d_i integral, scaled to a common L.
  Integer L = 1;
  for (const auto& m : d) L = lcm_int(L, m);
  IntMatrix M(kernel_generators.size(), d.size());
  for (std::size_t r = 0; r < kernel_generators.size(); ++r)
    for (std::size_t i = 0; i < d.size(); ++i) M(r, i) = kernel_generators[r][i] * (L / d[i]);
  std::vector<Integer> target(kernel_generators.size(), L);
  auto ann = kernel_in_diagonal(d, target, M);
  return from_slot_generators(std::move(points), ann, h_modulus);
}

LabeledCode LabeledCode::build(std::vector<SingularPoint> points,
                               const std::vector<std::vector<Integer>>& kernel_generators,
                               const std::vector<CodeVector>& dual_generators, std::optional<Integer> h_modulus) {
  if (kernel_generators.empty() && !dual_generators.empty())
    return from_dual(std::move(points), dual_generators, h_modulus);
  LabeledCode code = from_kernel(points, kernel_generators, h_modulus);
  for (std::size_t j = 0; j < dual_generators.size(); ++j) {
    auto a = code.to_slots(dual_generators[j]);
    for (std::size_t r = 0; r < kernel_generators.size(); ++r) {
      Rational s = 0;
      for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i] * kernel_generators[r][i], code.v_moduli_[i]);
      if (!is_integral(s))
        throw InputError("dual generator " + std::to_string(j) + " does not annihilate kernel generator " +
                         std::to_string(r));
    }
  }
  return code;
}

// --------------------------------------------------------------- accessors

std::size_t LabeledCode::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i].id == id) return i;
  throw InputError("no singular point with id '" + id + "'");
}

IntMatrix LabeledCode::k_matrix() const {
  IntMatrix k(orders_.size(), v_moduli_.size());
  for (std::size_t j = 0; j < orders_.size(); ++j)
    for (std::size_t i = 0; i < v_moduli_.size(); ++i) k(j, i) = orders_[j] * basis_[j][i] / v_moduli_[i];
  return k;
}

std::vector<std::vector<Integer>> LabeledCode::kernel_generators() const {
  return kernel_in_diagonal(v_moduli_, orders_, k_matrix());
}

std::vector<CodeVector> LabeledCode::dual_generators() const {
  std::vector<CodeVector> out;
  for (const auto& b : basis_) out.push_back(to_vector(b));
  return out;
}

int LabeledCode::rank() const {
  int r = 0;
  for (const auto& p : points_) r += p.label.index;
  return r;
}

CodeVector LabeledCode::to_vector(const std::vector<Integer>& slots) const {
  if (slots.size() != v_moduli_.size()) throw InputError("slot vector has wrong length");
  CodeVector v;
  for (std::size_t p = 0; p < points_.size(); ++p) {
    std::vector<Integer> part(slots.begin() + static_cast<std::ptrdiff_t>(offsets_[p]),
                              slots.begin() + static_cast<std::ptrdiff_t>(offsets_[p + 1]));
    v.values.push_back(local_[p]->to_gamma_values(part));
  }
  if (h_modulus_) v.h = h_slot_ ? frac(Rational(slots.back(), *h_modulus_)) : Rational(0);
  return v;
}

std::vector<Integer> LabeledCode::to_slots(const CodeVector& v) const {
  if (v.values.size() != points_.size())
    throw InputError("code vector has " + std::to_string(v.values.size()) + " point entries, expected " +
                     std::to_string(points_.size()));
  std::vector<Integer> out;
  for (std::size_t p = 0; p < points_.size(); ++p) {
    std::vector<Rational> vals(v.values[p].size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = frac(v.values[p][i]);
    try {
      auto part = local_[p]->to_slots(vals);
      out.insert(out.end(), part.begin(), part.end());
    } catch (const InputError& e) {
      throw InputError("point '" + points_[p].id + "': " + e.what());
    }
  }
  Rational h = v.h ? frac(*v.h) : Rational(0);
  if (!h_modulus_) {
    if (h != 0) throw InputError("H-value given for a code that is not extended");
  } else {
    Rational scaled = h * *h_modulus_;
    if (!is_integral(scaled))
      throw InputError("H-value " + format_rational(h) + " is not in (1/" + h_modulus_->str() + ")Z/Z");
    if (h_slot_) out.push_back(mod_floor(boost::multiprecision::numerator(scaled), *h_modulus_));
  }
  return out;
}

bool LabeledCode::contains(const CodeVector& v) const {
  std::vector<Integer> a;
  try {
    a = to_slots(v);
  } catch (const InputError&) {
    return false;
  }
  for (const auto& g : kernel_generators()) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i] * g[i], v_moduli_[i]);
    if (!is_integral(s)) return false;
  }
  return true;
}

std::vector<std::vector<Integer>> LabeledCode::enumerate_slots(long long limit) const {
  Integer total = 1;
  for (const auto& e : orders_) total *= e;
  if (total > limit)
    throw ResourceError("code has " + total.str() + " vectors, above the enumeration limit " + std::to_string(limit));
  std::vector<std::vector<Integer>> out;
  std::vector<Integer> c(orders_.size(), Integer(0));
  for (;;) {
    std::vector<Integer> v(v_moduli_.size(), Integer(0));
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[j] * basis_[j][i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], v_moduli_[i]);
    out.push_back(std::move(v));
    std::size_t j = 0;
    while (j < c.size() && ++c[j] == orders_[j]) c[j++] = 0;
    if (j == c.size()) break;
  }
  return out;
}

std::vector<CodeVector> LabeledCode::enumerate(long long limit) const {
  std::vector<CodeVector> out;
  for (const auto& s : enumerate_slots(limit)) out.push_back(to_vector(s));
  return out;
}

std::vector<std::vector<Integer>> LabeledCode::vanishing_on(const std::vector<std::size_t>& slots) const {
  std::vector<Integer> tgt;
  IntMatrix M(slots.size(), orders_.size());
  for (std::size_t r = 0; r < slots.size(); ++r) {
    tgt.push_back(v_moduli_[slots[r]]);
    for (std::size_t j = 0; j < orders_.size(); ++j) M(r, j) = basis_[j][slots[r]];
  }
  std::vector<std::vector<Integer>> out;
  for (const auto& c : kernel_in_diagonal(orders_, tgt, M)) {
    std::vector<Integer> v(v_moduli_.size(), Integer(0));
    for (std::size_t j = 0; j < c.size(); ++j)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[j] * basis_[j][i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], v_moduli_[i]);
    out.push_back(std::move(v));
  }
  return out;
}

LabeledCode LabeledCode::strict_part() const {
  if (!h_modulus_) return *this;
  if (!h_slot_) return from_slot_generators(points_, basis_, std::nullopt);
  auto gens = vanishing_on({v_moduli_.size() - 1});
  for (auto& g : gens) g.pop_back();
  return from_slot_generators(points_, gens, std::nullopt);
}

// ----------------------------------------------------------------- weights

WeightReport weights(const LabeledCode& code, const CodeVector& v) {
  WeightReport w;
  w.order = vector_order(v);
  w.h = v.h;
  const Integer& N = w.order;
  bool almost_simple = N > 1;
  for (std::size_t p = 0; p < code.size(); ++p) {
    const auto& vals = v.values[p];
    bool nonzero = std::any_of(vals.begin(), vals.end(), [](const Rational& x) { return frac(x) != 0; });
    if (!nonzero) continue;
    const DynkinLabel& l = code.points()[p].label;
    const LocalHomology& lh = code.local(p);
    ++w.hamming;
    ++w.label_weights[l];
    ++w.refined[{l, character_key(lh, vals)}];
    const int n = l.index;
    if (N == 2) {
      if (l.family == Family::A) ++w.t_A_odd[(n - 1) / 2];
      if (l.family == Family::D) {
        if (n % 2 == 1 || frac(vals[0]) == 0)
          ++w.t_D_minus;
        else
          ++w.t_D_plus[n / 2];
      }
      if (l.family == Family::E && n == 7) ++w.t_E7;
    }
    if (N == 3) {
      if (l.family == Family::A) ++w.t_A_3s[(n + 1) / 3];
      if (l.family == Family::E && n == 6) ++w.t_E6;
    }
    // Almost simple: cyclic points only, generator value +-1/N.
    if (lh.group.invariant_factors().size() != 1) {
      almost_simple = false;
    } else {
      Rational x = frac(vals[lh.distinguished[0] - 1]) * N;
      if (!is_integral(x)) {
        almost_simple = false;
      } else {
        Integer k = boost::multiprecision::numerator(x);
        if (k != 1 && k != N - 1) almost_simple = false;
      }
    }
  }
  w.almost_simple = almost_simple;
  return w;
}

// -------------------------------------------------------------- shortening

LabeledCode shorten_full(const LabeledCode& code, const std::string& z) {
  const std::size_t zi = code.index_of(z);
  std::vector<std::size_t> slots;
  for (std::size_t s = 0; s < code.slot_count(zi); ++s) slots.push_back(code.slot_offset(zi) + s);
  auto gens = code.vanishing_on(slots);
  const std::size_t lo = code.slot_offset(zi), hi = code.slot_offset(zi + 1);
  for (auto& g : gens)
    g.erase(g.begin() + static_cast<std::ptrdiff_t>(lo), g.begin() + static_cast<std::ptrdiff_t>(hi));
  std::vector<SingularPoint> pts = code.points();
  pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(zi));
  return LabeledCode::from_slot_generators(std::move(pts), gens, code.h_modulus());
}

LabeledCode shorten_geometric(const LabeledCode& code, const std::string& z, const std::set<int>& S) {
  const std::size_t zi = code.index_of(z);
  const SingularPoint& zp = code.points()[zi];
  DynkinConfig cfg(zp.label);
  ShorteningData sd = delete_vertices(cfg, S);  // validates S
  if (static_cast<int>(S.size()) == cfg.size()) return shorten_full(code, z);

  // Keep the vectors whose z-character vanishes on gamma_i, i in S.
  const LocalHomology& lz = code.local(zi);
  const Integer L = lz.exponent();
  const auto& basis = code.basis();
  std::vector<std::vector<Integer>> gens;
  if (L == 1) {
    gens = basis;
  } else {
    IntMatrix M(S.size(), basis.size());
    const std::size_t lo = code.slot_offset(zi), hi = code.slot_offset(zi + 1);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      std::vector<Integer> part(basis[j].begin() + static_cast<std::ptrdiff_t>(lo),
                                basis[j].begin() + static_cast<std::ptrdiff_t>(hi));
      auto vals = lz.to_gamma_values(part);
      std::size_t r = 0;
      for (int i : S) M(r++, j) = boost::multiprecision::numerator(Rational(vals[i - 1] * L));
    }
    std::vector<Integer> tgt(S.size(), L);
    for (const auto& c : kernel_in_diagonal(code.orders(), tgt, M)) {
      std::vector<Integer> v(code.v_moduli().size(), Integer(0));
      for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[j] * basis[j][i];
      gens.push_back(std::move(v));
    }
  }

  std::vector<SingularPoint> pts;
  for (std::size_t p = 0; p < code.size(); ++p) {
    if (p != zi) {
      pts.push_back(code.points()[p]);
      continue;
    }
    for (std::size_t k = 0; k < sd.components.size(); ++k)
      pts.push_back({z + "." + std::to_string(k + 1), sd.components[k].label});
  }
  std::vector<CodeVector> vecs;
  for (const auto& g : gens) {
    CodeVector old = code.to_vector(g);
    CodeVector nv;
    nv.h = old.h;
    for (std::size_t p = 0; p < code.size(); ++p) {
      if (p != zi) {
        nv.values.push_back(old.values[p]);
        continue;
      }
      for (const auto& comp : sd.components) {
        std::vector<Rational> vals;
        for (int orig : comp.original) vals.push_back(old.values[zi][orig - 1]);
        nv.values.push_back(std::move(vals));
      }
    }
    vecs.push_back(std::move(nv));
  }
  return LabeledCode::from_dual(std::move(pts), vecs, code.h_modulus());
}

std::map<Integer, LabeledCode> primary_decomposition(const LabeledCode& code) {
  std::map<Integer, LabeledCode> out;
  if (code.H1().is_trivial()) return out;
  for (const Integer& p : prime_divisors(code.order())) {
    std::vector<std::vector<Integer>> gens;
    for (std::size_t j = 0; j < code.orders().size(); ++j) {
      const Integer& e = code.orders()[j];
      if (e % p != 0) continue;
      Integer cof = e / pow_int(p, valuation(e, p));
      std::vector<Integer> g = code.basis()[j];
      for (auto& x : g) x *= cof;
      gens.push_back(std::move(g));
    }
    out.emplace(p, LabeledCode::from_slot_generators(code.points(), gens, code.h_modulus()));
  }
  return out;
}

// ------------------------------------------------------------- equivalence

namespace {

// Vectors of a code with every local character replaced by an interned id.
struct Table {
  std::vector<std::vector<int>> ids;  // [vector][point]
  std::vector<Rational> h;
  std::vector<int> weight;
};

class Interner {
 public:
  int id(const DynkinLabel& l, const std::vector<Rational>& vals) {
    bool zero = std::all_of(vals.begin(), vals.end(), [](const Rational& x) { return x == 0; });
    if (zero) return 0;
    auto [it, fresh] = map_.try_emplace({l, vals}, static_cast<int>(map_.size()) + 1);
    return it->second;
  }

 private:
  std::map<std::pair<DynkinLabel, std::vector<Rational>>, int> map_;
};

Table tabulate(const LabeledCode& c, Interner& in) {
  Table t;
  for (const auto& v : c.enumerate()) {
    std::vector<int> row;
    int w = 0;
    for (std::size_t p = 0; p < c.size(); ++p) {
      row.push_back(in.id(c.points()[p].label, v.values[p]));
      w += row.back() != 0;
    }
    t.ids.push_back(std::move(row));
    t.h.push_back(v.h ? *v.h : Rational(0));
    t.weight.push_back(w);
  }
  return t;
}

using PointInvariant = std::vector<std::tuple<int, int, Rational>>;

PointInvariant point_invariant(const Table& t, std::size_t p) {
  PointInvariant inv;
  for (std::size_t v = 0; v < t.ids.size(); ++v) inv.emplace_back(t.ids[v][p], t.weight[v], t.h[v]);
  std::sort(inv.begin(), inv.end());
  return inv;
}

using Projection = std::vector<std::pair<Rational, std::vector<int>>>;

Projection project(const Table& t, const std::vector<std::size_t>& pts) {
  Projection out;
  out.reserve(t.ids.size());
  for (std::size_t v = 0; v < t.ids.size(); ++v) {
    std::vector<int> row;
    row.reserve(pts.size());
    for (std::size_t p : pts) row.push_back(t.ids[v][p]);
    out.emplace_back(t.h[v], std::move(row));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<std::vector<std::size_t>> equivalent(const LabeledCode& a, const LabeledCode& b) {
  const std::size_t n = a.size();
  if (b.size() != n) return std::nullopt;
  if (a.h_modulus() != b.h_modulus()) return std::nullopt;
  if (label_multiset(a.points()) != label_multiset(b.points())) return std::nullopt;
  if (a.H1() != b.H1()) return std::nullopt;

  Interner in;
  Table ta = tabulate(a, in), tb = tabulate(b, in);

  std::vector<PointInvariant> ia(n), ib(n);
  for (std::size_t p = 0; p < n; ++p) {
    ia[p] = point_invariant(ta, p);
    ib[p] = point_invariant(tb, p);
  }
  std::vector<std::vector<std::size_t>> candidates(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (a.points()[i].label == b.points()[j].label && ia[i] == ib[j]) candidates[i].push_back(j);
    if (candidates[i].empty()) return std::nullopt;
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return candidates[x].size() < candidates[y].size(); });

  std::vector<std::size_t> phi(n, n), assigned_a, assigned_b;
  std::vector<bool> used(n, false);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    const std::size_t i = order[depth];
    for (std::size_t j : candidates[i]) {
      if (used[j]) continue;
      assigned_a.push_back(i);
      assigned_b.push_back(j);
      if (project(ta, assigned_a) == project(tb, assigned_b)) {
        used[j] = true;
        phi[i] = j;
        if (self(self, depth + 1)) return true;
        used[j] = false;
      }
      assigned_a.pop_back();
      assigned_b.pop_back();
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return phi;
}

}  // namespace adecodes
