#include "adecodes/ade.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace adecodes {

namespace {

Integer lcm_int(const Integer& a, const Integer& b) { return a / boost::multiprecision::gcd(a, b) * b; }

std::vector<std::pair<int, int>> diagram_edges(const DynkinLabel& l) {
  std::vector<std::pair<int, int>> e;
  const int n = l.index;
  switch (l.family) {
    case Family::A:
      for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
      break;
    case Family::D:
      for (int i = 1; i < n - 1; ++i) e.emplace_back(i, i + 1);
      e.emplace_back(n - 2, n);
      break;
    case Family::E:
      if (n == 6) {
        e = {{1, 2}, {2, 3}, {3, 5}, {5, 6}, {3, 4}};
      } else {
        for (int i = 1; i < n - 1; ++i) e.emplace_back(i, i + 1);
        e.emplace_back(n == 7 ? 4 : 5, n);
      }
      break;
  }
  return e;
}

std::vector<int> distinguished_for(const DynkinLabel& l) {
  switch (l.family) {
    case Family::A:
      return {1};
    case Family::D:
      if (l.index % 2 == 1) return {l.index};
      return {1, l.index};
    case Family::E:
      if (l.index == 8) return {};
      return {1};
  }
  return {};
}

// Walks an arm starting at `first` (a neighbour of `centre`) inside `members`.
std::vector<int> walk_arm(const DynkinConfig& c, const std::set<int>& members, int centre, int first) {
  std::vector<int> arm{first};
  int prev = centre, cur = first;
  for (;;) {
    int next = 0;
    for (int w : c.neighbours(cur))
      if (w != prev && members.count(w)) next = w;
    if (next == 0) break;
    arm.push_back(next);
    prev = cur;
    cur = next;
  }
  return arm;  // arm[0] next to the centre, arm.back() the far end
}

}  // namespace

// ------------------------------------------------------------------ labels

DynkinLabel::DynkinLabel(Family f, int n) : family(f), index(n) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = n >= 1; break;
    case Family::D: ok = n >= 4; break;
    case Family::E: ok = n >= 6 && n <= 8; break;
  }
  if (!ok) throw InputError("invalid ADE label " + to_string());
}

std::string DynkinLabel::to_string() const {
  const char f = family == Family::A ? 'A' : family == Family::D ? 'D' : 'E';
  return std::string(1, f) + std::to_string(index);
}

Family DynkinLabel::parse_family(const std::string& text) {
  if (text.size() == 1) {
    switch (std::toupper(static_cast<unsigned char>(text[0]))) {
      case 'A': return Family::A;
      case 'D': return Family::D;
      case 'E': return Family::E;
    }
  }
  throw InputError("unknown ADE family '" + text + "'");
}

DynkinLabel DynkinLabel::parse(const std::string& text) {
  if (text.empty()) throw InputError("empty ADE label");
  Family f = parse_family(text.substr(0, 1));
  std::string rest = text.substr(1);
  if (!rest.empty() && rest[0] == '_') rest = rest.substr(1);
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
      rest.size() > 6)
    throw InputError("malformed ADE label '" + text + "'");
  return DynkinLabel(f, std::stoi(rest));
}

// ----------------------------------------------------------------- diagram

DynkinConfig::DynkinConfig(DynkinLabel label) : label_(label), edges_(diagram_edges(label)) {
  const int n = label_.index;
  adj_.assign(n, {});
  cartan_ = IntMatrix(n, n);
  for (int i = 0; i < n; ++i) cartan_(i, i) = -2;
  for (auto [u, v] : edges_) {
    adj_[u - 1].push_back(v);
    adj_[v - 1].push_back(u);
    cartan_(u - 1, v - 1) = 1;
    cartan_(v - 1, u - 1) = 1;
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool DynkinConfig::adjacent(int u, int v) const {
  const auto& a = adj_[u - 1];
  return std::binary_search(a.begin(), a.end(), v);
}

// --------------------------------------------------------- local homology

std::vector<Integer> LocalHomology::to_slots(const std::vector<Rational>& c) const {
  if (static_cast<int>(c.size()) != size())
    throw InputError(label.to_string() + ": expected " + std::to_string(size()) + " gamma-values, got " +
                     std::to_string(c.size()));
  if (!is_character(c)) throw InputError(label.to_string() + ": gamma-values violate the local relations");
  const auto& f = group.invariant_factors();
  std::vector<Integer> out(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    Rational v = 0;
    for (std::size_t j = 0; j < c.size(); ++j) v += Rational(slot_lifts[s][j]) * c[j];
    v *= f[s];
    if (boost::multiprecision::denominator(v) != 1)
      throw InputError(label.to_string() + ": gamma-values are not a character");
    out[s] = mod_floor(boost::multiprecision::numerator(v), f[s]);
  }
  return out;
}

std::vector<Rational> LocalHomology::to_gamma_values(const std::vector<Integer>& slots) const {
  const auto& f = group.invariant_factors();
  if (slots.size() != f.size()) throw InputError(label.to_string() + ": wrong number of slot values");
  std::vector<Rational> out(gamma.size());
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    Rational v = 0;
    for (std::size_t s = 0; s < f.size(); ++s) v += Rational(slots[s] * gamma[j].residues()[s], f[s]);
    out[j] = frac(v);
  }
  return out;
}

bool LocalHomology::is_character(const std::vector<Rational>& c) const {
  if (static_cast<int>(c.size()) != size()) return false;
  DynkinConfig cfg(label);
  const IntMatrix& C = cfg.cartan();
  for (std::size_t i = 0; i < c.size(); ++i) {
    Rational v = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (C(i, j) != 0) v += Rational(C(i, j)) * c[j];
    if (boost::multiprecision::denominator(v) != 1) return false;
  }
  return true;
}

std::shared_ptr<const LocalHomology> local_homology(const DynkinLabel& label) {
  static std::mutex mu;
  static std::map<DynkinLabel, std::shared_ptr<const LocalHomology>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(label);
    if (it != cache.end()) return it->second;
  }
  DynkinConfig cfg(label);
  const std::size_t n = static_cast<std::size_t>(cfg.size());
  Cokernel ck = cokernel(cfg.cartan());
  auto lh = std::make_shared<LocalHomology>();
  lh->label = label;
  lh->group = ck.group;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> e(n, Integer(0));
    e[j] = 1;
    lh->gamma.push_back(ck.projection.apply(e));
  }
  lh->distinguished = distinguished_for(label);

  // Lifts: U^{-1} columns of the rows that survive as slots.
  SmithForm snf = smith_normal_form(cfg.cartan());
  IntMatrix Uinv = unimodular_inverse(snf.U);
  for (std::size_t r = 0; r < n; ++r) {
    if (snf.D(r, r) == 1) continue;
    lh->slot_lifts.push_back(Uinv.column(r));
  }

  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(label, std::move(lh)).first->second;
}

// ---------------------------------------------------------------- deletion

DiagramComponent identify_component(const DynkinConfig& c, const std::vector<int>& vertices) {
  std::set<int> members(vertices.begin(), vertices.end());
  if (members.empty()) throw InputError("empty component");
  auto degree = [&](int v) {
    int d = 0;
    for (int w : c.neighbours(v)) d += members.count(w) ? 1 : 0;
    return d;
  };
  int centre = 0;
  std::vector<int> ends;
  for (int v : members) {
    int d = degree(v);
    if (d >= 3) centre = v;
    if (d <= 1) ends.push_back(v);
  }
  const int n = static_cast<int>(members.size());

  if (centre == 0) {
    // A chain; position 1 is the end with the lower original index.
    int start = *std::min_element(ends.begin(), ends.end());
    std::vector<int> order{start};
    int prev = 0, cur = start;
    while (static_cast<int>(order.size()) < n) {
      for (int w : c.neighbours(cur))
        if (w != prev && members.count(w)) {
          prev = cur;
          cur = w;
          break;
        }
      order.push_back(cur);
    }
    return {DynkinLabel(Family::A, n), order};
  }

  std::vector<std::vector<int>> arms;
  for (int w : c.neighbours(centre))
    if (members.count(w)) arms.push_back(walk_arm(c, members, centre, w));
  if (arms.size() != 3) throw InputError("component is not of ADE shape");
  // Shortest arms first; ties by smallest original vertex in the arm.
  auto arm_min = [](const std::vector<int>& a) { return *std::min_element(a.begin(), a.end()); };
  std::sort(arms.begin(), arms.end(), [&](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return arm_min(a) < arm_min(b);
  });
  const std::size_t p = arms[0].size(), q = arms[1].size(), r = arms[2].size();
  std::vector<int> order;
  auto far_to_near = [&](const std::vector<int>& a) { order.insert(order.end(), a.rbegin(), a.rend()); };

  if (p == 1 && q == 1) {
    // D_n: long arm 1..n-3, centre n-2, short arms n-1 and n. For D_4 the
    // three arms tie; the lowest original end takes position 1.
    std::vector<std::vector<int>> a = arms;
    if (r == 1) std::sort(a.begin(), a.end(), [&](const auto& x, const auto& y) { return x[0] < y[0]; });
    const std::vector<int>& long_arm = (r == 1) ? a[0] : a[2];
    std::vector<int> shorts;
    for (const auto& arm : a)
      if (&arm != &long_arm) shorts.push_back(arm[0]);
    std::sort(shorts.begin(), shorts.end());
    far_to_near(long_arm);
    order.push_back(centre);
    order.push_back(shorts[0]);
    order.push_back(shorts[1]);
    return {DynkinLabel(Family::D, n), order};
  }
  if (p == 1 && q == 2 && r == 2) {
    // E_6: 1-2-3-5-6 with 4 on 3.
    far_to_near(arms[1]);
    order.push_back(centre);
    order.push_back(arms[0][0]);
    order.push_back(arms[2][0]);
    order.push_back(arms[2][1]);
    return {DynkinLabel(Family::E, 6), order};
  }
  if (p == 1 && q == 2 && (r == 3 || r == 4)) {
    // E_7 / E_8: long arm from its far end, centre, the 2-arm outward, then the 1-arm.
    far_to_near(arms[2]);
    order.push_back(centre);
    order.push_back(arms[1][0]);
    order.push_back(arms[1][1]);
    order.push_back(arms[0][0]);
    return {DynkinLabel(Family::E, n), order};
  }
  throw InputError("component is not of ADE shape");
}

ShorteningData delete_vertices(const DynkinConfig& c, const std::set<int>& S) {
  const int n = c.size();
  if (S.empty()) throw InputError("delete_vertices: empty vertex set");
  for (int v : S)
    if (v < 1 || v > n)
      throw InputError("delete_vertices: vertex " + std::to_string(v) + " not in " + c.label().to_string());

  ShorteningData out;
  // Connected components of the remaining diagram.
  std::set<int> seen;
  for (int v = 1; v <= n; ++v) {
    if (S.count(v) || seen.count(v)) continue;
    std::vector<int> comp, stack{v};
    seen.insert(v);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (int w : c.neighbours(u))
        if (!S.count(w) && !seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
    }
    out.components.push_back(identify_component(c, comp));
  }

  // H'_1 = Z^n / (cartan columns, e_i for i in S).
  IntMatrix rel(n, static_cast<std::size_t>(n) + S.size());
  const IntMatrix& C = c.cartan();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rel(i, j) = C(i, j);
  std::size_t col = n;
  for (int v : S) rel(v - 1, col++) = 1;
  Cokernel red = cokernel(rel);
  out.reduced = red.group;

  auto lh = local_homology(c.label());
  IntMatrix q(red.group.num_slots(), lh->group.num_slots());
  for (std::size_t s = 0; s < lh->slot_lifts.size(); ++s) {
    auto img = red.projection.apply(lh->slot_lifts[s]).residues();
    for (std::size_t r = 0; r < img.size(); ++r) q(r, s) = img[r];
  }
  out.quotient = GroupHom(lh->group, red.group, q);

  // Patch source: the component groups slot by slot (concatenated moduli),
  // then chain-normalized.
  std::vector<std::vector<Integer>> columns;
  std::vector<Integer> concat;
  for (const auto& comp : out.components) {
    auto ly = local_homology(comp.label);
    for (const auto& d : ly->group.invariant_factors()) concat.push_back(d);
    for (const auto& lift : ly->slot_lifts) {
      std::vector<Integer> x(n, Integer(0));
      for (std::size_t k = 0; k < lift.size(); ++k) x[comp.original[k] - 1] = lift[k];
      columns.push_back(red.projection.apply(x).residues());
    }
  }
  IntMatrix pm(red.group.num_slots(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t r = 0; r < columns[j].size(); ++r) pm(r, j) = columns[j][r];
  FinAbGroup source = FinAbGroup::from_cyclic_orders(concat);
  SmithForm snf = smith_normal_form(IntMatrix::diagonal(concat));
  // Z^s / diag(concat) ~ Z^s / D via x -> U x; slots with D_ii = 1 vanish.
  IntMatrix Uinv = unimodular_inverse(snf.U);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < concat.size(); ++i)
    if (snf.D(i, i) != 1) kept.push_back(i);
  IntMatrix pm_norm(red.group.num_slots(), kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    auto img = pm.apply(Uinv.column(kept[k]));
    for (std::size_t r = 0; r < img.size(); ++r) pm_norm(r, k) = img[r];
  }
  out.patch = GroupHom(source, red.group, pm_norm);
  return out;
}

// ----------------------------------------------------------------- tables

int delta_independent(const DynkinConfig& c) {
  const int n = c.size();
  std::vector<bool> blocked(n + 1, false);
  // Exact branch on the lowest free vertex: take it or leave it.
  auto search = [&](auto&& self, int from) -> int {
    int v = from;
    while (v <= n && blocked[v]) ++v;
    if (v > n) return 0;
    blocked[v] = true;
    int skip = self(self, v + 1);
    std::vector<int> newly;
    for (int w : c.neighbours(v))
      if (!blocked[w]) {
        blocked[w] = true;
        newly.push_back(w);
      }
    int take = 1 + self(self, v + 1);
    for (int w : newly) blocked[w] = false;
    blocked[v] = false;
    return std::max(skip, take);
  };
  return search(search, 1);
}

Integer character_order(const std::vector<Rational>& gamma_values) {
  Integer o = 1;
  for (const auto& v : gamma_values) o = lcm_int(o, boost::multiprecision::denominator(frac(v)));
  return o;
}

int branch_self_intersection(const DynkinLabel& label, const std::vector<Rational>& gamma_values, int N) {
  if (static_cast<int>(gamma_values.size()) != label.index)
    throw InputError("branch_self_intersection: wrong number of gamma-values for " + label.to_string());
  if (character_order(gamma_values) != N)
    throw InputError("branch_self_intersection: character does not have order " + std::to_string(N));
  const int n = label.index;
  auto reject = [&]() -> int {
    throw InputError(label.to_string() + " admits no character of order " + std::to_string(N));
  };
  if (N == 2) {
    switch (label.family) {
      case Family::A:
        return n % 2 == 1 ? -(n + 1) : reject();
      case Family::D:
        if (n % 2 == 1) return -4;
        return frac(gamma_values[0]) == 0 ? -4 : -n;
      case Family::E:
        return n == 7 ? -6 : reject();
    }
  }
  if (N == 3) {
    if (label.family == Family::A && n % 3 == 2) return -2 * (n + 1);
    if (label.family == Family::E && n == 6) return -12;
    return reject();
  }
  throw InputError("branch_self_intersection: only orders 2 and 3 are tabulated");
}

}  // namespace adecodes
