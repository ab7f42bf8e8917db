#include "adecodes/abelian.hpp"

#include <algorithm>
#include <sstream>

namespace adecodes {

namespace {

Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

Integer gcd_value(Integer a, Integer b) {
  a = abs_value(a);
  b = abs_value(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Integer lcm_value(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd_value(a, b) * b);
}

// Extended Euclid: g = s*a + t*b with g = gcd(a, b) >= 0.
void ext_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - q * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

Integer reduce(const Integer& x, const Integer& m) { return m == 0 ? x : mod_floor(x, m); }

void swap_rows(IntMatrix& A, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
}

void swap_cols(IntMatrix& A, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
}

// row_i += k * row_j
void add_row(IntMatrix& A, std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) += k * A(j, c);
}

// col_i += k * col_j
void add_col(IntMatrix& A, std::size_t i, std::size_t j, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < A.rows(); ++r) A(r, i) += k * A(r, j);
}

void negate_row(IntMatrix& A, std::size_t i) {
  for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = -A(i, c);
}

// Integer quotient rounding toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("IntMatrix: ragged initializer");
    for (long long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::diagonal(std::span<const Integer> entries) {
  IntMatrix D(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) D(i, i) = entries[i];
  return D;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) T(c, r) = (*this)(r, c);
  return T;
}

std::vector<Integer> IntMatrix::column(std::size_t c) const {
  std::vector<Integer> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<Integer> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<Integer> IntMatrix::apply(std::span<const Integer> x) const {
  if (x.size() != cols_) throw InputError("IntMatrix::apply: size mismatch");
  std::vector<Integer> y(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != 0 && x[c] != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& other) const {
  if (other.rows_ != rows_) throw InputError("IntMatrix::hconcat: row mismatch");
  IntMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
  }
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  IntMatrix A = *this;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && A(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      swap_rows(A, k, swap_with);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j)) / prev;
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

bool IntMatrix::is_diagonal() const {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (r != c && (*this)(r, c) != 0) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("IntMatrix product: shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

// --------------------------------------------------------------------- SNF

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) out.push_back(D(i, i));
  return out;
}

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

SmithForm smith_normal_form(const IntMatrix& M) {
  const std::size_t m = M.rows();
  const std::size_t n = M.cols();
  IntMatrix A = M;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block, lowest (row, col) on ties.
      std::size_t pr = m, pc = n;
      Integer best = 0;
      for (std::size_t r = t; r < m; ++r)
        for (std::size_t c = t; c < n; ++c) {
          if (A(r, c) == 0) continue;
          Integer v = abs_value(A(r, c));
          if (pr == m || v < best) {
            best = v;
            pr = r;
            pc = c;
          }
        }
      if (pr == m) break;  // trailing block is zero
      swap_rows(A, t, pr);
      swap_rows(U, t, pr);
      swap_cols(A, t, pc);
      swap_cols(V, t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < m; ++r) {
        if (A(r, t) == 0) continue;
        Integer q = floor_div(A(r, t), A(t, t));
        add_row(A, r, t, -q);
        add_row(U, r, t, -q);
        if (A(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        if (A(t, c) == 0) continue;
        Integer q = floor_div(A(t, c), A(t, t));
        add_col(A, c, t, -q);
        add_col(V, c, t, -q);
        if (A(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Row and column of the pivot are clear; enforce divisibility.
      bool divides = true;
      for (std::size_t r = t + 1; r < m && divides; ++r)
        for (std::size_t c = t + 1; c < n; ++c)
          if (A(r, c) % A(t, t) != 0) {
            add_row(A, t, r, 1);
            add_row(U, t, r, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < m && t < n && A(t, t) < 0) {
      negate_row(A, t);
      negate_row(U, t);
    }
  }
  return {std::move(U), std::move(A), std::move(V)};
}

IntMatrix integer_kernel(const IntMatrix& M) {
  SmithForm snf = smith_normal_form(M);
  const std::size_t r = snf.rank();
  IntMatrix K(M.cols(), M.cols() - r);
  for (std::size_t j = r; j < M.cols(); ++j)
    for (std::size_t i = 0; i < M.cols(); ++i) K(i, j - r) = snf.V(i, j);
  return K;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  if (U.rows() != U.cols()) throw InputError("unimodular_inverse: matrix is not square");
  const std::size_t n = U.rows();
  IntMatrix A = U;
  IntMatrix inv = IntMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    // Euclidean row reduction until a single nonzero entry remains below the diagonal.
    for (;;) {
      std::size_t piv = n;
      for (std::size_t r = col; r < n; ++r)
        if (A(r, col) != 0 && (piv == n || abs_value(A(r, col)) < abs_value(A(piv, col)))) piv = r;
      if (piv == n) throw InputError("unimodular_inverse: singular matrix");
      swap_rows(A, col, piv);
      swap_rows(inv, col, piv);
      bool done = true;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (A(r, col) == 0) continue;
        Integer q = floor_div(A(r, col), A(col, col));
        add_row(A, r, col, -q);
        add_row(inv, r, col, -q);
        if (A(r, col) != 0) done = false;
      }
      if (done) break;
    }
    if (A(col, col) < 0) {
      negate_row(A, col);
      negate_row(inv, col);
    }
    if (A(col, col) != 1) throw InputError("unimodular_inverse: determinant is not +-1");
  }
  for (std::size_t col = n; col-- > 0;)
    for (std::size_t r = 0; r < col; ++r) {
      Integer q = A(r, col);
      if (q == 0) continue;
      add_row(A, r, col, -q);
      add_row(inv, r, col, -q);
    }
  return inv;
}

// -------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(std::vector<Integer> invariant_factors, std::size_t free_rank)
    : factors_(std::move(invariant_factors)), free_rank_(free_rank) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InputError("invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0)
      throw InputError("invariant factors must form a divisibility chain");
  }
}

FinAbGroup FinAbGroup::from_cyclic_orders(std::span<const Integer> orders) {
  std::vector<Integer> diag(orders.begin(), orders.end());
  SmithForm snf = smith_normal_form(IntMatrix::diagonal(diag));
  std::vector<Integer> factors;
  std::size_t free_rank = 0;
  for (const Integer& d : snf.diagonal()) {
    if (d == 0)
      ++free_rank;
    else if (d != 1)
      factors.push_back(d);
  }
  return FinAbGroup(std::move(factors), free_rank);
}

std::vector<Integer> FinAbGroup::moduli() const {
  std::vector<Integer> out = factors_;
  out.resize(factors_.size() + free_rank_, Integer(0));
  return out;
}

Integer FinAbGroup::order() const {
  if (!is_finite()) throw InputError("order of an infinite group");
  Integer o = 1;
  for (const Integer& d : factors_) o *= d;
  return o;
}

Integer FinAbGroup::exponent() const {
  if (!is_finite()) throw InputError("exponent of an infinite group");
  return factors_.empty() ? Integer(1) : factors_.back();
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank_ > 0) {
    os << "Z";
    if (free_rank_ > 1) os << '^' << free_rank_;
    first = false;
  }
  for (const Integer& d : factors_) {
    os << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  return os.str();
}

FinAbGroup direct_sum(const FinAbGroup& a, const FinAbGroup& b) {
  std::vector<Integer> orders = a.moduli();
  for (const Integer& d : b.moduli()) orders.push_back(d);
  return FinAbGroup::from_cyclic_orders(orders);
}

// ------------------------------------------------------------ GroupElement

GroupElement::GroupElement(FinAbGroup group, std::vector<Integer> residues)
    : group_(std::move(group)), residues_(std::move(residues)) {
  if (residues_.size() != group_.num_slots()) throw InputError("element has wrong number of slots");
  const auto mods = group_.moduli();
  for (std::size_t i = 0; i < residues_.size(); ++i) residues_[i] = reduce(residues_[i], mods[i]);
}

GroupElement GroupElement::zero(const FinAbGroup& group) {
  return GroupElement(group, std::vector<Integer>(group.num_slots(), Integer(0)));
}

bool GroupElement::is_zero() const {
  return std::all_of(residues_.begin(), residues_.end(), [](const Integer& r) { return r == 0; });
}

Integer GroupElement::order() const {
  const auto& f = group_.invariant_factors();
  for (std::size_t i = f.size(); i < residues_.size(); ++i)
    if (residues_[i] != 0) return 0;
  Integer o = 1;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (residues_[i] != 0) o = lcm_value(o, f[i] / gcd_value(f[i], residues_[i]));
  return o;
}

GroupElement GroupElement::operator+(const GroupElement& other) const {
  if (!(group_ == other.group_)) throw InputError("adding elements of different groups");
  std::vector<Integer> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = residues_[i] + other.residues_[i];
  return GroupElement(group_, std::move(r));
}

GroupElement GroupElement::operator-() const {
  std::vector<Integer> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = -residues_[i];
  return GroupElement(group_, std::move(r));
}

GroupElement GroupElement::scaled(const Integer& k) const {
  std::vector<Integer> r(residues_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = residues_[i] * k;
  return GroupElement(group_, std::move(r));
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < residues_.size(); ++i) os << (i ? "," : "") << residues_[i];
  os << ')';
  return os.str();
}

// --------------------------------------------------------------- Character

Character::Character(FinAbGroup group, std::vector<Integer> numerators)
    : group_(std::move(group)), numerators_(std::move(numerators)) {
  if (numerators_.size() != group_.num_slots()) throw InputError("character has wrong number of slots");
  const auto& f = group_.invariant_factors();
  for (std::size_t i = 0; i < numerators_.size(); ++i) {
    if (i < f.size())
      numerators_[i] = mod_floor(numerators_[i], f[i]);
    else
      numerators_[i] = 0;
  }
}

Rational Character::value_on_slot(std::size_t slot) const {
  const auto& f = group_.invariant_factors();
  if (slot >= f.size()) return 0;
  return Rational(numerators_[slot], f[slot]);
}

Rational Character::operator()(const GroupElement& x) const {
  if (!(x.group() == group_)) throw InputError("character applied to foreign element");
  Rational v = 0;
  const auto& f = group_.invariant_factors();
  for (std::size_t i = 0; i < f.size(); ++i) v += Rational(numerators_[i] * x.residues()[i], f[i]);
  return frac(v);
}

Integer Character::order() const {
  const auto& f = group_.invariant_factors();
  Integer o = 1;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (numerators_[i] != 0) o = lcm_value(o, f[i] / gcd_value(f[i], numerators_[i]));
  return o;
}

bool Character::is_zero() const {
  return std::all_of(numerators_.begin(), numerators_.end(), [](const Integer& a) { return a == 0; });
}

std::vector<Character> dual_basis(const FinAbGroup& group) {
  std::vector<Character> out;
  for (std::size_t i = 0; i < group.invariant_factors().size(); ++i) {
    std::vector<Integer> num(group.num_slots(), Integer(0));
    num[i] = 1;
    out.emplace_back(group, std::move(num));
  }
  return out;
}

// ---------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != target_.num_slots() || matrix_.cols() != source_.num_slots())
    throw InputError("homomorphism matrix has wrong shape");
  // Each source relation d_i * e_i must land in the target relation lattice.
  const auto src_mods = source_.moduli();
  const auto tgt_mods = target_.moduli();
  for (std::size_t c = 0; c < src_mods.size(); ++c) {
    if (src_mods[c] == 0) continue;
    for (std::size_t r = 0; r < tgt_mods.size(); ++r) {
      Integer v = src_mods[c] * matrix_(r, c);
      if (tgt_mods[r] == 0 ? v != 0 : v % tgt_mods[r] != 0)
        throw InputError("homomorphism matrix is not well defined on the source relations");
    }
  }
  const auto mods = tgt_mods;
  for (std::size_t r = 0; r < matrix_.rows(); ++r)
    for (std::size_t c = 0; c < matrix_.cols(); ++c) matrix_(r, c) = reduce(matrix_(r, c), mods[r]);
}

GroupElement GroupHom::apply(std::span<const Integer> residues) const {
  return GroupElement(target_, matrix_.apply(residues));
}

GroupElement GroupHom::operator()(const GroupElement& x) const {
  if (!(x.group() == source_)) throw InputError("homomorphism applied to foreign element");
  return apply(x.residues());
}

bool GroupHom::is_surjective() const {
  std::vector<GroupElement> images;
  for (std::size_t c = 0; c < matrix_.cols(); ++c) images.push_back(GroupElement(target_, matrix_.column(c)));
  return subgroup(target_, images).quotient().is_trivial();
}

// ---------------------------------------------------------------- Cokernel

Cokernel cokernel(const IntMatrix& M) {
  const std::size_t n = M.rows();
  SmithForm snf = smith_normal_form(M);
  std::vector<Integer> diag(n, Integer(0));
  for (std::size_t i = 0; i < std::min(n, M.cols()); ++i) diag[i] = snf.D(i, i);

  // Slots of U x: d_i == 1 slots vanish, d_i > 1 torsion, d_i == 0 free.
  std::vector<Integer> factors;
  std::vector<std::size_t> torsion_rows, free_rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (diag[i] == 0)
      free_rows.push_back(i);
    else if (diag[i] != 1) {
      factors.push_back(diag[i]);
      torsion_rows.push_back(i);
    }
  }
  FinAbGroup group(factors, free_rows.size());
  IntMatrix P(group.num_slots(), n);
  std::size_t slot = 0;
  for (std::size_t row : torsion_rows) {
    for (std::size_t c = 0; c < n; ++c) P(slot, c) = snf.U(row, c);
    ++slot;
  }
  for (std::size_t row : free_rows) {
    for (std::size_t c = 0; c < n; ++c) P(slot, c) = snf.U(row, c);
    ++slot;
  }
  return {group, GroupHom(FinAbGroup::free(n), group, std::move(P))};
}

// ---------------------------------------------------------------- Subgroups

DiagonalSpan span_in_diagonal(std::span<const Integer> moduli,
                              const std::vector<std::vector<Integer>>& generators) {
  const std::size_t s = moduli.size();
  const std::size_t g = generators.size();
  DiagonalSpan out;
  if (g == 0) return out;
  // Relations among generators: c in Z^g with sum c_j gen_j in diag(moduli) Z^s.
  IntMatrix combined(s, g + s);
  for (std::size_t j = 0; j < g; ++j) {
    if (generators[j].size() != s) throw InputError("generator has wrong number of slots");
    for (std::size_t i = 0; i < s; ++i) combined(i, j) = generators[j][i];
  }
  for (std::size_t i = 0; i < s; ++i) combined(i, g + i) = moduli[i];
  IntMatrix ker = integer_kernel(combined);
  IntMatrix rel(g, ker.cols());
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < ker.cols(); ++c) rel(r, c) = ker(r, c);

  SmithForm snf = smith_normal_form(rel);
  // Span = Z^g / rel Z^k; in the basis U^{-1} e_i the relations are diagonal.
  IntMatrix Uinv = unimodular_inverse(snf.U);
  std::vector<Integer> d(g, Integer(0));
  for (std::size_t i = 0; i < std::min(g, rel.cols()); ++i) d[i] = snf.D(i, i);

  std::vector<std::pair<Integer, std::vector<Integer>>> torsion, free_part;
  for (std::size_t i = 0; i < g; ++i) {
    if (d[i] == 1) continue;
    std::vector<Integer> v(s, Integer(0));
    for (std::size_t j = 0; j < g; ++j) {
      const Integer& coeff = Uinv(j, i);
      if (coeff == 0) continue;
      for (std::size_t k = 0; k < s; ++k) v[k] += coeff * generators[j][k];
    }
    for (std::size_t k = 0; k < s; ++k) v[k] = reduce(v[k], moduli[k]);
    (d[i] == 0 ? free_part : torsion).emplace_back(d[i], std::move(v));
  }
  for (auto& [o, v] : torsion) {
    out.orders.push_back(o);
    out.basis.push_back(std::move(v));
  }
  for (auto& [o, v] : free_part) {
    out.orders.push_back(0);
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Integer>> kernel_in_diagonal(std::span<const Integer> source_moduli,
                                                     std::span<const Integer> target_moduli,
                                                     const IntMatrix& M) {
  const std::size_t s = source_moduli.size();
  const std::size_t t = target_moduli.size();
  if (M.rows() != t || M.cols() != s) throw InputError("kernel_in_diagonal: shape mismatch");
  IntMatrix combined(t, s + t);
  for (std::size_t r = 0; r < t; ++r) {
    for (std::size_t c = 0; c < s; ++c) combined(r, c) = M(r, c);
    combined(r, s + r) = target_moduli[r];
  }
  IntMatrix ker = integer_kernel(combined);
  std::vector<std::vector<Integer>> gens;
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    std::vector<Integer> v(s);
    bool nonzero = false;
    for (std::size_t i = 0; i < s; ++i) {
      v[i] = reduce(ker(i, c), source_moduli[i]);
      nonzero = nonzero || v[i] != 0;
    }
    if (nonzero) gens.push_back(std::move(v));
  }
  return gens;
}

bool Subgroup::contains(const GroupElement& x) const {
  if (!(x.group() == ambient_)) throw InputError("membership test on foreign element");
  // Solvable iff (U x)_i divisible by D_ii and zero beyond the rank.
  SmithForm snf = smith_normal_form(relations_);
  std::vector<Integer> y = snf.U.apply(x.residues());
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer d = i < std::min(snf.D.rows(), snf.D.cols()) ? snf.D(i, i) : Integer(0);
    if (d == 0 ? y[i] != 0 : y[i] % d != 0) return false;
  }
  return true;
}

Subgroup subgroup(const FinAbGroup& ambient, const std::vector<GroupElement>& generators) {
  for (const auto& g : generators)
    if (!(g.group() == ambient)) throw InputError("subgroup generator does not belong to the ambient group");
  const auto mods = ambient.moduli();
  std::vector<std::vector<Integer>> gens;
  for (const auto& g : generators) gens.push_back(g.residues());

  Subgroup out;
  out.ambient_ = ambient;
  DiagonalSpan span = span_in_diagonal(mods, gens);
  std::vector<Integer> factors;
  std::size_t free_rank = 0;
  for (std::size_t i = 0; i < span.orders.size(); ++i) {
    if (span.orders[i] == 0)
      ++free_rank;
    else
      factors.push_back(span.orders[i]);
    out.basis_.emplace_back(ambient, span.basis[i]);
  }
  out.group_ = FinAbGroup(factors, free_rank);

  // Quotient = coker of [diag(moduli) | generators].
  const std::size_t s = mods.size();
  IntMatrix rel(s, s + gens.size());
  for (std::size_t i = 0; i < s; ++i) rel(i, i) = mods[i];
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < s; ++i) rel(i, s + j) = gens[j][i];
  out.relations_ = rel;
  Cokernel q = cokernel(rel);
  out.quotient_ = q.group;
  out.projection_ = GroupHom(ambient, q.group, q.projection.matrix());
  return out;
}

Subgroup kernel(const GroupHom& f) {
  auto gens = kernel_in_diagonal(f.source().moduli(), f.target().moduli(), f.matrix());
  std::vector<GroupElement> elems;
  for (auto& g : gens) elems.emplace_back(f.source(), std::move(g));
  return subgroup(f.source(), elems);
}

// ---------------------------------------------------------------- Primary

PrimaryComponent primary_component(const FinAbGroup& A, const Integer& p) {
  if (!is_prime(p)) throw InputError("primary_component: p is not prime");
  if (!A.is_finite()) throw InputError("primary_component: group is infinite");
  const auto& f = A.invariant_factors();
  std::vector<Integer> pf;
  std::vector<std::size_t> slots;
  for (std::size_t i = 0; i < f.size(); ++i) {
    unsigned k = valuation(f[i], p);
    if (k == 0) continue;
    pf.push_back(boost::multiprecision::pow(p, k));
    slots.push_back(i);
  }
  FinAbGroup P(pf);
  IntMatrix inc(A.num_slots(), P.num_slots());
  IntMatrix proj(P.num_slots(), A.num_slots());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    const Integer& d = f[slots[j]];
    const Integer& q = pf[j];
    Integer cofactor = d / q;
    inc(slots[j], j) = cofactor;
    // e * cofactor == 1 (mod q) makes projection o inclusion the identity.
    Integer g, s, t;
    ext_gcd(cofactor, q, g, s, t);
    proj(j, slots[j]) = mod_floor(s, q);
  }
  return {P, GroupHom(P, A, std::move(inc)), GroupHom(A, P, std::move(proj))};
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Integer d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<Integer> prime_divisors(Integer n) {
  n = abs_value(n);
  std::vector<Integer> out;
  for (Integer d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

unsigned valuation(Integer n, const Integer& p) {
  if (n == 0) throw InputError("valuation of zero");
  unsigned k = 0;
  while (n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += abs_value(m);
  return r;
}

Rational frac(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  return Rational(mod_floor(num, den), den);
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw InputError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InputError("malformed rational '" + text + "'");
  }
}

std::string format_rational(const Rational& x) {
  Integer num = boost::multiprecision::numerator(x);
  Integer den = boost::multiprecision::denominator(x);
  std::ostringstream os;
  os << num;
  if (den != 1) os << '/' << den;
  return os.str();
}

}  // namespace adecodes
