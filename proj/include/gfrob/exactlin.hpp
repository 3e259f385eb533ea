#ifndef GFROB_EXACTLIN_HPP
#define GFROB_EXACTLIN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "gfrob/scalar.hpp"

namespace gfrob {

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotInSpan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename S>
Mat<S> identity(Eigen::Index n) {
  return Mat<S>::Identity(n, n);
}

template <typename S>
Mat<S> zeros(Eigen::Index r, Eigen::Index c) {
  return Mat<S>::Zero(r, c);
}

// Exact equality including shape.
template <typename S>
bool same(const Mat<S>& a, const Mat<S>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

template <typename S>
bool is_zero_matrix(const Mat<S>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!is_zero(a(i, j))) return false;
  return true;
}

// Elementary row operation, recorded so callers can replay an elimination.
template <typename S>
struct RowOp {
  enum Kind { Swap, Scale, AddMultiple } kind;
  int i = 0;  // row being changed
  int j = 0;  // other row (Swap / AddMultiple)
  S factor{};  // Scale: row i *= factor ; AddMultiple: row i += factor * row j

  Mat<S> as_matrix(Eigen::Index n) const {
    Mat<S> e = identity<S>(n);
    switch (kind) {
      case Swap:
        e(i, i) = S(0);
        e(j, j) = S(0);
        e(i, j) = S(1);
        e(j, i) = S(1);
        break;
      case Scale:
        e(i, i) = factor;
        break;
      case AddMultiple:
        e(i, j) = factor;
        break;
    }
    return e;
  }
};

namespace detail {

// Ties integer literals to the modulus found elsewhere in the matrix.
template <typename S>
void adopt_field(Mat<S>&) {}

template <>
inline void adopt_field<ModP>(Mat<ModP>& m) {
  std::int64_t p = 0;
  for (Eigen::Index i = 0; i < m.size() && p == 0; ++i) p = m.data()[i].modulus();
  if (p == 0) return;
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = m.data()[i] + ModP(0, p);
}

}  // namespace detail

template <typename S>
struct Echelon {
  Mat<S> reduced;
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

template <typename S>
Echelon<S> rref(Mat<S> m, std::vector<RowOp<S>>* log = nullptr) {
  Echelon<S> out;
  detail::adopt_field<S>(m);
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      m.row(piv).swap(m.row(r));
      if (log) log->push_back({RowOp<S>::Swap, static_cast<int>(r), static_cast<int>(piv), S(0)});
    }
    if (m(r, c) != S(1)) {
      S inv = S(1) / m(r, c);
      for (Eigen::Index j = c; j < cols; ++j) m(r, j) *= inv;
      if (log) log->push_back({RowOp<S>::Scale, static_cast<int>(r), 0, inv});
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
      if (log) log->push_back({RowOp<S>::AddMultiple, static_cast<int>(i), static_cast<int>(r), -f});
    }
    out.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename S>
int rank(const Mat<S>& m) {
  return rref(m).rank();
}

// Rows form a basis of {x : m x = 0}; row count = cols - rank.
template <typename S>
Mat<S> kernel_basis(const Mat<S>& m) {
  const Eigen::Index n = m.cols();
  Echelon<S> e = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int p : e.pivots) is_pivot[p] = true;
  Mat<S> out = zeros<S>(n - e.rank(), n);
  Eigen::Index k = 0;
  for (Eigen::Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    out(k, f) = S(1);
    for (int i = 0; i < e.rank(); ++i) out(k, e.pivots[i]) = -e.reduced(i, f);
    ++k;
  }
  return out;
}

template <typename S>
std::optional<Vec<S>> solve_linear(const Mat<S>& a, const Vec<S>& b) {
  if (a.rows() != b.rows())
    throw DimensionMismatch("solve_linear: " + std::to_string(a.rows()) + " rows vs rhs length " +
                            std::to_string(b.rows()));
  Mat<S> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  Echelon<S> e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  Vec<S> x = Vec<S>::Zero(a.cols());
  for (int i = 0; i < e.rank(); ++i) x(e.pivots[i]) = e.reduced(i, a.cols());
  return x;
}

template <typename S>
Mat<S> inverse(const Mat<S>& a) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const Eigen::Index n = a.rows();
  Mat<S> aug(n, 2 * n);
  aug << a, identity<S>(n);
  Echelon<S> e = rref(aug);
  if (e.rank() < n || (n > 0 && e.pivots[n - 1] != n - 1)) throw std::domain_error("singular matrix");
  return e.reduced.rightCols(n);
}

/*
 * Exact product skipping zero entries. Eigen's blocked product creates a
 * temporary per multiply-add, which dominates for big-number scalars.
 */
template <typename A, typename B>
Mat<typename A::Scalar> mul(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs) {
  using S = typename A::Scalar;
  if (lhs.cols() != rhs.rows()) throw DimensionMismatch("mul: inner dimensions differ");
  const Mat<S> a = lhs, b = rhs;
  Mat<S> out = zeros<S>(a.rows(), b.cols());
  for (Eigen::Index j = 0; j < b.cols(); ++j)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const S& bkj = b(k, j);
      if (is_zero(bkj)) continue;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        if (!is_zero(a(i, k))) out(i, j) += a(i, k) * bkj;
    }
  return out;
}

template <typename S>
Mat<S> kron(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-major flattening of an r x c matrix into an (r*c)-vector.
template <typename S>
Vec<S> vec(const Mat<S>& m) {
  Vec<S> out(m.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) out(j * m.rows() + i) = m(i, j);
  return out;
}

template <typename S>
Mat<S> unvec(const Vec<S>& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvec: length mismatch");
  Mat<S> out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = v(j * rows + i);
  return out;
}

template <typename S>
Mat<S> vstack(const std::vector<Mat<S>>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  Mat<S> out(rows, cols);
  Eigen::Index r = 0;
  for (const auto& b : blocks) {
    if (b.cols() != cols) throw DimensionMismatch("vstack: column mismatch");
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

/*
 * Subspace of S^n stored as the nonzero rows of a reduced row-echelon basis,
 * so two subspaces are equal iff their stored bases are equal.
 */
template <typename S>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Eigen::Index ambient) : ambient_(ambient), basis_(0, ambient) {}

  static Subspace span_rows(const Mat<S>& rows) {
    Subspace s(rows.cols());
    Echelon<S> e = rref(rows);
    s.basis_ = e.reduced.topRows(e.rank());
    s.pivots_ = e.pivots;
    return s;
  }
  static Subspace span_columns(const Mat<S>& cols) { return span_rows(cols.transpose()); }
  static Subspace full(Eigen::Index n) { return span_rows(identity<S>(n)); }

  Eigen::Index ambient_dim() const { return ambient_; }
  Eigen::Index dim() const { return basis_.rows(); }
  const Mat<S>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(const Vec<S>& v) const {
    Vec<S> r = v;
    for (Eigen::Index i = 0; i < dim(); ++i) {
      S c = r(pivots_[i]);
      if (!is_zero(c)) r -= c * basis_.row(i).transpose();
    }
    return is_zero_matrix<S>(r);
  }
  bool operator==(const Subspace& o) const { return ambient_ == o.ambient_ && same<S>(basis_, o.basis_); }

 private:
  Eigen::Index ambient_ = 0;
  Mat<S> basis_;
  std::vector<int> pivots_;
};

template <typename S>
struct QuotientMap {
  Mat<S> projection;  // (n - k) x n, kernel exactly the subspace
  Mat<S> section;     // n x (n - k), projection * section = I
};

/*
 * Coordinates on the complement are the non-pivot columns of the subspace
 * basis; projection reduces a vector modulo the basis and reads those entries.
 */
template <typename S>
QuotientMap<S> quotient_map(Eigen::Index ambient_dim, const Subspace<S>& sub) {
  if (sub.ambient_dim() != ambient_dim) throw DimensionMismatch("quotient_map: ambient dimension mismatch");
  const Eigen::Index n = ambient_dim, k = sub.dim();
  std::vector<bool> is_pivot(n, false);
  for (int p : sub.pivots()) is_pivot[p] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < n; ++c)
    if (!is_pivot[c]) free.push_back(c);
  // reduce(v) = v - K^T v_piv
  Mat<S> reduce = identity<S>(n);
  for (Eigen::Index i = 0; i < k; ++i) reduce.col(sub.pivots()[i]) -= sub.basis().row(i).transpose();
  QuotientMap<S> q;
  q.projection = Mat<S>(free.size(), n);
  q.section = zeros<S>(n, free.size());
  for (std::size_t r = 0; r < free.size(); ++r) {
    q.projection.row(r) = reduce.row(free[r]);
    q.section(free[r], r) = S(1);
  }
  return q;
}

/*
 * Coordinates with respect to a fixed (not necessarily reduced) row basis B.
 * The submatrix of B on the rref pivot columns is invertible, which gives a
 * left inverse of B^T.
 */
template <typename S>
class Coordinates {
 public:
  Coordinates() = default;
  explicit Coordinates(const Mat<S>& basis_rows) : basis_(basis_rows) {
    Echelon<S> e = rref(basis_rows);
    if (e.rank() != basis_rows.rows()) throw std::invalid_argument("Coordinates: basis rows are dependent");
    cols_ = e.pivots;
    Mat<S> sub(basis_.rows(), basis_.rows());
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(cols_.size()); ++j) sub.col(j) = basis_.col(cols_[j]);
    // v_P = sub^T c
    left_ = inverse<S>(Mat<S>(sub.transpose()));
  }

  Eigen::Index dim() const { return basis_.rows(); }
  Eigen::Index ambient_dim() const { return basis_.cols(); }
  const Mat<S>& basis() const { return basis_; }

  // Columns of v (ambient vectors) to coordinate columns; throws NotInSpan.
  Mat<S> of(const Mat<S>& v) const {
    if (v.rows() != basis_.cols()) throw DimensionMismatch("Coordinates: ambient mismatch");
    Mat<S> picked(static_cast<Eigen::Index>(cols_.size()), v.cols());
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(cols_.size()); ++i) picked.row(i) = v.row(cols_[i]);
    Mat<S> c = mul(left_, picked);
    if (!same<S>(mul(basis_.transpose(), c), v)) throw NotInSpan("vector outside the spanned subspace");
    return c;
  }

  Mat<S> expand(const Mat<S>& coords) const { return mul(basis_.transpose(), coords); }

 private:
  Mat<S> basis_;
  std::vector<int> cols_;
  Mat<S> left_;
};

template <typename S>
S scalar(long long n, const Field& f) {
  return S::from_int(n, f);
}

template <typename S>
S parse_scalar(const std::string& text, const Field& f);

template <>
inline Rational parse_scalar<Rational>(const std::string& text, const Field&) {
  return Rational::parse(text);
}

template <>
inline ModP parse_scalar<ModP>(const std::string& text, const Field& f) {
  Rational q = Rational::parse(text);
  mpz_class n = q.value().get_num() % f.p, d = q.value().get_den() % f.p;
  ModP num(n.get_si(), f.p);
  ModP den(d.get_si(), f.p);
  if (den.is_zero()) throw std::invalid_argument("entry '" + text + "' has denominator divisible by p");
  return num / den;
}

// Attach the field modulus to literal entries (no-op over the rationals).
template <typename S>
Mat<S> in_field(const Mat<S>& m, const Field& f);

template <>
inline Mat<Rational> in_field<Rational>(const Mat<Rational>& m, const Field&) {
  return m;
}

template <>
inline Mat<ModP> in_field<ModP>(const Mat<ModP>& m, const Field& f) {
  Mat<ModP> out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j).modulus() != 0 && m(i, j).modulus() != f.p)
        throw FieldMismatch("entry over F" + std::to_string(m(i, j).modulus()) + " used in " + f.str());
      out(i, j) = ModP(m(i, j).value(), f.p);
    }
  return out;
}

}  // namespace gfrob

#endif
