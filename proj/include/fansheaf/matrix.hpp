#pragma once

// Dense exact linear algebra over Q: reduced row echelon form with the
// leftmost-pivot rule, kernel/image/quotient dimensions, linear solves,
// and an incremental row-space accumulator. All routines are
// deterministic; repeated runs produce identical pivots and bases.

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fansheaf/rational.hpp"

namespace fansheaf {

class QMat {
 public:
  QMat() = default;
  QMat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static QMat identity(int n) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  static QMat from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return QMat(0, 0);
    QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows(); ++i) {
      if (rows[i].size() != static_cast<size_t>(m.cols()))
        throw std::invalid_argument("QMat::from_rows: ragged rows");
      for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  static QMat from_columns(const std::vector<std::vector<Rat>>& cols) {
    if (cols.empty()) return QMat(0, 0);
    QMat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols(); ++j) {
      if (cols[j].size() != static_cast<size_t>(m.rows()))
        throw std::invalid_argument("QMat::from_columns: ragged columns");
      for (int i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  std::vector<Rat> row(int i) const {
    std::vector<Rat> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
  }

  std::vector<Rat> column(int j) const {
    std::vector<Rat> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
  }

  QMat transposed() const {
    QMat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  QMat operator*(const QMat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("QMat::operator*: shape mismatch");
    QMat p(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rat& x = at(i, k);
        if (x == 0) continue;
        for (int j = 0; j < o.cols_; ++j) p.at(i, j) += x * o.at(k, j);
      }
    return p;
  }

  std::vector<Rat> apply(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("QMat::apply: shape mismatch");
    std::vector<Rat> r(rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
  }

  bool operator==(const QMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

struct RrefResult {
  QMat mat;
  std::vector<int> pivot_cols;
  int rank = 0;
};

// Leftmost-pivot rule: for each column in order, the first row (top-down)
// with a nonzero entry becomes the pivot row.
inline RrefResult rref(QMat m) {
  RrefResult res;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.at(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Rat inv = 1 / m.at(r, c);
    for (int j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (int j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  res.mat = std::move(m);
  return res;
}

inline int rank_of(const QMat& m) { return rref(m).rank; }

inline int image_dim(const QMat& m) { return rank_of(m); }

// Basis of {x : Mx = 0}. One vector per free column (ascending), with a 1
// in its free column and pivot entries solved from the rref.
inline std::vector<std::vector<Rat>> kernel_basis(const QMat& m) {
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(m.cols());
    v[f] = 1;
    for (size_t i = 0; i < r.pivot_cols.size(); ++i) v[r.pivot_cols[i]] = -r.mat.at(static_cast<int>(i), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Particular solution of Ax = b with free variables set to 0, if consistent.
inline std::optional<std::vector<Rat>> solve(const QMat& a, const std::vector<Rat>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw std::invalid_argument("solve: shape mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  for (int c : r.pivot_cols)
    if (c == a.cols()) return std::nullopt;  // inconsistent
  std::vector<Rat> x(a.cols());
  for (size_t i = 0; i < r.pivot_cols.size(); ++i) x[r.pivot_cols[i]] = r.mat.at(static_cast<int>(i), a.cols());
  return x;
}

// Incremental row space in echelon form, keyed by leading column.
// add() returns true when the vector enlarged the span.
class RowSpace {
 public:
  explicit RowSpace(int cols) : cols_(cols) {}

  bool add(std::vector<Rat> v) {
    reduce(v);
    int lead = lead_of(v);
    if (lead < 0) return false;
    Rat inv = 1 / v[lead];
    for (Rat& x : v) x *= inv;
    rows_.emplace(lead, std::move(v));
    return true;
  }

  bool contains(std::vector<Rat> v) const {
    reduce(v);
    return lead_of(v) < 0;
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }

 private:
  void reduce(std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("RowSpace: length mismatch");
    for (const auto& [lead, row] : rows_) {
      if (v[lead] == 0) continue;
      Rat f = v[lead];
      for (int j = lead; j < cols_; ++j) v[j] -= f * row[j];
    }
  }

  static int lead_of(const std::vector<Rat>& v) {
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) return static_cast<int>(j);
    return -1;
  }

  int cols_;
  std::map<int, std::vector<Rat>> rows_;
};

inline int span_dim(const std::vector<std::vector<Rat>>& vecs, int cols) {
  RowSpace rs(cols);
  for (const auto& v : vecs) rs.add(v);
  return rs.rank();
}

// dim(W/U) for U a subspace of span(W); rejects vectors of U outside span(W).
inline int quotient_dim(const std::vector<std::vector<Rat>>& w_basis,
                        const std::vector<std::vector<Rat>>& u_vectors, int cols) {
  RowSpace w(cols);
  for (const auto& v : w_basis) w.add(v);
  RowSpace u(cols);
  for (const auto& v : u_vectors) {
    if (!w.contains(v)) throw std::invalid_argument("quotient_dim: U is not contained in span(W)");
    u.add(v);
  }
  return w.rank() - u.rank();
}

}  // namespace fansheaf
