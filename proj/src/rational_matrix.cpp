#include "gq/rational_matrix.hpp"

#include <sstream>

namespace gq {

RMatrix::RMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw DomainError("matrix data has wrong size");
}

RMatrix RMatrix::identity(std::size_t n) {
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RMatrix RMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  if (rows.empty()) return {};
  RMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DomainError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

RMatrix RMatrix::transpose() const {
  RMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RMatrix RMatrix::column(std::size_t c) const { return columns({c}); }

RMatrix RMatrix::columns(const std::vector<std::size_t>& idx) const {
  RMatrix out(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = (*this)(r, idx[k]);
  return out;
}

bool RMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool RMatrix::operator==(const RMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RMatrix& RMatrix::operator+=(const RMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch in +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

RMatrix& RMatrix::operator-=(const RMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DomainError("matrix shape mismatch in -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

RMatrix& RMatrix::operator*=(const Rational& c) {
  for (auto& x : data_) x *= c;
  return *this;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shape mismatch in *");
  RMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rational& x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += x * b(k, j);
    }
  return out;
}

std::string RMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << rational_to_string((*this)(r, c));
    os << "\n";
  }
  return os.str();
}

RMatrix hstack(const RMatrix& a, const RMatrix& b) {
  if (a.cols() == 0) return b;
  if (b.cols() == 0) return a;
  if (a.rows() != b.rows()) throw DomainError("hstack row mismatch");
  RMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

RMatrix vstack(const RMatrix& a, const RMatrix& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw DomainError("vstack column mismatch");
  RMatrix out(a.rows() + b.rows(), a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) {
    for (std::size_t r = 0; r < a.rows(); ++r) out(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r) out(a.rows() + r, c) = b(r, c);
  }
  return out;
}

RMatrix block_diag(const RMatrix& a, const RMatrix& b) {
  RMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

RMatrix kron(const RMatrix& a, const RMatrix& b) {
  RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return out;
}

RMatrix rref(RMatrix m, std::vector<std::size_t>* pivots) {
  if (pivots) pivots->clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t c = col; c < m.cols(); ++c) std::swap(m(piv, c), m(row, c));
    Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c)
        if (m(row, c) != 0) m(r, c) -= f * m(row, c);
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

std::size_t rank(const RMatrix& m) {
  if (m.empty()) return 0;
  std::vector<std::size_t> piv;
  // Eliminate along the shorter dimension.
  if (m.rows() < m.cols())
    rref(m.transpose(), &piv);
  else
    rref(m, &piv);
  return piv.size();
}

RMatrix nullspace(const RMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return RMatrix::identity(n);
  std::vector<std::size_t> piv;
  RMatrix r = rref(m, &piv);
  std::vector<bool> is_piv(n, false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (!is_piv[c]) free.push_back(c);
  RMatrix basis(n, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], k) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) basis(piv[i], k) = -r(i, free[k]);
  }
  return basis;
}

RMatrix column_basis(const RMatrix& m) {
  if (m.empty()) return RMatrix(m.rows(), 0);
  std::vector<std::size_t> piv;
  rref(m, &piv);
  return m.columns(piv);
}

RMatrix extend_basis(const RMatrix& base, const RMatrix& extra) {
  RMatrix all = hstack(base, extra);
  if (all.empty()) return RMatrix(extra.rows(), 0);
  std::vector<std::size_t> piv;
  rref(all, &piv);
  std::vector<std::size_t> chosen;
  for (auto p : piv)
    if (p >= base.cols()) chosen.push_back(p - base.cols());
  return extra.columns(chosen);
}

bool span_contains(const RMatrix& a, const RMatrix& b) {
  if (b.cols() == 0) return true;
  if (a.cols() == 0) return b.is_zero();
  return rank(hstack(a, b)) == rank(a);
}

bool same_span(const RMatrix& a, const RMatrix& b) {
  return span_contains(a, b) && span_contains(b, a);
}

std::optional<RMatrix> solve(const RMatrix& a, const RMatrix& b) {
  if (b.cols() != 1 || b.rows() != a.rows()) throw DomainError("solve expects a column vector");
  std::vector<std::size_t> piv;
  RMatrix r = rref(hstack(a, b), &piv);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RMatrix x(a.cols(), 1);
  for (std::size_t i = 0; i < piv.size(); ++i) x(piv[i], 0) = r(i, a.cols());
  return x;
}

}  // namespace gq
