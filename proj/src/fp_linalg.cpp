#include "picentlab/fp_linalg.hpp"

#include <stdexcept>

#include "picentlab/numtheory.hpp"

namespace picent {

FpMatrix FpMatrix::identity(std::size_t n, std::uint64_t q) {
  FpMatrix m(n, n, q);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % q;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows,
                             std::size_t cols, std::uint64_t q) {
  FpMatrix m(rows.size(), cols, q);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("FpMatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rows[r][c] % q;
  }
  return m;
}

std::vector<std::uint64_t> FpMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
}

std::vector<std::vector<std::uint64_t>> FpMatrix::to_rows() const {
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("FpMatrix: shape mismatch");
  FpMatrix out(rows_, other.cols_, q_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint64_t a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out.at(i, j) = (out.at(i, j) + nt::mul_mod(a, other.at(k, j), q_)) % q_;
      }
    }
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& other) const {
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + other.data_[i]) % q_;
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& other) const {
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] = (data_[i] + q_ - other.data_[i]) % q_;
  }
  return out;
}

FpMatrix FpMatrix::scaled(std::uint64_t k) const {
  FpMatrix out = *this;
  for (auto& x : out.data_) x = nt::mul_mod(x, k % q_, q_);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix out(cols_, rows_, q_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

std::vector<std::uint64_t> FpMatrix::apply(const std::vector<std::uint64_t>& v) const {
  std::vector<std::uint64_t> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + nt::mul_mod(at(i, j), v[j], q_)) % q_;
    out[i] = acc;
  }
  return out;
}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
    std::size_t pivot = lead_row;
    while (pivot < rows_ && at(pivot, c) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != lead_row) {
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(pivot, j), at(lead_row, j));
    }
    const std::uint64_t inv = nt::inv_mod(at(lead_row, c), q_);
    for (std::size_t j = 0; j < cols_; ++j) at(lead_row, j) = nt::mul_mod(at(lead_row, j), inv, q_);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == lead_row) continue;
      const std::uint64_t f = at(r, c);
      if (f == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        at(r, j) = (at(r, j) + q_ - nt::mul_mod(f, at(lead_row, j), q_)) % q_;
      }
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<std::uint64_t>> FpMatrix::nullspace() const {
  FpMatrix reduced = *this;
  const auto pivots = reduced.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(cols_, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = (q_ - reduced.at(r, free)) % q_;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

FpMatrix FpMatrix::inverse() const {
  if (rows_ != cols_) throw std::domain_error("FpMatrix::inverse: not square");
  const std::size_t n = rows_;
  FpMatrix aug(n, 2 * n, q_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, n + i) = 1 % q_;
  }
  const auto pivots = aug.rref();
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw std::domain_error("FpMatrix::inverse: singular");
  }
  FpMatrix out(n, n, q_);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  }
  return out;
}

FpSubspace FpSubspace::span(const std::vector<std::vector<std::uint64_t>>& vectors,
                            std::size_t dim, std::uint64_t q) {
  FpSubspace s(dim, q);
  if (vectors.empty()) return s;
  FpMatrix m = FpMatrix::from_rows(vectors, dim, q);
  s.pivots_ = m.rref();
  for (std::size_t r = 0; r < s.pivots_.size(); ++r) s.basis_.push_back(m.row(r));
  return s;
}

FpSubspace FpSubspace::whole(std::size_t dim, std::uint64_t q) {
  std::vector<std::vector<std::uint64_t>> unit;
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<std::uint64_t> e(dim, 0);
    e[i] = 1;
    unit.push_back(std::move(e));
  }
  return span(unit, dim, q);
}

bool FpSubspace::contains(const std::vector<std::uint64_t>& v) const {
  std::vector<std::uint64_t> rest = v;
  for (auto& x : rest) x %= q_;
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    const std::uint64_t f = rest[pivots_[r]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) {
      rest[j] = (rest[j] + q_ - nt::mul_mod(f, basis_[r][j], q_)) % q_;
    }
  }
  for (auto x : rest) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> FpSubspace::coordinates(const std::vector<std::uint64_t>& v) const {
  std::vector<std::uint64_t> out(basis_.size());
  for (std::size_t r = 0; r < basis_.size(); ++r) out[r] = v[pivots_[r]] % q_;
  return out;
}

FpSubspace FpSubspace::intersect(const FpSubspace& other) const {
  // Solve x*A = y*B via the left kernel of [A; -B].
  const std::size_t a = basis_.size();
  const std::size_t b = other.basis_.size();
  if (a == 0 || b == 0) return FpSubspace(ambient_, q_);
  FpMatrix stacked(ambient_, a + b, q_);
  for (std::size_t j = 0; j < ambient_; ++j) {
    for (std::size_t i = 0; i < a; ++i) stacked.at(j, i) = basis_[i][j];
    for (std::size_t i = 0; i < b; ++i) stacked.at(j, a + i) = (q_ - other.basis_[i][j]) % q_;
  }
  std::vector<std::vector<std::uint64_t>> vectors;
  for (const auto& coeffs : stacked.nullspace()) {
    std::vector<std::uint64_t> v(ambient_, 0);
    for (std::size_t i = 0; i < a; ++i) {
      if (coeffs[i] == 0) continue;
      for (std::size_t j = 0; j < ambient_; ++j) {
        v[j] = (v[j] + nt::mul_mod(coeffs[i], basis_[i][j], q_)) % q_;
      }
    }
    vectors.push_back(std::move(v));
  }
  return span(vectors, ambient_, q_);
}

FpSubspace FpSubspace::sum(const FpSubspace& other) const {
  auto vectors = basis_;
  vectors.insert(vectors.end(), other.basis_.begin(), other.basis_.end());
  return span(vectors, ambient_, q_);
}

}  // namespace picent
