#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace picent {

// Dense matrix over the prime field F_q, entries kept reduced in [0, q).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, std::uint64_t q)
      : rows_(rows), cols_(cols), q_(q), data_(rows * cols, 0) {}

  static FpMatrix identity(std::size_t n, std::uint64_t q);
  // Rows given as vectors of equal length.
  static FpMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows,
                            std::size_t cols, std::uint64_t q);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return q_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<std::uint64_t> row(std::size_t r) const;
  std::vector<std::vector<std::uint64_t>> to_rows() const;

  FpMatrix operator*(const FpMatrix& other) const;
  FpMatrix operator+(const FpMatrix& other) const;
  FpMatrix operator-(const FpMatrix& other) const;
  FpMatrix scaled(std::uint64_t k) const;
  FpMatrix transposed() const;
  bool operator==(const FpMatrix& other) const = default;

  std::vector<std::uint64_t> apply(const std::vector<std::uint64_t>& v) const;

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  // Basis (as rows) of {x : M x = 0}.
  std::vector<std::vector<std::uint64_t>> nullspace() const;
  // Inverse of a square invertible matrix; throws std::domain_error otherwise.
  FpMatrix inverse() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t q_ = 2;
  std::vector<std::uint64_t> data_;
};

// A subspace of F_q^n kept as a reduced echelon basis.
class FpSubspace {
 public:
  FpSubspace(std::size_t dim, std::uint64_t q) : ambient_(dim), q_(q) {}
  static FpSubspace span(const std::vector<std::vector<std::uint64_t>>& vectors,
                         std::size_t dim, std::uint64_t q);
  static FpSubspace whole(std::size_t dim, std::uint64_t q);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  std::uint64_t modulus() const { return q_; }
  const std::vector<std::vector<std::uint64_t>>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const std::vector<std::uint64_t>& v) const;
  // Coordinates of v (assumed contained) in the echelon basis.
  std::vector<std::uint64_t> coordinates(const std::vector<std::uint64_t>& v) const;
  FpSubspace intersect(const FpSubspace& other) const;
  FpSubspace sum(const FpSubspace& other) const;
  bool operator==(const FpSubspace& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  std::size_t ambient_;
  std::uint64_t q_;
  std::vector<std::vector<std::uint64_t>> basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace picent
