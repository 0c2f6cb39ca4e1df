#pragma once

#include <cstdint>
#include <vector>

namespace picent {

using FieldElem = std::uint32_t;

/// The finite field F_{p^n} = F_p[x]/(modulus).
///
/// Elements are coefficient vectors (c_0, ..., c_{n-1}) of length n, encoded
/// as the index c_0 + c_1 p + ... + c_{n-1} p^{n-1}; this agrees with the
/// element indexing of the additive group GFAdd(p, n). Multiplication goes
/// through discrete-log tables built from the primitive root.
class FieldDescriptor {
 public:
  std::uint64_t p() const { return p_; }
  unsigned n() const { return n_; }
  std::uint64_t size() const { return size_; }
  // Monic, low-to-high, length n + 1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  FieldElem primitive_root() const { return primitive_root_; }

  std::vector<std::uint64_t> coefficients(FieldElem x) const;
  FieldElem from_coefficients(const std::vector<std::uint64_t>& c) const;

  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem pow(FieldElem a, std::uint64_t k) const;
  // gamma^k for the primitive root gamma; k may be negative.
  FieldElem gamma_pow(std::int64_t k) const;
  // x -> x^(p^k).
  FieldElem frobenius(FieldElem x, std::int64_t k) const;
  // Discrete log base gamma of a non-zero element.
  std::uint64_t log(FieldElem x) const;
  std::uint64_t multiplicative_order(FieldElem x) const;

  // Matrix of x -> lambda * x over F_p in the basis 1, x, ..., x^{n-1}:
  // column j holds the coordinates of lambda * x^j.
  std::vector<std::vector<std::int64_t>> mult_matrix(FieldElem lambda) const;

 private:
  friend FieldDescriptor field_make(std::uint64_t, unsigned, std::uint64_t);

  std::uint64_t p_ = 2;
  unsigned n_ = 1;
  std::uint64_t size_ = 2;
  std::vector<std::uint64_t> modulus_;
  FieldElem primitive_root_ = 1;
  std::vector<FieldElem> exp_;           // exp_[k] = gamma^k, k < size-1
  std::vector<std::uint64_t> log_;       // log_[x] for x != 0
};

/// Deterministic construction: the modulus is the lexicographically least
/// monic irreducible of degree n and the primitive root the lexicographically
/// least element of order p^n - 1, both comparing coefficients low to high.
/// Throws NonPrime or TooLarge.
FieldDescriptor field_make(std::uint64_t p, unsigned n,
                           std::uint64_t max_size = 1u << 20);

}  // namespace picent
