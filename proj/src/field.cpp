#include "picentlab/field.hpp"

#include <string>

#include "picentlab/error.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

using Poly = std::vector<std::uint64_t>;  // low to high

// Remainder of a modulo the monic polynomial m, over F_p.
Poly poly_rem(Poly a, const Poly& m, std::uint64_t p) {
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back() % p;
    const std::size_t shift = a.size() - 1 - dm;
    if (lead != 0) {
      for (std::size_t i = 0; i <= dm; ++i) {
        a[shift + i] = (a[shift + i] + p - (lead * m[i]) % p) % p;
      }
    }
    a.pop_back();
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_rem(std::move(prod), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly result(m.size() - 1, 0);
  result[0] = 1;
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, m, p);
    base = poly_mulmod(base, base, m, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  if (a.empty() || a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

bool is_zero(const Poly& a) {
  for (auto c : a) {
    if (c != 0) return false;
  }
  return true;
}

// Coefficients (c_0, ..., c_{len-1}) of the rank-th vector in lexicographic
// order with c_0 most significant.
Poly lex_vector(std::uint64_t rank, unsigned len, std::uint64_t p) {
  Poly c(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    c[len - 1 - i] = rank % p;
    rank /= p;
  }
  return c;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned d = 1; d <= n / 2; ++d) {
    const std::uint64_t count = nt::checked_pow(p, d, ~0ull);
    for (std::uint64_t r = 0; r < count; ++r) {
      Poly g = lex_vector(r, d, p);
      g.push_back(1);
      if (is_zero(poly_rem(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::uint64_t> FieldDescriptor::coefficients(FieldElem x) const {
  std::vector<std::uint64_t> c(n_, 0);
  std::uint64_t v = x;
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = v % p_;
    v /= p_;
  }
  return c;
}

FieldElem FieldDescriptor::from_coefficients(const std::vector<std::uint64_t>& c) const {
  std::uint64_t v = 0;
  for (unsigned i = n_; i-- > 0;) v = v * p_ + (i < c.size() ? c[i] % p_ : 0);
  return static_cast<FieldElem>(v);
}

FieldElem FieldDescriptor::add(FieldElem a, FieldElem b) const {
  std::uint64_t out = 0, scale = 1, x = a, y = b;
  for (unsigned i = 0; i < n_; ++i) {
    out += ((x % p_ + y % p_) % p_) * scale;
    x /= p_;
    y /= p_;
    scale *= p_;
  }
  return static_cast<FieldElem>(out);
}

FieldElem FieldDescriptor::neg(FieldElem a) const {
  std::uint64_t out = 0, scale = 1, x = a;
  for (unsigned i = 0; i < n_; ++i) {
    out += ((p_ - x % p_) % p_) * scale;
    x /= p_;
    scale *= p_;
  }
  return static_cast<FieldElem>(out);
}

FieldElem FieldDescriptor::mul(FieldElem a, FieldElem b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (size_ - 1)];
}

FieldElem FieldDescriptor::pow(FieldElem a, std::uint64_t k) const {
  if (a == 0) return k == 0 ? 1 : 0;
  return exp_[nt::mul_mod(log_[a], k, size_ - 1)];
}

FieldElem FieldDescriptor::gamma_pow(std::int64_t k) const {
  const auto m = static_cast<std::int64_t>(size_ - 1);
  const std::int64_t r = ((k % m) + m) % m;
  return exp_[static_cast<std::size_t>(r)];
}

FieldElem FieldDescriptor::frobenius(FieldElem x, std::int64_t k) const {
  if (x == 0) return 0;
  // The Frobenius has order n, so only k mod n matters.
  const auto n = static_cast<std::int64_t>(n_);
  const auto kk = static_cast<std::uint64_t>(((k % n) + n) % n);
  return pow(x, nt::pow_mod(p_, kk, size_ - 1));
}

std::uint64_t FieldDescriptor::log(FieldElem x) const {
  if (x == 0) throw Error(ErrorCode::BadParameters, "log of zero field element");
  return log_[x];
}

std::uint64_t FieldDescriptor::multiplicative_order(FieldElem x) const {
  const std::uint64_t m = size_ - 1;
  return m / nt::gcd(log(x), m);
}

std::vector<std::vector<std::int64_t>> FieldDescriptor::mult_matrix(FieldElem lambda) const {
  std::vector<std::vector<std::int64_t>> m(n_, std::vector<std::int64_t>(n_, 0));
  for (unsigned j = 0; j < n_; ++j) {
    std::vector<std::uint64_t> basis(n_, 0);
    basis[j] = 1;
    const auto image = coefficients(mul(lambda, from_coefficients(basis)));
    for (unsigned i = 0; i < n_; ++i) m[i][j] = static_cast<std::int64_t>(image[i]);
  }
  return m;
}

FieldDescriptor field_make(std::uint64_t p, unsigned n, std::uint64_t max_size) {
  if (!nt::is_prime(p)) {
    throw Error(ErrorCode::NonPrime, "field characteristic " + std::to_string(p) + " is not prime");
  }
  if (n == 0) throw Error(ErrorCode::BadParameters, "field degree must be positive");
  const std::uint64_t size = nt::checked_pow(p, n, max_size);
  if (size == 0) {
    throw Error(ErrorCode::TooLarge, "field of order " + std::to_string(p) + "^" +
                                         std::to_string(n) + " exceeds bound " +
                                         std::to_string(max_size));
  }

  FieldDescriptor f;
  f.p_ = p;
  f.n_ = n;
  f.size_ = size;

  for (std::uint64_t r = 0; r < size; ++r) {
    Poly cand = lex_vector(r, n, p);
    cand.push_back(1);
    if (is_irreducible(cand, p)) {
      f.modulus_ = std::move(cand);
      break;
    }
  }

  const std::uint64_t group_order = size - 1;
  const auto factors = nt::prime_factors(group_order);
  Poly gamma;
  for (std::uint64_t r = 1; r < size; ++r) {
    Poly cand = lex_vector(r, n, p);
    bool primitive = true;
    for (std::uint64_t q : factors) {
      if (is_one(poly_powmod(cand, group_order / q, f.modulus_, p))) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gamma = std::move(cand);
      break;
    }
  }
  if (size == 2) gamma = Poly{1};

  f.primitive_root_ = f.from_coefficients(gamma);
  f.exp_.assign(group_order, 0);
  f.log_.assign(size, 0);
  Poly cur(n, 0);
  cur[0] = 1;
  for (std::uint64_t k = 0; k < group_order; ++k) {
    const FieldElem idx = f.from_coefficients(cur);
    f.exp_[k] = idx;
    f.log_[idx] = k;
    cur = poly_mulmod(cur, gamma, f.modulus_, p);
  }
  return f;
}

}  // namespace picent
