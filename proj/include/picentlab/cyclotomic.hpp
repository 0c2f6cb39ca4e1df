#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace picent {

using Rational = mpq_class;

/// An element of Q(zeta_m) in the power basis 1, zeta, ..., zeta^{phi(m)-1},
/// reduced modulo the m-th cyclotomic polynomial.
///
/// Binary operations embed both operands into the lcm of their conductors.
/// Equality compares after that embedding, so it does not depend on which
/// conductor a value happens to be stored at.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::uint64_t conductor);
  static Cyclotomic rational(const Rational& r, std::uint64_t conductor = 1);
  static Cyclotomic integer(std::int64_t v, std::uint64_t conductor = 1) {
    return rational(Rational(static_cast<long>(v)), conductor);
  }
  // zeta_m^k.
  static Cyclotomic root(std::uint64_t m, std::int64_t k);
  // Sum of coefficients c_r zeta_m^r, r = 0..c.size()-1, reduced.
  static Cyclotomic from_power_sum(std::uint64_t m, const std::vector<Rational>& c);

  std::uint64_t conductor() const { return m_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  Cyclotomic embed(std::uint64_t multiple) const;
  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& r) const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
  // Total order on (conductor, coefficients), for deterministic sorting of
  // values stored at the same conductor.
  bool less(const Cyclotomic& o) const;

  Cyclotomic conj() const { return galois(-1); }
  // zeta -> zeta^a; throws IncompatibleGalois unless gcd(a, m) = 1.
  Cyclotomic galois(std::int64_t a) const;

  bool is_zero() const;
  bool is_rational() const;
  // Requires is_rational().
  Rational rational_value() const;
  std::string to_string() const;

 private:
  std::uint64_t m_;
  std::vector<Rational> c_;
};

// Coefficients of the m-th cyclotomic polynomial, low to high.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint64_t m);

}  // namespace picent
