#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picentlab/automorphism.hpp"
#include "picentlab/cyclotomic.hpp"

namespace picent {

/// One value per conjugacy class of the underlying group.
struct ClassFunction {
  ConjPtr conj;
  std::vector<Cyclotomic> values;

  const GroupPtr& group() const { return conj->group; }
  Cyclotomic at(Elem g) const { return values[conj->class_of[g]]; }
  Cyclotomic degree() const { return values[0]; }
  bool operator==(const ClassFunction& o) const;
  bool operator!=(const ClassFunction& o) const { return !(*this == o); }
  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator*(const Rational& r) const;
  ClassFunction conj_values() const;
  ClassFunction galois(std::int64_t a) const;
  std::string to_string() const;
};

ClassFunction trivial_character(const ConjPtr& conj);
ClassFunction regular_character(const ConjPtr& conj);

struct CharacterTable {
  ConjPtr conj;
  std::vector<ClassFunction> rows;  // trivial first, then by degree
  std::vector<std::uint64_t> degrees;
  std::uint64_t conductor = 1;      // exponent of the group
  std::uint64_t prime = 0;          // modulus used for the eigenspace search

  const GroupPtr& group() const { return conj->group; }
  std::optional<std::size_t> find(const ClassFunction& chi) const;
};

/// Exact table by simultaneous diagonalization of the class matrices over
/// F_q, followed by lifting to Z[zeta_e].
CharacterTable dixon_table(const ConjPtr& conj);

/// Orthogonality of rows and columns, sum of squared degrees and row count.
std::optional<std::string> validate_table(const CharacterTable& table);

/// Checks that every Galois conjugate of a row is again a row.
std::optional<std::string> check_galois_stable(const CharacterTable& table);

Rational inner_product(const ClassFunction& a, const ClassFunction& b);

ClassFunction tensor(const ClassFunction& a, const ClassFunction& b);

/// chi lives on sub.group (with classes sub_conj); the result on parent.
ClassFunction induce(const ClassFunction& chi, const Embedding& sub, const ConjPtr& parent_conj);
ClassFunction restrict_to(const ClassFunction& chi, const Embedding& sub, const ConjPtr& sub_conj);

/// Inflation along the structural projection N x| A -> A; chi must live on
/// the actor group of parent_conj's group.
ClassFunction inflate(const ClassFunction& chi, const ConjPtr& parent_conj);

/// Rows chi with chi(z) = chi(1) phi(z) on the central subgroup Z; phi is
/// given by its values on Z.elements.
std::vector<std::size_t> irr_over(const CharacterTable& table, const Subgroup& z,
                                  const std::vector<Cyclotomic>& phi);

/// Rows whose restriction to the normal subgroup N has theta as a constituent.
std::vector<std::size_t> irr_above(const CharacterTable& table, const Embedding& n,
                                   const ConjPtr& n_conj, const ClassFunction& theta);

/// Rows containing the normal subgroup in their kernel.
std::vector<std::size_t> rows_with_kernel_containing(const CharacterTable& table,
                                                     const Subgroup& n);

/// Prime modulus used by dixon_table: least q = 1 mod e with q > 2 sqrt(|G|).
std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order);

}  // namespace picent
