#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "picentlab/finite_group.hpp"

namespace picent {

/// Conjugacy classes ordered by least element; class 0 is {identity}.
struct ConjugacyData {
  GroupPtr group;
  std::vector<std::vector<Elem>> classes;  // each sorted
  std::vector<std::uint32_t> class_of;
  std::vector<Elem> reps;                  // least index of each class
  std::vector<std::uint64_t> centralizer_orders;

  std::size_t count() const { return classes.size(); }
  std::size_t class_size(std::size_t i) const { return classes[i].size(); }
  // Class of rep^k.
  std::uint32_t power_class(std::size_t i, std::int64_t k) const;
  std::uint32_t inverse_class(std::size_t i) const { return power_class(i, -1); }
};
using ConjPtr = std::shared_ptr<const ConjugacyData>;

ConjPtr conjugacy_classes(const GroupPtr& group);

struct Automorphism {
  GroupPtr group;
  std::vector<Elem> images;

  Elem operator()(Elem x) const { return images[x]; }
  bool is_identity() const;
  // (this o other)(x) = this(other(x)).
  Automorphism compose(const Automorphism& other) const;
  Automorphism inverse() const;
  bool operator==(const Automorphism& other) const { return images == other.images; }
};

Automorphism identity_automorphism(const GroupPtr& group);
// x -> g x g^-1.
Automorphism conjugation(const GroupPtr& group, Elem g);
// Bijectivity plus exhaustive multiplicativity; describes the first failure.
std::optional<std::string> check_automorphism(const Automorphism& alpha);

/// One automorphism per coset of Z(G), represented by the least element of
/// the coset.
std::vector<Automorphism> inner_automorphisms(const GroupPtr& group);

/// Least g with alpha = c_g, if any.
std::optional<Elem> find_inner(const Automorphism& alpha);

/// All of Aut(G) by search over images of a minimal generating set, pruned by
/// element order and class size. Sorted by image table.
std::vector<Automorphism> automorphism_group(const GroupPtr& group, const ConjugacyData& conj,
                                             std::size_t bound = 512);

bool is_class_preserving(const ConjugacyData& conj, const Automorphism& alpha);

struct OutCReport {
  std::size_t aut_order = 0;
  std::size_t aut_c_order = 0;
  std::size_t inn_order = 0;
  std::size_t out_c_order = 0;
  std::vector<Automorphism> coset_reps;  // one per coset of Inn in Aut_c
  std::optional<Automorphism> witness;   // non-inner class-preserving
};

OutCReport out_c(const GroupPtr& group, const ConjugacyData& conj, std::size_t bound = 512);

}  // namespace picent
