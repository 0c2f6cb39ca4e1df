#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "picentlab/group_spec.hpp"

namespace picent {

using Elem = std::uint32_t;

struct BuildOptions {
  std::uint64_t max_order = 50000;
  // Groups up to this order get a flat multiplication table.
  std::uint64_t memo_threshold = 4096;
  std::uint64_t field_bound = 1u << 20;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Structure of N x| A: element index = actor_index * |N| + normal_index and
/// (n, a)(n', a') = (n * a(n'), a a').
struct SemidirectView {
  GroupPtr normal;
  GroupPtr actor;
  std::vector<std::vector<Elem>> action;  // action[a][n] = a(n)

  Elem combine(Elem n, Elem a) const;
  Elem normal_part(Elem g) const;
  Elem actor_part(Elem g) const;
};

/// A finite group on the index set 0..order-1 with 0 the identity.
class FiniteGroup {
 public:
  struct AbelianData {
    std::vector<std::uint64_t> moduli;
  };
  struct DirectData {
    std::vector<GroupPtr> factors;
    std::vector<std::uint64_t> strides;
  };
  struct TableData {};

  std::size_t order() const { return order_; }
  Elem mul(Elem a, Elem b) const {
    return table_.empty() ? structural_mul(a, b) : table_[static_cast<std::size_t>(a) * order_ + b];
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, std::int64_t k) const;
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  Elem commutator(Elem a, Elem b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
  std::uint64_t element_order(Elem a) const;
  std::uint64_t exponent() const;

  const std::vector<Elem>& generators() const { return generators_; }
  // Coordinates in the spec tree; a table-backed group returns {index}.
  std::vector<std::uint64_t> coordinates(Elem a) const;
  bool is_abelian() const;
  bool has_table() const { return !table_.empty(); }

  const GroupSpec* spec() const { return spec_.get(); }
  std::shared_ptr<const GroupSpec> spec_ptr() const { return spec_; }
  // Moduli of the exponent-vector coordinates for groups built from abelian
  // leaves and direct products of them; null otherwise.
  const std::vector<std::uint64_t>* abelian_moduli() const {
    return moduli_ ? &*moduli_ : nullptr;
  }
  Elem from_coordinates(const std::vector<std::uint64_t>& coords) const;
  const SemidirectView* semidirect() const { return std::get_if<SemidirectView>(&node_); }
  const DirectData* direct() const { return std::get_if<DirectData>(&node_); }

  // Group with an explicit Cayley table (row-major, order x order).
  static GroupPtr from_table(std::vector<Elem> table, std::size_t order,
                             std::vector<Elem> generators);

 private:
  friend GroupPtr build_group(const GroupSpec&, const BuildOptions&);
  friend class GroupBuilder;

  Elem structural_mul(Elem a, Elem b) const;
  void finalize(const BuildOptions& options);

  std::size_t order_ = 1;
  std::variant<AbelianData, DirectData, SemidirectView, TableData> node_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<Elem> generators_;
  std::optional<std::vector<std::uint64_t>> moduli_;
  std::uint64_t exponent_ = 1;
  std::shared_ptr<const GroupSpec> spec_;
};

/// Realizes a spec; throws InvalidAction, TooLarge or NonPrime.
GroupPtr build_group(const GroupSpec& spec, const BuildOptions& options = {});

/// Extends generator images to a homomorphism source -> target by walking the
/// Cayley graph; nullopt when the images violate a relation.
std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& source,
                                                     const FiniteGroup& target,
                                                     std::span<const Elem> images);
// Same, with images given for an arbitrary generating set of the source.
std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& source,
                                                     std::span<const Elem> source_gens,
                                                     const FiniteGroup& target,
                                                     std::span<const Elem> images);

bool is_bijection(std::span<const Elem> images);

/// Table of the automorphism of `normal` described by `desc`; throws
/// InvalidAction naming `gen` when the descriptor is not a bijective
/// homomorphism.
std::vector<Elem> automorphism_table(const FiniteGroup& normal, const AutoDescriptor& desc,
                                     std::size_t gen = 0, const BuildOptions& options = {});

struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> elements;   // sorted
  std::vector<std::uint8_t> mask;

  static Subgroup from_elements(GroupPtr parent, std::vector<Elem> elements);
  std::size_t size() const { return elements.size(); }
  bool contains(Elem g) const { return mask[g] != 0; }
  bool is_closed() const;
  bool operator==(const Subgroup& other) const { return elements == other.elements; }
};

Subgroup generate_subgroup(const GroupPtr& group, std::span<const Elem> gens);
Subgroup whole_group(const GroupPtr& group);
Subgroup trivial_subgroup(const GroupPtr& group);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// Subgroup generated by a and b.
Subgroup join(const Subgroup& a, const Subgroup& b);
// {g : g s = s g for all s in S}, optionally restricted to `within`.
Subgroup centralizer(const GroupPtr& group, std::span<const Elem> S,
                     const Subgroup* within = nullptr);
Subgroup center(const GroupPtr& group);
bool is_normal(const Subgroup& sub);
// Greedy generating set of a subgroup.
std::vector<Elem> subgroup_generators(const Subgroup& sub);
// Drops generators of the group that are redundant, scanning in order.
std::vector<Elem> minimal_generating_set(const FiniteGroup& group);

/// A group together with an injective homomorphism into a parent group.
struct Embedding {
  GroupPtr group;
  GroupPtr parent;
  std::vector<Elem> to_parent;

  Subgroup image() const;
};

/// Subgroup realized as its own table-backed group; element i of the new
/// group is sub.elements[i].
Embedding as_group(const Subgroup& sub);

/// Complement A inside N x| A, embedded by a -> (1, a).
Embedding complement_embedding(const GroupPtr& group);
Subgroup normal_part(const GroupPtr& group);

/// Exhaustive identity/inverse laws plus associativity: exhaustive when
/// order < exhaustive_below, otherwise on `samples` seeded random triples.
/// Returns a description of the first violation.
std::optional<std::string> check_group_axioms(const FiniteGroup& group, std::uint64_t seed,
                                              std::size_t samples = 10000,
                                              std::size_t exhaustive_below = 200);

}  // namespace picent
