#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picentlab/automorphism.hpp"
#include "picentlab/character.hpp"
#include "picentlab/fp_linalg.hpp"

namespace picent {

/// An abelian p-group P in exponent-vector coordinates together with a finite
/// group H of automorphisms of P.
struct PGroupModule {
  GroupPtr P;
  std::uint64_t p = 2;
  std::vector<Automorphism> H;  // H[0] is the identity

  /// Validates that P is an abelian p-group with coordinates and that H is a
  /// group; throws BadParameters otherwise. Coprimality is not required here.
  static PGroupModule make(GroupPtr P, std::vector<Automorphism> H);
  /// Closure of the given automorphisms under composition.
  static PGroupModule generated(GroupPtr P, const std::vector<Automorphism>& gens);

  bool coprime() const;
  // Throws NotCoprime.
  void require_coprime() const;
  // Largest K with an element of order p^K.
  unsigned exponent_log() const;
};

struct FixedCommutator {
  Subgroup fixed;       // C_P(H)
  Subgroup commutator;  // [H, P]
  bool direct = false;  // trivial intersection and product equal to P
};

FixedCommutator fixed_and_commutator(const PGroupModule& m);

struct FrattiniAction {
  std::size_t dim = 0;
  std::vector<FpMatrix> matrices;  // one per element of H
};

/// Matrices of H on P / Phi(P) in the basis of coordinate generators.
/// Throws InjectivityFailure when two elements of H act alike, then NotCoprime.
FrattiniAction frattini_action(const PGroupModule& m);

struct Decomposition {
  std::vector<Subgroup> factors;
  // Verification of the result: invariance, directness, and irreducibility of
  // each factor's Frattini quotient. Empty when everything holds.
  std::optional<std::string> failure;
  // Number of irreducible summands of P / Phi(P), computed independently.
  std::size_t frattini_summands = 0;
};

/// H-invariant decomposition of P into factors with irreducible Frattini
/// quotients. Throws NotCoprime.
Decomposition indecomposable_decomposition(const PGroupModule& m);

/// True when every element outside Phi(F) generates, together with its H-images
/// and Phi(F), all of F.
bool frattini_irreducible(const PGroupModule& m, const Subgroup& factor);

struct DualAction {
  // perms[h][a] = index of h(lambda_a), where lambda_a is the character with
  // coordinate vector a.
  std::vector<std::vector<Elem>> perms;
  bool faithful = false;
  // Number of nontrivial characters fixed by some h != 1.
  std::size_t fixed_nontrivial = 0;
  std::optional<Elem> fixed_witness;  // character index
  std::optional<std::string> correspondence_failure;
  std::size_t dual_factors = 0;
};

/// lambda_a(x) = zeta^{sum a_i x_i p^{K - k_i}} with p^K the exponent of P.
Cyclotomic dual_character_value(const PGroupModule& m, Elem a, Elem x);

DualAction dual_action(const PGroupModule& m);

/// The dual action as a module on the character group, indexed like P.
PGroupModule dual_module(const PGroupModule& m);

struct IndecomposableReport {
  bool cyclic = false;
  std::size_t generator = 0;  // index into H of an element of order |H|
  bool fixed_point_free = false;
  std::optional<std::pair<std::size_t, Elem>> witness;  // (h, x) with h(x) = x
};

/// Throws NotIndecomposable when the decomposition has more than one factor.
IndecomposableReport indecomposable_consequences(const PGroupModule& m);

struct Refutation {
  enum class Kind { NonCommuting, Unmatched, Counterexample } kind;
  std::size_t h = 0;
  Elem x = 0;
  std::string describe() const;
};

struct Recognition {
  std::optional<std::size_t> h;
  std::optional<Refutation> refutation;
};

Recognition recognize_in_H(const PGroupModule& m, const Automorphism& psi);

struct SubspaceFamily {
  std::uint64_t ell = 2;
  std::size_t n = 0;
  std::vector<std::vector<std::vector<std::uint64_t>>> subspaces;  // bases
};

struct Selection {
  std::vector<std::size_t> indices;
  std::vector<std::vector<std::uint64_t>> lines;  // spanning vector of U_l
};

/// Greedy lowest-index selection of n hyperplanes meeting in zero. Throws
/// BadFamily.
Selection codim_one_selection(const SubspaceFamily& fam);

/// Checks the independence, spanning and containment properties.
std::optional<std::string> check_selection(const SubspaceFamily& fam, const Selection& sel);

struct ExtensionReport {
  std::size_t index = 0;  // [L : N]
  std::vector<std::size_t> extensions;  // rows of the table of L
  bool all_stable = false;
  std::optional<std::string> unstable_witness;
};

/// chi lives on n_emb.group, which embeds N into G. Throws HypothesisFailed
/// naming the hypothesis that fails.
ExtensionReport extension_stability(const GroupPtr& G, const Embedding& n_emb,
                                    const ClassFunction& chi, const Subgroup& L,
                                    std::uint64_t ell);

/// Automorphism of the coordinate group P given by a matrix on exponent
/// vectors; throws InvalidAction if not well defined or not bijective.
Automorphism coordinate_automorphism(const GroupPtr& P,
                                     const std::vector<std::vector<std::int64_t>>& matrix);

}  // namespace picent
