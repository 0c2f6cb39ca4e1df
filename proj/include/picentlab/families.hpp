#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "picentlab/automorphism.hpp"
#include "picentlab/character.hpp"
#include "picentlab/field.hpp"
#include "picentlab/report.hpp"

namespace picent {

/// A named structural property of an instance and the first violation found.
struct InvariantResult {
  std::string name;
  std::optional<std::string> failure;
};

// ---------------------------------------------------------------------------
// D x| E with D = F_{p^{nt}}, E = <g> x| <h>, g = m_{omega_s},
// h = Frobenius_{p^n} o m_{omega_{t^2}}.

enum class STMutation {
  None,
  AlteredRelation,  // h acts by the Frobenius alone
  SwappedKernel,    // g acts trivially on D
  WrongPsi,         // psi = m_{omega_s}
  PsiFrobenius,     // psi = Frobenius_{p^n}
  PsiInE,           // psi = the action of h
};

std::string to_string(STMutation m);
std::optional<STMutation> parse_st_mutation(std::string_view name);

struct STInstance {
  std::uint64_t p = 0, t = 0, n = 0, s = 0;
  std::shared_ptr<const FieldDescriptor> field;
  FieldElem omega_s = 0, omega_t2 = 0;
  GroupSpec spec;
  GroupPtr G, D, E;
  Elem g = 0, h = 0;       // in E
  Automorphism psi;        // on D
  Automorphism psi_G;      // psi on D, identity on E
  STMutation mutation = STMutation::None;
  std::vector<InvariantResult> invariants;

  const SemidirectView& view() const { return *G->semidirect(); }
};

/// Throws BadParameters or TooLarge (the message carries |G|).
STInstance build_st(std::uint64_t p, std::uint64_t t, const BuildOptions& options = {},
                    STMutation mutation = STMutation::None);
VerificationReport verify_prop42(const STInstance& inst);

// ---------------------------------------------------------------------------
// (D1 x D2) x| E with E = (<z> x <g>) x| <h>, D_i = F_{p^n}.

enum class EllMutation {
  None,
  AlteredRelation,  // h centralizes g
  SwappedKernel,    // h acts on D1 instead of D2
  WrongOmega,       // g acts by omega^ell
  WrongLambda,      // lambda nontrivial on h rather than on g
  WrongPhi,         // phi trivial
};

std::string to_string(EllMutation m);
std::optional<EllMutation> parse_ell_mutation(std::string_view name);

struct EllInstance {
  std::uint64_t ell = 0, p = 0, n = 0;
  std::shared_ptr<const FieldDescriptor> field;
  FieldElem omega = 0;
  GroupSpec spec;
  GroupPtr G, D, E;
  Elem z = 0, g = 0, h = 0;  // in E
  Subgroup Z;                // <z> in E
  Subgroup F;                // <z, g^ell, h> in E
  std::vector<Cyclotomic> phi;  // phi(Z.elements[i])
  EllMutation mutation = EllMutation::None;
  std::vector<InvariantResult> invariants;

  const SemidirectView& view() const { return *G->semidirect(); }
  Elem lift(Elem e) const { return view().combine(0, e); }
};

EllInstance build_ell(std::uint64_t ell, std::uint64_t p, const BuildOptions& options = {},
                      EllMutation mutation = EllMutation::None);
/// `table` may be supplied (for instance from the cache); it must belong to
/// inst.G, otherwise MissingTable is thrown.
VerificationReport verify_prop44(const EllInstance& inst, const CharacterTable* table = nullptr);

// ---------------------------------------------------------------------------

/// G = D x| E with D abelian p-group in coordinates, Z a central subgroup of E
/// and phi a linear character of Z.
struct NormalDefectInstance {
  std::string name;
  Json params = Json::object();
  GroupPtr G;
  Subgroup Z;                   // in E
  std::vector<Cyclotomic> phi;  // phi(Z.elements[i])
};

NormalDefectInstance as_normal_defect(const EllInstance& inst);
/// C_p x C_p with C_2 x C_2 acting by coordinate inversions.
NormalDefectInstance synthetic_inversions(std::uint64_t p);
/// C_p with C_q acting by a unit of order q; requires q | p - 1.
NormalDefectInstance synthetic_cyclic(std::uint64_t p, std::uint64_t q);
/// Trivial Z; G must be a semidirect product.
NormalDefectInstance normal_defect_from_group(GroupPtr G, std::string name);

/// Throws HypothesisFailed naming the hypothesis that fails.
VerificationReport verify_thm32_skeleton(const NormalDefectInstance& inst);

/// Out_c(P) by brute force, labelled as the order of Picent(OP). Throws
/// TooLarge, BadParameters when P is not a p-group.
VerificationReport outc_picent_bridge(const GroupPtr& P, const std::string& name,
                                      std::size_t aut_bound = 512);

// ---------------------------------------------------------------------------

struct LemmaCorpusOptions {
  std::uint64_t seed = 1;
  std::size_t valid_instances = 200;
  std::size_t invalid_instances = 20;
  std::size_t selection_families = 50;
  std::uint64_t max_p_order = 729;
  std::size_t max_h_order = 16;
};

/// Seeded random (P, H) corpus exercising the coprime-action lemmas and the
/// hyperplane selection; invalid instances must be rejected up front.
VerificationReport verify_lemmas(const LemmaCorpusOptions& options = {});

}  // namespace picent
