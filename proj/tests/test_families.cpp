#include <gtest/gtest.h>

#include "picentlab/coprime.hpp"
#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/numtheory.hpp"

using namespace picent;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::PreconditionFailed;
}

const CheckResult* find_check(const VerificationReport& rep, const std::string& prefix) {
  for (const auto& c : rep.checks) {
    if (c.name.rfind(prefix, 0) == 0) return &c;
  }
  return nullptr;
}

void expect_all_invariants(const std::vector<InvariantResult>& inv) {
  for (const auto& r : inv) EXPECT_FALSE(r.failure.has_value()) << r.name << ": " << *r.failure;
}

}  // namespace

TEST(StFamily, ParametersFiveTwo) {
  const auto inst = build_st(5, 2);
  EXPECT_EQ(inst.n, 1u);
  EXPECT_EQ(inst.s, 3u);
  EXPECT_EQ(inst.D->order(), 25u);
  EXPECT_EQ(inst.E->order(), 12u);
  EXPECT_EQ(inst.G->order(), 300u);
  expect_all_invariants(inst.invariants);
}

TEST(StFamily, ParametersThreeTwo) {
  const auto inst = build_st(3, 2);
  // n = ord(3 mod 4) = 2, s = (3^4 - 1) / (2 (3^2 - 1)) = 5.
  EXPECT_EQ(inst.n, nt::multiplicative_order(3, 4));
  EXPECT_EQ(inst.s, (81u - 1) / (2 * (9 - 1)));
  EXPECT_EQ(inst.D->order(), 81u);
  EXPECT_EQ(inst.E->order(), 20u);
  EXPECT_EQ(inst.G->order(), 1620u);
  expect_all_invariants(inst.invariants);
}

TEST(StFamily, Rejections) {
  EXPECT_EQ(code_of([] { build_st(2, 3); }), ErrorCode::TooLarge);
  EXPECT_EQ(code_of([] { build_st(4, 2); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([] { build_st(5, 1); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([] { build_st(3, 3); }), ErrorCode::BadParameters);
  try {
    build_st(2, 3);
  } catch (const Error& e) {
    // |D| = 2^18 with n = ord(2 mod 9) = 6.
    EXPECT_EQ(nt::multiplicative_order(2, 9), 6u);
    EXPECT_NE(std::string(e.what()).find("exceeds"), std::string::npos);
  }
}

TEST(StFamily, GeometricSumProperty) {
  for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (std::uint64_t t : {2ull, 3ull, 4ull, 5ull}) {
      if (nt::gcd(p, t) != 1) continue;
      const std::uint64_t t2 = t * t;
      const std::uint64_t n = nt::multiplicative_order(p % t2, t2);
      const std::uint64_t q = nt::pow_mod(p, n, t2);
      std::uint64_t sum = 0, term = 1;
      for (std::uint64_t i = 0; i < t; ++i) {
        sum = (sum + term) % t2;
        term = term * q % t2;
      }
      EXPECT_EQ(sum, t % t2) << p << ", " << t;
    }
  }
}

TEST(StFamily, VerifierPassesAndRoutesAgree) {
  const auto rep = verify_prop42(build_st(5, 2));
  EXPECT_TRUE(rep.verdict()) << rep.to_text();
  EXPECT_EQ(rep.checks.size(), 10u);
  ASSERT_EQ(rep.labels.size(), 2u);
  EXPECT_TRUE(find_check(rep, "formula and orbit routes agree")->passed);
}

TEST(StFamily, WrongPsiFailsCheckAWithWitnessG) {
  const auto inst = build_st(5, 2, {}, STMutation::WrongPsi);
  const auto rep = verify_prop42(inst);
  EXPECT_FALSE(rep.verdict());
  const auto* a = find_check(rep, "psi is not the action of an element of E");
  ASSERT_NE(a, nullptr);
  EXPECT_FALSE(a->passed);
  EXPECT_EQ(a->witness["index"], inst.g);
  EXPECT_EQ(a->witness["g_power"], 1);
  EXPECT_EQ(a->witness["h_power"], 0);
  const auto j = rep.to_json();
  for (const auto& l : j["labels"]) EXPECT_FALSE(l["holds"].get<bool>());
}

TEST(StFamily, EveryMutationFailsWithWitness) {
  for (auto m : {STMutation::AlteredRelation, STMutation::SwappedKernel, STMutation::WrongPsi,
                 STMutation::PsiFrobenius, STMutation::PsiInE}) {
    const auto rep = verify_prop42(build_st(5, 2, {}, m));
    EXPECT_FALSE(rep.verdict()) << to_string(m);
    bool witnessed = false;
    for (const auto& c : rep.checks) witnessed |= !c.passed && !c.witness.is_null();
    EXPECT_TRUE(witnessed) << to_string(m);
    EXPECT_EQ(parse_st_mutation(to_string(m)), m);
  }
}

TEST(EllFamily, ParametersTwoFive) {
  const auto inst = build_ell(2, 5);
  EXPECT_EQ(inst.n, 1u);
  EXPECT_EQ(inst.omega, 2u);
  EXPECT_EQ(inst.G->order(), 400u);
  EXPECT_EQ(inst.E->order(), 16u);
  expect_all_invariants(inst.invariants);
}

TEST(EllFamily, ParametersTwoThreeAndRejections) {
  const auto inst = build_ell(2, 3);
  EXPECT_EQ(inst.n, 2u);
  EXPECT_EQ(inst.G->order(), 1296u);
  expect_all_invariants(inst.invariants);
  EXPECT_EQ(code_of([] { build_ell(3, 2); }), ErrorCode::TooLarge);
  EXPECT_EQ(code_of([] { build_ell(2, 2); }), ErrorCode::BadParameters);
  EXPECT_EQ(code_of([] { build_ell(4, 5); }), ErrorCode::BadParameters);
}

TEST(EllFamily, VerifierPasses) {
  const auto rep = verify_prop44(build_ell(2, 5));
  EXPECT_TRUE(rep.verdict()) << rep.to_text();
  ASSERT_EQ(rep.labels.size(), 1u);
}

TEST(EllFamily, MissingTableForAnotherGroup) {
  const auto inst = build_ell(2, 5);
  const auto other = build_group(fixture("s3"));
  const auto table = dixon_table(conjugacy_classes(other));
  EXPECT_EQ(code_of([&] { verify_prop44(inst, &table); }), ErrorCode::MissingTable);
}

TEST(EllFamily, EveryMutationFailsWithWitness) {
  for (auto m : {EllMutation::AlteredRelation, EllMutation::SwappedKernel, EllMutation::WrongOmega,
                 EllMutation::WrongLambda, EllMutation::WrongPhi}) {
    const auto rep = verify_prop44(build_ell(2, 5, {}, m));
    EXPECT_FALSE(rep.verdict()) << to_string(m);
    bool witnessed = false;
    for (const auto& c : rep.checks) witnessed |= !c.passed && !c.witness.is_null();
    EXPECT_TRUE(witnessed) << to_string(m);
    EXPECT_EQ(parse_ell_mutation(to_string(m)), m);
  }
}

TEST(EllFamily, WrongLambdaMovesACharacter) {
  const auto rep = verify_prop44(build_ell(2, 5, {}, EllMutation::WrongLambda));
  const auto* main = find_check(rep, "lambda chi = chi");
  ASSERT_NE(main, nullptr);
  EXPECT_FALSE(main->passed);
  EXPECT_FALSE(main->witness.is_null());
}

TEST(EllFamily, TwoThreeCentralPartitionAndInducedIrreducible) {
  const auto inst = build_ell(2, 3);
  const auto conj = conjugacy_classes(inst.G);
  const auto table = dixon_table(conj);

  // Z lifted into G; Irr(G) = Irr(G | 1_Z) + Irr(G | phi).
  std::vector<Elem> zg;
  for (Elem z : inst.Z.elements) zg.push_back(inst.lift(z));
  const auto Zg = Subgroup::from_elements(inst.G, zg);
  std::vector<Cyclotomic> phi_g(Zg.size()), one(Zg.size(), Cyclotomic::integer(1));
  for (std::size_t i = 0; i < inst.Z.size(); ++i) {
    const auto pos = std::find(Zg.elements.begin(), Zg.elements.end(), inst.lift(inst.Z.elements[i]));
    phi_g[pos - Zg.elements.begin()] = inst.phi[i];
  }
  const auto over_phi = irr_over(table, Zg, phi_g);
  const auto over_one = irr_over(table, Zg, one);
  EXPECT_EQ(over_phi.size() + over_one.size(), conj->count());

  // theta = lambda_a with both coordinates of a nontrivial, on D x Z.
  const auto& view = inst.view();
  const auto dz = join(normal_part(inst.G), Zg);
  const auto emb = as_group(dz);
  const auto nconj = conjugacy_classes(emb.group);
  const auto m = PGroupModule::generated(inst.D, {});
  const Elem a = static_cast<Elem>(1 + inst.field->size());
  ClassFunction theta_phi{nconj, {}};
  for (Elem rep : nconj->reps) {
    const Elem g = emb.to_parent[rep];
    const Elem z = view.actor_part(g);
    const auto zi = std::find(inst.Z.elements.begin(), inst.Z.elements.end(), z) - inst.Z.elements.begin();
    theta_phi.values.push_back(dual_character_value(m, a, view.normal_part(g)) * inst.phi[zi]);
  }
  const auto chi = induce(theta_phi, emb, conj);
  EXPECT_EQ(inner_product(chi, chi), Rational(1));
  const auto row = table.find(chi);
  ASSERT_TRUE(row.has_value());
  EXPECT_NE(std::find(over_phi.begin(), over_phi.end(), *row), over_phi.end());
}

TEST(Thm32, SyntheticInstancesPass) {
  const auto inv = verify_thm32_skeleton(synthetic_inversions(5));
  EXPECT_TRUE(inv.verdict()) << inv.to_text();
  const auto cyc = verify_thm32_skeleton(synthetic_cyclic(7, 3));
  EXPECT_TRUE(cyc.verdict()) << cyc.to_text();
}

TEST(Thm32, EllInstanceFailsElementaryAbelianHypothesis) {
  try {
    verify_thm32_skeleton(as_normal_defect(build_ell(2, 5)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::HypothesisFailed);
    EXPECT_NE(std::string(e.what()).find("elementary abelian"), std::string::npos);
  }
}

TEST(Thm32, NonSemidirectRejected) {
  EXPECT_EQ(code_of([] {
              verify_thm32_skeleton(normal_defect_from_group(build_group(fixture("q8")), "q8"));
            }),
            ErrorCode::HypothesisFailed);
}

TEST(Bridge, AbelianDihedralQuaternionTrivial) {
  for (const auto& name : {"c2xc4", "c3xc3", "c4xc4", "c2xc2xc2", "d8", "q8"}) {
    const auto rep = outc_picent_bridge(build_group(fixture(name)), name);
    EXPECT_TRUE(rep.verdict()) << name;
    ASSERT_EQ(rep.labels.size(), 1u);
    EXPECT_EQ(rep.labels[0].text, "|Picent(OP)| = 1") << name;
  }
}

TEST(Bridge, WallFixtureNontrivial) {
  const auto rep = outc_picent_bridge(build_group(fixture("wall32")), "wall32");
  EXPECT_TRUE(rep.verdict()) << rep.to_text();
  EXPECT_EQ(rep.labels[0].text, "|Picent(OP)| = 2");
  EXPECT_FALSE(find_check(rep, "a nontrivial Out_c")->witness.is_null());
}

TEST(Bridge, RejectsNonPGroups) {
  EXPECT_EQ(code_of([] { outc_picent_bridge(build_group(fixture("s3")), "s3"); }),
            ErrorCode::BadParameters);
}

TEST(Determinism, ReportsAreByteIdenticalWithoutTiming) {
  EXPECT_EQ(verify_prop42(build_st(5, 2)).to_json(false).dump(),
            verify_prop42(build_st(5, 2)).to_json(false).dump());
  EXPECT_EQ(verify_prop44(build_ell(2, 5)).to_json(false).dump(),
            verify_prop44(build_ell(2, 5)).to_json(false).dump());
  LemmaCorpusOptions o;
  o.valid_instances = 30;
  o.selection_families = 10;
  EXPECT_EQ(verify_lemmas(o).to_json(false).dump(), verify_lemmas(o).to_json(false).dump());
}

TEST(Report, SchemaFields) {
  const auto j = verify_prop42(build_st(5, 2)).to_json();
  for (const auto* key : {"command", "params", "version", "seed", "checks", "verdict", "labels", "timing"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const auto& c : j["checks"]) {
    for (const auto* key : {"name", "anchor", "status", "witness", "millis"}) EXPECT_TRUE(c.contains(key));
  }
  EXPECT_EQ(j["labels"][0]["kind"], "paper-justified label");
  const auto bare = verify_prop42(build_st(5, 2)).to_json(false);
  EXPECT_FALSE(bare.contains("timing"));
  EXPECT_FALSE(bare["checks"][0].contains("millis"));
}

TEST(Report, ExceptionInCheckIsAFailure) {
  VerificationReport rep;
  rep.run_check("throws", "anchor", [](Json&) -> bool { throw std::runtime_error("boom"); });
  rep.add_label("label", "why");
  EXPECT_FALSE(rep.verdict());
  EXPECT_EQ(rep.checks[0].witness["error"], "boom");
  EXPECT_FALSE(rep.to_json()["labels"][0]["holds"].get<bool>());
}
