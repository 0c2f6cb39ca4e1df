#include <gtest/gtest.h>

#include "picentlab/coprime.hpp"
#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/field.hpp"

using namespace picent;

namespace {

GroupPtr abelian(std::uint64_t p, std::vector<unsigned> e) {
  return build_group(GroupSpec::abelian_p(p, std::move(e)));
}

PGroupModule module_of(const GroupPtr& P, const std::vector<std::vector<std::vector<std::int64_t>>>& gens) {
  std::vector<Automorphism> autos;
  for (const auto& m : gens) autos.push_back(coordinate_automorphism(P, m));
  return PGroupModule::generated(P, autos);
}

std::vector<Elem> elems(const Subgroup& s) { return s.elements; }

// F_9 as an additive group with a field element acting by multiplication.
PGroupModule field_module(FieldElem lambda_power) {
  const auto f = field_make(3, 2);
  const auto P = build_group(GroupSpec::abelian_p(3, {1, 1}));
  std::vector<Elem> table(9);
  const auto lambda = f.gamma_pow(lambda_power);
  for (FieldElem x = 0; x < 9; ++x) table[x] = f.mul(lambda, x);
  return PGroupModule::generated(P, {Automorphism{P, table}});
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::PreconditionFailed;
}

}  // namespace

TEST(FixedCommutator, TrivialH) {
  const auto P = abelian(3, {1, 1});
  const auto m = PGroupModule::generated(P, {});
  const auto fc = fixed_and_commutator(m);
  EXPECT_EQ(fc.fixed.size(), 9u);
  EXPECT_EQ(fc.commutator.size(), 1u);
  EXPECT_TRUE(fc.direct);
}

TEST(FixedCommutator, InversionOnFirstFactor) {
  const auto P = abelian(3, {1, 1});
  const auto fc = fixed_and_commutator(module_of(P, {{{-1, 0}, {0, 1}}}));
  // (a, b) has index a + 3b.
  EXPECT_EQ(elems(fc.fixed), (std::vector<Elem>{0, 3, 6}));
  EXPECT_EQ(elems(fc.commutator), (std::vector<Elem>{0, 1, 2}));
  EXPECT_TRUE(fc.direct);
}

TEST(FixedCommutator, EllFamilyGeneratorActsFixedPointFreely) {
  const auto inst = build_ell(2, 5);
  const auto& view = inst.view();
  const PGroupModule m = PGroupModule::generated(inst.D, {Automorphism{inst.D, view.action[inst.g]}});
  const auto fc = fixed_and_commutator(m);
  EXPECT_EQ(fc.fixed.size(), 1u);
  EXPECT_EQ(fc.commutator.size(), inst.D->order());
  for (Elem x = 1; x < inst.D->order(); ++x) EXPECT_NE(view.action[inst.g][x], x);
}

TEST(Frattini, ElementaryAbelianFaithful) {
  const auto P = abelian(5, {1, 1});
  const auto m = module_of(P, {{{2, 0}, {0, 3}}});
  const auto fa = frattini_action(m);
  EXPECT_EQ(fa.dim, 2u);
  EXPECT_EQ(fa.matrices.size(), m.H.size());
  for (std::size_t i = 1; i < fa.matrices.size(); ++i) {
    EXPECT_NE(fa.matrices[i], FpMatrix::identity(2, 5));
  }
}

TEST(Frattini, RejectsNonCoprime) {
  const auto C4 = abelian(2, {2});
  // x -> x^3 on C4 is the identity on C4 / C2.
  EXPECT_EQ(code_of([&] { frattini_action(module_of(C4, {{{3}}})); }), ErrorCode::InjectivityFailure);
  EXPECT_EQ(code_of([&] { fixed_and_commutator(module_of(C4, {{{3}}})); }), ErrorCode::NotCoprime);
  // x -> x^4 on C9 has order 3 and acts trivially on C9 / C3.
  const auto C9 = abelian(3, {2});
  EXPECT_EQ(code_of([&] { frattini_action(module_of(C9, {{{4}}})); }), ErrorCode::InjectivityFailure);
}

TEST(Decomposition, TrivialHSplitsCompletely) {
  const auto P = abelian(3, {1, 1, 1});
  const auto d = indecomposable_decomposition(PGroupModule::generated(P, {}));
  EXPECT_FALSE(d.failure.has_value());
  ASSERT_EQ(d.factors.size(), 3u);
  for (const auto& f : d.factors) EXPECT_EQ(f.size(), 3u);
}

TEST(Decomposition, PrimitiveRootOnNineElementsIsIndecomposable) {
  const auto m = field_module(1);
  ASSERT_EQ(m.H.size(), 8u);
  const auto d = indecomposable_decomposition(m);
  EXPECT_FALSE(d.failure.has_value());
  EXPECT_EQ(d.factors.size(), 1u);
  // No proper invariant subgroup: every nonzero orbit spans F_9.
  for (Elem x = 1; x < 9; ++x) {
    const auto s = generate_subgroup(m.P, [&] {
      std::vector<Elem> orbit;
      for (const auto& h : m.H) orbit.push_back(h(x));
      return orbit;
    }());
    EXPECT_EQ(s.size(), 9u);
  }
}

TEST(Decomposition, EllFamilySplitsIntoTheTwoFactors) {
  const auto inst = build_ell(2, 5);
  const auto& view = inst.view();
  std::vector<Automorphism> gens;
  for (Elem e : inst.E->generators()) gens.push_back(Automorphism{inst.D, view.action[e]});
  const auto m = PGroupModule::generated(inst.D, gens);
  const auto d = indecomposable_decomposition(m);
  EXPECT_FALSE(d.failure.has_value());
  ASSERT_EQ(d.factors.size(), 2u);
  // D = D1 x D2 with D1 the least significant coordinate block.
  const std::size_t q = inst.field->size();
  std::vector<Elem> d1, d2;
  for (Elem i = 0; i < q; ++i) {
    d1.push_back(i);
    d2.push_back(static_cast<Elem>(i * q));
  }
  std::sort(d2.begin(), d2.end());
  std::vector<std::vector<Elem>> got{d.factors[0].elements, d.factors[1].elements};
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::vector<Elem>>{d1, d2}));
}

TEST(DualAction, TrivialAndInversion) {
  const auto P = abelian(3, {1});
  const auto triv = dual_action(PGroupModule::generated(P, {}));
  ASSERT_EQ(triv.perms.size(), 1u);
  EXPECT_EQ(triv.perms[0], (std::vector<Elem>{0, 1, 2}));

  const auto inv = dual_action(module_of(P, {{{-1}}}));
  ASSERT_EQ(inv.perms.size(), 2u);
  EXPECT_EQ(inv.perms[1], (std::vector<Elem>{0, 2, 1}));
  EXPECT_TRUE(inv.faithful);
  EXPECT_EQ(inv.fixed_nontrivial, 0u);
}

TEST(DualAction, StFamilyIsFixedPointFree) {
  const auto inst = build_st(5, 2);
  const auto& view = inst.view();
  std::vector<Automorphism> gens;
  for (Elem e : inst.E->generators()) gens.push_back(Automorphism{inst.D, view.action[e]});
  const auto m = PGroupModule::generated(inst.D, gens);
  ASSERT_EQ(m.H.size(), inst.E->order());
  const auto da = dual_action(m);
  EXPECT_TRUE(da.faithful);
  EXPECT_EQ(da.fixed_nontrivial, 0u);
  EXPECT_FALSE(da.correspondence_failure.has_value());
}

TEST(Consequences, CyclicFixedPointFree) {
  const auto f9 = indecomposable_consequences(field_module(1));
  EXPECT_TRUE(f9.cyclic);
  EXPECT_TRUE(f9.fixed_point_free);
  const auto C5 = abelian(5, {1});
  const auto c5 = indecomposable_consequences(module_of(C5, {{{2}}}));
  EXPECT_TRUE(c5.cyclic);
  EXPECT_TRUE(c5.fixed_point_free);
}

TEST(Consequences, DecomposableIsRejected) {
  const auto P = abelian(3, {1, 1});
  EXPECT_EQ(code_of([&] { indecomposable_consequences(module_of(P, {{{-1, 0}, {0, -1}}})); }),
            ErrorCode::NotIndecomposable);
}

TEST(Recognition, IdentityAndMembers) {
  const auto m = field_module(1);
  const auto id = recognize_in_H(m, identity_automorphism(m.P));
  ASSERT_TRUE(id.h.has_value());
  EXPECT_TRUE(m.H[*id.h].is_identity());
  for (std::size_t i = 0; i < m.H.size(); ++i) {
    const auto r = recognize_in_H(m, m.H[i]);
    ASSERT_TRUE(r.h.has_value());
    EXPECT_EQ(m.H[*r.h], m.H[i]);
  }
}

TEST(Recognition, PartialInversionIsRefuted) {
  const auto P = abelian(3, {1, 1});
  const auto m = module_of(P, {{{-1, 0}, {0, -1}}});
  const auto r = recognize_in_H(m, coordinate_automorphism(P, {{-1, 0}, {0, 1}}));
  EXPECT_FALSE(r.h.has_value());
  ASSERT_TRUE(r.refutation.has_value());
  EXPECT_NE(r.refutation->kind, Refutation::Kind::Counterexample);
}

TEST(Selection, OneDimensional) {
  SubspaceFamily fam{2, 1, {{}}};
  const auto sel = codim_one_selection(fam);
  EXPECT_EQ(sel.indices, (std::vector<std::size_t>{0}));
  ASSERT_EQ(sel.lines.size(), 1u);
  EXPECT_FALSE(check_selection(fam, sel).has_value());
}

TEST(Selection, ThreeLinesOfTheBinaryPlane) {
  SubspaceFamily fam{2, 2, {{{1, 0}}, {{0, 1}}, {{1, 1}}}};
  const auto sel = codim_one_selection(fam);
  EXPECT_EQ(sel.indices.size(), 2u);
  EXPECT_FALSE(check_selection(fam, sel).has_value());
  // Any two of the three lines work; check them all directly.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      SubspaceFamily two{2, 2, {fam.subspaces[i], fam.subspaces[j]}};
      const auto s = codim_one_selection(two);
      EXPECT_FALSE(check_selection(two, s).has_value());
      EXPECT_EQ(FpSubspace::span(s.lines, 2, 2).dim(), 2u);
    }
  }
}

TEST(Selection, CoordinateHyperplanesOfF3Cubed) {
  SubspaceFamily fam{3, 3, {{{0, 1, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 0, 1}}, {{1, 0, 0}, {0, 1, 0}}}};
  const auto sel = codim_one_selection(fam);
  EXPECT_EQ(sel.indices, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_FALSE(check_selection(fam, sel).has_value());
  // U_l is the l-th coordinate axis.
  for (std::size_t l = 0; l < 3; ++l) {
    std::vector<std::uint64_t> axis(3, 0);
    axis[l] = 1;
    EXPECT_EQ(FpSubspace::span({sel.lines[l]}, 3, 3), FpSubspace::span({axis}, 3, 3));
  }
}

TEST(Selection, DegenerateFamilyRejected) {
  // Two copies of the same hyperplane of F_2^2 meet in a line.
  SubspaceFamily fam{2, 2, {{{1, 0}}, {{1, 0}}}};
  EXPECT_EQ(code_of([&] { codim_one_selection(fam); }), ErrorCode::BadFamily);
}

TEST(Extensions, TrivialIndex) {
  const auto G = build_group(GroupSpec::cyclic(4));
  const auto all = whole_group(G);
  const auto emb = as_group(all);
  const auto conj = conjugacy_classes(emb.group);
  const auto table = dixon_table(conj);
  const auto rep = extension_stability(G, emb, table.rows[1], all, 2);
  EXPECT_EQ(rep.index, 1u);
  EXPECT_EQ(rep.extensions.size(), 1u);
}

TEST(Extensions, CyclicFourOverTwo) {
  const auto G = build_group(GroupSpec::cyclic(4));
  const Elem two = 2;
  const auto N = as_group(generate_subgroup(G, std::span<const Elem>(&two, 1)));
  const auto nconj = conjugacy_classes(N.group);
  const auto ntable = dixon_table(nconj);
  const auto rep = extension_stability(G, N, ntable.rows[1], whole_group(G), 2);
  EXPECT_EQ(rep.index, 2u);
  EXPECT_EQ(rep.extensions.size(), 2u);
  EXPECT_TRUE(rep.all_stable);
}

TEST(LemmaCorpus, SeededRunsPass) {
  for (std::uint64_t seed : {1ull, 2ull}) {
    LemmaCorpusOptions o;
    o.seed = seed;
    o.valid_instances = 60;
    o.selection_families = 20;
    const auto rep = verify_lemmas(o);
    EXPECT_TRUE(rep.verdict()) << rep.to_text();
  }
}
