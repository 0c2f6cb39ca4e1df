#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "picentlab/automorphism.hpp"
#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/field.hpp"
#include "picentlab/fixtures.hpp"
#include "picentlab/numtheory.hpp"

using namespace picent;

namespace {

GroupPtr fx(const std::string& name) { return build_group(fixture(name)); }

std::multiset<std::size_t> class_sizes(const ConjugacyData& c) {
  std::multiset<std::size_t> s;
  for (const auto& cl : c.classes) s.insert(cl.size());
  return s;
}

}  // namespace

TEST(NumberTheory, SmallFacts) {
  EXPECT_TRUE(nt::is_prime(2));
  EXPECT_FALSE(nt::is_prime(1));
  EXPECT_FALSE(nt::is_prime(91));
  EXPECT_EQ(nt::euler_phi(12), 4u);
  EXPECT_EQ(nt::multiplicative_order(3, 4), 2u);
  EXPECT_EQ(nt::multiplicative_order(5, 4), 1u);
  EXPECT_EQ(nt::multiplicative_order(2, 9), 6u);
  EXPECT_EQ(nt::primitive_root(5), 2u);
  std::uint64_t p = 0;
  EXPECT_TRUE(nt::is_prime_power(32, &p));
  EXPECT_EQ(p, 2u);
  EXPECT_FALSE(nt::is_prime_power(12, &p));
  EXPECT_EQ(nt::checked_pow(2, 40, 1000), 0u);
}

TEST(Field, PrimeFieldFive) {
  const auto f = field_make(5, 1);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f.primitive_root(), 2u);
  // 2 has order 4 mod 5: 2, 4, 3, 1.
  EXPECT_EQ(f.pow(2, 2), 4u);
  EXPECT_EQ(f.pow(2, 4), 1u);
  EXPECT_EQ(f.multiplicative_order(f.primitive_root()), 4u);
}

TEST(Field, PrimeFieldThree) {
  const auto f = field_make(3, 1);
  EXPECT_EQ(f.primitive_root(), 2u);
  EXPECT_EQ(f.multiplicative_order(2), 2u);
}

TEST(Field, NineElementsExhaustive) {
  const auto f = field_make(3, 2);
  ASSERT_EQ(f.size(), 9u);
  std::map<std::uint64_t, int> orders;
  for (FieldElem x = 1; x < 9; ++x) {
    FieldElem y = x;
    std::uint64_t k = 1;
    while (y != 1) {
      y = f.mul(y, x);
      ++k;
    }
    ++orders[k];
    EXPECT_EQ(k, f.multiplicative_order(x));
  }
  // Cyclic of order 8: phi(d) elements of order d.
  EXPECT_EQ(orders[8], 4);
  EXPECT_EQ(orders[4], 2);
  EXPECT_EQ(orders[2], 1);
  EXPECT_EQ(orders[1], 1);
  EXPECT_EQ(f.multiplicative_order(f.primitive_root()), 8u);
}

TEST(Field, AxiomsAndFrobenius) {
  for (auto [p, n] : {std::pair{2ull, 3u}, {3ull, 2u}, {5ull, 2u}, {7ull, 1u}}) {
    const auto f = field_make(p, n);
    for (FieldElem a = 0; a < f.size(); ++a) {
      for (FieldElem b = 0; b < f.size(); ++b) {
        const FieldElem c = static_cast<FieldElem>((a * 7 + b * 3) % f.size());
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        EXPECT_EQ(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
      }
      EXPECT_EQ(f.frobenius(a, n), a);
    }
  }
}

TEST(Field, RejectsNonPrime) {
  try {
    field_make(4, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPrime);
  }
}

TEST(GroupBuild, CyclicSix) {
  const auto G = build_group(GroupSpec::cyclic(6));
  EXPECT_EQ(G->order(), 6u);
  EXPECT_TRUE(G->is_abelian());
}

TEST(GroupBuild, ExplicitInversionGivesS3) {
  const auto G = build_group(GroupSpec::semidirect(GroupSpec::cyclic(3), GroupSpec::cyclic(2),
                                                   {ActionEntry{0, explicit_images({2})}}));
  EXPECT_EQ(G->order(), 6u);
  EXPECT_FALSE(G->is_abelian());
  EXPECT_EQ(oracle::conjugacy_classes(*G).size(), 3u);
  EXPECT_EQ(conjugacy_classes(G)->count(), 3u);
}

TEST(GroupBuild, EllFamilyOrders) {
  // |D| = p^(2n) with n the order of p mod ell^2, |E| = ell^4.
  EXPECT_EQ(build_ell(2, 3).G->order(), 81u * 16u);
  EXPECT_EQ(build_ell(2, 5).G->order(), 25u * 16u);
}

TEST(GroupBuild, NonBijectiveActionNamesGenerator) {
  try {
    build_group(GroupSpec::semidirect(GroupSpec::cyclic(5), GroupSpec::cyclic(2),
                                      {ActionEntry{0, exponent_matrix({{5}})}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidAction);
    EXPECT_NE(std::string(e.what()).find("generator 0"), std::string::npos);
  }
}

TEST(GroupBuild, TooLarge) {
  BuildOptions o;
  o.max_order = 100;
  try {
    build_group(GroupSpec::cyclic(101), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(GroupBuild, AxiomsOnEveryFixture) {
  for (const auto& name : fixture_names()) {
    const auto G = fx(name);
    EXPECT_FALSE(check_group_axioms(*G, 1).has_value()) << name;
  }
}

TEST(GroupBuild, AxiomsOnFamilyGroups) {
  EXPECT_FALSE(check_group_axioms(*build_st(5, 2).G, 3).has_value());
  EXPECT_FALSE(check_group_axioms(*build_st(3, 2).G, 4, 10000).has_value());
  EXPECT_FALSE(check_group_axioms(*build_ell(2, 5).G, 5, 10000).has_value());
}

TEST(GroupBuild, FixtureOrders) {
  const std::map<std::string, std::size_t> expected{
      {"s3", 6}, {"d8", 8}, {"q8", 8}, {"c4sdc4", 16}, {"heis27", 27}, {"wall32", 32}};
  for (const auto& [name, order] : expected) EXPECT_EQ(fx(name)->order(), order) << name;
}

TEST(GroupBuild, QuaternionHasOneInvolution) {
  const auto G = fx("q8");
  int involutions = 0;
  for (Elem x = 0; x < G->order(); ++x) involutions += oracle::order_of(*G, x) == 2;
  EXPECT_EQ(involutions, 1);
  const auto D = fx("d8");
  int d_involutions = 0;
  for (Elem x = 0; x < D->order(); ++x) d_involutions += oracle::order_of(*D, x) == 2;
  EXPECT_EQ(d_involutions, 5);
}

TEST(Conjugacy, AbelianSingletons) {
  const auto G = fx("c2xc4");
  EXPECT_EQ(conjugacy_classes(G)->count(), G->order());
}

TEST(Conjugacy, S3ClassSizes) {
  const auto c = conjugacy_classes(fx("s3"));
  EXPECT_EQ(class_sizes(*c), (std::multiset<std::size_t>{1, 2, 3}));
}

TEST(Conjugacy, MatchesOracleAndCensus) {
  for (const auto& G : {fx("d8"), fx("q8"), fx("heis27"), fx("wall32"), build_st(5, 2).G}) {
    const auto c = conjugacy_classes(G);
    auto mine = c->classes;
    auto ref = oracle::conjugacy_classes(*G);
    std::sort(mine.begin(), mine.end());
    std::sort(ref.begin(), ref.end());
    EXPECT_EQ(mine, ref);
    std::size_t total = 0;
    for (std::size_t i = 0; i < c->count(); ++i) {
      total += c->class_size(i);
      EXPECT_EQ(c->class_size(i) * c->centralizer_orders[i], G->order());
      EXPECT_EQ(c->class_of[c->reps[i]], i);
    }
    EXPECT_EQ(total, G->order());
  }
}

TEST(Subgroups, CentralizerBasics) {
  const auto G = fx("s3");
  const Elem e = 0;
  EXPECT_EQ(centralizer(G, std::span<const Elem>(&e, 1)).size(), 6u);
  const auto A = fx("c3xc3");
  const Elem x = 4;
  EXPECT_EQ(centralizer(A, std::span<const Elem>(&x, 1)).size(), 9u);
}

TEST(Subgroups, StFamilyCentralizersInE) {
  const auto inst = build_st(5, 2);
  const auto& view = inst.view();
  const auto E = complement_embedding(inst.G).image();
  for (Elem x = 1; x < inst.D->order(); ++x) {
    const Elem gx = view.combine(x, 0);
    const auto c = centralizer(inst.G, std::span<const Elem>(&gx, 1), &E);
    EXPECT_EQ(c.size(), 1u) << "x = " << x;
  }
}

TEST(Automorphisms, InnerCounts) {
  EXPECT_EQ(inner_automorphisms(fx("c12")).size(), 1u);
  EXPECT_EQ(inner_automorphisms(fx("s3")).size(), 6u);
  EXPECT_EQ(inner_automorphisms(fx("q8")).size(), 4u);
}

TEST(Automorphisms, CyclicUnits) {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const auto G = fx("c" + std::to_string(n));
    const auto c = conjugacy_classes(G);
    EXPECT_EQ(automorphism_group(G, *c).size(), nt::euler_phi(n)) << n;
  }
}

TEST(Automorphisms, AgainstPermutationOracle) {
  const std::map<std::string, std::size_t> expected{{"c2xc2xc2", 168}, {"d8", 8}, {"q8", 24}};
  for (const auto& [name, count] : expected) {
    const auto G = fx(name);
    const auto c = conjugacy_classes(G);
    const auto mine = automorphism_group(G, *c);
    const auto ref = oracle::all_automorphisms(*G);
    EXPECT_EQ(mine.size(), ref.size()) << name;
    EXPECT_EQ(mine.size(), count) << name;
    std::set<std::vector<Elem>> a, b(ref.begin(), ref.end());
    for (const auto& m : mine) a.insert(m.images);
    EXPECT_EQ(a, b) << name;
  }
  const auto K = build_group(GroupSpec::abelian_p(2, {1, 1}));
  EXPECT_EQ(automorphism_group(K, *conjugacy_classes(K)).size(), 6u);
}

TEST(Automorphisms, GroupClosure) {
  for (const auto& name : {"d8", "q8", "s3", "c4sdc4"}) {
    const auto G = fx(name);
    const auto all = automorphism_group(G, *conjugacy_classes(G));
    std::set<std::vector<Elem>> set;
    for (const auto& a : all) set.insert(a.images);
    for (const auto& a : all) {
      EXPECT_TRUE(set.count(a.inverse().images));
      for (const auto& b : all) EXPECT_TRUE(set.count(a.compose(b).images));
    }
  }
}

TEST(Automorphisms, ClassPreservation) {
  const auto C3 = fx("c3");
  const auto c = conjugacy_classes(C3);
  EXPECT_TRUE(is_class_preserving(*c, identity_automorphism(C3)));
  const Automorphism inversion{C3, {0, 2, 1}};
  EXPECT_FALSE(check_automorphism(inversion).has_value());
  EXPECT_FALSE(is_class_preserving(*c, inversion));
  const auto Q = fx("heis27");
  const auto qc = conjugacy_classes(Q);
  for (const auto& inner : inner_automorphisms(Q)) EXPECT_TRUE(is_class_preserving(*qc, inner));
}

TEST(Automorphisms, FindInner) {
  const auto G = fx("d8");
  for (Elem g = 0; g < G->order(); ++g) {
    const auto found = find_inner(conjugation(G, g));
    ASSERT_TRUE(found.has_value());
    EXPECT_EQ(conjugation(G, *found), conjugation(G, g));
  }
}

TEST(OutC, TrivialCases) {
  for (const auto& name : fixture_names()) {
    if (!fixture_is_abelian(name) && name != "d8" && name != "q8" && name != "s3") continue;
    const auto G = fx(name);
    const auto oc = out_c(G, *conjugacy_classes(G));
    EXPECT_EQ(oc.out_c_order, 1u) << name;
    EXPECT_FALSE(oc.witness.has_value()) << name;
  }
}

TEST(OutC, DihedralByBruteForce) {
  const auto G = fx("d8");
  const auto classes = oracle::conjugacy_classes(*G);
  for (const auto& a : oracle::all_automorphisms(*G)) {
    if (oracle::preserves_classes(classes, a)) EXPECT_TRUE(oracle::is_inner(*G, a));
  }
}

TEST(OutC, WallFixtureNontrivial) {
  const auto G = fx("wall32");
  const auto c = conjugacy_classes(G);
  const auto oc = out_c(G, *c);
  EXPECT_EQ(oc.aut_order % oc.aut_c_order, 0u);
  EXPECT_EQ(oc.aut_c_order % oc.inn_order, 0u);
  EXPECT_GT(oc.out_c_order, 1u);
  ASSERT_TRUE(oc.witness.has_value());
  EXPECT_TRUE(oracle::is_automorphism(*G, oc.witness->images));
  EXPECT_TRUE(oracle::preserves_classes(oracle::conjugacy_classes(*G), oc.witness->images));
  EXPECT_FALSE(oracle::is_inner(*G, oc.witness->images));
}

TEST(OutC, DivisibilityProperty) {
  for (const auto& name : {"s3", "d8", "q8", "c4sdc4", "heis27", "wall32", "c4xc4"}) {
    const auto G = fx(name);
    const auto oc = out_c(G, *conjugacy_classes(G));
    EXPECT_EQ(oc.aut_c_order % oc.inn_order, 0u) << name;
    EXPECT_EQ(oc.aut_order % oc.aut_c_order, 0u) << name;
    EXPECT_EQ(oc.out_c_order * oc.inn_order, oc.aut_c_order) << name;
  }
}

TEST(Homomorphisms, ExtendRejectsBadImages) {
  const auto C4 = fx("c4");
  const auto C2 = fx("c2");
  const Elem good = 1;
  EXPECT_TRUE(extend_homomorphism(*C4, *C2, std::span<const Elem>(&good, 1)).has_value());
  const auto C3 = fx("c3");
  const Elem bad = 1;
  EXPECT_FALSE(extend_homomorphism(*C4, *C3, std::span<const Elem>(&bad, 1)).has_value());
}

TEST(Property, RandomSemidirectAxioms) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::uint64_t n = 3 + rng() % 20;
    std::vector<std::uint64_t> units;
    for (std::uint64_t u = 2; u < n; ++u) {
      if (nt::gcd(u, n) == 1) units.push_back(u);
    }
    const std::uint64_t u = units[rng() % units.size()];
    const std::uint64_t m = nt::multiplicative_order(u, n) * (1 + rng() % 2);
    const auto G = build_group(GroupSpec::semidirect(
        GroupSpec::cyclic(n), GroupSpec::cyclic(m),
        {ActionEntry{0, exponent_matrix({{static_cast<std::int64_t>(u)}})}}));
    EXPECT_EQ(G->order(), n * m);
    EXPECT_FALSE(check_group_axioms(*G, trial).has_value());
    const auto c = conjugacy_classes(G);
    std::size_t total = 0;
    for (std::size_t i = 0; i < c->count(); ++i) total += c->class_size(i);
    EXPECT_EQ(total, G->order());
  }
}
