#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "family_util.hpp"
#include "picentlab/coprime.hpp"
#include "picentlab/families.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

struct Instance {
  std::uint64_t p = 2;
  std::vector<unsigned> exponents;
  GroupPtr P;
  std::vector<IntMatrix> generators;
  PGroupModule module;
};

Json describe(const Instance& inst) {
  // Matrices as drawn; the first one enters H through its p'-part.
  return Json{{"p", inst.p}, {"exponents", inst.exponents}, {"matrices", inst.generators}};
}

std::uint64_t auto_order(const Automorphism& a) {
  std::uint64_t k = 1;
  for (Automorphism cur = a; !cur.is_identity(); cur = cur.compose(a)) ++k;
  return k;
}

Automorphism power(const Automorphism& a, std::uint64_t k) {
  Automorphism out = identity_automorphism(a.group);
  for (std::uint64_t i = 0; i < k; ++i) out = out.compose(a);
  return out;
}

// Random matrix that is well defined on prod C_{p^{e_i}}: entry (i, j) is a
// multiple of p^{e_i - e_j} when e_i > e_j.
IntMatrix random_matrix(std::mt19937_64& rng, std::uint64_t p, const std::vector<unsigned>& e) {
  const std::size_t r = e.size();
  IntMatrix m(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint64_t mod = nt::checked_pow(p, e[i], ~0ull);
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t v = rng() % mod;
      if (e[i] > e[j]) v = v * nt::checked_pow(p, e[i] - e[j], ~0ull) % mod;
      m[i][j] = static_cast<std::int64_t>(v);
    }
  }
  return m;
}

std::vector<unsigned> random_exponents(std::mt19937_64& rng, std::uint64_t p, std::uint64_t max_order) {
  for (;;) {
    const std::size_t rank = 1 + rng() % 3;
    std::vector<unsigned> e;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < rank; ++i) {
      e.push_back(1 + static_cast<unsigned>(rng() % 2));
      order *= nt::checked_pow(p, e.back(), ~0ull);
    }
    std::sort(e.begin(), e.end());
    if (order <= max_order) return e;
  }
}

// A p'-element of Aut(P) from a random matrix, or nullopt.
std::optional<Automorphism> random_coprime_automorphism(std::mt19937_64& rng, const Instance& inst,
                                                        IntMatrix* matrix) {
  const IntMatrix m = random_matrix(rng, inst.p, inst.exponents);
  Automorphism a;
  try {
    a = coordinate_automorphism(inst.P, m);
  } catch (const Error&) {
    return std::nullopt;
  }
  std::uint64_t k = auto_order(a);
  std::uint64_t p_part = 1;
  while (k % inst.p == 0) {
    k /= inst.p;
    p_part *= inst.p;
  }
  *matrix = m;
  return power(a, p_part);
}

// x -> x^u with u a unit of p'-order modulo the exponent of P.
Automorphism scalar(const Instance& inst, std::uint64_t u) {
  const std::size_t r = inst.exponents.size();
  IntMatrix m(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = static_cast<std::int64_t>(u);
  return coordinate_automorphism(inst.P, m);
}

std::optional<Instance> random_valid(std::mt19937_64& rng, const LemmaCorpusOptions& o) {
  static const std::uint64_t primes[] = {2, 3, 5, 7};
  Instance inst;
  inst.p = primes[rng() % 4];
  inst.exponents = random_exponents(rng, inst.p, o.max_p_order);
  inst.P = build_group(GroupSpec::abelian_p(inst.p, inst.exponents));
  std::vector<Automorphism> gens;
  IntMatrix mat;
  if (auto a = random_coprime_automorphism(rng, inst, &mat)) {
    gens.push_back(*a);
    inst.generators.push_back(mat);
  }
  if (inst.p > 2 && rng() % 2 == 0) {
    // A scalar of order dividing p - 1 commutes with everything.
    const unsigned top = *std::max_element(inst.exponents.begin(), inst.exponents.end());
    const std::uint64_t big = nt::checked_pow(inst.p, top, ~0ull);
    const std::uint64_t u = nt::pow_mod(2 + rng() % (inst.p - 2), nt::checked_pow(inst.p, top - 1, ~0ull) * inst.p, big);
    gens.push_back(scalar(inst, u));
    inst.generators.push_back(IntMatrix{{static_cast<std::int64_t>(u)}});
  }
  auto m = PGroupModule::generated(inst.P, gens);
  if (m.H.size() > o.max_h_order || !m.coprime()) return std::nullopt;
  // Keep a few trivial actions as edge cases.
  if (m.H.size() == 1 && rng() % 10 != 0) return std::nullopt;
  for (const auto& a : m.H) {
    for (const auto& b : m.H) {
      if (!(a.compose(b) == b.compose(a))) return std::nullopt;
    }
  }
  inst.module = std::move(m);
  return inst;
}

// H generated by a transvection, so p divides |H|.
Instance random_invalid(std::mt19937_64& rng) {
  static const std::uint64_t primes[] = {2, 3, 5};
  Instance inst;
  inst.p = primes[rng() % 3];
  inst.exponents = {1, 1};
  inst.P = build_group(GroupSpec::abelian_p(inst.p, inst.exponents));
  const auto shear = static_cast<std::int64_t>(1 + rng() % (inst.p - 1));
  inst.generators.push_back(IntMatrix{{1, shear}, {0, 1}});
  std::vector<Automorphism> gens{coordinate_automorphism(inst.P, inst.generators[0])};
  inst.module = PGroupModule::generated(inst.P, gens);
  return inst;
}

// Restriction of H to an invariant factor: the image is cyclic and every
// element acts either trivially or without nonzero fixed points.
std::optional<std::string> factor_consequences(const PGroupModule& m, const Subgroup& f) {
  std::set<std::vector<Elem>> images;
  for (const auto& h : m.H) {
    std::vector<Elem> r;
    for (Elem x : f.elements) r.push_back(h(x));
    images.insert(r);
    bool trivial = true, fixed = false;
    for (Elem x : f.elements) {
      if (h(x) != x) trivial = false;
      else if (x != 0) fixed = true;
    }
    if (!trivial && fixed) return std::string("an element has nonzero fixed points on a factor");
  }
  for (const auto& h : m.H) {
    std::set<std::vector<Elem>> powers;
    Automorphism cur = h;
    for (std::size_t k = 0; k < m.H.size(); ++k) {
      std::vector<Elem> r;
      for (Elem x : f.elements) r.push_back(cur(x));
      powers.insert(r);
      cur = cur.compose(h);
    }
    if (powers.size() == images.size()) return std::nullopt;
  }
  return std::string("the image of H on a factor is not cyclic");
}

struct Tally {
  std::size_t instances = 0;
  std::size_t failures = 0;
  Json first = nullptr;

  void record(bool ok, const Json& what) {
    ++instances;
    if (!ok) {
      ++failures;
      if (first.is_null()) first = what;
    }
  }
  bool finish(Json& w) const {
    w = Json{{"instances", instances}, {"failures", failures}};
    if (!first.is_null()) w["first_failure"] = first;
    return failures == 0 && instances > 0;
  }
};

}  // namespace

VerificationReport verify_lemmas(const LemmaCorpusOptions& o) {
  Stopwatch total;
  std::mt19937_64 rng(o.seed);
  std::vector<Instance> corpus;
  std::size_t attempts = 0;
  while (corpus.size() < o.valid_instances) {
    if (++attempts > 100 * o.valid_instances + 1000) {
      throw Error(ErrorCode::BadParameters, "could not generate the requested corpus");
    }
    if (auto inst = random_valid(rng, o)) corpus.push_back(std::move(*inst));
  }

  VerificationReport rep;
  rep.command = "verify-lemmas";
  rep.seed = o.seed;
  rep.params = Json{{"valid_instances", o.valid_instances},
                    {"invalid_instances", o.invalid_instances},
                    {"selection_families", o.selection_families},
                    {"max_p_order", o.max_p_order},
                    {"max_h_order", o.max_h_order}};
  std::map<std::size_t, std::size_t> h_orders;
  for (const auto& inst : corpus) ++h_orders[inst.module.H.size()];
  Json hist = Json::object();
  for (const auto& [k, v] : h_orders) hist[std::to_string(k)] = v;
  rep.params["h_order_histogram"] = hist;

  rep.run_check("P = C_P(H) x [H, P]", "fixed points and commutator", [&](Json& w) {
    Tally t;
    for (const auto& inst : corpus) {
      const auto fc = fixed_and_commutator(inst.module);
      t.record(fc.direct, describe(inst));
    }
    return t.finish(w);
  });

  std::vector<Decomposition> decs;
  rep.run_check("H is faithful on P / Phi(P) and the decomposition matches its summands",
                "Frattini quotient", [&](Json& w) {
                  Tally t;
                  for (const auto& inst : corpus) {
                    bool ok = true;
                    try {
                      const auto fa = frattini_action(inst.module);
                      ok = fa.matrices.size() == inst.module.H.size();
                    } catch (const Error&) {
                      ok = false;
                    }
                    decs.push_back(indecomposable_decomposition(inst.module));
                    ok = ok && !decs.back().failure;
                    t.record(ok, describe(inst));
                  }
                  return t.finish(w);
                });

  rep.run_check("the dual action is faithful and decomposes like P", "action on Irr(P)",
                [&](Json& w) {
                  Tally t;
                  for (std::size_t i = 0; i < corpus.size(); ++i) {
                    const auto d = dual_action(corpus[i].module);
                    t.record(d.faithful && !d.correspondence_failure &&
                                 d.dual_factors == decs[i].factors.size(),
                             describe(corpus[i]));
                  }
                  return t.finish(w);
                });

  rep.run_check("on each factor H acts cyclically and fixed-point-freely", "indecomposable factors",
                [&](Json& w) {
                  Tally t;
                  for (std::size_t i = 0; i < corpus.size(); ++i) {
                    const auto& m = corpus[i].module;
                    std::optional<std::string> err;
                    for (const auto& f : decs[i].factors) {
                      if (!err) err = factor_consequences(m, f);
                    }
                    if (!err && decs[i].factors.size() == 1) {
                      const auto rep1 = indecomposable_consequences(m);
                      if (!rep1.cyclic || !rep1.fixed_point_free) err = "indecomposable module fails";
                    }
                    Json what = describe(corpus[i]);
                    if (err) what["reason"] = *err;
                    t.record(!err, what);
                  }
                  return t.finish(w);
                });

  rep.run_check("a pointwise-H automorphism commuting with H lies in H", "recognition in H",
                [&](Json& w) {
                  Tally t;
                  std::mt19937_64 local(o.seed ^ 0x5bd1e995u);
                  for (const auto& inst : corpus) {
                    const auto& m = inst.module;
                    const std::size_t k = local() % m.H.size();
                    const auto rec = recognize_in_H(m, m.H[k]);
                    bool ok = rec.h == k;
                    // Scalars commute with H; they are either in H or refuted.
                    const unsigned top = *std::max_element(inst.exponents.begin(), inst.exponents.end());
                    const std::uint64_t big = nt::checked_pow(inst.p, top, ~0ull);
                    for (std::uint64_t u = 2; u < big && u < 12; ++u) {
                      if (nt::gcd(u, inst.p) != 1) continue;
                      const auto r2 = recognize_in_H(m, scalar(inst, u));
                      ok = ok && (r2.h || (r2.refutation &&
                                           r2.refutation->kind != Refutation::Kind::Counterexample));
                    }
                    t.record(ok, describe(inst));
                  }
                  return t.finish(w);
                });

  rep.run_check("invalid instances (p divides |H|) are rejected up front", "coprimality precondition",
                [&](Json& w) {
                  Tally t;
                  for (std::size_t i = 0; i < o.invalid_instances; ++i) {
                    const auto inst = random_invalid(rng);
                    std::size_t rejected = 0;
                    const auto expect = [&](auto&& f) {
                      try {
                        f();
                      } catch (const Error& e) {
                        rejected += e.code() == ErrorCode::NotCoprime;
                      }
                    };
                    expect([&] { fixed_and_commutator(inst.module); });
                    expect([&] { indecomposable_decomposition(inst.module); });
                    expect([&] { dual_action(inst.module); });
                    expect([&] { recognize_in_H(inst.module, inst.module.H[0]); });
                    t.record(rejected == 4, describe(inst));
                  }
                  return t.finish(w);
                });

  rep.run_check("hyperplane selection: intersections drop, lines span and sit in the others",
                "hyperplane selection", [&](Json& w) {
                  Tally t;
                  static const std::uint64_t fields[] = {2, 3, 5};
                  for (std::size_t f = 0; f < o.selection_families; ++f) {
                    const std::uint64_t ell = fields[rng() % 3];
                    const std::size_t n = 1 + rng() % 4;
                    SubspaceFamily fam{ell, n, {}};
                    std::vector<std::vector<std::uint64_t>> functionals;
                    const std::size_t target = n + rng() % 3;
                    while (functionals.size() < target ||
                           FpMatrix::from_rows(functionals, n, ell).rank() < n) {
                      std::vector<std::uint64_t> v(n);
                      for (auto& x : v) x = rng() % ell;
                      if (FpMatrix::from_rows({v}, n, ell).rank() == 0) continue;
                      functionals.push_back(v);
                      fam.subspaces.push_back(FpMatrix::from_rows({v}, n, ell).nullspace());
                      if (n == 1) fam.subspaces.back() = {std::vector<std::uint64_t>(1, 0)};
                    }
                    bool ok = false;
                    try {
                      const auto sel = codim_one_selection(fam);
                      ok = !check_selection(fam, sel);
                    } catch (const Error&) {
                      ok = false;
                    }
                    t.record(ok, Json{{"ell", ell}, {"n", n}, {"functionals", functionals}});
                  }
                  // Families meeting in a nonzero subspace are rejected.
                  for (std::size_t f = 0; f < o.invalid_instances; ++f) {
                    const std::uint64_t ell = fields[rng() % 3];
                    SubspaceFamily fam{ell, 3, {}};
                    fam.subspaces.push_back({{0, 1, 0}, {0, 0, 1}});
                    fam.subspaces.push_back({{1, 0, 0}, {0, 0, 1}});
                    bool rejected = false;
                    try {
                      codim_one_selection(fam);
                    } catch (const Error& e) {
                      rejected = e.code() == ErrorCode::BadFamily;
                    }
                    t.record(rejected, Json{{"ell", ell}, {"degenerate", true}});
                  }
                  return t.finish(w);
                });

  rep.timing = Json{{"total_millis", total.millis()}};
  return rep;
}

}  // namespace picent
