#include <algorithm>
#include <map>

#include "family_util.hpp"
#include "picentlab/coprime.hpp"
#include "picentlab/families.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix out(2 * n, std::vector<std::int64_t>(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i][j] = a[i][j];
      out[n + i][n + j] = b[i][j];
    }
  }
  return out;
}

Subgroup lift_subgroup(const EllInstance& inst, const Subgroup& in_e, bool with_d) {
  std::vector<Elem> out;
  const std::size_t nd = with_d ? inst.D->order() : 1;
  for (Elem e : in_e.elements) {
    for (std::size_t d = 0; d < nd; ++d) out.push_back(inst.view().combine(static_cast<Elem>(d), e));
  }
  return Subgroup::from_elements(inst.G, std::move(out));
}

// {e in E : e acts trivially on the elements listed}.
Subgroup kernel_on(const EllInstance& inst, const std::vector<Elem>& xs) {
  std::vector<Elem> out;
  for (std::size_t e = 0; e < inst.E->order(); ++e) {
    bool fixes = true;
    for (Elem x : xs) fixes = fixes && inst.view().action[e][x] == x;
    if (fixes) out.push_back(static_cast<Elem>(e));
  }
  return Subgroup::from_elements(inst.E, std::move(out));
}

std::vector<Elem> component(const EllInstance& inst, int which) {
  const std::size_t q = inst.field->size();
  std::vector<Elem> out;
  for (std::size_t x = 0; x < q; ++x) out.push_back(static_cast<Elem>(which == 0 ? x : x * q));
  return out;
}

std::vector<InvariantResult> ell_invariants(const EllInstance& inst) {
  std::vector<InvariantResult> out;
  const auto& E = *inst.E;
  const auto& view = inst.view();
  const auto d1 = component(inst, 0);
  const auto d2 = component(inst, 1);
  const Elem g_ell = E.pow(inst.g, static_cast<std::int64_t>(inst.ell));
  const std::vector<Elem> k1_gens{inst.z, inst.h};
  const std::vector<Elem> k2_gens{inst.z, E.mul(g_ell, inst.h)};
  {
    InvariantResult r{"kernel on D1 is <z> x <h>, on D2 is <z> x <g^ell h>", std::nullopt};
    if (!(kernel_on(inst, d1) == generate_subgroup(inst.E, k1_gens))) {
      r.failure = "kernel on D1 has order " + std::to_string(kernel_on(inst, d1).size());
    } else if (!(kernel_on(inst, d2) == generate_subgroup(inst.E, k2_gens))) {
      r.failure = "kernel on D2 has order " + std::to_string(kernel_on(inst, d2).size());
    }
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"g acts as m_omega on D1 and D2", std::nullopt};
    const std::size_t q = inst.field->size();
    for (std::size_t x = 0; x < q && !r.failure; ++x) {
      const Elem w = inst.field->mul(inst.omega, static_cast<FieldElem>(x));
      if (view.action[inst.g][x] != w || view.action[inst.g][x * q] != w * q) {
        r.failure = "differs at x = " + std::to_string(x);
      }
    }
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"C_E(D) = Z", std::nullopt};
    std::vector<Elem> all(inst.D->order());
    for (std::size_t x = 0; x < all.size(); ++x) all[x] = static_cast<Elem>(x);
    const auto c = kernel_on(inst, all);
    if (!(c == inst.Z)) r.failure = "|C_E(D)| = " + std::to_string(c.size());
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"E acts indecomposably on D1 and on D2", std::nullopt};
    const auto* dd = inst.D->direct();
    for (int i = 0; i < 2 && !r.failure; ++i) {
      const GroupPtr& di = dd->factors[i];
      const auto& comp = i == 0 ? d1 : d2;
      std::map<Elem, Elem> local;
      for (std::size_t x = 0; x < comp.size(); ++x) local[comp[x]] = static_cast<Elem>(x);
      std::map<std::vector<Elem>, bool> seen;
      std::vector<Automorphism> hs;
      for (std::size_t e = 0; e < E.order(); ++e) {
        std::vector<Elem> table(comp.size());
        for (std::size_t x = 0; x < comp.size(); ++x) table[x] = local.at(view.action[e][comp[x]]);
        if (seen.emplace(table, true).second) hs.push_back(Automorphism{di, std::move(table)});
      }
      const auto dec = indecomposable_decomposition(PGroupModule::make(di, std::move(hs)));
      if (dec.factors.size() != 1) {
        r.failure = "D" + std::to_string(i + 1) + " splits into " +
                    std::to_string(dec.factors.size()) + " factors";
      }
    }
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"Z <= Z(G) and Z(E) = Z x <g^ell>", std::nullopt};
    const Elem zg = inst.lift(inst.z);
    for (Elem s : inst.G->generators()) {
      if (inst.G->mul(s, zg) != inst.G->mul(zg, s)) r.failure = "z does not commute with " + std::to_string(s);
    }
    const std::vector<Elem> zc{inst.z, g_ell};
    if (!r.failure && !(center(inst.E) == generate_subgroup(inst.E, zc))) {
      r.failure = "|Z(E)| = " + std::to_string(center(inst.E).size());
    }
    out.push_back(std::move(r));
  }
  return out;
}

// Linear character on the abelian table group `sub` given by values on its
// elements.
ClassFunction on_elements(const Embedding& sub, const ConjPtr& conj,
                          const std::vector<Cyclotomic>& by_element) {
  ClassFunction f{conj, {}};
  for (std::size_t c = 0; c < conj->count(); ++c) f.values.push_back(by_element[conj->reps[c]]);
  (void)sub;
  return f;
}

}  // namespace

std::string to_string(EllMutation m) {
  switch (m) {
    case EllMutation::None: return "none";
    case EllMutation::AlteredRelation: return "altered-relation";
    case EllMutation::SwappedKernel: return "swapped-kernel";
    case EllMutation::WrongOmega: return "wrong-omega";
    case EllMutation::WrongLambda: return "wrong-lambda";
    case EllMutation::WrongPhi: return "wrong-phi";
  }
  return "?";
}

std::optional<EllMutation> parse_ell_mutation(std::string_view name) {
  for (EllMutation m : {EllMutation::None, EllMutation::AlteredRelation, EllMutation::SwappedKernel,
                        EllMutation::WrongOmega, EllMutation::WrongLambda, EllMutation::WrongPhi}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

EllInstance build_ell(std::uint64_t ell, std::uint64_t p, const BuildOptions& options,
                      EllMutation mutation) {
  if (!nt::is_prime(ell)) throw Error(ErrorCode::BadParameters, "ell must be prime");
  if (!nt::is_prime(p)) throw Error(ErrorCode::BadParameters, "p must be prime");
  if (ell == p) throw Error(ErrorCode::BadParameters, "ell must differ from p");
  const std::uint64_t l2 = ell * ell;

  EllInstance inst;
  inst.ell = ell;
  inst.p = p;
  inst.n = nt::multiplicative_order(p % l2, l2);
  inst.mutation = mutation;
  detail::require_order(detail::big_pow(p, 2 * inst.n) * l2 * l2, options.max_order,
                        "p^(2n) * ell^4");
  inst.field = std::make_shared<const FieldDescriptor>(
      field_make(p, static_cast<unsigned>(inst.n), options.field_bound));
  const auto& field = *inst.field;
  const std::uint64_t q = field.size();
  inst.omega = field.gamma_pow(static_cast<std::int64_t>((q - 1) / l2));

  const FieldElem g_scalar =
      mutation == EllMutation::WrongOmega ? field.pow(inst.omega, ell) : inst.omega;
  const FieldElem h_scalar = field.pow(field.gamma_pow(-static_cast<std::int64_t>((q - 1) / l2)), ell);
  const IntMatrix mg = field.mult_matrix(g_scalar);
  const IntMatrix mh = field.mult_matrix(h_scalar);
  const IntMatrix id = field.mult_matrix(1);

  std::vector<ActionEntry> e_action;
  if (mutation != EllMutation::AlteredRelation) {
    e_action.push_back(ActionEntry{0, exponent_matrix({{1, 1}, {0, 1}})});
  }
  GroupSpec e_spec = GroupSpec::semidirect(
      GroupSpec::direct({GroupSpec::cyclic(ell), GroupSpec::cyclic(l2)}), GroupSpec::cyclic(ell),
      std::move(e_action));
  const IntMatrix h_matrix =
      mutation == EllMutation::SwappedKernel ? block_diag(mh, id) : block_diag(id, mh);
  inst.spec = GroupSpec::semidirect(
      GroupSpec::direct({GroupSpec::gf_add(p, static_cast<unsigned>(inst.n)),
                         GroupSpec::gf_add(p, static_cast<unsigned>(inst.n))}),
      std::move(e_spec),
      {ActionEntry{1, exponent_matrix(block_diag(mg, mg))}, ActionEntry{2, exponent_matrix(h_matrix)}});
  inst.G = build_group(inst.spec, options);
  inst.D = inst.view().normal;
  inst.E = inst.view().actor;
  inst.z = 1;
  inst.g = static_cast<Elem>(ell);
  inst.h = static_cast<Elem>(ell * l2);
  const auto& E = *inst.E;
  const std::vector<Elem> zg{inst.z};
  inst.Z = generate_subgroup(inst.E, zg);
  const std::vector<Elem> fg{inst.z, E.pow(inst.g, static_cast<std::int64_t>(ell)), inst.h};
  inst.F = generate_subgroup(inst.E, fg);

  std::map<Elem, std::size_t> exponent;
  for (std::uint64_t k = 0; k < ell; ++k) exponent[E.pow(inst.z, static_cast<std::int64_t>(k))] = k;
  for (Elem x : inst.Z.elements) {
    inst.phi.push_back(mutation == EllMutation::WrongPhi
                           ? Cyclotomic::integer(1)
                           : Cyclotomic::root(ell, static_cast<std::int64_t>(exponent.at(x))));
  }
  inst.invariants = ell_invariants(inst);
  return inst;
}

VerificationReport verify_prop44(const EllInstance& inst, const CharacterTable* table) {
  Stopwatch total;
  CharacterTable computed;
  if (table == nullptr) {
    computed = dixon_table(conjugacy_classes(inst.G));
    table = &computed;
  } else if (table->group() != inst.G) {
    throw Error(ErrorCode::MissingTable, "the supplied table belongs to another group");
  }
  const auto& conj = *table->conj;
  const auto& E = *inst.E;
  const std::size_t nd = inst.D->order();

  VerificationReport rep;
  rep.command = "verify-ell";
  rep.params = Json{{"ell", inst.ell},
                    {"p", inst.p},
                    {"n", inst.n},
                    {"order_D", nd},
                    {"order_E", E.order()},
                    {"order_G", inst.G->order()},
                    {"classes", conj.count()},
                    {"mutation", to_string(inst.mutation)}};

  detail::invariants_check(rep, "setup: E, its action on D1 x D2 and C_E(D)", inst.invariants);

  const Elem g_ell = E.pow(inst.g, static_cast<std::int64_t>(inst.ell));
  rep.run_check("Z(E) = Z x <g^ell>; F normal in E with E/F cyclic of order ell",
                "structure of E and F", [&](Json& w) {
                  const std::vector<Elem> zc{inst.z, g_ell};
                  const auto ze = center(inst.E);
                  if (!(ze == generate_subgroup(inst.E, zc))) {
                    w = Json{{"center_order", ze.size()}};
                    return false;
                  }
                  if (!is_normal(inst.F) || E.order() != inst.F.size() * inst.ell) {
                    w = Json{{"F_order", inst.F.size()}, {"F_normal", is_normal(inst.F)}};
                    return false;
                  }
                  const std::vector<Elem> gg{inst.g};
                  return join(inst.F, generate_subgroup(inst.E, gg)).size() == E.order();
                });

  const Subgroup df = lift_subgroup(inst, inst.F, true);
  std::vector<std::size_t> lambdas;
  rep.run_check("|Irr(G | 1_{D x| F})| = ell", "the linear characters lambda", [&](Json& w) {
    lambdas = rows_with_kernel_containing(*table, df);
    w = Json{{"rows", lambdas}};
    bool linear = true;
    for (std::size_t r : lambdas) linear = linear && table->degrees[r] == 1;
    return linear && lambdas.size() == inst.ell && inst.G->order() == df.size() * inst.ell;
  });
  if (inst.mutation == EllMutation::WrongLambda) {
    // A linear character of G/D that is trivial on g but not on h.
    lambdas = {0};
    for (std::size_t r = 1; r < table->rows.size(); ++r) {
      const auto& row = table->rows[r];
      if (table->degrees[r] == 1 && row.at(inst.lift(inst.g)) == Cyclotomic::integer(1) &&
          row.at(inst.lift(inst.h)) != Cyclotomic::integer(1)) {
        lambdas.push_back(r);
        break;
      }
    }
  }

  const Subgroup z_in_g = lift_subgroup(inst, inst.Z, false);
  std::vector<std::size_t> irr_b;
  rep.run_check("|Irr(B)| equals the three-branch Clifford count", "Irr(B) by Clifford theory",
                [&](Json& w) {
                  irr_b = irr_over(*table, z_in_g, inst.phi);
                  // Orbits of E on Irr(D); each orbit with stabilizer I contributes
                  // |Irr(I | phi)| characters.
                  const auto image = detail::action_image(inst.view());
                  const auto m = PGroupModule::make(inst.D, image.autos);
                  const auto dual = dual_module(m);
                  const auto d1 = component(inst, 0);
                  const auto d2 = component(inst, 1);
                  const auto trivial_on = [&](Elem a, const std::vector<Elem>& xs) {
                    for (Elem x : xs) {
                      if (dual_character_value(m, a, x) != Cyclotomic::integer(1)) return false;
                    }
                    return true;
                  };
                  std::map<std::vector<Elem>, std::size_t> count_cache;
                  const auto count_over_phi = [&](const Subgroup& stab) {
                    if (auto it = count_cache.find(stab.elements); it != count_cache.end()) return it->second;
                    const auto emb = as_group(stab);
                    const auto t = dixon_table(conjugacy_classes(emb.group));
                    std::vector<Elem> local;
                    std::map<Elem, Elem> pos;
                    for (std::size_t i = 0; i < emb.to_parent.size(); ++i) pos[emb.to_parent[i]] = static_cast<Elem>(i);
                    for (Elem x : inst.Z.elements) local.push_back(pos.at(x));
                    // irr_over expects phi in the order of the sorted local elements.
                    std::vector<std::pair<Elem, Cyclotomic>> zs;
                    for (std::size_t i = 0; i < local.size(); ++i) zs.emplace_back(local[i], inst.phi[i]);
                    std::sort(zs.begin(), zs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                    std::vector<Elem> zl;
                    std::vector<Cyclotomic> phil;
                    for (auto& [x, v] : zs) {
                      zl.push_back(x);
                      phil.push_back(v);
                    }
                    const auto c = irr_over(t, Subgroup::from_elements(emb.group, zl), phil).size();
                    count_cache.emplace(stab.elements, c);
                    return c;
                  };
                  std::vector<bool> seen(nd, false);
                  std::size_t inflation = 0, both = 0, one = 0;
                  Json bad = nullptr;
                  for (std::size_t a = 0; a < nd; ++a) {
                    if (seen[a]) continue;
                    std::vector<Elem> stab;
                    for (std::size_t e = 0; e < E.order(); ++e) {
                      const Elem b = dual.H[image.index_of[e]](static_cast<Elem>(a));
                      seen[b] = true;
                      if (b == a) stab.push_back(static_cast<Elem>(e));
                    }
                    const auto stab_sub = Subgroup::from_elements(inst.E, stab);
                    const std::size_t c = count_over_phi(stab_sub);
                    const bool t1 = trivial_on(static_cast<Elem>(a), d1);
                    const bool t2 = trivial_on(static_cast<Elem>(a), d2);
                    if (t1 && t2) {
                      inflation += c;
                    } else if (!t1 && !t2) {
                      both += c;
                      if (!(stab_sub == inst.Z) && bad.is_null()) {
                        bad = Json{{"theta", a}, {"stabilizer_order", stab.size()}};
                      }
                    } else {
                      one += c;
                      bool in_f = true;
                      for (Elem e : stab) in_f = in_f && inst.F.contains(e);
                      const auto& comp = t2 ? d1 : d2;
                      if ((!in_f || !(stab_sub == kernel_on(inst, comp))) && bad.is_null()) {
                        bad = Json{{"theta", a}, {"stabilizer_order", stab.size()}, {"inside_F", in_f}};
                      }
                    }
                  }
                  w = Json{{"irr_B", irr_b.size()},
                           {"inflated", inflation},
                           {"both_nontrivial", both},
                           {"one_nontrivial", one}};
                  if (!bad.is_null()) w["stabilizer_mismatch"] = bad;
                  return bad.is_null() && irr_b.size() == inflation + both + one;
                });

  rep.run_check("chi^(+m) = eta induced from Z(E) for chi in Irr(E | phi)",
                "Clifford multiplicity over Z(E)", [&](Json& w) {
                  const auto e_table = dixon_table(conjugacy_classes(inst.E));
                  const auto over = irr_over(e_table, inst.Z, inst.phi);
                  const auto ze = center(inst.E);
                  const auto ze_emb = as_group(ze);
                  const auto ze_conj = conjugacy_classes(ze_emb.group);
                  for (std::size_t r : over) {
                    const auto& chi = e_table.rows[r];
                    const Cyclotomic deg = chi.degree();
                    const Rational inv_deg = 1 / deg.rational_value();
                    std::vector<Cyclotomic> eta_vals;
                    for (Elem y : ze_emb.to_parent) eta_vals.push_back(chi.at(y) * inv_deg);
                    const auto eta = on_elements(ze_emb, ze_conj, eta_vals);
                    // eta is a linear character of Z(E).
                    const auto& zg = *ze_emb.group;
                    for (std::size_t a = 0; a < zg.order(); ++a) {
                      for (std::size_t b = 0; b < zg.order(); ++b) {
                        if (eta_vals[zg.mul(static_cast<Elem>(a), static_cast<Elem>(b))] !=
                            eta_vals[a] * eta_vals[b]) {
                          w = Json{{"chi", r}, {"reason", "restriction is not a multiple of a linear character"}};
                          return false;
                        }
                      }
                    }
                    const auto induced = induce(eta, ze_emb, e_table.conj);
                    const Rational mult = Rational(static_cast<long>(E.order() / ze.size())) * inv_deg;
                    if (!(induced == chi * mult)) {
                      w = Json{{"chi", r}, {"reason", "induced character is not m chi"}};
                      return false;
                    }
                  }
                  w = Json{{"irr_E_over_phi", over.size()}};
                  return true;
                });

  rep.run_check("lambda chi = chi for nontrivial lambda and every chi in Irr(B)",
                "tensoring with lambda fixes Irr(B)", [&](Json& w) {
                  std::size_t pairs = 0;
                  for (std::size_t l : lambdas) {
                    if (l == 0) continue;
                    for (std::size_t c : irr_b) {
                      ++pairs;
                      if (!(tensor(table->rows[l], table->rows[c]) == table->rows[c])) {
                        w = Json{{"lambda", l}, {"chi", c}};
                        return false;
                      }
                    }
                  }
                  w = Json{{"pairs", pairs}};
                  return pairs > 0;
                });

  rep.run_check("distinct lambdas are distinct, nontrivial ones differ from 1_G and vanish on D x| F",
                "nontriviality of lambda", [&](Json& w) {
                  for (std::size_t i = 0; i < lambdas.size(); ++i) {
                    for (std::size_t j = i + 1; j < lambdas.size(); ++j) {
                      if (table->rows[lambdas[i]] == table->rows[lambdas[j]]) {
                        w = Json{{"equal", {lambdas[i], lambdas[j]}}};
                        return false;
                      }
                    }
                    const auto& row = table->rows[lambdas[i]];
                    if (lambdas[i] != 0 && row == table->rows[0]) {
                      w = Json{{"trivial", lambdas[i]}};
                      return false;
                    }
                    for (Elem x : df.elements) {
                      if (row.at(x) != Cyclotomic::integer(1)) {
                        w = Json{{"lambda", lambdas[i]}, {"nontrivial_at", x}};
                        return false;
                      }
                    }
                  }
                  return lambdas.size() >= 2;
                });

  rep.add_label("tensoring with each nontrivial lambda in Irr(G | 1_{D x| F}) is a nontrivial "
                "element of Picent(B)",
                "it fixes Irr(B) pointwise, and distinct linear characters trivial on D x Z give "
                "non-isomorphic trivial-source bimodules");
  rep.timing = Json{{"total_millis", total.millis()}};
  return rep;
}

}  // namespace picent
