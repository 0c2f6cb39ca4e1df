#include <set>

#include "family_util.hpp"
#include "picentlab/coprime.hpp"
#include "picentlab/families.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

// g^i h^j for an element of E = <g> x| <h>.
Json word(const SemidirectView& e_view, Elem e) {
  return Json{{"index", e},
              {"g_power", e_view.normal_part(e)},
              {"h_power", e_view.actor_part(e)}};
}

std::vector<InvariantResult> st_invariants(const STInstance& inst) {
  std::vector<InvariantResult> out;
  const auto& view = inst.view();
  const auto& E = *inst.E;
  const auto& field = *inst.field;
  const std::uint64_t t2 = inst.t * inst.t;

  {
    InvariantResult r{"n is the order of p mod t^2", std::nullopt};
    std::uint64_t k = 1, v = inst.p % t2;
    while (v != 1 % t2) {
      v = v * inst.p % t2;
      ++k;
    }
    if (k != inst.n) r.failure = "least k with t^2 | p^k - 1 is " + std::to_string(k);
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"s = 1 mod t and gcd(s, t) = 1", std::nullopt};
    if (inst.s % inst.t != 1 % inst.t || nt::gcd(inst.s, inst.t) != 1) {
      r.failure = "s = " + std::to_string(inst.s);
    }
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"1 + p^n + ... + p^(n(t-1)) = t mod t^2", std::nullopt};
    const std::uint64_t q = nt::pow_mod(inst.p, inst.n, t2);
    std::uint64_t sum = 0, term = 1 % t2;
    for (std::uint64_t i = 0; i < inst.t; ++i) {
      sum = (sum + term) % t2;
      term = term * q % t2;
    }
    if (sum != inst.t % t2) r.failure = "sum is " + std::to_string(sum) + " mod t^2";
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"h g h^-1 = g^(p^n) in E", std::nullopt};
    const Elem lhs = E.conj(inst.h, inst.g);
    const Elem rhs = E.pow(inst.g, static_cast<std::int64_t>(nt::pow_mod(inst.p, inst.n, inst.s)));
    if (lhs != rhs) r.failure = "h g h^-1 = " + std::to_string(lhs) + ", g^(p^n) = " + std::to_string(rhs);
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"E acts faithfully on D with |E| = s t^2", std::nullopt};
    const auto image = detail::action_image(view);
    if (E.order() != inst.s * t2 || image.autos.size() != E.order()) {
      r.failure = "|E| = " + std::to_string(E.order()) + ", |E / C_E(D)| = " +
                  std::to_string(image.autos.size());
    }
    out.push_back(std::move(r));
  }
  {
    InvariantResult r{"h^t acts as m_{omega_{t^2}}^t", std::nullopt};
    const auto& table = view.action[E.pow(inst.h, static_cast<std::int64_t>(inst.t))];
    const FieldElem scalar = field.pow(inst.omega_t2, inst.t);
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (table[x] != field.mul(scalar, static_cast<FieldElem>(x))) {
        r.failure = "differs at x = " + std::to_string(x);
        break;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::string to_string(STMutation m) {
  switch (m) {
    case STMutation::None: return "none";
    case STMutation::AlteredRelation: return "altered-relation";
    case STMutation::SwappedKernel: return "swapped-kernel";
    case STMutation::WrongPsi: return "wrong-psi";
    case STMutation::PsiFrobenius: return "psi-frobenius";
    case STMutation::PsiInE: return "psi-in-E";
  }
  return "?";
}

std::optional<STMutation> parse_st_mutation(std::string_view name) {
  for (STMutation m : {STMutation::None, STMutation::AlteredRelation, STMutation::SwappedKernel,
                       STMutation::WrongPsi, STMutation::PsiFrobenius, STMutation::PsiInE}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

STInstance build_st(std::uint64_t p, std::uint64_t t, const BuildOptions& options,
                    STMutation mutation) {
  if (!nt::is_prime(p)) throw Error(ErrorCode::BadParameters, "p must be prime");
  if (t <= 1) throw Error(ErrorCode::BadParameters, "t must be greater than 1");
  if (nt::gcd(t, p) != 1) throw Error(ErrorCode::BadParameters, "t must be coprime to p");
  const std::uint64_t t2 = t * t;

  STInstance inst;
  inst.p = p;
  inst.t = t;
  inst.n = nt::multiplicative_order(p % t2, t2);
  inst.mutation = mutation;
  const std::uint64_t nt_deg = inst.n * t;
  const unsigned __int128 q = detail::big_pow(p, nt_deg);
  const unsigned __int128 pn = detail::big_pow(p, inst.n);
  const unsigned __int128 s = (q - 1) / (t * (pn - 1));
  detail::require_order(q * s * t2, options.max_order, "p^(nt) * s * t^2");
  inst.s = static_cast<std::uint64_t>(s);

  inst.field = std::make_shared<const FieldDescriptor>(
      field_make(p, static_cast<unsigned>(nt_deg), options.field_bound));
  const std::uint64_t qq = inst.field->size();
  inst.omega_s = inst.field->gamma_pow(static_cast<std::int64_t>((qq - 1) / inst.s));
  inst.omega_t2 = inst.field->gamma_pow(static_cast<std::int64_t>((qq - 1) / t2));

  const auto pn_mod_s = static_cast<std::uint32_t>(nt::pow_mod(p, inst.n, inst.s));
  GroupSpec e_spec = GroupSpec::semidirect(GroupSpec::cyclic(inst.s), GroupSpec::cyclic(t2),
                                           {ActionEntry{0, explicit_images({pn_mod_s})}});
  std::vector<ActionEntry> d_action;
  if (mutation != STMutation::SwappedKernel) {
    d_action.push_back(ActionEntry{0, field_mult(static_cast<std::int64_t>((qq - 1) / inst.s))});
  }
  if (mutation == STMutation::AlteredRelation) {
    d_action.push_back(ActionEntry{1, frobenius(static_cast<std::int64_t>(inst.n))});
  } else {
    d_action.push_back(ActionEntry{
        1, compose({frobenius(static_cast<std::int64_t>(inst.n)),
                    field_mult(static_cast<std::int64_t>((qq - 1) / t2))})});
  }
  inst.spec = GroupSpec::semidirect(GroupSpec::gf_add(p, static_cast<unsigned>(nt_deg)),
                                    std::move(e_spec), std::move(d_action));
  inst.G = build_group(inst.spec, options);
  const auto& view = inst.view();
  inst.D = view.normal;
  inst.E = view.actor;
  inst.g = 1;
  inst.h = static_cast<Elem>(inst.s);

  const auto& field = *inst.field;
  std::vector<Elem> psi(inst.D->order());
  for (std::size_t x = 0; x < psi.size(); ++x) {
    const auto fx = static_cast<FieldElem>(x);
    switch (mutation) {
      case STMutation::WrongPsi: psi[x] = field.mul(inst.omega_s, fx); break;
      case STMutation::PsiFrobenius:
        psi[x] = field.frobenius(fx, static_cast<std::int64_t>(inst.n));
        break;
      case STMutation::PsiInE: psi[x] = view.action[inst.h][x]; break;
      default: psi[x] = field.mul(inst.omega_t2, fx); break;
    }
  }
  inst.psi = Automorphism{inst.D, psi};
  std::vector<Elem> psi_g(inst.G->order());
  for (std::size_t y = 0; y < psi_g.size(); ++y) {
    const auto e = static_cast<Elem>(y);
    psi_g[y] = view.combine(psi[view.normal_part(e)], view.actor_part(e));
  }
  inst.psi_G = Automorphism{inst.G, std::move(psi_g)};
  inst.invariants = st_invariants(inst);
  return inst;
}

VerificationReport verify_prop42(const STInstance& inst) {
  Stopwatch total;
  VerificationReport rep;
  rep.command = "verify-st";
  rep.params = Json{{"p", inst.p},      {"t", inst.t},
                    {"n", inst.n},      {"s", inst.s},
                    {"order_D", inst.D->order()}, {"order_E", inst.E->order()},
                    {"order_G", inst.G->order()}, {"mutation", to_string(inst.mutation)}};

  const auto& view = inst.view();
  const auto& E = *inst.E;
  const auto& e_view = *E.semidirect();
  const std::size_t nd = inst.D->order();
  const auto& psi = inst.psi;

  detail::invariants_check(rep, "setup: n, s, E and its action", inst.invariants);

  std::optional<Elem> psi_in_e;
  rep.run_check("psi is not the action of an element of E", "psi outside the image of E",
                [&](Json& w) {
                  for (std::size_t e = 0; e < E.order(); ++e) {
                    if (view.action[e] == psi.images) {
                      psi_in_e = static_cast<Elem>(e);
                      w = word(e_view, static_cast<Elem>(e));
                      return false;
                    }
                  }
                  return true;
                });

  // Formula route: c_g^i o c_h^(1+jt)(x) = psi(x) for exactly one (i, j).
  std::vector<bool> by_formula(nd, true);
  rep.run_check("unique (i, j) with c_g^i c_h^(1+jt)(x) = psi(x)", "unique exponent pair",
                [&](Json& w) {
                  std::vector<const std::vector<Elem>*> maps;
                  for (std::uint64_t i = 0; i < inst.s; ++i) {
                    for (std::uint64_t j = 0; j < inst.t; ++j) {
                      const Elem e = E.mul(E.pow(inst.g, static_cast<std::int64_t>(i)),
                                           E.pow(inst.h, static_cast<std::int64_t>(1 + j * inst.t)));
                      maps.push_back(&view.action[e]);
                    }
                  }
                  bool ok = true;
                  for (std::size_t x = 1; x < nd; ++x) {
                    std::size_t count = 0;
                    for (const auto* m : maps) count += (*m)[x] == psi(static_cast<Elem>(x));
                    by_formula[x] = count > 0;
                    if (count != 1 && ok) {
                      ok = false;
                      w = Json{{"x", x}, {"pairs", count}};
                    }
                  }
                  return ok;
                });

  // Orbit route: psi(x) lies in the E-orbit of x, from a scan over generators.
  std::vector<bool> by_orbit(nd, true);
  rep.run_check("psi preserves the E-orbits on D", "psi preserves E-classes of D", [&](Json& w) {
    constexpr std::uint32_t kNone = ~std::uint32_t{0};
    std::vector<std::uint32_t> orbit(nd, kNone);
    std::uint32_t next = 0;
    for (std::size_t x = 0; x < nd; ++x) {
      if (orbit[x] != kNone) continue;
      std::vector<Elem> stack{static_cast<Elem>(x)};
      orbit[x] = next;
      while (!stack.empty()) {
        const Elem y = stack.back();
        stack.pop_back();
        for (Elem gen : E.generators()) {
          const Elem z = view.action[gen][y];
          if (orbit[z] == kNone) {
            orbit[z] = next;
            stack.push_back(z);
          }
        }
      }
      ++next;
    }
    bool ok = true;
    for (std::size_t x = 0; x < nd; ++x) {
      by_orbit[x] = orbit[psi(static_cast<Elem>(x))] == orbit[x];
      if (!by_orbit[x] && ok) {
        ok = false;
        w = Json{{"x", x}, {"psi_x", psi(static_cast<Elem>(x))}};
      }
    }
    return ok;
  });

  rep.run_check("formula and orbit routes agree", "unique exponent pair vs orbit scan",
                [&](Json& w) {
                  for (std::size_t x = 1; x < nd; ++x) {
                    if (by_formula[x] != by_orbit[x]) {
                      w = Json{{"x", x},
                               {"formula", static_cast<bool>(by_formula[x])},
                               {"orbit", static_cast<bool>(by_orbit[x])}};
                      return false;
                    }
                  }
                  return true;
                });

  rep.run_check("C_E(x) = 1 for x in D \\ {1}", "E acts fixed-point-freely on D", [&](Json& w) {
    for (std::size_t e = 1; e < E.order(); ++e) {
      for (std::size_t x = 1; x < nd; ++x) {
        if (view.action[e][x] == x) {
          w = Json{{"e", word(e_view, static_cast<Elem>(e))}, {"x", x}};
          return false;
        }
      }
    }
    return true;
  });

  rep.run_check("E acts fixed-point-freely on Irr(D) \\ {1}", "fixed-point-free dual action",
                [&](Json& w) {
                  const auto image = detail::action_image(view);
                  if (image.autos.size() != E.order()) {
                    w = Json{{"faithful", false}, {"image_order", image.autos.size()}};
                    return false;
                  }
                  const auto m = PGroupModule::make(inst.D, image.autos);
                  const auto dual = dual_action(m);
                  if (!dual.faithful || dual.fixed_nontrivial != 0) {
                    w = Json{{"faithful", dual.faithful},
                             {"fixed_characters", dual.fixed_nontrivial}};
                    if (dual.fixed_witness) w["character"] = *dual.fixed_witness;
                    return false;
                  }
                  return true;
                });

  rep.run_check("psi_G is a class-preserving automorphism of G", "psi_G in Aut_c(G)",
                [&](Json& w) {
                  if (auto err = check_automorphism(inst.psi_G)) {
                    w = Json{{"not_an_automorphism", *err}};
                    return false;
                  }
                  const auto conj = conjugacy_classes(inst.G);
                  for (std::size_t c = 0; c < conj->count(); ++c) {
                    const Elem r = conj->reps[c];
                    if (conj->class_of[inst.psi_G(r)] != c) {
                      w = Json{{"class", c}, {"rep", r}, {"image_class", conj->class_of[inst.psi_G(r)]}};
                      return false;
                    }
                  }
                  w = Json{{"classes", conj->count()}};
                  return is_class_preserving(*conj, inst.psi_G);
                });

  rep.run_check("psi_G is not inner", "psi_G not in Inn(G)", [&](Json& w) {
    if (auto g = find_inner(inst.psi_G)) {
      w = Json{{"conjugating_element", *g}};
      return false;
    }
    return true;
  });

  rep.run_check("Delta(psi) is not G-conjugate to Delta(D)", "vertex distinction via psi outside E",
                [&](Json& w) {
                  w = Json{{"follows_from", "psi is not the action of an element of E"}};
                  if (psi_in_e) w["element_of_E"] = word(e_view, *psi_in_e);
                  return !psi_in_e.has_value();
                });

  rep.add_label("Out_c(G) is nontrivial, witnessed by psi_G",
                "psi_G is class-preserving and not inner");
  rep.add_label("the twisted bimodule of psi_G is a nontrivial element of Picent(OG)",
                "its vertex Delta(psi) is not conjugate to Delta(D), since psi is not the "
                "action of an element of E and D is abelian");
  rep.timing = Json{{"total_millis", total.millis()}};
  return rep;
}

}  // namespace picent
