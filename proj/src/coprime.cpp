#include "picentlab/coprime.hpp"

#include <algorithm>
#include <map>

#include "picentlab/error.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {
namespace {

constexpr Elem kNone = ~Elem{0};

// Closure of gens inside P, abandoned (nullopt) once it exceeds `limit`.
std::optional<std::vector<Elem>> bounded_closure(const FiniteGroup& g, const std::vector<Elem>& gens,
                                                 std::size_t limit) {
  std::vector<std::uint8_t> seen(g.order(), 0);
  std::vector<Elem> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem s : gens) {
      const Elem y = g.mul(out[i], s);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
        if (out.size() > limit) return std::nullopt;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> orbit_images(const PGroupModule& m, Elem x) {
  std::vector<Elem> out;
  for (const auto& h : m.H) out.push_back(h(x));
  return out;
}

std::uint64_t auto_order(const Automorphism& a) {
  std::uint64_t k = 1;
  Automorphism cur = a;
  while (!cur.is_identity()) {
    cur = cur.compose(a);
    ++k;
  }
  return k;
}

std::vector<std::uint64_t> frattini_coords(const PGroupModule& m, Elem x) {
  auto c = m.P->coordinates(x);
  for (auto& v : c) v %= m.p;
  return c;
}

// Splits the H-invariant subgroup Q (sorted elements) into H-invariant
// factors whose Frattini quotients are irreducible. Each step takes a cyclic
// submodule M = <Hx> of smallest size among elements of maximal order; such
// an M is free over Z/p^K and hence a direct summand, and averaging a group
// projection onto M over H yields an invariant complement.
void decompose_into(const PGroupModule& m, std::vector<Elem> q, std::vector<Subgroup>& out) {
  const auto& P = *m.P;
  while (q.size() > 1) {
    std::uint64_t max_order = 1;
    for (Elem x : q) max_order = std::max(max_order, P.element_order(x));

    std::vector<Elem> best;
    for (Elem x : q) {
      if (P.element_order(x) != max_order) continue;
      const std::size_t limit = best.empty() ? q.size() : best.size() - 1;
      if (auto sub = bounded_closure(P, orbit_images(m, x), limit)) best = std::move(*sub);
    }
    if (best.size() == q.size()) {
      out.push_back(Subgroup::from_elements(m.P, q));
      return;
    }

    std::vector<std::uint8_t> in_m(P.order(), 0), in_q(P.order(), 0);
    for (Elem y : best) in_m[y] = 1;
    for (Elem y : q) in_q[y] = 1;

    // Greedy group complement: a maximal subgroup meeting M trivially.
    std::vector<Elem> comp{0};
    std::vector<std::uint8_t> in_c(P.order(), 0);
    in_c[0] = 1;
    for (Elem y : q) {
      if (comp.size() * best.size() == q.size()) break;
      if (in_c[y]) continue;
      std::vector<Elem> grown;
      bool ok = true;
      const std::uint64_t oy = P.element_order(y);
      for (Elem c : comp) {
        Elem cur = c;
        for (std::uint64_t k = 0; k < oy; ++k) {
          if (cur != 0 && in_m[cur]) ok = false;
          grown.push_back(cur);
          cur = P.mul(cur, y);
        }
        if (!ok) break;
      }
      if (!ok) continue;
      std::sort(grown.begin(), grown.end());
      grown.erase(std::unique(grown.begin(), grown.end()), grown.end());
      comp = std::move(grown);
      std::fill(in_c.begin(), in_c.end(), 0);
      for (Elem c : comp) in_c[c] = 1;
    }
    if (comp.size() * best.size() != q.size()) {
      throw Error(ErrorCode::PreconditionFailed, "no group complement to a cyclic summand");
    }

    std::vector<Elem> proj(P.order(), kNone);
    for (Elem a : best) {
      for (Elem c : comp) proj[P.mul(a, c)] = a;
    }
    std::vector<Automorphism> inverses;
    for (const auto& h : m.H) inverses.push_back(h.inverse());
    const std::uint64_t u = nt::inv_mod(m.H.size() % max_order, max_order);
    std::vector<Elem> kernel;
    for (Elem y : q) {
      Elem acc = 0;
      for (std::size_t i = 0; i < m.H.size(); ++i) acc = P.mul(acc, m.H[i](proj[inverses[i](y)]));
      const Elem image = P.pow(acc, static_cast<std::int64_t>(u));
      if (!in_m[image]) throw Error(ErrorCode::PreconditionFailed, "averaged projection escapes M");
      if (in_m[y] && image != y) {
        throw Error(ErrorCode::PreconditionFailed, "averaged projection is not the identity on M");
      }
      if (image == 0) kernel.push_back(y);
    }
    if (kernel.size() * best.size() != q.size()) {
      throw Error(ErrorCode::PreconditionFailed, "averaged projection has wrong kernel");
    }
    out.push_back(Subgroup::from_elements(m.P, std::move(best)));
    q = std::move(kernel);
  }
}

// Module on P / Phi(P) realized as an elementary abelian group.
PGroupModule frattini_module(const PGroupModule& m) {
  const auto fa = frattini_action(m);
  auto v = build_group(GroupSpec::abelian_p(m.p, std::vector<unsigned>(fa.dim, 1)));
  std::vector<Automorphism> gens;
  for (const auto& mat : fa.matrices) {
    Automorphism a{v, std::vector<Elem>(v->order())};
    for (std::size_t x = 0; x < v->order(); ++x) {
      const auto image = mat.apply(v->coordinates(static_cast<Elem>(x)));
      a.images[x] = v->from_coordinates(image);
    }
    gens.push_back(std::move(a));
  }
  return PGroupModule::generated(v, gens);
}

std::optional<std::string> verify_decomposition(const PGroupModule& m,
                                                const std::vector<Subgroup>& factors) {
  const auto& P = *m.P;
  std::size_t product = 1;
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    for (std::size_t h = 0; h < m.H.size(); ++h) {
      for (Elem x : f.elements) {
        if (!f.contains(m.H[h](x))) {
          return "factor " + std::to_string(i) + " is not invariant under H[" + std::to_string(h) +
                 "] at element " + std::to_string(x);
        }
      }
    }
    product *= f.size();
    const auto fg = subgroup_generators(f);
    gens.insert(gens.end(), fg.begin(), fg.end());
  }
  if (product != P.order()) return "factor orders multiply to " + std::to_string(product);
  if (generate_subgroup(m.P, gens).size() != P.order()) return std::string("factors do not generate P");
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (!frattini_irreducible(m, factors[i])) {
      return "Frattini quotient of factor " + std::to_string(i) + " is reducible";
    }
  }
  return std::nullopt;
}

}  // namespace

PGroupModule PGroupModule::make(GroupPtr P, std::vector<Automorphism> H) {
  const auto* moduli = P->abelian_moduli();
  if (moduli == nullptr) throw Error(ErrorCode::BadParameters, "P needs exponent coordinates");
  std::uint64_t p = 0;
  for (std::uint64_t mod : *moduli) {
    std::uint64_t prime = 0;
    if (!nt::is_prime_power(mod, &prime) || (p != 0 && prime != p)) {
      throw Error(ErrorCode::BadParameters, "P is not a p-group in coordinates");
    }
    p = prime;
  }
  if (p == 0) throw Error(ErrorCode::BadParameters, "P must be nontrivial");
  std::map<std::vector<Elem>, std::size_t> index;
  for (std::size_t i = 0; i < H.size(); ++i) {
    if (H[i].group != P) throw Error(ErrorCode::BadParameters, "automorphism of another group");
    if (!index.emplace(H[i].images, i).second) {
      throw Error(ErrorCode::BadParameters, "H lists an automorphism twice");
    }
  }
  const auto id = identity_automorphism(P);
  auto it = index.find(id.images);
  if (it == index.end()) throw Error(ErrorCode::BadParameters, "H does not contain the identity");
  std::swap(H[0], H[it->second]);
  for (const auto& a : H) {
    for (const auto& b : H) {
      if (!index.count(a.compose(b).images)) {
        throw Error(ErrorCode::BadParameters, "H is not closed under composition");
      }
    }
  }
  PGroupModule m;
  m.P = std::move(P);
  m.p = p;
  m.H = std::move(H);
  return m;
}

PGroupModule PGroupModule::generated(GroupPtr P, const std::vector<Automorphism>& gens) {
  std::vector<Automorphism> elems{identity_automorphism(P)};
  std::map<std::vector<Elem>, bool> seen{{elems[0].images, true}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      auto next = elems[i].compose(g);
      if (seen.emplace(next.images, true).second) elems.push_back(std::move(next));
    }
  }
  return make(std::move(P), std::move(elems));
}

bool PGroupModule::coprime() const { return nt::gcd(H.size(), p) == 1; }

void PGroupModule::require_coprime() const {
  if (!coprime()) {
    throw Error(ErrorCode::NotCoprime, "|H| = " + std::to_string(H.size()) +
                                           " is divisible by p = " + std::to_string(p));
  }
}

unsigned PGroupModule::exponent_log() const {
  unsigned best = 0;
  for (std::uint64_t mod : *P->abelian_moduli()) {
    unsigned k = 0;
    for (std::uint64_t v = mod; v > 1; v /= p) ++k;
    best = std::max(best, k);
  }
  return best;
}

FixedCommutator fixed_and_commutator(const PGroupModule& m) {
  m.require_coprime();
  const auto& P = *m.P;
  std::vector<Elem> fixed;
  for (std::size_t x = 0; x < P.order(); ++x) {
    bool ok = true;
    for (const auto& h : m.H) ok = ok && h(static_cast<Elem>(x)) == x;
    if (ok) fixed.push_back(static_cast<Elem>(x));
  }
  std::vector<Elem> gens;
  for (Elem x : P.generators()) {
    for (const auto& h : m.H) gens.push_back(P.mul(P.inv(x), h(x)));
  }
  FixedCommutator out{Subgroup::from_elements(m.P, std::move(fixed)),
                      generate_subgroup(m.P, gens), false};
  out.direct = intersect(out.fixed, out.commutator).size() == 1 &&
               out.fixed.size() * out.commutator.size() == P.order();
  return out;
}

FrattiniAction frattini_action(const PGroupModule& m) {
  const auto& P = *m.P;
  const auto& moduli = *P.abelian_moduli();
  FrattiniAction out;
  out.dim = moduli.size();
  std::vector<Elem> units;
  for (std::size_t j = 0; j < out.dim; ++j) {
    std::vector<std::uint64_t> e(out.dim, 0);
    e[j] = 1;
    units.push_back(P.from_coordinates(e));
  }
  for (const auto& h : m.H) {
    FpMatrix mat(out.dim, out.dim, m.p);
    for (std::size_t j = 0; j < out.dim; ++j) {
      const auto c = frattini_coords(m, h(units[j]));
      for (std::size_t i = 0; i < out.dim; ++i) mat.at(i, j) = c[i];
    }
    out.matrices.push_back(std::move(mat));
  }
  for (std::size_t a = 0; a < out.matrices.size(); ++a) {
    for (std::size_t b = a + 1; b < out.matrices.size(); ++b) {
      if (out.matrices[a] == out.matrices[b]) {
        throw Error(ErrorCode::InjectivityFailure,
                    "H[" + std::to_string(a) + "] and H[" + std::to_string(b) +
                        "] induce the same map on P/Phi(P)");
      }
    }
  }
  m.require_coprime();
  return out;
}

bool frattini_irreducible(const PGroupModule& m, const Subgroup& factor) {
  const auto fa = frattini_action(m);
  std::vector<std::vector<std::uint64_t>> images;
  for (Elem x : subgroup_generators(factor)) images.push_back(frattini_coords(m, x));
  const auto w = FpSubspace::span(images, fa.dim, m.p);
  const std::size_t d = w.dim();
  if (d == 0) return false;
  const std::uint64_t total = nt::checked_pow(m.p, d, ~0ull);
  for (std::uint64_t code = 1; code < total; ++code) {
    std::vector<std::uint64_t> v(fa.dim, 0);
    std::uint64_t c = code;
    for (std::size_t r = 0; r < d; ++r) {
      const std::uint64_t coef = c % m.p;
      c /= m.p;
      for (std::size_t j = 0; j < fa.dim; ++j) v[j] = (v[j] + coef * w.basis()[r][j]) % m.p;
    }
    std::vector<std::vector<std::uint64_t>> orbit;
    for (const auto& mat : fa.matrices) orbit.push_back(mat.apply(v));
    if (FpSubspace::span(orbit, fa.dim, m.p).dim() != d) return false;
  }
  return true;
}

Decomposition indecomposable_decomposition(const PGroupModule& m) {
  m.require_coprime();
  Decomposition out;
  std::vector<Elem> all(m.P->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
  decompose_into(m, std::move(all), out.factors);
  out.failure = verify_decomposition(m, out.factors);
  const auto v = frattini_module(m);
  std::vector<Subgroup> vf;
  std::vector<Elem> vall(v.P->order());
  for (std::size_t i = 0; i < vall.size(); ++i) vall[i] = static_cast<Elem>(i);
  decompose_into(v, std::move(vall), vf);
  out.frattini_summands = vf.size();
  if (!out.failure && out.frattini_summands != out.factors.size()) {
    out.failure = "P has " + std::to_string(out.factors.size()) + " factors but P/Phi(P) has " +
                  std::to_string(out.frattini_summands) + " irreducible summands";
  }
  return out;
}

Cyclotomic dual_character_value(const PGroupModule& m, Elem a, Elem x) {
  const auto& moduli = *m.P->abelian_moduli();
  const std::uint64_t big = nt::checked_pow(m.p, m.exponent_log(), ~0ull);
  const auto ca = m.P->coordinates(a);
  const auto cx = m.P->coordinates(x);
  std::uint64_t e = 0;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    e = (e + nt::mul_mod(ca[i] * cx[i] % moduli[i], big / moduli[i], big)) % big;
  }
  return Cyclotomic::root(big, static_cast<std::int64_t>(e));
}

namespace {

std::vector<Elem> dual_permutation(const PGroupModule& m, const Automorphism& h) {
  const auto& P = *m.P;
  const auto& moduli = *P.abelian_moduli();
  const std::size_t r = moduli.size();
  const std::uint64_t big = nt::checked_pow(m.p, m.exponent_log(), ~0ull);
  const auto hinv = h.inverse();
  // cols[j] = coordinates of h^-1(e_j).
  std::vector<std::vector<std::uint64_t>> cols;
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<std::uint64_t> e(r, 0);
    e[j] = 1;
    cols.push_back(P.coordinates(hinv(P.from_coordinates(e))));
  }
  std::vector<Elem> perm(P.order());
  for (std::size_t a = 0; a < P.order(); ++a) {
    const auto ca = P.coordinates(static_cast<Elem>(a));
    std::vector<std::uint64_t> b(r);
    for (std::size_t j = 0; j < r; ++j) {
      std::uint64_t num = 0;
      for (std::size_t i = 0; i < r; ++i) {
        num = (num + nt::mul_mod(ca[i] * cols[j][i] % moduli[i], big / moduli[i], big)) % big;
      }
      const std::uint64_t scale = big / moduli[j];
      if (num % scale != 0) throw Error(ErrorCode::PreconditionFailed, "dual map not integral");
      b[j] = (num / scale) % moduli[j];
    }
    perm[a] = P.from_coordinates(b);
  }
  return perm;
}

// lambda_a is trivial on the subgroup generated by gens.
bool trivial_on(const PGroupModule& m, Elem a, const std::vector<Elem>& gens) {
  for (Elem y : gens) {
    if (dual_character_value(m, a, y) != Cyclotomic::integer(1)) return false;
  }
  return true;
}

}  // namespace

PGroupModule dual_module(const PGroupModule& m) {
  std::vector<Automorphism> hs;
  for (const auto& h : m.H) hs.push_back(Automorphism{m.P, dual_permutation(m, h)});
  return PGroupModule::make(m.P, std::move(hs));
}

DualAction dual_action(const PGroupModule& m) {
  m.require_coprime();
  DualAction out;
  for (const auto& h : m.H) out.perms.push_back(dual_permutation(m, h));
  out.faithful = true;
  for (std::size_t a = 0; a < out.perms.size(); ++a) {
    for (std::size_t b = a + 1; b < out.perms.size(); ++b) {
      if (out.perms[a] == out.perms[b]) out.faithful = false;
    }
  }
  for (std::size_t a = 1; a < m.P->order(); ++a) {
    for (std::size_t h = 1; h < out.perms.size(); ++h) {
      if (out.perms[h][a] == a) {
        if (!out.fixed_witness) out.fixed_witness = static_cast<Elem>(a);
        ++out.fixed_nontrivial;
        break;
      }
    }
  }

  // Irr(P, 1 on the other factors) for each factor of P.
  const auto dec = indecomposable_decomposition(m);
  std::size_t product = 1;
  for (std::size_t i = 0; i < dec.factors.size(); ++i) {
    std::vector<Elem> others;
    for (std::size_t j = 0; j < dec.factors.size(); ++j) {
      if (j == i) continue;
      const auto g = subgroup_generators(dec.factors[j]);
      others.insert(others.end(), g.begin(), g.end());
    }
    std::vector<Elem> xi;
    for (std::size_t a = 0; a < m.P->order(); ++a) {
      if (trivial_on(m, static_cast<Elem>(a), others)) xi.push_back(static_cast<Elem>(a));
    }
    if (xi.size() != dec.factors[i].size() && !out.correspondence_failure) {
      out.correspondence_failure = "character factor " + std::to_string(i) + " has " +
                                   std::to_string(xi.size()) + " elements";
    }
    const auto sub = Subgroup::from_elements(m.P, xi);
    for (const auto& perm : out.perms) {
      for (Elem a : xi) {
        if (!sub.contains(perm[a]) && !out.correspondence_failure) {
          out.correspondence_failure =
              "character factor " + std::to_string(i) + " is not H-invariant at " + std::to_string(a);
        }
      }
    }
    product *= xi.size();
  }
  if (product != m.P->order() && !out.correspondence_failure) {
    out.correspondence_failure = std::string("character factors do not multiply to |Irr(P)|");
  }
  const auto dual = dual_module(m);
  out.dual_factors = indecomposable_decomposition(dual).factors.size();
  if (out.dual_factors != dec.factors.size() && !out.correspondence_failure) {
    out.correspondence_failure = "Irr(P) has " + std::to_string(out.dual_factors) +
                                 " factors but P has " + std::to_string(dec.factors.size());
  }
  return out;
}

IndecomposableReport indecomposable_consequences(const PGroupModule& m) {
  const auto dec = indecomposable_decomposition(m);
  if (dec.factors.size() != 1) {
    throw Error(ErrorCode::NotIndecomposable,
                "P splits into " + std::to_string(dec.factors.size()) + " invariant factors");
  }
  IndecomposableReport out;
  for (std::size_t i = 0; i < m.H.size(); ++i) {
    if (auto_order(m.H[i]) == m.H.size()) {
      out.cyclic = true;
      out.generator = i;
      break;
    }
  }
  out.fixed_point_free = true;
  for (std::size_t i = 1; i < m.H.size() && out.fixed_point_free; ++i) {
    for (std::size_t x = 1; x < m.P->order(); ++x) {
      if (m.H[i](static_cast<Elem>(x)) == x) {
        out.fixed_point_free = false;
        out.witness = std::make_pair(i, static_cast<Elem>(x));
        break;
      }
    }
  }
  return out;
}

std::string Refutation::describe() const {
  switch (kind) {
    case Kind::NonCommuting:
      return "psi does not commute with H[" + std::to_string(h) + "] at x = " + std::to_string(x);
    case Kind::Unmatched:
      return "no element of H agrees with psi at x = " + std::to_string(x);
    case Kind::Counterexample:
      return "preconditions hold but psi is not in H; differs from H[" + std::to_string(h) +
             "] at x = " + std::to_string(x);
  }
  return {};
}

Recognition recognize_in_H(const PGroupModule& m, const Automorphism& psi) {
  m.require_coprime();
  const std::size_t n = m.P->order();
  Recognition out;
  for (std::size_t i = 0; i < m.H.size(); ++i) {
    for (std::size_t x = 0; x < n; ++x) {
      const auto e = static_cast<Elem>(x);
      if (psi(m.H[i](e)) != m.H[i](psi(e))) {
        out.refutation = Refutation{Refutation::Kind::NonCommuting, i, e};
        return out;
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Elem>(x);
    bool matched = false;
    for (const auto& h : m.H) matched = matched || h(e) == psi(e);
    if (!matched) {
      out.refutation = Refutation{Refutation::Kind::Unmatched, 0, e};
      return out;
    }
  }
  for (std::size_t i = 0; i < m.H.size(); ++i) {
    if (m.H[i] == psi) {
      out.h = i;
      return out;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (psi(static_cast<Elem>(x)) != m.H[0](static_cast<Elem>(x))) {
      out.refutation = Refutation{Refutation::Kind::Counterexample, 0, static_cast<Elem>(x)};
      break;
    }
  }
  return out;
}

Selection codim_one_selection(const SubspaceFamily& fam) {
  const std::size_t n = fam.n;
  const std::uint64_t q = fam.ell;
  if (!nt::is_prime(q)) throw Error(ErrorCode::BadFamily, "field size must be prime");
  std::vector<std::vector<std::uint64_t>> functionals;
  for (std::size_t i = 0; i < fam.subspaces.size(); ++i) {
    for (const auto& v : fam.subspaces[i]) {
      if (v.size() != n) throw Error(ErrorCode::BadFamily, "vector of wrong length in V_" + std::to_string(i));
    }
    const auto null = FpMatrix::from_rows(fam.subspaces[i], n, q).nullspace();
    if (null.size() != 1) {
      throw Error(ErrorCode::BadFamily,
                  "V_" + std::to_string(i) + " has codimension " + std::to_string(null.size()));
    }
    functionals.push_back(null[0]);
  }
  if (n > 0 && FpMatrix::from_rows(functionals, n, q).rank() != n) {
    throw Error(ErrorCode::BadFamily, "the subspaces meet in a nonzero subspace");
  }
  Selection sel;
  std::vector<std::vector<std::uint64_t>> chosen;
  for (std::size_t i = 0; i < functionals.size() && chosen.size() < n; ++i) {
    auto trial = chosen;
    trial.push_back(functionals[i]);
    if (FpMatrix::from_rows(trial, n, q).rank() > chosen.size()) {
      chosen = std::move(trial);
      sel.indices.push_back(i);
    }
  }
  for (std::size_t l = 0; l < n; ++l) {
    std::vector<std::vector<std::uint64_t>> rest;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != l) rest.push_back(chosen[j]);
    }
    const auto line = FpMatrix::from_rows(rest, n, q).nullspace();
    if (line.size() != 1) throw Error(ErrorCode::BadFamily, "U_" + std::to_string(l) + " is not a line");
    sel.lines.push_back(line[0]);
  }
  return sel;
}

std::optional<std::string> check_selection(const SubspaceFamily& fam, const Selection& sel) {
  const std::size_t n = fam.n;
  const std::uint64_t q = fam.ell;
  if (sel.indices.size() != n || sel.lines.size() != n) return std::string("selection has wrong size");
  // Running intersections strictly decrease.
  FpSubspace running = FpSubspace::whole(n, q);
  for (std::size_t j = 0; j < n; ++j) {
    auto next = running.intersect(FpSubspace::span(fam.subspaces[sel.indices[j]], n, q));
    if (next.dim() + 1 != running.dim()) {
      return "intersection does not drop at step " + std::to_string(j);
    }
    running = std::move(next);
  }
  if (FpMatrix::from_rows(sel.lines, n, q).rank() != n) return std::string("lines are dependent");
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == l) continue;
      if (!FpSubspace::span(fam.subspaces[sel.indices[j]], n, q).contains(sel.lines[l])) {
        return "U_" + std::to_string(l) + " is not inside V_" + std::to_string(sel.indices[j]);
      }
    }
  }
  return std::nullopt;
}

ExtensionReport extension_stability(const GroupPtr& G, const Embedding& n_emb,
                                    const ClassFunction& chi, const Subgroup& L,
                                    std::uint64_t ell) {
  const auto& g = *G;
  const auto fail = [](const std::string& what) {
    return Error(ErrorCode::HypothesisFailed, what);
  };
  if (n_emb.parent != G || L.parent != G || chi.group() != n_emb.group) {
    throw fail("N, L and chi must live in G");
  }
  const auto n_sub = n_emb.image();
  if (!is_normal(n_sub)) throw fail("N is not normal in G");
  for (Elem x : n_sub.elements) {
    if (!L.contains(x)) throw fail("N is not contained in L (element " + std::to_string(x) + ")");
  }
  const auto& gens = g.generators();
  for (Elem a : gens) {
    for (Elem b : gens) {
      if (!n_sub.contains(g.commutator(a, b))) {
        throw fail("G/N is not abelian: generators " + std::to_string(a) + ", " +
                   std::to_string(b) + " do not commute modulo N");
      }
    }
  }
  if (!nt::is_prime(ell)) throw fail("ell is not prime");
  const std::size_t index = L.size() / n_sub.size();
  std::uint64_t rest = index;
  while (rest % ell == 0) rest /= ell;
  if (rest != 1) throw fail("[L:N] = " + std::to_string(index) + " is not a power of ell");
  bool cyclic = index == 1;
  for (Elem x : L.elements) {
    if (cyclic) break;
    std::size_t k = 1;
    Elem cur = x;
    while (!n_sub.contains(cur)) {
      cur = g.mul(cur, x);
      ++k;
    }
    cyclic = k == index;
  }
  if (!cyclic) throw fail("L/N is not cyclic");
  if ((g.order() / L.size()) % ell == 0) throw fail("ell divides [G:L]");

  // chi is G-stable: chi(s^-1 n s) = chi(n) for generators s.
  const auto& nconj = *chi.conj;
  std::vector<Elem> to_local(g.order(), kNone);
  for (std::size_t i = 0; i < n_emb.to_parent.size(); ++i) to_local[n_emb.to_parent[i]] = static_cast<Elem>(i);
  for (Elem s : gens) {
    for (std::size_t c = 0; c < nconj.count(); ++c) {
      const Elem n = n_emb.to_parent[nconj.reps[c]];
      const Elem moved = to_local[g.conj(g.inv(s), n)];
      if (chi.values[nconj.class_of[moved]] != chi.values[c]) {
        throw fail("chi is not G-stable: generator " + std::to_string(s) + " moves class " +
                   std::to_string(c));
      }
    }
  }

  const auto l_emb = as_group(L);
  const auto l_conj = conjugacy_classes(l_emb.group);
  const auto l_table = dixon_table(l_conj);
  std::vector<Elem> l_local(g.order(), kNone);
  for (std::size_t i = 0; i < l_emb.to_parent.size(); ++i) l_local[l_emb.to_parent[i]] = static_cast<Elem>(i);

  ExtensionReport out;
  out.index = index;
  for (std::size_t r = 0; r < l_table.rows.size(); ++r) {
    const auto& psi = l_table.rows[r];
    if (psi.degree() != chi.degree()) continue;
    bool restricts = true;
    for (std::size_t c = 0; c < nconj.count() && restricts; ++c) {
      restricts = psi.at(l_local[n_emb.to_parent[nconj.reps[c]]]) == chi.values[c];
    }
    if (restricts) out.extensions.push_back(r);
  }
  out.all_stable = true;
  for (std::size_t r : out.extensions) {
    const auto& psi = l_table.rows[r];
    for (Elem s : gens) {
      for (std::size_t c = 0; c < l_conj->count() && out.all_stable; ++c) {
        const Elem y = l_emb.to_parent[l_conj->reps[c]];
        const Elem moved = l_local[g.conj(g.inv(s), y)];
        if (psi.at(moved) != psi.values[c]) {
          out.all_stable = false;
          out.unstable_witness = "extension row " + std::to_string(r) + " moved by generator " +
                                 std::to_string(s) + " at class " + std::to_string(c);
        }
      }
    }
  }
  return out;
}

Automorphism coordinate_automorphism(const GroupPtr& P,
                                     const std::vector<std::vector<std::int64_t>>& matrix) {
  return Automorphism{P, automorphism_table(*P, exponent_matrix(matrix))};
}

}  // namespace picent
