#include "picentlab/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "picentlab/error.hpp"
#include "picentlab/field.hpp"
#include "picentlab/numtheory.hpp"

namespace picent {

namespace {

constexpr Elem kUnset = ~Elem{0};

std::uint64_t permutation_closure_size(const PermutationSpec& spec, std::uint64_t limit) {
  std::map<std::vector<std::uint32_t>, bool> seen;
  std::vector<std::uint32_t> id(spec.degree);
  for (std::size_t i = 0; i < spec.degree; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::deque<std::vector<std::uint32_t>> queue{id};
  seen[id] = true;
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : spec.generators) {
      std::vector<std::uint32_t> next(spec.degree);
      for (std::size_t i = 0; i < spec.degree; ++i) next[i] = cur[g[i]];
      if (seen.emplace(next, true).second) {
        if (seen.size() > limit) return 0;
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

// Closure of gens under right multiplication, as a sorted element list.
std::vector<Elem> closure(const FiniteGroup& group, std::span<const Elem> gens) {
  std::vector<std::uint8_t> seen(group.order(), 0);
  std::vector<Elem> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem g : gens) {
      const Elem y = group.mul(out[i], g);
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t spec_order(const GroupSpec& spec, std::uint64_t limit) {
  return std::visit(
      [&](const auto& node) -> std::uint64_t {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, CyclicSpec>) {
          return node.order <= limit ? node.order : 0;
        } else if constexpr (std::is_same_v<T, AbelianPSpec>) {
          std::uint64_t total = 0;
          for (unsigned k : node.exponents) total += k;
          return nt::checked_pow(node.p, total, limit);
        } else if constexpr (std::is_same_v<T, GFAddSpec>) {
          return nt::checked_pow(node.p, node.n, limit);
        } else if constexpr (std::is_same_v<T, DirectSpec>) {
          std::uint64_t total = 1;
          for (const auto& f : node.factors) {
            const std::uint64_t o = spec_order(f, limit);
            if (o == 0 || total > limit / o) return 0;
            total *= o;
          }
          return total;
        } else if constexpr (std::is_same_v<T, SemidirectSpec>) {
          const std::uint64_t a = spec_order(*node.normal, limit);
          const std::uint64_t b = spec_order(*node.actor, limit);
          if (a == 0 || b == 0 || a > limit / b) return 0;
          return a * b;
        } else {
          return permutation_closure_size(node, limit);
        }
      },
      spec.node);
}

Elem SemidirectView::combine(Elem n, Elem a) const {
  return static_cast<Elem>(static_cast<std::uint64_t>(a) * normal->order() + n);
}
Elem SemidirectView::normal_part(Elem g) const {
  return static_cast<Elem>(g % normal->order());
}
Elem SemidirectView::actor_part(Elem g) const {
  return static_cast<Elem>(g / normal->order());
}

Elem FiniteGroup::structural_mul(Elem a, Elem b) const {
  if (const auto* ab = std::get_if<AbelianData>(&node_)) {
    std::uint64_t x = a, y = b, out = 0, scale = 1;
    for (std::uint64_t m : ab->moduli) {
      out += ((x % m + y % m) % m) * scale;
      x /= m;
      y /= m;
      scale *= m;
    }
    return static_cast<Elem>(out);
  }
  if (const auto* d = std::get_if<DirectData>(&node_)) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < d->factors.size(); ++i) {
      const auto& f = *d->factors[i];
      const std::uint64_t s = d->strides[i];
      const auto fa = static_cast<Elem>((a / s) % f.order());
      const auto fb = static_cast<Elem>((b / s) % f.order());
      out += static_cast<std::uint64_t>(f.mul(fa, fb)) * s;
    }
    return static_cast<Elem>(out);
  }
  const auto& sd = std::get<SemidirectView>(node_);
  const Elem n1 = sd.normal_part(a), a1 = sd.actor_part(a);
  const Elem n2 = sd.normal_part(b), a2 = sd.actor_part(b);
  return sd.combine(sd.normal->mul(n1, sd.action[a1][n2]), sd.actor->mul(a1, a2));
}

void FiniteGroup::finalize(const BuildOptions& options) {
  inverse_.assign(order_, 0);
  if (std::holds_alternative<TableData>(node_)) {
    for (std::size_t a = 0; a < order_; ++a) {
      for (std::size_t b = 0; b < order_; ++b) {
        if (table_[a * order_ + b] == 0) {
          inverse_[a] = static_cast<Elem>(b);
          break;
        }
      }
    }
  } else if (const auto* ab = std::get_if<AbelianData>(&node_)) {
    for (std::size_t a = 0; a < order_; ++a) {
      std::uint64_t x = a, out = 0, scale = 1;
      for (std::uint64_t m : ab->moduli) {
        out += ((m - x % m) % m) * scale;
        x /= m;
        scale *= m;
      }
      inverse_[a] = static_cast<Elem>(out);
    }
  } else if (const auto* d = std::get_if<DirectData>(&node_)) {
    for (std::size_t a = 0; a < order_; ++a) {
      std::uint64_t out = 0;
      for (std::size_t i = 0; i < d->factors.size(); ++i) {
        const auto& f = *d->factors[i];
        const std::uint64_t s = d->strides[i];
        out += static_cast<std::uint64_t>(f.inv(static_cast<Elem>((a / s) % f.order()))) * s;
      }
      inverse_[a] = static_cast<Elem>(out);
    }
  } else {
    const auto& sd = std::get<SemidirectView>(node_);
    for (std::size_t g = 0; g < order_; ++g) {
      const Elem n = sd.normal_part(static_cast<Elem>(g));
      const Elem ainv = sd.actor->inv(sd.actor_part(static_cast<Elem>(g)));
      inverse_[g] = sd.combine(sd.action[ainv][sd.normal->inv(n)], ainv);
    }
  }
  if (table_.empty() && order_ <= options.memo_threshold) {
    std::vector<Elem> table(order_ * order_);
    for (std::size_t a = 0; a < order_; ++a) {
      for (std::size_t b = 0; b < order_; ++b) {
        table[a * order_ + b] = structural_mul(static_cast<Elem>(a), static_cast<Elem>(b));
      }
    }
    table_ = std::move(table);
  }
  exponent_ = 1;
  for (std::size_t a = 0; a < order_; ++a) {
    exponent_ = nt::lcm(exponent_, element_order(static_cast<Elem>(a)));
  }
}

Elem FiniteGroup::pow(Elem a, std::int64_t k) const {
  Elem base = k < 0 ? inv(a) : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Elem result = 0;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint64_t FiniteGroup::element_order(Elem a) const {
  std::uint64_t k = 1;
  Elem cur = a;
  while (cur != 0) {
    cur = mul(cur, a);
    ++k;
  }
  return k;
}

std::uint64_t FiniteGroup::exponent() const { return exponent_; }

std::vector<std::uint64_t> FiniteGroup::coordinates(Elem a) const {
  if (const auto* ab = std::get_if<AbelianData>(&node_)) {
    std::vector<std::uint64_t> out;
    std::uint64_t x = a;
    for (std::uint64_t m : ab->moduli) {
      out.push_back(x % m);
      x /= m;
    }
    return out;
  }
  if (const auto* d = std::get_if<DirectData>(&node_)) {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < d->factors.size(); ++i) {
      const auto& f = *d->factors[i];
      const auto sub = f.coordinates(static_cast<Elem>((a / d->strides[i]) % f.order()));
      out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
  }
  if (const auto* sd = std::get_if<SemidirectView>(&node_)) {
    auto out = sd->normal->coordinates(sd->normal_part(a));
    const auto rest = sd->actor->coordinates(sd->actor_part(a));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  return {a};
}

Elem FiniteGroup::from_coordinates(const std::vector<std::uint64_t>& coords) const {
  if (!moduli_) throw Error(ErrorCode::BadParameters, "group has no exponent coordinates");
  std::uint64_t out = 0, scale = 1;
  for (std::size_t i = 0; i < moduli_->size(); ++i) {
    const std::uint64_t m = (*moduli_)[i];
    out += (coords[i] % m) * scale;
    scale *= m;
  }
  return static_cast<Elem>(out);
}

bool FiniteGroup::is_abelian() const {
  for (Elem a : generators_) {
    for (Elem b : generators_) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

GroupPtr FiniteGroup::from_table(std::vector<Elem> table, std::size_t order,
                                 std::vector<Elem> generators) {
  auto g = std::make_shared<FiniteGroup>();
  g->order_ = order;
  g->node_ = TableData{};
  g->table_ = std::move(table);
  g->generators_ = std::move(generators);
  g->finalize(BuildOptions{});
  return g;
}

std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& source,
                                                     const FiniteGroup& target,
                                                     std::span<const Elem> images) {
  return extend_homomorphism(source, source.generators(), target, images);
}

std::optional<std::vector<Elem>> extend_homomorphism(const FiniteGroup& source,
                                                     std::span<const Elem> gens,
                                                     const FiniteGroup& target,
                                                     std::span<const Elem> images) {
  if (images.size() != gens.size()) return std::nullopt;
  std::vector<Elem> map(source.order(), kUnset);
  map[0] = 0;
  std::vector<Elem> queue{0};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const Elem x = queue[i];
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const Elem y = source.mul(x, gens[j]);
      const Elem cand = target.mul(map[x], images[j]);
      if (map[y] == kUnset) {
        map[y] = cand;
        queue.push_back(y);
      } else if (map[y] != cand) {
        return std::nullopt;
      }
    }
  }
  if (queue.size() != source.order()) return std::nullopt;
  return map;
}

bool is_bijection(std::span<const Elem> images) {
  std::vector<std::uint8_t> hit(images.size(), 0);
  for (Elem x : images) {
    if (x >= images.size() || hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

class GroupBuilder {
 public:
  explicit GroupBuilder(const BuildOptions& options) : options_(options) {}

  std::vector<Elem> resolve_public(const AutoDescriptor& desc, const FiniteGroup& normal,
                                   std::size_t gen) {
    return resolve(desc, normal, gen);
  }

  GroupPtr build(const GroupSpec& spec) {
    auto group = std::make_shared<FiniteGroup>();
    group->spec_ = std::make_shared<const GroupSpec>(spec);
    std::visit([&](const auto& node) { fill(*group, node); }, spec.node);
    group->finalize(options_);
    return group;
  }

 private:
  static void require_prime(std::uint64_t p) {
    if (!nt::is_prime(p)) {
      throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    }
  }

  static void fill_abelian(FiniteGroup& g, std::vector<std::uint64_t> moduli) {
    std::uint64_t order = 1, scale = 1;
    for (std::uint64_t m : moduli) order *= m;
    g.order_ = order;
    for (std::uint64_t m : moduli) {
      if (m > 1) g.generators_.push_back(static_cast<Elem>(scale));
      scale *= m;
    }
    g.moduli_ = moduli;
    g.node_ = FiniteGroup::AbelianData{std::move(moduli)};
  }

  void fill(FiniteGroup& g, const CyclicSpec& s) {
    if (s.order == 0) throw Error(ErrorCode::BadParameters, "cyclic order must be positive");
    fill_abelian(g, {s.order});
  }

  void fill(FiniteGroup& g, const AbelianPSpec& s) {
    require_prime(s.p);
    std::vector<std::uint64_t> moduli;
    for (unsigned k : s.exponents) {
      if (k == 0) throw Error(ErrorCode::BadParameters, "abelianP exponents must be positive");
      moduli.push_back(nt::checked_pow(s.p, k, ~0ull));
    }
    fill_abelian(g, std::move(moduli));
  }

  void fill(FiniteGroup& g, const GFAddSpec& s) {
    require_prime(s.p);
    if (s.n == 0) throw Error(ErrorCode::BadParameters, "gfAdd degree must be positive");
    fill_abelian(g, std::vector<std::uint64_t>(s.n, s.p));
  }

  void fill(FiniteGroup& g, const DirectSpec& s) {
    FiniteGroup::DirectData data;
    std::uint64_t stride = 1;
    std::vector<std::uint64_t> moduli;
    bool coordinate_abelian = true;
    for (const auto& f : s.factors) {
      auto built = build(f);
      for (Elem gen : built->generators()) {
        g.generators_.push_back(static_cast<Elem>(gen * stride));
      }
      if (const auto* m = built->abelian_moduli()) {
        moduli.insert(moduli.end(), m->begin(), m->end());
      } else {
        coordinate_abelian = false;
      }
      data.strides.push_back(stride);
      stride *= built->order();
      data.factors.push_back(std::move(built));
    }
    g.order_ = stride;
    if (coordinate_abelian) g.moduli_ = std::move(moduli);
    g.node_ = std::move(data);
  }

  void fill(FiniteGroup& g, const SemidirectSpec& s) {
    if (!s.normal || !s.actor) throw Error(ErrorCode::BadParameters, "semidirect needs both parts");
    SemidirectView view;
    view.normal = build(*s.normal);
    view.actor = build(*s.actor);
    const auto& normal = *view.normal;
    const auto& actor = *view.actor;
    const std::size_t n = normal.order();

    std::vector<Elem> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = static_cast<Elem>(i);
    std::vector<std::vector<Elem>> gen_tables(actor.generators().size(), identity);
    std::vector<bool> assigned(gen_tables.size(), false);
    for (const auto& entry : s.action) {
      if (entry.gen >= gen_tables.size()) {
        throw Error(ErrorCode::InvalidAction,
                    "action names actor generator " + std::to_string(entry.gen) +
                        " but the actor has " + std::to_string(gen_tables.size()));
      }
      if (assigned[entry.gen]) {
        throw Error(ErrorCode::InvalidAction,
                    "actor generator " + std::to_string(entry.gen) + " assigned twice");
      }
      assigned[entry.gen] = true;
      gen_tables[entry.gen] = resolve(entry.automorphism, normal, entry.gen);
    }

    // Extend generator actions over the actor; any disagreement is a relation
    // of the actor that the action does not respect.
    view.action.assign(actor.order(), {});
    view.action[0] = identity;
    std::vector<Elem> queue{0};
    const auto& gens = actor.generators();
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const Elem a = queue[qi];
      for (std::size_t j = 0; j < gens.size(); ++j) {
        const Elem b = actor.mul(a, gens[j]);
        std::vector<Elem> cand(n);
        for (std::size_t x = 0; x < n; ++x) cand[x] = view.action[a][gen_tables[j][x]];
        if (view.action[b].empty()) {
          view.action[b] = std::move(cand);
          queue.push_back(b);
        } else if (view.action[b] != cand) {
          throw Error(ErrorCode::InvalidAction,
                      "action violates the relations of the actor group (generator " +
                          std::to_string(j) + ")");
        }
      }
    }
    if (queue.size() != actor.order()) {
      throw Error(ErrorCode::InvalidAction, "actor generators do not generate the actor");
    }

    g.order_ = n * actor.order();
    for (Elem gen : normal.generators()) g.generators_.push_back(gen);
    for (Elem gen : actor.generators()) g.generators_.push_back(view.combine(0, gen));
    g.node_ = std::move(view);
  }

  void fill(FiniteGroup& g, const PermutationSpec& s) {
    for (const auto& gen : s.generators) {
      if (gen.size() != s.degree) {
        throw Error(ErrorCode::BadParameters, "permutation generator has wrong degree");
      }
      std::vector<std::uint32_t> sorted(gen);
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] != i) throw Error(ErrorCode::BadParameters, "generator is not a permutation");
      }
    }
    std::map<std::vector<std::uint32_t>, Elem> index;
    std::vector<std::vector<std::uint32_t>> elems;
    std::vector<std::uint32_t> id(s.degree);
    for (std::size_t i = 0; i < s.degree; ++i) id[i] = static_cast<std::uint32_t>(i);
    elems.push_back(id);
    index[id] = 0;
    for (std::size_t qi = 0; qi < elems.size(); ++qi) {
      for (const auto& gen : s.generators) {
        std::vector<std::uint32_t> next(s.degree);
        for (std::size_t i = 0; i < s.degree; ++i) next[i] = elems[qi][gen[i]];
        if (index.emplace(next, static_cast<Elem>(elems.size())).second) {
          elems.push_back(std::move(next));
          if (elems.size() > options_.max_order) {
            throw Error(ErrorCode::TooLarge, "permutation group exceeds the order bound");
          }
        }
      }
    }
    const std::size_t order = elems.size();
    g.order_ = order;
    g.table_.resize(order * order);
    std::vector<std::uint32_t> prod(s.degree);
    for (std::size_t a = 0; a < order; ++a) {
      for (std::size_t b = 0; b < order; ++b) {
        for (std::size_t i = 0; i < s.degree; ++i) prod[i] = elems[a][elems[b][i]];
        g.table_[a * order + b] = index.at(prod);
      }
    }
    for (const auto& gen : s.generators) g.generators_.push_back(index.at(gen));
    g.node_ = FiniteGroup::TableData{};
  }

  const FieldDescriptor& field_for(const FiniteGroup& normal, std::size_t gen, const char* kind) {
    const auto* spec = normal.spec();
    const auto* gf = spec ? std::get_if<GFAddSpec>(&spec->node) : nullptr;
    if (gf == nullptr) {
      throw Error(ErrorCode::InvalidAction, std::string(kind) + " for actor generator " +
                                                std::to_string(gen) +
                                                " requires a gfAdd normal part");
    }
    const auto key = std::make_pair(gf->p, gf->n);
    auto it = fields_.find(key);
    if (it == fields_.end()) {
      it = fields_.emplace(key, field_make(gf->p, gf->n, options_.field_bound)).first;
    }
    return it->second;
  }

  std::vector<Elem> resolve(const AutoDescriptor& desc, const FiniteGroup& normal,
                            std::size_t gen) {
    const std::size_t n = normal.order();
    std::vector<Elem> table(n);
    const auto fail = [&](const std::string& why) {
      return Error(ErrorCode::InvalidAction,
                   "action of actor generator " + std::to_string(gen) + ": " + why);
    };
    if (const auto* fm = std::get_if<FieldMult>(&desc.kind)) {
      const auto& f = field_for(normal, gen, "fieldMult");
      const FieldElem lambda = f.gamma_pow(fm->exponent);
      for (std::size_t x = 0; x < n; ++x) table[x] = f.mul(lambda, static_cast<FieldElem>(x));
    } else if (const auto* fr = std::get_if<Frobenius>(&desc.kind)) {
      const auto& f = field_for(normal, gen, "frobenius");
      for (std::size_t x = 0; x < n; ++x) {
        table[x] = f.frobenius(static_cast<FieldElem>(x), fr->power);
      }
    } else if (const auto* em = std::get_if<ExponentMatrix>(&desc.kind)) {
      const auto* moduli = normal.abelian_moduli();
      if (moduli == nullptr) throw fail("exponentMatrix requires an abelian coordinate group");
      const std::size_t r = moduli->size();
      if (em->matrix.size() != r) throw fail("exponentMatrix has wrong dimension");
      for (const auto& row : em->matrix) {
        if (row.size() != r) throw fail("exponentMatrix has wrong dimension");
      }
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
          const auto mi = static_cast<std::int64_t>((*moduli)[i]);
          const auto mj = static_cast<std::int64_t>((*moduli)[j]);
          const std::int64_t entry = ((em->matrix[i][j] % mi) + mi) % mi;
          if ((static_cast<__int128>(entry) * mj) % mi != 0) {
            throw fail("exponentMatrix is not well defined on the coordinate orders");
          }
        }
      }
      for (std::size_t x = 0; x < n; ++x) {
        const auto v = normal.coordinates(static_cast<Elem>(x));
        std::vector<std::uint64_t> w(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
          const auto mi = static_cast<std::int64_t>((*moduli)[i]);
          __int128 acc = 0;
          for (std::size_t j = 0; j < r; ++j) {
            acc += static_cast<__int128>(em->matrix[i][j] % mi) * static_cast<std::int64_t>(v[j]);
          }
          w[i] = static_cast<std::uint64_t>(((acc % mi) + mi) % mi);
        }
        table[x] = normal.from_coordinates(w);
      }
    } else if (const auto* ex = std::get_if<ExplicitImages>(&desc.kind)) {
      if (ex->images.size() != normal.generators().size()) {
        throw fail("expected " + std::to_string(normal.generators().size()) + " images, got " +
                   std::to_string(ex->images.size()));
      }
      for (Elem img : ex->images) {
        if (img >= n) throw fail("image index " + std::to_string(img) + " out of range");
      }
      auto hom = extend_homomorphism(normal, normal, ex->images);
      if (!hom) throw fail("images do not define a homomorphism");
      table = std::move(*hom);
    } else {
      const auto& parts = std::get<Compose>(desc.kind).parts;
      for (std::size_t x = 0; x < n; ++x) table[x] = static_cast<Elem>(x);
      for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
        const auto part = resolve(*it, normal, gen);
        for (auto& x : table) x = part[x];
      }
    }
    if (!is_bijection(table)) throw fail("map is not bijective");
    return table;
  }

  BuildOptions options_;
  std::map<std::pair<std::uint64_t, unsigned>, FieldDescriptor> fields_;
};

std::vector<Elem> automorphism_table(const FiniteGroup& normal, const AutoDescriptor& desc,
                                     std::size_t gen, const BuildOptions& options) {
  GroupBuilder builder(options);
  return builder.resolve_public(desc, normal, gen);
}

GroupPtr build_group(const GroupSpec& spec, const BuildOptions& options) {
  const std::uint64_t order = spec_order(spec, options.max_order);
  if (order == 0) {
    throw Error(ErrorCode::TooLarge,
                "group order exceeds the bound " + std::to_string(options.max_order));
  }
  GroupBuilder builder(options);
  return builder.build(spec);
}

Subgroup Subgroup::from_elements(GroupPtr parent, std::vector<Elem> elements) {
  Subgroup s;
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  s.mask.assign(parent->order(), 0);
  for (Elem e : elements) s.mask[e] = 1;
  s.elements = std::move(elements);
  s.parent = std::move(parent);
  return s;
}

bool Subgroup::is_closed() const {
  if (elements.empty() || !contains(0)) return false;
  for (Elem a : elements) {
    if (!contains(parent->inv(a))) return false;
    for (Elem b : elements) {
      if (!contains(parent->mul(a, b))) return false;
    }
  }
  return true;
}

Subgroup generate_subgroup(const GroupPtr& group, std::span<const Elem> gens) {
  return Subgroup::from_elements(group, closure(*group, gens));
}

Subgroup whole_group(const GroupPtr& group) {
  std::vector<Elem> all(group->order());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<Elem>(i);
  return Subgroup::from_elements(group, std::move(all));
}

Subgroup trivial_subgroup(const GroupPtr& group) { return Subgroup::from_elements(group, {0}); }

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  for (Elem e : a.elements) {
    if (b.contains(e)) out.push_back(e);
  }
  return Subgroup::from_elements(a.parent, std::move(out));
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  auto gens = subgroup_generators(a);
  const auto more = subgroup_generators(b);
  gens.insert(gens.end(), more.begin(), more.end());
  return generate_subgroup(a.parent, gens);
}

Subgroup centralizer(const GroupPtr& group, std::span<const Elem> S, const Subgroup* within) {
  std::vector<Elem> out;
  const auto test = [&](Elem g) {
    for (Elem s : S) {
      if (group->mul(g, s) != group->mul(s, g)) return false;
    }
    return true;
  };
  if (within != nullptr) {
    for (Elem g : within->elements) {
      if (test(g)) out.push_back(g);
    }
  } else {
    for (std::size_t g = 0; g < group->order(); ++g) {
      if (test(static_cast<Elem>(g))) out.push_back(static_cast<Elem>(g));
    }
  }
  return Subgroup::from_elements(group, std::move(out));
}

Subgroup center(const GroupPtr& group) { return centralizer(group, group->generators()); }

bool is_normal(const Subgroup& sub) {
  const auto& g = *sub.parent;
  const auto sub_gens = subgroup_generators(sub);
  for (Elem x : g.generators()) {
    for (Elem h : sub_gens) {
      if (!sub.contains(g.conj(x, h))) return false;
    }
  }
  return true;
}

std::vector<Elem> subgroup_generators(const Subgroup& sub) {
  const auto& g = *sub.parent;
  std::vector<Elem> gens;
  std::vector<std::uint8_t> cur(g.order(), 0);
  cur[0] = 1;
  for (Elem x : sub.elements) {
    if (cur[x]) continue;
    gens.push_back(x);
    for (Elem e : closure(g, gens)) cur[e] = 1;
  }
  return gens;
}

std::vector<Elem> minimal_generating_set(const FiniteGroup& group) {
  std::vector<Elem> gens;
  for (Elem g : group.generators()) {
    if (g != 0 && std::find(gens.begin(), gens.end(), g) == gens.end()) gens.push_back(g);
  }
  for (std::size_t i = 0; i < gens.size();) {
    std::vector<Elem> rest;
    for (std::size_t j = 0; j < gens.size(); ++j) {
      if (j != i) rest.push_back(gens[j]);
    }
    if (closure(group, rest).size() == group.order()) {
      gens = std::move(rest);
    } else {
      ++i;
    }
  }
  return gens;
}

Subgroup Embedding::image() const { return Subgroup::from_elements(parent, to_parent); }

Embedding as_group(const Subgroup& sub) {
  const auto& g = *sub.parent;
  const std::size_t k = sub.size();
  std::vector<Elem> position(g.order(), kUnset);
  for (std::size_t i = 0; i < k; ++i) position[sub.elements[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Elem prod = position[g.mul(sub.elements[i], sub.elements[j])];
      if (prod == kUnset) throw Error(ErrorCode::NotSubgroup, "element set is not closed");
      table[i * k + j] = prod;
    }
  }
  std::vector<Elem> gens;
  for (Elem x : subgroup_generators(sub)) gens.push_back(position[x]);
  Embedding e;
  e.group = FiniteGroup::from_table(std::move(table), k, std::move(gens));
  e.parent = sub.parent;
  e.to_parent = sub.elements;
  return e;
}

Embedding complement_embedding(const GroupPtr& group) {
  const auto* sd = group->semidirect();
  if (sd == nullptr) throw Error(ErrorCode::NoProjection, "group is not a semidirect product");
  Embedding e;
  e.group = sd->actor;
  e.parent = group;
  e.to_parent.resize(sd->actor->order());
  for (std::size_t a = 0; a < e.to_parent.size(); ++a) {
    e.to_parent[a] = sd->combine(0, static_cast<Elem>(a));
  }
  return e;
}

Subgroup normal_part(const GroupPtr& group) {
  const auto* sd = group->semidirect();
  if (sd == nullptr) throw Error(ErrorCode::NoProjection, "group is not a semidirect product");
  std::vector<Elem> elems(sd->normal->order());
  for (std::size_t n = 0; n < elems.size(); ++n) elems[n] = static_cast<Elem>(n);
  return Subgroup::from_elements(group, std::move(elems));
}

std::optional<std::string> check_group_axioms(const FiniteGroup& group, std::uint64_t seed,
                                              std::size_t samples,
                                              std::size_t exhaustive_below) {
  const std::size_t n = group.order();
  for (std::size_t x = 0; x < n; ++x) {
    const auto e = static_cast<Elem>(x);
    if (group.mul(0, e) != e || group.mul(e, 0) != e) {
      return "identity law fails at " + std::to_string(x);
    }
    if (group.mul(e, group.inv(e)) != 0 || group.mul(group.inv(e), e) != 0) {
      return "inverse law fails at " + std::to_string(x);
    }
  }
  const auto check = [&](Elem a, Elem b, Elem c) -> std::optional<std::string> {
    if (group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c))) {
      std::ostringstream os;
      os << "associativity fails at (" << a << ", " << b << ", " << c << ")";
      return os.str();
    }
    return std::nullopt;
  };
  if (n < exhaustive_below) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t c = 0; c < n; ++c) {
          if (auto bad = check(static_cast<Elem>(a), static_cast<Elem>(b), static_cast<Elem>(c))) {
            return bad;
          }
        }
      }
    }
    return std::nullopt;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = static_cast<Elem>(rng() % n);
    const auto b = static_cast<Elem>(rng() % n);
    const auto c = static_cast<Elem>(rng() % n);
    if (auto bad = check(a, b, c)) return bad;
  }
  return std::nullopt;
}

}  // namespace picent
