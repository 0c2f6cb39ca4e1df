#include "picentlab/automorphism.hpp"

#include <algorithm>
#include <set>

#include "picentlab/error.hpp"

namespace picent {

std::uint32_t ConjugacyData::power_class(std::size_t i, std::int64_t k) const {
  return class_of[group->pow(reps[i], k)];
}

ConjPtr conjugacy_classes(const GroupPtr& group) {
  auto data = std::make_shared<ConjugacyData>();
  data->group = group;
  const auto& g = *group;
  const std::size_t n = g.order();
  constexpr std::uint32_t kNone = ~std::uint32_t{0};
  data->class_of.assign(n, kNone);
  const auto& gens = g.generators();
  for (std::size_t x = 0; x < n; ++x) {
    if (data->class_of[x] != kNone) continue;
    const auto id = static_cast<std::uint32_t>(data->classes.size());
    std::vector<Elem> orbit{static_cast<Elem>(x)};
    data->class_of[x] = id;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (Elem s : gens) {
        const Elem y = g.conj(s, orbit[i]);
        if (data->class_of[y] == kNone) {
          data->class_of[y] = id;
          orbit.push_back(y);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    data->reps.push_back(static_cast<Elem>(x));
    data->centralizer_orders.push_back(n / orbit.size());
    data->classes.push_back(std::move(orbit));
  }
  return data;
}

bool Automorphism::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i] != i) return false;
  }
  return true;
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  Automorphism out{group, std::vector<Elem>(images.size())};
  for (std::size_t i = 0; i < images.size(); ++i) out.images[i] = images[other.images[i]];
  return out;
}

Automorphism Automorphism::inverse() const {
  Automorphism out{group, std::vector<Elem>(images.size())};
  for (std::size_t i = 0; i < images.size(); ++i) out.images[images[i]] = static_cast<Elem>(i);
  return out;
}

Automorphism identity_automorphism(const GroupPtr& group) {
  Automorphism a{group, std::vector<Elem>(group->order())};
  for (std::size_t i = 0; i < a.images.size(); ++i) a.images[i] = static_cast<Elem>(i);
  return a;
}

Automorphism conjugation(const GroupPtr& group, Elem g) {
  Automorphism a{group, std::vector<Elem>(group->order())};
  for (std::size_t x = 0; x < a.images.size(); ++x) a.images[x] = group->conj(g, static_cast<Elem>(x));
  return a;
}

std::optional<std::string> check_automorphism(const Automorphism& alpha) {
  const auto& g = *alpha.group;
  if (alpha.images.size() != g.order() || !is_bijection(alpha.images)) {
    return std::string("map is not a bijection");
  }
  for (std::size_t x = 0; x < g.order(); ++x) {
    for (std::size_t y = 0; y < g.order(); ++y) {
      const Elem lhs = alpha(g.mul(static_cast<Elem>(x), static_cast<Elem>(y)));
      if (lhs != g.mul(alpha(static_cast<Elem>(x)), alpha(static_cast<Elem>(y)))) {
        return "not multiplicative at (" + std::to_string(x) + ", " + std::to_string(y) + ")";
      }
    }
  }
  return std::nullopt;
}

std::vector<Automorphism> inner_automorphisms(const GroupPtr& group) {
  const auto z = center(group);
  std::vector<std::uint8_t> covered(group->order(), 0);
  std::vector<Automorphism> out;
  for (std::size_t g = 0; g < group->order(); ++g) {
    if (covered[g]) continue;
    for (Elem c : z.elements) covered[group->mul(static_cast<Elem>(g), c)] = 1;
    out.push_back(conjugation(group, static_cast<Elem>(g)));
  }
  return out;
}

std::optional<Elem> find_inner(const Automorphism& alpha) {
  const auto& g = *alpha.group;
  const auto& gens = g.generators();
  for (std::size_t c = 0; c < g.order(); ++c) {
    bool match = true;
    for (Elem s : gens) {
      if (g.conj(static_cast<Elem>(c), s) != alpha(s)) {
        match = false;
        break;
      }
    }
    if (match) return static_cast<Elem>(c);
  }
  return std::nullopt;
}

std::vector<Automorphism> automorphism_group(const GroupPtr& group, const ConjugacyData& conj,
                                             std::size_t bound) {
  const auto& g = *group;
  if (g.order() > bound) {
    throw Error(ErrorCode::TooLarge, "automorphism search bound " + std::to_string(bound) +
                                         " is below |G| = " + std::to_string(g.order()));
  }
  const auto gens = minimal_generating_set(g);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto ord = g.element_order(gens[i]);
    const auto csize = conj.class_size(conj.class_of[gens[i]]);
    for (std::size_t y = 0; y < g.order(); ++y) {
      if (g.element_order(static_cast<Elem>(y)) == ord &&
          conj.class_size(conj.class_of[y]) == csize) {
        candidates[i].push_back(static_cast<Elem>(y));
      }
    }
  }
  std::vector<Automorphism> out;
  std::vector<Elem> images(gens.size());
  std::vector<std::size_t> cursor(gens.size(), 0);
  // Odometer over the candidate tuples.
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i) images[i] = candidates[i][cursor[i]];
    if (auto map = extend_homomorphism(g, gens, g, images); map && is_bijection(*map)) {
      out.push_back(Automorphism{group, std::move(*map)});
    }
    std::size_t i = 0;
    while (i < gens.size() && ++cursor[i] == candidates[i].size()) cursor[i++] = 0;
    if (i == gens.size()) break;
  }
  std::sort(out.begin(), out.end(),
            [](const Automorphism& a, const Automorphism& b) { return a.images < b.images; });
  return out;
}

bool is_class_preserving(const ConjugacyData& conj, const Automorphism& alpha) {
  for (std::size_t x = 0; x < alpha.images.size(); ++x) {
    if (conj.class_of[alpha.images[x]] != conj.class_of[x]) return false;
  }
  return true;
}

OutCReport out_c(const GroupPtr& group, const ConjugacyData& conj, std::size_t bound) {
  OutCReport report;
  const auto aut = automorphism_group(group, conj, bound);
  const auto inn = inner_automorphisms(group);
  report.aut_order = aut.size();
  report.inn_order = inn.size();
  std::set<std::vector<Elem>> covered;
  for (const auto& alpha : aut) {
    if (!is_class_preserving(conj, alpha)) continue;
    ++report.aut_c_order;
    if (covered.count(alpha.images)) continue;
    for (const auto& iota : inn) covered.insert(alpha.compose(iota).images);
    report.coset_reps.push_back(alpha);
    if (!report.witness && !find_inner(alpha)) report.witness = alpha;
  }
  report.out_c_order = report.coset_reps.size();
  return report;
}

}  // namespace picent
