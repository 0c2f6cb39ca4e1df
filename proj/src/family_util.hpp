#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "picentlab/automorphism.hpp"
#include "picentlab/error.hpp"
#include "picentlab/families.hpp"
#include "picentlab/report.hpp"

namespace picent::detail {

inline std::string u128_string(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

// base^exp, saturating at 2^100.
inline unsigned __int128 big_pow(std::uint64_t base, std::uint64_t exp) {
  const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 100;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > cap) return cap;
  }
  return r;
}

inline void require_order(unsigned __int128 order, std::uint64_t bound, const std::string& formula) {
  if (order > bound) {
    throw Error(ErrorCode::TooLarge, "|G| = " + formula + " = " + u128_string(order) +
                                         " exceeds the bound " + std::to_string(bound));
  }
}

/// Distinct action tables of the actor of a semidirect product, in order of
/// first appearance, with the index of each actor element's table.
struct ActionImage {
  std::vector<Automorphism> autos;
  std::vector<std::size_t> index_of;  // per actor element
};

inline ActionImage action_image(const SemidirectView& view) {
  ActionImage out;
  std::map<std::vector<Elem>, std::size_t> seen;
  for (const auto& table : view.action) {
    auto [it, fresh] = seen.emplace(table, out.autos.size());
    if (fresh) out.autos.push_back(Automorphism{view.normal, table});
    out.index_of.push_back(it->second);
  }
  return out;
}

// Records the invariant list as one check; the witness lists the failures.
inline void invariants_check(VerificationReport& report, const std::string& anchor,
                             const std::vector<InvariantResult>& inv) {
  report.run_check("instance invariants", anchor, [&](Json& w) {
    Json failures = Json::array();
    for (const auto& r : inv) {
      if (r.failure) failures.push_back(Json{{"invariant", r.name}, {"failure", *r.failure}});
    }
    if (!failures.empty()) w = failures;
    return failures.empty();
  });
}

}  // namespace picent::detail
