#include "picentlab/fixtures.hpp"

#include <map>

#include "picentlab/error.hpp"

namespace picent {
namespace {

struct Entry {
  GroupSpec spec;
  bool abelian;
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = [] {
    std::map<std::string, Entry> m;
    for (std::uint64_t n = 1; n <= 12; ++n) m["c" + std::to_string(n)] = {GroupSpec::cyclic(n), true};
    m["c2xc4"] = {GroupSpec::abelian_p(2, {1, 2}), true};
    m["c2xc2xc2"] = {GroupSpec::abelian_p(2, {1, 1, 1}), true};
    m["c3xc3"] = {GroupSpec::abelian_p(3, {1, 1}), true};
    m["c4xc4"] = {GroupSpec::abelian_p(2, {2, 2}), true};
    m["s3"] = {GroupSpec::semidirect(GroupSpec::cyclic(3), GroupSpec::cyclic(2),
                                     {ActionEntry{0, exponent_matrix({{2}})}}),
               false};
    m["d8"] = {GroupSpec::semidirect(GroupSpec::cyclic(4), GroupSpec::cyclic(2),
                                     {ActionEntry{0, exponent_matrix({{3}})}}),
               false};
    // i = (0 2 1 3)(4 6 5 7), j = (0 4 1 5)(2 7 3 6) in the regular representation.
    m["q8"] = {GroupSpec::permutations(8, {{2, 3, 1, 0, 6, 7, 5, 4}, {4, 5, 7, 6, 1, 0, 2, 3}}),
               false};
    m["c4sdc4"] = {GroupSpec::semidirect(GroupSpec::cyclic(4), GroupSpec::cyclic(4),
                                         {ActionEntry{0, exponent_matrix({{3}})}}),
                   false};
    m["heis27"] = {GroupSpec::semidirect(GroupSpec::abelian_p(3, {1, 1}), GroupSpec::cyclic(3),
                                         {ActionEntry{0, exponent_matrix({{1, 1}, {0, 1}})}}),
                   false};
    // Hol(C_8) = C_8 x| Aut(C_8).
    m["wall32"] = {GroupSpec::semidirect(GroupSpec::cyclic(8), GroupSpec::abelian_p(2, {1, 1}),
                                         {ActionEntry{0, exponent_matrix({{3}})},
                                          ActionEntry{1, exponent_matrix({{5}})}}),
                   false};
    return m;
  }();
  return r;
}

const Entry& lookup(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) throw Error(ErrorCode::BadParameters, "unknown fixture \"" + name + "\"");
  return it->second;
}

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& [name, e] : registry()) out.push_back(name);
  return out;
}

GroupSpec fixture(const std::string& name) { return lookup(name).spec; }

bool fixture_is_abelian(const std::string& name) { return lookup(name).abelian; }

}  // namespace picent
