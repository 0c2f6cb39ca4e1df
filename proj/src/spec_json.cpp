#include "picentlab/spec_json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "picentlab/error.hpp"

namespace picent {
namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::ValidationError, path + ": " + why);
}

Json auto_to_json(const AutoDescriptor& d) {
  return std::visit(
      [](const auto& k) -> Json {
        using K = std::decay_t<decltype(k)>;
        Json j;
        if constexpr (std::is_same_v<K, FieldMult>) {
          j["kind"] = "fieldMult";
          j["exponent"] = k.exponent;
        } else if constexpr (std::is_same_v<K, Frobenius>) {
          j["kind"] = "frobenius";
          j["power"] = k.power;
        } else if constexpr (std::is_same_v<K, ExponentMatrix>) {
          j["kind"] = "exponentMatrix";
          j["matrix"] = k.matrix;
        } else if constexpr (std::is_same_v<K, ExplicitImages>) {
          j["kind"] = "explicit";
          j["images"] = k.images;
        } else {
          j["kind"] = "compose";
          Json parts = Json::array();
          for (const auto& p : k.parts) parts.push_back(auto_to_json(p));
          j["parts"] = std::move(parts);
        }
        return j;
      },
      d.kind);
}

void check_keys(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) invalid(path, "expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.count(key)) invalid(path, "unknown field \"" + key + "\"");
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) invalid(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::uint64_t as_unsigned(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0)) {
    invalid(path, "expected a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

std::int64_t as_signed(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    invalid(path, "integer out of range");
  }
  return j.get<std::int64_t>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected an array");
  return j;
}

std::uint32_t as_u32(const Json& j, const std::string& path) {
  const auto v = as_unsigned(j, path);
  if (v > UINT32_MAX) invalid(path, "integer out of range");
  return static_cast<std::uint32_t>(v);
}

AutoDescriptor auto_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  const auto& kind_j = field(j, path, "kind");
  if (!kind_j.is_string()) invalid(path + ".kind", "expected a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "fieldMult") {
    check_keys(j, path, {"kind", "exponent"});
    return field_mult(as_signed(field(j, path, "exponent"), path + ".exponent"));
  }
  if (kind == "frobenius") {
    check_keys(j, path, {"kind", "power"});
    return frobenius(as_signed(field(j, path, "power"), path + ".power"));
  }
  if (kind == "exponentMatrix") {
    check_keys(j, path, {"kind", "matrix"});
    const auto mp = path + ".matrix";
    std::vector<std::vector<std::int64_t>> m;
    for (std::size_t r = 0; r < as_array(field(j, path, "matrix"), mp).size(); ++r) {
      const auto rp = mp + "[" + std::to_string(r) + "]";
      const auto& row = as_array(j["matrix"][r], rp);
      m.emplace_back();
      for (std::size_t c = 0; c < row.size(); ++c) {
        m.back().push_back(as_signed(row[c], rp + "[" + std::to_string(c) + "]"));
      }
    }
    return exponent_matrix(std::move(m));
  }
  if (kind == "explicit") {
    check_keys(j, path, {"kind", "images"});
    const auto ip = path + ".images";
    std::vector<std::uint32_t> images;
    const auto& arr = as_array(field(j, path, "images"), ip);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      images.push_back(as_u32(arr[i], ip + "[" + std::to_string(i) + "]"));
    }
    return explicit_images(std::move(images));
  }
  if (kind == "compose") {
    check_keys(j, path, {"kind", "parts"});
    const auto pp = path + ".parts";
    std::vector<AutoDescriptor> parts;
    const auto& arr = as_array(field(j, path, "parts"), pp);
    if (arr.empty()) invalid(pp, "compose needs at least one part");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      parts.push_back(auto_from_json(arr[i], pp + "[" + std::to_string(i) + "]"));
    }
    return compose(std::move(parts));
  }
  invalid(path + ".kind", "unknown automorphism kind \"" + kind + "\"");
}

GroupSpec spec_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) invalid(path, "expected an object");
  const auto& type_j = field(j, path, "type");
  if (!type_j.is_string()) invalid(path + ".type", "expected a string");
  const auto type = type_j.get<std::string>();
  if (type == "cyclic") {
    check_keys(j, path, {"type", "order"});
    const auto order = as_unsigned(field(j, path, "order"), path + ".order");
    if (order == 0) invalid(path + ".order", "must be positive");
    return GroupSpec::cyclic(order);
  }
  if (type == "abelianP") {
    check_keys(j, path, {"type", "p", "exponents"});
    const auto p = as_unsigned(field(j, path, "p"), path + ".p");
    std::vector<unsigned> exps;
    const auto ep = path + ".exponents";
    const auto& arr = as_array(field(j, path, "exponents"), ep);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto e = as_u32(arr[i], ep + "[" + std::to_string(i) + "]");
      if (e == 0) invalid(ep + "[" + std::to_string(i) + "]", "must be positive");
      exps.push_back(e);
    }
    return GroupSpec::abelian_p(p, std::move(exps));
  }
  if (type == "gfAdd") {
    check_keys(j, path, {"type", "p", "n"});
    const auto p = as_unsigned(field(j, path, "p"), path + ".p");
    const auto n = as_u32(field(j, path, "n"), path + ".n");
    if (n == 0) invalid(path + ".n", "must be positive");
    return GroupSpec::gf_add(p, n);
  }
  if (type == "direct") {
    check_keys(j, path, {"type", "factors"});
    const auto fp = path + ".factors";
    const auto& arr = as_array(field(j, path, "factors"), fp);
    if (arr.empty()) invalid(fp, "needs at least one factor");
    std::vector<GroupSpec> factors;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      factors.push_back(spec_from_json(arr[i], fp + "[" + std::to_string(i) + "]"));
    }
    return GroupSpec::direct(std::move(factors));
  }
  if (type == "semidirect") {
    check_keys(j, path, {"type", "normal", "actor", "action"});
    GroupSpec normal = spec_from_json(field(j, path, "normal"), path + ".normal");
    GroupSpec actor = spec_from_json(field(j, path, "actor"), path + ".actor");
    const auto ap = path + ".action";
    const auto& arr = as_array(field(j, path, "action"), ap);
    std::vector<ActionEntry> action;
    std::set<std::size_t> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto ep = ap + "[" + std::to_string(i) + "]";
      check_keys(arr[i], ep, {"gen", "auto"});
      const auto gen = as_unsigned(field(arr[i], ep, "gen"), ep + ".gen");
      if (!seen.insert(gen).second) invalid(ep + ".gen", "generator " + std::to_string(gen) + " listed twice");
      action.push_back(ActionEntry{gen, auto_from_json(field(arr[i], ep, "auto"), ep + ".auto")});
    }
    return GroupSpec::semidirect(std::move(normal), std::move(actor), std::move(action));
  }
  if (type == "permutation") {
    check_keys(j, path, {"type", "degree", "generators"});
    const auto degree = as_unsigned(field(j, path, "degree"), path + ".degree");
    const auto gp = path + ".generators";
    const auto& arr = as_array(field(j, path, "generators"), gp);
    std::vector<std::vector<std::uint32_t>> gens;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto ip = gp + "[" + std::to_string(i) + "]";
      const auto& perm = as_array(arr[i], ip);
      gens.emplace_back();
      for (std::size_t k = 0; k < perm.size(); ++k) {
        gens.back().push_back(as_u32(perm[k], ip + "[" + std::to_string(k) + "]"));
      }
    }
    return GroupSpec::permutations(degree, std::move(gens));
  }
  invalid(path + ".type", "unknown group type \"" + type + "\"");
}

}  // namespace

Json group_spec_to_json(const GroupSpec& spec) {
  return std::visit(
      [](const auto& s) -> Json {
        using S = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<S, CyclicSpec>) {
          j["type"] = "cyclic";
          j["order"] = s.order;
        } else if constexpr (std::is_same_v<S, AbelianPSpec>) {
          j["type"] = "abelianP";
          j["p"] = s.p;
          j["exponents"] = s.exponents;
        } else if constexpr (std::is_same_v<S, GFAddSpec>) {
          j["type"] = "gfAdd";
          j["p"] = s.p;
          j["n"] = s.n;
        } else if constexpr (std::is_same_v<S, DirectSpec>) {
          j["type"] = "direct";
          Json fs = Json::array();
          for (const auto& f : s.factors) fs.push_back(group_spec_to_json(f));
          j["factors"] = std::move(fs);
        } else if constexpr (std::is_same_v<S, SemidirectSpec>) {
          j["type"] = "semidirect";
          j["normal"] = group_spec_to_json(*s.normal);
          j["actor"] = group_spec_to_json(*s.actor);
          std::vector<const ActionEntry*> entries;
          for (const auto& a : s.action) entries.push_back(&a);
          std::stable_sort(entries.begin(), entries.end(),
                           [](const ActionEntry* a, const ActionEntry* b) { return a->gen < b->gen; });
          Json acts = Json::array();
          for (const auto* a : entries) {
            Json e;
            e["gen"] = a->gen;
            e["auto"] = auto_to_json(a->automorphism);
            acts.push_back(std::move(e));
          }
          j["action"] = std::move(acts);
        } else {
          j["type"] = "permutation";
          j["degree"] = s.degree;
          j["generators"] = s.generators;
        }
        return j;
      },
      spec.node);
}

std::string canonical_spec(const GroupSpec& spec) { return group_spec_to_json(spec).dump(); }

GroupSpec group_spec_from_json(const Json& j) { return spec_from_json(j, "$"); }

GroupSpec parse_group_spec_text(const std::string& text, const BuildOptions& options) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError,
                "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const Json* group = &doc;
  if (doc.is_object() && doc.contains("group")) {
    check_keys(doc, "$", {"family", "group"});
    group = &doc["group"];
  }
  GroupSpec spec = spec_from_json(*group, doc.contains("group") ? "$.group" : "$");
  try {
    build_group(spec, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::TooLarge) throw;
    throw Error(ErrorCode::ValidationError, e.what());
  }
  return spec;
}

GroupSpec parse_group_spec(const std::filesystem::path& path, const BuildOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_group_spec_text(buf.str(), options);
}

Json family_document(const Json& header, const GroupSpec& spec) {
  Json doc;
  doc["family"] = header;
  doc["group"] = group_spec_to_json(spec);
  return doc;
}

}  // namespace picent
