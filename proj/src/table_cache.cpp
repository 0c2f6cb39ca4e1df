#include "picentlab/table_cache.hpp"

#include <openssl/evp.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "picentlab/error.hpp"
#include "picentlab/spec_json.hpp"

namespace picent {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void corrupt(const std::string& why) { throw Error(ErrorCode::CacheCorrupt, why); }

Rational parse_rational(const Json& j) {
  if (!j.is_string()) corrupt("coefficient is not a string");
  Rational r;
  if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0) {
    corrupt("bad coefficient \"" + j.get<std::string>() + "\"");
  }
  r.canonicalize();
  return r;
}

void write_atomically(const fs::path& target, const std::string& content) {
  std::random_device rd;
  const fs::path tmp = target.parent_path() /
                       ("." + target.filename().string() + "." + std::to_string(::getpid()) + "." +
                        std::to_string(rd()) + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + target.string());
  }
}

}  // namespace

fs::path default_cache_dir() {
  if (const char* env = std::getenv("PICENTLAB_CACHE_DIR"); env && *env) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) return fs::path(xdg) / "picentlab";
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".cache" / "picentlab";
  return fs::temp_directory_path() / "picentlab-cache";
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 15]);
  }
  return out;
}

std::string cache_key(const GroupSpec& spec) {
  return sha256_hex(canonical_spec(spec) + "\n" + std::string(kVersion));
}

Json table_to_json(const CharacterTable& table, const std::string& key) {
  const auto& conj = *table.conj;
  Json j;
  j["key"] = key;
  j["version"] = kVersion;
  j["order"] = table.group()->order();
  j["conductor"] = table.conductor;
  j["prime"] = table.prime;
  j["classes"] = conj.classes;
  j["degrees"] = table.degrees;
  Json rows = Json::array();
  for (const auto& row : table.rows) {
    Json values = Json::array();
    for (const auto& v : row.values) {
      Json coeffs = Json::array();
      const Cyclotomic e = v.embed(table.conductor);
      for (const auto& c : e.coefficients()) coeffs.push_back(c.get_str());
      values.push_back(std::move(coeffs));
    }
    rows.push_back(std::move(values));
  }
  j["rows"] = std::move(rows);
  return j;
}

CharacterTable table_from_json(const Json& j, const ConjPtr& conj, const std::string& key) {
  try {
    if (!j.is_object()) corrupt("not an object");
    if (j.at("key") != key) corrupt("key mismatch");
    if (j.at("version") != kVersion) corrupt("version mismatch");
    if (j.at("order").get<std::uint64_t>() != conj->group->order()) corrupt("group order mismatch");
    if (j.at("classes").get<std::vector<std::vector<Elem>>>() != conj->classes) {
      corrupt("conjugacy classes do not match the group");
    }
    CharacterTable table;
    table.conj = conj;
    table.conductor = j.at("conductor").get<std::uint64_t>();
    table.prime = j.at("prime").get<std::uint64_t>();
    if (table.conductor == 0 || table.conductor != conj->group->exponent()) corrupt("bad conductor");
    const auto& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != conj->count()) corrupt("row count mismatch");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != conj->count()) corrupt("row length mismatch");
      ClassFunction f{conj, {}};
      for (const auto& v : row) {
        if (!v.is_array()) corrupt("value is not an array");
        std::vector<Rational> coeffs;
        for (const auto& c : v) coeffs.push_back(parse_rational(c));
        f.values.push_back(Cyclotomic::from_power_sum(table.conductor, coeffs));
      }
      table.rows.push_back(std::move(f));
    }
    table.degrees = j.at("degrees").get<std::vector<std::uint64_t>>();
    if (table.degrees.size() != table.rows.size()) corrupt("degree count mismatch");
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      if (table.rows[i].degree() != Cyclotomic::integer(static_cast<std::int64_t>(table.degrees[i]))) {
        corrupt("degree of row " + std::to_string(i) + " disagrees with its value at 1");
      }
    }
    if (auto why = validate_table(table)) corrupt("revalidation failed: " + *why);
    if (auto why = check_galois_stable(table)) corrupt("revalidation failed: " + *why);
    return table;
  } catch (const nlohmann::json::exception& e) {
    corrupt(std::string("malformed entry: ") + e.what());
  }
}

CacheResult cache_get_or_compute(const GroupPtr& group, const CacheOptions& options) {
  CacheResult result;
  const auto conj = conjugacy_classes(group);
  if (!options.enabled || group->spec() == nullptr) {
    result.table = dixon_table(conj);
    result.status = "disabled";
    return result;
  }
  result.key = cache_key(*group->spec());
  const fs::path dir = options.dir.empty() ? default_cache_dir() : options.dir;
  const fs::path file = dir / (result.key + ".json");
  result.file = file;

  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      std::ifstream in(file, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      Json j;
      try {
        j = Json::parse(buf.str());
      } catch (const nlohmann::json::parse_error& e) {
        corrupt(std::string("unparsable entry: ") + e.what());
      }
      result.table = table_from_json(j, conj, result.key);
      result.status = "hit";
      return result;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CacheCorrupt) throw;
      result.warning = std::string(e.what()) + " (" + file.string() + "); recomputing";
      result.status = "recomputed";
    }
  } else {
    result.status = "miss";
  }

  result.table = dixon_table(conj);
  try {
    fs::create_directories(dir);
    write_atomically(file, table_to_json(result.table, result.key).dump());
  } catch (const std::exception& e) {
    const std::string note = std::string("cache write skipped: ") + e.what();
    result.warning = result.warning ? *result.warning + "; " + note : note;
  }
  return result;
}

}  // namespace picent
