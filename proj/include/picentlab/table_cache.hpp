#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "picentlab/character.hpp"
#include "picentlab/report.hpp"

namespace picent {

struct CacheOptions {
  std::filesystem::path dir;  // empty: default_cache_dir()
  bool enabled = true;
};

/// $PICENTLAB_CACHE_DIR, else $XDG_CACHE_HOME/picentlab, else ~/.cache/picentlab.
std::filesystem::path default_cache_dir();

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

/// Hash of the canonical spec and the toolkit version.
std::string cache_key(const GroupSpec& spec);

/// Values are embedded at the table conductor and stored as coefficient strings.
Json table_to_json(const CharacterTable& table, const std::string& key);

/// Rebuilds the table on `conj` and revalidates it; throws CacheCorrupt.
CharacterTable table_from_json(const Json& j, const ConjPtr& conj, const std::string& key);

struct CacheResult {
  CharacterTable table;
  std::string status;  // "hit", "miss", "recomputed" or "disabled"
  std::string key;
  std::optional<std::string> warning;
  std::optional<std::filesystem::path> file;
};

/// Groups without a spec are computed without touching the cache.
CacheResult cache_get_or_compute(const GroupPtr& group, const CacheOptions& options = {});

}  // namespace picent
