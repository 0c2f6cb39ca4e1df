#pragma once

#include <filesystem>
#include <string>

#include "picentlab/finite_group.hpp"
#include "picentlab/group_spec.hpp"
#include "picentlab/report.hpp"

namespace picent {

/// Canonical JSON form: fixed key order, action entries sorted by generator.
Json group_spec_to_json(const GroupSpec& spec);
std::string canonical_spec(const GroupSpec& spec);

/// Structural decoding only; throws ValidationError naming the offending path.
GroupSpec group_spec_from_json(const Json& j);

/// Parses text holding either a bare spec or {"family": {...}, "group": {...}},
/// then builds the group to check every structural invariant. Throws
/// ParseError (with byte offset) or ValidationError.
GroupSpec parse_group_spec_text(const std::string& text, const BuildOptions& options = {});
GroupSpec parse_group_spec(const std::filesystem::path& path, const BuildOptions& options = {});

/// {"family": header, "group": spec}.
Json family_document(const Json& header, const GroupSpec& spec);

}  // namespace picent
