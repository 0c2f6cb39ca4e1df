#pragma once

#include <string>
#include <vector>

#include "picentlab/group_spec.hpp"

namespace picent {

/// Named small groups shipped with the toolkit (also under fixtures/ as JSON).
std::vector<std::string> fixture_names();
/// Throws BadParameters for an unknown name.
GroupSpec fixture(const std::string& name);
bool fixture_is_abelian(const std::string& name);

}  // namespace picent
