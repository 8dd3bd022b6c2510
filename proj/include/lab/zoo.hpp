#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace lab {

// Canonical batch of group specs used by the verification suites.
std::vector<std::pair<std::string, nlohmann::json>> builtin_zoo();

}  // namespace lab
