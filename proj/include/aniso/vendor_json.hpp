#pragma once

// Single include point for the vendored nlohmann/json header so the include
// path stays in one place.

#include <json.hpp>
