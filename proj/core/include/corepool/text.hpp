#pragma once

#include <string>

namespace corepool {

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double value);

}  // namespace corepool
