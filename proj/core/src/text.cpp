#include "corepool/text.hpp"

#include <charconv>
#include <cstdio>
#include <cstring>

namespace corepool {

std::string format_double(double value) {
    char buf[64];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        double back = 0.0;
        const auto [ptr, ec] = std::from_chars(buf, buf + std::strlen(buf), back);
        if (ec == std::errc{} && ptr == buf + std::strlen(buf) && back == value) {
            break;
        }
    }
    return buf;
}

}  // namespace corepool
