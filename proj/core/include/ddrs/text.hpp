#pragma once

#include <charconv>
#include <string>

namespace ddrs {

// Shortest decimal that round-trips; locale independent.
inline std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

} // namespace ddrs
