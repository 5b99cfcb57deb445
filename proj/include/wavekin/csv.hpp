#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace wavekin {

// Locale-independent float formatting. 17 significant digits round-trips
// any double exactly.
inline std::string format_g17(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

// Shortest exact representation (filenames, slugs).
inline std::string format_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Slug component: shortest form, with a trailing ".0" for integral values so
// sweep filenames read as c1_1.0_c2_0.5.
inline std::string format_slug_value(double v) {
    std::string s = format_shortest(v);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

}  // namespace wavekin
