#ifndef COGMAP_FORMAT_HPP
#define COGMAP_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>
#include <vector>

namespace cogmap {

// Shortest decimal string that round-trips to the same double. Locale-free.
inline std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string format_double_list(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_double(values[i]);
    }
    return out;
}

} // namespace cogmap

#endif
