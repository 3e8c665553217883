#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "fpp/errors.hpp"

namespace fpp {

/// A lattice point in Z^d. Coordinates are 64-bit signed; arithmetic that
/// could wrap goes through checked_add.
using Point = std::vector<std::int64_t>;

inline std::int64_t checked_add_i64(std::int64_t a, std::int64_t b) {
    std::int64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw OverflowError("int64 overflow in point arithmetic");
    }
    return out;
}

inline Point point_add(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add_i64(a[i], b[i]);
    return out;
}

inline Point point_sub(const Point& a, const Point& b) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = checked_add_i64(a[i], -b[i]);
    return out;
}

inline Point point_neg(const Point& a) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline Point point_scale(const Point& a, std::int64_t t) {
    Point out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (__builtin_mul_overflow(a[i], t, &out[i])) {
            throw OverflowError("int64 overflow in point scaling");
        }
    }
    return out;
}

inline bool lex_less(const Point& a, const Point& b) { return a < b; }

inline std::int64_t linf_norm(const Point& a) {
    std::int64_t m = 0;
    for (auto c : a) m = std::max<std::int64_t>(m, std::llabs(c));
    return m;
}

inline std::int64_t l1_norm(const Point& a) {
    std::int64_t s = 0;
    for (auto c : a) s = checked_add_i64(s, std::llabs(c));
    return s;
}

inline std::string point_to_string(const Point& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    s += ")";
    return s;
}

struct PointHash {
    std::size_t operator()(const Point& p) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ (p.size() * 0xff51afd7ed558ccdull);
        for (auto c : p) {
            std::uint64_t x = static_cast<std::uint64_t>(c);
            x *= 0xff51afd7ed558ccdull;
            x ^= x >> 33;
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace fpp
