#pragma once

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace su2phase {

/// Exact half-integer, stored doubled so that j = 3/2 is `twice == 3`.
class HalfInt {
public:
    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
    static constexpr HalfInt from_int(int value) { return HalfInt(2 * value); }

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }
    constexpr bool is_integer() const { return twice_ % 2 == 0; }

    constexpr HalfInt operator-() const { return HalfInt(-twice_); }
    constexpr HalfInt operator+(HalfInt other) const { return HalfInt(twice_ + other.twice_); }
    constexpr HalfInt operator-(HalfInt other) const { return HalfInt(twice_ - other.twice_); }

    constexpr auto operator<=>(const HalfInt&) const = default;

    std::string str() const {
        if (is_integer()) return std::to_string(twice_ / 2);
        return std::to_string(twice_) + "/2";
    }

private:
    constexpr explicit HalfInt(int twice) : twice_(twice) {}

    int twice_ = 0;
};

/// True when m is a valid projection for sector label j.
constexpr bool is_projection_of(HalfInt m, HalfInt j) {
    return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() &&
           (j.twice() - m.twice()) % 2 == 0;
}

/// Row/column position of m in a ladder ordered m = j, j-1, ..., -j.
inline int ladder_index(HalfInt j, HalfInt m) {
    if (!is_projection_of(m, j)) {
        throw std::out_of_range("projection m=" + m.str() + " invalid for j=" + j.str());
    }
    return (j.twice() - m.twice()) / 2;
}

/// Inverse of ladder_index.
constexpr HalfInt ladder_projection(HalfInt j, int index) {
    return HalfInt::from_twice(j.twice() - 2 * index);
}

constexpr int ladder_size(HalfInt j) { return j.twice() + 1; }

}  // namespace su2phase
