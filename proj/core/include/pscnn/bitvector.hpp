#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pscnn/errors.hpp"

namespace pscnn {

/// Fixed-width binary word. Index 0 is the most significant bit; the width
/// never changes after construction (all transforms are width-preserving).
class BitVector {
public:
    BitVector() = default;

    /// All-zero word of the given width.
    explicit BitVector(std::size_t width) : bits_(width, 0) {
        if (width == 0) throw InvalidParameters("BitVector width must be >= 1");
    }

    /// Parses a string of '0'/'1' characters, MSB first.
    static BitVector from_string(const std::string& s) {
        BitVector b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] != '0' && s[i] != '1')
                throw InvalidParameters("BitVector literal must be 0/1 digits: " + s);
            b.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
        }
        return b;
    }

    /// Low `width` bits of `value`, MSB first.
    static BitVector from_uint(std::uint64_t value, std::size_t width) {
        BitVector b(width);
        for (std::size_t i = 0; i < width; ++i)
            b.bits_[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
        return b;
    }

    std::size_t width() const { return bits_.size(); }

    bool get(std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1 : 0; }

    /// Integer value, MSB-first interpretation. Width must be <= 64.
    std::uint64_t to_uint() const {
        if (width() > 64) throw InvalidParameters("BitVector wider than 64 bits");
        std::uint64_t v = 0;
        for (std::uint8_t bit : bits_) v = (v << 1) | bit;
        return v;
    }

    std::string to_string() const {
        std::string s(width(), '0');
        for (std::size_t i = 0; i < width(); ++i)
            if (bits_[i]) s[i] = '1';
        return s;
    }

    bool operator==(const BitVector& other) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace pscnn
