#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ddrs {

// Unpacked bit string: one 0/1 value per element. The working representation
// for streams, symbols, blocks, and chunks; BitSeq is the packed form used for
// encodings.
using Bits = std::vector<std::uint8_t>;
using BitsView = std::span<const std::uint8_t>;

inline Bits bits_from_string(std::string_view s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        out.push_back(c == '1' ? 1 : 0);
    }
    return out;
}

inline std::string bits_to_string(BitsView bits) {
    std::string out;
    out.reserve(bits.size());
    for (auto b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

// Bytes -> bits, MSB first within each byte.
inline Bits bits_from_bytes(std::span<const std::uint8_t> bytes) {
    Bits out;
    out.reserve(bytes.size() * 8);
    for (auto byte : bytes) {
        for (int i = 7; i >= 0; --i) {
            out.push_back(static_cast<std::uint8_t>((byte >> i) & 1u));
        }
    }
    return out;
}

// Bits -> bytes; bit count must be a multiple of 8.
inline std::vector<std::uint8_t> bits_to_bytes(BitsView bits) {
    std::vector<std::uint8_t> out(bits.size() / 8, 0);
    for (std::size_t i = 0; i < out.size() * 8; ++i) {
        if (bits[i]) {
            out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
        }
    }
    return out;
}

} // namespace ddrs
