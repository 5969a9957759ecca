#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ddrs/errors.hpp"

namespace ddrs {

// Growable bit sequence, MSB-first within each storage byte so that hex dumps
// read left to right in stream order.
class BitSeq {
public:
    BitSeq() = default;

    // Parses a string of '0'/'1' characters.
    static BitSeq from_string(std::string_view bits);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    unsigned bit(std::size_t index) const;

    void append_bit(unsigned bit);

    // Appends the width-bit big-endian representation of value.
    // Width 0 is a no-op (and then value must be 0).
    void append_uint(std::uint64_t value, unsigned width);

    void append(const BitSeq& other);

    std::string to_string() const;

    // Serialized form: bit count as a 64-bit little-endian integer, then the
    // bits packed MSB-first and zero-padded to a byte boundary.
    std::vector<std::uint8_t> to_bytes() const;
    static BitSeq from_bytes(std::span<const std::uint8_t> bytes);

    bool operator==(const BitSeq& other) const noexcept {
        return size_ == other.size_ && bytes_ == other.bytes_;
    }

private:
    std::vector<std::uint8_t> bytes_; // pad bits kept zero
    std::size_t size_ = 0;
};

// Cursor over a BitSeq. Reads past the end throw MalformedStream.
class BitReader {
public:
    explicit BitReader(const BitSeq& seq) : seq_(&seq) {}
    explicit BitReader(BitSeq&&) = delete; // reader aliases the sequence

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return seq_->size() - pos_; }

    unsigned read_bit();

    // Reads width bits as a big-endian unsigned integer. Width 0 returns 0
    // without advancing.
    std::uint64_t read_uint(unsigned width);

private:
    const BitSeq* seq_;
    std::size_t pos_ = 0;
};

// Elias gamma code for n >= 1: floor(log2 n) zeros followed by the binary
// expansion of n including its leading 1. Prefix-free.
BitSeq elias_gamma_encode(std::uint64_t n);
void elias_gamma_append(BitSeq& out, std::uint64_t n);
std::uint64_t elias_gamma_decode(BitReader& reader);

// Codeword length 2*floor(log2 n) + 1.
unsigned elias_gamma_length(std::uint64_t n);

} // namespace ddrs
