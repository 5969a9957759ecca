#include "ddrs/bitio.hpp"

#include <bit>
#include <stdexcept>

namespace ddrs {

BitSeq BitSeq::from_string(std::string_view bits) {
    BitSeq out;
    for (char c : bits) {
        if (c == '0') {
            out.append_bit(0);
        } else if (c == '1') {
            out.append_bit(1);
        } else {
            throw std::invalid_argument("BitSeq::from_string: expected '0' or '1'");
        }
    }
    return out;
}

unsigned BitSeq::bit(std::size_t index) const {
    if (index >= size_) {
        throw std::out_of_range("BitSeq::bit: index past end");
    }
    return (bytes_[index / 8] >> (7 - index % 8)) & 1u;
}

void BitSeq::append_bit(unsigned bit) {
    if (size_ % 8 == 0) {
        bytes_.push_back(0);
    }
    if (bit & 1u) {
        bytes_[size_ / 8] |= static_cast<std::uint8_t>(0x80u >> (size_ % 8));
    }
    ++size_;
}

void BitSeq::append_uint(std::uint64_t value, unsigned width) {
    if (width > 64) {
        throw std::invalid_argument("BitSeq::append_uint: width > 64");
    }
    if (width < 64 && (value >> width) != 0) {
        throw std::invalid_argument("BitSeq::append_uint: value does not fit in width");
    }
    for (unsigned i = width; i-- > 0;) {
        append_bit(static_cast<unsigned>((value >> i) & 1u));
    }
}

void BitSeq::append(const BitSeq& other) {
    for (std::size_t i = 0; i < other.size_; ++i) {
        append_bit(other.bit(i));
    }
}

std::string BitSeq::to_string() const {
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        s.push_back(bit(i) ? '1' : '0');
    }
    return s;
}

std::vector<std::uint8_t> BitSeq::to_bytes() const {
    std::vector<std::uint8_t> out;
    out.reserve(8 + bytes_.size());
    std::uint64_t n = size_;
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<std::uint8_t>(n >> (8 * i)));
    }
    out.insert(out.end(), bytes_.begin(), bytes_.end());
    return out;
}

BitSeq BitSeq::from_bytes(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8) {
        throw MalformedStream("bit sequence header truncated", 0);
    }
    std::uint64_t n = 0;
    for (int i = 0; i < 8; ++i) {
        n |= static_cast<std::uint64_t>(bytes[static_cast<std::size_t>(i)]) << (8 * i);
    }
    const std::uint64_t payload_bytes = (n + 7) / 8;
    if (bytes.size() - 8 < payload_bytes) {
        throw MalformedStream("bit sequence payload truncated", 0);
    }
    BitSeq out;
    out.size_ = n;
    out.bytes_.assign(bytes.begin() + 8, bytes.begin() + 8 + static_cast<std::ptrdiff_t>(payload_bytes));
    // Force pad bits to zero so equality ignores whatever the writer left there.
    if (n % 8 != 0 && !out.bytes_.empty()) {
        out.bytes_.back() &= static_cast<std::uint8_t>(0xFFu << (8 - n % 8));
    }
    return out;
}

unsigned BitReader::read_bit() {
    if (pos_ >= seq_->size()) {
        throw MalformedStream("read past end of bit stream", pos_);
    }
    return seq_->bit(pos_++);
}

std::uint64_t BitReader::read_uint(unsigned width) {
    if (width > 64) {
        throw std::invalid_argument("BitReader::read_uint: width > 64");
    }
    if (remaining() < width) {
        throw MalformedStream("read past end of bit stream", pos_);
    }
    std::uint64_t value = 0;
    for (unsigned i = 0; i < width; ++i) {
        value = (value << 1) | read_bit();
    }
    return value;
}

unsigned elias_gamma_length(std::uint64_t n) {
    if (n == 0) {
        throw std::domain_error("elias gamma is defined for n >= 1");
    }
    const unsigned k = static_cast<unsigned>(std::bit_width(n)) - 1; // floor(log2 n)
    return 2 * k + 1;
}

void elias_gamma_append(BitSeq& out, std::uint64_t n) {
    if (n == 0) {
        throw std::domain_error("elias gamma is defined for n >= 1");
    }
    const unsigned k = static_cast<unsigned>(std::bit_width(n)) - 1;
    out.append_uint(0, k);
    out.append_uint(n, k + 1);
}

BitSeq elias_gamma_encode(std::uint64_t n) {
    BitSeq out;
    elias_gamma_append(out, n);
    return out;
}

std::uint64_t elias_gamma_decode(BitReader& reader) {
    unsigned zeros = 0;
    while (reader.read_bit() == 0) {
        ++zeros;
        if (zeros > 63) {
            throw MalformedStream("gamma codeword zero run too long", reader.position());
        }
    }
    std::uint64_t value = 1;
    for (unsigned i = 0; i < zeros; ++i) {
        value = (value << 1) | reader.read_bit();
    }
    return value;
}

} // namespace ddrs
