#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ddrs {

// Thrown when an encoded stream cannot be decoded: truncated input, pointer
// past the end of the dictionary, mismatch count over the radius, bad container
// framing. Carries the bit position at which decoding gave up.
class MalformedStream : public std::runtime_error {
public:
    MalformedStream(const std::string& what, std::size_t bit_position)
        : std::runtime_error(what + " (at bit " + std::to_string(bit_position) + ")"),
          bit_position_(bit_position) {}

    std::size_t bit_position() const noexcept { return bit_position_; }

private:
    std::size_t bit_position_;
};

} // namespace ddrs
