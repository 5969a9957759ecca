#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ddrs {

// Unsigned big integer with just the operations the counting code needs:
// add, subtract, compare, small multiply/divide, bit access. Limbs are 64-bit,
// little-endian, no leading zero limbs.
class BigUint {
public:
    BigUint() = default;
    explicit BigUint(std::uint64_t value);

    bool is_zero() const noexcept { return limbs_.empty(); }

    // Number of bits in the binary representation; 0 for zero.
    std::size_t bit_length() const noexcept;
    unsigned bit(std::size_t index) const noexcept;
    void set_bit(std::size_t index);

    BigUint& operator+=(const BigUint& rhs);
    BigUint& operator-=(const BigUint& rhs); // requires *this >= rhs
    BigUint& operator<<=(unsigned shift);

    BigUint& mul_small(std::uint64_t factor);
    // Divides in place, returns the remainder.
    std::uint64_t div_small(std::uint64_t divisor);

    static int compare(const BigUint& a, const BigUint& b) noexcept;
    friend bool operator==(const BigUint& a, const BigUint& b) noexcept { return compare(a, b) == 0; }
    friend bool operator<(const BigUint& a, const BigUint& b) noexcept { return compare(a, b) < 0; }
    friend bool operator<=(const BigUint& a, const BigUint& b) noexcept { return compare(a, b) <= 0; }
    friend bool operator>(const BigUint& a, const BigUint& b) noexcept { return compare(a, b) > 0; }
    friend bool operator>=(const BigUint& a, const BigUint& b) noexcept { return compare(a, b) >= 0; }

    friend BigUint operator+(BigUint a, const BigUint& b) { a += b; return a; }
    friend BigUint operator-(BigUint a, const BigUint& b) { a -= b; return a; }

    // Rounds to nearest; +inf when out of range.
    double to_double() const;
    std::string to_string() const; // decimal

    bool fits_uint64() const noexcept { return limbs_.size() <= 1; }
    std::uint64_t as_uint64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }

private:
    void trim();
    std::vector<std::uint64_t> limbs_;
};

// Exact binomial coefficient.
BigUint binom_big(unsigned n, unsigned k);

} // namespace ddrs
