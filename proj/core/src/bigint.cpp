#include "ddrs/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace ddrs {

namespace {
using u128 = unsigned __int128;
}

BigUint::BigUint(std::uint64_t value) {
    if (value != 0) {
        limbs_.push_back(value);
    }
}

void BigUint::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) {
        limbs_.pop_back();
    }
}

std::size_t BigUint::bit_length() const noexcept {
    if (limbs_.empty()) {
        return 0;
    }
    std::uint64_t top = limbs_.back();
    std::size_t bits = 0;
    while (top != 0) {
        top >>= 1;
        ++bits;
    }
    return (limbs_.size() - 1) * 64 + bits;
}

unsigned BigUint::bit(std::size_t index) const noexcept {
    const std::size_t limb = index / 64;
    if (limb >= limbs_.size()) {
        return 0;
    }
    return static_cast<unsigned>((limbs_[limb] >> (index % 64)) & 1u);
}

void BigUint::set_bit(std::size_t index) {
    const std::size_t limb = index / 64;
    if (limb >= limbs_.size()) {
        limbs_.resize(limb + 1, 0);
    }
    limbs_[limb] |= std::uint64_t{1} << (index % 64);
}

BigUint& BigUint::operator+=(const BigUint& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) {
        limbs_.resize(rhs.limbs_.size(), 0);
    }
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 sum = static_cast<u128>(limbs_[i]) + carry;
        if (i < rhs.limbs_.size()) {
            sum += rhs.limbs_[i];
        }
        limbs_[i] = static_cast<std::uint64_t>(sum);
        carry = static_cast<std::uint64_t>(sum >> 64);
        if (carry == 0 && i >= rhs.limbs_.size()) {
            break;
        }
    }
    if (carry != 0) {
        limbs_.push_back(carry);
    }
    return *this;
}

BigUint& BigUint::operator-=(const BigUint& rhs) {
    if (compare(*this, rhs) < 0) {
        throw std::invalid_argument("BigUint subtraction underflow");
    }
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        u128 sub = static_cast<u128>(borrow);
        if (i < rhs.limbs_.size()) {
            sub += rhs.limbs_[i];
        }
        if (static_cast<u128>(limbs_[i]) >= sub) {
            limbs_[i] = static_cast<std::uint64_t>(limbs_[i] - static_cast<std::uint64_t>(sub));
            borrow = 0;
        } else {
            limbs_[i] = static_cast<std::uint64_t>((static_cast<u128>(1) << 64) + limbs_[i] - sub);
            borrow = 1;
        }
        if (borrow == 0 && i >= rhs.limbs_.size()) {
            break;
        }
    }
    trim();
    return *this;
}

BigUint& BigUint::operator<<=(unsigned shift) {
    if (is_zero() || shift == 0) {
        return *this;
    }
    const unsigned limb_shift = shift / 64;
    const unsigned bit_shift = shift % 64;
    limbs_.insert(limbs_.begin(), limb_shift, 0);
    if (bit_shift != 0) {
        std::uint64_t carry = 0;
        for (std::size_t i = limb_shift; i < limbs_.size(); ++i) {
            const std::uint64_t next_carry = limbs_[i] >> (64 - bit_shift);
            limbs_[i] = (limbs_[i] << bit_shift) | carry;
            carry = next_carry;
        }
        if (carry != 0) {
            limbs_.push_back(carry);
        }
    }
    return *this;
}

BigUint& BigUint::mul_small(std::uint64_t factor) {
    if (factor == 0) {
        limbs_.clear();
        return *this;
    }
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
        u128 prod = static_cast<u128>(limb) * factor + carry;
        limb = static_cast<std::uint64_t>(prod);
        carry = static_cast<std::uint64_t>(prod >> 64);
    }
    if (carry != 0) {
        limbs_.push_back(carry);
    }
    return *this;
}

std::uint64_t BigUint::div_small(std::uint64_t divisor) {
    if (divisor == 0) {
        throw std::invalid_argument("BigUint division by zero");
    }
    u128 rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        u128 acc = (rem << 64) | limbs_[i];
        limbs_[i] = static_cast<std::uint64_t>(acc / divisor);
        rem = acc % divisor;
    }
    trim();
    return static_cast<std::uint64_t>(rem);
}

int BigUint::compare(const BigUint& a, const BigUint& b) noexcept {
    if (a.limbs_.size() != b.limbs_.size()) {
        return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
    }
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
        if (a.limbs_[i] != b.limbs_[i]) {
            return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
        }
    }
    return 0;
}

double BigUint::to_double() const {
    double value = 0.0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        value = value * 18446744073709551616.0 + static_cast<double>(limbs_[i]);
        if (std::isinf(value)) {
            return value;
        }
    }
    return value;
}

std::string BigUint::to_string() const {
    if (is_zero()) {
        return "0";
    }
    BigUint tmp = *this;
    std::string digits;
    while (!tmp.is_zero()) {
        const std::uint64_t chunk = tmp.div_small(1000000000000000000ull);
        if (tmp.is_zero()) {
            digits = std::to_string(chunk) + digits;
        } else {
            std::string part = std::to_string(chunk);
            digits = std::string(18 - part.size(), '0') + part + digits;
        }
    }
    return digits;
}

BigUint binom_big(unsigned n, unsigned k) {
    if (k > n) {
        return BigUint{};
    }
    if (k > n - k) {
        k = n - k;
    }
    BigUint result{1};
    // result stays integral after each step: it is binom(n-k+i, i).
    for (unsigned i = 1; i <= k; ++i) {
        result.mul_small(n - k + i);
        result.div_small(i);
    }
    return result;
}

} // namespace ddrs
