#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "ddrs/bits.hpp"
#include "ddrs/rng.hpp"

namespace ddrs::model {

using ddrs::Bits;
using ddrs::BitsView;

// Distribution of symbol lengths. Every kind keeps its support inside
// [mean/2, 2*mean], checked at construction.
class LengthLaw {
public:
    enum class Kind { Degenerate, UniformInt, Table };

    static LengthLaw degenerate(std::uint32_t length);
    static LengthLaw uniform_int(std::uint32_t lo, std::uint32_t hi);
    // Probabilities must sum to 1 within 1e-12.
    static LengthLaw table(std::vector<std::pair<std::uint32_t, double>> entries);

    Kind kind() const noexcept { return kind_; }
    double mean() const noexcept { return mean_; }
    bool is_degenerate() const noexcept { return kind_ == Kind::Degenerate; }
    std::uint32_t degenerate_length() const;

    std::uint32_t sample(Rng& rng) const;

private:
    LengthLaw() = default;
    Kind kind_ = Kind::Degenerate;
    double mean_ = 0.0;
    std::uint32_t lo_ = 0, hi_ = 0;                          // Degenerate uses lo_
    std::vector<std::pair<std::uint32_t, double>> entries_;  // Table
};

struct SourceParams {
    std::uint64_t symbol_count = 1; // A
    std::uint64_t block_count = 1;  // B
    LengthLaw length_law = LengthLaw::degenerate(1);
    double delta = 0.0;             // edit probability, in [0, 1/2)

    void validate() const; // throws std::invalid_argument
};

// One realized draw from the source: A symbols, B ancestor picks, the
// delta-edited blocks, and their concatenation.
struct SourceInstance {
    std::vector<Bits> symbols;
    std::vector<std::uint32_t> ancestors; // 0-based index into symbols
    std::vector<Bits> blocks;
    Bits stream;
};

// A iid symbols; lengths from the law, bits uniform. Sampling is with
// replacement, so equal contents can occur as distinct symbols.
std::vector<Bits> sample_symbols(const SourceParams& params, Rng& rng);

// Flips each bit independently with probability delta. Accepts any delta in
// [0, 1]; output length equals input length.
Bits delta_edit(BitsView x, double delta, Rng& rng);

SourceInstance generate_stream(const SourceParams& params, Rng& rng);

// Entropy bracket for the source:
//   H(delta) B L  <=  H(s)  <=  H(delta) B L + B log2(A) + A (2L + 1)
// with L the mean of the length law.
struct EntropyBounds {
    double lower;
    double upper;
};
EntropyBounds entropy_bounds(const SourceParams& params);

// Plain text export: "A B delta" line, A symbol lines, one line of 1-based
// ancestor indices, B block lines. The stream is the concatenation of the
// block lines.
void write_instance_text(const SourceParams& params, const SourceInstance& instance,
                         std::ostream& out);

} // namespace ddrs::model
