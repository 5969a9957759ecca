#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ddrs/bigint.hpp"
#include "ddrs/bitio.hpp"
#include "ddrs/bits.hpp"

namespace ddrs::schemes {

using ddrs::Bits;
using ddrs::BitsView;

// --- scheme configurations -------------------------------------------------

// Fixed-length chunking with chunk length ell.
struct FldConfig {
    std::uint32_t chunk_len = 1;
};

// Two-stage chunking: segments of length segment_len, then chunks of length
// chunk_len (<= segment_len) within each segment.
struct MfldConfig {
    std::uint32_t segment_len = 1;
    std::uint32_t chunk_len = 1;
};

// Two-stage chunking with the chunk length derived from the source parameters:
// ell = ceil(log2(B/A) / H(gamma, delta)), clamped to segment_len. The source
// parameters are trusted metadata carried in the config, not estimated from
// the stream.
struct AfldConfig {
    std::uint32_t segment_len = 1;
    double gamma = 0.25;
    std::uint64_t symbol_count = 1; // A
    std::uint64_t block_count = 2;  // B
    double delta = 0.0;
};

// Fixed-length chunking where a chunk within Hamming distance floor(2 beta ell)
// of an earlier entry is coded as a pointer plus a mismatch record.
struct EddConfig {
    std::uint32_t chunk_len = 1;
    double beta = 0.25; // requires delta < beta <= 1/4 for the stream's source
};

// Variable-length chunking: chunks end at the first completion of the marker
// 0^marker_len.
struct VldConfig {
    std::uint32_t marker_len = 1;
};

using SchemeConfig = std::variant<FldConfig, MfldConfig, AfldConfig, EddConfig, VldConfig>;

void validate(const SchemeConfig& config); // throws std::invalid_argument
std::string_view scheme_name(const SchemeConfig& config);

std::uint32_t derived_chunk_len(const AfldConfig& config);
inline std::uint32_t edd_radius(const EddConfig& config) {
    return static_cast<std::uint32_t>(2.0 * config.beta * config.chunk_len);
}

// --- chunking ---------------------------------------------------------------

// Chunks of length ell; a final shorter chunk only when the remainder is
// positive. Returned views alias the input.
std::vector<BitsView> chunk_fixed(BitsView s, std::uint32_t ell);

// Segments of length segment_len (final partial segment kept), each split by
// chunk_fixed.
std::vector<BitsView> chunk_two_stage(BitsView s, std::uint32_t segment_len, std::uint32_t ell);

// Greedy scan cutting immediately after each completion of 0^marker_len; the
// leftover tail, if nonempty, is a final chunk with no marker requirement.
std::vector<BitsView> chunk_marker(BitsView s, std::uint32_t marker_len);

// --- dictionary -------------------------------------------------------------

// Distinct chunks in first-insertion order. Lookup is exact on the
// (length, content) pair; chunks of different lengths never match.
class Dictionary {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t find(BitsView chunk) const;
    std::size_t insert(BitsView chunk); // throws std::logic_error on duplicates
    BitsView entry(std::size_t index) const;

    // Width of a pointer emitted while the dictionary has this many entries:
    // ceil(log2(size)), zero when a single entry leaves nothing to choose.
    static std::uint32_t pointer_width(std::size_t size) noexcept;

private:
    struct TransparentHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
        std::size_t operator()(const std::string& s) const noexcept {
            return std::hash<std::string_view>{}(s);
        }
    };
    std::unordered_map<std::string, std::uint32_t, TransparentHash, std::equal_to<>> index_;
    std::vector<const std::string*> entries_; // points at map keys (node-stable)
};

// --- encoding ---------------------------------------------------------------

struct EncodeStats {
    std::uint64_t header_bits = 0;
    std::uint64_t indicator_bits = 0;
    std::uint64_t literal_bits = 0;
    std::uint64_t pointer_bits = 0;
    std::uint64_t mismatch_bits = 0;
    std::uint64_t dict_size_final = 0;
    std::uint64_t chunk_count = 0;
    std::uint64_t input_bits = 0;

    std::uint64_t total_bits() const noexcept {
        return header_bits + indicator_bits + literal_bits + pointer_bits + mismatch_bits;
    }
};

// Per-chunk encoder event, for tests and diagnostics.
struct ChunkTrace {
    std::uint32_t chunk_len = 0;
    bool literal = false;
    std::uint64_t dict_size_before = 0;
    std::uint32_t pointer_width = 0;
    std::uint32_t mismatch_record_bits = 0;
};

struct EncodeResult {
    BitSeq bits;
    EncodeStats stats;
    std::vector<ChunkTrace> trace; // filled only when requested
};

// Prefix-free encoding: gamma(|s|), then per chunk either 1 + literal bits or
// 0 + pointer (+ mismatch record under EDD).
EncodeResult encode(BitsView stream, const SchemeConfig& config, bool with_trace = false);

// Exact inverse; consumes exactly the codeword bits and ignores anything after
// them. Throws MalformedStream on truncated or inconsistent input.
Bits decode(BitReader& reader, const SchemeConfig& config);
Bits decode(const BitSeq& bits, const SchemeConfig& config);

// --- EDD mismatch records ----------------------------------------------------

// Count field of ceil(log2(radius+1)) bits holding the mismatch count t, then
// the colexicographic subset rank of the mismatch positions in exactly
// ceil(log2(binom(ell, t))) bits.
BitSeq encode_mismatches(BitsView reference, BitsView chunk, std::uint32_t radius);

std::uint32_t mismatch_count_field_width(std::uint32_t radius) noexcept;
std::uint32_t subset_rank_width(std::uint32_t ell, std::uint32_t t);

// Colexicographic combinatorial number system over t-subsets of {0..ell-1}.
BigUint rank_subset(std::span<const std::uint32_t> positions, std::uint32_t ell);
std::vector<std::uint32_t> unrank_subset(const BigUint& rank, std::uint32_t t, std::uint32_t ell);

} // namespace ddrs::schemes
