#include "ddrs/schemes.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "ddrs/analytics.hpp"
#include "ddrs/errors.hpp"

namespace ddrs::schemes {

namespace {

std::string_view as_string_view(BitsView bits) {
    return {reinterpret_cast<const char*>(bits.data()), bits.size()};
}

BitsView as_bits_view(const std::string& s) {
    return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Packed form of a fixed-length chunk, for Hamming scans.
std::vector<std::uint64_t> pack_words(BitsView bits) {
    std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            words[i / 64] |= std::uint64_t{1} << (i % 64);
        }
    }
    return words;
}

// Earliest-insertion search among equal-length entries within a Hamming
// radius. Entries are appended in dictionary order, so the first hit of a
// linear scan is the smallest index.
class HammingMatcher {
public:
    explicit HammingMatcher(std::uint32_t radius) : radius_(radius) {}

    void add(BitsView chunk, std::size_t dict_index) {
        entries_.push_back({pack_words(chunk), dict_index});
    }

    std::size_t find_within_radius(BitsView chunk) const {
        const auto query = pack_words(chunk);
        for (const auto& e : entries_) {
            std::uint32_t dist = 0;
            for (std::size_t w = 0; w < query.size(); ++w) {
                dist += static_cast<std::uint32_t>(std::popcount(query[w] ^ e.words[w]));
                if (dist > radius_) {
                    break;
                }
            }
            if (dist <= radius_) {
                return e.dict_index;
            }
        }
        return Dictionary::npos;
    }

private:
    struct Entry {
        std::vector<std::uint64_t> words;
        std::size_t dict_index;
    };
    std::uint32_t radius_;
    std::vector<Entry> entries_;
};

struct ResolvedScheme {
    enum class Kind { Fixed, TwoStage, Edd, Marker } kind;
    std::uint32_t chunk_len = 0;   // Fixed/TwoStage/Edd
    std::uint32_t segment_len = 0; // TwoStage
    std::uint32_t radius = 0;      // Edd
    std::uint32_t marker_len = 0;  // Marker
};

ResolvedScheme resolve(const SchemeConfig& config) {
    validate(config);
    ResolvedScheme r{};
    if (const auto* fld = std::get_if<FldConfig>(&config)) {
        r.kind = ResolvedScheme::Kind::Fixed;
        r.chunk_len = fld->chunk_len;
    } else if (const auto* mfld = std::get_if<MfldConfig>(&config)) {
        r.kind = ResolvedScheme::Kind::TwoStage;
        r.chunk_len = mfld->chunk_len;
        r.segment_len = mfld->segment_len;
    } else if (const auto* afld = std::get_if<AfldConfig>(&config)) {
        r.kind = ResolvedScheme::Kind::TwoStage;
        r.chunk_len = derived_chunk_len(*afld);
        r.segment_len = afld->segment_len;
    } else if (const auto* edd = std::get_if<EddConfig>(&config)) {
        r.kind = ResolvedScheme::Kind::Edd;
        r.chunk_len = edd->chunk_len;
        r.radius = edd_radius(*edd);
    } else {
        r.kind = ResolvedScheme::Kind::Marker;
        r.marker_len = std::get<VldConfig>(config).marker_len;
    }
    return r;
}

// Length of the next chunk, from the decoded position and the stream length.
std::uint32_t next_chunk_len(const ResolvedScheme& scheme, std::uint64_t pos, std::uint64_t total) {
    const std::uint64_t remaining = total - pos;
    switch (scheme.kind) {
    case ResolvedScheme::Kind::Fixed:
    case ResolvedScheme::Kind::Edd:
        return static_cast<std::uint32_t>(std::min<std::uint64_t>(scheme.chunk_len, remaining));
    case ResolvedScheme::Kind::TwoStage: {
        const std::uint64_t seg_start = pos / scheme.segment_len * scheme.segment_len;
        const std::uint64_t seg_len = std::min<std::uint64_t>(scheme.segment_len, total - seg_start);
        const std::uint64_t offset = pos - seg_start;
        return static_cast<std::uint32_t>(
            std::min<std::uint64_t>(scheme.chunk_len, seg_len - offset));
    }
    case ResolvedScheme::Kind::Marker:
        return 0; // length is content-defined
    }
    throw std::logic_error("next_chunk_len: bad kind");
}

} // namespace

void validate(const SchemeConfig& config) {
    if (const auto* fld = std::get_if<FldConfig>(&config)) {
        if (fld->chunk_len < 1) {
            throw std::invalid_argument("fld: chunk length must be >= 1");
        }
    } else if (const auto* mfld = std::get_if<MfldConfig>(&config)) {
        if (mfld->chunk_len < 1 || mfld->chunk_len > mfld->segment_len) {
            throw std::invalid_argument("mfld: need 1 <= chunk length <= segment length");
        }
    } else if (const auto* afld = std::get_if<AfldConfig>(&config)) {
        if (afld->segment_len < 1) {
            throw std::invalid_argument("afld: segment length must be >= 1");
        }
        if (afld->symbol_count < 1 || afld->block_count <= afld->symbol_count) {
            throw std::invalid_argument("afld: need B > A >= 1");
        }
        if (!(afld->gamma > afld->delta && afld->gamma < 0.5)) {
            throw std::invalid_argument("afld: need delta < gamma < 1/2");
        }
        if (!(afld->delta >= 0.0 && afld->delta < 0.5)) {
            throw std::invalid_argument("afld: delta must be in [0, 1/2)");
        }
    } else if (const auto* edd = std::get_if<EddConfig>(&config)) {
        if (edd->chunk_len < 1) {
            throw std::invalid_argument("edd: chunk length must be >= 1");
        }
        if (!(edd->beta > 0.0 && edd->beta <= 0.25)) {
            throw std::invalid_argument("edd: need 0 < beta <= 1/4");
        }
    } else if (const auto* vld = std::get_if<VldConfig>(&config)) {
        if (vld->marker_len < 1) {
            throw std::invalid_argument("vld: marker length must be >= 1");
        }
    }
}

std::string_view scheme_name(const SchemeConfig& config) {
    switch (config.index()) {
    case 0: return "fld";
    case 1: return "mfld";
    case 2: return "afld";
    case 3: return "edd";
    default: return "vld";
    }
}

std::uint32_t derived_chunk_len(const AfldConfig& config) {
    // delta = 0 would make the cross entropy vanish; treat as "no edits" and
    // fall back to the segment length, which aligns chunks with symbols.
    if (config.delta == 0.0) {
        return config.segment_len;
    }
    return analytics::afld_chunk_length(config.block_count, config.symbol_count, config.gamma,
                                        config.delta, config.segment_len);
}

std::vector<BitsView> chunk_fixed(BitsView s, std::uint32_t ell) {
    if (ell < 1) {
        throw std::invalid_argument("chunk_fixed: ell must be >= 1");
    }
    std::vector<BitsView> chunks;
    chunks.reserve(s.size() / ell + 1);
    std::size_t pos = 0;
    while (pos + ell <= s.size()) {
        chunks.push_back(s.subspan(pos, ell));
        pos += ell;
    }
    if (pos < s.size()) {
        chunks.push_back(s.subspan(pos));
    }
    return chunks;
}

std::vector<BitsView> chunk_two_stage(BitsView s, std::uint32_t segment_len, std::uint32_t ell) {
    if (ell < 1 || ell > segment_len) {
        throw std::invalid_argument("chunk_two_stage: need 1 <= ell <= segment length");
    }
    std::vector<BitsView> chunks;
    for (std::size_t pos = 0; pos < s.size(); pos += segment_len) {
        const auto segment = s.subspan(pos, std::min<std::size_t>(segment_len, s.size() - pos));
        for (auto chunk : chunk_fixed(segment, ell)) {
            chunks.push_back(chunk);
        }
    }
    return chunks;
}

std::vector<BitsView> chunk_marker(BitsView s, std::uint32_t marker_len) {
    if (marker_len < 1) {
        throw std::invalid_argument("chunk_marker: marker length must be >= 1");
    }
    std::vector<BitsView> chunks;
    std::size_t start = 0;
    std::uint32_t zero_run = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        zero_run = (s[i] == 0) ? zero_run + 1 : 0;
        if (zero_run == marker_len) {
            chunks.push_back(s.subspan(start, i + 1 - start));
            start = i + 1;
            zero_run = 0;
        }
    }
    if (start < s.size()) {
        chunks.push_back(s.subspan(start));
    }
    return chunks;
}

std::size_t Dictionary::find(BitsView chunk) const {
    const auto it = index_.find(as_string_view(chunk));
    return it == index_.end() ? npos : it->second;
}

std::size_t Dictionary::insert(BitsView chunk) {
    const auto idx = static_cast<std::uint32_t>(entries_.size());
    const auto [it, inserted] = index_.emplace(std::string(as_string_view(chunk)), idx);
    if (!inserted) {
        throw std::logic_error("Dictionary::insert: duplicate entry");
    }
    entries_.push_back(&it->first);
    return idx;
}

BitsView Dictionary::entry(std::size_t index) const {
    return as_bits_view(*entries_.at(index));
}

std::uint32_t Dictionary::pointer_width(std::size_t size) noexcept {
    if (size <= 1) {
        return 0;
    }
    return static_cast<std::uint32_t>(std::bit_width(size - 1));
}

std::uint32_t mismatch_count_field_width(std::uint32_t radius) noexcept {
    return static_cast<std::uint32_t>(std::bit_width(radius));
}

std::uint32_t subset_rank_width(std::uint32_t ell, std::uint32_t t) {
    BigUint count = binom_big(ell, t);
    if (count <= BigUint{1}) {
        return 0;
    }
    count -= BigUint{1};
    return static_cast<std::uint32_t>(count.bit_length());
}

BigUint rank_subset(std::span<const std::uint32_t> positions, std::uint32_t ell) {
    BigUint rank;
    std::uint32_t prev = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const std::uint32_t p = positions[i];
        if (p >= ell || (i > 0 && p <= prev)) {
            throw std::invalid_argument("rank_subset: positions must be ascending and < ell");
        }
        rank += binom_big(p, static_cast<unsigned>(i + 1));
        prev = p;
    }
    return rank;
}

std::vector<std::uint32_t> unrank_subset(const BigUint& rank, std::uint32_t t, std::uint32_t ell) {
    if (t > ell) {
        throw std::invalid_argument("unrank_subset: t > ell");
    }
    if (rank >= binom_big(ell, t)) {
        throw std::invalid_argument("unrank_subset: rank out of range");
    }
    std::vector<std::uint32_t> positions(t);
    BigUint rem = rank;
    std::uint32_t upper = ell; // exclusive bound for the next position
    for (std::uint32_t i = t; i >= 1; --i) {
        std::uint32_t p = upper;
        while (p > 0) {
            --p;
            if (binom_big(p, i) <= rem) {
                break;
            }
        }
        positions[i - 1] = p;
        rem -= binom_big(p, i);
        upper = p;
    }
    return positions;
}

BitSeq encode_mismatches(BitsView reference, BitsView chunk, std::uint32_t radius) {
    if (reference.size() != chunk.size()) {
        throw std::invalid_argument("encode_mismatches: length mismatch");
    }
    std::vector<std::uint32_t> positions;
    for (std::size_t i = 0; i < chunk.size(); ++i) {
        if (reference[i] != chunk[i]) {
            positions.push_back(static_cast<std::uint32_t>(i));
        }
    }
    if (positions.size() > radius) {
        throw std::invalid_argument("encode_mismatches: distance exceeds radius");
    }
    const auto ell = static_cast<std::uint32_t>(chunk.size());
    const auto t = static_cast<std::uint32_t>(positions.size());
    BitSeq out;
    out.append_uint(t, mismatch_count_field_width(radius));
    const std::uint32_t width = subset_rank_width(ell, t);
    if (width > 0) {
        const BigUint rank = rank_subset(positions, ell);
        for (std::uint32_t i = width; i-- > 0;) {
            out.append_bit(rank.bit(i));
        }
    }
    return out;
}

EncodeResult encode(BitsView stream, const SchemeConfig& config, bool with_trace) {
    const ResolvedScheme scheme = resolve(config);
    if (stream.empty()) {
        throw std::invalid_argument("encode: input stream must be nonempty");
    }

    std::vector<BitsView> chunks;
    switch (scheme.kind) {
    case ResolvedScheme::Kind::Fixed:
    case ResolvedScheme::Kind::Edd:
        chunks = chunk_fixed(stream, scheme.chunk_len);
        break;
    case ResolvedScheme::Kind::TwoStage:
        chunks = chunk_two_stage(stream, scheme.segment_len, scheme.chunk_len);
        break;
    case ResolvedScheme::Kind::Marker:
        chunks = chunk_marker(stream, scheme.marker_len);
        break;
    }

    EncodeResult result;
    result.stats.input_bits = stream.size();
    elias_gamma_append(result.bits, stream.size());
    result.stats.header_bits = result.bits.size();
    if (with_trace) {
        result.trace.reserve(chunks.size());
    }

    Dictionary dict;
    HammingMatcher matcher{scheme.radius};
    const bool is_edd = scheme.kind == ResolvedScheme::Kind::Edd;

    for (const auto chunk : chunks) {
        ++result.stats.chunk_count;
        const std::size_t dict_before = dict.size();
        std::size_t match = Dictionary::npos;
        if (is_edd) {
            // The radius is defined for full-length chunks only; a final
            // partial chunk is always a literal.
            if (chunk.size() == scheme.chunk_len) {
                match = matcher.find_within_radius(chunk);
            }
        } else {
            match = dict.find(chunk);
        }

        ChunkTrace trace{};
        trace.chunk_len = static_cast<std::uint32_t>(chunk.size());
        trace.dict_size_before = dict_before;

        result.bits.append_bit(match == Dictionary::npos ? 1u : 0u);
        ++result.stats.indicator_bits;
        if (match == Dictionary::npos) {
            for (auto b : chunk) {
                result.bits.append_bit(b);
            }
            result.stats.literal_bits += chunk.size();
            const std::size_t idx = dict.insert(chunk);
            if (is_edd && chunk.size() == scheme.chunk_len) {
                matcher.add(chunk, idx);
            }
            trace.literal = true;
        } else {
            const std::uint32_t width = Dictionary::pointer_width(dict_before);
            result.bits.append_uint(match, width);
            result.stats.pointer_bits += width;
            trace.pointer_width = width;
            if (is_edd) {
                const BitSeq record = encode_mismatches(dict.entry(match), chunk, scheme.radius);
                result.bits.append(record);
                result.stats.mismatch_bits += record.size();
                trace.mismatch_record_bits = static_cast<std::uint32_t>(record.size());
            }
        }
        if (with_trace) {
            result.trace.push_back(trace);
        }
    }

    result.stats.dict_size_final = dict.size();
    if (result.stats.total_bits() != result.bits.size()) {
        throw std::logic_error("encode: stats ledger does not match emitted bits");
    }
    return result;
}

Bits decode(BitReader& reader, const SchemeConfig& config) {
    const ResolvedScheme scheme = resolve(config);
    const std::uint64_t total = elias_gamma_decode(reader);
    if (total == 0) {
        throw MalformedStream("decode: zero-length stream", reader.position());
    }

    Bits out;
    // Size hint only: an adversarial header can claim any length, so cap the
    // upfront allocation by what the remaining bits could plausibly produce.
    out.reserve(std::min<std::uint64_t>(total, reader.remaining() * 8 + 1024));
    Dictionary dict;
    Bits scratch;

    while (out.size() < total) {
        const unsigned indicator = reader.read_bit();
        if (indicator == 1) {
            scratch.clear();
            if (scheme.kind == ResolvedScheme::Kind::Marker) {
                // Mirror the greedy chunker: stop at the first completion of
                // the marker, or at the end of the stream.
                std::uint32_t zero_run = 0;
                while (out.size() + scratch.size() < total) {
                    const unsigned bit = reader.read_bit();
                    scratch.push_back(static_cast<std::uint8_t>(bit));
                    zero_run = (bit == 0) ? zero_run + 1 : 0;
                    if (zero_run == scheme.marker_len) {
                        break;
                    }
                }
            } else {
                const std::uint32_t len = next_chunk_len(scheme, out.size(), total);
                scratch.reserve(len);
                for (std::uint32_t i = 0; i < len; ++i) {
                    scratch.push_back(static_cast<std::uint8_t>(reader.read_bit()));
                }
            }
            try {
                dict.insert(scratch);
            } catch (const std::logic_error&) {
                throw MalformedStream("decode: duplicate literal chunk", reader.position());
            }
            out.insert(out.end(), scratch.begin(), scratch.end());
        } else {
            if (dict.size() == 0) {
                throw MalformedStream("decode: pointer before any dictionary entry",
                                      reader.position());
            }
            const std::uint32_t width = Dictionary::pointer_width(dict.size());
            const std::uint64_t index = reader.read_uint(width);
            if (index >= dict.size()) {
                throw MalformedStream("decode: pointer past end of dictionary",
                                      reader.position());
            }
            const BitsView entry = dict.entry(index);

            if (scheme.kind == ResolvedScheme::Kind::Marker) {
                if (out.size() + entry.size() > total) {
                    throw MalformedStream("decode: repeated chunk overruns stream",
                                          reader.position());
                }
                out.insert(out.end(), entry.begin(), entry.end());
            } else {
                const std::uint32_t expect = next_chunk_len(scheme, out.size(), total);
                if (entry.size() != expect) {
                    throw MalformedStream("decode: repeated chunk has wrong length",
                                          reader.position());
                }
                if (scheme.kind == ResolvedScheme::Kind::Edd) {
                    const std::uint32_t cf_width = mismatch_count_field_width(scheme.radius);
                    const std::uint64_t t = reader.read_uint(cf_width);
                    if (t > scheme.radius) {
                        throw MalformedStream("decode: mismatch count exceeds radius",
                                              reader.position());
                    }
                    const std::uint32_t rank_width =
                        subset_rank_width(static_cast<std::uint32_t>(entry.size()),
                                          static_cast<std::uint32_t>(t));
                    BigUint rank;
                    for (std::uint32_t i = 0; i < rank_width; ++i) {
                        if (reader.read_bit()) {
                            rank.set_bit(rank_width - 1 - i);
                        }
                    }
                    if (rank >= binom_big(static_cast<unsigned>(entry.size()),
                                          static_cast<unsigned>(t))) {
                        throw MalformedStream("decode: mismatch rank out of range",
                                              reader.position());
                    }
                    scratch.assign(entry.begin(), entry.end());
                    for (auto pos : unrank_subset(rank, static_cast<std::uint32_t>(t),
                                                  static_cast<std::uint32_t>(entry.size()))) {
                        scratch[pos] ^= 1u;
                    }
                    out.insert(out.end(), scratch.begin(), scratch.end());
                } else {
                    out.insert(out.end(), entry.begin(), entry.end());
                }
            }
        }
    }
    return out;
}

Bits decode(const BitSeq& bits, const SchemeConfig& config) {
    BitReader reader{bits};
    return decode(reader, config);
}

} // namespace ddrs::schemes
