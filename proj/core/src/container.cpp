#include "ddrs/container.hpp"

#include <cmath>

#include "ddrs/errors.hpp"

namespace ddrs::schemes {

namespace {

constexpr std::uint8_t kMagic[4] = {'D', 'D', 'R', 'S'};

std::uint32_t to_micro(double value) {
    return static_cast<std::uint32_t>(std::llround(value * 1e6));
}

double from_micro(std::uint32_t micro) {
    return static_cast<double>(micro) / 1e6;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
}

class ByteCursor {
public:
    explicit ByteCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint8_t u8() {
        if (pos_ >= bytes_.size()) {
            throw MalformedStream("container truncated", pos_ * 8);
        }
        return bytes_[pos_++];
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        }
        return v;
    }

    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }
    std::size_t position() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

SchemeConfig quantize_config(const SchemeConfig& config) {
    SchemeConfig out = config;
    if (auto* afld = std::get_if<AfldConfig>(&out)) {
        afld->gamma = from_micro(to_micro(afld->gamma));
        afld->delta = from_micro(to_micro(afld->delta));
    } else if (auto* edd = std::get_if<EddConfig>(&out)) {
        edd->beta = from_micro(to_micro(edd->beta));
    }
    return out;
}

std::vector<std::uint8_t> container_write(const SchemeConfig& config, const BitSeq& payload) {
    validate(config);
    std::vector<std::uint8_t> out;
    out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
    out.push_back(kContainerVersion);
    out.push_back(static_cast<std::uint8_t>(config.index() + 1));
    if (const auto* fld = std::get_if<FldConfig>(&config)) {
        put_u32(out, fld->chunk_len);
    } else if (const auto* mfld = std::get_if<MfldConfig>(&config)) {
        put_u32(out, mfld->segment_len);
        put_u32(out, mfld->chunk_len);
    } else if (const auto* afld = std::get_if<AfldConfig>(&config)) {
        put_u32(out, afld->segment_len);
        put_u32(out, static_cast<std::uint32_t>(afld->symbol_count));
        put_u32(out, static_cast<std::uint32_t>(afld->block_count));
        put_u32(out, to_micro(afld->gamma));
        put_u32(out, to_micro(afld->delta));
    } else if (const auto* edd = std::get_if<EddConfig>(&config)) {
        put_u32(out, edd->chunk_len);
        put_u32(out, to_micro(edd->beta));
    } else {
        put_u32(out, std::get<VldConfig>(config).marker_len);
    }
    const auto payload_bytes = payload.to_bytes();
    out.insert(out.end(), payload_bytes.begin(), payload_bytes.end());
    return out;
}

Container container_read(std::span<const std::uint8_t> bytes) {
    ByteCursor cur{bytes};
    for (std::uint8_t expected : kMagic) {
        if (cur.u8() != expected) {
            throw MalformedStream("container magic mismatch", 0);
        }
    }
    const std::uint8_t version = cur.u8();
    if (version != kContainerVersion) {
        throw MalformedStream("unsupported container version", cur.position() * 8);
    }
    const std::uint8_t tag = cur.u8();
    SchemeConfig config;
    switch (tag) {
    case 1: {
        FldConfig c;
        c.chunk_len = cur.u32();
        config = c;
        break;
    }
    case 2: {
        MfldConfig c;
        c.segment_len = cur.u32();
        c.chunk_len = cur.u32();
        config = c;
        break;
    }
    case 3: {
        AfldConfig c;
        c.segment_len = cur.u32();
        c.symbol_count = cur.u32();
        c.block_count = cur.u32();
        c.gamma = from_micro(cur.u32());
        c.delta = from_micro(cur.u32());
        config = c;
        break;
    }
    case 4: {
        EddConfig c;
        c.chunk_len = cur.u32();
        c.beta = from_micro(cur.u32());
        config = c;
        break;
    }
    case 5: {
        VldConfig c;
        c.marker_len = cur.u32();
        config = c;
        break;
    }
    default:
        throw MalformedStream("unknown scheme tag", cur.position() * 8);
    }
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw MalformedStream(std::string("invalid scheme parameters: ") + e.what(),
                              cur.position() * 8);
    }
    Container out;
    out.config = config;
    out.payload = BitSeq::from_bytes(cur.rest());
    return out;
}

} // namespace ddrs::schemes
