#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ddrs/bitio.hpp"
#include "ddrs/schemes.hpp"

namespace ddrs::schemes {

// DDRS container: magic "DDRS", version byte 0x01, scheme tag byte
// (1=fld 2=mfld 3=afld 4=edd 5=vld), scheme parameters as 32-bit little-endian
// fields (real-valued parameters in micro-units, i.e. rounded to value*1e6),
// then the BitSeq byte serialization of the payload.
inline constexpr std::uint8_t kContainerVersion = 0x01;

// Rounds the real-valued parameters (gamma, delta, beta) to micro-units, the
// resolution the container stores. Encode with the quantized config so that a
// reader reconstructing the config from the file derives identical chunk
// lengths.
SchemeConfig quantize_config(const SchemeConfig& config);

std::vector<std::uint8_t> container_write(const SchemeConfig& config, const BitSeq& payload);

struct Container {
    SchemeConfig config;
    BitSeq payload;
};
Container container_read(std::span<const std::uint8_t> bytes); // throws MalformedStream

} // namespace ddrs::schemes
