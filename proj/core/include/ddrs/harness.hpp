#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ddrs/analytics.hpp"
#include "ddrs/schemes.hpp"
#include "ddrs/source_model.hpp"
#include "ddrs/text.hpp"

namespace ddrs::harness {

// One seeded (source x scheme) measurement. Every trial is round-trip
// verified; a decode mismatch is a fatal integrity error, never skipped.
struct TrialRecord {
    std::uint64_t seed = 0;
    model::SourceParams params;
    schemes::SchemeConfig config;
    std::uint64_t input_bits = 0;
    std::uint64_t encoded_bits = 0;
    schemes::EncodeStats stats;
    // max_a |Y(a)| <= 3B/(2A): no symbol is heavily over-represented.
    bool eu_flag = false;
    // min_a |Y_half(a)| >= B/(4A): every symbol is represented in the first half.
    bool el_flag = false;
};

TrialRecord run_trial(const model::SourceParams& params, const schemes::SchemeConfig& config,
                      std::uint64_t seed);

struct CompressionEstimate {
    std::uint32_t trials = 0;
    double input_bits_mean = 0.0;
    double encoded_bits_mean = 0.0;
    double encoded_bits_stderr = 0.0;
    // Ratio of means, matching the definition E[|s|] / E[L(s)].
    double ratio = 0.0;
};

CompressionEstimate estimate_compression(const model::SourceParams& params,
                                         const schemes::SchemeConfig& config,
                                         std::uint32_t n_trials, std::uint64_t master_seed);

// Mean distinct-chunk counts under two-stage chunking with segment length
// equal to the (degenerate) symbol length: full stream, and the dictionary
// state after the first ceil(B/2) blocks.
struct DictSizeEstimate {
    double mean_full = 0.0;
    double stderr_full = 0.0;
    double mean_half = 0.0;
    double stderr_half = 0.0;
};

DictSizeEstimate empirical_dict_size(const model::SourceParams& params, std::uint32_t ell,
                                     std::uint32_t n_trials, std::uint64_t master_seed);

// Marker length whose expected chunk length ~2^(M+1) matches the adaptive
// chunk length log2(B/A)/H(delta); the sweet spot of the marker-based scheme.
std::uint32_t vld_tuned_marker_len(std::uint64_t block_count, std::uint64_t symbol_count,
                                   double delta);

struct SweepCell {
    model::SourceParams params;
    schemes::SchemeConfig config;
};

struct SweepSpec {
    std::vector<SweepCell> cells;
    std::uint32_t trials_per_cell = 20;
    std::uint64_t master_seed = 0;
    analytics::RegimeParams regime;
    std::uint32_t threads = 0; // 0 = hardware concurrency
};

// Desk-scale default grid: A in {4,16}, B in {256,1024,4096}, L in {64,256},
// delta in {0.01,0.02,0.05,0.1,0.2}, schemes {FLD ell=L, AFLD, VLD tuned M},
// 20 trials per cell.
SweepSpec default_sweep_spec(std::uint64_t master_seed);

struct SweepRow {
    std::string scheme;
    std::uint64_t symbol_count = 0; // A
    std::uint64_t block_count = 0;  // B
    double mean_len = 0.0;          // L
    double delta = 0.0;
    std::string param_name;
    double param_value = 0.0;
    std::uint32_t trials = 0;
    double input_bits_mean = 0.0;
    double encoded_bits_mean = 0.0;
    double encoded_bits_stderr = 0.0;
    double ratio = 0.0;
    double entropy_lower = 0.0;
    double entropy_upper = 0.0;
    std::string bound_name;             // "error: ..." when the cell failed
    std::optional<double> bound_value;
};

// Deterministic given the spec: cells keep their order, per-cell seeds derive
// from (master seed, cell index), trials run in index order within a cell.
std::vector<SweepRow> sweep(const SweepSpec& spec);

struct Figure1Row {
    double delta = 0.0;
    double bound_per_bit = 0.0;   // 12 e^-c (c+1) + 16 H(d) ((1+k1)/k2) c at the optimal c
    double entropy_per_bit = 0.0; // H(delta)
};

std::vector<Figure1Row> figure1_curve(const analytics::RegimeParams& regime,
                                      std::span<const double> deltas);

using ddrs::format_double;

// Header + one line per row; period decimal separator, '\n' line ends.
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out);
void write_figure1_csv(std::span<const Figure1Row> rows, std::ostream& out);

} // namespace ddrs::harness
