#include <benchmark/benchmark.h>

#include "ddrs/harness.hpp"
#include "ddrs/schemes.hpp"
#include "ddrs/source_model.hpp"

using namespace ddrs;

namespace {

model::SourceInstance make_instance(std::uint64_t a, std::uint64_t b, std::uint32_t len,
                                    double delta) {
    model::SourceParams params;
    params.symbol_count = a;
    params.block_count = b;
    params.length_law = model::LengthLaw::degenerate(len);
    params.delta = delta;
    auto rng = make_rng(2718);
    return model::generate_stream(params, rng);
}

const model::SourceInstance& shared_instance() {
    static const auto instance = make_instance(16, 4096, 256, 0.02);
    return instance;
}

void encode_bench(benchmark::State& state, const schemes::SchemeConfig& config) {
    const auto& stream = shared_instance().stream;
    std::size_t encoded_bits = 0;
    for (auto _ : state) {
        const auto result = schemes::encode(stream, config);
        encoded_bits = result.bits.size();
        benchmark::DoNotOptimize(encoded_bits);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(stream.size() / 8));
    state.counters["ratio"] =
        static_cast<double>(stream.size()) / static_cast<double>(encoded_bits);
}

void BM_EncodeFld(benchmark::State& state) {
    encode_bench(state, schemes::FldConfig{static_cast<std::uint32_t>(state.range(0))});
}
BENCHMARK(BM_EncodeFld)->Arg(16)->Arg(64)->Arg(256);

void BM_EncodeMfld(benchmark::State& state) {
    encode_bench(state, schemes::MfldConfig{256, static_cast<std::uint32_t>(state.range(0))});
}
BENCHMARK(BM_EncodeMfld)->Arg(16)->Arg(64);

void BM_EncodeAfld(benchmark::State& state) {
    schemes::AfldConfig config;
    config.segment_len = 256;
    config.gamma = 0.03;
    config.symbol_count = 16;
    config.block_count = 4096;
    config.delta = 0.02;
    encode_bench(state, config);
}
BENCHMARK(BM_EncodeAfld);

void BM_EncodeEdd(benchmark::State& state) {
    encode_bench(state, schemes::EddConfig{256, 0.25});
}
BENCHMARK(BM_EncodeEdd);

void BM_EncodeVld(benchmark::State& state) {
    encode_bench(state, schemes::VldConfig{static_cast<std::uint32_t>(state.range(0))});
}
BENCHMARK(BM_EncodeVld)->DenseRange(1, 7, 2);

void BM_DecodeVld(benchmark::State& state) {
    const auto& stream = shared_instance().stream;
    const schemes::SchemeConfig config = schemes::VldConfig{5};
    const auto encoded = schemes::encode(stream, config);
    for (auto _ : state) {
        auto decoded = schemes::decode(encoded.bits, config);
        benchmark::DoNotOptimize(decoded);
    }
    state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(stream.size() / 8));
}
BENCHMARK(BM_DecodeVld);

void BM_RunTrial(benchmark::State& state) {
    model::SourceParams params;
    params.symbol_count = 16;
    params.block_count = 1024;
    params.length_law = model::LengthLaw::degenerate(256);
    params.delta = 0.02;
    const schemes::SchemeConfig config = schemes::VldConfig{5};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        auto record = harness::run_trial(params, config, seed++);
        benchmark::DoNotOptimize(record);
    }
}
BENCHMARK(BM_RunTrial);

} // namespace
