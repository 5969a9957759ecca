#include "ddrs/harness.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "ddrs/errors.hpp"

namespace ddrs::harness {

namespace {

struct MeanStderr {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr out;
    if (xs.empty()) {
        return out;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    out.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) {
        return out;
    }
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - out.mean;
        ss += d * d;
    }
    const double var = ss / static_cast<double>(xs.size() - 1);
    out.stderr_of_mean = std::sqrt(var / static_cast<double>(xs.size()));
    return out;
}

} // namespace

TrialRecord run_trial(const model::SourceParams& params, const schemes::SchemeConfig& config,
                      std::uint64_t seed) {
    auto rng = make_rng(seed);
    const auto instance = model::generate_stream(params, rng);
    const auto encoded = schemes::encode(instance.stream, config);
    const auto decoded = schemes::decode(encoded.bits, config);
    if (decoded != instance.stream) {
        throw std::logic_error("run_trial: decode does not reproduce the stream");
    }

    TrialRecord record;
    record.seed = seed;
    record.params = params;
    record.config = config;
    record.input_bits = instance.stream.size();
    record.encoded_bits = encoded.bits.size();
    record.stats = encoded.stats;

    std::vector<std::uint64_t> full_counts(params.symbol_count, 0);
    std::vector<std::uint64_t> half_counts(params.symbol_count, 0);
    const std::uint64_t half = (params.block_count + 1) / 2;
    for (std::size_t b = 0; b < instance.ancestors.size(); ++b) {
        ++full_counts[instance.ancestors[b]];
        if (b < half) {
            ++half_counts[instance.ancestors[b]];
        }
    }
    record.eu_flag = true;
    record.el_flag = true;
    for (std::uint64_t a = 0; a < params.symbol_count; ++a) {
        if (2 * params.symbol_count * full_counts[a] > 3 * params.block_count) {
            record.eu_flag = false;
        }
        if (4 * params.symbol_count * half_counts[a] < params.block_count) {
            record.el_flag = false;
        }
    }
    return record;
}

CompressionEstimate estimate_compression(const model::SourceParams& params,
                                         const schemes::SchemeConfig& config,
                                         std::uint32_t n_trials, std::uint64_t master_seed) {
    if (n_trials < 1) {
        throw std::invalid_argument("estimate_compression: need at least one trial");
    }
    std::vector<double> encoded;
    std::vector<double> input;
    encoded.reserve(n_trials);
    input.reserve(n_trials);
    for (std::uint32_t i = 0; i < n_trials; ++i) {
        const auto record = run_trial(params, config, derive_seed(master_seed, i));
        encoded.push_back(static_cast<double>(record.encoded_bits));
        input.push_back(static_cast<double>(record.input_bits));
    }
    const auto enc = mean_stderr(encoded);
    const auto in = mean_stderr(input);
    CompressionEstimate est;
    est.trials = n_trials;
    est.input_bits_mean = in.mean;
    est.encoded_bits_mean = enc.mean;
    est.encoded_bits_stderr = enc.stderr_of_mean;
    est.ratio = in.mean / enc.mean;
    return est;
}

DictSizeEstimate empirical_dict_size(const model::SourceParams& params, std::uint32_t ell,
                                     std::uint32_t n_trials, std::uint64_t master_seed) {
    if (!params.length_law.is_degenerate()) {
        throw std::invalid_argument("empirical_dict_size: requires a degenerate length law");
    }
    if (n_trials < 1) {
        throw std::invalid_argument("empirical_dict_size: need at least one trial");
    }
    const std::uint64_t half = (params.block_count + 1) / 2;
    std::vector<double> fulls, halves;
    fulls.reserve(n_trials);
    halves.reserve(n_trials);
    for (std::uint32_t i = 0; i < n_trials; ++i) {
        auto rng = make_rng(derive_seed(master_seed, i));
        const auto instance = model::generate_stream(params, rng);
        std::unordered_set<std::string> seen;
        double half_count = 0.0;
        for (std::size_t b = 0; b < instance.blocks.size(); ++b) {
            for (auto chunk : schemes::chunk_fixed(instance.blocks[b], ell)) {
                seen.insert(std::string(reinterpret_cast<const char*>(chunk.data()), chunk.size()));
            }
            if (b + 1 == half) {
                half_count = static_cast<double>(seen.size());
            }
        }
        fulls.push_back(static_cast<double>(seen.size()));
        halves.push_back(half_count);
    }
    const auto full = mean_stderr(fulls);
    const auto halfm = mean_stderr(halves);
    return DictSizeEstimate{full.mean, full.stderr_of_mean, halfm.mean, halfm.stderr_of_mean};
}

std::uint32_t vld_tuned_marker_len(std::uint64_t block_count, std::uint64_t symbol_count,
                                   double delta) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("vld_tuned_marker_len: delta must be in (0, 1/2)");
    }
    if (block_count <= symbol_count) {
        throw std::domain_error("vld_tuned_marker_len: need B > A");
    }
    const double target = std::log2(static_cast<double>(block_count) /
                                    static_cast<double>(symbol_count)) /
                          analytics::binary_entropy(delta);
    const double m = std::round(std::log2(target) - 1.0);
    if (m < 1.0) {
        return 1;
    }
    if (m > 24.0) {
        return 24;
    }
    return static_cast<std::uint32_t>(m);
}

namespace {

struct SchemeColumn {
    std::string param_name;
    double param_value;
};

SchemeColumn scheme_column(const schemes::SchemeConfig& config) {
    if (const auto* fld = std::get_if<schemes::FldConfig>(&config)) {
        return {"ell", static_cast<double>(fld->chunk_len)};
    }
    if (const auto* mfld = std::get_if<schemes::MfldConfig>(&config)) {
        return {"ell", static_cast<double>(mfld->chunk_len)};
    }
    if (const auto* afld = std::get_if<schemes::AfldConfig>(&config)) {
        return {"gamma", afld->gamma};
    }
    if (const auto* edd = std::get_if<schemes::EddConfig>(&config)) {
        return {"beta", edd->beta};
    }
    return {"M", static_cast<double>(std::get<schemes::VldConfig>(config).marker_len)};
}

void attach_bound(SweepRow& row, const SweepCell& cell, const analytics::RegimeParams& regime) {
    const auto& params = cell.params;
    if (const auto* afld = std::get_if<schemes::AfldConfig>(&cell.config)) {
        if (params.delta > 0.0) {
            analytics::RatioBoundArgs args;
            args.delta = params.delta;
            args.gamma = afld->gamma;
            args.regime = regime;
            const auto bound = analytics::ratio_bound(analytics::RatioBoundKind::AfldGamma, args);
            row.bound_name = bound.name;
            row.bound_value = bound.value;
        }
    } else if (const auto* edd = std::get_if<schemes::EddConfig>(&cell.config)) {
        if (params.delta > 0.0 && edd->beta > params.delta) {
            analytics::RatioBoundArgs args;
            args.delta = params.delta;
            args.beta = edd->beta;
            args.regime = regime;
            const auto bound = analytics::ratio_bound(analytics::RatioBoundKind::EddBeta, args);
            row.bound_name = bound.name;
            row.bound_value = bound.value;
        }
    } else if (const auto* vld = std::get_if<schemes::VldConfig>(&cell.config)) {
        if (params.delta > 0.0) {
            // The bound holds for any gamma in (delta, 1/2); report the midpoint.
            const double gamma = params.delta + 0.5 * (0.5 - params.delta);
            const auto bound = analytics::vld_bound_coefficient(
                params.block_count, params.symbol_count, gamma, params.delta, vld->marker_len,
                regime);
            row.bound_name = bound.name;
            row.bound_value = bound.value;
        }
    }
}

SweepRow run_cell(const SweepCell& cell, std::uint32_t trials, std::uint64_t cell_seed,
                  const analytics::RegimeParams& regime) {
    SweepRow row;
    row.scheme = std::string(schemes::scheme_name(cell.config));
    row.symbol_count = cell.params.symbol_count;
    row.block_count = cell.params.block_count;
    row.mean_len = cell.params.length_law.mean();
    row.delta = cell.params.delta;
    const auto column = scheme_column(cell.config);
    row.param_name = column.param_name;
    row.param_value = column.param_value;
    // Bad cell parameters land in the row; integrity failures (a decode that
    // does not reproduce its stream) propagate and abort the whole sweep.
    try {
        const auto est = estimate_compression(cell.params, cell.config, trials, cell_seed);
        row.trials = est.trials;
        row.input_bits_mean = est.input_bits_mean;
        row.encoded_bits_mean = est.encoded_bits_mean;
        row.encoded_bits_stderr = est.encoded_bits_stderr;
        row.ratio = est.ratio;
        const auto entropy = model::entropy_bounds(cell.params);
        row.entropy_lower = entropy.lower;
        row.entropy_upper = entropy.upper;
        attach_bound(row, cell, regime);
    } catch (const std::invalid_argument& e) {
        row.trials = 0;
        row.bound_name = std::string("error: ") + e.what();
        row.bound_value.reset();
    } catch (const std::domain_error& e) {
        row.trials = 0;
        row.bound_name = std::string("error: ") + e.what();
        row.bound_value.reset();
    }
    return row;
}

} // namespace

std::vector<SweepRow> sweep(const SweepSpec& spec) {
    if (spec.cells.empty()) {
        throw std::invalid_argument("sweep: empty grid");
    }
    std::vector<SweepRow> rows(spec.cells.size());
    std::uint32_t threads = spec.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = std::min<std::uint32_t>(threads, static_cast<std::uint32_t>(spec.cells.size()));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= spec.cells.size()) {
                return;
            }
            try {
                rows[i] = run_cell(spec.cells[i], spec.trials_per_cell,
                                   derive_seed(spec.master_seed, i), spec.regime);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(spec.cells.size());
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::uint32_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return rows;
}

SweepSpec default_sweep_spec(std::uint64_t master_seed) {
    SweepSpec spec;
    spec.master_seed = master_seed;
    spec.trials_per_cell = 20;
    for (std::uint64_t a : {4ull, 16ull}) {
        for (std::uint64_t b : {256ull, 1024ull, 4096ull}) {
            for (std::uint32_t len : {64u, 256u}) {
                for (double delta : {0.01, 0.02, 0.05, 0.1, 0.2}) {
                    model::SourceParams params;
                    params.symbol_count = a;
                    params.block_count = b;
                    params.length_law = model::LengthLaw::degenerate(len);
                    params.delta = delta;

                    spec.cells.push_back({params, schemes::FldConfig{len}});

                    schemes::AfldConfig afld;
                    afld.segment_len = len;
                    // Gamma close to delta keeps the adaptive chunk length
                    // near log2(B/A)/H(delta), where the scheme pays off;
                    // capped at the midpoint for large delta.
                    afld.gamma = std::min(1.5 * delta, delta + 0.5 * (0.5 - delta));
                    afld.symbol_count = a;
                    afld.block_count = b;
                    afld.delta = delta;
                    spec.cells.push_back({params, afld});

                    spec.cells.push_back(
                        {params, schemes::VldConfig{vld_tuned_marker_len(b, a, delta)}});
                }
            }
        }
    }
    return spec;
}

std::vector<Figure1Row> figure1_curve(const analytics::RegimeParams& regime,
                                      std::span<const double> deltas) {
    std::vector<Figure1Row> rows;
    rows.reserve(deltas.size());
    for (double delta : deltas) {
        const double c = analytics::vld_optimal_c(delta, regime);
        const double h = analytics::binary_entropy(delta);
        Figure1Row row;
        row.delta = delta;
        row.bound_per_bit =
            12.0 * std::exp(-c) * (c + 1.0) + 16.0 * h * ((1.0 + regime.k1) / regime.k2) * c;
        row.entropy_per_bit = h;
        rows.push_back(row);
    }
    return rows;
}

namespace {
// Quote a text field only when it would break the row.
std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}
} // namespace

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "scheme,A,B,L,delta,param_name,param_value,trials,input_bits_mean,"
           "encoded_bits_mean,encoded_bits_stderr,ratio,entropy_lower,entropy_upper,"
           "bound_name,bound_value\n";
    for (const auto& row : rows) {
        out << row.scheme << ',' << row.symbol_count << ',' << row.block_count << ','
            << format_double(row.mean_len) << ',' << format_double(row.delta) << ','
            << row.param_name << ',' << format_double(row.param_value) << ',' << row.trials << ','
            << format_double(row.input_bits_mean) << ',' << format_double(row.encoded_bits_mean)
            << ',' << format_double(row.encoded_bits_stderr) << ',' << format_double(row.ratio)
            << ',' << format_double(row.entropy_lower) << ',' << format_double(row.entropy_upper)
            << ',' << csv_field(row.bound_name) << ','
            << (row.bound_value ? format_double(*row.bound_value) : std::string{}) << '\n';
    }
}

void write_figure1_csv(std::span<const Figure1Row> rows, std::ostream& out) {
    out << "delta,bound_per_bit,entropy_per_bit\n";
    for (const auto& row : rows) {
        out << format_double(row.delta) << ',' << format_double(row.bound_per_bit) << ','
            << format_double(row.entropy_per_bit) << '\n';
    }
}

} // namespace ddrs::harness
