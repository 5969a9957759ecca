// Command-line front end: generate model data, encode/decode files under any
// scheme, evaluate analytic quantities, run sweeps and the bound curve.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 malformed stream, 4 internal error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddrs/analytics.hpp"
#include "ddrs/bits.hpp"
#include "ddrs/container.hpp"
#include "ddrs/errors.hpp"
#include "ddrs/harness.hpp"
#include "ddrs/schemes.hpp"
#include "ddrs/source_model.hpp"

namespace {

using namespace ddrs;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitInternal = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failed: " + path);
    }
    return bytes;
}

// Write-to-temp plus atomic rename; a failed command never leaves a partial
// output file behind.
void write_file_atomic(const std::string& path, const void* data, std::size_t size) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open " + tmp);
        }
        out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
        if (!out) {
            std::filesystem::remove(tmp);
            throw IoError("write failed: " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw IoError("rename to " + path + " failed: " + ec.message());
    }
}

void write_text_atomic(const std::string& path, const std::string& text) {
    write_file_atomic(path, text.data(), text.size());
}

// --seed wins; DDRS_SEED applies only when the flag is absent.
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t flag_value) {
    if (seed_opt->count() > 0) {
        return flag_value;
    }
    if (const char* env = std::getenv("DDRS_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return flag_value;
}

void print_number(double value) { std::printf("%s\n", harness::format_double(value).c_str()); }

// --- scheme flag plumbing ----------------------------------------------------

struct SchemeFlags {
    std::string scheme;
    std::uint32_t ell = 0;
    std::uint32_t segment = 0; // D
    std::uint32_t marker = 0;  // M
    double gamma = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    std::uint64_t symbol_count = 0; // A
    std::uint64_t block_count = 0;  // B
};

void add_scheme_options(CLI::App* cmd, SchemeFlags& flags) {
    cmd->add_option("--scheme", flags.scheme, "fld | mfld | afld | edd | vld")->required();
    cmd->add_option("--ell", flags.ell, "chunk length (fld, mfld, edd)");
    cmd->add_option("--D", flags.segment, "segment length (mfld, afld)");
    cmd->add_option("--M", flags.marker, "marker length (vld)");
    cmd->add_option("--gamma", flags.gamma, "adaptive exponent (afld)");
    cmd->add_option("--beta", flags.beta, "mismatch ratio (edd)");
    cmd->add_option("--delta", flags.delta, "source edit probability (afld)");
    cmd->add_option("--A", flags.symbol_count, "source symbol count (afld)");
    cmd->add_option("--B", flags.block_count, "source block count (afld)");
}

schemes::SchemeConfig build_config(const SchemeFlags& flags) {
    schemes::SchemeConfig config;
    if (flags.scheme == "fld") {
        config = schemes::FldConfig{flags.ell};
    } else if (flags.scheme == "mfld") {
        config = schemes::MfldConfig{flags.segment, flags.ell};
    } else if (flags.scheme == "afld") {
        schemes::AfldConfig c;
        c.segment_len = flags.segment;
        c.gamma = flags.gamma;
        c.symbol_count = flags.symbol_count;
        c.block_count = flags.block_count;
        c.delta = flags.delta;
        config = c;
    } else if (flags.scheme == "edd") {
        config = schemes::EddConfig{flags.ell, flags.beta};
    } else if (flags.scheme == "vld") {
        config = schemes::VldConfig{flags.marker};
    } else {
        throw std::invalid_argument("unknown scheme: " + flags.scheme);
    }
    config = schemes::quantize_config(config);
    schemes::validate(config);
    return config;
}

// --- subcommand bodies --------------------------------------------------------

int cmd_generate(std::uint64_t a, std::uint64_t b, double delta, const std::string& law,
                 std::uint32_t len, std::uint32_t lo, std::uint32_t hi, const std::string& table,
                 std::uint64_t seed, const std::string& out_path) {
    model::SourceParams params;
    params.symbol_count = a;
    params.block_count = b;
    params.delta = delta;
    if (law == "degenerate") {
        params.length_law = model::LengthLaw::degenerate(len);
    } else if (law == "uniform") {
        params.length_law = model::LengthLaw::uniform_int(lo, hi);
    } else if (law == "table") {
        std::vector<std::pair<std::uint32_t, double>> entries;
        std::stringstream ss{table};
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            if (colon == std::string::npos) {
                throw std::invalid_argument("--table expects len:prob[,len:prob...]");
            }
            entries.emplace_back(static_cast<std::uint32_t>(std::stoul(item.substr(0, colon))),
                                 std::stod(item.substr(colon + 1)));
        }
        params.length_law = model::LengthLaw::table(std::move(entries));
    } else {
        throw std::invalid_argument("--law must be degenerate, uniform, or table");
    }
    params.validate();

    auto rng = make_rng(seed);
    const auto instance = model::generate_stream(params, rng);
    std::ostringstream text;
    model::write_instance_text(params, instance, text);
    write_text_atomic(out_path, text.str());
    std::fprintf(stderr, "%zu blocks, %zu stream bits\n", instance.blocks.size(),
                 instance.stream.size());
    return kExitOk;
}

int cmd_encode(const SchemeFlags& flags, const std::string& in_path, const std::string& out_path) {
    const auto config = build_config(flags);
    const auto bytes = read_file(in_path);
    if (bytes.empty()) {
        throw std::invalid_argument("input file is empty; nothing to encode");
    }
    const Bits stream = bits_from_bytes(bytes);
    const auto encoded = schemes::encode(stream, config);
    const auto container = schemes::container_write(config, encoded.bits);
    write_file_atomic(out_path, container.data(), container.size());
    std::fprintf(stderr, "%llu -> %llu bits\n",
                 static_cast<unsigned long long>(encoded.stats.input_bits),
                 static_cast<unsigned long long>(encoded.bits.size()));
    return kExitOk;
}

int cmd_decode(const std::string& in_path, const std::string& out_path) {
    const auto bytes = read_file(in_path);
    const auto container = schemes::container_read(bytes);
    const Bits stream = schemes::decode(container.payload, container.config);
    if (stream.size() % 8 != 0) {
        throw MalformedStream("decoded bit count is not a whole number of bytes", stream.size());
    }
    const auto out_bytes = bits_to_bytes(stream);
    write_file_atomic(out_path, out_bytes.data(), out_bytes.size());
    return kExitOk;
}

int cmd_sweep_grid_file(const std::string& grid_path, harness::SweepSpec& spec) {
    const auto bytes = read_file(grid_path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes.begin(), bytes.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("grid file: ") + e.what());
    }
    if (doc.contains("trials")) {
        spec.trials_per_cell = doc["trials"].get<std::uint32_t>();
    }
    if (doc.contains("k1")) {
        spec.regime.k1 = doc["k1"].get<double>();
    }
    if (doc.contains("k2")) {
        spec.regime.k2 = doc["k2"].get<double>();
    }
    if (!doc.contains("cells")) {
        throw std::invalid_argument("grid file: missing \"cells\"");
    }
    for (const auto& cell : doc["cells"]) {
        model::SourceParams params;
        params.symbol_count = cell.at("A").get<std::uint64_t>();
        params.block_count = cell.at("B").get<std::uint64_t>();
        params.delta = cell.at("delta").get<double>();
        const auto len = cell.at("L").get<std::uint32_t>();
        params.length_law = model::LengthLaw::degenerate(len);
        params.validate();

        SchemeFlags flags;
        flags.scheme = cell.at("scheme").get<std::string>();
        flags.ell = cell.value("ell", len);
        flags.segment = cell.value("D", len);
        flags.marker = cell.value("M", 1u);
        flags.gamma = cell.value("gamma", params.delta + 0.5 * (0.5 - params.delta));
        flags.beta = cell.value("beta", std::min(1.5 * params.delta, 0.25));
        flags.delta = params.delta;
        flags.symbol_count = params.symbol_count;
        flags.block_count = params.block_count;
        spec.cells.push_back({params, build_config(flags)});
    }
    return kExitOk;
}

struct InlineGrid {
    std::vector<std::uint64_t> symbol_counts; // --A
    std::vector<std::uint64_t> block_counts;  // --B
    std::vector<std::uint32_t> lengths;       // --L
    std::vector<double> deltas;
    std::vector<std::string> scheme_list;

    bool any() const {
        return !symbol_counts.empty() || !block_counts.empty() || !lengths.empty() ||
               !deltas.empty() || !scheme_list.empty();
    }
};

// Product grid from inline flags; unset axes fall back to the desk defaults.
void build_inline_grid(const InlineGrid& inline_grid, harness::SweepSpec& spec) {
    const auto a_axis =
        inline_grid.symbol_counts.empty() ? std::vector<std::uint64_t>{4, 16} : inline_grid.symbol_counts;
    const auto b_axis = inline_grid.block_counts.empty()
                            ? std::vector<std::uint64_t>{256, 1024, 4096}
                            : inline_grid.block_counts;
    const auto l_axis =
        inline_grid.lengths.empty() ? std::vector<std::uint32_t>{64, 256} : inline_grid.lengths;
    const auto d_axis = inline_grid.deltas.empty()
                            ? std::vector<double>{0.01, 0.02, 0.05, 0.1, 0.2}
                            : inline_grid.deltas;
    const auto schemes_axis = inline_grid.scheme_list.empty()
                                  ? std::vector<std::string>{"fld", "afld", "vld"}
                                  : inline_grid.scheme_list;
    for (auto a : a_axis) {
        for (auto b : b_axis) {
            for (auto len : l_axis) {
                for (auto delta : d_axis) {
                    model::SourceParams params;
                    params.symbol_count = a;
                    params.block_count = b;
                    params.length_law = model::LengthLaw::degenerate(len);
                    params.delta = delta;
                    params.validate();
                    for (const auto& scheme : schemes_axis) {
                        SchemeFlags flags;
                        flags.scheme = scheme;
                        flags.ell = len;
                        flags.segment = len;
                        flags.marker = harness::vld_tuned_marker_len(b, a, delta);
                        flags.gamma = std::min(1.5 * delta, delta + 0.5 * (0.5 - delta));
                        flags.beta = std::min(1.5 * delta, 0.25);
                        flags.delta = delta;
                        flags.symbol_count = a;
                        flags.block_count = b;
                        spec.cells.push_back({params, build_config(flags)});
                    }
                }
            }
        }
    }
}

int cmd_sweep(const std::string& grid_path, const InlineGrid& inline_grid, std::uint64_t seed,
              std::uint32_t trials, std::uint32_t threads, const std::string& out_path) {
    if (!grid_path.empty() && inline_grid.any()) {
        throw std::invalid_argument("--grid and inline grid flags are mutually exclusive");
    }
    harness::SweepSpec spec;
    if (!grid_path.empty()) {
        spec.master_seed = seed;
        cmd_sweep_grid_file(grid_path, spec);
    } else if (inline_grid.any()) {
        spec.master_seed = seed;
        build_inline_grid(inline_grid, spec);
    } else {
        spec = harness::default_sweep_spec(seed);
    }
    if (trials > 0) {
        spec.trials_per_cell = trials;
    }
    spec.threads = threads;
    const auto rows = harness::sweep(spec);
    std::ostringstream csv;
    harness::write_sweep_csv(rows, csv);
    write_text_atomic(out_path, csv.str());
    std::fprintf(stderr, "%zu rows\n", rows.size());
    return kExitOk;
}

int cmd_figure1(double k1, double k2, double delta_min, double delta_max, std::uint32_t points,
                const std::string& out_path) {
    if (!(delta_min > 0.0 && delta_min <= delta_max && delta_max < 0.5)) {
        throw std::invalid_argument("need 0 < delta-min <= delta-max < 1/2");
    }
    if (points < 1) {
        throw std::invalid_argument("--points must be >= 1");
    }
    std::vector<double> deltas;
    deltas.reserve(points);
    if (points == 1) {
        deltas.push_back(delta_min);
    } else {
        const double lo = std::log(delta_min);
        const double hi = std::log(delta_max);
        for (std::uint32_t i = 0; i < points; ++i) {
            deltas.push_back(std::exp(lo + (hi - lo) * i / (points - 1)));
        }
    }
    const auto rows = harness::figure1_curve(analytics::RegimeParams{k1, k2}, deltas);
    std::ostringstream csv;
    harness::write_figure1_csv(rows, csv);
    write_text_atomic(out_path, csv.str());
    std::fprintf(stderr, "%zu rows\n", rows.size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chunk-based deduplication codecs, edit-model data generator, and bound calculators"};
    app.require_subcommand(1);
    std::function<int()> action;

    // generate
    auto* generate = app.add_subcommand("generate", "sample a source instance to a text file");
    {
        static std::uint64_t a = 1, b = 1, seed = 0;
        static double delta = 0.0;
        static std::string law = "degenerate", table, out_path;
        static std::uint32_t len = 64, lo = 0, hi = 0;
        generate->add_option("--A", a, "symbol count")->required();
        generate->add_option("--B", b, "block count")->required();
        generate->add_option("--delta", delta, "edit probability in [0, 1/2)")->required();
        generate->add_option("--law", law, "degenerate | uniform | table");
        generate->add_option("--L", len, "symbol length (degenerate law)");
        generate->add_option("--lo", lo, "minimum length (uniform law)");
        generate->add_option("--hi", hi, "maximum length (uniform law)");
        generate->add_option("--table", table, "len:prob[,len:prob...] (table law)");
        auto* seed_opt = generate->add_option("--seed", seed, "master seed");
        generate->add_option("--out", out_path, "output path")->required();
        generate->callback([&, seed_opt] {
            action = [=] {
                return cmd_generate(a, b, delta, law, len, lo, hi, table,
                                    resolve_seed(seed_opt, seed), out_path);
            };
        });
    }

    // encode
    auto* encode = app.add_subcommand("encode", "encode a file into a DDRS container");
    {
        static SchemeFlags flags;
        static std::string in_path, out_path;
        add_scheme_options(encode, flags);
        encode->add_option("--in", in_path, "input file")->required();
        encode->add_option("--out", out_path, "output container")->required();
        encode->callback([&] { action = [=] { return cmd_encode(flags, in_path, out_path); }; });
    }

    // decode
    auto* decode = app.add_subcommand("decode", "decode a DDRS container back to the original file");
    {
        static std::string in_path, out_path;
        decode->add_option("--in", in_path, "input container")->required();
        decode->add_option("--out", out_path, "output file")->required();
        decode->callback([&] { action = [=] { return cmd_decode(in_path, out_path); }; });
    }

    // analyze
    auto* analyze = app.add_subcommand("analyze", "evaluate a closed-form quantity");
    analyze->require_subcommand(1);
    {
        static double p = 0.0, q = 0.0, m = 1.0, delta = 0.1, gamma = 0.25, beta = 0.25, x = -0.1;
        static double a_factor = 2.0, k1 = 0.5, k2 = 0.5;
        static std::uint64_t ell = 1, a_count = 1, b_count = 2;
        static std::uint32_t k = 2, n = 0, segment = 64, marker = 1;
        static std::string kind = "afld";

        auto* entropy = analyze->add_subcommand("entropy", "binary entropy H(p)");
        entropy->add_option("--p", p)->required();
        entropy->callback([&] {
            action = [=] {
                print_number(analytics::binary_entropy(p));
                return kExitOk;
            };
        });

        auto* cross = analyze->add_subcommand("cross-entropy", "cross entropy H(p,q)");
        cross->add_option("--p", p)->required();
        cross->add_option("--q", q)->required();
        cross->callback([&] {
            action = [=] {
                print_number(analytics::cross_entropy(p, q));
                return kExitOk;
            };
        });

        auto* kl = analyze->add_subcommand("kl", "divergence D(p||q)");
        kl->add_option("--p", p)->required();
        kl->add_option("--q", q)->required();
        kl->callback([&] {
            action = [=] {
                print_number(analytics::kl_divergence(p, q));
                return kExitOk;
            };
        });

        auto* sdelta = analyze->add_subcommand("s-delta", "capped descendant-count sum");
        sdelta->add_option("--ell", ell)->required();
        sdelta->add_option("--m", m)->required();
        sdelta->add_option("--delta", delta)->required();
        sdelta->callback([&] {
            action = [=] {
                print_number(analytics::s_delta(ell, m, delta));
                return kExitOk;
            };
        });

        auto* rllc = analyze->add_subcommand("rll-count", "exact run-length-limited string count");
        rllc->add_option("--k", k)->required();
        rllc->add_option("--n", n)->required();
        rllc->callback([&] {
            action = [=] {
                std::printf("%s\n", analytics::rll_count(k, n).to_string().c_str());
                return kExitOk;
            };
        });

        auto* rllb = analyze->add_subcommand("rll-bounds", "lower and upper RLL count bounds");
        rllb->add_option("--k", k)->required();
        rllb->add_option("--n", n)->required();
        rllb->callback([&] {
            action = [=] {
                const auto b = analytics::rll_bounds(k, n);
                print_number(b.lower);
                print_number(b.upper);
                return kExitOk;
            };
        });

        auto* dict = analyze->add_subcommand("dict-bounds", "expected dictionary size bounds");
        dict->add_option("--A", a_count)->required();
        dict->add_option("--B", b_count)->required();
        dict->add_option("--L", segment)->required();
        dict->add_option("--delta", delta)->required();
        dict->add_option("--ell", ell)->required();
        dict->callback([&] {
            action = [=] {
                const auto b = analytics::expected_dict_bounds_fld(
                    a_count, b_count, segment, delta, static_cast<std::uint32_t>(ell));
                print_number(b.upper_full);
                print_number(b.lower_half);
                return kExitOk;
            };
        });

        auto* afld_ell = analyze->add_subcommand("afld-ell", "adaptive chunk length");
        afld_ell->add_option("--A", a_count)->required();
        afld_ell->add_option("--B", b_count)->required();
        afld_ell->add_option("--gamma", gamma)->required();
        afld_ell->add_option("--delta", delta)->required();
        afld_ell->add_option("--D", segment)->required();
        afld_ell->callback([&] {
            action = [=] {
                std::printf("%u\n", analytics::afld_chunk_length(b_count, a_count, gamma, delta,
                                                                 segment));
                return kExitOk;
            };
        });

        auto* lw = analyze->add_subcommand("lambert-wm1", "lower branch of the Lambert W function");
        lw->add_option("--x", x)->required();
        lw->callback([&] {
            action = [=] {
                print_number(analytics::lambert_w_m1(x));
                return kExitOk;
            };
        });

        auto* vldb = analyze->add_subcommand("vld-bound", "variable-length per-bit bound coefficient");
        vldb->add_option("--A", a_count)->required();
        vldb->add_option("--B", b_count)->required();
        vldb->add_option("--gamma", gamma)->required();
        vldb->add_option("--delta", delta)->required();
        vldb->add_option("--M", marker)->required();
        vldb->add_option("--k1", k1);
        vldb->add_option("--k2", k2);
        vldb->callback([&] {
            action = [=] {
                const auto b = analytics::vld_bound_coefficient(
                    b_count, a_count, gamma, delta, marker, analytics::RegimeParams{k1, k2});
                print_number(b.value);
                return kExitOk;
            };
        });

        auto* ratio = analyze->add_subcommand("ratio-bound", "compressed-length-to-entropy ratio bound");
        ratio->add_option("--kind", kind, "afld | afld-limit | edd | edd-best")->required();
        ratio->add_option("--delta", delta)->required();
        ratio->add_option("--gamma", gamma);
        ratio->add_option("--beta", beta);
        ratio->add_option("--a", a_factor);
        ratio->add_option("--k1", k1);
        ratio->add_option("--k2", k2);
        ratio->callback([&] {
            action = [=] {
                analytics::RatioBoundArgs args;
                args.delta = delta;
                args.gamma = gamma;
                args.beta = beta;
                args.a_factor = a_factor;
                args.regime = analytics::RegimeParams{k1, k2};
                analytics::RatioBoundKind rk;
                if (kind == "afld") {
                    rk = analytics::RatioBoundKind::AfldGamma;
                } else if (kind == "afld-limit") {
                    rk = analytics::RatioBoundKind::AfldLimit;
                } else if (kind == "edd") {
                    rk = analytics::RatioBoundKind::EddBeta;
                } else if (kind == "edd-best") {
                    rk = analytics::RatioBoundKind::EddBest;
                } else {
                    throw std::invalid_argument("unknown --kind: " + kind);
                }
                print_number(analytics::ratio_bound(rk, args).value);
                return kExitOk;
            };
        });
    }

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over a parameter grid");
    {
        static std::string grid_path, out_path;
        static std::uint64_t seed = 0;
        static std::uint32_t trials = 0, threads = 0;
        static InlineGrid inline_grid;
        sweep_cmd->add_option("--grid", grid_path, "JSON grid file (default: built-in desk grid)");
        sweep_cmd->add_option("--A", inline_grid.symbol_counts, "inline grid: symbol counts");
        sweep_cmd->add_option("--B", inline_grid.block_counts, "inline grid: block counts");
        sweep_cmd->add_option("--L", inline_grid.lengths, "inline grid: symbol lengths");
        sweep_cmd->add_option("--delta", inline_grid.deltas, "inline grid: edit probabilities");
        sweep_cmd->add_option("--schemes", inline_grid.scheme_list,
                              "inline grid: schemes (fld mfld afld edd vld)");
        auto* seed_opt = sweep_cmd->add_option("--seed", seed, "master seed");
        sweep_cmd->add_option("--trials", trials, "trials per cell (override)");
        sweep_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
        sweep_cmd->add_option("--out", out_path, "output CSV")->required();
        sweep_cmd->callback([&, seed_opt] {
            action = [=] {
                return cmd_sweep(grid_path, inline_grid, resolve_seed(seed_opt, seed), trials,
                                 threads, out_path);
            };
        });
    }

    // figure1
    auto* fig = app.add_subcommand("figure1", "variable-length bound and entropy vs delta (CSV)");
    {
        static double k1 = 0.5, k2 = 0.5, dmin = 1e-5, dmax = 1e-1;
        static std::uint32_t points = 50;
        static std::string out_path;
        fig->add_option("--k1", k1);
        fig->add_option("--k2", k2);
        fig->add_option("--delta-min", dmin);
        fig->add_option("--delta-max", dmax);
        fig->add_option("--points", points, "log-spaced grid size");
        fig->add_option("--out", out_path, "output CSV")->required();
        fig->callback([&] {
            action = [=] { return cmd_figure1(k1, k2, dmin, dmax, points, out_path); };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const MalformedStream& e) {
        std::fprintf(stderr, "malformed stream: %s\n", e.what());
        return kExitMalformed;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
}
