#include "ddrs/source_model.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "ddrs/analytics.hpp"
#include "ddrs/text.hpp"

namespace ddrs::model {

namespace {

void check_support(double length, double mean) {
    if (!(length >= mean / 2.0 && length <= 2.0 * mean)) {
        throw std::invalid_argument("LengthLaw: support must lie in [mean/2, 2*mean]");
    }
}

} // namespace

LengthLaw LengthLaw::degenerate(std::uint32_t length) {
    if (length == 0) {
        throw std::invalid_argument("LengthLaw: length must be positive");
    }
    LengthLaw law;
    law.kind_ = Kind::Degenerate;
    law.lo_ = law.hi_ = length;
    law.mean_ = static_cast<double>(length);
    return law;
}

LengthLaw LengthLaw::uniform_int(std::uint32_t lo, std::uint32_t hi) {
    if (lo == 0 || lo > hi) {
        throw std::invalid_argument("LengthLaw: need 1 <= lo <= hi");
    }
    LengthLaw law;
    law.kind_ = Kind::UniformInt;
    law.lo_ = lo;
    law.hi_ = hi;
    law.mean_ = (static_cast<double>(lo) + static_cast<double>(hi)) / 2.0;
    check_support(lo, law.mean_);
    check_support(hi, law.mean_);
    return law;
}

LengthLaw LengthLaw::table(std::vector<std::pair<std::uint32_t, double>> entries) {
    if (entries.empty()) {
        throw std::invalid_argument("LengthLaw: empty table");
    }
    double total = 0.0;
    double mean = 0.0;
    for (const auto& [len, prob] : entries) {
        if (len == 0 || prob < 0.0) {
            throw std::invalid_argument("LengthLaw: bad table entry");
        }
        total += prob;
        mean += prob * static_cast<double>(len);
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("LengthLaw: probabilities must sum to 1");
    }
    for (const auto& [len, prob] : entries) {
        if (prob > 0.0) {
            check_support(static_cast<double>(len), mean);
        }
    }
    LengthLaw law;
    law.kind_ = Kind::Table;
    law.entries_ = std::move(entries);
    law.mean_ = mean;
    return law;
}

std::uint32_t LengthLaw::degenerate_length() const {
    if (kind_ != Kind::Degenerate) {
        throw std::logic_error("LengthLaw: not degenerate");
    }
    return lo_;
}

std::uint32_t LengthLaw::sample(Rng& rng) const {
    switch (kind_) {
    case Kind::Degenerate:
        return lo_;
    case Kind::UniformInt:
        return lo_ + static_cast<std::uint32_t>(next_below(rng, hi_ - lo_ + 1ull));
    case Kind::Table: {
        double u = next_unit(rng);
        for (const auto& [len, prob] : entries_) {
            if (u < prob) {
                return len;
            }
            u -= prob;
        }
        return entries_.back().first; // rounding tail
    }
    }
    throw std::logic_error("LengthLaw: bad kind");
}

void SourceParams::validate() const {
    if (symbol_count < 1 || block_count < 1) {
        throw std::invalid_argument("SourceParams: A and B must be >= 1");
    }
    if (!(delta >= 0.0 && delta < 0.5)) {
        throw std::invalid_argument("SourceParams: delta must be in [0, 1/2)");
    }
}

std::vector<Bits> sample_symbols(const SourceParams& params, Rng& rng) {
    params.validate();
    std::vector<Bits> symbols(params.symbol_count);
    for (auto& symbol : symbols) {
        const std::uint32_t len = params.length_law.sample(rng);
        symbol.resize(len);
        for (auto& b : symbol) {
            b = static_cast<std::uint8_t>(next_bit(rng));
        }
    }
    return symbols;
}

Bits delta_edit(BitsView x, double delta, Rng& rng) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw std::domain_error("delta_edit: delta must be in [0, 1]");
    }
    Bits out(x.begin(), x.end());
    if (delta == 0.0) {
        return out;
    }
    for (auto& b : out) {
        if (next_unit(rng) < delta) {
            b ^= 1u;
        }
    }
    return out;
}

SourceInstance generate_stream(const SourceParams& params, Rng& rng) {
    params.validate();
    SourceInstance instance;
    instance.symbols = sample_symbols(params, rng);
    instance.ancestors.reserve(params.block_count);
    instance.blocks.reserve(params.block_count);
    std::size_t total = 0;
    for (std::uint64_t b = 0; b < params.block_count; ++b) {
        const auto j = static_cast<std::uint32_t>(next_below(rng, params.symbol_count));
        instance.ancestors.push_back(j);
        instance.blocks.push_back(delta_edit(instance.symbols[j], params.delta, rng));
        total += instance.blocks.back().size();
    }
    instance.stream.reserve(total);
    for (const auto& block : instance.blocks) {
        instance.stream.insert(instance.stream.end(), block.begin(), block.end());
    }
    return instance;
}

EntropyBounds entropy_bounds(const SourceParams& params) {
    params.validate();
    const double mean_len = params.length_law.mean();
    const double b = static_cast<double>(params.block_count);
    const double a = static_cast<double>(params.symbol_count);
    const double lower = analytics::binary_entropy(params.delta) * b * mean_len;
    return EntropyBounds{lower, lower + b * std::log2(a) + a * (2.0 * mean_len + 1.0)};
}

namespace {
void write_bits_line(const Bits& bits, std::ostream& out) {
    for (auto b : bits) {
        out << (b ? '1' : '0');
    }
    out << '\n';
}
} // namespace

void write_instance_text(const SourceParams& params, const SourceInstance& instance,
                         std::ostream& out) {
    out << params.symbol_count << ' ' << params.block_count << ' ' << format_double(params.delta)
        << '\n';
    for (const auto& symbol : instance.symbols) {
        write_bits_line(symbol, out);
    }
    for (std::size_t b = 0; b < instance.ancestors.size(); ++b) {
        out << (b ? " " : "") << instance.ancestors[b] + 1;
    }
    out << '\n';
    for (const auto& block : instance.blocks) {
        write_bits_line(block, out);
    }
}

} // namespace ddrs::model
