#include "ddrs/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ddrs::analytics {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log2_binom(std::uint64_t n, std::uint64_t k) {
    // lgamma keeps the error at a few ulp even for n ~ 1e5.
    return (std::lgamma(static_cast<double>(n) + 1.0) -
            std::lgamma(static_cast<double>(k) + 1.0) -
            std::lgamma(static_cast<double>(n - k) + 1.0)) / std::numbers::ln2;
}

void require_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error(std::string(what) + " must be in [0, 1]");
    }
}

} // namespace

double binary_entropy(double p) {
    require_probability(p, "binary_entropy: p");
    if (p == 0.0 || p == 1.0) {
        return 0.0;
    }
    return p * std::log2(1.0 / p) + (1.0 - p) * std::log2(1.0 / (1.0 - p));
}

double cross_entropy(double p, double q) {
    require_probability(p, "cross_entropy: p");
    require_probability(q, "cross_entropy: q");
    if (q == 0.0) {
        return p == 0.0 ? 0.0 : kInf;
    }
    if (q == 1.0) {
        return p == 1.0 ? 0.0 : kInf;
    }
    return p * std::log2(1.0 / q) + (1.0 - p) * std::log2(1.0 / (1.0 - q));
}

double kl_divergence(double p, double q) {
    const double h = cross_entropy(p, q);
    if (std::isinf(h)) {
        return kInf;
    }
    return h - binary_entropy(p);
}

double s_delta(std::uint64_t ell, double m, double delta) {
    if (!(m > 0.0)) {
        throw std::domain_error("s_delta: m must be positive");
    }
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("s_delta: delta must be in (0, 1/2)");
    }
    if (ell == 0) {
        return 1.0;
    }
    const double log2m = std::log2(m);
    const double ld = std::log2(delta);
    const double l1d = std::log2(1.0 - delta);
    const double n = static_cast<double>(ell);

    // m (1-delta)^ell <= 1: no term reaches the cap and the sum telescopes to m.
    if (log2m + n * l1d <= 0.0) {
        return m;
    }
    // m delta^ell >= 1: every term is capped and the sum is 2^ell.
    if (log2m + n * ld >= 0.0) {
        return std::exp2(n);
    }

    double sum = 0.0;
    double comp = 0.0; // Kahan correction
    for (std::uint64_t t = 0; t <= ell; ++t) {
        const double lp = log2m + static_cast<double>(t) * ld +
                          static_cast<double>(ell - t) * l1d;
        const double lterm = log2_binom(ell, t) + std::min(0.0, lp);
        const double term = std::exp2(lterm);
        const double y = term - comp;
        const double s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    return sum;
}

std::vector<BoundReport> s_delta_case_bounds(std::uint64_t ell, double m, double delta,
                                             double delta_prime) {
    if (!(delta_prime > delta && delta_prime < 0.5)) {
        throw std::domain_error("s_delta_case_bounds: need delta < delta' < 1/2");
    }
    const double n = static_cast<double>(ell);
    const double log2m = std::log2(m);
    std::vector<BoundReport> out;
    auto push = [&](std::string name, double value, BoundKind kind) {
        out.push_back(BoundReport{std::move(name), value, kind, false,
                                  {{"ell", n}, {"m", m}, {"delta", delta}}});
    };

    const double h_delta = binary_entropy(delta);
    if (h_delta > 0.0 && n >= log2m / h_delta) {
        push("long_chunk_quarter_m", m / 4.0, BoundKind::Lower);
    }
    if (n >= log2m / std::log2(1.0 / (1.0 - delta))) {
        push("long_chunk_exact_m", m, BoundKind::Exact);
    }
    if (n <= log2m / cross_entropy(0.5, delta)) {
        push("short_chunk_half_space", std::exp2(n - 1.0), BoundKind::Lower);
    }
    if (n <= log2m / std::log2(1.0 / delta)) {
        push("short_chunk_full_space", std::exp2(n), BoundKind::Exact);
    }
    {
        BoundReport r;
        r.name = "tilted_sum";
        r.kind = BoundKind::Upper;
        r.value = std::exp2(n * binary_entropy(delta_prime)) +
                  m * std::exp2(-n * kl_divergence(delta_prime, delta));
        r.parameters = {{"ell", n}, {"m", m}, {"delta", delta}, {"delta_prime", delta_prime}};
        out.push_back(std::move(r));
    }
    push("trivial_min", std::min(std::exp2(n), m), BoundKind::Upper);
    return out;
}

BigUint rll_count(unsigned k, unsigned n) {
    if (k < 1) {
        throw std::domain_error("rll_count: k must be >= 1");
    }
    // Any string shorter than k is run-length limited.
    if (n < k) {
        BigUint one{1};
        one <<= n;
        return one;
    }
    std::vector<BigUint> counts;
    counts.reserve(n + 1);
    for (unsigned i = 0; i < k; ++i) {
        BigUint v{1};
        v <<= i;
        counts.push_back(std::move(v));
    }
    for (unsigned i = k; i <= n; ++i) {
        BigUint next;
        for (unsigned j = 1; j <= k; ++j) {
            next += counts[i - j];
        }
        counts.push_back(std::move(next));
    }
    return counts[n];
}

RllBounds rll_bounds(unsigned k, unsigned n) {
    if (k < 1) {
        throw std::domain_error("rll_bounds: k must be >= 1");
    }
    const double lower_base = 2.0 - std::exp2(-(static_cast<double>(k) - 2.0));
    const double upper_base = 2.0 - std::exp2(-static_cast<double>(k));
    RllBounds b;
    b.lower = std::pow(lower_base, static_cast<double>(n));
    b.upper = 2.0 * std::pow(upper_base, static_cast<double>(n));
    b.cumulative_lower = std::exp2(std::exp2(static_cast<double>(k)) - 2.0);
    return b;
}

DictBounds expected_dict_bounds_fld(std::uint64_t symbol_count, std::uint64_t block_count,
                                    std::uint64_t symbol_len, double delta, std::uint32_t ell) {
    if (ell == 0 || symbol_count == 0 || block_count == 0 || symbol_len == 0) {
        throw std::invalid_argument("expected_dict_bounds_fld: counts must be positive");
    }
    const double a = static_cast<double>(symbol_count);
    const double b = static_cast<double>(block_count);
    const double c = std::floor(static_cast<double>(symbol_len) / ell);
    const double pow2ell = std::exp2(static_cast<double>(ell));
    DictBounds out;
    out.upper_full = std::min(pow2ell, a * c * s_delta(ell, 1.5 * b / a, delta)) + b;
    out.lower_half = 0.5 * std::min(pow2ell, 0.5 * a * c * s_delta(ell, b / (4.0 * a), delta));
    return out;
}

std::uint32_t afld_chunk_length(std::uint64_t block_count, std::uint64_t symbol_count,
                                double gamma, double delta, std::uint32_t segment_len) {
    if (symbol_count == 0 || block_count <= symbol_count) {
        throw std::domain_error("afld_chunk_length: need B > A >= 1");
    }
    if (!(gamma > delta && gamma < 0.5)) {
        throw std::domain_error("afld_chunk_length: need delta < gamma < 1/2");
    }
    const double target = std::log2(static_cast<double>(block_count) /
                                    static_cast<double>(symbol_count)) /
                          cross_entropy(gamma, delta);
    const double ell = std::ceil(target);
    if (segment_len < ell) {
        return segment_len;
    }
    return static_cast<std::uint32_t>(ell);
}

double lambert_w_m1(double x) {
    constexpr double kBranchPoint = -0.36787944117144233; // -1/e
    if (x == kBranchPoint) {
        return -1.0;
    }
    if (!(x > kBranchPoint && x < 0.0)) {
        throw std::domain_error("lambert_w_m1: x must be in (-1/e, 0)");
    }
    auto g = [](double w) { return w * std::exp(w); };

    // g is decreasing on (-inf, -1]; find lo with g(lo) >= x.
    double hi = -1.0;
    double lo = -2.0;
    while (g(lo) < x && lo > -745.0) {
        lo *= 2.0;
    }
    lo = std::max(lo, -745.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) >= x) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13) {
            break;
        }
    }
    double w = 0.5 * (lo + hi);
    // Newton polish; derivative e^w (1+w) is bounded away from 0 for w < -1.
    for (int i = 0; i < 4; ++i) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double fp = ew * (1.0 + w);
        if (fp == 0.0) {
            break;
        }
        const double step = f / fp;
        w -= step;
        if (std::abs(step) < 1e-14) {
            break;
        }
    }
    return std::min(w, -1.0);
}

BoundReport vld_bound_coefficient(std::uint64_t block_count, std::uint64_t symbol_count,
                                  double gamma, double delta, std::uint32_t marker_len,
                                  const RegimeParams& regime) {
    if (symbol_count == 0 || block_count <= symbol_count) {
        throw std::domain_error("vld_bound_coefficient: need B > A >= 1");
    }
    if (!(gamma > delta && gamma < 0.5)) {
        throw std::domain_error("vld_bound_coefficient: need delta < gamma < 1/2");
    }
    const double h = cross_entropy(gamma, delta);
    const double c_m = std::log2(static_cast<double>(block_count) /
                                 static_cast<double>(symbol_count)) /
                       (h * std::exp2(static_cast<double>(marker_len) + 1.0));
    const double coeff = 12.0 * std::exp(-c_m) * (c_m + 1.0) +
                         4.0 * h * ((1.0 + regime.k1) / regime.k2) * c_m;
    BoundReport r;
    r.name = "vld_per_bit_coefficient";
    r.value = coeff;
    r.kind = BoundKind::Upper;
    r.asymptotic = true;
    r.parameters = {{"c_M", c_m},
                    {"B", static_cast<double>(block_count)},
                    {"A", static_cast<double>(symbol_count)},
                    {"gamma", gamma},
                    {"delta", delta},
                    {"M", static_cast<double>(marker_len)},
                    {"k1", regime.k1},
                    {"k2", regime.k2}};
    return r;
}

double vld_optimal_c(double delta, const RegimeParams& regime) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("vld_optimal_c: delta must be in (0, 1/2)");
    }
    const double h = 4.0 * binary_entropy(delta) * (1.0 + regime.k1) / (3.0 * regime.k2);
    const double arg = -std::min(std::exp(-1.0), h);
    return -lambert_w_m1(arg);
}

BoundReport ratio_bound(RatioBoundKind kind, const RatioBoundArgs& args) {
    BoundReport r;
    r.kind = BoundKind::Upper;
    r.asymptotic = true;
    const double h_delta = binary_entropy(args.delta);
    switch (kind) {
    case RatioBoundKind::AfldGamma: {
        if (!(args.gamma > args.delta && args.gamma < 0.5)) {
            throw std::domain_error("ratio_bound: AFLD needs delta < gamma < 1/2");
        }
        r.name = "afld_ratio_to_entropy";
        r.value = (1.0 + args.regime.k1) / args.regime.k2 *
                  cross_entropy(args.gamma, args.delta) / h_delta;
        r.parameters = {{"gamma", args.gamma}, {"delta", args.delta},
                        {"k1", args.regime.k1}, {"k2", args.regime.k2}};
        return r;
    }
    case RatioBoundKind::AfldLimit: {
        if (!(args.a_factor > 1.0)) {
            throw std::domain_error("ratio_bound: AFLD limit form needs a > 1");
        }
        r.name = "afld_ratio_limit";
        r.value = args.a_factor * (1.0 + args.regime.k1) / args.regime.k2;
        r.parameters = {{"a", args.a_factor}, {"k1", args.regime.k1}, {"k2", args.regime.k2}};
        return r;
    }
    case RatioBoundKind::EddBeta: {
        if (!(args.beta > args.delta && args.beta <= 0.25)) {
            throw std::domain_error("ratio_bound: EDD needs delta < beta <= 1/4");
        }
        r.name = "edd_ratio_to_entropy";
        r.value = binary_entropy(2.0 * args.beta) / h_delta;
        r.parameters = {{"beta", args.beta}, {"delta", args.delta}};
        return r;
    }
    case RatioBoundKind::EddBest: {
        if (!(args.delta > 0.0 && args.delta < 0.25)) {
            throw std::domain_error("ratio_bound: EDD best form needs 0 < delta < 1/4");
        }
        const double beta = std::min(1.5 * args.delta, 0.25);
        r.name = "edd_ratio_best_beta";
        r.value = binary_entropy(2.0 * beta) / h_delta; // always <= 3
        r.parameters = {{"beta", beta}, {"delta", args.delta}};
        return r;
    }
    }
    throw std::logic_error("ratio_bound: unknown kind");
}

} // namespace ddrs::analytics
