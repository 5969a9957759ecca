#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ddrs/bigint.hpp"

namespace ddrs::analytics {

// All logarithms and entropies are base 2.

// H(p) = p log2(1/p) + (1-p) log2(1/(1-p)), with 0 log(1/0) = 0.
double binary_entropy(double p);

// H(p,q) = p log2(1/q) + (1-p) log2(1/(1-q)). Unbounded (returns +inf) when
// q is 0 or 1 and p sits on the other side.
double cross_entropy(double p, double q);

// D(p||q) = H(p,q) - H(p) >= 0.
double kl_divergence(double p, double q);

// S_delta(ell, m) = sum_t binom(ell,t) * min(1, m delta^t (1-delta)^(ell-t)).
// Twice-bounds the expected number of distinct delta-edit descendants among m
// copies of a uniform ell-bit string. Evaluated in log space per term; stable
// up to ell = 1e5.
double s_delta(std::uint64_t ell, double m, double delta);

enum class BoundKind { Lower, Upper, Exact };

struct BoundReport {
    std::string name;
    double value = 0.0;
    BoundKind kind = BoundKind::Upper;
    // True when the statement only holds up to (1+o(1)) factors; the value
    // reports the limit of the slack (o(1) as 0, 1+o(1) as 1).
    bool asymptotic = false;
    std::vector<std::pair<std::string, double>> parameters;
};

// Named closed-form cases that bracket S_delta(ell, m): m/4 and m on the
// long-chunk side, 2^(ell-1) and 2^ell on the short-chunk side, the
// 2^(ell H(d')) + m 2^(-ell D(d'||d)) upper bound, and min(2^ell, m).
// Only the cases whose precondition holds for (ell, m, delta) are returned.
std::vector<BoundReport> s_delta_case_bounds(std::uint64_t ell, double m, double delta,
                                             double delta_prime);

// Exact count of binary strings of length n containing no run of k zeros.
// 2^n for n < k; recurrence |R_k^n| = sum_{i=1..k} |R_k^{n-i}| otherwise.
BigUint rll_count(unsigned k, unsigned n);

struct RllBounds {
    double lower;            // (2 - 2^-(k-2))^n
    double upper;            // 2 (2 - 2^-k)^n
    double cumulative_lower; // 2^(2^k - 2), lower bound on sum over n <= 2^k
};
RllBounds rll_bounds(unsigned k, unsigned n);

// Expected-dictionary-size bounds for two-stage fixed-length chunking with
// segment length equal to the (degenerate) symbol length L:
//   upper  (full stream):  min(2^ell, A C S_delta(ell, 3B/2A)) + B
//   lower  (half stream):  1/2 min(2^ell, 1/2 A C S_delta(ell, B/4A))
// where C = floor(L/ell). The lower bound is for the dictionary after the
// first ceil(B/2) blocks only; no closed lower bound exists for the full
// stream dictionary.
struct DictBounds {
    double upper_full;
    double lower_half;
};
DictBounds expected_dict_bounds_fld(std::uint64_t symbol_count, std::uint64_t block_count,
                                    std::uint64_t symbol_len, double delta, std::uint32_t ell);

// Adaptive chunk length ceil(log2(B/A) / H(gamma, delta)), clamped to the
// segment length when that is smaller. Requires B > A and delta < gamma < 1/2.
std::uint32_t afld_chunk_length(std::uint64_t block_count, std::uint64_t symbol_count,
                                double gamma, double delta, std::uint32_t segment_len);

// Lower branch of the Lambert W function on (-1/e, 0): the unique w <= -1 with
// w e^w = x. Bracketed bisection plus a Newton polish; absolute error < 1e-10.
double lambert_w_m1(double x);

// Growth-regime exponents: A <= B^(1-k2), L = Theta(B^k1).
struct RegimeParams {
    double k1 = 0.5;
    double k2 = 0.5;
};

// Per-bit coefficient of the variable-length upper bound,
//   12 e^-c (c+1) + 4 H(gamma,delta) ((1+k1)/k2) c,  c = log2(B/A) / (H(gamma,delta) 2^(M+1)).
BoundReport vld_bound_coefficient(std::uint64_t block_count, std::uint64_t symbol_count,
                                  double gamma, double delta, std::uint32_t marker_len,
                                  const RegimeParams& regime);

// Optimizer of e^-c (c+1) + h c with h = 4 H(delta) (1+k1) / (3 k2):
// c = -W_-1(-min(1/e, h)).
double vld_optimal_c(double delta, const RegimeParams& regime);

// Named compressed-length-to-entropy ratio bounds.
enum class RatioBoundKind {
    AfldGamma, // (1+k1)/k2 * H(gamma,delta)/H(delta)
    AfldLimit, // a (1+k1)/k2 for a tunable a > 1
    EddBeta,   // H(2 beta)/H(delta) for delta < beta <= 1/4
    EddBest,   // beta = min(3 delta/2, 1/4); value H(2 beta)/H(delta), always <= 3
};

struct RatioBoundArgs {
    double delta = 0.0;
    double gamma = 0.0;    // AfldGamma
    double a_factor = 1.0; // AfldLimit
    double beta = 0.0;     // EddBeta
    RegimeParams regime;
};

BoundReport ratio_bound(RatioBoundKind kind, const RatioBoundArgs& args);

} // namespace ddrs::analytics
