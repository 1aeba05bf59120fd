#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "degenzeta/kernel.hpp"

namespace degenzeta {

/// Prefix table of degenerate higher-order harmonic numbers,
/// values[n] = H^{(p)}_{n,lambda} = sum_{l<=n} c_l / l^p, values[0] = 0.
struct HarmonicTable {
    double lambda = 0.0;
    int order = 1;
    std::vector<double> values;  // indexed n = 0..N
};

/// Table of the p-fold convolution numbers
/// values[k] = H_{k,p,lambda} = sum over compositions k_1+...+k_p = k
/// (all parts >= 1) of H_{k_1,lambda}...H_{k_p,lambda}; zero for k < p.
struct ConvolutionTable {
    double lambda = 0.0;
    int power = 1;
    std::vector<double> values;  // indexed k = 0..N
};

namespace detail {

inline double inv_int_pow(std::size_t n, int p) {
    double inv = 1.0;
    for (int i = 0; i < p; ++i) inv /= static_cast<double>(n);
    return inv;
}

} // namespace detail

/// H^{(p)}_{n,lambda} prefix table computed in one pass over the
/// coefficient recurrence.
inline HarmonicTable harmonic_prefix(std::size_t n_max, int p, const DegenParam& lam) {
    if (p < 1) throw std::domain_error("harmonic_prefix: order p must be >= 1");
    HarmonicTable table{lam.value(), p, std::vector<double>(n_max + 1, 0.0)};
    detail::CoeffStream cs(lam.value());
    double running = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        running += cs.current() * detail::inv_int_pow(n, p);
        table.values[n] = running;
        cs.advance();
    }
    return table;
}

/// Degenerate higher-order harmonic number H^{(p)}_{n,lambda}.
inline double harmonic_higher(std::size_t n, int p, const DegenParam& lam) {
    if (p < 1) throw std::domain_error("harmonic_higher: order p must be >= 1");
    detail::CoeffStream cs(lam.value());
    double sum = 0.0;
    for (std::size_t l = 1; l <= n; ++l) {
        sum += cs.current() * detail::inv_int_pow(l, p);
        cs.advance();
    }
    return sum;
}

/// Degenerate harmonic number H_{n,lambda} = sum_{k<=n} c_k / k.
inline double harmonic(std::size_t n, const DegenParam& lam) {
    return harmonic_higher(n, 1, lam);
}

/// Classical generalized harmonic number H_n^{(alpha)} (lambda -> 0 oracle).
inline double harmonic_classical(std::size_t n, int alpha) {
    if (alpha < 1) throw std::domain_error("harmonic_classical: alpha must be >= 1");
    double sum = 0.0;
    for (std::size_t k = 1; k <= n; ++k) sum += detail::inv_int_pow(k, alpha);
    return sum;
}

/// p-fold convolution numbers H_{k,p,lambda} for k = p..N by iterated
/// direct convolution of the order-1 prefix sequence with itself
/// (ascending-index accumulation, deterministic).
inline ConvolutionTable convolution(std::size_t n_max, int p, const DegenParam& lam) {
    if (p < 1) throw std::domain_error("convolution: power p must be >= 1");
    if (n_max < static_cast<std::size_t>(p))
        throw std::invalid_argument("convolution: need N >= p");

    const HarmonicTable base = harmonic_prefix(n_max, 1, lam);
    std::vector<double> cur = base.values;
    std::vector<double> next(n_max + 1);
    for (int q = 2; q <= p; ++q) {
        std::fill(next.begin(), next.end(), 0.0);
        // next[j+i] += cur[j] * base[i]; both sequences start at index 1.
        for (std::size_t j = static_cast<std::size_t>(q) - 1; j < n_max; ++j) {
            const double cj = cur[j];
            if (cj == 0.0) continue;
            const std::size_t i_hi = n_max - j;
            for (std::size_t i = 1; i <= i_hi; ++i) next[j + i] += cj * base.values[i];
        }
        cur.swap(next);
    }
    return ConvolutionTable{lam.value(), p, std::move(cur)};
}

} // namespace degenzeta
