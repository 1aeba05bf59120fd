#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "degenzeta/detail/classical.hpp"
#include "degenzeta/kernel.hpp"

namespace degenzeta {

/// A series evaluation result carrying its truncation-error certificate.
///
/// `tail_bound` bounds |truncation error| when `certified` is true and is a
/// heuristic estimate otherwise. Rounding error of the finite summation is
/// not included in the bound. `converged` means the bound met the requested
/// tolerance.
struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::size_t terms_used = 0;
    bool converged = false;
    bool certified = false;
};

/// Degenerate exponential e_lambda^x(t) = (1 + lambda t)^{x/lambda}.
inline double degenerate_exp(double x, double t, const DegenParam& lam) {
    const double u = lam.value() * t;
    if (!(1.0 + u > 0.0))
        throw std::domain_error("degenerate_exp: requires 1 + lambda*t > 0");
    return std::exp(x / lam.value() * std::log1p(u));
}

/// Degenerate logarithm log_lambda(1+t) = ((1+t)^lambda - 1)/lambda,
/// the compositional inverse of e_lambda. At t = -1 the one-sided limit
/// -1/lambda is returned (finite for lambda > 0).
inline double degenerate_log1p(double t, const DegenParam& lam) {
    if (t == -1.0) {
        if (lam.value() > 0.0) return -1.0 / lam.value();
        throw std::domain_error("degenerate_log1p: t = -1 diverges for lambda < 0");
    }
    if (!(1.0 + t > 0.0))
        throw std::domain_error("degenerate_log1p: requires 1 + t > 0");
    return std::expm1(lam.value() * std::log1p(t)) / lam.value();
}

/// Series form of the degenerate logarithm,
///   log_lambda(1+t) = sum_{k>=1} (-1)^{k-1} (c_k/k) t^k,  |t| < 1,
/// with geometric tail certificate |c_{K+1}/(K+1)| |t|^{K+1} / (1-|t|).
/// The coefficient magnitudes c_k/k are non-increasing in strict mode,
/// which is what makes the certificate valid.
inline SeriesValue degenerate_log1p_series(double t, const DegenParam& lam,
                                           std::size_t max_terms, double tol = 1e-12) {
    if (!(std::fabs(t) < 1.0))
        throw std::domain_error("degenerate_log1p_series: requires |t| < 1");
    if (max_terms == 0)
        throw std::invalid_argument("degenerate_log1p_series: max_terms must be >= 1");

    if (t == 0.0) return {0.0, 0.0, 0, true, lam.is_strict()};

    const double abst = std::fabs(t);
    detail::KahanSum acc;
    detail::CoeffStream cs(lam.value());
    double neg_tpow = 1.0;  // (-t)^k
    double apow = 1.0;      // |t|^k
    for (std::size_t k = 1;; ++k) {
        neg_tpow *= -t;
        apow *= abst;
        acc.add(-cs.current() * neg_tpow / static_cast<double>(k));
        cs.advance();
        const double bound =
            std::fabs(cs.current()) / static_cast<double>(k + 1) * apow * abst / (1.0 - abst);
        if (bound <= tol)
            return {acc.total(), bound, k, true, lam.is_strict()};
        if (k >= max_terms) {
            if (!lam.is_strict())
                return {acc.total(), bound, k, false, false};
            throw non_convergence_error("degenerate_log1p_series: tolerance not reached");
        }
    }
}

namespace detail {

/// Accelerated evaluation of sum_{n>=1} c_n n^{-s} for s > 1 in strict mode.
///
/// The factor c_n n^lambda decreases strictly to L = 1/Gamma(1-lambda)
/// (the ratio test (1 - lambda/n)(1 + 1/n)^lambda < 1 holds on (0,1)), so
/// the tail past N is enclosed by
///   L * T  <  sum_{n>N} c_n n^{-s}  <=  (L + eps) * T,
/// with T = sum_{n>N} n^{-s-lambda} (classical, Euler-Maclaurin) and
/// eps = c_{N+1}(N+1)^lambda - L. Taking the midpoint certifies a bound of
/// half the enclosure width, which decays like N^{-s-lambda}.
inline SeriesValue degen_dirichlet_sum(double s, const DegenParam& lam, double tol,
                                       std::size_t max_terms) {
    const double lambda = lam.value();
    if (lambda == 1.0) return {1.0, 0.0, 1, true, true};  // only c_1 survives

    const double L = 1.0 / std::tgamma(1.0 - lambda);

    // Pre-estimate N from the leading behaviour of the enclosure width.
    const double coef = L * lambda * (1.0 + lambda) / (4.0 * (s + lambda - 1.0));
    double n_est = std::pow(coef / tol, 1.0 / (s + lambda));
    std::size_t n_terms = static_cast<std::size_t>(std::fmin(
        std::fmax(64.0, 1.05 * n_est), static_cast<double>(max_terms)));

    for (;;) {
        KahanSum acc;
        CoeffStream cs(lambda);
        for (std::size_t n = 1; n <= n_terms; ++n) {
            acc.add(cs.current() * std::pow(static_cast<double>(n), -s));
            cs.advance();
        }
        const CertifiedValue tail = classical_zeta_tail(s + lambda, n_terms);
        const double eps = std::fmax(
            cs.current() * std::pow(static_cast<double>(n_terms) + 1.0, lambda) - L, 0.0);
        const double value = acc.total() + (L + 0.5 * eps) * tail.value;
        const double bound = 0.5 * eps * tail.value + (L + eps) * tail.bound;
        if (bound <= tol) return {value, bound, n_terms, true, true};
        if (n_terms >= max_terms)
            throw non_convergence_error("degenerate Dirichlet series: tolerance not reached");
        n_terms = static_cast<std::size_t>(
            std::fmin(2.0 * static_cast<double>(n_terms), static_cast<double>(max_terms)));
    }
}

} // namespace detail

/// Degenerate polylogarithm Li_{p,lambda}(t) = sum_{n>=1} c_n t^n / n^p
/// for integer order p >= 1 and t in (-1, 1].
///
/// Tail certificates (strict mode): geometric first-omitted-term/(1-t) for
/// 0 < t < 1, plain first omitted term for t < 0 (the terms alternate with
/// decreasing magnitude), and the Dirichlet enclosure at t = 1. Order p = 1
/// falls back to the exact identity Li_{1,lambda}(t) = -log_lambda(1-t)
/// when the series cannot meet the tolerance within the budget.
inline SeriesValue polylog(int p, double t, const DegenParam& lam, double tol = 1e-12,
                           std::size_t max_terms = 1000000) {
    if (p < 1) throw std::domain_error("polylog: order p must be >= 1");
    if (!(t > -1.0 && t <= 1.0))
        throw std::domain_error("polylog: argument must lie in (-1, 1]");
    if (!(tol > 0.0)) throw std::invalid_argument("polylog: tol must be positive");
    if (max_terms == 0) throw std::invalid_argument("polylog: max_terms must be >= 1");

    if (t == 0.0) return {0.0, 0.0, 0, true, lam.is_strict()};

    if (t == 1.0) {
        if (!lam.is_strict())
            throw std::domain_error("polylog: t = 1 requires strict mode");
        if (p == 1)  // -log_lambda(0) = 1/lambda exactly
            return {1.0 / lam.value(), 0.0, 0, true, true};
        return detail::degen_dirichlet_sum(static_cast<double>(p), lam, tol, max_terms);
    }

    const double abst = std::fabs(t);
    const bool strict = lam.is_strict();
    detail::KahanSum acc;
    detail::CoeffStream cs(lam.value());
    double tpow = 1.0;
    double apow = 1.0;
    double prev_mag = HUGE_VAL;
    for (std::size_t n = 1;; ++n) {
        tpow *= t;
        apow *= abst;
        double inv_np = 1.0;
        for (int i = 0; i < p; ++i) inv_np /= static_cast<double>(n);
        const double mag = std::fabs(cs.current()) * apow * inv_np;
        acc.add(cs.current() * tpow * inv_np);
        cs.advance();

        double next_mag = std::fabs(cs.current()) * apow * abst;
        for (int i = 0; i < p; ++i) next_mag /= static_cast<double>(n + 1);
        // In strict mode magnitudes decrease, so for t > 0 the tail is below
        // next_mag/(1-t) and for t < 0 below the first omitted term.
        const double bound = (strict && t < 0.0) ? next_mag : next_mag / (1.0 - abst);
        if (bound <= tol && (strict || next_mag <= prev_mag))
            return {acc.total(), bound, n, true, strict};
        prev_mag = mag;
        if (n >= max_terms) {
            if (p == 1)
                return {-degenerate_log1p(-t, lam), 0.0, n, true, true};
            if (!strict) return {acc.total(), bound, n, false, false};
            throw non_convergence_error("polylog: tolerance not reached within max_terms");
        }
    }
}

} // namespace degenzeta
