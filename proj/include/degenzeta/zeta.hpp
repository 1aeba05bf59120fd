#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "degenzeta/detail/classical.hpp"
#include "degenzeta/functions.hpp"
#include "degenzeta/kernel.hpp"

namespace degenzeta {

/// Degenerate zeta function zeta_lambda(s) = sum_{n>=1} c_n n^{-s}.
///
/// Exposed for real s >= 1 in strict mode. s = 1 is served by the exact
/// closed value 1/lambda (= Li_{1,lambda}(1) = -log_lambda(0)); s > 1 by
/// the accelerated Dirichlet summation whose certified bound decays like
/// N^{-s-lambda}. The open strip (1-lambda, 1) where the series still
/// converges is deliberately not exposed.
inline SeriesValue zeta(double s, const DegenParam& lam, double tol = 1e-12,
                        std::size_t max_terms = 4000000) {
    if (!lam.is_strict())
        throw std::domain_error("zeta: strict mode required");
    if (!(s >= 1.0))
        throw std::domain_error("zeta: requires s >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("zeta: tol must be positive");
    if (max_terms == 0) throw std::invalid_argument("zeta: max_terms must be >= 1");

    if (s == 1.0) return {1.0 / lam.value(), 0.0, 0, true, true};
    return detail::degen_dirichlet_sum(s, lam, tol, max_terms);
}

/// Degenerate Hurwitz zeta zeta*_lambda(k, x) = sum_{m>=0} 1/<m+x>_{k,lambda}
/// for integer k >= 2 and x > 0, strict mode.
///
/// The term count M is fixed up front from the closed-form bound, then the
/// tail past M is enclosed through the AM-GM factorisation
///   <y>_{k,lambda} = (y + c)^k e^theta,  c = (k-1)lambda/2,
///   |theta| <= eta(y) = lambda^2 k(k^2-1) / (24 (y+c)(y+c-c)),
/// whose classical part is an Euler-Maclaurin Hurwitz tail. The certified
/// bound T*sinh(eta) decays like M^{-k-1}, against M^{1-k} for the plain
/// integral-comparison bound (M+x)^{1-k}/(k-1); the plain bound stays valid
/// and the smaller of the two is reported.
inline SeriesValue hurwitz(int k, double x, const DegenParam& lam, double tol = 1e-10,
                           std::size_t max_terms = 50000000) {
    if (!lam.is_strict())
        throw std::domain_error("hurwitz: strict mode required");
    if (k < 2) throw std::domain_error("hurwitz: requires k >= 2");
    if (!(x > 0.0)) throw std::domain_error("hurwitz: requires x > 0");
    if (!(tol > 0.0)) throw std::invalid_argument("hurwitz: tol must be positive");

    const double lambda = lam.value();
    const double kk = static_cast<double>(k);
    const double shift = 0.5 * (kk - 1.0) * lambda;

    // Deterministic term count from the closed-form bound estimates.
    const double a_enc =
        std::pow(lambda * lambda * kk * (kk + 1.0) / (12.0 * tol), 1.0 / (kk + 1.0));
    const double a_plain = std::pow((kk - 1.0) * tol, -1.0 / (kk - 1.0));
    double m_req = std::fmin(a_enc, a_plain) - x;
    std::size_t m_terms = static_cast<std::size_t>(
        std::fmin(std::fmax(16.0, m_req + 2.0), static_cast<double>(max_terms)));

    detail::KahanSum acc;
    for (std::size_t m = 0; m <= m_terms; ++m) {
        double prod = 1.0;
        const double y = static_cast<double>(m) + x;
        for (int j = 0; j < k; ++j) prod *= y + static_cast<double>(j) * lambda;
        acc.add(1.0 / prod);
    }

    const double a = static_cast<double>(m_terms) + 1.0 + x + shift;
    const detail::CertifiedValue t_cl = detail::classical_hurwitz(kk, a);
    const double eta = lambda * lambda * kk * (kk * kk - 1.0) / (24.0 * a * (a - shift));
    const double enc_bound = t_cl.value * std::sinh(eta) + t_cl.bound * std::exp(eta);
    const double plain_bound =
        std::pow(static_cast<double>(m_terms) + x, 1.0 - kk) / (kk - 1.0);

    double value, bound;
    if (enc_bound <= 0.5 * plain_bound) {
        value = acc.total() + t_cl.value * std::cosh(eta);
        bound = enc_bound;
    } else {
        // Plain integral-comparison midpoint: tail lies in (0, plain_bound].
        value = acc.total() + 0.5 * plain_bound;
        bound = 0.5 * plain_bound;
    }
    if (bound > tol)
        throw non_convergence_error("hurwitz: tolerance not reachable within max_terms");
    return {value, bound, m_terms + 1, true, true};
}

} // namespace degenzeta
