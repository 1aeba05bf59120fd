#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "degenzeta/functions.hpp"
#include "degenzeta/kernel.hpp"
#include "degenzeta/zeta.hpp"

namespace degenzeta {

/// Outcome of an adaptive quadrature run. `error_estimate` is the summed
/// per-panel estimate of the nested rule pair (heuristic, not certified).
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

/// Clenshaw-Curtis nodes and weights on [-1,1] for the nested 9/17 pair.
/// The 9-point rule reuses the even-index nodes of the 17-point grid.
struct CCRule {
    std::array<double, 17> nodes;
    std::array<double, 17> w17;
    std::array<double, 9> w9;
};

inline std::array<double, 17> cc_weights_17(int n) {
    // classic closed-form CC weights for even n (n+1 nodes)
    std::array<double, 17> w{};
    const double pi = 3.14159265358979323846;
    for (int k = 0; k <= n; ++k) {
        double s = 1.0;
        for (int j = 1; j <= n / 2; ++j) {
            const double bj = (j == n / 2) ? 1.0 : 2.0;
            s -= bj / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * pi / n);
        }
        const double ck = (k == 0 || k == n) ? 1.0 : 2.0;
        w[static_cast<std::size_t>(k)] = ck * s / n;
    }
    return w;
}

inline const CCRule& cc_rule() {
    static const CCRule rule = [] {
        CCRule r{};
        const double pi = 3.14159265358979323846;
        for (int k = 0; k <= 16; ++k) r.nodes[static_cast<std::size_t>(k)] = std::cos(k * pi / 16.0);
        r.w17 = cc_weights_17(16);
        const auto w9full = cc_weights_17(8);
        for (int k = 0; k <= 8; ++k) r.w9[static_cast<std::size_t>(k)] = w9full[static_cast<std::size_t>(k)];
        return r;
    }();
    return rule;
}

/// Adaptive bisection with the nested CC 9/17 pair and an absolute-error
/// target distributed proportionally to panel width. Panels come off a
/// LIFO stack; accepted contributions are accumulated left-to-right at the
/// end so the summation order is independent of processing order.
template <typename F>
QuadratureResult adaptive_quadrature(F&& f, double a, double b, double tol,
                                     std::size_t max_panels) {
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: tol must be positive");
    const CCRule& rule = cc_rule();
    const double total_width = b - a;

    struct Panel {
        double a, b;
    };
    struct Accepted {
        double a, value, estimate;
    };
    std::vector<Panel> stack{{a, b}};
    std::vector<Accepted> accepted;
    std::size_t evals = 0;
    std::size_t panels_processed = 0;

    while (!stack.empty()) {
        const Panel panel = stack.back();
        stack.pop_back();
        if (++panels_processed > max_panels)
            throw non_convergence_error("adaptive_quadrature: subdivision limit exceeded");

        const double mid = 0.5 * (panel.a + panel.b);
        const double half = 0.5 * (panel.b - panel.a);
        double q17 = 0.0, q9 = 0.0;
        for (int k = 0; k <= 16; ++k) {
            const double x = mid + half * rule.nodes[static_cast<std::size_t>(k)];
            const double fx = f(x);
            ++evals;
            q17 += rule.w17[static_cast<std::size_t>(k)] * fx;
            if (k % 2 == 0) q9 += rule.w9[static_cast<std::size_t>(k / 2)] * fx;
        }
        q17 *= half;
        q9 *= half;

        const double est = std::fabs(q17 - q9);
        const double width = panel.b - panel.a;
        if (est <= tol * width / total_width || width <= 1e-14 * total_width) {
            accepted.push_back({panel.a, q17, est});
        } else {
            stack.push_back({mid, panel.b});
            stack.push_back({panel.a, mid});
        }
    }

    std::sort(accepted.begin(), accepted.end(),
              [](const Accepted& l, const Accepted& r) { return l.a < r.a; });
    KahanSum val, err;
    for (const auto& piece : accepted) {
        val.add(piece.value);
        err.add(piece.estimate);
    }
    return {val.total(), err.total(), evals, true};
}

} // namespace detail

/// Exact beta-integral weight w_k(n) = n! / (k(k+1)...(k+n)).
inline double weight(std::size_t k, std::size_t n) {
    if (k < 1 || n < 1) throw std::domain_error("weight: requires k >= 1 and n >= 1");
    double prod = 1.0 / static_cast<double>(k);
    for (std::size_t i = 1; i <= n; ++i)
        prod *= static_cast<double>(i) / static_cast<double>(k + i);
    return prod;
}

/// Exact tail sum_{k>K} w_k(n) = (n-1)! / ((K+1)(K+2)...(K+n)), by the
/// telescoping identity T_k - T_{k+1} = n/(k...(k+n)), T_k = 1/(k...(k+n-1)).
inline double weight_tail(std::size_t k_from, std::size_t n) {
    if (n < 1) throw std::domain_error("weight_tail: requires n >= 1");
    double prod = 1.0 / static_cast<double>(k_from + 1);
    for (std::size_t i = 2; i <= n; ++i)
        prod *= static_cast<double>(i - 1) / static_cast<double>(k_from + i);
    return prod;
}

namespace detail {

/// Finite sum S_r = sum_{i=0}^{r-1} 1/(C(lambda+i, i)(lambda+i+1))
///             = sum_{i=0}^{r-1} i! / ((lambda+1)(lambda+2)...(lambda+i+1)).
inline double beta_weight_sum(int r, double lambda) {
    double term = 1.0 / (lambda + 1.0);
    double sum = term;
    for (int i = 1; i < r; ++i)
        { term *= static_cast<double>(i) / (lambda + static_cast<double>(i) + 1.0); sum += term; }
    return sum;
}

struct CertifiedIntegral {
    double value = 0.0;
    double bound = 0.0;
};

inline constexpr double kZetaSubcallTol = 1e-13;

/// integral_closed with the accumulated zeta-subcall bounds attached.
inline CertifiedIntegral integral_closed_certified(int r, int p, const DegenParam& lam) {
    if (r < 1 || p < 1) throw std::domain_error("integral_closed: requires r >= 1 and p >= 1");
    if (!lam.is_strict()) throw std::domain_error("integral_closed: strict mode required");

    const double s_r = beta_weight_sum(r, lam.value());
    double r_pow = 1.0 / static_cast<double>(r);
    if (p == 1) return {r_pow * s_r, 0.0};

    double value = 0.0, bound = 0.0, sign = 1.0;
    for (int k = 1; k <= p - 1; ++k) {
        const SeriesValue z = zeta(static_cast<double>(p - k + 1), lam, kZetaSubcallTol);
        value += sign * r_pow * z.value;
        bound += r_pow * z.tail_bound;
        sign = -sign;
        r_pow /= static_cast<double>(r);
    }
    value += sign * r_pow * s_r;
    return {value, bound};
}

} // namespace detail

/// Closed form of I_lambda(r,p) = int_0^1 x^{r-1} Li_{p,lambda}(x) dx:
///   sum_{k=1}^{p-1} (-1)^{k-1} r^{-k} zeta_lambda(p-k+1)
///     + (-1)^{p-1} r^{-p} sum_{i=0}^{r-1} 1/(C(lambda+i,i)(lambda+i+1)),
/// reducing to the pure beta-weight sum for p = 1.
inline double integral_closed(int r, int p, const DegenParam& lam) {
    return detail::integral_closed_certified(r, p, lam).value;
}

/// Independent quadrature oracle for I_lambda(r,p): adaptive CC 9/17 on
/// [0,1] with the integrand evaluated through the polylog series (p >= 2)
/// or the exact logarithm form (p = 1, where Li_{1,lambda}(x) =
/// -log_lambda(1-x) stays bounded as x -> 1 in strict mode).
inline QuadratureResult integral_quadrature(int r, int p, const DegenParam& lam, double tol,
                                            std::size_t max_panels = 4000) {
    if (r < 1 || p < 1)
        throw std::domain_error("integral_quadrature: requires r >= 1 and p >= 1");
    if (!lam.is_strict()) throw std::domain_error("integral_quadrature: strict mode required");

    const double li_tol = std::fmax(tol * 1e-2, 5e-14);
    constexpr std::size_t kLiBudget = 100000000;
    auto integrand = [&](double x) -> double {
        if (x <= 0.0) return 0.0;
        const double xp = (r == 1) ? 1.0 : std::pow(x, static_cast<double>(r - 1));
        if (p == 1) return -xp * degenerate_log1p(-x, lam);
        return xp * polylog(p, x, lam, li_tol, kLiBudget).value;
    };
    return detail::adaptive_quadrature(integrand, 0.0, 1.0, tol, max_panels);
}

/// Quadrature oracle for the convolution identity integral
///   int_0^1 (-log_lambda(1-x))^p (1-x)^{n-p} / x dx,
/// with the continuous endpoint extensions: x -> 0 gives x^{p-1} behaviour
/// (1 for p = 1, 0 for p >= 2) and x = 1 gives (1/lambda)^p when n = p,
/// 0 when n > p.
inline QuadratureResult quadrature_theorem6(int n, int p, const DegenParam& lam, double tol,
                                            std::size_t max_panels = 4000) {
    if (p < 1) throw std::domain_error("quadrature_theorem6: requires p >= 1");
    if (n < p) throw std::domain_error("quadrature_theorem6: requires n >= p");
    if (!lam.is_strict()) throw std::domain_error("quadrature_theorem6: strict mode required");

    auto integrand = [&](double x) -> double {
        if (x <= 0.0) return (p == 1) ? 1.0 : 0.0;
        if (x >= 1.0)
            return (n == p) ? std::pow(1.0 / lam.value(), static_cast<double>(p)) : 0.0;
        const double lg = -degenerate_log1p(-x, lam);
        double v = 1.0;
        for (int i = 0; i < p; ++i) v *= lg;
        if (n > p) v *= std::pow(1.0 - x, static_cast<double>(n - p));
        return v / x;
    };
    return detail::adaptive_quadrature(integrand, 0.0, 1.0, tol, max_panels);
}

} // namespace degenzeta
