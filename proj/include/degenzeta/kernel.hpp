#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace degenzeta {

/// Thrown when a series or quadrature cannot certify the requested
/// tolerance within its term/panel budget.
class non_convergence_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DomainMode { strict, extended };

/// Degeneracy parameter lambda with its domain mode.
///
/// Strict mode (the default) requires lambda in (0,1]; every certified
/// tail bound in this library is proved on that domain. Extended mode
/// admits any nonzero real lambda and suspends certification.
class DegenParam {
public:
    explicit DegenParam(double lambda, DomainMode mode = DomainMode::strict)
        : lambda_(lambda), mode_(mode) {
        if (lambda == 0.0 || !std::isfinite(lambda))
            throw std::domain_error("DegenParam: lambda must be a nonzero finite real");
        if (mode == DomainMode::strict && !(lambda > 0.0 && lambda <= 1.0))
            throw std::domain_error("DegenParam: strict mode requires 0 < lambda <= 1");
    }

    static DegenParam strict(double lambda) { return DegenParam(lambda, DomainMode::strict); }
    static DegenParam extended(double lambda) { return DegenParam(lambda, DomainMode::extended); }

    double value() const { return lambda_; }
    DomainMode mode() const { return mode_; }
    bool is_strict() const { return mode_ == DomainMode::strict; }

private:
    double lambda_;
    DomainMode mode_;
};

/// Degenerate falling factorial (x)_{n,lambda} = x(x-l)(x-2l)...(x-(n-1)l).
inline double falling_factorial(double x, std::size_t n, const DegenParam& lam) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) prod *= x - static_cast<double>(j) * lam.value();
    return prod;
}

/// Degenerate rising factorial <x>_{n,lambda} = x(x+l)(x+2l)...(x+(n-1)l).
inline double rising_factorial(double x, std::size_t n, const DegenParam& lam) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) prod *= x + static_cast<double>(j) * lam.value();
    return prod;
}

/// Binomial coefficient with real upper argument: x(x-1)...(x-n+1)/n!.
inline double generalized_binomial(double x, std::size_t n) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        prod *= (x - static_cast<double>(j)) / static_cast<double>(j + 1);
    return prod;
}

/// Degenerate binomial coefficient (x)_{n,lambda}/n!.
inline double degenerate_binomial(double x, std::size_t n, const DegenParam& lam) {
    double prod = 1.0;
    for (std::size_t j = 0; j < n; ++j)
        prod *= (x - static_cast<double>(j) * lam.value()) / static_cast<double>(j + 1);
    return prod;
}

/// Prefix table of the universal series coefficients
///
///   c_n = prod_{j=1}^{n-1} (j - lambda) / (n-1)!,   c_1 = 1,
///
/// shared by the degenerate polylogarithm, harmonic and zeta series.
/// Built by the ratio recurrence c_{n+1} = c_n (n - lambda)/n, which keeps
/// every intermediate in [0,1] in strict mode. In strict mode the sequence
/// is non-increasing with 0 <= c_n <= 1, and c_n -> 0 like n^{-lambda}.
class CoefficientTable {
public:
    CoefficientTable(const DegenParam& lam, std::size_t n_max)
        : lambda_(lam.value()), c_(n_max + 1, 0.0) {
        if (n_max == 0)
            throw std::invalid_argument("CoefficientTable: need at least one coefficient");
        c_[1] = 1.0;
        for (std::size_t n = 1; n < n_max; ++n)
            c_[n + 1] = c_[n] * (static_cast<double>(n) - lambda_) / static_cast<double>(n);
    }

    double lambda() const { return lambda_; }
    std::size_t size() const { return c_.size() - 1; }

    /// c_n for 1 <= n <= size().
    double c(std::size_t n) const { return c_.at(n); }

private:
    double lambda_;
    std::vector<double> c_;
};

inline CoefficientTable coeff_prefix(std::size_t n_max, const DegenParam& lam) {
    return CoefficientTable(lam, n_max);
}

namespace detail {

/// Stateful generator for c_1, c_2, ... without materialising a table.
class CoeffStream {
public:
    explicit CoeffStream(double lambda) : lambda_(lambda) {}

    /// Coefficient c_n for the current index n (starts at 1).
    double current() const { return c_; }
    std::size_t index() const { return n_; }

    void advance() {
        c_ *= (static_cast<double>(n_) - lambda_) / static_cast<double>(n_);
        ++n_;
    }

private:
    double lambda_;
    double c_ = 1.0;
    std::size_t n_ = 1;
};

} // namespace detail

} // namespace degenzeta
