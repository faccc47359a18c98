#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace erasure {

/// Logistic function 1/(1+e^-x), evaluated without overflow for any x.
inline double logistic(double x) {
    if (x >= 0.0) {
        const double t = std::exp(-x);
        return 1.0 / (1.0 + t);
    }
    const double t = std::exp(x);
    return t / (1.0 + t);
}

/// ln(1+e^x), evaluated without overflow for any x.
inline double softplus(double x) {
    if (x > 0.0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

/// Exact binomial coefficient for n <= 62 (fits in uint64_t).
/// Intermediate products stay below 2^63 because the running value is
/// always a binomial coefficient of n <= 62.
inline std::uint64_t binomial_exact(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("binomial_exact: need 0 <= k <= n");
    if (n > 62) throw std::domain_error("binomial_exact: n > 62 overflows uint64");
    if (k > n - k) k = n - k;
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return c;
}

/// ln C(n,k). Exact-integer path for n <= 62, lgamma otherwise.
inline double log_binomial(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::domain_error("log_binomial: need 0 <= k <= n");
    if (n <= 62) return std::log(static_cast<double>(binomial_exact(n, k)));
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Binary entropy -p ln p - (1-p) ln(1-p) in nats; 0 at the endpoints.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("binary_entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log(p) - (1.0 - p) * std::log1p(-p);
}

/// Thrown when an iterative numeric routine fails to reach its tolerance.
class convergence_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace erasure
