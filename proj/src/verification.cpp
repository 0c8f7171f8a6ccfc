#include "magmar/verification.hpp"

#include "magmar/numerics.hpp"
#include "magmar/special.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace magmar {

ArmaParams implied_arma_params(double alpha, double beta) {
    if (!(std::abs(alpha) < 1.0) || !(std::abs(beta) < 1.0))
        throw std::domain_error("implied ARMA parameters require |alpha| < 1 "
                                "and |beta| < 1");
    ArmaParams out;
    out.ar = alpha;
    out.ma = beta / std::sqrt(1.0 - beta * beta);
    out.innovation_variance = (1.0 - alpha * alpha) * (1.0 - beta * beta);
    return out;
}

std::vector<double> arma_path_oracle(const ArmaParams& arma,
                                     std::span<const double> innovations) {
    const double sd = std::sqrt(arma.innovation_variance);
    std::vector<double> path;
    path.reserve(innovations.size());
    double x_prev = 0.0;     // Phi^{-1}(0.5)
    double eps_prev = 0.0;
    for (double w : innovations) {
        const double eps = norm_quantile(w);
        const double x = arma.ar * x_prev + sd * eps + arma.ma * sd * eps_prev;
        path.push_back(x);
        x_prev = x;
        eps_prev = eps;
    }
    return path;
}

double mag1_pair_cdf(const CopulaSpec& theta, double a, double b) {
    validate(theta);
    a = clamp_unit(a);
    b = clamp_unit(b);
    return integrate(
        [&](double w) {
            return copula_cdf(theta, a, h2(theta, b, clamp_unit(w)));
        },
        0.0, 1.0, 1e-8);
}

double ks_statistic_uniform(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double up = (static_cast<double>(i) + 1.0) / n - sorted[i];
        const double down = sorted[i] - static_cast<double>(i) / n;
        d = std::max(d, std::max(up, down));
    }
    return d;
}

double ks_critical_value(std::size_t n, double alpha) {
    // asymptotic Kolmogorov quantile with Stephens' finite-n correction
    const double c = std::sqrt(-0.5 * std::log(0.5 * alpha));
    const double rn = std::sqrt(static_cast<double>(n));
    return c / (rn + 0.12 + 0.11 / rn);
}

KsCheck mag1_uniformity_check(const CopulaSpec& theta, std::size_t n,
                              std::uint64_t seed) {
    validate(theta);
    if (n < 10000)
        throw std::invalid_argument("uniformity check needs n >= 10^4");
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        return clamp_unit(static_cast<double>(rng() >> 11) * 0x1.0p-53);
    };
    std::vector<double> v(n);
    double w_prev = draw();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = draw();
        v[i] = h2_inv(theta, w, w_prev);
        w_prev = w;
    }
    KsCheck out;
    out.statistic = ks_statistic_uniform(v);
    out.critical_1pct = ks_critical_value(n, 0.01);
    out.pass = out.statistic < out.critical_1pct;
    return out;
}

double truncated_mag_representation(double phi,
                                    const std::optional<CopulaSpec>& mag,
                                    std::span<const double> innovations,
                                    std::size_t n_trunc) {
    if (!(std::abs(phi) < 1.0))
        throw std::domain_error("truncated representation requires |phi| < 1");
    const std::size_t need = n_trunc + 1 + (mag ? 1 : 0);
    if (innovations.size() < need)
        throw std::invalid_argument("innovation sequence shorter than the "
                                    "requested truncation horizon");
    if (mag) validate(*mag);

    const std::size_t t = innovations.size() - 1;
    double sum = 0.0;
    double weight = 1.0; // phi^i
    for (std::size_t i = 0; i <= n_trunc; ++i) {
        const double w = innovations[t - i];
        const double v = mag ? h2_inv(*mag, w, innovations[t - i - 1]) : w;
        sum += weight * norm_quantile(v);
        weight *= phi;
    }
    return clamp_unit(norm_cdf(std::sqrt(1.0 - phi * phi) * sum));
}

} // namespace magmar
