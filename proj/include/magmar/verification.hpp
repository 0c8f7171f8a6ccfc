// Independent oracles for the model's structural facts: the linear-ARMA
// nesting map, MAG(1) distributional properties, and the truncated
// moving-aggregate representation.
#pragma once

#include "magmar/copula.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace magmar {

// Linear ARMA(1,1) parameters implied by a normal-normal MAGMAR(1,1)
// with AR parameter alpha and MAG parameter beta.
struct ArmaParams {
    double ar = 0.0;
    double ma = 0.0;
    double innovation_variance = 1.0;
};

// ar = alpha, ma = beta / sqrt(1 - beta^2),
// innovation_variance = (1 - alpha^2)(1 - beta^2). Requires |alpha| < 1,
// |beta| < 1.
ArmaParams implied_arma_params(double alpha, double beta);

// Runs the linear ARMA(1,1) recursion on the normal scores of the given
// uniform innovations, starting from a zero state (the u = w = 0.5
// initialization used by the simulator).
std::vector<double> arma_path_oracle(const ArmaParams& arma,
                                     std::span<const double> innovations);

// Joint CDF of a consecutive MAG(1) pair via the quadrature identity
// F(a,b) = int_0^1 C_theta[a, h_theta(b, w)] dw.
double mag1_pair_cdf(const CopulaSpec& theta, double a, double b);

// One-sample Kolmogorov-Smirnov statistic against the uniform law.
double ks_statistic_uniform(std::span<const double> values);

// Asymptotic critical value for the one-sample KS test at the given level.
double ks_critical_value(std::size_t n, double alpha = 0.01);

struct KsCheck {
    double statistic = 0.0;
    double critical_1pct = 0.0;
    bool pass = false;
};

// Simulates n values of V_t = h_inv(w_t, w_{t-1}) and tests them against
// the uniform distribution at the 1% level.
KsCheck mag1_uniformity_check(const CopulaSpec& theta, std::size_t n,
                              std::uint64_t seed = 1);

// Truncated moving-aggregate representation of a normal-AR MAGMAR series:
//   A_{t,n} = Phi( sqrt(1-phi^2) * sum_{i=0}^{n} phi^i * PhiInv(v_{t-i}) )
// where t indexes the last innovation and v is either the raw innovation
// sequence (no MAG copula) or the MAG(1)-filtered one.
double truncated_mag_representation(double phi,
                                    const std::optional<CopulaSpec>& mag,
                                    std::span<const double> innovations,
                                    std::size_t n_trunc);

} // namespace magmar
