// Maximum-likelihood fitting over constrained copula parameters,
// information criteria and candidate-model selection.
#pragma once

#include "magmar/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace magmar {

// Bijections between the constrained parameter domains and the real line,
// applied slot by slot:
//   rho in (-1,1)      <->  atanh(rho)
//   gumbel rho >= 1    <->  log(rho - 1)
//   t nu in [2,100]    <->  logit((nu - 2) / 98)
std::vector<double> to_unconstrained(const MagmarSpec& spec);
MagmarSpec from_unconstrained(std::span<const double> x,
                              const MagmarSpec& skeleton);

int count_params(const MagmarSpec& spec);
int count_params(const std::string& model_string);

// (aic, bic) = (2k + 2 nll, k ln(n) + 2 nll)
std::pair<double, double> information_criteria(double nll, int n_params,
                                               std::size_t n_obs);

struct FitOptions {
    int restarts = 5;
    int max_evals_per_restart = 2000;
    double simplex_tol = 1e-6;     // simplex diameter, unconstrained scale
    std::uint64_t seed = 42;       // seeds the scattered restart points
    double start_spread = 1.5;
    double init = 0.5;             // likelihood initial value
};

struct FitResult {
    MagmarSpec spec;
    std::string model;
    double nll = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    int n_params = 0;
    std::size_t n_obs = 0;
    bool converged = false;
    long iterations = 0;           // objective evaluations across restarts
    std::string error;             // nonempty if the fit failed outright
};

// Derivative-free simplex minimization of the pseudo negative
// log-likelihood over the unconstrained image, with scattered restarts.
// Non-finite densities are mapped to a large penalty so the optimizer can
// retreat. The first restart starts at the skeleton's own parameters.
FitResult fit(const MagmarSpec& skeleton, const PseudoSeries& series,
              const FitOptions& options = {});

enum class Criterion { aic, bic };

// Fits every candidate model string and sorts ascending by the chosen
// criterion; ties break toward fewer parameters, then the lexically
// smaller model string. Per-candidate failures are recorded in the result,
// not thrown. jobs > 1 fans candidates out to that many workers.
std::vector<FitResult> select(const std::vector<std::string>& candidates,
                              const PseudoSeries& series, Criterion criterion,
                              const FitOptions& options = {}, int jobs = 1);

} // namespace magmar
