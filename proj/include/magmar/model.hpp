// The MAGMAR(p,q) process: simulation, innovation recovery, conditional
// and joint conditional densities, and the pseudo negative log-likelihood.
#pragma once

#include "magmar/dvine.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace magmar {

// Orders are implicit: p = ar.size(), q = mag.size(). ar.at_lag(k) is the
// AR copula at lag k, mag.at_lag(k) the MAG copula at innovation lag k.
struct MagmarSpec {
    PairCopulaSequence ar;
    PairCopulaSequence mag;

    std::size_t p() const { return ar.size(); }
    std::size_t q() const { return mag.size(); }
};

void validate(const MagmarSpec& spec);

// Time-ordered pseudo-observations, strictly inside (0,1).
struct PseudoSeries {
    std::vector<double> values;
    std::string origin;

    std::size_t size() const { return values.size(); }
};

// Throws std::domain_error if any value lies outside (0,1).
PseudoSeries make_pseudo_series(std::vector<double> values,
                                std::string origin = {});

// Rolling conditioning context: the last p pseudo-observations and the
// last q recovered innovations, each most-recent-first.
struct ModelState {
    std::vector<double> u_hist;
    std::vector<double> w_hist;
    std::int64_t t = 0;

    // Appends the next observation: pushes u_next into u_hist and the
    // innovation recovered from it into w_hist.
    void advance(const MagmarSpec& spec, double u_next);
};

// State with both histories filled with `init`, as used for the first
// s = max(p,q) time slots.
ModelState initial_state(const MagmarSpec& spec, double init = 0.5);

struct SimulationResult {
    std::vector<double> path;              // post-burn-in pseudo-observations
    std::vector<double> innovations;       // the w_t aligned with path
    std::vector<double> burnin_innovations; // the discarded prefix
};

// Iterates the updating equation: w_t iid uniform, MAG inverse-Rosenblatt
// against the innovation history, AR inverse-Rosenblatt against the
// observation history. Deterministic given the seed.
SimulationResult simulate(const MagmarSpec& spec, std::size_t n, std::uint64_t seed,
                          std::size_t burn_in = 500, double init = 0.5);

// Innovation recovery (the finite-horizon AR representation): seeds the
// first s = max(p,q) innovation slots, then runs
//   w_i = MAG-Rosenblatt(w-history, AR-Rosenblatt(u-history, u_i)).
// Returns one value per observation; the first s are the seeds.
std::vector<double> recover_innovations(const MagmarSpec& spec,
                                        const PseudoSeries& series,
                                        double init = 0.5);
std::vector<double> recover_innovations(const MagmarSpec& spec,
                                        const PseudoSeries& series,
                                        std::span<const double> initial_w);

// Density of the next observation given the state. The log form is the
// sum of the MAG-chain and AR-chain pair-copula log densities.
double conditional_log_density(const MagmarSpec& spec, double x,
                               const ModelState& state);
double conditional_density(const MagmarSpec& spec, double x,
                           const ModelState& state);

// Joint conditional density of the next two observations (z first, then w)
// given the state. Only defined for p = q = 1.
double joint_conditional_density(const MagmarSpec& spec, double z, double w,
                                 const ModelState& state);

// Lag-k partial pair density of (U_{t-k} = z, U_t = w) given the k-1
// intermediate pseudo-observations (most-recent-first) and the state at
// time t-k-1. Only defined for p = q = 1; k = intermediates.size() + 1.
double partial_pair_density_lag_k(const MagmarSpec& spec, double z, double w,
                                  std::span<const double> intermediates,
                                  const ModelState& state);

// Thrown when a conditional density degenerates during likelihood
// evaluation; carries the offending series index.
struct NonFiniteDensityError : std::runtime_error {
    std::size_t index;
    explicit NonFiniteDensityError(std::size_t i)
        : std::runtime_error("non-finite conditional density at series index "
                             + std::to_string(i)),
          index(i) {}
};

// Pseudo negative log-likelihood: seeds the first s = max(p,q) slots with
// `init`, recovers innovations, and sums -log conditional densities over
// i = s+1..T. The initial marginal density term is dropped.
double neg_log_likelihood(const MagmarSpec& spec, const PseudoSeries& series,
                          double init = 0.5);

} // namespace magmar
