// D-vine pair-copula sequences: Rosenblatt forward/backward functions,
// their inverses, conditional densities and the joint log density.
//
// A PairCopulaSequence of length d holds one bivariate copula per lag:
// element k-1 governs the lag-k pair (values k steps apart, given the
// intermediates). Conditioning vectors are ordered most-recent-first:
// u[0] is the value immediately preceding the target in time, u[d-1]
// the most distant one. Only the simplified vine is supported (pair
// copulas do not depend on conditioning values).
#pragma once

#include "magmar/copula.hpp"

#include <span>
#include <vector>

namespace magmar {

struct PairCopulaSequence {
    std::vector<CopulaSpec> copulas;

    std::size_t size() const { return copulas.size(); }
    bool empty() const { return copulas.empty(); }
    const CopulaSpec& at_lag(std::size_t k) const { return copulas.at(k - 1); }
};

// Throws std::domain_error if any element fails copula validation.
void validate(const PairCopulaSequence& seq);

// Conditional CDFs of the conditioning values among themselves, produced
// by one pass of the vine recursion over u:
//   given_newer[k-1] = F(u[k-1] | u[0..k-2])   (k = 1..d)
//   given_older[k-1] = F(u[d-k] | u[d-k+1..d-1])
// These are the inner arguments needed by the Rosenblatt folds below.
struct ConditionalCdfs {
    std::vector<double> given_newer;
    std::vector<double> given_older;
};
ConditionalCdfs rosenblatt_cond_cdfs(const PairCopulaSequence& seq,
                                     std::span<const double> u);

// Rosenblatt forward function: the conditional CDF of x given the d values
// in u, where x is one step newer than u[0]. Strictly increasing in x.
double rosenblatt_fwd(const PairCopulaSequence& seq, std::span<const double> u,
                      double x);

// Rosenblatt backward function: the conditional CDF of x given u, where x
// is one step older than u[d-1].
double rosenblatt_bwd(const PairCopulaSequence& seq, std::span<const double> u,
                      double x);

// Inverse of rosenblatt_fwd in x: rosenblatt_fwd(seq, u, result) = w.
double rosenblatt_fwd_inv(const PairCopulaSequence& seq,
                          std::span<const double> u, double w);

// log f(x | u), the derivative of rosenblatt_fwd with respect to x:
// the sum of the lag-k pair-copula log densities along the chain.
double dvine_conditional_log_density(const PairCopulaSequence& seq,
                                     std::span<const double> u, double x);

// Both quantities of the forward fold in one pass: the conditional log
// density and the Rosenblatt forward value.
struct RosenblattChain {
    double log_density = 0.0;
    double forward = 0.0;
};
RosenblattChain rosenblatt_chain(const PairCopulaSequence& seq,
                                 std::span<const double> u, double x);

// log density of the (d+1)-dimensional D-vine copula at the window
// (window[0] newest, ..., window[d] oldest), seq supplying lags 1..d.
double dvine_log_density(const PairCopulaSequence& seq,
                         std::span<const double> window);

} // namespace magmar
