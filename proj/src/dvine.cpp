#include "magmar/dvine.hpp"

#include "magmar/numerics.hpp"

#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

void check_dim(const PairCopulaSequence& seq, std::size_t cond_size) {
    if (seq.size() != cond_size) {
        std::ostringstream os;
        os << "conditioning vector has " << cond_size
           << " element(s) but the pair-copula sequence has " << seq.size();
        throw std::invalid_argument(os.str());
    }
}

} // namespace

void validate(const PairCopulaSequence& seq) {
    for (const auto& c : seq.copulas) validate(c);
}

ConditionalCdfs rosenblatt_cond_cdfs(const PairCopulaSequence& seq,
                                     std::span<const double> u) {
    const std::size_t d = u.size();
    ConditionalCdfs out;
    out.given_newer.resize(d);
    out.given_older.resize(d);
    if (d == 0) return out;

    // vf[j] = F(u[j] | u[j+1..j+k-1]), vb[j] = F(u[j] | u[j-k+1..j-1])
    // after processing tree level k-1.
    std::vector<double> vf(u.begin(), u.end());
    std::vector<double> vb(u.begin(), u.end());
    out.given_newer[0] = u[0];
    out.given_older[0] = u[d - 1];
    for (std::size_t k = 1; k < d; ++k) {
        const CopulaSpec& ck = seq.at_lag(k);
        std::vector<double> vf_next(vf), vb_next(vb);
        for (std::size_t j = 0; j + k < d; ++j) {
            const double a = vf[j];        // newer, given intermediates
            const double b = vb[j + k];    // older, given intermediates
            vf_next[j] = h2(ck, a, b);
            vb_next[j + k] = h1(ck, a, b);
        }
        vf.swap(vf_next);
        vb.swap(vb_next);
        out.given_newer[k] = vb[k];        // F(u[k] | u[0..k-1])
        out.given_older[k] = vf[d - 1 - k];
    }
    return out;
}

double rosenblatt_fwd(const PairCopulaSequence& seq, std::span<const double> u,
                      double x) {
    check_dim(seq, u.size());
    x = u.empty() ? x : clamp_unit(x);
    const auto cc = rosenblatt_cond_cdfs(seq, u);
    double t = x;
    for (std::size_t k = 1; k <= u.size(); ++k)
        t = h2(seq.at_lag(k), t, cc.given_newer[k - 1]);
    return t;
}

double rosenblatt_bwd(const PairCopulaSequence& seq, std::span<const double> u,
                      double x) {
    check_dim(seq, u.size());
    x = u.empty() ? x : clamp_unit(x);
    const auto cc = rosenblatt_cond_cdfs(seq, u);
    double t = x;
    for (std::size_t k = 1; k <= u.size(); ++k)
        t = h1(seq.at_lag(k), cc.given_older[k - 1], t);
    return t;
}

double rosenblatt_fwd_inv(const PairCopulaSequence& seq,
                          std::span<const double> u, double w) {
    check_dim(seq, u.size());
    w = u.empty() ? w : clamp_unit(w);
    const auto cc = rosenblatt_cond_cdfs(seq, u);
    double t = w;
    for (std::size_t k = u.size(); k >= 1; --k)
        t = h2_inv(seq.at_lag(k), t, cc.given_newer[k - 1]);
    return t;
}

RosenblattChain rosenblatt_chain(const PairCopulaSequence& seq,
                                 std::span<const double> u, double x) {
    check_dim(seq, u.size());
    const auto cc = rosenblatt_cond_cdfs(seq, u);
    RosenblattChain out;
    out.forward = x;
    for (std::size_t k = 1; k <= u.size(); ++k) {
        const CopulaSpec& ck = seq.at_lag(k);
        out.log_density += copula_log_density(ck, out.forward, cc.given_newer[k - 1]);
        out.forward = h2(ck, out.forward, cc.given_newer[k - 1]);
    }
    return out;
}

double dvine_conditional_log_density(const PairCopulaSequence& seq,
                                     std::span<const double> u, double x) {
    return rosenblatt_chain(seq, u, x).log_density;
}

double dvine_log_density(const PairCopulaSequence& seq,
                         std::span<const double> window) {
    const std::size_t d = seq.size();
    if (window.size() != d + 1) {
        std::ostringstream os;
        os << "window has " << window.size() << " element(s), expected "
           << (d + 1) << " for a sequence of length " << d;
        throw std::invalid_argument(os.str());
    }
    // chain rule: sum of conditional log densities of each value given the
    // older values in the window
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        PairCopulaSequence prefix{{seq.copulas.begin(),
                                   seq.copulas.begin() + (d - j)}};
        acc += dvine_conditional_log_density(
            prefix, window.subspan(j + 1), window[j]);
    }
    return acc;
}

} // namespace magmar
