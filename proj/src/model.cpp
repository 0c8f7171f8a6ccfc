#include "magmar/model.hpp"

#include "magmar/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

double uniform_open(std::mt19937_64& rng) {
    // 53-bit mantissa mapping, clamped into the open interval
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return clamp_unit(u);
}

// most-recent-first history slice ending just before index i
void fill_history(std::span<const double> values, std::size_t i,
                  std::size_t len, std::vector<double>& out) {
    out.resize(len);
    for (std::size_t j = 0; j < len; ++j) out[j] = values[i - 1 - j];
}

void push_front_fixed(std::vector<double>& hist, double v) {
    if (hist.empty()) return;
    std::rotate(hist.rbegin(), hist.rbegin() + 1, hist.rend());
    hist.front() = v;
}

void require_pq1(const MagmarSpec& spec, const char* what) {
    if (spec.p() != 1 || spec.q() != 1) {
        std::ostringstream os;
        os << what << " is only supported for p = q = 1 (got p = " << spec.p()
           << ", q = " << spec.q() << ")";
        throw std::invalid_argument(os.str());
    }
}

void require_state(const MagmarSpec& spec, const ModelState& state) {
    if (state.u_hist.size() < spec.p() || state.w_hist.size() < spec.q())
        throw std::invalid_argument(
            "model state holds fewer history entries than the model orders");
}

} // namespace

void validate(const MagmarSpec& spec) {
    validate(spec.ar);
    validate(spec.mag);
}

PseudoSeries make_pseudo_series(std::vector<double> values, std::string origin) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0 && values[i] < 1.0)) {
            std::ostringstream os;
            os << "pseudo-observation at index " << i
               << " lies outside (0,1): " << values[i];
            throw std::domain_error(os.str());
        }
    }
    return PseudoSeries{std::move(values), std::move(origin)};
}

void ModelState::advance(const MagmarSpec& spec, double u_next) {
    require_state(spec, *this);
    const double z = rosenblatt_fwd(
        spec.ar, std::span(u_hist).first(spec.p()), u_next);
    const double w_next = rosenblatt_fwd(
        spec.mag, std::span(w_hist).first(spec.q()), z);
    push_front_fixed(u_hist, u_next);
    push_front_fixed(w_hist, w_next);
    ++t;
}

ModelState initial_state(const MagmarSpec& spec, double init) {
    if (!(init > 0.0 && init < 1.0))
        throw std::domain_error("initial value must lie in (0,1)");
    ModelState st;
    st.u_hist.assign(spec.p(), init);
    st.w_hist.assign(spec.q(), init);
    return st;
}

SimulationResult simulate(const MagmarSpec& spec, std::size_t n,
                          std::uint64_t seed, std::size_t burn_in, double init) {
    validate(spec);
    if (n < 1) throw std::invalid_argument("simulation length must be >= 1");
    ModelState st = initial_state(spec, init);
    std::mt19937_64 rng(seed);

    SimulationResult out;
    out.path.reserve(n);
    out.innovations.reserve(n);
    out.burnin_innovations.reserve(burn_in);

    for (std::size_t step = 0; step < burn_in + n; ++step) {
        const double w = uniform_open(rng);
        const double v = rosenblatt_fwd_inv(spec.mag, st.w_hist, w);
        const double u = rosenblatt_fwd_inv(spec.ar, st.u_hist, v);
        push_front_fixed(st.u_hist, u);
        push_front_fixed(st.w_hist, w);
        if (step < burn_in) {
            out.burnin_innovations.push_back(w);
        } else {
            out.path.push_back(u);
            out.innovations.push_back(w);
        }
    }
    return out;
}

std::vector<double> recover_innovations(const MagmarSpec& spec,
                                        const PseudoSeries& series,
                                        std::span<const double> initial_w) {
    validate(spec);
    const std::size_t p = spec.p(), q = spec.q();
    const std::size_t s = std::max(p, q);
    const std::size_t n = series.size();
    if (n <= s)
        throw std::invalid_argument("series length must exceed max(p,q)");
    if (initial_w.size() != s)
        throw std::invalid_argument("need exactly max(p,q) initial innovations");

    std::vector<double> w(n);
    std::copy(initial_w.begin(), initial_w.end(), w.begin());
    std::vector<double> hu, hw;
    for (std::size_t i = s; i < n; ++i) {
        fill_history(series.values, i, p, hu);
        fill_history(w, i, q, hw);
        const double z = rosenblatt_fwd(spec.ar, hu, series.values[i]);
        w[i] = rosenblatt_fwd(spec.mag, hw, z);
    }
    return w;
}

std::vector<double> recover_innovations(const MagmarSpec& spec,
                                        const PseudoSeries& series,
                                        double init) {
    const std::size_t s = std::max(spec.p(), spec.q());
    std::vector<double> seeds(s, init);
    return recover_innovations(spec, series, seeds);
}

double conditional_log_density(const MagmarSpec& spec, double x,
                               const ModelState& state) {
    require_state(spec, state);
    const auto ar = rosenblatt_chain(
        spec.ar, std::span(state.u_hist).first(spec.p()), clamp_unit(x));
    const double mag = dvine_conditional_log_density(
        spec.mag, std::span(state.w_hist).first(spec.q()), ar.forward);
    return ar.log_density + mag;
}

double conditional_density(const MagmarSpec& spec, double x,
                           const ModelState& state) {
    return std::exp(conditional_log_density(spec, x, state));
}

double joint_conditional_density(const MagmarSpec& spec, double z, double w,
                                 const ModelState& state) {
    require_pq1(spec, "joint conditional density");
    require_state(spec, state);
    const CopulaSpec& cphi = spec.ar.at_lag(1);
    const CopulaSpec& cth = spec.mag.at_lag(1);
    const double u_prev = state.u_hist[0];
    const double w_prev = state.w_hist[0];

    const double hz = h2(cphi, z, u_prev);
    const double w_z = h2(cth, hz, w_prev); // innovation recovered from z
    const double hw = h2(cphi, w, z);

    const double logf = copula_log_density(cth, hz, w_prev)
                      + copula_log_density(cphi, z, u_prev)
                      + copula_log_density(cth, hw, w_z)
                      + copula_log_density(cphi, w, z);
    return std::exp(logf);
}

double partial_pair_density_lag_k(const MagmarSpec& spec, double z, double w,
                                  std::span<const double> intermediates,
                                  const ModelState& state) {
    require_pq1(spec, "partial pair density");
    require_state(spec, state);
    const CopulaSpec& cphi = spec.ar.at_lag(1);
    const CopulaSpec& cth = spec.mag.at_lag(1);
    const double u_old = state.u_hist[0]; // u_{t-k-1}
    const double w_old = state.w_hist[0]; // w_{t-k-1}

    const double hz = h2(cphi, z, u_old);
    double w_cur = h2(cth, hz, w_old); // w_{t-k}(z)
    double u_prev = z;
    // roll the innovation recursion forward through the intermediate
    // observations, oldest first
    for (std::size_t j = intermediates.size(); j-- > 0;) {
        const double u_i = intermediates[j];
        w_cur = h2(cth, h2(cphi, u_i, u_prev), w_cur);
        u_prev = u_i;
    }
    const double hw = h2(cphi, w, u_prev);

    const double logf = copula_log_density(cth, hz, w_old)
                      + copula_log_density(cphi, z, u_old)
                      + copula_log_density(cth, hw, w_cur)
                      + copula_log_density(cphi, w, u_prev);
    return std::exp(logf);
}

double neg_log_likelihood(const MagmarSpec& spec, const PseudoSeries& series,
                          double init) {
    validate(spec);
    if (!(init > 0.0 && init < 1.0))
        throw std::domain_error("initial value must lie in (0,1)");
    const std::size_t p = spec.p(), q = spec.q();
    const std::size_t s = std::max(p, q);
    const std::size_t n = series.size();
    if (n <= s)
        throw std::invalid_argument("series length must exceed max(p,q)");

    std::vector<double> w(n, init);
    std::vector<double> hu, hw;
    double acc = 0.0;
    for (std::size_t i = s; i < n; ++i) {
        fill_history(series.values, i, p, hu);
        fill_history(w, i, q, hw);
        const auto ar = rosenblatt_chain(spec.ar, hu, series.values[i]);
        const auto mag = rosenblatt_chain(spec.mag, hw, ar.forward);
        const double ld = ar.log_density + mag.log_density;
        if (!std::isfinite(ld)) throw NonFiniteDensityError(i);
        acc += ld;
        w[i] = mag.forward;
    }
    return -acc;
}

} // namespace magmar
