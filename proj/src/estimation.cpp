#include "magmar/estimation.hpp"

#include "magmar/model_string.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

constexpr double kPenalty = 1e10;
constexpr double kRhoCap = 1.0 - 1e-12;

void append_unconstrained(const CopulaSpec& c, std::vector<double>& out) {
    switch (c.family) {
        case Family::normal:
            out.push_back(std::atanh(c.params[0]));
            break;
        case Family::t:
            out.push_back(std::atanh(c.params[0]));
            out.push_back(std::log((c.params[1] - 2.0) / (100.0 - c.params[1])));
            break;
        case Family::gumbel:
            out.push_back(std::log(c.params[0] - 1.0));
            break;
        case Family::independence:
            break;
    }
}

CopulaSpec constrain(const CopulaSpec& skeleton, std::span<const double> x,
                     std::size_t& offset) {
    switch (skeleton.family) {
        case Family::normal: {
            const double rho = std::clamp(std::tanh(x[offset++]), -kRhoCap, kRhoCap);
            return CopulaSpec::normal(rho);
        }
        case Family::t: {
            const double rho = std::clamp(std::tanh(x[offset++]), -kRhoCap, kRhoCap);
            const double nu = 2.0 + 98.0 / (1.0 + std::exp(-x[offset++]));
            return CopulaSpec::t(rho, nu);
        }
        case Family::gumbel: {
            const double rho = 1.0 + std::min(std::exp(x[offset++]), 1e8);
            return CopulaSpec::gumbel(rho);
        }
        case Family::independence:
            return CopulaSpec::independence();
    }
    throw std::domain_error("unknown copula family");
}

struct SimplexResult {
    std::vector<double> x;
    double f = 0.0;
    long evals = 0;
    bool converged = false;
};

// Nelder-Mead with standard reflection/expansion/contraction/shrink moves.
SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::span<const double> x0, double step,
                          double diameter_tol, long max_evals) {
    const std::size_t n = x0.size();
    SimplexResult res;
    std::vector<std::vector<double>> pts(n + 1, std::vector<double>(x0.begin(), x0.end()));
    std::vector<double> fv(n + 1);
    for (std::size_t i = 1; i <= n; ++i) pts[i][i - 1] += step;
    for (std::size_t i = 0; i <= n; ++i) { fv[i] = f(pts[i]); ++res.evals; }

    std::vector<double> centroid(n), xr(n), xe(n), xc(n);
    while (res.evals < max_evals) {
        // order vertices
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                diameter = std::max(diameter, std::abs(pts[i][j] - pts[best][j]));
        if (diameter < diameter_tol) {
            res.converged = true;
            break;
        }

        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i <= n; ++i)
                if (i != worst) s += pts[i][j];
            centroid[j] = s / static_cast<double>(n);
        }
        for (std::size_t j = 0; j < n; ++j)
            xr[j] = centroid[j] + (centroid[j] - pts[worst][j]);
        const double fr = f(xr); ++res.evals;

        if (fr < fv[best]) {
            for (std::size_t j = 0; j < n; ++j)
                xe[j] = centroid[j] + 2.0 * (centroid[j] - pts[worst][j]);
            const double fe = f(xe); ++res.evals;
            if (fe < fr) { pts[worst] = xe; fv[worst] = fe; }
            else         { pts[worst] = xr; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            pts[worst] = xr; fv[worst] = fr;
        } else {
            const bool outside = fr < fv[worst];
            const std::vector<double>& towards = outside ? xr : pts[worst];
            for (std::size_t j = 0; j < n; ++j)
                xc[j] = centroid[j] + 0.5 * (towards[j] - centroid[j]);
            const double fc = f(xc); ++res.evals;
            if (fc < std::min(fr, fv[worst])) {
                pts[worst] = xc; fv[worst] = fc;
            } else {
                // shrink toward the best vertex
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j)
                        pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
                    fv[i] = f(pts[i]); ++res.evals;
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[best]) best = i;
    res.x = pts[best];
    res.f = fv[best];
    return res;
}

} // namespace

std::vector<double> to_unconstrained(const MagmarSpec& spec) {
    validate(spec);
    std::vector<double> out;
    for (const auto& c : spec.ar.copulas) append_unconstrained(c, out);
    for (const auto& c : spec.mag.copulas) append_unconstrained(c, out);
    for (double v : out)
        if (!std::isfinite(v))
            throw std::domain_error(
                "parameter lies on its domain boundary and has no finite "
                "unconstrained image");
    return out;
}

MagmarSpec from_unconstrained(std::span<const double> x,
                              const MagmarSpec& skeleton) {
    for (double v : x)
        if (!std::isfinite(v))
            throw std::domain_error("non-finite unconstrained parameter");
    if (static_cast<int>(x.size()) != count_params(skeleton))
        throw std::invalid_argument("unconstrained vector length does not "
                                    "match the skeleton's parameter count");
    MagmarSpec out;
    std::size_t offset = 0;
    for (const auto& c : skeleton.ar.copulas)
        out.ar.copulas.push_back(constrain(c, x, offset));
    for (const auto& c : skeleton.mag.copulas)
        out.mag.copulas.push_back(constrain(c, x, offset));
    return out;
}

int count_params(const MagmarSpec& spec) {
    int k = 0;
    for (const auto& c : spec.ar.copulas) k += family_param_count(c.family);
    for (const auto& c : spec.mag.copulas) k += family_param_count(c.family);
    return k;
}

int count_params(const std::string& model_string) {
    return count_params(parse_model_string(model_string));
}

std::pair<double, double> information_criteria(double nll, int n_params,
                                               std::size_t n_obs) {
    if (n_obs < 1) throw std::invalid_argument("n_obs must be >= 1");
    const double aic = 2.0 * n_params + 2.0 * nll;
    const double bic = n_params * std::log(static_cast<double>(n_obs)) + 2.0 * nll;
    return {aic, bic};
}

FitResult fit(const MagmarSpec& skeleton, const PseudoSeries& series,
              const FitOptions& options) {
    validate(skeleton);
    const std::size_t s = std::max(skeleton.p(), skeleton.q());
    if (series.size() <= s + 10)
        throw std::invalid_argument("series too short to fit: need more than "
                                    + std::to_string(s + 10) + " observations");

    FitResult res;
    res.model = format_model_string(skeleton);
    res.n_params = count_params(skeleton);
    res.n_obs = series.size();

    if (res.n_params == 0) {
        res.spec = skeleton;
        res.nll = neg_log_likelihood(skeleton, series, options.init);
        res.converged = true;
        res.iterations = 1;
        std::tie(res.aic, res.bic) =
            information_criteria(res.nll, res.n_params, res.n_obs);
        return res;
    }

    auto objective = [&](std::span<const double> x) -> double {
        try {
            const MagmarSpec candidate = from_unconstrained(x, skeleton);
            const double nll = neg_log_likelihood(candidate, series, options.init);
            return std::isfinite(nll) ? nll : kPenalty;
        } catch (const NonFiniteDensityError&) {
            return kPenalty;
        } catch (const std::domain_error&) {
            return kPenalty;
        }
    };

    const std::size_t k = static_cast<std::size_t>(res.n_params);
    std::vector<double> best_x;
    double best_f = std::numeric_limits<double>::infinity();
    bool any_converged = false;
    long total_evals = 0;

    for (int r = 0; r < options.restarts; ++r) {
        std::vector<double> x0(k, 0.0);
        if (r == 0) {
            // start from the skeleton's own parameters when they are interior
            try {
                x0 = to_unconstrained(skeleton);
            } catch (const std::domain_error&) {
                x0.assign(k, 0.0);
            }
        } else {
            std::mt19937_64 rng(options.seed * 1000003ULL
                                + static_cast<std::uint64_t>(r));
            std::uniform_real_distribution<double> dist(-options.start_spread,
                                                        options.start_spread);
            for (auto& v : x0) v = dist(rng);
        }
        auto sr = nelder_mead(objective, x0, 0.5, options.simplex_tol,
                              options.max_evals_per_restart);
        total_evals += sr.evals;
        any_converged = any_converged || sr.converged;
        if (sr.f < best_f) {
            best_f = sr.f;
            best_x = sr.x;
        }
    }

    res.spec = from_unconstrained(best_x, skeleton);
    res.nll = best_f;
    res.converged = any_converged && best_f < kPenalty;
    res.iterations = total_evals;
    std::tie(res.aic, res.bic) =
        information_criteria(res.nll, res.n_params, res.n_obs);
    return res;
}

std::vector<FitResult> select(const std::vector<std::string>& candidates,
                              const PseudoSeries& series, Criterion criterion,
                              const FitOptions& options, int jobs) {
    if (candidates.empty())
        throw std::invalid_argument("need at least one candidate model");
    jobs = std::max(1, jobs);

    std::vector<FitResult> results(candidates.size());
    auto run_one = [&](std::size_t i) {
        try {
            const MagmarSpec skeleton = parse_model_string(candidates[i]);
            results[i] = fit(skeleton, series, options);
        } catch (const std::exception& e) {
            results[i] = FitResult{};
            results[i].model = candidates[i];
            results[i].error = e.what();
            results[i].nll = std::numeric_limits<double>::quiet_NaN();
            results[i].aic = std::numeric_limits<double>::quiet_NaN();
            results[i].bic = std::numeric_limits<double>::quiet_NaN();
        }
    };

    if (jobs == 1) {
        for (std::size_t i = 0; i < candidates.size(); ++i) run_one(i);
    } else {
        std::size_t next = 0;
        while (next < candidates.size()) {
            std::vector<std::future<void>> batch;
            for (int j = 0; j < jobs && next < candidates.size(); ++j, ++next)
                batch.push_back(std::async(std::launch::async, run_one, next));
            for (auto& f : batch) f.get();
        }
    }

    auto key = [criterion](const FitResult& r) {
        return criterion == Criterion::aic ? r.aic : r.bic;
    };
    std::stable_sort(results.begin(), results.end(),
                     [&](const FitResult& a, const FitResult& b) {
                         const bool a_ok = a.error.empty();
                         const bool b_ok = b.error.empty();
                         if (a_ok != b_ok) return a_ok;
                         if (!a_ok) return false;
                         if (key(a) != key(b)) return key(a) < key(b);
                         if (a.n_params != b.n_params) return a.n_params < b.n_params;
                         return a.model < b.model;
                     });
    return results;
}

} // namespace magmar
