#include "magmar/copula.hpp"

#include "magmar/numerics.hpp"
#include "magmar/special.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

[[noreturn]] void domain_fail(const std::string& msg) {
    throw std::domain_error(msg);
}

void check_param_count(const CopulaSpec& spec, std::size_t expected, const char* name) {
    if (spec.params.size() != expected) {
        std::ostringstream os;
        os << name << " copula expects " << expected << " parameter(s), got "
           << spec.params.size();
        domain_fail(os.str());
    }
}

// --- normal -------------------------------------------------------------

double normal_cdf2(double rho, double u1, double u2) {
    const double x1 = norm_quantile(u1);
    const double x2 = norm_quantile(u2);
    if (rho == 0.0) return u1 * u2;
    const double s = std::sqrt(1.0 - rho * rho);
    // C(u1,u2) = int_{-inf}^{x2} phi(t) Phi((x1 - rho t)/s) dt
    const double lo = std::min(-9.0, x2 - 9.0);
    return integrate(
        [&](double t) { return norm_pdf(t) * norm_cdf((x1 - rho * t) / s); },
        lo, x2, 1e-12);
}

double normal_log_density(double rho, double u1, double u2) {
    const double x = norm_quantile(u1);
    const double y = norm_quantile(u2);
    const double r2 = rho * rho;
    return -0.5 * std::log1p(-r2)
         - (r2 * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * (1.0 - r2));
}

double normal_h2(double rho, double u1, double u2) {
    const double s = std::sqrt(1.0 - rho * rho);
    const double z = (norm_quantile(u1) - rho * norm_quantile(u2)) / s;
    return clamp_unit(norm_cdf(z));
}

double normal_h2_inv(double rho, double w, double u2) {
    const double s = std::sqrt(1.0 - rho * rho);
    const double x = norm_quantile(w) * s + rho * norm_quantile(u2);
    return clamp_unit(norm_cdf(x));
}

// --- student t ----------------------------------------------------------

double t_h2(double rho, double nu, double u1, double u2) {
    const double x1 = t_quantile(u1, nu);
    const double x2 = t_quantile(u2, nu);
    const double den = std::sqrt((nu + x2 * x2) * (1.0 - rho * rho) / (nu + 1.0));
    return clamp_unit(t_cdf((x1 - rho * x2) / den, nu + 1.0));
}

double t_h2_inv(double rho, double nu, double w, double u2) {
    const double x2 = t_quantile(u2, nu);
    const double den = std::sqrt((nu + x2 * x2) * (1.0 - rho * rho) / (nu + 1.0));
    const double x1 = t_quantile(w, nu + 1.0) * den + rho * x2;
    return clamp_unit(t_cdf(x1, nu));
}

double t_cdf2(double rho, double nu, double u1, double u2) {
    // integrate the conditional CDF over the conditioning coordinate
    return integrate(
        [&](double v) { return t_h2(rho, nu, u1, clamp_unit(v)); },
        0.0, u2, 1e-11);
}

double t_log_density(double rho, double nu, double u1, double u2) {
    const double x = t_quantile(u1, nu);
    const double y = t_quantile(u2, nu);
    const double r2 = rho * rho;
    const double q = (x * x - 2.0 * rho * x * y + y * y) / (1.0 - r2);
    return std::lgamma(0.5 * (nu + 2.0)) + std::lgamma(0.5 * nu)
         - 2.0 * std::lgamma(0.5 * (nu + 1.0))
         - 0.5 * std::log1p(-r2)
         - 0.5 * (nu + 2.0) * std::log1p(q / nu)
         + 0.5 * (nu + 1.0) * (std::log1p(x * x / nu) + std::log1p(y * y / nu));
}

// --- gumbel -------------------------------------------------------------
// C(u1,u2) = exp(-S^(1/rho)), S = a^rho + b^rho, a = -log u1, b = -log u2.

double gumbel_cdf2(double rho, double u1, double u2) {
    const double a = -std::log(u1);
    const double b = -std::log(u2);
    const double s = std::pow(a, rho) + std::pow(b, rho);
    return std::exp(-std::pow(s, 1.0 / rho));
}

double gumbel_h2(double rho, double u1, double u2) {
    const double a = -std::log(u1);
    const double b = -std::log(u2);
    const double log_s = std::log(std::pow(a, rho) + std::pow(b, rho));
    const double log_h = -std::exp(log_s / rho) + (1.0 / rho - 1.0) * log_s
                       + (rho - 1.0) * std::log(b) + b;
    return clamp_unit(std::exp(log_h));
}

double gumbel_log_density(double rho, double u1, double u2) {
    const double a = -std::log(u1);
    const double b = -std::log(u2);
    const double log_s = std::log(std::pow(a, rho) + std::pow(b, rho));
    const double s_pow = std::exp(log_s / rho); // S^(1/rho)
    return -s_pow + (2.0 / rho - 2.0) * log_s
         + (rho - 1.0) * (std::log(a) + std::log(b))
         + std::log1p((rho - 1.0) / s_pow)
         + a + b;
}

double gumbel_h2_inv(double rho, double w, double u2) {
    const double lo = kUnitEps, hi = 1.0 - kUnitEps;
    const double w_lo = gumbel_h2(rho, lo, u2);
    const double w_hi = gumbel_h2(rho, hi, u2);
    if (w <= w_lo) return lo;
    if (w >= w_hi) return hi;
    auto res = find_root_bracketed(
        [&](double x) { return gumbel_h2(rho, x, u2) - w; }, lo, hi, 1e-10, 200);
    if (!res.converged) {
        std::ostringstream os;
        os << "gumbel h-inverse failed to converge, residual " << res.residual;
        throw std::runtime_error(os.str());
    }
    return clamp_unit(res.x);
}

} // namespace

char family_code(Family f) {
    switch (f) {
        case Family::normal: return 'n';
        case Family::t: return 't';
        case Family::gumbel: return 'g';
        case Family::independence: return 'i';
    }
    domain_fail("unknown copula family");
}

Family family_from_code(char c) {
    switch (c) {
        case 'n': return Family::normal;
        case 't': return Family::t;
        case 'g': return Family::gumbel;
        case 'i': return Family::independence;
    }
    std::ostringstream os;
    os << "unknown copula code '" << c << "' (expected one of n, t, g, i)";
    domain_fail(os.str());
}

int family_param_count(Family f) {
    switch (f) {
        case Family::normal: return 1;
        case Family::t: return 2;
        case Family::gumbel: return 1;
        case Family::independence: return 0;
    }
    domain_fail("unknown copula family");
}

void validate(const CopulaSpec& spec) {
    switch (spec.family) {
        case Family::normal: {
            check_param_count(spec, 1, "normal");
            const double rho = spec.params[0];
            if (!(rho > -1.0 && rho < 1.0)) {
                std::ostringstream os;
                os << "normal rho must satisfy -1 < rho < 1 (got " << rho << ")";
                domain_fail(os.str());
            }
            return;
        }
        case Family::t: {
            check_param_count(spec, 2, "t");
            const double rho = spec.params[0];
            const double nu = spec.params[1];
            if (!(rho > -1.0 && rho < 1.0)) {
                std::ostringstream os;
                os << "t rho must satisfy -1 < rho < 1 (got " << rho << ")";
                domain_fail(os.str());
            }
            if (!(nu >= 2.0 && nu <= 100.0)) {
                std::ostringstream os;
                os << "t nu must satisfy 2 <= nu <= 100 (got " << nu << ")";
                domain_fail(os.str());
            }
            return;
        }
        case Family::gumbel: {
            check_param_count(spec, 1, "gumbel");
            const double rho = spec.params[0];
            if (!(rho >= 1.0)) {
                std::ostringstream os;
                os << "gumbel rho must satisfy rho >= 1 (got " << rho << ")";
                domain_fail(os.str());
            }
            return;
        }
        case Family::independence:
            check_param_count(spec, 0, "independence");
            return;
    }
    domain_fail("unknown copula family");
}

double copula_cdf(const CopulaSpec& spec, double u1, double u2) {
    validate(spec);
    u1 = clamp_unit(u1);
    u2 = clamp_unit(u2);
    switch (spec.family) {
        case Family::normal: return normal_cdf2(spec.params[0], u1, u2);
        case Family::t: return t_cdf2(spec.params[0], spec.params[1], u1, u2);
        case Family::gumbel: return gumbel_cdf2(spec.params[0], u1, u2);
        case Family::independence: return u1 * u2;
    }
    domain_fail("unknown copula family");
}

double copula_log_density(const CopulaSpec& spec, double u1, double u2) {
    validate(spec);
    u1 = clamp_unit(u1);
    u2 = clamp_unit(u2);
    switch (spec.family) {
        case Family::normal: return normal_log_density(spec.params[0], u1, u2);
        case Family::t: return t_log_density(spec.params[0], spec.params[1], u1, u2);
        case Family::gumbel: return gumbel_log_density(spec.params[0], u1, u2);
        case Family::independence: return 0.0;
    }
    domain_fail("unknown copula family");
}

double copula_density(const CopulaSpec& spec, double u1, double u2) {
    return std::exp(copula_log_density(spec, u1, u2));
}

double h2(const CopulaSpec& spec, double u1, double u2) {
    validate(spec);
    u1 = clamp_unit(u1);
    u2 = clamp_unit(u2);
    switch (spec.family) {
        case Family::normal: return normal_h2(spec.params[0], u1, u2);
        case Family::t: return t_h2(spec.params[0], spec.params[1], u1, u2);
        case Family::gumbel: return gumbel_h2(spec.params[0], u1, u2);
        case Family::independence: return u1;
    }
    domain_fail("unknown copula family");
}

double h1(const CopulaSpec& spec, double u1, double u2) {
    // all supported families are exchangeable
    return h2(spec, u2, u1);
}

double h2_inv(const CopulaSpec& spec, double w, double u2) {
    validate(spec);
    w = clamp_unit(w);
    u2 = clamp_unit(u2);
    switch (spec.family) {
        case Family::normal: return normal_h2_inv(spec.params[0], w, u2);
        case Family::t: return t_h2_inv(spec.params[0], spec.params[1], w, u2);
        case Family::gumbel: return gumbel_h2_inv(spec.params[0], w, u2);
        case Family::independence: return w;
    }
    domain_fail("unknown copula family");
}

double h1_inv(const CopulaSpec& spec, double w, double u1) {
    return h2_inv(spec, w, u1);
}

std::string to_string(const CopulaSpec& spec) {
    std::ostringstream os;
    os << family_code(spec.family);
    if (!spec.params.empty()) {
        os << "(";
        for (std::size_t i = 0; i < spec.params.size(); ++i) {
            if (i) os << ",";
            os << spec.params[i];
        }
        os << ")";
    }
    return os.str();
}

} // namespace magmar
