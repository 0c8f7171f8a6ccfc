#include "magmar/special.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>

namespace magmar {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);

void require_prob(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("probability argument must lie in (0,1)");
}
} // namespace

double norm_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double norm_pdf(double x) { return boost::math::pdf(kStdNormal, x); }

double norm_quantile(double p) {
    require_prob(p);
    return boost::math::quantile(kStdNormal, p);
}

double t_cdf(double x, double nu) {
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::cdf(dist, x);
}

double t_pdf(double x, double nu) {
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::pdf(dist, x);
}

double t_log_pdf(double x, double nu) {
    // log of the t density, kept in log space for tail stability
    const double half = 0.5;
    return std::lgamma(half * (nu + 1.0)) - std::lgamma(half * nu)
         - half * std::log(nu * 3.14159265358979323846)
         - half * (nu + 1.0) * std::log1p(x * x / nu);
}

double t_quantile(double p, double nu) {
    require_prob(p);
    boost::math::students_t_distribution<double> dist(nu);
    return boost::math::quantile(dist, p);
}

} // namespace magmar
