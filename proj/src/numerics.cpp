#include "magmar/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

namespace magmar {

double clamp_unit(double u) {
    if (std::isnan(u)) throw std::domain_error("unit-interval value is NaN");
    if (u < kUnitEps) return kUnitEps;
    if (u > 1.0 - kUnitEps) return 1.0 - kUnitEps;
    return u;
}

UnitValue::UnitValue(double v) : v_(v) {
    if (!(v > 0.0 && v < 1.0))
        throw std::domain_error("value must lie strictly inside (0,1)");
}

RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi,
                               double x_tol, int max_iter) {
    RootResult res;
    double a = lo, b = hi;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) { res.x = a; res.converged = true; return res; }
    if (fb == 0.0) { res.x = b; res.converged = true; return res; }
    if (fa * fb > 0.0)
        throw std::domain_error("root not bracketed");

    // Brent: inverse quadratic / secant with bisection fallback
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            res.x = b; res.residual = fb; res.iterations = it;
            res.converged = true;
            return res;
        }
        if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
            d = m; e = m;
        } else {
            double p, q, r;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                q = fa / fc; r = fb / fc;
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q; else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d; d = p / q;
            } else {
                d = m; e = m;
            }
        }
        a = b; fa = fb;
        b += (std::abs(d) > tol) ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) { c = a; fc = fa; d = b - a; e = d; }
        res.iterations = it;
    }
    res.x = b;
    res.residual = fb;
    res.converged = false;
    return res;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol) {
    using boost::math::quadrature::gauss_kronrod;
    double error = 0.0;
    double value = gauss_kronrod<double, 15>::integrate(f, a, b, 15, abs_tol, &error);
    return value;
}

} // namespace magmar
