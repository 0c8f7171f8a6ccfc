// Small numeric helpers: open-interval clamping, bracketed root finding,
// adaptive quadrature on a finite interval.
#pragma once

#include <functional>

namespace magmar {

// All copula evaluations clamp their (0,1) arguments away from the
// boundaries by this margin.
inline constexpr double kUnitEps = 1e-10;

// Maps any value in [0,1] (or slightly outside through rounding) into
// [kUnitEps, 1 - kUnitEps]. NaN is rejected.
double clamp_unit(double u);

// A validated open-unit-interval value. Construction rejects boundaries;
// use clamp_unit for values that may sit on them through rounding.
class UnitValue {
public:
    explicit UnitValue(double v);
    double value() const { return v_; }

private:
    double v_;
};

struct RootResult {
    double x = 0.0;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Finds x in [lo, hi] with f(x) = 0 for continuous f with f(lo), f(hi) of
// opposite sign. Brent's method, absolute tolerance on x.
RootResult find_root_bracketed(const std::function<double(double)>& f,
                               double lo, double hi,
                               double x_tol = 1e-10, int max_iter = 200);

// Adaptive Gauss-Kronrod integration of f over [a, b] to the given
// absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

} // namespace magmar
