// Bivariate copula families (normal, t, gumbel, independence): CDF,
// density, h-functions and their inverses.
//
// Slot convention used throughout the library: in a pair copula coupling
// two time-series values, slot 1 holds the newer variable and slot 2 the
// older one. h1 differentiates the CDF with respect to slot 1 (giving the
// conditional distribution of the slot-2 variable), h2 with respect to
// slot 2. The inverses act on the non-conditioning argument:
//   h2(h2_inv(w, u2), u2) = w  and  h1(u1, h1_inv(w, u1)) = w.
#pragma once

#include <string>
#include <vector>

namespace magmar {

enum class Family { normal, t, gumbel, independence };

char family_code(Family f);            // 'n', 't', 'g', 'i'
Family family_from_code(char c);       // throws on unknown code
int family_param_count(Family f);      // n=1, t=2, g=1, i=0

struct CopulaSpec {
    Family family = Family::independence;
    std::vector<double> params;        // normal: {rho}; t: {rho, nu}; gumbel: {rho}

    static CopulaSpec normal(double rho) { return {Family::normal, {rho}}; }
    static CopulaSpec t(double rho, double nu) { return {Family::t, {rho, nu}}; }
    static CopulaSpec gumbel(double rho) { return {Family::gumbel, {rho}}; }
    static CopulaSpec independence() { return {Family::independence, {}}; }
};

// Admissible parameter domains:
//   normal: -1 < rho < 1;  t: -1 < rho < 1, 2 <= nu <= 100;  gumbel: rho >= 1.
// Throws std::domain_error naming the violated bound.
void validate(const CopulaSpec& spec);

double copula_cdf(const CopulaSpec& spec, double u1, double u2);
double copula_density(const CopulaSpec& spec, double u1, double u2);
double copula_log_density(const CopulaSpec& spec, double u1, double u2);

double h1(const CopulaSpec& spec, double u1, double u2);
double h2(const CopulaSpec& spec, double u1, double u2);

// h1_inv(w, u1): the u2 with h1(u1, u2) = w.
// h2_inv(w, u2): the u1 with h2(u1, u2) = w.
// Analytic for normal and t; bracketed root-finding for gumbel (throws
// std::runtime_error with the residual if it fails to converge).
double h1_inv(const CopulaSpec& spec, double w, double u1);
double h2_inv(const CopulaSpec& spec, double w, double u2);

std::string to_string(const CopulaSpec& spec);

} // namespace magmar
