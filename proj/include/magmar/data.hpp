// Data pipeline: CSV ingestion, growth rates, the rank-based map to
// pseudo-observations and its inverse, and lag diagnostics.
#pragma once

#include "magmar/model.hpp"

#include <string>
#include <utility>
#include <vector>

namespace magmar {

struct RawSeries {
    std::vector<std::string> timestamps; // sortable period labels
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

// Reads a two-column CSV (header row, columns date,value). Malformed rows
// are reported with their line number.
RawSeries load_csv(const std::string& path);
void write_csv(const RawSeries& series, const std::string& path,
               const std::string& value_header = "value");

enum class GrowthConvention { log_diff, pct_change };

// Growth rates of a positive level series; length shrinks by one.
RawSeries growth_rates(const RawSeries& raw,
                       GrowthConvention convention = GrowthConvention::log_diff);

// The rescaled empirical CDF and its interpolated inverse.
class EmpiricalMarginal {
public:
    explicit EmpiricalMarginal(std::vector<double> sample);

    // Inverse of the rescaled ECDF, linear between order statistics.
    double quantile(double u) const;
    std::size_t size() const { return sorted_.size(); }

private:
    std::vector<double> sorted_;
};

// u_i = rank(x_i)/(n+1) with average ranks on ties; all outputs in (0,1).
std::pair<PseudoSeries, EmpiricalMarginal>
pseudo_observations(const RawSeries& x);

// Quantile-transforms a pseudo-series back to the data scale.
RawSeries back_transform(const PseudoSeries& u, const EmpiricalMarginal& marginal);

struct LagDiagnostics {
    int lag = 0;
    double acf = 0.0;
    double kendall_tau = 0.0;
};

// Sample autocorrelation and Kendall's tau of (u_t, u_{t-lag}) for
// lag = 0..max_lag.
std::vector<LagDiagnostics> diagnostics(const PseudoSeries& u, int max_lag);

// Kendall's tau-b of paired samples (concordance count with tie
// correction), O(n log n).
double kendall_tau(std::span<const double> x, std::span<const double> y);

} // namespace magmar
