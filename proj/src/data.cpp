#include "magmar/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace magmar {

namespace {

[[noreturn]] void data_fail(const std::string& msg) {
    throw std::runtime_error(msg);
}

std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return {};
    return s.substr(a, b - a + 1);
}

double parse_number(const std::string& cell, const std::string& path,
                    std::size_t line_no) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        std::ostringstream os;
        os << path << ": non-numeric value \"" << cell << "\" at line " << line_no;
        data_fail(os.str());
    }
}

} // namespace

RawSeries load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) data_fail("cannot open " + path);

    RawSeries out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip(line);
        if (line.empty()) continue;
        if (line_no == 1) continue; // header row
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            std::ostringstream os;
            os << path << ": missing comma at line " << line_no;
            data_fail(os.str());
        }
        std::string label = strip(line.substr(0, comma));
        std::string cell = strip(line.substr(comma + 1));
        if (label.empty() || cell.empty()) {
            std::ostringstream os;
            os << path << ": empty field at line " << line_no;
            data_fail(os.str());
        }
        if (!out.timestamps.empty() && !(out.timestamps.back() < label)) {
            std::ostringstream os;
            os << path << ": timestamps not strictly increasing at line "
               << line_no;
            data_fail(os.str());
        }
        out.timestamps.push_back(std::move(label));
        out.values.push_back(parse_number(cell, path, line_no));
    }
    if (out.values.empty()) data_fail(path + ": no data rows");
    return out;
}

void write_csv(const RawSeries& series, const std::string& path,
               const std::string& value_header) {
    std::ofstream outf(path);
    if (!outf) data_fail("cannot write " + path);
    outf << "date," << value_header << "\n";
    char buf[40];
    for (std::size_t i = 0; i < series.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", series.values[i]);
        outf << series.timestamps[i] << "," << buf << "\n";
    }
}

RawSeries growth_rates(const RawSeries& raw, GrowthConvention convention) {
    if (raw.size() < 2)
        data_fail("growth rates need at least two observations");
    RawSeries out;
    out.timestamps.assign(raw.timestamps.begin() + 1, raw.timestamps.end());
    out.values.reserve(raw.size() - 1);
    for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
        const double prev = raw.values[i], next = raw.values[i + 1];
        if (!(prev > 0.0) || !(next > 0.0)) {
            std::ostringstream os;
            os << "non-positive level at index " << (prev > 0.0 ? i + 1 : i)
               << "; growth rates require positive levels";
            data_fail(os.str());
        }
        out.values.push_back(convention == GrowthConvention::log_diff
                                 ? std::log(next / prev)
                                 : next / prev - 1.0);
    }
    return out;
}

EmpiricalMarginal::EmpiricalMarginal(std::vector<double> sample)
    : sorted_(std::move(sample)) {
    if (sorted_.empty())
        throw std::invalid_argument("empirical marginal needs a nonempty sample");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalMarginal::quantile(double u) const {
    const std::size_t n = sorted_.size();
    const double h = u * static_cast<double>(n + 1);
    if (h <= 1.0) return sorted_.front();
    if (h >= static_cast<double>(n)) return sorted_.back();
    const std::size_t k = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(k);
    return sorted_[k - 1] + frac * (sorted_[k] - sorted_[k - 1]);
}

std::pair<PseudoSeries, EmpiricalMarginal>
pseudo_observations(const RawSeries& x) {
    const std::size_t n = x.size();
    if (n < 2)
        throw std::invalid_argument("pseudo-observations need >= 2 values");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x.values[a] < x.values[b];
    });

    // average ranks over tie runs, rescaled by 1/(n+1)
    std::vector<double> u(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x.values[order[j + 1]] == x.values[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t m = i; m <= j; ++m)
            u[order[m]] = avg_rank / static_cast<double>(n + 1);
        i = j + 1;
    }
    return {make_pseudo_series(std::move(u), "pit"),
            EmpiricalMarginal(x.values)};
}

RawSeries back_transform(const PseudoSeries& u, const EmpiricalMarginal& marginal) {
    RawSeries out;
    out.values.reserve(u.size());
    const int width = static_cast<int>(std::to_string(u.size()).size());
    char buf[24];
    for (std::size_t i = 0; i < u.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%0*zu", width, i);
        out.timestamps.emplace_back(buf);
        out.values.push_back(marginal.quantile(u.values[i]));
    }
    return out;
}

double kendall_tau(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("length mismatch");
    if (n < 2) return 0.0;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    auto pairs_in_ties = [](const std::vector<double>& v) {
        double total = 0.0;
        std::size_t i = 0;
        while (i < v.size()) {
            std::size_t j = i;
            while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            total += 0.5 * t * (t - 1.0);
            i = j + 1;
        }
        return total;
    };

    // ties in x and joint (x,y) ties, on the (x,y)-sorted order
    double ties_x = 0.0, ties_xy = 0.0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
            const double t = static_cast<double>(j - i + 1);
            ties_x += 0.5 * t * (t - 1.0);
            std::size_t a = i;
            while (a <= j) {
                std::size_t b = a;
                while (b + 1 <= j && y[order[b + 1]] == y[order[a]]) ++b;
                const double tt = static_cast<double>(b - a + 1);
                ties_xy += 0.5 * tt * (tt - 1.0);
                a = b + 1;
            }
            i = j + 1;
        }
    }

    // exchange count: inversions of the y sequence (merge sort)
    std::vector<double> ys(n);
    for (std::size_t i2 = 0; i2 < n; ++i2) ys[i2] = y[order[i2]];
    std::vector<double> tmp(n);
    double swaps = 0.0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t a = lo, b = mid, out = lo;
            while (a < mid && b < hi) {
                if (ys[a] <= ys[b]) tmp[out++] = ys[a++];
                else {
                    swaps += static_cast<double>(mid - a);
                    tmp[out++] = ys[b++];
                }
            }
            while (a < mid) tmp[out++] = ys[a++];
            while (b < hi) tmp[out++] = ys[b++];
            std::copy(tmp.begin() + lo, tmp.begin() + hi, ys.begin() + lo);
        }
    }

    std::vector<double> y_sorted(y.begin(), y.end());
    std::sort(y_sorted.begin(), y_sorted.end());
    const double ties_y = pairs_in_ties(y_sorted);

    const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    const double numerator = n0 - ties_x - ties_y + ties_xy - 2.0 * swaps;
    const double denom = std::sqrt((n0 - ties_x) * (n0 - ties_y));
    return denom > 0.0 ? numerator / denom : 0.0;
}

std::vector<LagDiagnostics> diagnostics(const PseudoSeries& u, int max_lag) {
    const std::size_t n = u.size();
    if (max_lag < 0) throw std::invalid_argument("max_lag must be >= 0");
    if (n <= static_cast<std::size_t>(max_lag) + 2)
        throw std::invalid_argument("series too short for requested max_lag");

    const auto& v = u.values;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0)
                      / static_cast<double>(n);
    double var0 = 0.0;
    for (double x : v) var0 += (x - mean) * (x - mean);

    std::vector<LagDiagnostics> out;
    out.reserve(static_cast<std::size_t>(max_lag) + 1);
    for (int lag = 0; lag <= max_lag; ++lag) {
        LagDiagnostics d;
        d.lag = lag;
        double g = 0.0;
        for (std::size_t t = static_cast<std::size_t>(lag); t < n; ++t)
            g += (v[t] - mean) * (v[t - lag] - mean);
        d.acf = var0 > 0.0 ? g / var0 : (lag == 0 ? 1.0 : 0.0);
        if (lag == 0) {
            d.acf = 1.0;
            d.kendall_tau = 1.0;
        } else {
            const std::size_t m = n - static_cast<std::size_t>(lag);
            d.kendall_tau = kendall_tau(
                std::span<const double>(v).subspan(static_cast<std::size_t>(lag), m),
                std::span<const double>(v).first(m));
        }
        out.push_back(d);
    }
    return out;
}

} // namespace magmar
