#include "magmar/cli.hpp"

#include "magmar/data.hpp"
#include "magmar/estimation.hpp"
#include "magmar/model.hpp"
#include "magmar/model_string.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace magmar::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sig6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::vector<double> parse_param_list(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(cell, &used));
            if (used != cell.size()) throw std::invalid_argument(cell);
        } catch (const std::exception&) {
            throw UsageError("invalid parameter value \"" + cell + "\"");
        }
    }
    return out;
}

// Fills the skeleton's parameter slots with constrained-scale values.
MagmarSpec apply_params(const MagmarSpec& skeleton,
                        const std::vector<double>& values) {
    const int expected = count_params(skeleton);
    if (static_cast<int>(values.size()) != expected) {
        std::ostringstream os;
        os << "model needs " << expected << " parameter(s), got "
           << values.size();
        throw UsageError(os.str());
    }
    MagmarSpec out = skeleton;
    std::size_t i = 0;
    auto fill = [&](std::vector<CopulaSpec>& slots) {
        for (auto& c : slots)
            for (auto& p : c.params) p = values[i++];
    };
    fill(out.ar.copulas);
    fill(out.mag.copulas);
    try {
        validate(out);
    } catch (const std::domain_error& e) {
        throw UsageError(e.what());
    }
    return out;
}

MagmarSpec parse_model_or_usage(const std::string& text) {
    try {
        return parse_model_string(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

PseudoSeries load_pseudo(const std::string& path) {
    try {
        RawSeries raw = load_csv(path);
        return make_pseudo_series(std::move(raw.values), path);
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw DataError("cannot write " + path);
    return file;
}

void write_fit_record(std::ostream& os, const FitResult& r) {
    os << "model " << r.model << "\n";
    os << "n_params " << r.n_params << "\n";
    os << "n_obs " << r.n_obs << "\n";
    os << "nll " << sig6(r.nll) << "\n";
    os << "aic " << sig6(r.aic) << "\n";
    os << "bic " << sig6(r.bic) << "\n";
    os << "params";
    for (const auto& c : r.spec.ar.copulas)
        for (double p : c.params) os << " " << sig6(p);
    for (const auto& c : r.spec.mag.copulas)
        for (double p : c.params) os << " " << sig6(p);
    os << "\n";
    os << "converged " << (r.converged ? 1 : 0) << "\n";
    os << "iterations " << r.iterations << "\n";
}

struct Args {
    std::string input, output, model, params, growth = "log", criterion = "aic";
    std::vector<std::string> models;
    std::uint64_t seed = 1;
    std::size_t length = 100;
    std::size_t burn_in = 500;
    double init = 0.5;
    int max_lag = 12;
    int jobs = 1;
};

int cmd_transform(const Args& a) {
    RawSeries pseudo_out;
    try {
        const RawSeries raw = load_csv(a.input);
        const auto conv = a.growth == "pct" ? GrowthConvention::pct_change
                                            : GrowthConvention::log_diff;
        const RawSeries infl = growth_rates(raw, conv);
        auto [pseudo, marginal] = pseudo_observations(infl);
        pseudo_out.timestamps = infl.timestamps;
        pseudo_out.values = pseudo.values;
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    write_csv(pseudo_out, a.output, "u");
    return 0;
}

int cmd_simulate(const Args& a) {
    const MagmarSpec skeleton = parse_model_or_usage(a.model);
    const MagmarSpec spec = apply_params(skeleton, parse_param_list(a.params));
    SimulationResult sim;
    try {
        sim = simulate(spec, a.length, a.seed, a.burn_in, a.init);
    } catch (const std::exception& e) {
        throw NumericalError(e.what());
    }
    RawSeries out;
    out.values = sim.path;
    const int width = static_cast<int>(std::to_string(sim.path.size()).size());
    char buf[24];
    for (std::size_t i = 0; i < sim.path.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%0*zu", width, i);
        out.timestamps.emplace_back(buf);
    }
    write_csv(out, a.output, "u");
    return 0;
}

int cmd_fit(const Args& a) {
    const MagmarSpec skeleton = parse_model_or_usage(a.model);
    const PseudoSeries series = load_pseudo(a.input);
    FitOptions opts;
    opts.seed = a.seed;
    opts.init = a.init;
    FitResult result;
    try {
        result = fit(skeleton, series, opts);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    } catch (const std::exception& e) {
        throw NumericalError(e.what());
    }
    std::ofstream file;
    write_fit_record(open_output(file, a.output), result);
    return 0;
}

int cmd_select(const Args& a) {
    if (a.models.empty()) throw UsageError("select needs at least one --model");
    for (const auto& m : a.models) parse_model_or_usage(m);
    const PseudoSeries series = load_pseudo(a.input);
    FitOptions opts;
    opts.seed = a.seed;
    opts.init = a.init;
    const Criterion crit =
        a.criterion == "bic" ? Criterion::bic : Criterion::aic;
    std::vector<FitResult> ranked;
    try {
        ranked = select(a.models, series, crit, opts, a.jobs);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    } catch (const std::exception& e) {
        throw NumericalError(e.what());
    }
    std::ofstream file;
    std::ostream& os = open_output(file, a.output);
    os << "model,n_params,nll,aic,bic\n";
    for (const auto& r : ranked) {
        if (!r.error.empty()) {
            std::cerr << "fit failed for " << r.model << ": " << r.error << "\n";
            continue;
        }
        os << r.model << "," << r.n_params << "," << sig6(r.nll) << ","
           << sig6(r.aic) << "," << sig6(r.bic) << "\n";
    }
    return 0;
}

int cmd_diagnose(const Args& a) {
    std::vector<LagDiagnostics> table;
    try {
        const PseudoSeries series = load_pseudo(a.input);
        table = diagnostics(series, a.max_lag);
    } catch (const DataError&) {
        throw;
    } catch (const std::exception& e) {
        throw DataError(e.what());
    }
    std::ofstream file;
    std::ostream& os = open_output(file, a.output);
    os << "lag,acf,kendall_tau\n";
    char buf[80];
    for (const auto& d : table) {
        std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g", d.lag, d.acf,
                      d.kendall_tau);
        os << buf << "\n";
    }
    return 0;
}

} // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"MAGMAR copula-based time-series modeling"};
    app.require_subcommand(1);
    Args a;

    auto* transform = app.add_subcommand(
        "transform", "levels CSV -> growth rates -> pseudo-observation CSV");
    transform->add_option("--input", a.input)->required();
    transform->add_option("--output", a.output)->required();
    transform->add_option("--growth", a.growth)
        ->check(CLI::IsMember({"log", "pct"}));

    auto* simulate_cmd =
        app.add_subcommand("simulate", "simulate a MAGMAR path");
    simulate_cmd->add_option("--model", a.model)->required();
    simulate_cmd->add_option("--params", a.params);
    simulate_cmd->add_option("--length,-T", a.length);
    simulate_cmd->add_option("--seed", a.seed);
    simulate_cmd->add_option("--burn-in", a.burn_in);
    simulate_cmd->add_option("--init", a.init);
    simulate_cmd->add_option("--output", a.output)->required();

    auto* fit_cmd = app.add_subcommand(
        "fit", "maximum-likelihood fit of one model on a pseudo CSV");
    fit_cmd->add_option("--input", a.input)->required();
    fit_cmd->add_option("--model", a.model)->required();
    fit_cmd->add_option("--seed", a.seed);
    fit_cmd->add_option("--init", a.init);
    fit_cmd->add_option("--output", a.output);

    auto* select_cmd = app.add_subcommand(
        "select", "fit candidate models and rank them by AIC or BIC");
    select_cmd->add_option("--input", a.input)->required();
    select_cmd->add_option("--model", a.models)->required();
    select_cmd->add_option("--criterion", a.criterion)
        ->check(CLI::IsMember({"aic", "bic"}));
    select_cmd->add_option("--jobs", a.jobs)->check(CLI::PositiveNumber);
    select_cmd->add_option("--seed", a.seed);
    select_cmd->add_option("--init", a.init);
    select_cmd->add_option("--output", a.output);

    auto* diagnose = app.add_subcommand(
        "diagnose", "per-lag autocorrelation and Kendall's tau");
    diagnose->add_option("--input", a.input)->required();
    diagnose->add_option("--max-lag", a.max_lag);
    diagnose->add_option("--output", a.output);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (transform->parsed()) return cmd_transform(a);
        if (simulate_cmd->parsed()) return cmd_simulate(a);
        if (fit_cmd->parsed()) return cmd_fit(a);
        if (select_cmd->parsed()) return cmd_select(a);
        if (diagnose->parsed()) return cmd_diagnose(a);
        std::cerr << "no subcommand given\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace magmar::cli
