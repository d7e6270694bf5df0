#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include "blochflow/errors.hpp"
#include "blochflow/experiment.hpp"

namespace {

void add_common_options(CLI::App& sub, blochflow::ExperimentConfig& cfg,
                        std::string& config_path) {
    sub.add_option("--config", config_path,
                   "file of key=value defaults; explicit flags override");
    sub.add_option("--model", cfg.model,
                   "gue-exact|gue-infinite|poisson|poisson-infinite|monte-carlo")
        ->capture_default_str();
    sub.add_option("--dim", cfg.dim, "Hilbert space dimension N, or 'inf'")
        ->capture_default_str();
    sub.add_option("--t-start", cfg.t_start, "first time point")
        ->capture_default_str();
    sub.add_option("--t-end", cfg.t_end, "last time point")
        ->capture_default_str();
    sub.add_option("--t-step", cfg.t_step, "time grid spacing")
        ->capture_default_str();
    sub.add_option("--seed", cfg.seed, "base RNG seed")->capture_default_str();
    sub.add_option("--samples", cfg.samples, "Monte Carlo sample count")
        ->capture_default_str();
    sub.add_option("--env", cfg.env,
                   "environment state: projector|mixed|rank:<r>")
        ->capture_default_str();
    sub.add_option("--out", cfg.out, "output file (default: stdout)");
    sub.add_option("--format", cfg.format, "csv|json")->capture_default_str();
    sub.add_option("--workers", cfg.workers,
                   "worker threads (0 = hardware count)")
        ->capture_default_str();
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw blochflow::ConfigError("config key '" + key +
                                     "': not a number: '" + text + "'");
    }
}

long long to_integer(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw blochflow::ConfigError("config key '" + key +
                                     "': not an integer: '" + text + "'");
    }
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

// Flat key=value defaults for one subcommand.  Applied after the command
// line is parsed: a key only takes effect when the matching flag was not
// given explicitly, so flags always win.  '#' and ';' start comments.
void apply_config_file(const CLI::App& sub, const std::string& path,
                       blochflow::ExperimentConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw blochflow::ConfigError("cannot read config file '" + path + "'");

    const std::map<std::string, std::function<void(const std::string&)>>
        setters = {
            {"model", [&](const std::string& v) { cfg.model = v; }},
            {"dim", [&](const std::string& v) { cfg.dim = v; }},
            {"t-start",
             [&](const std::string& v) { cfg.t_start = to_double("t-start", v); }},
            {"t-end",
             [&](const std::string& v) { cfg.t_end = to_double("t-end", v); }},
            {"t-step",
             [&](const std::string& v) { cfg.t_step = to_double("t-step", v); }},
            {"seed",
             [&](const std::string& v) {
                 cfg.seed = static_cast<std::uint64_t>(to_integer("seed", v));
             }},
            {"samples",
             [&](const std::string& v) {
                 cfg.samples = static_cast<int>(to_integer("samples", v));
             }},
            {"env", [&](const std::string& v) { cfg.env = v; }},
            {"out", [&](const std::string& v) { cfg.out = v; }},
            {"format", [&](const std::string& v) { cfg.format = v; }},
            {"workers",
             [&](const std::string& v) {
                 cfg.workers = static_cast<int>(to_integer("workers", v));
             }},
            {"table",
             [&](const std::string& v) {
                 cfg.table = (v == "true" || v == "1" || v == "yes");
             }},
            {"curve", [&](const std::string& v) { cfg.curve_file = v; }},
            {"spectral-samples",
             [&](const std::string& v) {
                 cfg.spectral_samples =
                     static_cast<int>(to_integer("spectral-samples", v));
             }},
        };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string text = trimmed(line.substr(0, line.find_first_of("#;")));
        if (text.empty() || text.front() == '[')
            continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw blochflow::ConfigError("config line " + std::to_string(lineno) +
                                         ": expected key=value");
        const std::string key = trimmed(text.substr(0, eq));
        const std::string value = trimmed(text.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw blochflow::ConfigError("unknown config key '" + key + "'");
        // A flag given on the command line wins over the file.
        const CLI::Option* opt = sub.get_option_no_throw("--" + key);
        if (opt != nullptr && opt->count() > 0)
            continue;
        it->second(value);
    }
}

int emit(const blochflow::OutputTable& table,
         const blochflow::ExperimentConfig& cfg) {
    if (cfg.out.empty()) {
        blochflow::write_table(table, cfg.format, std::cout);
        return 0;
    }
    std::ofstream out(cfg.out);
    if (!out)
        throw blochflow::ConfigError("cannot open output file '" + cfg.out +
                                     "'");
    blochflow::write_table(table, cfg.format, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"depolarizing-channel toolkit for random-matrix environments"};
    app.require_subcommand(1);

    blochflow::ExperimentConfig alpha_cfg;
    alpha_cfg.command = "alpha";
    std::string alpha_config;
    CLI::App* alpha =
        app.add_subcommand("alpha", "depolarizing radius alpha(t) on a grid");
    add_common_options(*alpha, alpha_cfg, alpha_config);

    blochflow::ExperimentConfig measures_cfg;
    measures_cfg.command = "measures";
    measures_cfg.t_end = 500.0;
    measures_cfg.t_step = 0.005;
    std::string measures_config;
    CLI::App* measures = app.add_subcommand(
        "measures", "non-Markovianity measures M1/M2/M3 of alpha(t)");
    add_common_options(*measures, measures_cfg, measures_config);
    measures->add_flag("--table", measures_cfg.table,
                       "summary table for the standard model set");
    measures->add_option("--curve", measures_cfg.curve_file,
                         "evaluate a curve read from a CSV file (t,value)");

    blochflow::ExperimentConfig fluct_cfg;
    fluct_cfg.command = "fluctuations";
    std::string fluct_config;
    CLI::App* fluct = app.add_subcommand(
        "fluctuations", "variance of channel matrix entries over the unitary "
                        "ensemble at fixed spectrum");
    add_common_options(*fluct, fluct_cfg, fluct_config);
    fluct->add_option("--spectral-samples", fluct_cfg.spectral_samples,
                      "spectra for the spectrum-ensemble variance column")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (alpha->parsed()) {
            if (!alpha_config.empty())
                apply_config_file(*alpha, alpha_config, alpha_cfg);
            return emit(blochflow::run_alpha(alpha_cfg), alpha_cfg);
        }
        if (measures->parsed()) {
            if (!measures_config.empty())
                apply_config_file(*measures, measures_config, measures_cfg);
            return emit(blochflow::run_measures(measures_cfg), measures_cfg);
        }
        if (fluct->parsed()) {
            if (!fluct_config.empty())
                apply_config_file(*fluct, fluct_config, fluct_cfg);
            return emit(blochflow::run_fluctuations(fluct_cfg), fluct_cfg);
        }
    } catch (const blochflow::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
