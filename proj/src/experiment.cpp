#include "blochflow/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "blochflow/errors.hpp"
#include "blochflow/fluctuations.hpp"
#include "blochflow/measures.hpp"
#include "blochflow/parallel.hpp"
#include "blochflow/rng.hpp"
#include "blochflow/spectral_analytics.hpp"

#ifndef BLOCHFLOW_BUILD_ID
#define BLOCHFLOW_BUILD_ID "unknown"
#endif

namespace blochflow {

namespace {

using nlohmann::json;

int parse_positive_int(const std::string& text, const char* what) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size() || v < 1)
            throw ConfigError(std::string(what) + " must be a positive integer");
        return v;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError(std::string(what) + " must be a positive integer");
    }
}

void validate_grid(const ExperimentConfig& config) {
    if (!(config.t_start < config.t_end))
        throw ConfigError("need t_start < t_end");
    if (!(config.t_step > 0.0))
        throw ConfigError("need t_step > 0");
}

TimeGrid grid_of(const ExperimentConfig& config) {
    return TimeGrid{config.t_start, config.t_end, config.t_step};
}

json meta_of(const ExperimentConfig& config,
             const std::vector<std::string>& columns) {
    json meta;
    meta["command"] = config.command;
    meta["model"] = config.model;
    meta["dim"] = config.dim;
    meta["t_start"] = config.t_start;
    meta["t_end"] = config.t_end;
    meta["t_step"] = config.t_step;
    meta["seed"] = config.seed;
    meta["samples"] = config.samples;
    meta["env"] = config.env;
    if (!config.curve_file.empty())
        meta["curve_file"] = config.curve_file;
    if (config.spectral_samples > 0)
        meta["spectral_samples"] = config.spectral_samples;
    if (config.table)
        meta["table"] = true;
    meta["workers"] =
        config.workers > 0 ? config.workers : hardware_workers();
    meta["build"] = build_id();
    meta["columns"] = columns;
    return meta;
}

Spectrum own_spectrum(ModelTag tag, int dim, std::uint64_t seed) {
    if (tag == ModelTag::PoissonN)
        return sample_poisson_spectrum(dim, seed, kSpectrumStream);
    return eigen_decompose(sample_gue(dim, seed, kSpectrumStream)).spectrum;
}

AlphaCurve model_curve(const ResolvedModel& rm, const ExperimentConfig& config) {
    const TimeGrid grid = grid_of(config);
    switch (rm.tag) {
        case ModelTag::GueExactN:
            return gue_exact_curve(rm.dim, grid);
        case ModelTag::PoissonN:
            return poisson_curve(rm.dim, grid);
        case ModelTag::GueInfinite:
            return gue_infinite_curve(grid);
        case ModelTag::PoissonInfinite:
            return poisson_infinite_curve(grid);
        default:
            // Sampled models reduce to the exact per-spectrum average of one
            // drawn instance for curve purposes.
            return curve_from_spectrum(own_spectrum(rm.tag, rm.dim, config.seed),
                                       grid);
    }
}

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<std::string> measure_columns() {
    return {"model", "N", "M1", "M2", "M3", "horizon", "tail_bound"};
}

std::vector<json> measure_row(const std::string& model, const std::string& dim,
                              const MeasureReport& report) {
    std::vector<json> row;
    row.emplace_back(model);
    row.emplace_back(dim);
    if (report.m1_divergent)
        row.emplace_back("inf");
    else
        row.emplace_back(report.m1);
    row.emplace_back(report.m2);
    row.emplace_back(report.m3);
    row.emplace_back(report.horizon);
    row.emplace_back(std::max(report.tail_m1, report.tail_m2));
    return row;
}

}  // namespace

std::string build_id() {
    return BLOCHFLOW_BUILD_ID;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

ResolvedModel resolve_model(const std::string& model, const std::string& dim) {
    const bool infinite = (dim == "inf");
    if (model == "gue-infinite")
        return {ModelTag::GueInfinite, 0};
    if (model == "poisson-infinite")
        return {ModelTag::PoissonInfinite, 0};
    if (model == "gue-exact") {
        if (infinite)
            return {ModelTag::GueInfinite, 0};
        const int n = parse_positive_int(dim, "dim");
        if (n < 2)
            throw ConfigError("gue-exact needs dim >= 2");
        return {ModelTag::GueExactN, n};
    }
    if (model == "poisson") {
        if (infinite)
            return {ModelTag::PoissonInfinite, 0};
        return {ModelTag::PoissonN, parse_positive_int(dim, "dim")};
    }
    if (model == "monte-carlo") {
        if (infinite)
            throw ConfigError("monte-carlo needs a finite dimension");
        const int n = parse_positive_int(dim, "dim");
        if (n < 2 || n % 2 != 0)
            throw ConfigError(
                "monte-carlo needs an even dimension (qubit x environment)");
        return {ModelTag::MonteCarlo, n};
    }
    throw ConfigError("unknown model '" + model + "'");
}

EnvironmentSpec parse_env(const std::string& text, int env_dim) {
    if (env_dim < 1)
        throw ConfigError("environment dimension must be >= 1");
    if (text == "projector")
        return EnvironmentSpec::projector(env_dim);
    if (text == "mixed")
        return EnvironmentSpec::maximally_mixed(env_dim);
    if (text.rfind("rank:", 0) == 0) {
        const int r = parse_positive_int(text.substr(5), "env rank");
        if (r > env_dim)
            throw ConfigError("env rank exceeds environment dimension");
        return EnvironmentSpec::rank_projector(env_dim, r);
    }
    throw ConfigError("unknown env '" + text + "' (projector|mixed|rank:<r>)");
}

OutputTable run_alpha(const ExperimentConfig& config) {
    validate_grid(config);
    const ResolvedModel rm = resolve_model(config.model, config.dim);
    OutputTable table;

    if (rm.tag != ModelTag::MonteCarlo) {
        const AlphaCurve curve = model_curve(rm, config);
        table.columns = {"t", "value"};
        for (std::size_t i = 0; i < curve.times.size(); ++i)
            table.rows.push_back({curve.times[i], curve.values[i]});
        table.meta = meta_of(config, table.columns);
        return table;
    }

    const int n = rm.dim;
    const EnvironmentSpec env = parse_env(config.env, n / 2);
    const std::vector<double> times = grid_of(config).points();
    const EigenSystem sys =
        eigen_decompose(sample_gue(n, config.seed, kSpectrumStream));

    std::vector<std::string> lam_cols;
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            lam_cols.push_back("lam" + std::to_string(j) + std::to_string(k));

    if (config.samples <= 1) {
        // One instance, its own eigenvectors.
        const ChannelEvaluator evaluator(sys.vectors, sys.spectrum, env);
        table.columns = {"t", "value"};
        table.columns.insert(table.columns.end(), lam_cols.begin(),
                             lam_cols.end());
        for (double t : times) {
            const Eigen::Matrix4d m = evaluator.ptm(t).entries;
            std::vector<json> row{t, (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0};
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < 4; ++k)
                    row.emplace_back(m(j, k));
            table.rows.push_back(std::move(row));
        }
    } else {
        // Fixed spectrum, Haar-averaged eigenvectors.
        const std::vector<Eigen::Matrix4d> slabs = haar_ptm_slabs(
            sys.spectrum, env, times, config.samples, config.seed,
            config.workers);
        table.columns = {"t", "value", "stderr"};
        table.columns.insert(table.columns.end(), lam_cols.begin(),
                             lam_cols.end());
        const std::size_t nt = times.size();
        for (std::size_t k = 0; k < nt; ++k) {
            Eigen::Matrix4d mean = Eigen::Matrix4d::Zero();
            double asum = 0.0, asq = 0.0;
            for (int i = 0; i < config.samples; ++i) {
                const Eigen::Matrix4d& m =
                    slabs[static_cast<std::size_t>(i) * nt + k];
                mean += m;
                const double a = (m(0, 0) + m(1, 1) + m(2, 2)) / 3.0;
                asum += a;
                asq += a * a;
            }
            mean /= config.samples;
            const double amean = asum / config.samples;
            const double avar = std::max(
                0.0, (asq - config.samples * amean * amean) / (config.samples - 1));
            std::vector<json> row{times[k], amean,
                                  std::sqrt(avar / config.samples)};
            for (int j = 0; j < 4; ++j)
                for (int kk = 0; kk < 4; ++kk)
                    row.emplace_back(mean(j, kk));
            table.rows.push_back(std::move(row));
        }
    }
    table.meta = meta_of(config, table.columns);
    return table;
}

OutputTable run_measures(const ExperimentConfig& config) {
    OutputTable table;
    table.columns = measure_columns();

    if (!config.curve_file.empty()) {
        const AlphaCurve curve = read_curve_csv(config.curve_file);
        table.rows.push_back(measure_row("file", "", evaluate_measures(curve)));
        table.meta = meta_of(config, table.columns);
        return table;
    }

    validate_grid(config);
    if (config.table) {
        const std::pair<std::string, std::string> cells[] = {
            {"gue-exact", "4"},    {"gue-exact", "8"}, {"gue-exact", "inf"},
            {"poisson", "4"},      {"poisson", "8"},   {"poisson", "inf"},
        };
        for (const auto& [model, dim] : cells) {
            ExperimentConfig sub = config;
            sub.model = model;
            sub.dim = dim;
            const ResolvedModel rm = resolve_model(model, dim);
            table.rows.push_back(
                measure_row(model, dim, evaluate_measures(model_curve(rm, sub))));
        }
    } else {
        const ResolvedModel rm = resolve_model(config.model, config.dim);
        table.rows.push_back(measure_row(
            config.model, config.dim, evaluate_measures(model_curve(rm, config))));
    }
    table.meta = meta_of(config, table.columns);
    return table;
}

OutputTable run_fluctuations(const ExperimentConfig& config) {
    validate_grid(config);
    const ResolvedModel rm = resolve_model(config.model, config.dim);
    if (rm.dim == 0)
        throw ConfigError("fluctuations need a finite dimension");
    const int n = rm.dim;
    if (n < 4)
        throw ConfigError("fluctuation formulas need dim >= 4");
    if (config.samples != 0 && config.samples < 30)
        throw ConfigError("fluctuation Monte Carlo needs samples >= 30");
    if (config.samples > 0 && n % 2 != 0)
        throw ConfigError(
            "fluctuation Monte Carlo needs an even dimension");

    const Spectrum spec = own_spectrum(rm.tag, n, config.seed);
    const std::vector<double> times = grid_of(config).points();

    const bool with_mc = config.samples > 0;
    const bool with_spectral = config.spectral_samples > 0;
    if (with_spectral && config.spectral_samples < 2)
        throw ConfigError("spectral variance needs spectral_samples >= 2");

    EmpiricalFluctuations mc;
    if (with_mc) {
        const EnvironmentSpec env = parse_env(config.env, n / 2);
        mc = monte_carlo_fluctuations(spec, env, times, config.samples,
                                      config.seed, config.workers);
    }

    // Ensemble-of-spectra variance of alpha (same for every entry class).
    std::vector<double> spectral_var(times.size(), 0.0);
    if (with_spectral) {
        const int ks = config.spectral_samples;
        std::vector<Spectrum> spectra;
        spectra.reserve(ks);
        for (int k = 0; k < ks; ++k)
            spectra.push_back(
                own_spectrum(rm.tag, n, splitmix64_output(config.seed, 1) + k + 1));
        for (std::size_t i = 0; i < times.size(); ++i) {
            double s = 0.0, s2 = 0.0;
            for (const Spectrum& sp : spectra) {
                const double a = alpha_from_spectrum(sp, times[i]);
                s += a;
                s2 += a * a;
            }
            const double m = s / ks;
            spectral_var[i] = std::max(0.0, (s2 - ks * m * m) / (ks - 1));
        }
    }

    OutputTable table;
    table.columns = {"t", "kind", "sigma2_exact", "sigma2_leading"};
    if (with_mc) {
        table.columns.push_back("sigma2_mc");
        table.columns.push_back("mc_stderr");
    }
    if (with_spectral)
        table.columns.push_back("sigma2_spectral");

    const struct {
        ElementClass kind;
        const char* name;
    } classes[] = {{ElementClass::Diagonal, "diagonal"},
                   {ElementClass::Column3, "column3"},
                   {ElementClass::OffDiagonal, "offdiagonal"}};

    for (std::size_t i = 0; i < times.size(); ++i) {
        const double t = times[i];
        const std::complex<double> f_t = f_transform(spec, t).value;
        const std::complex<double> f_2t = f_transform(spec, 2.0 * t).value;
        const double mean_alpha = alpha_from_spectrum(spec, t);
        for (const auto& cls : classes) {
            std::vector<json> row{
                t, cls.name,
                sigma2_exact(cls.kind, f_t, f_2t, n, mean_alpha).variance,
                sigma2_leading(cls.kind, f_t, f_2t, n).variance};
            if (with_mc) {
                switch (cls.kind) {
                    case ElementClass::Diagonal:
                        row.emplace_back(mc.var_diagonal[i]);
                        row.emplace_back(mc.se_diagonal[i]);
                        break;
                    case ElementClass::Column3:
                        row.emplace_back(mc.var_column3[i]);
                        row.emplace_back(mc.se_column3[i]);
                        break;
                    case ElementClass::OffDiagonal:
                        row.emplace_back(mc.var_offdiagonal[i]);
                        row.emplace_back(mc.se_offdiagonal[i]);
                        break;
                }
            }
            if (with_spectral)
                row.emplace_back(spectral_var[i]);
            table.rows.push_back(std::move(row));
        }
    }
    table.meta = meta_of(config, table.columns);
    return table;
}

void write_table(const OutputTable& table, const std::string& format,
                 std::ostream& os) {
    if (format == "json") {
        json doc;
        doc["meta"] = table.meta;
        doc["columns"] = table.columns;
        doc["rows"] = table.rows;
        os << doc.dump() << "\n";
        return;
    }
    if (format != "csv")
        throw ConfigError("unknown format '" + format + "' (csv|json)");
    os << "# " << table.meta.dump() << "\n";
    os << "# generated " << iso_timestamp() << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        os << (c ? "," : "") << table.columns[c];
    os << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c)
                os << ",";
            if (row[c].is_number_float())
                os << format_double(row[c].get<double>());
            else if (row[c].is_string())
                os << row[c].get<std::string>();
            else
                os << row[c].dump();
        }
        os << "\n";
    }
}

AlphaCurve read_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open curve file '" + path + "'");
    std::string line;
    int t_col = -1, v_col = -1;
    std::vector<double> times, values;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        return cells;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        const std::vector<std::string> cells = split(line);
        if (t_col < 0) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                if (cells[c] == "t")
                    t_col = static_cast<int>(c);
                if (cells[c] == "value")
                    v_col = static_cast<int>(c);
            }
            if (t_col < 0 || v_col < 0)
                throw ConfigError("curve file needs 't' and 'value' columns");
            continue;
        }
        if (static_cast<int>(cells.size()) <= std::max(t_col, v_col))
            throw ConfigError("curve file row with missing cells");
        times.push_back(std::stod(cells[t_col]));
        values.push_back(std::stod(cells[v_col]));
    }
    return AlphaCurve::from_points(std::move(times), std::move(values),
                                   ModelTag::PerSpectrum, 0);
}

}  // namespace blochflow
