#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochflow/alpha_curve.hpp"
#include "blochflow/channel.hpp"

namespace blochflow {

// Everything a run needs, as parsed from flags and/or a config file.
// String-typed fields keep the CLI surface and the config file in one shape;
// validation happens in resolve_model / the run_* entry points.
struct ExperimentConfig {
    std::string command = "alpha";  // alpha | measures | fluctuations
    std::string model = "gue-exact";
    std::string dim = "8";  // positive integer or "inf"
    double t_start = 0.0;
    double t_end = 10.0;
    double t_step = 0.01;
    std::uint64_t seed = 1;
    int samples = 0;
    std::string env = "projector";  // projector | mixed | rank:<r>
    std::string out;                // empty: stdout
    std::string format = "csv";     // csv | json
    std::string curve_file;         // measures: evaluate a stored curve
    int spectral_samples = 0;       // fluctuations: spectra for the extra column
    bool table = false;             // measures: full model grid
    int workers = 0;                // <= 0: hardware
};

struct ResolvedModel {
    ModelTag tag;
    int dim = 0;  // 0 for infinite models
};

// Maps (model, dim) to a concrete model; "inf" turns the finite families into
// their infinite limits.  Throws ConfigError on invalid combinations.
ResolvedModel resolve_model(const std::string& model, const std::string& dim);

// Parses "projector", "mixed", or "rank:<r>" for an environment of dimension
// env_dim.  Throws ConfigError.
EnvironmentSpec parse_env(const std::string& text, int env_dim);

// A fully formatted result: column names, cell values (numbers or strings),
// and the metadata echo (config, build id, workers) that the writers emit.
struct OutputTable {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    nlohmann::json meta;
};

OutputTable run_alpha(const ExperimentConfig& config);
OutputTable run_measures(const ExperimentConfig& config);
OutputTable run_fluctuations(const ExperimentConfig& config);

// CSV: one '#' JSON metadata line, one '#' timestamp line, header, rows.
// JSON: {"meta":..., "columns":..., "rows":...} with no timestamp, so
// identical configs give byte-identical documents in both formats (the CSV
// timestamp lives on its own comment line).
void write_table(const OutputTable& table, const std::string& format,
                 std::ostream& os);

// Fixed-precision float formatting shared by both writers ("%.12g").
std::string format_double(double v);

// Reads a curve back from our CSV output (or any t,value CSV with '#'
// comments).
AlphaCurve read_curve_csv(const std::string& path);

// Library/build identification echoed into metadata.
std::string build_id();

}  // namespace blochflow
