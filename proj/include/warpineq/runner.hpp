#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "warpineq/batch.hpp"
#include "warpineq/report_io.hpp"

namespace warpineq {

class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { verify, sharpness, sequence, curvature };

const char* to_string(ExperimentKind k);

struct ModelSpec {
    ProfileFamily family = ProfileFamily::hyperbolic;
    ProfileParams params;
    int dimension = 3;
};

struct CurvatureGrid {
    double from = 0.1;
    double to = 10.0;
    int count = 100;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::verify;
    std::string label;

    // verify
    InequalityId inequality = InequalityId::first_order;
    int count = 10;
    double support_lo = 0.5;
    double support_hi = 8.0;
    double width = 0.0;  // 0 -> (hi - lo) / 8
    std::uint64_t seed = 0;
    double beta = 0.0;
    std::vector<int> modes = {0, 1};

    // sequence
    double alpha = 2.0;
    std::vector<long long> n_values;
    std::optional<std::pair<double, double>> fit_window;

    // sharpness
    SpectralTarget target = SpectralTarget::poincare_gap;
    std::vector<double> R_values;
    int grid_points = 4000;
    std::optional<std::pair<double, double>> window;

    // curvature
    CurvatureGrid radii;

    std::optional<QuadratureSpec> quadrature;
};

enum class OutputFormat { csv, json };

struct OutputSpec {
    OutputFormat format = OutputFormat::csv;
    std::string path = "out";
};

struct RunConfig {
    std::vector<ModelSpec> models;
    std::vector<ExperimentSpec> experiments;
    OutputSpec output;
    int workers = 0;

    /// Test-only hook: scales the Hardy coefficient of the first-order
    /// inequality. Not parseable from configuration files.
    double hardy_coefficient = 0.25;
};

/// Parses and validates a config document. Unknown keys are errors.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

struct RunSummary {
    int exit_code = 0;
    int experiments_run = 0;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;
    std::vector<std::string> written_files;
};

/// Executes the experiments (optionally only one kind), writing one report
/// file per experiment under out_dir. Exit code 0 iff every in-hypothesis
/// margin clears its slack and every fit lands in its configured window.
RunSummary run(const RunConfig& config, std::optional<ExperimentKind> filter = std::nullopt,
               const std::string& out_dir_override = "");

}  // namespace warpineq
