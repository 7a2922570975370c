#pragma once

#include <string>
#include <vector>

#include "warpineq/functionals.hpp"
#include "warpineq/sharpness.hpp"

namespace warpineq {

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);

/// Shortest round-trip decimal rendering ("%.17g", C locale).
std::string format_double(double v);

/// One row per report; term columns are the union of term names in id order.
std::string reports_to_csv(const std::vector<InequalityReport>& reports);

/// One JSON object per report, term map flattened into the object.
std::string reports_to_json(const std::vector<InequalityReport>& reports);

std::string curvature_to_csv(const std::vector<CurvatureSample>& samples);

/// Two-column (parameter, value) CSV with a comment header naming the fitted
/// model and limit. Needs at least two samples.
std::string plot_data_csv(const SharpnessResult& result);

std::string sharpness_summary_json(const SharpnessResult& result, const std::string& model_name,
                                   const std::string& target);

/// Write-temp-then-rename so concurrent readers never see a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

void emit_plot_data(const SharpnessResult& result, const std::string& path);

}  // namespace warpineq
