#include "warpineq/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace warpineq {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::vector<std::string> term_columns(const std::vector<InequalityReport>& reports) {
    std::set<std::string> names;
    for (const auto& r : reports) {
        for (const auto& [name, value] : r.terms) names.insert(name);
    }
    return {names.begin(), names.end()};
}

}  // namespace

std::string reports_to_csv(const std::vector<InequalityReport>& reports) {
    const auto terms = term_columns(reports);
    std::ostringstream os;
    os << "inequality_id,model,N,params";
    for (const auto& t : terms) os << "," << csv_escape("term:" + t);
    os << ",lhs_total,rhs_total,margin,quotient,quadrature_error,hypothesis_ok\n";
    for (const auto& r : reports) {
        os << to_string(r.id) << "," << csv_escape(r.model_name) << "," << r.dimension << ","
           << csv_escape(r.model_params);
        for (const auto& t : terms) {
            auto it = r.terms.find(t);
            os << ",";
            if (it != r.terms.end()) os << format_double(it->second);
        }
        os << "," << format_double(r.lhs_total) << "," << format_double(r.rhs_total) << ","
           << format_double(r.margin) << ",";
        if (r.quotient) os << format_double(*r.quotient);
        os << "," << format_double(r.quadrature_error) << "," << (r.hypothesis_ok ? "1" : "0")
           << "\n";
    }
    return os.str();
}

std::string reports_to_json(const std::vector<InequalityReport>& reports) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json obj;
        obj["inequality_id"] = to_string(r.id);
        obj["model"] = r.model_name;
        obj["N"] = r.dimension;
        obj["params"] = r.model_params;
        for (const auto& [name, value] : r.terms) obj[name] = value;
        obj["lhs_total"] = r.lhs_total;
        obj["rhs_total"] = r.rhs_total;
        obj["margin"] = r.margin;
        if (r.quotient) obj["quotient"] = *r.quotient;
        obj["quadrature_error"] = r.quadrature_error;
        obj["hypothesis_ok"] = r.hypothesis_ok;
        obj["hypothesis_note"] = r.hypothesis_note;
        arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
}

std::string curvature_to_csv(const std::vector<CurvatureSample>& samples) {
    std::ostringstream os;
    os << "r,K,H,Lambda\n";
    for (const auto& s : samples) {
        os << format_double(s.r) << "," << format_double(s.k_rad) << "," << format_double(s.h_tan)
           << "," << format_double(s.lambda_rad) << "\n";
    }
    return os.str();
}

std::string plot_data_csv(const SharpnessResult& result) {
    if (result.samples.size() < 2) {
        throw std::invalid_argument("plot data needs at least two samples");
    }
    std::ostringstream os;
    os << "# fit: " << result.fit_model << "; c0=" << format_double(result.fitted_limit)
       << "; residual=" << format_double(result.fit_residual) << "\n";
    os << "parameter,value\n";
    for (const auto& [param, value] : result.samples) {
        os << format_double(param) << "," << format_double(value) << "\n";
    }
    return os.str();
}

std::string sharpness_summary_json(const SharpnessResult& result, const std::string& model_name,
                                   const std::string& target) {
    nlohmann::json obj;
    obj["fitted_limit"] = result.fitted_limit;
    obj["fit_residual"] = result.fit_residual;
    obj["fit_model"] = result.fit_model;
    obj["model"] = model_name;
    obj["target"] = target;
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [param, value] : result.samples) {
        samples.push_back({{"parameter", param}, {"value", value}});
    }
    obj["samples"] = samples;
    return obj.dump(2) + "\n";
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    fs::rename(tmp, target);
}

void emit_plot_data(const SharpnessResult& result, const std::string& path) {
    write_file_atomic(path, plot_data_csv(result));
}

}  // namespace warpineq
