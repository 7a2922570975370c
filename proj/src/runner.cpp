#include "warpineq/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace warpineq {

using nlohmann::json;

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::verify: return "verify";
        case ExperimentKind::sharpness: return "sharpness";
        case ExperimentKind::sequence: return "sequence";
        case ExperimentKind::curvature: return "curvature";
    }
    return "unknown";
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

ProfileParams parse_params(const json& obj) {
    reject_unknown_keys(obj, {"A", "b", "a", "R", "m"}, "model params");
    ProfileParams p;
    if (obj.contains("A")) p.A = obj.at("A").get<double>();
    if (obj.contains("b")) p.b = obj.at("b").get<double>();
    if (obj.contains("a")) p.a = obj.at("a").get<double>();
    if (obj.contains("R")) p.R = obj.at("R").get<double>();
    if (obj.contains("m")) p.m = obj.at("m").get<int>();
    return p;
}

QuadratureSpec parse_quadrature(const json& obj) {
    reject_unknown_keys(obj, {"rel_tol", "abs_tol", "max_subdivisions", "panel_rule"},
                        "quadrature overrides");
    QuadratureSpec q;
    if (obj.contains("rel_tol")) q.rel_tol = obj.at("rel_tol").get<double>();
    if (obj.contains("abs_tol")) q.abs_tol = obj.at("abs_tol").get<double>();
    if (obj.contains("max_subdivisions")) q.max_subdivisions = obj.at("max_subdivisions").get<int>();
    if (obj.contains("panel_rule")) q.panel_rule = obj.at("panel_rule").get<int>();
    q.validate();
    return q;
}

std::pair<double, double> parse_window(const json& arr, const std::string& where) {
    if (!arr.is_array() || arr.size() != 2) throw ConfigError(where + " must be [lo, hi]");
    const double lo = arr[0].get<double>();
    const double hi = arr[1].get<double>();
    if (!(hi > lo)) throw ConfigError(where + " must satisfy lo < hi");
    return {lo, hi};
}

ExperimentSpec parse_experiment(const json& obj, int index) {
    const std::string where = "experiments[" + std::to_string(index) + "]";
    if (!obj.contains("kind")) throw ConfigError(where + " needs a kind");
    const std::string kind = obj.at("kind").get<std::string>();
    ExperimentSpec e;
    e.label = obj.value("label", kind + "_" + std::to_string(index));

    if (kind == "verify") {
        e.kind = ExperimentKind::verify;
        reject_unknown_keys(obj,
                            {"kind", "label", "inequality_id", "count", "support", "width", "seed",
                             "beta", "modes", "quadrature"},
                            where);
        if (!obj.contains("inequality_id")) throw ConfigError(where + " needs inequality_id");
        e.inequality = inequality_from_string(obj.at("inequality_id").get<std::string>());
        if (!obj.contains("support")) throw ConfigError(where + " needs a support range");
        auto [lo, hi] = parse_window(obj.at("support"), where + ".support");
        e.support_lo = lo;
        e.support_hi = hi;
        if (!obj.contains("seed")) throw ConfigError(where + " needs a seed");
        e.seed = obj.at("seed").get<std::uint64_t>();
        e.count = obj.value("count", 10);
        if (e.count < 1) throw ConfigError(where + ".count must be >= 1");
        e.width = obj.value("width", (hi - lo) / 8.0);
        if (!(e.width > 0.0)) throw ConfigError(where + ".width must be positive");
        e.beta = obj.value("beta", 0.0);
        if (obj.contains("modes")) {
            e.modes = obj.at("modes").get<std::vector<int>>();
            if (e.modes.empty()) throw ConfigError(where + ".modes must be non-empty");
        }
    } else if (kind == "sequence") {
        e.kind = ExperimentKind::sequence;
        reject_unknown_keys(obj, {"kind", "label", "alpha", "n_values", "fit_window", "quadrature"},
                            where);
        if (!obj.contains("n_values")) throw ConfigError(where + " needs n_values");
        e.n_values = obj.at("n_values").get<std::vector<long long>>();
        if (e.n_values.empty()) throw ConfigError(where + ".n_values must be non-empty");
        e.alpha = obj.value("alpha", 2.0);
        if (!(e.alpha > 1.0)) throw ConfigError(where + ".alpha must exceed 1");
        if (obj.contains("fit_window")) {
            e.fit_window = parse_window(obj.at("fit_window"), where + ".fit_window");
        }
    } else if (kind == "sharpness") {
        e.kind = ExperimentKind::sharpness;
        reject_unknown_keys(obj, {"kind", "label", "target", "R_values", "grid_points", "window"},
                            where);
        if (!obj.contains("target")) throw ConfigError(where + " needs a target");
        e.target = spectral_target_from_string(obj.at("target").get<std::string>());
        if (!obj.contains("R_values")) throw ConfigError(where + " needs R_values");
        e.R_values = obj.at("R_values").get<std::vector<double>>();
        if (e.R_values.empty()) throw ConfigError(where + ".R_values must be non-empty");
        e.grid_points = obj.value("grid_points", 4000);
        if (e.grid_points < 256) throw ConfigError(where + ".grid_points must be >= 256");
        if (obj.contains("window")) e.window = parse_window(obj.at("window"), where + ".window");
    } else if (kind == "curvature") {
        e.kind = ExperimentKind::curvature;
        reject_unknown_keys(obj, {"kind", "label", "radii"}, where);
        if (!obj.contains("radii")) throw ConfigError(where + " needs a radii grid");
        const json& grid = obj.at("radii");
        reject_unknown_keys(grid, {"from", "to", "count"}, where + ".radii");
        e.radii.from = grid.at("from").get<double>();
        e.radii.to = grid.at("to").get<double>();
        e.radii.count = grid.at("count").get<int>();
        if (!(e.radii.to > e.radii.from) || e.radii.count < 2) {
            throw ConfigError(where + ".radii must have from < to and count >= 2");
        }
    } else {
        throw ConfigError(where + " has unknown kind \"" + kind + "\"");
    }
    if (obj.contains("quadrature")) e.quadrature = parse_quadrature(obj.at("quadrature"));
    return e;
}

void validate_pairing(const RunConfig& config) {
    for (const auto& e : config.experiments) {
        if (e.kind == ExperimentKind::verify) {
            const auto& info = inequality_info(e.inequality);
            for (std::size_t i = 0; i < config.models.size(); ++i) {
                const auto& m = config.models[i];
                if (m.dimension < info.min_dimension) {
                    throw ConfigError("experiment \"" + e.label + "\" requires N >= " +
                                      std::to_string(info.min_dimension) + " but models[" +
                                      std::to_string(i) + "] has N = " +
                                      std::to_string(m.dimension));
                }
                if (info.required_family != ProfileFamily::custom &&
                    m.family != info.required_family) {
                    throw ConfigError("experiment \"" + e.label + "\" requires the " +
                                      std::string(to_string(info.required_family)) + " family");
                }
                if (info.takes_beta &&
                    !(e.beta >= 0.0 && e.beta < m.dimension - 4)) {
                    throw ConfigError("experiment \"" + e.label +
                                      "\" needs 0 <= beta < N - 4 for models[" +
                                      std::to_string(i) + "]");
                }
            }
        }
    }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    reject_unknown_keys(doc, {"models", "experiments", "output", "workers"}, "config");
    RunConfig config;
    if (!doc.contains("models") || !doc.at("models").is_array() || doc.at("models").empty()) {
        throw ConfigError("config needs a non-empty models array");
    }
    for (const auto& m : doc.at("models")) {
        reject_unknown_keys(m, {"family", "params", "N"}, "model entry");
        ModelSpec spec;
        if (!m.contains("family")) throw ConfigError("model entry needs a family");
        spec.family = profile_family_from_string(m.at("family").get<std::string>());
        if (spec.family == ProfileFamily::custom) {
            throw ConfigError("custom profiles cannot be built from configuration");
        }
        if (m.contains("params")) spec.params = parse_params(m.at("params"));
        if (!m.contains("N")) throw ConfigError("model entry needs a dimension N");
        spec.dimension = m.at("N").get<int>();
        if (spec.dimension < 3) throw ConfigError("model dimension must be >= 3");
        config.models.push_back(spec);
    }
    if (!doc.contains("experiments") || !doc.at("experiments").is_array()) {
        throw ConfigError("config needs an experiments array");
    }
    int idx = 0;
    for (const auto& e : doc.at("experiments")) {
        config.experiments.push_back(parse_experiment(e, idx++));
    }
    if (doc.contains("output")) {
        const json& out = doc.at("output");
        reject_unknown_keys(out, {"format", "path"}, "output");
        if (out.contains("format")) {
            const std::string f = out.at("format").get<std::string>();
            if (f == "csv") {
                config.output.format = OutputFormat::csv;
            } else if (f == "json") {
                config.output.format = OutputFormat::json;
            } else {
                throw ConfigError("output format must be csv or json");
            }
        }
        if (out.contains("path")) config.output.path = out.at("path").get<std::string>();
    }
    if (doc.contains("workers")) {
        config.workers = doc.at("workers").get<int>();
        if (config.workers < 0) throw ConfigError("workers must be >= 0");
    }
    validate_pairing(config);
    try {
        for (const auto& m : config.models) make_builtin_profile(m.family, m.params);
    } catch (const InvalidParameterError& err) {
        throw ConfigError(std::string("invalid model parameters: ") + err.what());
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str());
}

namespace {

struct Emitter {
    const RunConfig& config;
    std::string out_dir;
    RunSummary& summary;

    void write(const std::string& name, const std::string& content) {
        namespace fs = std::filesystem;
        const std::string path = (fs::path(out_dir) / name).string();
        write_file_atomic(path, content);
        summary.written_files.push_back(path);
    }
};

std::string model_suffix(const RunConfig& config, std::size_t model_idx) {
    return config.models.size() > 1 ? "_m" + std::to_string(model_idx) : "";
}

void run_verify(const RunConfig& config, const ExperimentSpec& e, Emitter& emit,
                RunSummary& summary) {
    EvaluateOptions opt;
    if (e.quadrature) opt.quad = *e.quadrature;
    opt.beta = e.beta;
    opt.hardy_coefficient = config.hardy_coefficient;

    std::vector<InequalityReport> all;
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const auto& ms = config.models[mi];
        ManifoldModel model(ms.dimension, make_builtin_profile(ms.family, ms.params));
        const auto& info = inequality_info(e.inequality);
        BumpSampler sampler(e.seed, e.support_lo, e.support_hi, e.width);
        std::vector<VerifyCase> cases;
        cases.reserve(e.count);
        for (int i = 0; i < e.count; ++i) {
            VerifyCase c;
            c.id = e.inequality;
            if (info.modal_input) {
                ModalTestFunction modal;
                for (int n : e.modes) modal.modes.emplace_back(n, sampler.next());
                c.modal = std::move(modal);
            } else {
                c.u = sampler.next();
            }
            cases.push_back(std::move(c));
        }
        auto reports = run_batch(model, cases, opt, config.workers);
        for (const auto& r : reports) {
            ++summary.checks;
            if (r.hypothesis_ok && r.margin < -r.slack()) {
                ++summary.failures;
                summary.messages.push_back("margin violation in \"" + e.label + "\" (" +
                                           std::string(to_string(r.id)) + ", model " +
                                           r.model_name + ", N=" + std::to_string(r.dimension) +
                                           "): margin=" + format_double(r.margin) +
                                           " slack=" + format_double(r.slack()));
            }
        }
        all.insert(all.end(), reports.begin(), reports.end());
    }
    if (config.output.format == OutputFormat::csv) {
        emit.write(e.label + ".csv", reports_to_csv(all));
    } else {
        emit.write(e.label + ".json", reports_to_json(all));
    }
}

void run_curvature(const RunConfig& config, const ExperimentSpec& e, Emitter& emit,
                   RunSummary& summary) {
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const auto& ms = config.models[mi];
        ManifoldModel model(ms.dimension, make_builtin_profile(ms.family, ms.params));
        std::vector<double> radii(e.radii.count);
        for (int i = 0; i < e.radii.count; ++i) {
            radii[i] = e.radii.from + (e.radii.to - e.radii.from) * i / (e.radii.count - 1.0);
        }
        auto samples = curvature_table(model, radii, config.workers);
        summary.checks += static_cast<int>(samples.size());
        emit.write(e.label + model_suffix(config, mi) + ".csv", curvature_to_csv(samples));
    }
}

void run_sequence(const RunConfig& config, const ExperimentSpec& e, Emitter& emit,
                  RunSummary& summary) {
    QuadratureSpec quad = e.quadrature ? *e.quadrature : QuadratureSpec{};
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const auto& ms = config.models[mi];
        ManifoldModel model(ms.dimension, make_builtin_profile(ms.family, ms.params));
        std::vector<long long> ns = e.n_values;
        std::sort(ns.begin(), ns.end());
        std::vector<std::pair<double, double>> samples(ns.size());
        parallel_for(ns.size(), [&](std::size_t i) {
            const auto q = sequence_quotient(model, ns[i], e.alpha, quad);
            samples[i] = {static_cast<double>(ns[i]), q.quotient};
        }, config.workers);
        SharpnessResult result = samples.size() >= 4
                                     ? fit_limit(samples, e.alpha)
                                     : [&] {
                                           SharpnessResult r;
                                           r.experiment_id = SharpnessExperiment::sequence_quotient;
                                           r.samples = samples;
                                           r.fitted_limit = samples.back().second;
                                           r.fit_model = "last sample (too few for a fit)";
                                           return r;
                                       }();
        ++summary.checks;
        if (e.fit_window && (result.fitted_limit < e.fit_window->first ||
                             result.fitted_limit > e.fit_window->second)) {
            ++summary.failures;
            summary.messages.push_back("fit limit " + format_double(result.fitted_limit) +
                                       " outside window in \"" + e.label + "\"");
        }
        const std::string suffix = model_suffix(config, mi);
        if (result.samples.size() >= 2) {
            emit.write(e.label + suffix + ".csv", plot_data_csv(result));
        }
        emit.write(e.label + suffix + ".json",
                   sharpness_summary_json(result, model.profile.name, "sequence_quotient"));
    }
}

void run_sharpness(const RunConfig& config, const ExperimentSpec& e, Emitter& emit,
                   RunSummary& summary) {
    for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
        const auto& ms = config.models[mi];
        ManifoldModel model(ms.dimension, make_builtin_profile(ms.family, ms.params));
        SharpnessResult result = spectral_sweep(model, e.target, e.R_values, e.grid_points);
        ++summary.checks;
        if (e.window && (result.fitted_limit < e.window->first ||
                         result.fitted_limit > e.window->second)) {
            ++summary.failures;
            summary.messages.push_back("fitted limit " + format_double(result.fitted_limit) +
                                       " outside window in \"" + e.label + "\"");
        }
        const std::string suffix = model_suffix(config, mi);
        if (result.samples.size() >= 2) {
            emit.write(e.label + suffix + ".csv", plot_data_csv(result));
        }
        emit.write(e.label + suffix + ".json",
                   sharpness_summary_json(result, model.profile.name, to_string(e.target)));
    }
}

}  // namespace

RunSummary run(const RunConfig& config, std::optional<ExperimentKind> filter,
               const std::string& out_dir_override) {
    RunSummary summary;
    Emitter emit{config, out_dir_override.empty() ? config.output.path : out_dir_override, summary};
    for (const auto& e : config.experiments) {
        if (filter && e.kind != *filter) continue;
        ++summary.experiments_run;
        switch (e.kind) {
            case ExperimentKind::verify: run_verify(config, e, emit, summary); break;
            case ExperimentKind::curvature: run_curvature(config, e, emit, summary); break;
            case ExperimentKind::sequence: run_sequence(config, e, emit, summary); break;
            case ExperimentKind::sharpness: run_sharpness(config, e, emit, summary); break;
        }
    }
    summary.exit_code = summary.failures == 0 ? 0 : 1;
    return summary;
}

}  // namespace warpineq
