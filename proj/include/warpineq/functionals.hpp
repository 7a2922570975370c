#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "warpineq/quadrature.hpp"

namespace warpineq {

enum class InequalityId {
    first_order,
    first_order_poincare,
    second_order_radial,
    second_order_explicit,
    rellich,
    gradient,
    use_cor_3,
    rad_lap,
    weighted_hardy,
    one_dim_hardy,
    vhn_radial_hardy,
    proto_exp,
    proto_rexp,
    proto_gauss,
};

const char* to_string(InequalityId id);
InequalityId inequality_from_string(const std::string& s);

/// Static description of one inequality: dimension floor, hypotheses, inputs.
struct InequalityInfo {
    InequalityId id;
    const char* description;
    int min_dimension;
    bool needs_con2;
    bool needs_con3;
    bool modal_input;    // takes a ModalTestFunction
    bool takes_beta;     // weighted by r^{-beta}
    ProfileFamily required_family;  // ProfileFamily::custom means "any"
};

const std::vector<InequalityInfo>& inequality_catalog();
const InequalityInfo& inequality_info(InequalityId id);

/// Term-by-term record of one inequality instance. Terms are stored as the
/// positive integral values; lhs_total/rhs_total apply the signs of the
/// inequality as written (mass terms subtract on the left).
struct InequalityReport {
    InequalityId id = InequalityId::first_order;
    std::string model_name;
    std::string model_params;
    int dimension = 0;
    std::map<std::string, double> terms;
    std::vector<std::string> lhs_names;  // first entry positive, rest subtracted
    std::vector<std::string> rhs_names;
    double lhs_total = 0.0;
    double rhs_total = 0.0;
    double margin = 0.0;
    std::optional<double> quotient;
    double quadrature_error = 0.0;
    bool converged = true;
    bool hypothesis_ok = true;
    std::string hypothesis_note;

    /// Slack used when testing margin >= 0 against quadrature noise.
    double slack() const { return 10.0 * quadrature_error; }
};

/// Tuning knobs threaded through the evaluators. hardy_coefficient exists so a
/// test build can falsify the 1/4 constant and watch the exit contract trip;
/// it is not reachable from configuration files.
struct EvaluateOptions {
    QuadratureSpec quad;
    double beta = 0.0;
    double hardy_coefficient = 0.25;
};

InequalityReport first_order_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                   const EvaluateOptions& opt = {});
InequalityReport first_order_poincare_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                            const EvaluateOptions& opt = {});
InequalityReport second_order_radial_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                           const EvaluateOptions& opt = {});
InequalityReport second_order_explicit_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                             const EvaluateOptions& opt = {});
InequalityReport rellich_terms(const ManifoldModel& model, const RadialTestFunction& u,
                               const EvaluateOptions& opt = {});
InequalityReport gradient_inequality_terms(const ManifoldModel& model, const ModalTestFunction& u,
                                           const EvaluateOptions& opt = {});
InequalityReport use_cor_3_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                 const EvaluateOptions& opt = {});
InequalityReport rad_lap_compare(const ManifoldModel& model, const ModalTestFunction& u, double beta,
                                 const EvaluateOptions& opt = {});
InequalityReport weighted_hardy_check(const ManifoldModel& model, const RadialTestFunction& f,
                                      double beta, const EvaluateOptions& opt = {});
InequalityReport one_dim_hardy_check(const RadialTestFunction& d, const EvaluateOptions& opt = {});
InequalityReport vhn_radial_hardy_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                        const EvaluateOptions& opt = {});

enum class PrototypeKind { proto, proto2, gauss };

InequalityReport prototype_inequality_terms(const ManifoldModel& model, const RadialTestFunction& u,
                                            PrototypeKind which, const EvaluateOptions& opt = {});

/// Dispatch by id for radial-input inequalities (throws for modal ids).
InequalityReport evaluate_inequality(const ManifoldModel& model, InequalityId id,
                                     const RadialTestFunction& u, const EvaluateOptions& opt = {});

/// Dispatch by id for modal-input inequalities (gradient, rad_lap).
InequalityReport evaluate_inequality(const ManifoldModel& model, InequalityId id,
                                     const ModalTestFunction& u, const EvaluateOptions& opt = {});

}  // namespace warpineq
