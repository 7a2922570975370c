#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace warpineq {

/// Families of warping functions for rotationally symmetric model metrics
/// ds^2 = dr^2 + psi(r)^2 dw^2.
enum class ProfileFamily { euclidean, hyperbolic, exp_tail, r_exp_tail, gauss, custom };

const char* to_string(ProfileFamily family);
ProfileFamily profile_family_from_string(const std::string& s);

/// Parameters shared by the builtin families. Tails use A, b, a, R; gauss uses m.
struct ProfileParams {
    double A = 1.0;
    double b = 1.0;
    double a = 0.0;
    double R = 0.0;
    int m = 1;
};

/// Declared large-r behaviour psi'/psi ~ C r^a.
struct AsymptoticForm {
    double C = 1.0;
    double a = 0.0;
};

class InvalidParameterError : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class EvaluationDomainError : public std::domain_error {
    using std::domain_error::domain_error;
};

class FitDegenerateError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A warping function together with its first two derivatives.
///
/// Immutable after construction; all evaluators are pure, so profiles can be
/// shared freely across threads. Tail families (exp_tail, r_exp_tail) are
/// defined only for r >= valid_from and refuse evaluation below it.
class WarpingProfile {
public:
    std::string name;
    ProfileFamily family = ProfileFamily::custom;
    ProfileParams params;
    double valid_from = 0.0;
    std::optional<AsymptoticForm> asymptotic;

    double psi(double r) const;
    double psi_prime(double r) const;
    double psi_second(double r) const;

    /// psi'/psi, in closed form for builtin families.
    double log_derivative(double r) const;
    /// psi'' / psi.
    double second_over_psi(double r) const;
    /// psi'^2 - 1 without cancellation (e.g. sinh^2 r for the hyperbolic family).
    double psi_prime_sq_minus_one(double r) const;
    /// (psi'^2 - 1) / psi^2, stable at both ends (no 0/0 near the pole, no
    /// inf/inf where psi overflows). Equals -h_tan.
    double tangential_defect(double r) const;

    bool is_global() const { return valid_from == 0.0; }

    /// Only set for the custom family.
    std::function<double(double)> custom_psi;

private:
    void require_domain(double r) const;
};

WarpingProfile make_builtin_profile(ProfileFamily family, const ProfileParams& params = {});

/// Compact "A=..;b=..;a=..;R=.." / "m=.." rendering of the family parameters.
std::string params_string(const WarpingProfile& profile);
WarpingProfile make_custom_profile(std::string name, std::function<double(double)> psi,
                                   double valid_from = 0.0,
                                   std::optional<AsymptoticForm> asymptotic = std::nullopt);

/// One extrapolated limit check of condition (psi(0+)=0, psi'(0+)=1, psi''(0+)=0).
struct LimitCheck {
    std::string quantity;
    double estimate = 0.0;
    double target = 0.0;
    bool passed = false;
};

struct PsiConditionReport {
    std::vector<LimitCheck> checks;
    bool all_passed = false;
};

/// Richardson-extrapolates psi, psi', psi'' at r in {1e-3, 1e-4, 1e-5} toward 0
/// and compares against the smooth-pole normalization. Tail families are rejected.
PsiConditionReport validate_psi_conditions(const WarpingProfile& profile, double tol = 1e-6);

struct ConditionSample {
    double r = 0.0;
    double margin = 0.0;
};

/// Result of a pointwise condition check over a radius sample.
struct ConditionReport {
    std::string condition;
    bool applicable = true;
    bool passed = false;
    double worst_margin = 0.0;
    std::vector<ConditionSample> samples;
};

/// Radial curvature bound: psi''/psi >= 1 at every sample (radial curvature <= -1).
ConditionReport check_curvature_bound(const WarpingProfile& profile, const std::vector<double>& radii);

/// Curvature comparison: -psi''/psi >= -(psi'^2-1)/psi^2 at every sample.
ConditionReport check_con3(const WarpingProfile& profile, const std::vector<double>& radii);

/// Sturm comparison conclusions psi'/psi >= coth r and psi >= sinh r.
/// Applicable only when the curvature bound holds on the same radii and the
/// profile is a global family (the comparison is anchored at the pole).
ConditionReport check_sturm(const WarpingProfile& profile, const std::vector<double>& radii);

struct AsymptoticFit {
    double C = 0.0;
    double a = 0.0;
    double residual = 0.0;
    /// False when the profile declares an asymptotic form and the fit misses it by >5%.
    bool cross_check_ok = true;
};

/// Least-squares fit of log(psi'/psi) against log r over the window.
AsymptoticFit estimate_asymptotic_exponent(const WarpingProfile& profile, double r_lo, double r_hi,
                                           int samples = 64);

}  // namespace warpineq
