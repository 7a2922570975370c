#include "warpineq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace warpineq {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 64) {
        throw std::invalid_argument("quadrature needs at least 64 subdivisions");
    }
    if (panel_rule < 15) {
        throw std::invalid_argument("panel rule order must be >= 15");
    }
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679, 0.1903505780647854, 0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct Panel {
    double a = 0.0, b = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kXgk[i]);
        fv[14 - i] = f(center + half * kXgk[i]);
    }
    fv[7] = f(center);
    double kronrod = 0.0, gauss = 0.0, resabs = 0.0;
    for (int i = 0; i < 7; ++i) {
        const double pair = fv[i] + fv[14 - i];
        kronrod += kWgk[i] * pair;
        resabs += kWgk[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) gauss += kWg[i / 2] * pair;
    }
    kronrod += kWgk[7] * fv[7];
    resabs += kWgk[7] * std::abs(fv[7]);
    gauss += kWg[3] * fv[7];

    const double mean = 0.5 * kronrod;
    double resasc = kWgk[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kWgk[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    }
    Panel p;
    p.a = a;
    p.b = b;
    p.value = kronrod * half;
    if (std::isnan(p.value)) throw NanIntegrandError("integrand produced NaN");
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    p.error = err;
    return p;
}

double tolerance_for(const QuadratureSpec& spec, double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

}  // namespace

IntegrationResult integrate(const std::function<double(double)>& f, double a, double b,
                            const QuadratureSpec& spec, std::span<const double> breakpoints) {
    spec.validate();
    IntegrationResult result;
    if (!(b > a)) return result;

    std::vector<double> edges;
    edges.push_back(a);
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    std::priority_queue<Panel> heap;
    double total = 0.0, total_err = 0.0;
    int panels = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Panel p = gk15(f, edges[i], edges[i + 1]);
        total += p.value;
        total_err += p.error;
        heap.push(p);
        ++panels;
    }
    while (total_err > tolerance_for(spec, total) && panels < spec.max_subdivisions) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval exhausted at machine precision
            heap.push(worst);
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }

    // Re-sum panel values smallest-first to shed accumulation error.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(),
              [](const Panel& x, const Panel& y) { return std::abs(x.value) < std::abs(y.value); });
    double value = 0.0, err = 0.0;
    for (const Panel& p : all) {
        value += p.value;
        err += p.error;
    }
    result.value = value;
    result.error = err;
    result.panels = panels;
    result.converged = err <= tolerance_for(spec, value);
    return result;
}

IntegrationResult integrate_weighted(const ManifoldModel& model,
                                     const std::function<double(double)>& g, double lo, double hi,
                                     const QuadratureSpec& spec) {
    const int power = model.dimension - 1;
    const auto& prof = model.profile;
    auto integrand = [&](double r) {
        double w = 1.0;
        const double ps = prof.psi(r);
        for (int i = 0; i < power; ++i) w *= ps;
        return g(r) * w;
    };
    if (lo <= 0.0) lo = 1e-12;
    lo = std::max(lo, prof.valid_from);
    if (!(hi > lo)) return {};
    return integrate(integrand, lo, hi, spec);
}

IntegrationResult integrate_weighted(const ManifoldModel& model,
                                     const std::function<double(double)>& g,
                                     const RadialTestFunction& support_of,
                                     const QuadratureSpec& spec) {
    return integrate_weighted(model, g, support_of.support_lo, support_of.support_hi, spec);
}

IntegrationResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                        const QuadratureSpec& spec, int max_blocks) {
    IntegrationResult total;
    double lo = a;
    double width = std::max(a, 1.0);
    for (int k = 0; k < max_blocks; ++k) {
        const double hi = lo + width;
        IntegrationResult block = integrate(f, lo, hi, spec);
        total += block;
        lo = hi;
        width *= 2.0;
        if (k >= 3 && std::abs(block.value) <= std::max(spec.abs_tol,
                                                        0.1 * spec.rel_tol * std::abs(total.value))) {
            return total;
        }
    }
    total.converged = false;
    return total;
}

}  // namespace warpineq
