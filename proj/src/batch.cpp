#include "warpineq/batch.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace warpineq {

void serial_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    for (std::size_t i = 0; i < count; ++i) body(i);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, int workers) {
#ifdef _OPENMP
    if (workers == 1 || count < 2) {
        serial_for(count, body);
        return;
    }
    const int threads = workers > 0 ? workers : omp_get_max_threads();
    std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
#else
    (void)workers;
    serial_for(count, body);
#endif
}

BumpSampler::BumpSampler(std::uint64_t seed, double support_lo, double support_hi, double width)
    : state_(seed), lo_(support_lo), hi_(support_hi), width_(width) {
    if (!(width > 0.0)) throw std::invalid_argument("bump width must be positive");
    if (!(support_hi - width > support_lo + width)) {
        throw std::invalid_argument("support range too narrow for the requested width");
    }
    if (support_lo < 0.0) {
        throw std::invalid_argument("support range must not extend below 0");
    }
}

double BumpSampler::unit() {
    // splitmix64; the full 64-bit word feeds a [0,1) double.
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

RadialTestFunction BumpSampler::next() {
    const double lo = std::log(lo_ + width_);
    const double hi = std::log(hi_ - width_);
    const double center = std::exp(lo + unit() * (hi - lo));
    return make_bump(center, width_, 1.0);
}

std::vector<RadialTestFunction> BumpSampler::draw(int count) {
    std::vector<RadialTestFunction> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(next());
    return out;
}

namespace {

InequalityReport evaluate_case(const ManifoldModel& model, const VerifyCase& c,
                               const EvaluateOptions& opt) {
    if (c.modal) return evaluate_inequality(model, c.id, *c.modal, opt);
    return evaluate_inequality(model, c.id, c.u, opt);
}

}  // namespace

std::vector<InequalityReport> run_batch(const ManifoldModel& model,
                                        const std::vector<VerifyCase>& cases,
                                        const EvaluateOptions& opt, int workers) {
    std::vector<InequalityReport> reports(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) { reports[i] = evaluate_case(model, cases[i], opt); },
                 workers);
    return reports;
}

std::vector<InequalityReport> run_batch_serial(const ManifoldModel& model,
                                               const std::vector<VerifyCase>& cases,
                                               const EvaluateOptions& opt) {
    std::vector<InequalityReport> reports(cases.size());
    serial_for(cases.size(), [&](std::size_t i) { reports[i] = evaluate_case(model, cases[i], opt); });
    return reports;
}

std::vector<CurvatureSample> curvature_table(const ManifoldModel& model,
                                             const std::vector<double>& radii, int workers) {
    std::vector<CurvatureSample> samples(radii.size());
    parallel_for(radii.size(), [&](std::size_t i) { samples[i] = curvature_at(model, radii[i]); },
                 workers);
    return samples;
}

}  // namespace warpineq
