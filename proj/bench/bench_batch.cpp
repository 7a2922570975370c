// Compares the serial reference batch path against the OpenMP path on a
// representative verification workload and prints throughput for both.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "warpineq/batch.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

double checksum(const std::vector<warpineq::InequalityReport>& reports) {
    double s = 0.0;
    for (const auto& r : reports) s += r.margin;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace warpineq;
    int count = 200;
    if (argc > 1) count = std::stoi(argv[1]);

    ManifoldModel model(5, make_builtin_profile(ProfileFamily::hyperbolic));
    BumpSampler sampler(20240817ULL, 0.5, 10.0, 0.6);
    std::vector<VerifyCase> cases;
    cases.reserve(count);
    for (int i = 0; i < count; ++i) {
        VerifyCase c;
        c.id = InequalityId::rellich;
        c.u = sampler.next();
        cases.push_back(std::move(c));
    }
    EvaluateOptions opt;

    auto t0 = Clock::now();
    const auto serial = run_batch_serial(model, cases, opt);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel = run_batch(model, cases, opt, 0);
    const double t_parallel = seconds_since(t0);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("cases: %d (rellich suite, hyperbolic N=5)\n", count);
    std::printf("serial reference: %8.3f s  (%.1f cases/s)  checksum %.12e\n", t_serial,
                count / t_serial, checksum(serial));
    std::printf("openmp x%-2d      : %8.3f s  (%.1f cases/s)  checksum %.12e\n", threads,
                t_parallel, count / t_parallel, checksum(parallel));
    std::printf("speedup: %.2fx\n", t_serial / t_parallel);
    const bool identical = checksum(serial) == checksum(parallel);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
