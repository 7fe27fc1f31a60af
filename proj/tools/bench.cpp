// Compares the serial reference kernels against the OpenMP ones on one
// full solve and on the dense solve alone, and checks that both produce
// bitwise-identical results.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frbc/thomas_fermi.hpp"

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Serial vs OpenMP kernel benchmark"};
    int truncation = 50;
    int digits = 50;
    int iterations = 10;
    app.add_option("--n", truncation, "Basis truncation order");
    app.add_option("--digits", digits, "Working digits");
    app.add_option("--iterations", iterations, "Quasilinearization iterations");
    CLI11_PARSE(app, argc, argv);

    const frbc::PrecisionContext ctx(digits);
    frbc::TfConfig cfg = frbc::TfConfig::defaults(ctx);
    cfg.truncation = truncation;
    cfg.iterations = iterations;

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled in this build\n");
#endif
    std::printf("solve: N=%d digits=%d iterations=%d\n", truncation, digits, iterations);

    cfg.exec = frbc::Exec::serial;
    auto t0 = std::chrono::steady_clock::now();
    frbc::TfRun serial = frbc::solve_thomas_fermi(cfg, ctx);
    const double serial_ms = ms_since(t0);

    cfg.exec = frbc::Exec::parallel;
    t0 = std::chrono::steady_clock::now();
    frbc::TfRun parallel = frbc::solve_thomas_fermi(cfg, ctx);
    const double parallel_ms = ms_since(t0);

    bool same = serial.solution.coeffs().size() == parallel.solution.coeffs().size();
    for (std::size_t i = 0; same && i < serial.solution.coeffs().size(); ++i) {
        same = identical(serial.solution.coeffs()[i], parallel.solution.coeffs()[i]);
    }

    std::printf("serial   %10.1f ms\n", serial_ms);
    std::printf("parallel %10.1f ms   speedup %.2fx\n", parallel_ms,
                serial_ms / parallel_ms);
    std::printf("coefficients bitwise identical: %s\n", same ? "yes" : "NO");
    return same ? 0 : 1;
}
