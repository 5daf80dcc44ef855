#pragma once

// Monte Carlo driver with deterministic chunked reduction. Samples are
// partitioned into fixed-size chunks; each chunk's partial sums are computed
// sequentially and combined in chunk-index order, so the result is
// bit-identical for any worker count. Workers copy the integrand, so
// integrands may keep mutable scratch buffers.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

#include "lpsect/rng.hpp"

namespace lpsect {

struct MCConfig {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    std::uint32_t chunk = 65536;
    int workers = 1;
};

struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct Partial {
    double sum = 0.0;
    double sumsq = 0.0;
};

// Kahan-compensated accumulator.
struct Kahan {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

}  // namespace detail

// Mean of integrand(stream) over `samples` independent streams.
template <class F>
Estimate mc_mean(const MCConfig& mc, F integrand) {
    if (mc.samples == 0) throw std::invalid_argument("mc_mean: samples must be positive");
    if (mc.chunk == 0) throw std::invalid_argument("mc_mean: chunk must be positive");

    const std::uint64_t nchunks = (mc.samples + mc.chunk - 1) / mc.chunk;
    std::vector<detail::Partial> partial(nchunks);

    auto run_chunks = [&](std::uint64_t c0, std::uint64_t c1, F f) {
        for (std::uint64_t c = c0; c < c1; ++c) {
            const std::uint64_t lo = c * mc.chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(lo + mc.chunk, mc.samples);
            detail::Kahan sum, sumsq;
            for (std::uint64_t k = lo; k < hi; ++k) {
                SampleStream stream(mc.seed, k);
                const double v = f(stream);
                sum.add(v);
                sumsq.add(v * v);
            }
            partial[c] = {sum.s, sumsq.s};
        }
    };

    const int workers = mc.workers > 1 ? mc.workers : 1;
    if (workers == 1 || nchunks == 1) {
        run_chunks(0, nchunks, integrand);
    } else {
        const int w = static_cast<int>(std::min<std::uint64_t>(workers, nchunks));
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(w));
        for (int t = 0; t < w; ++t) {
            const std::uint64_t c0 = nchunks * static_cast<std::uint64_t>(t) / static_cast<std::uint64_t>(w);
            const std::uint64_t c1 = nchunks * (static_cast<std::uint64_t>(t) + 1) / static_cast<std::uint64_t>(w);
            pool.emplace_back([&run_chunks, c0, c1, integrand]() { run_chunks(c0, c1, integrand); });
        }
        for (auto& th : pool) th.join();
    }

    detail::Kahan sum, sumsq;
    for (const auto& p : partial) {
        sum.add(p.sum);
        sumsq.add(p.sumsq);
    }

    const double n = static_cast<double>(mc.samples);
    const double mean = sum.s / n;
    double var = 0.0;
    if (mc.samples > 1) {
        var = (sumsq.s - n * mean * mean) / (n - 1.0);
        if (var < 0.0) var = 0.0;
    }
    return Estimate{mean, std::sqrt(var / n), mc.samples, mc.seed};
}

// Scale an estimate by a positive constant (value and error together).
inline Estimate scale_estimate(Estimate e, double factor) {
    e.value *= factor;
    e.std_error *= std::fabs(factor);
    return e;
}

inline double combined_sigma(const Estimate& a, const Estimate& b) {
    return std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
}

// One-sided check a <= b with n-sigma slack. The absolute epsilon keeps
// zero-variance comparisons (constant integrands) from failing on rounding.
inline bool leq_within(const Estimate& a, const Estimate& b, double nsigma) {
    return a.value <= b.value + nsigma * combined_sigma(a, b) + 1e-12 * (1.0 + std::fabs(b.value));
}

}  // namespace lpsect
