#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace gwci {

// All information quantities are in bits.
inline constexpr double kInfoClampEps = 1e-12;

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline double entropy_bits(std::span<const double> p) {
    double s = 0.0;
    for (double v : p) s -= xlog2x(v);
    return s;
}

inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Tiny negative values from float cancellation are snapped to exact zero so
// downstream constraint checks are stable.
inline double clamp_info(double v) {
    return (v < 0.0 && v > -kInfoClampEps) ? 0.0 : v;
}

struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    std::span<const double> row(std::size_t i) const { return {a.data() + i * cols, cols}; }

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

// xoshiro-style splitmix for reproducible cross-platform streams
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return (next() >> 11) * 0x1.0p-53; }
    // Exp(1) draws normalized -> Dirichlet(1) on the simplex
    void dirichlet_row(std::span<double> out) {
        double s = 0.0;
        for (double& v : out) {
            double u = uniform();
            v = -std::log(u > 0 ? u : 5e-324);
            s += v;
        }
        for (double& v : out) v /= s;
    }
};

}  // namespace gwci
