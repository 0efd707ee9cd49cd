#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ssdm/errors.hpp"

namespace ssdm {

// Deterministic RNG wrapper. mt19937_64 output is fixed by the standard and
// the distributions below are implemented here, so streams are reproducible
// across compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0,1) with 53 random bits
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // unbiased integer in [0,n)
    std::size_t uniform_index(std::size_t n) {
        if (n == 0) throw parameter_error("uniform_index: n must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = gen_();
        while (x >= limit) x = gen_();
        return static_cast<std::size_t>(x % n);
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Box-Muller; draws two uniforms per call, no cached state
    double normal() {
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // Marsaglia-Tsang for shape >= 1, boosted for shape < 1
    double gamma(double shape) {
        if (shape <= 0.0) throw parameter_error("gamma: shape must be positive");
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u > 0 ? u : 1e-300, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double v = 1.0 + c * x;
            if (v <= 0.0) continue;
            v = v * v * v;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (u > 0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double beta(double a, double b) {
        const double x = gamma(a);
        const double y = gamma(b);
        return x / (x + y);
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_index(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

namespace detail {

inline std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t mix_component(std::uint64_t h, std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    return fnv1a_bytes(h, bytes, 8);
}

inline std::uint64_t mix_component(std::uint64_t h, std::string_view s) {
    return fnv1a_bytes(h, s.data(), s.size());
}

inline std::uint64_t mix_component(std::uint64_t h, const std::string& s) {
    return mix_component(h, std::string_view(s));
}

inline std::uint64_t mix_component(std::uint64_t h, const char* s) {
    return mix_component(h, std::string_view(s));
}

inline std::uint64_t mix_component(std::uint64_t h, int v) {
    return mix_component(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
}

// splitmix64 finalizer
inline std::uint64_t finalize_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Derives an independent stream seed from a master seed and a tag path,
// e.g. derive_seed(master, "cell", dataset, network, method, rep).
template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t master, const Parts&... parts) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    h = detail::mix_component(h, master);
    ((h = detail::mix_component(h, parts)), ...);
    return detail::finalize_seed(h);
}

}  // namespace ssdm
