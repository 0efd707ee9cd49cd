#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ssdm/net.hpp"
#include "ssdm/rng.hpp"

namespace ssdm {

// Compares analytic gradients against central finite differences on a seeded
// sample of parameters. Intended for float64 models; returns the max relative
// error over the sampled entries.
inline double grad_check(Model64& model, const Tensor64& batch, const std::vector<int>& labels,
                         double h, std::uint64_t seed = 7, int samples_per_tensor = 24) {
    if (h < 1e-7 || h > 1e-4) throw parameter_error("grad_check: h must be in [1e-7, 1e-4]");
    const GradMap<double> analytic = backward(model, batch, labels);

    auto loss_at = [&]() {
        const Tensor64 probs = forward(model, batch);
        return cross_entropy(probs, labels);
    };

    Rng rng(seed);
    double worst = 0;
    for (const auto& [name, grad] : analytic) {
        Tensor64& p = model.param(name);
        const std::size_t n = p.size();
        const int take = static_cast<int>(
            std::min<std::size_t>(n, static_cast<std::size_t>(samples_per_tensor)));
        for (int s = 0; s < take; ++s) {
            const std::size_t idx = rng.uniform_index(n);
            const double orig = p[idx];
            p[idx] = orig + h;
            const double lp = loss_at();
            p[idx] = orig - h;
            const double lm = loss_at();
            p[idx] = orig;
            const double numeric = (lp - lm) / (2 * h);
            const double a = grad[idx];
            const double denom = std::max({std::abs(a), std::abs(numeric), 1e-8});
            worst = std::max(worst, std::abs(a - numeric) / denom);
        }
    }
    return worst;
}

}  // namespace ssdm
