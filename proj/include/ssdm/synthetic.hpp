#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ssdm/data.hpp"
#include "ssdm/rng.hpp"

namespace ssdm {

// Seeded synthetic shape-classification tasks: classes are drawn from a
// catalog of 8 texture/shape families with per-image jitter, scale variation
// and pixel noise. shape_offset selects a disjoint class subset, which gives
// a separate "source" task for pretraining bodies.
struct SyntheticSpec {
    int n_classes = 3;
    int height = 32;
    int width = 32;
    int shape_offset = 0;     // catalog offset; offset 4 = the source task shapes
    double noise = 0.12;      // gaussian pixel noise sigma
    double jitter_frac = 0.12;  // center jitter as a fraction of image size

    static constexpr int kCatalogSize = 8;

    void validate() const {
        if (n_classes < 2) throw parameter_error("synthetic: need at least 2 classes");
        if (shape_offset < 0 || shape_offset + n_classes > kCatalogSize) {
            throw parameter_error("synthetic: class range exceeds the shape catalog");
        }
        if (height < 8 || width < 8) throw parameter_error("synthetic: image too small");
    }
};

namespace detail {

// shape value in [0,1] before noise; coordinates relative to jittered center
inline double shape_value(int catalog_id, double dy, double dx, double r) {
    const double d = std::sqrt(dy * dy + dx * dx);
    switch (catalog_id) {
        case 0:  // filled disk
            return d <= r ? 1.0 : 0.0;
        case 1: {  // cross
            const double t = 0.3 * r;
            const bool in_v = std::abs(dx) <= t && std::abs(dy) <= r;
            const bool in_h = std::abs(dy) <= t && std::abs(dx) <= r;
            return (in_v || in_h) ? 1.0 : 0.0;
        }
        case 2: {  // horizontal stripes inside the disk
            if (d > r) return 0.0;
            const double period = std::max(2.0, r * 0.55);
            return std::fmod(std::abs(dy) + period, 2 * period) < period ? 1.0 : 0.0;
        }
        case 3: {  // checkerboard inside the disk
            if (d > r) return 0.0;
            const double cell = std::max(2.0, r * 0.5);
            const int ix = static_cast<int>(std::floor(dx / cell));
            const int iy = static_cast<int>(std::floor(dy / cell));
            return ((ix + iy) & 1) == 0 ? 1.0 : 0.0;
        }
        case 4:  // ring
            return (d <= r && d >= 0.55 * r) ? 1.0 : 0.0;
        case 5: {  // diagonal stripes inside the disk
            if (d > r) return 0.0;
            const double period = std::max(2.0, r * 0.55);
            return std::fmod(std::abs(dx + dy) + period, 2 * period) < period ? 1.0 : 0.0;
        }
        case 6: {  // square outline
            const double m = std::max(std::abs(dx), std::abs(dy));
            return (m <= r && m >= 0.6 * r) ? 1.0 : 0.0;
        }
        case 7: {  // grid of dots inside the disk
            if (d > r) return 0.0;
            const double cell = std::max(3.0, r * 0.6);
            const double ly = std::fmod(std::abs(dy) + cell / 2, cell) - cell / 2;
            const double lx = std::fmod(std::abs(dx) + cell / 2, cell) - cell / 2;
            return (ly * ly + lx * lx) <= (0.32 * cell) * (0.32 * cell) ? 1.0 : 0.0;
        }
        default:
            return 0.0;
    }
}

inline Tensor render_synthetic(const SyntheticSpec& spec, int catalog_id, Rng& rng) {
    const int H = spec.height, W = spec.width;
    Tensor img({1, H, W});
    const double base_r = 0.32 * std::min(H, W);
    const double r = base_r * rng.uniform(0.75, 1.25);
    const double cy = (H - 1) / 2.0 + rng.uniform(-spec.jitter_frac, spec.jitter_frac) * H;
    const double cx = (W - 1) / 2.0 + rng.uniform(-spec.jitter_frac, spec.jitter_frac) * W;
    const double bg = rng.uniform(0.05, 0.25);
    const double fg = rng.uniform(0.7, 0.95);
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            const double s = shape_value(catalog_id, y - cy, x - cx, r);
            double v = bg + (fg - bg) * s + spec.noise * rng.normal();
            img.ptr()[static_cast<std::size_t>(y) * W + x] =
                static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
    }
    return img;
}

}  // namespace detail

inline const char* synthetic_class_name(int catalog_id) {
    static const char* kNames[SyntheticSpec::kCatalogSize] = {
        "disk", "cross", "stripes", "checker", "ring", "diagstripes", "box", "dots"};
    return kNames[catalog_id];
}

// Balanced, bit-reproducible dataset: image i of class c depends only on
// (seed, c, i), so subsets and pool sizes never shift existing images.
inline LabelledSet generate_synthetic(const SyntheticSpec& spec, int n_per_class,
                                      std::uint64_t seed) {
    spec.validate();
    if (n_per_class < 1) throw parameter_error("synthetic: n_per_class must be >= 1");
    LabelledSet out;
    for (int c = 0; c < spec.n_classes; ++c) {
        out.class_names.push_back(synthetic_class_name(spec.shape_offset + c));
    }
    for (int c = 0; c < spec.n_classes; ++c) {
        for (int i = 0; i < n_per_class; ++i) {
            Rng rng(derive_seed(seed, "synthetic", spec.shape_offset + c, i));
            out.push(detail::render_synthetic(spec, spec.shape_offset + c, rng), c,
                     "syn_" + std::string(synthetic_class_name(spec.shape_offset + c)) + "_" +
                         std::to_string(i));
        }
    }
    return out;
}

}  // namespace ssdm
