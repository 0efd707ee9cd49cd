#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "ssdm/rng.hpp"
#include "ssdm/tensor.hpp"

namespace ssdm {

enum class TransformKind {
    hflip,
    vflip,
    hvflip,
    rotate,
    zoom,
    brightness,
    gamma,
    box_blur,
    gaussian_blur,
    translate,
    contrast,
    posterize,
};

// One deterministic image transform. p1/p2 meaning depends on the kind:
// rotate: degrees | zoom: factor | brightness: delta | gamma: exponent |
// box_blur: kernel | gaussian_blur: sigma, kernel | translate: dx, dy |
// contrast: factor | posterize: bits.
struct Transform {
    TransformKind kind;
    double p1 = 0;
    double p2 = 0;

    void validate() const {
        switch (kind) {
            case TransformKind::gamma:
                if (!(p1 > 0)) throw parameter_error("gamma: exponent must be > 0");
                break;
            case TransformKind::zoom:
                if (!(p1 >= 0.5 && p1 <= 2.0)) {
                    throw parameter_error("zoom: factor must be in [0.5, 2]");
                }
                break;
            case TransformKind::box_blur:
                if (static_cast<int>(p1) < 1 || static_cast<int>(p1) % 2 == 0) {
                    throw parameter_error("box_blur: kernel must be odd and positive");
                }
                break;
            case TransformKind::gaussian_blur:
                if (!(p1 > 0)) throw parameter_error("gaussian_blur: sigma must be > 0");
                if (static_cast<int>(p2) < 1 || static_cast<int>(p2) % 2 == 0) {
                    throw parameter_error("gaussian_blur: kernel must be odd and positive");
                }
                break;
            case TransformKind::contrast:
                if (!(p1 >= 0)) throw parameter_error("contrast: factor must be >= 0");
                break;
            case TransformKind::posterize:
                if (static_cast<int>(p1) < 1 || static_cast<int>(p1) > 8) {
                    throw parameter_error("posterize: bits must be in [1, 8]");
                }
                break;
            default:
                break;
        }
    }

    static Transform hflip() { return {TransformKind::hflip}; }
    static Transform vflip() { return {TransformKind::vflip}; }
    static Transform hvflip() { return {TransformKind::hvflip}; }
    static Transform rotate(double deg) { return {TransformKind::rotate, deg}; }
    static Transform zoom(double f) { return {TransformKind::zoom, f}; }
    static Transform brightness(double d) { return {TransformKind::brightness, d}; }
    static Transform gamma(double g) { return {TransformKind::gamma, g}; }
    static Transform box_blur(int k) { return {TransformKind::box_blur, double(k)}; }
    static Transform gaussian_blur(double sigma, int k = 5) {
        return {TransformKind::gaussian_blur, sigma, double(k)};
    }
    static Transform translate(double dx, double dy) { return {TransformKind::translate, dx, dy}; }
    static Transform contrast(double c) { return {TransformKind::contrast, c}; }
    static Transform posterize(int bits) { return {TransformKind::posterize, double(bits)}; }
};

namespace detail {

inline float clamp01(float v) { return v < 0.f ? 0.f : (v > 1.f ? 1.f : v); }

// bilinear sample with clamp-to-edge padding
inline float sample_bilinear(const float* img, int h, int w, double y, double x) {
    y = std::clamp(y, 0.0, static_cast<double>(h - 1));
    x = std::clamp(x, 0.0, static_cast<double>(w - 1));
    const int y0 = static_cast<int>(std::floor(y));
    const int x0 = static_cast<int>(std::floor(x));
    const int y1 = std::min(y0 + 1, h - 1);
    const int x1 = std::min(x0 + 1, w - 1);
    const double fy = y - y0, fx = x - x0;
    const double v00 = img[static_cast<std::size_t>(y0) * w + x0];
    const double v01 = img[static_cast<std::size_t>(y0) * w + x1];
    const double v10 = img[static_cast<std::size_t>(y1) * w + x0];
    const double v11 = img[static_cast<std::size_t>(y1) * w + x1];
    return static_cast<float>(v00 * (1 - fy) * (1 - fx) + v01 * (1 - fy) * fx +
                              v10 * fy * (1 - fx) + v11 * fy * fx);
}

// per-channel geometric warp: output(y,x) = input(map(y,x))
template <typename MapFn>
Tensor warp(const Tensor& img, MapFn map) {
    const int C = img.shape[0], H = img.shape[1], W = img.shape[2];
    Tensor out(img.shape);
    for (int c = 0; c < C; ++c) {
        const float* src = img.ptr() + static_cast<std::size_t>(c) * H * W;
        float* dst = out.ptr() + static_cast<std::size_t>(c) * H * W;
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                const auto [sy, sx] = map(y, x);
                dst[static_cast<std::size_t>(y) * W + x] =
                    clamp01(sample_bilinear(src, H, W, sy, sx));
            }
        }
    }
    return out;
}

inline Tensor separable_blur(const Tensor& img, const std::vector<double>& kernel) {
    const int C = img.shape[0], H = img.shape[1], W = img.shape[2];
    const int r = static_cast<int>(kernel.size()) / 2;
    Tensor tmp(img.shape), out(img.shape);
    for (int c = 0; c < C; ++c) {
        const float* src = img.ptr() + static_cast<std::size_t>(c) * H * W;
        float* mid = tmp.ptr() + static_cast<std::size_t>(c) * H * W;
        float* dst = out.ptr() + static_cast<std::size_t>(c) * H * W;
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                double acc = 0;
                for (int i = -r; i <= r; ++i) {
                    const int xi = std::clamp(x + i, 0, W - 1);
                    acc += kernel[i + r] * src[static_cast<std::size_t>(y) * W + xi];
                }
                mid[static_cast<std::size_t>(y) * W + x] = static_cast<float>(acc);
            }
        }
        for (int y = 0; y < H; ++y) {
            for (int x = 0; x < W; ++x) {
                double acc = 0;
                for (int i = -r; i <= r; ++i) {
                    const int yi = std::clamp(y + i, 0, H - 1);
                    acc += kernel[i + r] * mid[static_cast<std::size_t>(yi) * W + x];
                }
                dst[static_cast<std::size_t>(y) * W + x] = clamp01(static_cast<float>(acc));
            }
        }
    }
    return out;
}

}  // namespace detail

// Applies one transform to a [C,H,W] image in [0,1]. Pure and deterministic;
// output keeps the shape and the [0,1] range.
inline Tensor apply(const Transform& t, const Tensor& img) {
    if (img.shape.size() != 3) throw dimension_error("apply: image must be [C,H,W]");
    t.validate();
    const int H = img.shape[1], W = img.shape[2];
    const double cy = (H - 1) / 2.0, cx = (W - 1) / 2.0;
    switch (t.kind) {
        case TransformKind::hflip:
            return detail::warp(img, [&](int y, int x) { return std::pair(double(y), double(W - 1 - x)); });
        case TransformKind::vflip:
            return detail::warp(img, [&](int y, int x) { return std::pair(double(H - 1 - y), double(x)); });
        case TransformKind::hvflip:
            return detail::warp(
                img, [&](int y, int x) { return std::pair(double(H - 1 - y), double(W - 1 - x)); });
        case TransformKind::rotate: {
            const double rad = t.p1 * 3.14159265358979323846 / 180.0;
            const double cs = std::cos(rad), sn = std::sin(rad);
            return detail::warp(img, [&](int y, int x) {
                const double dy = y - cy, dx = x - cx;
                return std::pair(cy + cs * dy - sn * dx, cx + sn * dy + cs * dx);
            });
        }
        case TransformKind::zoom: {
            const double inv = 1.0 / t.p1;
            return detail::warp(img, [&](int y, int x) {
                return std::pair(cy + (y - cy) * inv, cx + (x - cx) * inv);
            });
        }
        case TransformKind::translate:
            return detail::warp(img, [&](int y, int x) {
                return std::pair(y - t.p2, x - t.p1);
            });
        case TransformKind::brightness: {
            Tensor out = img;
            for (auto& v : out.data) v = detail::clamp01(v + static_cast<float>(t.p1));
            return out;
        }
        case TransformKind::gamma: {
            Tensor out = img;
            for (auto& v : out.data) {
                v = detail::clamp01(std::pow(std::max(v, 0.f), static_cast<float>(t.p1)));
            }
            return out;
        }
        case TransformKind::contrast: {
            Tensor out = img;
            for (auto& v : out.data) {
                v = detail::clamp01(static_cast<float>((v - 0.5) * t.p1 + 0.5));
            }
            return out;
        }
        case TransformKind::posterize: {
            const int levels = 1 << static_cast<int>(t.p1);
            Tensor out = img;
            for (auto& v : out.data) {
                v = detail::clamp01(std::round(v * (levels - 1)) / static_cast<float>(levels - 1));
            }
            return out;
        }
        case TransformKind::box_blur: {
            const int k = static_cast<int>(t.p1);
            return detail::separable_blur(img, std::vector<double>(k, 1.0 / k));
        }
        case TransformKind::gaussian_blur: {
            const int k = static_cast<int>(t.p2);
            const int r = k / 2;
            std::vector<double> kernel(k);
            double sum = 0;
            for (int i = -r; i <= r; ++i) {
                kernel[i + r] = std::exp(-0.5 * i * i / (t.p1 * t.p1));
                sum += kernel[i + r];
            }
            for (auto& v : kernel) v /= sum;
            return detail::separable_blur(img, kernel);
        }
    }
    throw parameter_error("apply: unknown transform");
}

// Ordered test-time augmentation set; the identity variant is implicit.
struct TTASet {
    std::vector<Transform> transforms;
    std::size_t variant_count() const { return transforms.size() + 1; }
};

// The default six test-time transforms: flips in all three axes, box blur,
// Gaussian blur, and a mild gamma correction.
inline TTASet default_tta() {
    TTASet t;
    t.transforms = {Transform::hflip(),      Transform::vflip(),
                    Transform::hvflip(),     Transform::box_blur(3),
                    Transform::gaussian_blur(1.0, 5), Transform::gamma(0.8)};
    return t;
}

inline std::vector<Tensor> tta_variants(const TTASet& tta, const Tensor& img) {
    std::vector<Tensor> out;
    out.reserve(tta.transforms.size() + 1);
    out.push_back(img);
    for (const auto& t : tta.transforms) out.push_back(apply(t, img));
    return out;
}

// Parses the comma-separated CLI grammar, e.g.
// "hflip,vflip,hvflip,blur,gblur,gamma:0.8" (case-insensitive).
inline TTASet parse_transforms(const std::string& text) {
    TTASet out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        std::string lower;
        for (char ch : token) lower.push_back(static_cast<char>(std::tolower(ch)));
        std::vector<std::string> parts;
        std::stringstream ts(lower);
        std::string part;
        while (std::getline(ts, part, ':')) parts.push_back(part);
        if (parts.empty()) throw parameter_error("transform list: empty token");
        auto num = [&](std::size_t i, double fallback) {
            if (parts.size() <= i) return fallback;
            try {
                return std::stod(parts[i]);
            } catch (const std::exception&) {
                throw parameter_error("transform list: bad parameter '" + parts[i] + "'");
            }
        };
        const std::string& name = parts[0];
        Transform t = Transform::hflip();
        if (name == "hflip") t = Transform::hflip();
        else if (name == "vflip") t = Transform::vflip();
        else if (name == "hvflip") t = Transform::hvflip();
        else if (name == "rotate") t = Transform::rotate(num(1, 15.0));
        else if (name == "zoom") t = Transform::zoom(num(1, 1.1));
        else if (name == "brightness") t = Transform::brightness(num(1, 0.1));
        else if (name == "gamma") t = Transform::gamma(num(1, 0.8));
        else if (name == "blur") t = Transform::box_blur(static_cast<int>(num(1, 3)));
        else if (name == "gblur") t = Transform::gaussian_blur(num(1, 1.0), static_cast<int>(num(2, 5)));
        else if (name == "translate") t = Transform::translate(num(1, 2.0), num(2, 2.0));
        else if (name == "contrast") t = Transform::contrast(num(1, 1.2));
        else if (name == "posterize") t = Transform::posterize(static_cast<int>(num(1, 4)));
        else throw parameter_error("transform list: unknown transform '" + name + "'");
        t.validate();
        out.transforms.push_back(t);
    }
    return out;
}

enum class AugmentMode { none, weak, strong };

struct AugmentPolicy {
    AugmentMode mode = AugmentMode::none;
    int strong_ops = 2;            // N random ops per image in strong mode
    double strong_magnitude = 0.5; // level in [0,1]
    std::uint64_t seed = 0;

    static AugmentPolicy none() { return {}; }
    static AugmentPolicy weak(std::uint64_t seed) {
        AugmentPolicy p;
        p.mode = AugmentMode::weak;
        p.seed = seed;
        return p;
    }
    static AugmentPolicy strong(std::uint64_t seed, int n_ops = 2, double magnitude = 0.5) {
        AugmentPolicy p;
        p.mode = AugmentMode::strong;
        p.seed = seed;
        p.strong_ops = n_ops;
        p.strong_magnitude = magnitude;
        return p;
    }

    AugmentPolicy with_seed(std::uint64_t s) const {
        AugmentPolicy p = *this;
        p.seed = s;
        return p;
    }
};

// Random horizontal flip (p=0.5) plus an integer translation of up to 12.5%
// of each dimension, edge-padded. Deterministic in (policy.seed, img).
inline Tensor weak_augment(const AugmentPolicy& policy, const Tensor& img) {
    if (policy.mode != AugmentMode::weak) throw parameter_error("weak_augment: policy mode");
    Rng rng(policy.seed);
    const int H = img.shape[1], W = img.shape[2];
    const int max_dx = static_cast<int>(0.125 * W);
    const int max_dy = static_cast<int>(0.125 * H);
    Tensor out = img;
    if (rng.bernoulli(0.5)) out = apply(Transform::hflip(), out);
    const int dx = static_cast<int>(rng.uniform_index(2 * max_dx + 1)) - max_dx;
    const int dy = static_cast<int>(rng.uniform_index(2 * max_dy + 1)) - max_dy;
    if (dx != 0 || dy != 0) out = apply(Transform::translate(dx, dy), out);
    return out;
}

namespace detail {

constexpr int kStrongPoolSize = 8;

inline Transform draw_strong_op(Rng& rng, double m, int H, int W) {
    switch (rng.uniform_index(kStrongPoolSize)) {
        case 0: return Transform::rotate(rng.uniform(-30.0 * m, 30.0 * m));
        case 1:
            return Transform::translate(rng.uniform(-0.25 * m * W, 0.25 * m * W),
                                        rng.uniform(-0.25 * m * H, 0.25 * m * H));
        case 2: return Transform::brightness(rng.uniform(-0.4 * m, 0.4 * m));
        case 3: return Transform::contrast(std::max(0.1, rng.uniform(1 - 0.6 * m, 1 + 0.6 * m)));
        case 4: return Transform::gamma(std::max(0.1, rng.uniform(1 - 0.5 * m, 1 + 0.5 * m)));
        case 5:
            return Transform::posterize(
                std::max(1, 8 - static_cast<int>(rng.uniform_index(1 + static_cast<int>(4 * m)))));
        case 6:
            return Transform::zoom(rng.uniform(std::max(0.5, 1 - 0.3 * m),
                                               std::min(2.0, 1 + 0.3 * m)));
        default: return Transform::hflip();
    }
}

}  // namespace detail

// RandAugment-style chain: N ops sampled uniformly from an 8-op pool with
// magnitude-scaled parameters. Deterministic in (policy.seed, img).
inline Tensor strong_augment(const AugmentPolicy& policy, const Tensor& img,
                             std::vector<Transform>* applied = nullptr) {
    if (policy.mode != AugmentMode::strong) throw parameter_error("strong_augment: policy mode");
    Rng rng(policy.seed);
    Tensor out = img;
    for (int i = 0; i < policy.strong_ops; ++i) {
        const Transform t =
            detail::draw_strong_op(rng, policy.strong_magnitude, img.shape[1], img.shape[2]);
        if (applied) applied->push_back(t);
        out = apply(t, out);
    }
    return out;
}

// Dispatch helper used by training loops.
inline Tensor augment(const AugmentPolicy& policy, const Tensor& img) {
    switch (policy.mode) {
        case AugmentMode::none: return img;
        case AugmentMode::weak: return weak_augment(policy, img);
        case AugmentMode::strong: return strong_augment(policy, img);
    }
    return img;
}

}  // namespace ssdm
