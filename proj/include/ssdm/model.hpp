#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ssdm/layers.hpp"
#include "ssdm/rng.hpp"
#include "ssdm/tensor.hpp"

namespace ssdm {

// Parameter tensors in declaration order (body layers first, then head; each
// trainable layer contributes weight then bias). Order is the serialization
// order, so it must stay stable.
template <typename T>
struct ModelT {
    NetworkSpec spec;
    std::vector<std::pair<std::string, TensorT<T>>> params;
    std::uint64_t rng_seed = 0;

    TensorT<T>& param(const std::string& name) {
        for (auto& [n, t] : params) {
            if (n == name) return t;
        }
        throw parameter_error("model has no parameter named " + name);
    }
    const TensorT<T>& param(const std::string& name) const {
        for (const auto& [n, t] : params) {
            if (n == name) return t;
        }
        throw parameter_error("model has no parameter named " + name);
    }
    bool has_param(const std::string& name) const {
        for (const auto& [n, t] : params) {
            if (n == name) return true;
        }
        return false;
    }

    std::vector<std::string> body_param_names() const {
        std::vector<std::string> names;
        for (const auto& [n, t] : params) {
            if (n.rfind("body.", 0) == 0) names.push_back(n);
        }
        return names;
    }

    template <typename U>
    ModelT<U> cast() const {
        ModelT<U> out;
        out.spec = spec;
        out.rng_seed = rng_seed;
        for (const auto& [n, t] : params) out.params.emplace_back(n, t.template cast<U>());
        return out;
    }
};

using Model = ModelT<float>;
using Model64 = ModelT<double>;

namespace detail {

template <typename T>
void init_layer_params(std::vector<std::pair<std::string, TensorT<T>>>& out,
                       const std::string& prefix, const std::vector<LayerSpec>& layers, Rng& rng) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const LayerSpec& l = layers[i];
        if (!l.trainable()) continue;
        const std::string base = prefix + "." + std::to_string(i);
        if (l.kind == LayerKind::dense) {
            TensorT<T> w({l.out_features, l.in_features});
            const double bound = std::sqrt(6.0 / l.in_features);  // Kaiming uniform, fan-in
            for (auto& v : w.data) v = static_cast<T>(rng.uniform(-bound, bound));
            out.emplace_back(base + ".weight", std::move(w));
            out.emplace_back(base + ".bias", TensorT<T>({l.out_features}));
        } else {
            TensorT<T> w({l.out_channels, l.in_channels, l.kernel, l.kernel});
            const double fan_in = static_cast<double>(l.in_channels) * l.kernel * l.kernel;
            const double bound = std::sqrt(6.0 / fan_in);
            for (auto& v : w.data) v = static_cast<T>(rng.uniform(-bound, bound));
            out.emplace_back(base + ".weight", std::move(w));
            out.emplace_back(base + ".bias", TensorT<T>({l.out_channels}));
        }
    }
}

}  // namespace detail

template <typename T = float>
ModelT<T> init_model(const NetworkSpec& spec, std::uint64_t seed) {
    infer_shapes(spec);  // validates
    ModelT<T> m;
    m.spec = spec;
    m.rng_seed = seed;
    Rng rng(seed);
    detail::init_layer_params(m.params, "body", spec.body, rng);
    detail::init_layer_params(m.params, "head", spec.head, rng);
    return m;
}

// Swaps in a freshly initialized head sized for n_classes. Body parameters
// are carried over bitwise.
template <typename T>
ModelT<T> replace_head(const ModelT<T>& model, int n_classes, std::uint64_t seed) {
    if (n_classes < 2) throw parameter_error("replace_head: n_classes must be >= 2");
    NetworkSpec spec = model.spec;
    bool resized = false;
    for (auto it = spec.head.rbegin(); it != spec.head.rend(); ++it) {
        if (it->kind == LayerKind::dense) {
            it->out_features = n_classes;
            resized = true;
            break;
        }
    }
    if (!resized) throw spec_error("replace_head: head has no dense classification layer");
    infer_shapes(spec);

    ModelT<T> out;
    out.spec = spec;
    out.rng_seed = seed;
    for (const auto& [n, t] : model.params) {
        if (n.rfind("body.", 0) == 0) out.params.emplace_back(n, t);
    }
    Rng rng(seed);
    detail::init_layer_params(out.params, "head", spec.head, rng);
    return out;
}

}  // namespace ssdm
