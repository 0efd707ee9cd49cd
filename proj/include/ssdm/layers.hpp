#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssdm/errors.hpp"

namespace ssdm {

enum class LayerKind { dense, conv2d, relu, maxpool2d, flatten, softmax_output };

inline const char* layer_kind_name(LayerKind k) {
    switch (k) {
        case LayerKind::dense: return "dense";
        case LayerKind::conv2d: return "conv2d";
        case LayerKind::relu: return "relu";
        case LayerKind::maxpool2d: return "maxpool2d";
        case LayerKind::flatten: return "flatten";
        case LayerKind::softmax_output: return "softmax-output";
    }
    return "?";
}

inline LayerKind layer_kind_from_name(const std::string& s) {
    if (s == "dense") return LayerKind::dense;
    if (s == "conv2d") return LayerKind::conv2d;
    if (s == "relu") return LayerKind::relu;
    if (s == "maxpool2d") return LayerKind::maxpool2d;
    if (s == "flatten") return LayerKind::flatten;
    if (s == "softmax-output") return LayerKind::softmax_output;
    throw spec_error("unknown layer kind: " + s);
}

struct LayerSpec {
    LayerKind kind = LayerKind::relu;
    // dense
    int in_features = 0;
    int out_features = 0;
    // conv2d / maxpool2d
    int in_channels = 0;
    int out_channels = 0;
    int kernel = 0;
    int stride = 1;
    int padding = 0;

    static LayerSpec dense(int in, int out) {
        LayerSpec l;
        l.kind = LayerKind::dense;
        l.in_features = in;
        l.out_features = out;
        return l;
    }
    static LayerSpec conv2d(int in_c, int out_c, int k, int stride = 1, int padding = -1) {
        LayerSpec l;
        l.kind = LayerKind::conv2d;
        l.in_channels = in_c;
        l.out_channels = out_c;
        l.kernel = k;
        l.stride = stride;
        l.padding = padding < 0 ? k / 2 : padding;  // default: same-size
        return l;
    }
    static LayerSpec relu() {
        LayerSpec l;
        l.kind = LayerKind::relu;
        return l;
    }
    static LayerSpec maxpool2d(int k = 2, int stride = 0) {
        LayerSpec l;
        l.kind = LayerKind::maxpool2d;
        l.kernel = k;
        l.stride = stride > 0 ? stride : k;
        return l;
    }
    static LayerSpec flatten() {
        LayerSpec l;
        l.kind = LayerKind::flatten;
        return l;
    }
    static LayerSpec softmax_output() {
        LayerSpec l;
        l.kind = LayerKind::softmax_output;
        return l;
    }

    bool trainable() const { return kind == LayerKind::dense || kind == LayerKind::conv2d; }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["kind"] = layer_kind_name(kind);
        switch (kind) {
            case LayerKind::dense:
                j["in"] = in_features;
                j["out"] = out_features;
                break;
            case LayerKind::conv2d:
                j["in"] = in_channels;
                j["out"] = out_channels;
                j["kernel"] = kernel;
                j["stride"] = stride;
                j["padding"] = padding;
                break;
            case LayerKind::maxpool2d:
                j["kernel"] = kernel;
                j["stride"] = stride;
                break;
            default:
                break;
        }
        return j;
    }

    static LayerSpec from_json(const nlohmann::json& j) {
        LayerSpec l;
        l.kind = layer_kind_from_name(j.at("kind").get<std::string>());
        switch (l.kind) {
            case LayerKind::dense:
                l.in_features = j.at("in").get<int>();
                l.out_features = j.at("out").get<int>();
                break;
            case LayerKind::conv2d:
                l.in_channels = j.at("in").get<int>();
                l.out_channels = j.at("out").get<int>();
                l.kernel = j.at("kernel").get<int>();
                l.stride = j.at("stride").get<int>();
                l.padding = j.at("padding").get<int>();
                break;
            case LayerKind::maxpool2d:
                l.kernel = j.at("kernel").get<int>();
                l.stride = j.at("stride").get<int>();
                break;
            default:
                break;
        }
        return l;
    }
};

struct Shape3 {
    int c = 0;
    int h = 0;
    int w = 0;
    bool operator==(const Shape3&) const = default;
    std::size_t count() const {
        return static_cast<std::size_t>(c) * static_cast<std::size_t>(h) *
               static_cast<std::size_t>(w);
    }
};

// Shape as seen between layers: either a (c,h,w) image or a flat vector.
struct FlowShape {
    bool flat = false;
    Shape3 img;
    int features = 0;  // valid when flat

    std::size_t count() const { return flat ? static_cast<std::size_t>(features) : img.count(); }
};

// Body + replaceable classification head. The head's last trainable layer
// determines the class count.
struct NetworkSpec {
    Shape3 input;
    std::vector<LayerSpec> body;
    std::vector<LayerSpec> head;

    std::size_t layer_count() const { return body.size() + head.size(); }
    const LayerSpec& layer(std::size_t i) const {
        return i < body.size() ? body[i] : head[i - body.size()];
    }

    int n_classes() const {
        for (auto it = head.rbegin(); it != head.rend(); ++it) {
            if (it->kind == LayerKind::dense) return it->out_features;
        }
        throw spec_error("head has no dense classification layer");
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["input"] = {input.c, input.h, input.w};
        j["body"] = nlohmann::json::array();
        for (const auto& l : body) j["body"].push_back(l.to_json());
        j["head"] = nlohmann::json::array();
        for (const auto& l : head) j["head"].push_back(l.to_json());
        return j;
    }

    static NetworkSpec from_json(const nlohmann::json& j) {
        NetworkSpec s;
        const auto& in = j.at("input");
        s.input = {in.at(0).get<int>(), in.at(1).get<int>(), in.at(2).get<int>()};
        for (const auto& l : j.at("body")) s.body.push_back(LayerSpec::from_json(l));
        for (const auto& l : j.at("head")) s.head.push_back(LayerSpec::from_json(l));
        return s;
    }

    std::string canonical_json() const { return to_json().dump(); }
};

// Runs shape inference across body+head, validating all layer invariants.
// Returns the shape after every layer (index 0 = input shape).
inline std::vector<FlowShape> infer_shapes(const NetworkSpec& spec) {
    if (spec.input.c <= 0 || spec.input.h <= 0 || spec.input.w <= 0) {
        throw spec_error("network input shape must be positive");
    }
    std::vector<FlowShape> shapes;
    FlowShape cur;
    cur.flat = false;
    cur.img = spec.input;
    shapes.push_back(cur);

    const std::size_t n = spec.layer_count();
    bool saw_softmax = false;
    for (std::size_t i = 0; i < n; ++i) {
        const LayerSpec& l = spec.layer(i);
        if (saw_softmax) throw spec_error("softmax-output must be the final layer");
        switch (l.kind) {
            case LayerKind::dense: {
                if (l.in_features <= 0 || l.out_features <= 0) {
                    throw spec_error("dense layer sizes must be positive");
                }
                if (!cur.flat) throw spec_error("dense layer requires flattened input");
                if (cur.features != l.in_features) {
                    throw spec_error("dense in_features " + std::to_string(l.in_features) +
                                     " != incoming " + std::to_string(cur.features));
                }
                cur.features = l.out_features;
                break;
            }
            case LayerKind::conv2d: {
                if (l.in_channels <= 0 || l.out_channels <= 0 || l.kernel <= 0 || l.stride <= 0 ||
                    l.padding < 0) {
                    throw spec_error("conv2d hyperparameters must be positive");
                }
                if (l.kernel % 2 == 0) throw spec_error("conv2d kernel size must be odd");
                if (cur.flat) throw spec_error("conv2d requires image input");
                if (cur.img.c != l.in_channels) {
                    throw spec_error("conv2d in_channels " + std::to_string(l.in_channels) +
                                     " != incoming " + std::to_string(cur.img.c));
                }
                const int oh = (cur.img.h + 2 * l.padding - l.kernel) / l.stride + 1;
                const int ow = (cur.img.w + 2 * l.padding - l.kernel) / l.stride + 1;
                if (oh <= 0 || ow <= 0) throw spec_error("conv2d output collapses to zero size");
                cur.img = {l.out_channels, oh, ow};
                break;
            }
            case LayerKind::relu:
                break;
            case LayerKind::maxpool2d: {
                if (l.kernel <= 0 || l.stride <= 0) {
                    throw spec_error("maxpool2d hyperparameters must be positive");
                }
                if (cur.flat) throw spec_error("maxpool2d requires image input");
                const int oh = (cur.img.h - l.kernel) / l.stride + 1;
                const int ow = (cur.img.w - l.kernel) / l.stride + 1;
                if (oh <= 0 || ow <= 0) throw spec_error("maxpool2d output collapses to zero size");
                cur.img = {cur.img.c, oh, ow};
                break;
            }
            case LayerKind::flatten: {
                if (cur.flat) throw spec_error("flatten applied to already-flat input");
                cur.features = static_cast<int>(cur.img.count());
                cur.flat = true;
                break;
            }
            case LayerKind::softmax_output: {
                if (!cur.flat) throw spec_error("softmax-output requires flat input");
                saw_softmax = true;
                break;
            }
        }
        shapes.push_back(cur);
    }
    if (n > 0 && !spec.head.empty()) {
        if (spec.head.back().kind != LayerKind::softmax_output) {
            throw spec_error("head must end in softmax-output");
        }
        spec.n_classes();  // throws when no dense classification layer exists
    }
    return shapes;
}

// Exact trainable scalar count.
inline long long count_params(const NetworkSpec& spec) {
    infer_shapes(spec);
    long long total = 0;
    for (std::size_t i = 0; i < spec.layer_count(); ++i) {
        const LayerSpec& l = spec.layer(i);
        if (l.kind == LayerKind::dense) {
            total += static_cast<long long>(l.in_features) * l.out_features + l.out_features;
        } else if (l.kind == LayerKind::conv2d) {
            total += static_cast<long long>(l.out_channels) * l.in_channels * l.kernel * l.kernel +
                     l.out_channels;
        }
    }
    return total;
}

// 2x multiply-accumulate count of dense/conv layers for one input.
inline long long count_flops(const NetworkSpec& spec, Shape3 input) {
    NetworkSpec s = spec;
    s.input = input;
    const auto shapes = infer_shapes(s);
    long long total = 0;
    for (std::size_t i = 0; i < s.layer_count(); ++i) {
        const LayerSpec& l = s.layer(i);
        if (l.kind == LayerKind::dense) {
            total += 2LL * l.in_features * l.out_features;
        } else if (l.kind == LayerKind::conv2d) {
            const FlowShape& out = shapes[i + 1];
            const long long macs = static_cast<long long>(l.out_channels) * l.in_channels *
                                   l.kernel * l.kernel * out.img.h * out.img.w;
            total += 2LL * macs;
        }
    }
    return total;
}

inline long long count_flops(const NetworkSpec& spec) { return count_flops(spec, spec.input); }

// Reference architectures. Stand-ins for the compact vs standard-size model
// roles; widths configurable.
inline NetworkSpec compact_net(int n_classes, Shape3 input = {1, 32, 32}, int w1 = 8, int w2 = 16) {
    NetworkSpec s;
    s.input = input;
    s.body = {
        LayerSpec::conv2d(input.c, w1, 3), LayerSpec::relu(), LayerSpec::maxpool2d(2),
        LayerSpec::conv2d(w1, w2, 3),      LayerSpec::relu(), LayerSpec::maxpool2d(2),
    };
    const int flat = w2 * (input.h / 4) * (input.w / 4);
    s.head = {LayerSpec::flatten(), LayerSpec::dense(flat, n_classes),
              LayerSpec::softmax_output()};
    return s;
}

inline NetworkSpec standard_net(int n_classes, Shape3 input = {1, 32, 32}, int w1 = 32, int w2 = 64,
                                int w3 = 64, int w4 = 128) {
    NetworkSpec s;
    s.input = input;
    s.body = {
        LayerSpec::conv2d(input.c, w1, 3), LayerSpec::relu(), LayerSpec::maxpool2d(2),
        LayerSpec::conv2d(w1, w2, 3),      LayerSpec::relu(), LayerSpec::maxpool2d(2),
        LayerSpec::conv2d(w2, w3, 3),      LayerSpec::relu(), LayerSpec::maxpool2d(2),
        LayerSpec::conv2d(w3, w4, 3),      LayerSpec::relu(), LayerSpec::maxpool2d(2),
    };
    const int flat = w4 * (input.h / 16) * (input.w / 16);
    s.head = {LayerSpec::flatten(), LayerSpec::dense(flat, n_classes),
              LayerSpec::softmax_output()};
    return s;
}

// Named network lookup used by the CLI and benchmark configs.
inline NetworkSpec named_network(const std::string& name, int n_classes, Shape3 input) {
    if (name == "compact") return compact_net(n_classes, input);
    if (name == "standard") return standard_net(n_classes, input);
    throw config_error("unknown network name: " + name + " (expected compact|standard)");
}

}  // namespace ssdm
