#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ssdm/model.hpp"

namespace ssdm {

template <typename T>
using GradMap = std::vector<std::pair<std::string, TensorT<T>>>;

namespace detail {

// C[M,N] (+)= A[M,K] * B[K,N], row-major. Fixed accumulation order keeps
// results bit-reproducible.
template <typename T>
void gemm_nn(std::size_t M, std::size_t N, std::size_t K, const T* A, const T* B, T* C,
             bool accumulate) {
    if (!accumulate) std::fill(C, C + M * N, T(0));
    for (std::size_t i = 0; i < M; ++i) {
        T* crow = C + i * N;
        const T* arow = A + i * K;
        for (std::size_t k = 0; k < K; ++k) {
            const T a = arow[k];
            const T* brow = B + k * N;
            for (std::size_t j = 0; j < N; ++j) crow[j] += a * brow[j];
        }
    }
}

// C[M,N] (+)= A[M,K] * B[N,K]^T
template <typename T>
void gemm_nt(std::size_t M, std::size_t N, std::size_t K, const T* A, const T* B, T* C,
             bool accumulate) {
    for (std::size_t i = 0; i < M; ++i) {
        const T* arow = A + i * K;
        for (std::size_t j = 0; j < N; ++j) {
            const T* brow = B + j * K;
            T acc = 0;
            for (std::size_t k = 0; k < K; ++k) acc += arow[k] * brow[k];
            T& c = C[i * N + j];
            c = accumulate ? c + acc : acc;
        }
    }
}

// C[M,N] (+)= A[K,M]^T * B[K,N]
template <typename T>
void gemm_tn(std::size_t M, std::size_t N, std::size_t K, const T* A, const T* B, T* C,
             bool accumulate) {
    if (!accumulate) std::fill(C, C + M * N, T(0));
    for (std::size_t k = 0; k < K; ++k) {
        const T* arow = A + k * M;
        const T* brow = B + k * N;
        for (std::size_t i = 0; i < M; ++i) {
            const T a = arow[i];
            T* crow = C + i * N;
            for (std::size_t j = 0; j < N; ++j) crow[j] += a * brow[j];
        }
    }
}

// Unrolls conv patches of one sample into cols[C*k*k, OH*OW]; zero padding.
template <typename T>
void im2col(const T* x, int C, int H, int W, int k, int stride, int pad, int OH, int OW, T* cols) {
    const std::size_t P = static_cast<std::size_t>(OH) * OW;
    std::size_t row = 0;
    for (int c = 0; c < C; ++c) {
        const T* xc = x + static_cast<std::size_t>(c) * H * W;
        for (int ki = 0; ki < k; ++ki) {
            for (int kj = 0; kj < k; ++kj, ++row) {
                T* out = cols + row * P;
                for (int oy = 0; oy < OH; ++oy) {
                    const int iy = oy * stride + ki - pad;
                    if (iy < 0 || iy >= H) {
                        std::fill(out + static_cast<std::size_t>(oy) * OW,
                                  out + static_cast<std::size_t>(oy + 1) * OW, T(0));
                        continue;
                    }
                    const T* xrow = xc + static_cast<std::size_t>(iy) * W;
                    for (int ox = 0; ox < OW; ++ox) {
                        const int ix = ox * stride + kj - pad;
                        out[static_cast<std::size_t>(oy) * OW + ox] =
                            (ix >= 0 && ix < W) ? xrow[ix] : T(0);
                    }
                }
            }
        }
    }
}

// Scatters col-gradients back onto the input image (accumulating).
template <typename T>
void col2im_add(const T* cols, int C, int H, int W, int k, int stride, int pad, int OH, int OW,
                T* dx) {
    const std::size_t P = static_cast<std::size_t>(OH) * OW;
    std::size_t row = 0;
    for (int c = 0; c < C; ++c) {
        T* dxc = dx + static_cast<std::size_t>(c) * H * W;
        for (int ki = 0; ki < k; ++ki) {
            for (int kj = 0; kj < k; ++kj, ++row) {
                const T* in = cols + row * P;
                for (int oy = 0; oy < OH; ++oy) {
                    const int iy = oy * stride + ki - pad;
                    if (iy < 0 || iy >= H) continue;
                    T* dxrow = dxc + static_cast<std::size_t>(iy) * W;
                    for (int ox = 0; ox < OW; ++ox) {
                        const int ix = ox * stride + kj - pad;
                        if (ix >= 0 && ix < W) {
                            dxrow[ix] += in[static_cast<std::size_t>(oy) * OW + ox];
                        }
                    }
                }
            }
        }
    }
}

inline std::string param_base_name(const NetworkSpec& spec, std::size_t layer_index) {
    if (layer_index < spec.body.size()) {
        return "body." + std::to_string(layer_index);
    }
    return "head." + std::to_string(layer_index - spec.body.size());
}

}  // namespace detail

template <typename T>
struct ForwardTrace {
    // acts[0] = input batch; acts[i+1] = output of layer i
    std::vector<TensorT<T>> acts;
};

// Runs the network on a batch [N,C,H,W] and returns class-probability rows
// [N,n_classes]. When trace is non-null all intermediate activations are kept
// for a subsequent backward pass.
template <typename T>
TensorT<T> forward(const ModelT<T>& m, const TensorT<T>& batch, ForwardTrace<T>* trace = nullptr) {
    const NetworkSpec& spec = m.spec;
    if (batch.shape.size() != 4 || batch.shape[1] != spec.input.c ||
        batch.shape[2] != spec.input.h || batch.shape[3] != spec.input.w) {
        throw dimension_error("forward: batch shape " + shape_string(batch) +
                              " does not match network input");
    }
    const int N = batch.shape[0];
    if (trace) {
        trace->acts.clear();
        trace->acts.push_back(batch);
    }

    TensorT<T> cur = batch;
    std::vector<T> cols;
    for (std::size_t li = 0; li < spec.layer_count(); ++li) {
        const LayerSpec& l = spec.layer(li);
        switch (l.kind) {
            case LayerKind::dense: {
                const TensorT<T>& w = m.param(detail::param_base_name(spec, li) + ".weight");
                const TensorT<T>& b = m.param(detail::param_base_name(spec, li) + ".bias");
                TensorT<T> out({N, l.out_features});
                detail::gemm_nt(static_cast<std::size_t>(N), l.out_features, l.in_features,
                                cur.ptr(), w.ptr(), out.ptr(), false);
                for (int n = 0; n < N; ++n) {
                    T* row = out.ptr() + static_cast<std::size_t>(n) * l.out_features;
                    for (int o = 0; o < l.out_features; ++o) row[o] += b[o];
                }
                cur = std::move(out);
                break;
            }
            case LayerKind::conv2d: {
                const TensorT<T>& w = m.param(detail::param_base_name(spec, li) + ".weight");
                const TensorT<T>& b = m.param(detail::param_base_name(spec, li) + ".bias");
                const int C = cur.shape[1], H = cur.shape[2], W = cur.shape[3];
                const int OH = (H + 2 * l.padding - l.kernel) / l.stride + 1;
                const int OW = (W + 2 * l.padding - l.kernel) / l.stride + 1;
                const std::size_t CK = static_cast<std::size_t>(C) * l.kernel * l.kernel;
                const std::size_t P = static_cast<std::size_t>(OH) * OW;
                TensorT<T> out({N, l.out_channels, OH, OW});
                cols.resize(CK * P);
                for (int n = 0; n < N; ++n) {
                    detail::im2col(cur.ptr() + static_cast<std::size_t>(n) * C * H * W, C, H, W,
                                   l.kernel, l.stride, l.padding, OH, OW, cols.data());
                    T* yn = out.ptr() + static_cast<std::size_t>(n) * l.out_channels * P;
                    detail::gemm_nn(static_cast<std::size_t>(l.out_channels), P, CK, w.ptr(),
                                    cols.data(), yn, false);
                    for (int o = 0; o < l.out_channels; ++o) {
                        T* orow = yn + static_cast<std::size_t>(o) * P;
                        for (std::size_t p = 0; p < P; ++p) orow[p] += b[o];
                    }
                }
                cur = std::move(out);
                break;
            }
            case LayerKind::relu: {
                TensorT<T> out = cur;
                for (auto& v : out.data) v = v > T(0) ? v : T(0);
                cur = std::move(out);
                break;
            }
            case LayerKind::maxpool2d: {
                const int C = cur.shape[1], H = cur.shape[2], W = cur.shape[3];
                const int OH = (H - l.kernel) / l.stride + 1;
                const int OW = (W - l.kernel) / l.stride + 1;
                TensorT<T> out({N, C, OH, OW});
                for (int n = 0; n < N; ++n) {
                    for (int c = 0; c < C; ++c) {
                        const T* xc = cur.ptr() + (static_cast<std::size_t>(n) * C + c) * H * W;
                        T* oc = out.ptr() + (static_cast<std::size_t>(n) * C + c) * OH * OW;
                        for (int oy = 0; oy < OH; ++oy) {
                            for (int ox = 0; ox < OW; ++ox) {
                                T best = xc[static_cast<std::size_t>(oy * l.stride) * W +
                                            ox * l.stride];
                                for (int ki = 0; ki < l.kernel; ++ki) {
                                    const T* xrow =
                                        xc + static_cast<std::size_t>(oy * l.stride + ki) * W;
                                    for (int kj = 0; kj < l.kernel; ++kj) {
                                        const T v = xrow[ox * l.stride + kj];
                                        if (v > best) best = v;
                                    }
                                }
                                oc[static_cast<std::size_t>(oy) * OW + ox] = best;
                            }
                        }
                    }
                }
                cur = std::move(out);
                break;
            }
            case LayerKind::flatten: {
                TensorT<T> out = cur;
                out.shape = {N, static_cast<int>(cur.size() / N)};
                cur = std::move(out);
                break;
            }
            case LayerKind::softmax_output: {
                const int K = cur.shape[1];
                TensorT<T> out({N, K});
                for (int n = 0; n < N; ++n) {
                    const T* z = cur.ptr() + static_cast<std::size_t>(n) * K;
                    T* p = out.ptr() + static_cast<std::size_t>(n) * K;
                    T zmax = z[0];
                    for (int i = 1; i < K; ++i) zmax = std::max(zmax, z[i]);
                    if (!std::isfinite(static_cast<double>(zmax))) {
                        throw numeric_error("forward: non-finite logits before softmax");
                    }
                    T sum = 0;
                    for (int i = 0; i < K; ++i) {
                        p[i] = std::exp(z[i] - zmax);
                        sum += p[i];
                    }
                    for (int i = 0; i < K; ++i) p[i] /= sum;
                }
                cur = std::move(out);
                break;
            }
        }
        if (trace) trace->acts.push_back(cur);
    }
    return cur;
}

// Mean over the batch of -ln(p[label]) with an eps clamp inside the log.
template <typename T>
double cross_entropy(const TensorT<T>& probs, const std::vector<int>& labels) {
    if (probs.shape.size() != 2 || static_cast<std::size_t>(probs.shape[0]) != labels.size()) {
        throw dimension_error("cross_entropy: probs rows must match label count");
    }
    const int N = probs.shape[0], K = probs.shape[1];
    constexpr double kEps = 1e-12;
    double total = 0;
    for (int n = 0; n < N; ++n) {
        const int y = labels[n];
        if (y < 0 || y >= K) {
            throw index_error("cross_entropy: label " + std::to_string(y) + " out of range");
        }
        const double p = static_cast<double>(probs[static_cast<std::size_t>(n) * K + y]);
        total += -std::log(std::max(p, kEps));
    }
    return total / N;
}

// index of the row maximum; lowest index wins ties
template <typename T>
int argmax_row(const T* row, int k) {
    int best = 0;
    for (int i = 1; i < k; ++i) {
        if (row[i] > row[best]) best = i;
    }
    return best;
}

template <typename T>
std::vector<int> predict_classes(const TensorT<T>& probs) {
    const int N = probs.shape[0], K = probs.shape[1];
    std::vector<int> out(N);
    for (int n = 0; n < N; ++n) out[n] = argmax_row(probs.ptr() + static_cast<std::size_t>(n) * K, K);
    return out;
}

// Backpropagates from the gradient at the logits (pre-softmax) through the
// whole network. Gradient tensors come back in model parameter order.
template <typename T>
GradMap<T> backward_from_dlogits(const ModelT<T>& m, const ForwardTrace<T>& trace,
                                 const TensorT<T>& dlogits) {
    const NetworkSpec& spec = m.spec;
    const std::size_t L = spec.layer_count();
    if (trace.acts.size() != L + 1) throw dimension_error("backward: trace does not match network");
    if (spec.layer(L - 1).kind != LayerKind::softmax_output) {
        throw spec_error("backward: network must end in softmax-output");
    }

    GradMap<T> grads;
    grads.reserve(m.params.size());
    for (const auto& [n, t] : m.params) grads.emplace_back(n, TensorT<T>(t.shape));

    auto grad_of = [&](const std::string& name) -> TensorT<T>& {
        for (auto& [n, t] : grads) {
            if (n == name) return t;
        }
        throw parameter_error("backward: no gradient slot for " + name);
    };

    const int N = trace.acts[0].shape[0];
    TensorT<T> cur = dlogits;  // gradient w.r.t. the softmax-input logits
    std::vector<T> cols, dcols;
    for (std::size_t li = L - 1; li + 1 > 0; --li) {
        const LayerSpec& l = spec.layer(li);
        const TensorT<T>& x = trace.acts[li];
        switch (l.kind) {
            case LayerKind::softmax_output:
                // handled by the loss-to-dlogits conversion
                break;
            case LayerKind::dense: {
                const std::string base = detail::param_base_name(spec, li);
                const TensorT<T>& w = m.param(base + ".weight");
                TensorT<T>& dw = grad_of(base + ".weight");
                TensorT<T>& db = grad_of(base + ".bias");
                // dW[out,in] = dY^T X ; db = column sums ; dX = dY W
                detail::gemm_tn(l.out_features, l.in_features, static_cast<std::size_t>(N),
                                cur.ptr(), x.ptr(), dw.ptr(), false);
                for (int n = 0; n < N; ++n) {
                    const T* row = cur.ptr() + static_cast<std::size_t>(n) * l.out_features;
                    for (int o = 0; o < l.out_features; ++o) db[o] += row[o];
                }
                TensorT<T> dx({N, l.in_features});
                detail::gemm_nn(static_cast<std::size_t>(N), l.in_features, l.out_features,
                                cur.ptr(), w.ptr(), dx.ptr(), false);
                cur = std::move(dx);
                break;
            }
            case LayerKind::conv2d: {
                const std::string base = detail::param_base_name(spec, li);
                const TensorT<T>& w = m.param(base + ".weight");
                TensorT<T>& dw = grad_of(base + ".weight");
                TensorT<T>& db = grad_of(base + ".bias");
                const int C = x.shape[1], H = x.shape[2], W = x.shape[3];
                const int OH = cur.shape[2], OW = cur.shape[3];
                const std::size_t CK = static_cast<std::size_t>(C) * l.kernel * l.kernel;
                const std::size_t P = static_cast<std::size_t>(OH) * OW;
                TensorT<T> dx(x.shape);
                cols.resize(CK * P);
                dcols.resize(CK * P);
                for (int n = 0; n < N; ++n) {
                    const T* xn = x.ptr() + static_cast<std::size_t>(n) * C * H * W;
                    const T* dyn = cur.ptr() + static_cast<std::size_t>(n) * l.out_channels * P;
                    detail::im2col(xn, C, H, W, l.kernel, l.stride, l.padding, OH, OW, cols.data());
                    detail::gemm_nt(static_cast<std::size_t>(l.out_channels), CK, P, dyn,
                                    cols.data(), dw.ptr(), true);
                    for (int o = 0; o < l.out_channels; ++o) {
                        const T* orow = dyn + static_cast<std::size_t>(o) * P;
                        T acc = 0;
                        for (std::size_t p = 0; p < P; ++p) acc += orow[p];
                        db[o] += acc;
                    }
                    detail::gemm_tn(CK, P, static_cast<std::size_t>(l.out_channels), w.ptr(), dyn,
                                    dcols.data(), false);
                    detail::col2im_add(dcols.data(), C, H, W, l.kernel, l.stride, l.padding, OH, OW,
                                       dx.ptr() + static_cast<std::size_t>(n) * C * H * W);
                }
                cur = std::move(dx);
                break;
            }
            case LayerKind::relu: {
                TensorT<T> dx = cur;
                for (std::size_t i = 0; i < dx.size(); ++i) {
                    if (!(x[i] > T(0))) dx[i] = T(0);
                }
                cur = std::move(dx);
                break;
            }
            case LayerKind::maxpool2d: {
                const int C = x.shape[1], H = x.shape[2], W = x.shape[3];
                const int OH = cur.shape[2], OW = cur.shape[3];
                TensorT<T> dx(x.shape);
                for (int n = 0; n < N; ++n) {
                    for (int c = 0; c < C; ++c) {
                        const T* xc = x.ptr() + (static_cast<std::size_t>(n) * C + c) * H * W;
                        const T* gc =
                            cur.ptr() + (static_cast<std::size_t>(n) * C + c) * OH * OW;
                        T* dc = dx.ptr() + (static_cast<std::size_t>(n) * C + c) * H * W;
                        for (int oy = 0; oy < OH; ++oy) {
                            for (int ox = 0; ox < OW; ++ox) {
                                // first maximum in scan order wins, matching forward
                                int by = oy * l.stride, bx = ox * l.stride;
                                T best = xc[static_cast<std::size_t>(by) * W + bx];
                                for (int ki = 0; ki < l.kernel; ++ki) {
                                    for (int kj = 0; kj < l.kernel; ++kj) {
                                        const int iy = oy * l.stride + ki;
                                        const int ix = ox * l.stride + kj;
                                        const T v = xc[static_cast<std::size_t>(iy) * W + ix];
                                        if (v > best) {
                                            best = v;
                                            by = iy;
                                            bx = ix;
                                        }
                                    }
                                }
                                dc[static_cast<std::size_t>(by) * W + bx] +=
                                    gc[static_cast<std::size_t>(oy) * OW + ox];
                            }
                        }
                    }
                }
                cur = std::move(dx);
                break;
            }
            case LayerKind::flatten: {
                TensorT<T> dx = cur;
                dx.shape = x.shape;
                cur = std::move(dx);
                break;
            }
        }
        if (li == 0) break;
    }
    return grads;
}

template <typename T>
struct LossGrads {
    double loss = 0;
    TensorT<T> probs;
    GradMap<T> grads;
};

// Softmax + mean cross-entropy against hard labels in one pass:
// dlogits = (p - onehot)/N.
template <typename T>
LossGrads<T> backward_ce(const ModelT<T>& m, const TensorT<T>& batch,
                         const std::vector<int>& labels) {
    ForwardTrace<T> trace;
    LossGrads<T> out;
    out.probs = forward(m, batch, &trace);
    const int N = out.probs.shape[0], K = out.probs.shape[1];
    if (static_cast<std::size_t>(N) != labels.size()) {
        throw dimension_error("backward: label count does not match batch");
    }
    out.loss = cross_entropy(out.probs, labels);
    TensorT<T> dlogits = out.probs;
    for (int n = 0; n < N; ++n) {
        T* row = dlogits.ptr() + static_cast<std::size_t>(n) * K;
        row[labels[n]] -= T(1);
        for (int i = 0; i < K; ++i) row[i] /= static_cast<T>(N);
    }
    out.grads = backward_from_dlogits(m, trace, dlogits);
    return out;
}

template <typename T>
GradMap<T> backward(const ModelT<T>& m, const TensorT<T>& batch, const std::vector<int>& labels) {
    return backward_ce(m, batch, labels).grads;
}

// Cross-entropy against soft target rows, each sample scaled by weights[n]
// (weights absorb any mean normalization): dlogits_n = w_n (p_n - t_n).
template <typename T>
GradMap<T> backward_soft(const ModelT<T>& m, const TensorT<T>& batch, const TensorT<T>& targets,
                         const std::vector<double>& weights) {
    ForwardTrace<T> trace;
    const TensorT<T> probs = forward(m, batch, &trace);
    const int N = probs.shape[0], K = probs.shape[1];
    if (!probs.same_shape(targets) || weights.size() != static_cast<std::size_t>(N)) {
        throw dimension_error("backward_soft: target/weight shapes do not match batch");
    }
    TensorT<T> dlogits({N, K});
    for (int n = 0; n < N; ++n) {
        const T* p = probs.ptr() + static_cast<std::size_t>(n) * K;
        const T* t = targets.ptr() + static_cast<std::size_t>(n) * K;
        T* d = dlogits.ptr() + static_cast<std::size_t>(n) * K;
        for (int i = 0; i < K; ++i) d[i] = static_cast<T>(weights[n]) * (p[i] - t[i]);
    }
    return backward_from_dlogits(m, trace, dlogits);
}

// Squared-error-on-probabilities term (consistency losses). Per sample:
// L_n = w_n * sum_k (p_k - t_k)^2, backpropagated through the softmax.
template <typename T>
GradMap<T> backward_brier(const ModelT<T>& m, const TensorT<T>& batch, const TensorT<T>& targets,
                          const std::vector<double>& weights) {
    ForwardTrace<T> trace;
    const TensorT<T> probs = forward(m, batch, &trace);
    const int N = probs.shape[0], K = probs.shape[1];
    if (!probs.same_shape(targets) || weights.size() != static_cast<std::size_t>(N)) {
        throw dimension_error("backward_brier: target/weight shapes do not match batch");
    }
    TensorT<T> dlogits({N, K});
    for (int n = 0; n < N; ++n) {
        const T* p = probs.ptr() + static_cast<std::size_t>(n) * K;
        const T* t = targets.ptr() + static_cast<std::size_t>(n) * K;
        T* d = dlogits.ptr() + static_cast<std::size_t>(n) * K;
        double dot = 0;
        for (int i = 0; i < K; ++i) dot += 2.0 * weights[n] * (p[i] - t[i]) * p[i];
        for (int i = 0; i < K; ++i) {
            d[i] = static_cast<T>(p[i] * (2.0 * weights[n] * (p[i] - t[i]) - dot));
        }
    }
    return backward_from_dlogits(m, trace, dlogits);
}

template <typename T>
void add_grads(GradMap<T>& into, const GradMap<T>& other) {
    if (into.size() != other.size()) throw dimension_error("add_grads: mismatched gradient maps");
    for (std::size_t i = 0; i < into.size(); ++i) {
        if (into[i].first != other[i].first || !into[i].second.same_shape(other[i].second)) {
            throw dimension_error("add_grads: mismatched gradient entries");
        }
        for (std::size_t j = 0; j < into[i].second.size(); ++j) {
            into[i].second[j] += other[i].second[j];
        }
    }
}

}  // namespace ssdm
