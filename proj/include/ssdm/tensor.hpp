#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "ssdm/errors.hpp"

namespace ssdm {

// Dense row-major n-d array. Carrier for images, parameters, activations and
// gradients. float for training, double for gradient checking.
template <typename T>
struct TensorT {
    std::vector<int> shape;
    std::vector<T> data;

    TensorT() = default;
    explicit TensorT(std::vector<int> s) : shape(std::move(s)), data(count(shape), T(0)) {}
    TensorT(std::vector<int> s, std::vector<T> d) : shape(std::move(s)), data(std::move(d)) {
        if (data.size() != count(shape)) {
            throw dimension_error("tensor data length does not match shape product");
        }
    }

    static std::size_t count(const std::vector<int>& s) {
        std::size_t n = 1;
        for (int d : s) {
            if (d <= 0) throw dimension_error("tensor dimensions must be positive");
            n *= static_cast<std::size_t>(d);
        }
        return n;
    }

    std::size_t size() const { return data.size(); }
    int dim(std::size_t i) const { return shape.at(i); }

    T* ptr() { return data.data(); }
    const T* ptr() const { return data.data(); }

    T& operator[](std::size_t i) { return data[i]; }
    const T& operator[](std::size_t i) const { return data[i]; }

    // (n,c,h,w) indexing for 4-d tensors
    T& at4(int n, int c, int h, int w) {
        return data[((static_cast<std::size_t>(n) * shape[1] + c) * shape[2] + h) * shape[3] + w];
    }
    const T& at4(int n, int c, int h, int w) const {
        return data[((static_cast<std::size_t>(n) * shape[1] + c) * shape[2] + h) * shape[3] + w];
    }

    bool same_shape(const TensorT& other) const { return shape == other.shape; }

    bool all_finite() const {
        for (const T& v : data) {
            if (!std::isfinite(static_cast<double>(v))) return false;
        }
        return true;
    }

    template <typename U>
    TensorT<U> cast() const {
        TensorT<U> out;
        out.shape = shape;
        out.data.resize(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
        return out;
    }
};

using Tensor = TensorT<float>;
using Tensor64 = TensorT<double>;

template <typename T>
std::string shape_string(const TensorT<T>& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < t.shape.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t.shape[i]);
    }
    return s + "]";
}

}  // namespace ssdm
