#pragma once

#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ssdm/net.hpp"

namespace ssdm {

// SGD with momentum: v <- momentum*v + g ; p <- p - lr*v.
// Velocity is persisted per parameter across steps. Frozen parameters are
// left bitwise untouched (no velocity update either).
template <typename T>
class SgdOptimizer {
public:
    SgdOptimizer(double lr, double momentum = 0.9) : lr_(lr), momentum_(momentum) {
        if (lr < 0) throw parameter_error("sgd: learning rate must be non-negative");
        if (momentum < 0 || momentum >= 1) throw parameter_error("sgd: momentum must be in [0,1)");
    }

    double learning_rate() const { return lr_; }
    void set_learning_rate(double lr) { lr_ = lr; }

    void step(ModelT<T>& m, const GradMap<T>& grads,
              const std::set<std::string>* frozen = nullptr) {
        if (grads.size() != m.params.size()) {
            throw dimension_error("sgd: gradient map does not match model parameters");
        }
        if (velocity_.empty()) {
            for (const auto& [name, t] : m.params) velocity_.emplace_back(name, TensorT<T>(t.shape));
        }
        for (std::size_t i = 0; i < m.params.size(); ++i) {
            auto& [pname, p] = m.params[i];
            const auto& [gname, g] = grads[i];
            if (pname != gname || !p.same_shape(g)) {
                throw dimension_error("sgd: gradient entry mismatch for " + pname);
            }
            if (frozen && frozen->count(pname)) continue;
            TensorT<T>& v = velocity_[i].second;
            for (std::size_t j = 0; j < p.size(); ++j) {
                v[j] = static_cast<T>(momentum_) * v[j] + g[j];
                p[j] -= static_cast<T>(lr_) * v[j];
                if (!std::isfinite(static_cast<double>(p[j]))) {
                    throw numeric_error("sgd: non-finite parameter update in " + pname);
                }
            }
        }
    }

private:
    double lr_;
    double momentum_;
    std::vector<std::pair<std::string, TensorT<T>>> velocity_;
};

}  // namespace ssdm
