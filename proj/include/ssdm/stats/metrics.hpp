#pragma once

#include <vector>

#include "ssdm/errors.hpp"

namespace ssdm::stats {

// confusion[i][j] = count of (truth=i, predicted=j)
inline std::vector<std::vector<long long>> confusion_matrix(const std::vector<int>& truth,
                                                            const std::vector<int>& preds,
                                                            int n_classes) {
    if (truth.size() != preds.size()) {
        throw dimension_error("confusion_matrix: truth/prediction lengths differ");
    }
    if (truth.empty()) throw data_error("confusion_matrix: empty input");
    std::vector<std::vector<long long>> m(n_classes, std::vector<long long>(n_classes, 0));
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const int t = truth[i], p = preds[i];
        if (t < 0 || t >= n_classes || p < 0 || p >= n_classes) {
            throw index_error("confusion_matrix: label outside class set");
        }
        m[t][p]++;
    }
    return m;
}

// F1 of one class from a confusion matrix; 0 when precision+recall vanish
inline double class_f1(const std::vector<std::vector<long long>>& cm, int cls) {
    long long tp = cm[cls][cls];
    long long fp = 0, fn = 0;
    for (std::size_t i = 0; i < cm.size(); ++i) {
        if (static_cast<int>(i) != cls) {
            fp += cm[i][cls];
            fn += cm[cls][i];
        }
    }
    const long long denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;
    return 2.0 * tp / static_cast<double>(denom);
}

inline double binary_f1(const std::vector<int>& truth, const std::vector<int>& preds,
                        int positive, int n_classes = 2) {
    if (positive < 0 || positive >= n_classes) {
        throw parameter_error("binary_f1: positive class outside class set");
    }
    return class_f1(confusion_matrix(truth, preds, n_classes), positive);
}

// unweighted mean of per-class F1
inline double macro_f1(const std::vector<int>& truth, const std::vector<int>& preds,
                       int n_classes) {
    const auto cm = confusion_matrix(truth, preds, n_classes);
    double sum = 0;
    for (int c = 0; c < n_classes; ++c) sum += class_f1(cm, c);
    return sum / n_classes;
}

inline double accuracy(const std::vector<int>& truth, const std::vector<int>& preds) {
    if (truth.size() != preds.size() || truth.empty()) {
        throw data_error("accuracy: invalid input lengths");
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) hits += (truth[i] == preds[i]);
    return static_cast<double>(hits) / truth.size();
}

}  // namespace ssdm::stats
