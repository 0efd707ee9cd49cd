#pragma once

#include <string>
#include <vector>

#include "ssdm/tensor.hpp"

namespace ssdm {

// Labelled examples. ids are optional provenance strings (file paths or
// generated example ids) aligned with images when present.
struct LabelledSet {
    std::vector<Tensor> images;
    std::vector<int> labels;
    std::vector<std::string> ids;
    std::vector<std::string> class_names;

    int n_classes() const { return static_cast<int>(class_names.size()); }
    std::size_t size() const { return images.size(); }

    void push(Tensor img, int label, std::string id = {}) {
        images.push_back(std::move(img));
        labels.push_back(label);
        ids.push_back(std::move(id));
    }

    void validate() const {
        if (images.size() != labels.size() || images.size() != ids.size()) {
            throw data_error("labelled set: misaligned images/labels/ids");
        }
        for (int l : labels) {
            if (l < 0 || l >= n_classes()) throw index_error("labelled set: label out of range");
        }
    }
};

// Unlabelled images only; any withheld ground truth lives in a separate audit
// sidecar owned by the benchmark harness, never by training code.
struct UnlabelledPool {
    std::vector<Tensor> images;
    std::vector<std::string> ids;

    std::size_t size() const { return images.size(); }
};

struct DatasetSplit {
    LabelledSet labelled;
    UnlabelledPool unlabelled;
    std::vector<int> unlabelled_audit_labels;  // sealed sidecar, report-only
    LabelledSet test;
    std::uint64_t seed = 0;
    int labelled_per_class = 0;
    std::vector<std::string> warnings;
};

}  // namespace ssdm
