#pragma once

#include <algorithm>
#include <filesystem>
#include <numeric>
#include <string>
#include <vector>

#include "ssdm/data.hpp"
#include "ssdm/image_io.hpp"
#include "ssdm/rng.hpp"

namespace ssdm {

// Loads a class-per-subdirectory image folder (binary PGM/PPM), resizing
// everything to (channels,height,width). Class ids follow sorted directory
// names; file order within a class is sorted for reproducibility.
inline LabelledSet load_image_folder(const std::string& path, int channels, int height,
                                     int width) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(path)) throw data_error(path + ": not a directory");

    std::vector<std::string> class_dirs;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_directory()) class_dirs.push_back(entry.path().filename().string());
    }
    std::sort(class_dirs.begin(), class_dirs.end());
    if (class_dirs.size() < 2) throw data_error(path + ": need at least two class directories");

    LabelledSet out;
    out.class_names = class_dirs;
    for (std::size_t c = 0; c < class_dirs.size(); ++c) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(fs::path(path) / class_dirs[c])) {
            if (entry.is_regular_file()) files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
            throw data_error(path + ": class directory '" + class_dirs[c] + "' has no images");
        }
        for (const auto& file : files) {
            Tensor img = read_pnm(file);
            if (img.shape[0] != channels) {
                if (channels == 1 && img.shape[0] == 3) {
                    // luma conversion for colour inputs feeding grayscale models
                    Tensor gray({1, img.shape[1], img.shape[2]});
                    const std::size_t plane =
                        static_cast<std::size_t>(img.shape[1]) * img.shape[2];
                    for (std::size_t i = 0; i < plane; ++i) {
                        gray[i] = 0.299f * img[i] + 0.587f * img[plane + i] +
                                  0.114f * img[2 * plane + i];
                    }
                    img = std::move(gray);
                } else {
                    throw data_error(file + ": channel count does not match dataset spec");
                }
            }
            out.push(resize_bilinear(img, height, width), static_cast<int>(c), file);
        }
    }
    return out;
}

// Stratified seeded split: per class, floor(test_frac*n) (at least 1) images
// go to test, then L to the labelled set, and the remainder to the unlabelled
// pool (labels withheld into the audit sidecar).
inline DatasetSplit make_split(const LabelledSet& examples, double test_frac, int L,
                               std::uint64_t seed) {
    examples.validate();
    if (!(test_frac > 0.0 && test_frac < 1.0)) {
        throw parameter_error("make_split: test_frac must be in (0,1)");
    }
    if (L < 1) throw parameter_error("make_split: L must be >= 1");

    DatasetSplit split;
    split.seed = seed;
    split.labelled_per_class = L;
    split.labelled.class_names = examples.class_names;
    split.test.class_names = examples.class_names;

    for (int c = 0; c < examples.n_classes(); ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < examples.size(); ++i) {
            if (examples.labels[i] == c) idx.push_back(i);
        }
        if (idx.size() < 2) {
            throw data_error("make_split: class '" + examples.class_names[c] +
                             "' needs at least 2 images");
        }
        Rng rng(derive_seed(seed, "split", c));
        rng.shuffle(idx);

        const std::size_t n_test =
            std::max<std::size_t>(1, static_cast<std::size_t>(test_frac * idx.size()));
        const std::size_t train_count = idx.size() - n_test;
        std::size_t n_labelled = std::min<std::size_t>(L, train_count);
        if (train_count < static_cast<std::size_t>(L) + 1) {
            split.warnings.push_back("class '" + examples.class_names[c] + "' has only " +
                                     std::to_string(train_count) +
                                     " training images; taking all as labelled");
            n_labelled = train_count;
        }

        for (std::size_t i = 0; i < idx.size(); ++i) {
            const std::size_t e = idx[i];
            if (i < n_test) {
                split.test.push(examples.images[e], c, examples.ids[e]);
            } else if (i < n_test + n_labelled) {
                split.labelled.push(examples.images[e], c, examples.ids[e]);
            } else {
                split.unlabelled.images.push_back(examples.images[e]);
                split.unlabelled.ids.push_back(examples.ids[e]);
                split.unlabelled_audit_labels.push_back(c);
            }
        }
    }
    return split;
}

}  // namespace ssdm
