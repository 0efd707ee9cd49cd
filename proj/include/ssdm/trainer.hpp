#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssdm/augment.hpp"
#include "ssdm/data.hpp"
#include "ssdm/optim.hpp"
#include "ssdm/serialize.hpp"
#include "ssdm/stats/metrics.hpp"

namespace ssdm {

struct TrainConfig {
    int stage1_epochs = 2;   // head-only transfer epochs
    int stage2_epochs = 50;  // full fine-tuning cap, early-stopped
    int batch_size = 16;
    int patience = 5;  // epochs without accuracy improvement before stopping
    AugmentPolicy augment = AugmentPolicy::weak(0);
    std::uint64_t seed = 0;

    double momentum = 0.9;
    double val_fraction = 0.1;  // held-out share of the labelled set
    double lr_min = 1e-4;
    double lr_max = 1.0;
    int lr_find_steps = 40;

    TrainConfig with_seed(std::uint64_t s) const {
        TrainConfig c = *this;
        c.seed = s;
        return c;
    }
};

struct EpochStat {
    double loss = 0;
    double accuracy = 0;  // monitored (validation) accuracy
    double seconds = 0;
};

struct TrainReport {
    std::vector<EpochStat> epochs;  // stage-1 entries first, then stage-2
    double lr_stage1 = 0;
    double lr_stage2 = 0;
    int stage1_epochs = 0;
    int stopped_epoch = 0;  // completed stage-2 epochs when training stopped
    int best_epoch = 0;     // 1-based stage-2 epoch restored by early stopping

    std::string to_csv() const {
        std::string out = "epoch,loss,accuracy,seconds\n";
        char buf[128];
        for (std::size_t i = 0; i < epochs.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f,%.3f\n", i + 1, epochs[i].loss,
                          epochs[i].accuracy, epochs[i].seconds);
            out += buf;
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["lr_stage1"] = lr_stage1;
        j["lr_stage2"] = lr_stage2;
        j["stage1_epochs"] = stage1_epochs;
        j["stopped_epoch"] = stopped_epoch;
        j["best_epoch"] = best_epoch;
        j["epochs"] = nlohmann::json::array();
        for (const auto& e : epochs) {
            j["epochs"].push_back({{"loss", e.loss}, {"accuracy", e.accuracy},
                                   {"seconds", e.seconds}});
        }
        return j;
    }
};

struct EvalReport {
    double accuracy = 0;
    double f1 = 0;
    std::string f1_kind;  // "binary" or "macro"
    std::vector<std::vector<long long>> confusion;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["accuracy"] = accuracy;
        j["f1"] = f1;
        j["f1_kind"] = f1_kind;
        j["confusion"] = confusion;
        return j;
    }
};

// Tracks the best monitored accuracy; stops after `patience` epochs without
// strict improvement. Earliest best epoch wins ties.
class EarlyStopper {
public:
    explicit EarlyStopper(int patience) : patience_(patience) {
        if (patience < 1) throw parameter_error("early stopping patience must be >= 1");
    }

    // returns true when training should stop after this epoch
    bool observe(double accuracy) {
        ++epoch_;
        if (accuracy > best_acc_) {
            best_acc_ = accuracy;
            best_epoch_ = epoch_;
        }
        return epoch_ - best_epoch_ >= patience_;
    }

    int best_epoch() const { return best_epoch_; }
    double best_accuracy() const { return best_acc_; }
    int epochs_seen() const { return epoch_; }

private:
    int patience_;
    int epoch_ = 0;
    int best_epoch_ = 0;
    double best_acc_ = -1;
};

// Forward over a list of images in fixed-size batches.
inline Tensor predict_probs(const Model& m, const std::vector<Tensor>& images,
                            int batch_size = 64) {
    if (images.empty()) throw data_error("predict_probs: no images");
    const Shape3 in = m.spec.input;
    const int k = m.spec.n_classes();
    Tensor out({static_cast<int>(images.size()), k});
    std::size_t done = 0;
    while (done < images.size()) {
        const int take = static_cast<int>(
            std::min<std::size_t>(batch_size, images.size() - done));
        Tensor batch({take, in.c, in.h, in.w});
        for (int i = 0; i < take; ++i) {
            const Tensor& img = images[done + i];
            if (img.shape != std::vector<int>{in.c, in.h, in.w}) {
                throw dimension_error("predict_probs: image shape does not match model input");
            }
            std::copy(img.data.begin(), img.data.end(),
                      batch.ptr() + static_cast<std::size_t>(i) * img.size());
        }
        const Tensor probs = forward(m, batch);
        std::copy(probs.data.begin(), probs.data.end(),
                  out.ptr() + done * static_cast<std::size_t>(k));
        done += take;
    }
    return out;
}

namespace detail {

struct ValSplit {
    std::vector<std::size_t> train_idx;
    std::vector<std::size_t> val_idx;
};

// stratified held-out split for accuracy monitoring
inline ValSplit make_val_split(const LabelledSet& data, double fraction, std::uint64_t seed) {
    ValSplit out;
    for (int c = 0; c < data.n_classes(); ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data.labels[i] == c) idx.push_back(i);
        }
        if (idx.empty()) continue;
        Rng rng(derive_seed(seed, "val", c));
        rng.shuffle(idx);
        std::size_t n_val = static_cast<std::size_t>(fraction * idx.size());
        if (n_val == 0 && idx.size() >= 2) n_val = 1;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            (i < n_val ? out.val_idx : out.train_idx).push_back(idx[i]);
        }
    }
    std::sort(out.train_idx.begin(), out.train_idx.end());
    std::sort(out.val_idx.begin(), out.val_idx.end());
    return out;
}

inline Tensor gather_batch(const LabelledSet& data, const std::vector<std::size_t>& order,
                           std::size_t begin, std::size_t end, const AugmentPolicy& policy,
                           std::uint64_t aug_seed, int epoch, std::vector<int>& labels_out) {
    const auto& shape = data.images[order[begin]].shape;
    Tensor batch({static_cast<int>(end - begin), shape[0], shape[1], shape[2]});
    labels_out.clear();
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t e = order[i];
        Tensor img = data.images[e];
        if (policy.mode != AugmentMode::none) {
            img = augment(policy.with_seed(derive_seed(aug_seed, "aug", epoch, int(e))), img);
        }
        std::copy(img.data.begin(), img.data.end(),
                  batch.ptr() + (i - begin) * img.size());
        labels_out.push_back(data.labels[e]);
    }
    return batch;
}

inline double monitored_accuracy(const Model& m, const LabelledSet& data,
                                 const std::vector<std::size_t>& idx) {
    std::vector<Tensor> images;
    std::vector<int> truth;
    for (std::size_t e : idx) {
        images.push_back(data.images[e]);
        truth.push_back(data.labels[e]);
    }
    const Tensor probs = predict_probs(m, images);
    return stats::accuracy(truth, predict_classes(probs));
}

}  // namespace detail

// LR range test: sweeps geometrically growing learning rates on a throwaway
// copy, smooths the loss (beta = 0.98, bias-corrected), aborts once the
// smoothed loss exceeds 4x its minimum, and returns (lr at minimum)/10
// clamped into [lr_min, lr_max].
inline double lr_find(const Model& model, const LabelledSet& data, double lr_min, double lr_max,
                      int steps, std::uint64_t seed, int batch_size = 16, double momentum = 0.9) {
    if (!(lr_min > 0 && lr_min < lr_max)) {
        throw parameter_error("lr_find: need 0 < lr_min < lr_max");
    }
    if (steps < 20) throw parameter_error("lr_find: need at least 20 steps");
    if (data.size() == 0) throw data_error("lr_find: empty training data");

    Model probe = model;
    SgdOptimizer<float> opt(lr_min, momentum);

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "lrfind"));
    rng.shuffle(order);

    const double growth = std::pow(lr_max / lr_min, 1.0 / (steps - 1));
    constexpr double kBeta = 0.98;
    double smoothed = 0;
    double best_smoothed = std::numeric_limits<double>::infinity();
    double best_lr = lr_min;
    bool any_finite = false;
    std::size_t cursor = 0;
    std::vector<int> labels;

    for (int t = 0; t < steps; ++t) {
        const double lr = lr_min * std::pow(growth, t);
        if (cursor >= order.size()) cursor = 0;
        const std::size_t end = std::min(cursor + batch_size, order.size());
        const Tensor batch = detail::gather_batch(data, order, cursor, end,
                                                  AugmentPolicy::none(), 0, 0, labels);
        cursor = end;

        double loss;
        try {
            const auto lg = backward_ce(probe, batch, labels);
            loss = lg.loss;
            opt.set_learning_rate(lr);
            opt.step(probe, lg.grads);
        } catch (const numeric_error&) {
            break;  // diverged; the sweep is over
        }
        if (!std::isfinite(loss)) break;
        any_finite = true;

        smoothed = kBeta * smoothed + (1 - kBeta) * loss;
        const double corrected = smoothed / (1 - std::pow(kBeta, t + 1));
        if (corrected < best_smoothed) {
            best_smoothed = corrected;
            best_lr = lr;
        }
        if (corrected > 4 * best_smoothed) break;
    }
    if (!any_finite) throw numeric_error("lr_find: no finite losses in the sweep");
    return std::clamp(best_lr / 10.0, lr_min, lr_max);
}

// One training run at a fixed learning rate with accuracy monitoring on a
// held-out slice. Frozen parameters stay bitwise untouched. With early
// stopping enabled, the best-accuracy checkpoint is restored (earliest best
// epoch wins ties).
inline TrainReport fit(Model& model, const LabelledSet& data, const TrainConfig& cfg,
                       const std::set<std::string>& frozen, double lr, int epochs,
                       bool early_stop, std::uint64_t run_seed) {
    data.validate();
    if (data.size() == 0) throw data_error("fit: empty training data");
    for (const auto& name : frozen) {
        if (!model.has_param(name)) {
            throw parameter_error("fit: frozen parameter '" + name + "' not in model");
        }
    }
    if (cfg.batch_size < 1) throw parameter_error("fit: batch_size must be >= 1");
    if (epochs < 0) throw parameter_error("fit: epochs must be >= 0");

    const auto split = detail::make_val_split(data, cfg.val_fraction, run_seed);
    const auto& train_idx = split.train_idx.empty() ? split.val_idx : split.train_idx;
    SgdOptimizer<float> opt(lr, cfg.momentum);
    EarlyStopper stopper(cfg.patience);

    TrainReport report;
    std::vector<std::pair<std::string, Tensor>> best_params = model.params;
    int best_epoch = 0;

    std::vector<int> labels;
    for (int epoch = 1; epoch <= epochs; ++epoch) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::size_t> order = train_idx;
        Rng rng(derive_seed(run_seed, "order", epoch));
        rng.shuffle(order);

        double loss_sum = 0;
        std::size_t seen = 0;
        for (std::size_t begin = 0; begin < order.size();
             begin += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t end =
                std::min(begin + static_cast<std::size_t>(cfg.batch_size), order.size());
            const Tensor batch =
                detail::gather_batch(data, order, begin, end, cfg.augment, run_seed, epoch, labels);
            const auto lg = backward_ce(model, batch, labels);
            opt.step(model, lg.grads, frozen.empty() ? nullptr : &frozen);
            loss_sum += lg.loss * static_cast<double>(end - begin);
            seen += end - begin;
        }

        const double monitored = detail::monitored_accuracy(
            model, data, split.val_idx.empty() ? train_idx : split.val_idx);
        const auto t1 = std::chrono::steady_clock::now();
        EpochStat stat;
        stat.loss = loss_sum / static_cast<double>(seen);
        stat.accuracy = monitored;
        stat.seconds = std::chrono::duration<double>(t1 - t0).count();
        report.epochs.push_back(stat);
        report.stopped_epoch = epoch;

        if (early_stop) {
            const bool stop = stopper.observe(monitored);
            if (stopper.best_epoch() == epoch) {
                best_params = model.params;
                best_epoch = epoch;
            }
            if (stop) break;
        }
    }

    if (early_stop && best_epoch > 0) {
        model.params = std::move(best_params);
        report.best_epoch = best_epoch;
    } else {
        report.best_epoch = report.stopped_epoch;
    }
    report.lr_stage1 = lr;
    return report;
}

// Spec-level entry point: full stage-2-style run with early stopping.
inline std::pair<Model, TrainReport> fit(const Model& model, const LabelledSet& data,
                                         const TrainConfig& cfg,
                                         const std::set<std::string>& frozen, double lr) {
    Model out = model;
    TrainReport rep = fit(out, data, cfg, frozen, lr, cfg.stage2_epochs, true, cfg.seed);
    return {std::move(out), std::move(rep)};
}

// Two-stage transfer: replace the head and train it for stage1_epochs with
// the body frozen, then unfreeze everything and fine-tune for stage2_epochs
// with early stopping. Each stage trains at its own lr_find rate.
inline std::pair<Model, TrainReport> two_stage_train(const Model& pretrained,
                                                     const LabelledSet& data, int n_classes,
                                                     const TrainConfig& cfg) {
    Model model = replace_head(pretrained, n_classes, derive_seed(cfg.seed, "head"));

    std::set<std::string> body;
    for (const auto& name : model.body_param_names()) body.insert(name);

    const double lr1 = lr_find(model, data, cfg.lr_min, cfg.lr_max, cfg.lr_find_steps,
                               derive_seed(cfg.seed, "lrfind", 1), cfg.batch_size, cfg.momentum);
    TrainReport rep1 = fit(model, data, cfg, body, lr1, cfg.stage1_epochs, false,
                           derive_seed(cfg.seed, "stage", 1));

    const double lr2 = lr_find(model, data, cfg.lr_min, cfg.lr_max, cfg.lr_find_steps,
                               derive_seed(cfg.seed, "lrfind", 2), cfg.batch_size, cfg.momentum);
    TrainReport rep2 = fit(model, data, cfg, {}, lr2, cfg.stage2_epochs, true,
                           derive_seed(cfg.seed, "stage", 2));

    TrainReport merged;
    merged.lr_stage1 = lr1;
    merged.lr_stage2 = lr2;
    merged.stage1_epochs = static_cast<int>(rep1.epochs.size());
    merged.epochs = std::move(rep1.epochs);
    merged.epochs.insert(merged.epochs.end(), rep2.epochs.begin(), rep2.epochs.end());
    merged.stopped_epoch = rep2.stopped_epoch;
    merged.best_epoch = rep2.best_epoch;
    return {std::move(model), std::move(merged)};
}

// Accuracy, confusion matrix and F1. A designated positive class selects
// binary F1; otherwise the macro average is reported.
inline EvalReport evaluate(const Model& model, const LabelledSet& test,
                           const std::optional<std::string>& positive_class = std::nullopt) {
    test.validate();
    if (test.size() == 0) throw data_error("evaluate: empty test data");

    int positive = -1;
    if (positive_class) {
        for (int c = 0; c < test.n_classes(); ++c) {
            if (test.class_names[c] == *positive_class) positive = c;
        }
        if (positive < 0) {
            throw parameter_error("evaluate: unknown positive class '" + *positive_class + "'");
        }
    }

    const Tensor probs = predict_probs(model, test.images);
    const std::vector<int> preds = predict_classes(probs);
    EvalReport rep;
    rep.accuracy = stats::accuracy(test.labels, preds);
    rep.confusion = stats::confusion_matrix(test.labels, preds, test.n_classes());
    if (positive >= 0) {
        rep.f1 = stats::class_f1(rep.confusion, positive);
        rep.f1_kind = "binary";
    } else {
        rep.f1 = stats::macro_f1(test.labels, preds, test.n_classes());
        rep.f1_kind = "macro";
    }
    return rep;
}

}  // namespace ssdm
