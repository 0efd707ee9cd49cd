#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ssdm/stats/tests.hpp"

namespace ssdm::stats {

struct PostHocEntry {
    std::string label;             // compared column
    double z = 0;                  // z (rank path) or t (group-mean path)
    double raw_p = 1;
    double adjusted_p = 1;
    std::optional<double> effect_size;  // Cohen's d vs control, when samples are available
    bool significant = false;
};

namespace detail {

// Holm step-down over raw p-values: sort ascending, multiply the i-th by
// (m - i), enforce monotonicity, cap at 1.
inline std::vector<double> holm_adjust(const std::vector<double>& raw) {
    const std::size_t m = raw.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a] < raw[b]; });
    std::vector<double> adjusted(m);
    double running = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double scaled = static_cast<double>(m - i) * raw[order[i]];
        running = std::max(running, scaled);
        adjusted[order[i]] = std::min(1.0, running);
    }
    return adjusted;
}

}  // namespace detail

// Control-vs-all comparisons from Friedman average ranks:
//   z_i = (R_control - R_i) / sqrt(k(k+1)/(6N)),  two-sided normal p,
// adjusted by the Holm step-down procedure. Entries come back in column
// order, including a trivial self-entry for the control.
inline std::vector<PostHocEntry> holm_posthoc(const RankTable& ranks, const std::string& control,
                                              double alpha = 0.05) {
    const std::size_t c = ranks.index_of(control);
    const std::size_t k = ranks.n_treatments;
    if (k < 2) throw parameter_error("holm_posthoc: need at least two treatments");
    const double se = std::sqrt(k * (k + 1.0) / (6.0 * static_cast<double>(ranks.n_blocks)));

    std::vector<PostHocEntry> entries(k);
    std::vector<double> raw;
    std::vector<std::size_t> raw_slots;
    for (std::size_t i = 0; i < k; ++i) {
        entries[i].label = ranks.labels[i];
        if (i == c) {
            entries[i].z = 0;
            entries[i].raw_p = 1;
            entries[i].adjusted_p = 1;
            continue;
        }
        entries[i].z = (ranks.avg_ranks[c] - ranks.avg_ranks[i]) / se;
        entries[i].raw_p = 2.0 * normal_sf(std::abs(entries[i].z));
        raw.push_back(entries[i].raw_p);
        raw_slots.push_back(i);
    }
    const auto adjusted = detail::holm_adjust(raw);
    for (std::size_t j = 0; j < raw_slots.size(); ++j) {
        entries[raw_slots[j]].adjusted_p = adjusted[j];
        entries[raw_slots[j]].significant = adjusted[j] < alpha;
    }
    return entries;
}

// Bonferroni-Dunn on the rank path: same z and raw p as Holm, with the
// uniform (k-1) multiplier.
inline std::vector<PostHocEntry> bonferroni_dunn_posthoc(const RankTable& ranks,
                                                         const std::string& control,
                                                         double alpha = 0.05) {
    auto entries = holm_posthoc(ranks, control, alpha);
    const double m = static_cast<double>(ranks.n_treatments - 1);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].label == control) continue;
        entries[i].adjusted_p = std::min(1.0, m * entries[i].raw_p);
        entries[i].significant = entries[i].adjusted_p < alpha;
    }
    return entries;
}

// Bonferroni-Dunn on the group-mean path (after ANOVA): pairwise t statistics
// against the control using the pooled within-group variance.
inline std::vector<PostHocEntry> bonferroni_dunn_posthoc(
    const std::vector<std::vector<double>>& groups, const std::vector<std::string>& labels,
    const std::string& control, double alpha = 0.05) {
    const std::size_t k = groups.size();
    if (k < 2) throw parameter_error("bonferroni_dunn: need at least two groups");
    if (labels.size() != k) throw dimension_error("bonferroni_dunn: label count mismatch");
    std::size_t c = k;
    for (std::size_t i = 0; i < k; ++i) {
        if (labels[i] == control) c = i;
    }
    if (c == k) throw parameter_error("bonferroni_dunn: no group named " + control);

    std::size_t total = 0;
    double ssw = 0;
    std::vector<double> means(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (groups[i].size() < 2) {
            throw parameter_error("bonferroni_dunn: each group needs >= 2 observations");
        }
        total += groups[i].size();
        means[i] = std::accumulate(groups[i].begin(), groups[i].end(), 0.0) / groups[i].size();
        for (double v : groups[i]) ssw += (v - means[i]) * (v - means[i]);
    }
    const double df = static_cast<double>(total - k);
    const double msw = ssw / df;

    std::vector<PostHocEntry> entries(k);
    for (std::size_t i = 0; i < k; ++i) {
        entries[i].label = labels[i];
        if (i == c) {
            entries[i].z = 0;
            entries[i].raw_p = 1;
            entries[i].adjusted_p = 1;
            continue;
        }
        const double se =
            std::sqrt(msw * (1.0 / groups[c].size() + 1.0 / groups[i].size()));
        if (se <= 0.0) throw degenerate_error("bonferroni_dunn: zero pooled variance");
        entries[i].z = (means[c] - means[i]) / se;
        entries[i].raw_p = 2.0 * t_sf(std::abs(entries[i].z), df);
        entries[i].adjusted_p = std::min(1.0, static_cast<double>(k - 1) * entries[i].raw_p);
        entries[i].significant = entries[i].adjusted_p < alpha;
    }
    return entries;
}

}  // namespace ssdm::stats
