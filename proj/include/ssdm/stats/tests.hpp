#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "ssdm/stats/special.hpp"

namespace ssdm::stats {

struct TestResult {
    std::string name;
    double statistic = 0;
    double df1 = 0;
    double df2 = 0;  // 0 when the reference distribution has a single df
    double p = 1;
};

// Shapiro-Wilk normality test, Royston's 1995 approximation (AS R94).
// Valid for 3 <= n <= 5000. Null hypothesis: the sample is normal.
inline TestResult shapiro_wilk(std::vector<double> x) {
    const std::size_t n = x.size();
    if (n < 3 || n > 5000) {
        throw parameter_error("shapiro_wilk: sample size must be in [3, 5000]");
    }
    std::sort(x.begin(), x.end());
    if (x.back() - x.front() <= 0.0) {
        throw degenerate_error("shapiro_wilk: sample has zero range");
    }

    // Blom-type normal scores
    std::vector<double> m(n);
    double ssq_m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = normal_ppf((i + 1 - 0.375) / (n + 0.25));
        ssq_m += m[i] * m[i];
    }

    std::vector<double> a(n, 0.0);
    const double u = 1.0 / std::sqrt(static_cast<double>(n));
    const double rsqrt_ssq = 1.0 / std::sqrt(ssq_m);
    if (n == 3) {
        a[2] = std::sqrt(0.5);
        a[0] = -a[2];
    } else if (n <= 5) {
        const double an = m[n - 1] * rsqrt_ssq + u * (0.221157 +
                          u * (-0.147981 + u * (-2.071190 + u * (4.434685 + u * -2.706056))));
        const double phi = (ssq_m - 2 * m[n - 1] * m[n - 1]) / (1 - 2 * an * an);
        a[n - 1] = an;
        a[0] = -an;
        for (std::size_t i = 1; i + 1 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    } else {
        const double an = m[n - 1] * rsqrt_ssq + u * (0.221157 +
                          u * (-0.147981 + u * (-2.071190 + u * (4.434685 + u * -2.706056))));
        const double an1 = m[n - 2] * rsqrt_ssq + u * (0.042981 +
                           u * (-0.293762 + u * (-1.752461 + u * (5.682633 + u * -3.582633))));
        const double phi = (ssq_m - 2 * m[n - 1] * m[n - 1] - 2 * m[n - 2] * m[n - 2]) /
                           (1 - 2 * an * an - 2 * an1 * an1);
        a[n - 1] = an;
        a[n - 2] = an1;
        a[0] = -an;
        a[1] = -an1;
        for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / std::sqrt(phi);
    }

    const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        num += a[i] * x[i];
        den += (x[i] - mean) * (x[i] - mean);
    }
    const double w = num * num / den;

    TestResult r;
    r.name = "shapiro-wilk";
    r.statistic = w;
    r.df1 = static_cast<double>(n);
    if (n == 3) {
        constexpr double kPi = 3.14159265358979323846;
        const double p = 6.0 / kPi * (std::asin(std::sqrt(w)) - std::asin(std::sqrt(0.75)));
        r.p = std::clamp(p, 0.0, 1.0);
    } else if (n <= 11) {
        const double dn = static_cast<double>(n);
        const double gamma = -2.273 + 0.459 * dn;
        const double lw = -std::log(gamma - std::log1p(-w));
        const double mu = 0.5440 + dn * (-0.39978 + dn * (0.025054 + dn * -0.0006714));
        const double sigma = std::exp(1.3822 + dn * (-0.77857 + dn * (0.062767 + dn * -0.0020322)));
        r.p = normal_sf((lw - mu) / sigma);
    } else {
        const double ln_n = std::log(static_cast<double>(n));
        const double lw = std::log1p(-w);
        const double mu = -1.5861 + ln_n * (-0.31082 + ln_n * (-0.083751 + ln_n * 0.0038915));
        const double sigma = std::exp(-0.4803 + ln_n * (-0.082676 + ln_n * 0.0030302));
        r.p = normal_sf((lw - mu) / sigma);
    }
    return r;
}

// Levene test with mean-centered absolute deviations, F-distributed with
// (k-1, N-k) degrees of freedom.
inline TestResult levene(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw parameter_error("levene: need at least two groups");
    std::size_t total = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw parameter_error("levene: each group needs >= 2 observations");
        total += g.size();
    }

    std::vector<std::vector<double>> z(k);
    std::vector<double> zbar_i(k);
    double zbar = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double mean = std::accumulate(groups[i].begin(), groups[i].end(), 0.0) /
                            groups[i].size();
        z[i].reserve(groups[i].size());
        double s = 0;
        for (double v : groups[i]) {
            const double d = std::abs(v - mean);
            z[i].push_back(d);
            s += d;
        }
        zbar_i[i] = s / groups[i].size();
        zbar += s;
    }
    zbar /= total;

    double between = 0, within = 0;
    for (std::size_t i = 0; i < k; ++i) {
        between += groups[i].size() * (zbar_i[i] - zbar) * (zbar_i[i] - zbar);
        for (double d : z[i]) within += (d - zbar_i[i]) * (d - zbar_i[i]);
    }
    if (within <= 0.0) {
        if (between <= 0.0) throw degenerate_error("levene: all absolute deviations identical");
        TestResult r;
        r.name = "levene";
        r.statistic = std::numeric_limits<double>::infinity();
        r.df1 = static_cast<double>(k - 1);
        r.df2 = static_cast<double>(total - k);
        r.p = 0.0;
        return r;
    }

    TestResult r;
    r.name = "levene";
    r.df1 = static_cast<double>(k - 1);
    r.df2 = static_cast<double>(total - k);
    r.statistic = (static_cast<double>(total - k) / (k - 1)) * (between / within);
    r.p = f_sf(r.statistic, r.df1, r.df2);
    return r;
}

// one-way between-groups ANOVA
inline TestResult anova_oneway(const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw parameter_error("anova: need at least two groups");
    std::size_t total = 0;
    double grand_sum = 0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw parameter_error("anova: each group needs >= 2 observations");
        total += g.size();
        grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
    }
    const double grand_mean = grand_sum / total;

    double ssb = 0, ssw = 0;
    for (const auto& g : groups) {
        const double mean = std::accumulate(g.begin(), g.end(), 0.0) / g.size();
        ssb += g.size() * (mean - grand_mean) * (mean - grand_mean);
        for (double v : g) ssw += (v - mean) * (v - mean);
    }

    TestResult r;
    r.name = "anova";
    r.df1 = static_cast<double>(k - 1);
    r.df2 = static_cast<double>(total - k);
    if (ssw <= 0.0) {
        if (ssb <= 0.0) {
            r.statistic = 0.0;
            r.p = 1.0;
        } else {
            r.statistic = std::numeric_limits<double>::infinity();
            r.p = 0.0;
        }
        return r;
    }
    r.statistic = (ssb / r.df1) / (ssw / r.df2);
    r.p = f_sf(r.statistic, r.df1, r.df2);
    return r;
}

// ranks one row ascending (rank k = largest value = best); ties share mean ranks
inline std::vector<double> rank_row(const std::vector<double>& row) {
    const std::size_t k = row.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return row[a] < row[b]; });
    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
        std::size_t j = i;
        while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
        const double shared = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = shared;
        i = j + 1;
    }
    return ranks;
}

struct RankTable {
    std::vector<std::string> labels;
    std::vector<double> avg_ranks;  // higher = better
    std::size_t n_blocks = 0;       // N
    std::size_t n_treatments = 0;   // k

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == label) return i;
        }
        throw parameter_error("rank table has no column named " + label);
    }
};

// average ranks over blocks (rows); higher value = better = higher rank
inline RankTable average_ranks(const std::vector<std::vector<double>>& rows,
                               std::vector<std::string> labels = {}) {
    if (rows.empty()) throw data_error("average_ranks: empty table");
    const std::size_t k = rows.front().size();
    if (k < 2) throw parameter_error("average_ranks: need at least two columns");
    RankTable t;
    t.n_blocks = rows.size();
    t.n_treatments = k;
    t.avg_ranks.assign(k, 0.0);
    for (const auto& row : rows) {
        if (row.size() != k) throw dimension_error("average_ranks: ragged table");
        const auto r = rank_row(row);
        for (std::size_t j = 0; j < k; ++j) t.avg_ranks[j] += r[j];
    }
    for (auto& v : t.avg_ranks) v /= static_cast<double>(t.n_blocks);
    if (labels.empty()) {
        for (std::size_t j = 0; j < k; ++j) labels.push_back("col" + std::to_string(j));
    }
    if (labels.size() != k) throw dimension_error("average_ranks: label count mismatch");
    t.labels = std::move(labels);
    return t;
}

struct FriedmanResult {
    TestResult chi2;            // classical rank statistic, tie-corrected
    TestResult iman_davenport;  // F-distributed refinement
    RankTable ranks;
};

// Friedman omnibus test over a blocks x treatments table (higher = better).
inline FriedmanResult friedman(const std::vector<std::vector<double>>& rows,
                               std::vector<std::string> labels = {}) {
    if (rows.size() < 2) throw parameter_error("friedman: need at least two blocks");
    const std::size_t k = rows.front().size();
    if (k < 3) throw parameter_error("friedman: need at least three treatments");
    const std::size_t n = rows.size();

    std::vector<double> rank_sums(k, 0.0);
    double tie_term = 0;  // sum over blocks of sum(t^3 - t)
    for (const auto& row : rows) {
        if (row.size() != k) throw dimension_error("friedman: ragged table");
        const auto r = rank_row(row);
        for (std::size_t j = 0; j < k; ++j) rank_sums[j] += r[j];
        // count tie group sizes in this block
        std::vector<double> sorted(row);
        std::sort(sorted.begin(), sorted.end());
        std::size_t i = 0;
        while (i < k) {
            std::size_t j = i;
            while (j + 1 < k && sorted[j + 1] == sorted[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }

    const double dn = static_cast<double>(n);
    const double dk = static_cast<double>(k);
    double ssbn = 0;
    for (double s : rank_sums) ssbn += s * s;
    const double correction = 1.0 - tie_term / (dn * dk * (dk * dk - 1.0));
    if (correction <= 0.0) {
        throw degenerate_error("friedman: every block is fully tied");
    }
    const double chi2 = ((12.0 / (dn * dk * (dk + 1.0))) * ssbn - 3.0 * dn * (dk + 1.0)) /
                        correction;

    FriedmanResult out;
    out.chi2.name = "friedman";
    out.chi2.statistic = chi2;
    out.chi2.df1 = dk - 1.0;
    out.chi2.p = chi2_sf(std::max(chi2, 0.0), dk - 1.0);

    out.iman_davenport.name = "iman-davenport";
    out.iman_davenport.df1 = dk - 1.0;
    out.iman_davenport.df2 = (dk - 1.0) * (dn - 1.0);
    const double denom = dn * (dk - 1.0) - chi2;
    if (denom <= 0.0) {
        out.iman_davenport.statistic = std::numeric_limits<double>::infinity();
        out.iman_davenport.p = 0.0;
    } else {
        out.iman_davenport.statistic = (dn - 1.0) * chi2 / denom;
        out.iman_davenport.p =
            f_sf(out.iman_davenport.statistic, out.iman_davenport.df1, out.iman_davenport.df2);
    }

    out.ranks = average_ranks(rows, std::move(labels));
    return out;
}

// pooled-variance Cohen's d; positive when a exceeds b
inline double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw parameter_error("cohens_d: each sample needs n >= 2");
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / b.size();
    double sa = 0, sb = 0;
    for (double v : a) sa += (v - ma) * (v - ma);
    for (double v : b) sb += (v - mb) * (v - mb);
    const double pooled = (sa + sb) / (a.size() + b.size() - 2.0);
    if (pooled <= 0.0) throw degenerate_error("cohens_d: zero pooled variance");
    return (ma - mb) / std::sqrt(pooled);
}

}  // namespace ssdm::stats
