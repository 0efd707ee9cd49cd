#pragma once

#include <charconv>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssdm/stats/posthoc.hpp"

namespace ssdm::stats {

namespace detail {

// shortest round-trip decimal form, padded to at least 4 decimals
inline std::string csv_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find('e') == std::string::npos && s.find('E') == std::string::npos) {
        const auto dot = s.find('.');
        if (dot == std::string::npos) {
            s += ".0000";
        } else if (s.size() - dot - 1 < 4) {
            s.append(4 - (s.size() - dot - 1), '0');
        }
    }
    return s;
}

inline std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace detail

// datasets x methods F1 matrix
struct MetricTable {
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<double>> values;

    std::size_t n_rows() const { return row_labels.size(); }
    std::size_t n_cols() const { return col_labels.size(); }

    void validate() const {
        if (row_labels.size() < 2) throw data_error("metric table needs at least 2 rows");
        if (col_labels.size() < 2) throw data_error("metric table needs at least 2 columns");
        if (values.size() != row_labels.size()) {
            throw dimension_error("metric table row count mismatch");
        }
        for (const auto& row : values) {
            if (row.size() != col_labels.size()) {
                throw dimension_error("metric table is not rectangular");
            }
            for (double v : row) {
                if (!(v >= 0.0 && v <= 1.0)) {
                    throw data_error("metric table cells must be F1 values in [0,1]");
                }
            }
        }
    }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> out;
        out.reserve(values.size());
        for (const auto& row : values) out.push_back(row[j]);
        return out;
    }

    std::vector<std::vector<double>> columns() const {
        std::vector<std::vector<double>> out;
        for (std::size_t j = 0; j < n_cols(); ++j) out.push_back(column(j));
        return out;
    }

    std::size_t col_index(const std::string& label) const {
        for (std::size_t j = 0; j < col_labels.size(); ++j) {
            if (col_labels[j] == label) return j;
        }
        throw parameter_error("metric table has no column named " + label);
    }

    std::string to_csv() const {
        std::string out = "dataset";
        for (const auto& c : col_labels) {
            if (c.find(',') != std::string::npos) {
                throw data_error("metric table labels may not contain commas");
            }
            out += "," + c;
        }
        out += "\n";
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (row_labels[i].find(',') != std::string::npos) {
                throw data_error("metric table labels may not contain commas");
            }
            out += row_labels[i];
            for (double v : values[i]) out += "," + detail::csv_number(v);
            out += "\n";
        }
        return out;
    }

    static MetricTable from_csv(const std::string& csv) {
        MetricTable t;
        std::stringstream ss(csv);
        std::string line;
        if (!std::getline(ss, line)) throw format_error("metric table csv: empty input");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto header = detail::split_csv_line(line);
        if (header.size() < 3) throw format_error("metric table csv: need >= 2 value columns");
        t.col_labels.assign(header.begin() + 1, header.end());
        while (std::getline(ss, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            auto cells = detail::split_csv_line(line);
            if (cells.size() != header.size()) {
                throw format_error("metric table csv: ragged row '" + line + "'");
            }
            t.row_labels.push_back(cells[0]);
            std::vector<double> row;
            for (std::size_t j = 1; j < cells.size(); ++j) {
                try {
                    row.push_back(std::stod(cells[j]));
                } catch (const std::exception&) {
                    throw format_error("metric table csv: bad number '" + cells[j] + "'");
                }
            }
            t.values.push_back(std::move(row));
        }
        t.validate();
        return t;
    }
};

struct ComparisonReport {
    std::string control;
    double alpha = 0.05;
    std::size_t n_blocks = 0;
    std::size_t n_treatments = 0;
    bool parametric = false;
    std::vector<std::string> column_labels;
    std::vector<TestResult> normality;  // per column, aligned with column_labels
    std::optional<TestResult> variance_check;
    TestResult omnibus;
    std::optional<TestResult> iman_davenport;
    RankTable ranks;
    std::vector<PostHocEntry> posthoc;
    std::vector<std::string> warnings;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["control"] = control;
        j["alpha"] = alpha;
        j["n_datasets"] = n_blocks;
        j["n_methods"] = n_treatments;
        j["branch"] = parametric ? "parametric" : "non-parametric";
        auto test_json = [](const TestResult& t) {
            nlohmann::json o;
            o["test"] = t.name;
            o["statistic"] = t.statistic;
            o["df1"] = t.df1;
            if (t.df2 > 0) o["df2"] = t.df2;
            o["p"] = t.p;
            return o;
        };
        j["normality"] = nlohmann::json::object();
        for (std::size_t i = 0; i < normality.size(); ++i) {
            j["normality"][column_labels[i]] = test_json(normality[i]);
        }
        if (variance_check) j["variance_check"] = test_json(*variance_check);
        j["omnibus"] = test_json(omnibus);
        if (iman_davenport) j["iman_davenport"] = test_json(*iman_davenport);
        j["average_ranks"] = nlohmann::json::object();
        for (std::size_t i = 0; i < ranks.labels.size(); ++i) {
            j["average_ranks"][ranks.labels[i]] = ranks.avg_ranks[i];
        }
        j["posthoc"] = nlohmann::json::array();
        for (const auto& e : posthoc) {
            if (e.label == control) continue;
            nlohmann::json o;
            o["method"] = e.label;
            o["z"] = e.z;
            o["raw_p"] = e.raw_p;
            o["adjusted_p"] = e.adjusted_p;
            if (e.effect_size) {
                o["cohens_d"] = *e.effect_size;
            } else {
                o["cohens_d"] = nullptr;
            }
            o["significant"] = e.significant;
            o["relation"] = !e.significant ? "similar" : (e.z > 0 ? "greater" : "less");
            j["posthoc"].push_back(o);
        }
        j["warnings"] = warnings;
        return j;
    }

    std::string to_markdown() const {
        std::string md;
        md += "# Statistical comparison\n\n";
        md += "- control: " + control + "\n";
        md += "- alpha: " + detail::fmt(alpha, "%g") + "\n";
        md += "- table: " + std::to_string(n_blocks) + " datasets x " +
              std::to_string(n_treatments) + " methods\n";
        md += std::string("- branch: ") +
              (parametric ? "parametric (ANOVA + Bonferroni-Dunn)"
                          : "non-parametric (Friedman + Holm)") +
              "\n\n";

        md += "## Condition checks\n\n";
        md += "| column | Shapiro-Wilk W | p |\n|---|---|---|\n";
        for (std::size_t i = 0; i < normality.size(); ++i) {
            md += "| " + column_labels[i] + " | " + detail::fmt(normality[i].statistic) + " | " +
                  detail::fmt(normality[i].p) + " |\n";
        }
        if (variance_check) {
            md += "\nLevene W = " + detail::fmt(variance_check->statistic) +
                  ", p = " + detail::fmt(variance_check->p) + "\n";
        }

        md += "\n## Omnibus test\n\n";
        md += omnibus.name + " statistic = " + detail::fmt(omnibus.statistic) +
              " (df = " + detail::fmt(omnibus.df1, "%g");
        if (omnibus.df2 > 0) md += ", " + detail::fmt(omnibus.df2, "%g");
        md += "), p = " + detail::fmt(omnibus.p) + "\n";
        if (iman_davenport) {
            md += "Iman-Davenport F = " + detail::fmt(iman_davenport->statistic) +
                  ", p = " + detail::fmt(iman_davenport->p) + "\n";
        }

        md += "\n## Average ranks (higher is better)\n\n| method | avg rank |\n|---|---|\n";
        for (std::size_t i = 0; i < ranks.labels.size(); ++i) {
            md += "| " + ranks.labels[i] + " | " + detail::fmt(ranks.avg_ranks[i], "%.4g") +
                  " |\n";
        }

        md += "\n## Post-hoc vs " + control + " (" +
              (parametric ? "Bonferroni-Dunn" : "Holm") + ")\n\n";
        md += "| method | z | p | adjusted p | Cohen's d |\n|---|---|---|---|---|\n";
        for (const auto& e : posthoc) {
            if (e.label == control) continue;
            md += "| " + e.label + " | " + detail::fmt(e.z, "%.3g") + " | " +
                  detail::fmt(e.raw_p, "%.3g") + " | " + detail::fmt(e.adjusted_p, "%.3g") +
                  " | " + (e.effect_size ? detail::fmt(*e.effect_size, "%.3g") : "-") + " |\n";
        }

        std::string similar, greater, less;
        for (const auto& e : posthoc) {
            if (e.label == control) continue;
            std::string& bucket = !e.significant ? similar : (e.z > 0 ? greater : less);
            if (!bucket.empty()) bucket += ", ";
            bucket += e.label;
        }
        md += "\n## Decision\n\n";
        if (!similar.empty()) md += control + " ~ " + similar + "\n";
        if (!greater.empty()) md += control + " > " + greater + "\n";
        if (!less.empty()) md += control + " < " + less + "\n";

        if (!warnings.empty()) {
            md += "\n## Warnings\n\n";
            for (const auto& w : warnings) md += "- " + w + "\n";
        }
        return md;
    }
};

// Decision pipeline: Shapiro-Wilk per column and Levene across columns pick
// the branch; parametric -> ANOVA + Bonferroni-Dunn, otherwise Friedman +
// Holm. Cohen's d is reported against the control column either way.
inline ComparisonReport compare(const MetricTable& table, const std::string& control,
                                double alpha = 0.05) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw parameter_error("compare: alpha must be in (0,1)");
    table.validate();
    const std::size_t c = table.col_index(control);

    ComparisonReport rep;
    rep.control = control;
    rep.alpha = alpha;
    rep.n_blocks = table.n_rows();
    rep.n_treatments = table.n_cols();
    rep.column_labels = table.col_labels;

    const auto groups = table.columns();

    bool conditions_met = true;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        try {
            rep.normality.push_back(shapiro_wilk(groups[j]));
            if (rep.normality.back().p < alpha) conditions_met = false;
        } catch (const degenerate_error& e) {
            TestResult degenerate;
            degenerate.name = "shapiro-wilk";
            degenerate.statistic = 1.0;
            degenerate.p = 0.0;
            rep.normality.push_back(degenerate);
            rep.warnings.push_back("column '" + table.col_labels[j] +
                                   "' is degenerate (" + e.what() +
                                   "); falling back to the non-parametric branch");
            conditions_met = false;
        }
    }
    try {
        rep.variance_check = levene(groups);
        if (rep.variance_check->p < alpha) conditions_met = false;
    } catch (const degenerate_error& e) {
        rep.warnings.push_back(std::string("variance check degenerate (") + e.what() +
                               "); falling back to the non-parametric branch");
        conditions_met = false;
    }

    rep.parametric = conditions_met;
    if (rep.parametric) {
        rep.omnibus = anova_oneway(groups);
        rep.ranks = average_ranks(table.values, table.col_labels);
        rep.posthoc = bonferroni_dunn_posthoc(groups, table.col_labels, control, alpha);
    } else {
        auto fr = friedman(table.values, table.col_labels);
        rep.omnibus = fr.chi2;
        rep.iman_davenport = fr.iman_davenport;
        rep.ranks = std::move(fr.ranks);
        rep.posthoc = holm_posthoc(rep.ranks, control, alpha);
    }

    for (auto& e : rep.posthoc) {
        if (e.label == control) continue;
        try {
            e.effect_size = cohens_d(groups[c], groups[table.col_index(e.label)]);
        } catch (const degenerate_error&) {
            rep.warnings.push_back("Cohen's d vs '" + e.label + "' undefined (zero variance)");
        }
    }
    return rep;
}

}  // namespace ssdm::stats
