#include <doctest.h>

#include <cmath>

#include "fixtures/stats_fixtures.hpp"
#include "ssdm/rng.hpp"
#include "ssdm/stats/compare.hpp"
#include "ssdm/stats/metrics.hpp"

using namespace ssdm;
using namespace ssdm::stats;

TEST_CASE("distribution kernels match pinned reference values") {
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_cdf(1.96) == doctest::Approx(0.97500).epsilon(1e-4));
    CHECK(chi2_sf(8.0, 2) == doctest::Approx(std::exp(-4.0)).epsilon(1e-6));

    for (const auto& ref : fixtures::scalar_refs()) {
        const std::string name = ref.name;
        double got = 0;
        if (name == "norm_cdf_196") got = normal_cdf(1.96);
        else if (name == "norm_cdf_m05") got = normal_cdf(-0.5);
        else if (name == "norm_sf_559") got = normal_sf(5.59);
        else if (name == "norm_ppf_0025") got = normal_ppf(0.025);
        else if (name == "norm_ppf_09") got = normal_ppf(0.9);
        else if (name == "norm_ppf_1e6") got = normal_ppf(1e-6);
        else if (name == "chi2_sf_8_2") got = chi2_sf(8, 2);
        else if (name == "chi2_sf_31_7") got = chi2_sf(3.1, 7);
        else if (name == "chi2_sf_45_10") got = chi2_sf(45, 10);
        else if (name == "f_sf_6_1_4") got = f_sf(6.0, 1, 4);
        else if (name == "f_sf_25_3_16") got = f_sf(2.5, 3, 16);
        else if (name == "f_sf_01_5_8") got = f_sf(0.1, 5, 8);
        else if (name == "t_sf_2449_4") got = t_sf(2.449489742783178, 4);
        else if (name == "t_sf_13_30") got = t_sf(1.3, 30);
        else continue;
        INFO(name);
        const double tol = std::max(1e-10, std::abs(ref.value) * 1e-8);
        CHECK(std::abs(got - ref.value) < tol);
    }

    CHECK_THROWS_AS(chi2_sf(1.0, 0), parameter_error);
    CHECK_THROWS_AS(f_sf(1.0, 0, 5), parameter_error);
}

TEST_CASE("normal_ppf inverts normal_cdf across the range") {
    for (double p : {1e-9, 1e-5, 0.01, 0.1, 0.3, 0.5, 0.7, 0.95, 0.999, 1 - 1e-9}) {
        CHECK(normal_cdf(normal_ppf(p)) == doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("shapiro_wilk matches the reference oracle fixtures") {
    for (const auto& fx : fixtures::shapiro()) {
        INFO(fx.name);
        const TestResult r = shapiro_wilk(fx.x);
        CHECK(std::abs(r.statistic - fx.w) < 1e-3);
        CHECK(std::abs(r.p - fx.p) < 1e-3);
    }
}

TEST_CASE("shapiro_wilk is affine invariant and flags outliers") {
    const auto& base = fixtures::shapiro()[1];  // normal_n20
    const TestResult r0 = shapiro_wilk(base.x);

    std::vector<double> scaled;
    for (double v : base.x) scaled.push_back(3.7 * v - 11.0);
    const TestResult r1 = shapiro_wilk(scaled);
    CHECK(std::abs(r0.statistic - r1.statistic) < 1e-10);

    const auto& outlier = fixtures::shapiro()[11];  // same sample plus one extreme point
    CHECK(shapiro_wilk(outlier.x).p < r0.p);
}

TEST_CASE("shapiro_wilk rejects bad input") {
    CHECK_THROWS_AS(shapiro_wilk({1.0, 2.0}), parameter_error);
    CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(5001, 0.5)), parameter_error);
    CHECK_THROWS_AS(shapiro_wilk({2.0, 2.0, 2.0, 2.0}), degenerate_error);
}

TEST_CASE("levene matches the reference oracle fixtures") {
    for (const auto& fx : fixtures::levene()) {
        INFO(fx.name);
        const TestResult r = levene(fx.groups);
        CHECK(std::abs(r.statistic - fx.stat) < 1e-3);
        CHECK(std::abs(r.p - fx.p) < 1e-3);
    }
}

TEST_CASE("levene hand examples") {
    const TestResult r = levene({{0, 1, 3}, {10, 11, 13}});
    CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(1.0));

    // scaling one group reduces p vs equal-scale groups
    const auto& eq = fixtures::levene()[1];
    const auto& scaled = fixtures::levene()[2];
    CHECK(levene(scaled.groups).p < levene(eq.groups).p);

    // identical groups -> W = 0
    CHECK(levene(fixtures::levene()[3].groups).statistic == doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(levene({{1.0, 2.0}}), parameter_error);
    CHECK_THROWS_AS(levene({{1.0, 1.0}, {2.0, 2.0}}), degenerate_error);
}

TEST_CASE("anova matches the oracle and hand examples") {
    for (const auto& fx : fixtures::anova()) {
        INFO(fx.name);
        const TestResult r = anova_oneway(fx.groups);
        CHECK(r.statistic == doctest::Approx(fx.stat).epsilon(1e-8));
        CHECK(r.p == doctest::Approx(fx.p).epsilon(1e-8));
    }

    const TestResult same = anova_oneway({{1, 2, 3}, {1, 2, 3}});
    CHECK(same.statistic == doctest::Approx(0.0));
    CHECK(same.p == doctest::Approx(1.0));

    const TestResult shifted = anova_oneway({{1, 2, 3}, {3, 4, 5}});
    CHECK(shifted.statistic == doctest::Approx(6.0));
    CHECK(shifted.df1 == 1);
    CHECK(shifted.df2 == 4);
    CHECK(shifted.p == doctest::Approx(0.070).epsilon(0.03));

    // location invariance
    const TestResult moved = anova_oneway({{11, 12, 13}, {13, 14, 15}});
    CHECK(moved.statistic == doctest::Approx(shifted.statistic));

    // degenerate branches
    CHECK(anova_oneway({{2, 2}, {2, 2}}).statistic == doctest::Approx(0.0));
    CHECK(anova_oneway({{2, 2}, {3, 3}}).p == doctest::Approx(0.0));
}

TEST_CASE("average_ranks hand examples") {
    const auto t = average_ranks({{1, 2, 3}, {1, 2, 3}});
    CHECK(t.avg_ranks == std::vector<double>{1, 2, 3});

    const auto tied = average_ranks({{5, 5, 9}});
    CHECK(tied.avg_ranks == std::vector<double>{1.5, 1.5, 3});

    // strictly increasing transform leaves ranks unchanged
    const auto log_t = average_ranks({{std::log(1), std::log(2), std::log(3)}});
    CHECK(log_t.avg_ranks == std::vector<double>{1, 2, 3});

    // tie-corrected rank sums per row equal k(k+1)/2
    Rng rng(4);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> row(6);
        for (auto& v : row) v = std::round(rng.uniform() * 4) / 4;
        const auto ranks = rank_row(row);
        double sum = 0;
        for (double r : ranks) sum += r;
        CHECK(sum == doctest::Approx(6 * 7 / 2.0));
    }
}

TEST_CASE("friedman matches the oracle fixtures including ties") {
    for (const auto& fx : fixtures::friedman()) {
        INFO(fx.name);
        const auto r = friedman(fx.rows);
        CHECK(r.chi2.statistic == doctest::Approx(fx.stat).epsilon(1e-8));
        CHECK(r.chi2.p == doctest::Approx(fx.p).epsilon(1e-8));
    }
}

TEST_CASE("friedman hand examples") {
    // monotone 4x3 table: chi2 = 8, p = exp(-4)
    const std::vector<std::vector<double>> rows(4, {1.0, 2.0, 3.0});
    const auto r = friedman(rows);
    CHECK(r.chi2.statistic == doctest::Approx(8.0));
    CHECK(r.chi2.df1 == 2);
    CHECK(std::abs(r.chi2.p - 0.018316) < 1e-4);

    // rank-only dependence: strictly increasing per-row transform
    const std::vector<std::vector<double>> transformed = {
        {10, 20, 30}, {0.1, 0.2, 0.3}, {5, 50, 500}, {-3, -2, -1}};
    CHECK(friedman(transformed).chi2.statistic == doctest::Approx(8.0));

    // fully tied table is degenerate
    CHECK_THROWS_AS(friedman({{1.0, 1.0, 1.0}, {2.0, 2.0, 2.0}}), degenerate_error);

    CHECK_THROWS_AS(friedman({{1.0, 2.0, 3.0}}), parameter_error);
    CHECK_THROWS_AS(friedman({{1.0, 2.0}, {1.0, 2.0}}), parameter_error);
}

TEST_CASE("friedman is invariant under row permutation") {
    const std::vector<std::vector<double>> rows = {
        {0.3, 0.5, 0.4}, {0.8, 0.9, 0.7}, {0.2, 0.6, 0.5}, {0.1, 0.3, 0.2}};
    std::vector<std::vector<double>> shuffled = {rows[2], rows[0], rows[3], rows[1]};
    CHECK(friedman(rows).chi2.statistic == doctest::Approx(friedman(shuffled).chi2.statistic));
}

TEST_CASE("f1 metrics") {
    SUBCASE("perfect predictions") {
        CHECK(binary_f1({0, 1, 0, 1}, {0, 1, 0, 1}, 1) == doctest::Approx(1.0));
        CHECK(macro_f1({0, 1, 2}, {0, 1, 2}, 3) == doctest::Approx(1.0));
    }
    SUBCASE("binary hand example: TP=2 FP=1 FN=1") {
        CHECK(binary_f1({1, 1, 1, 0, 0}, {1, 1, 0, 1, 0}, 1) ==
              doctest::Approx(0.6667).epsilon(1e-3));
    }
    SUBCASE("macro hand examples") {
        CHECK(macro_f1({0, 0, 1, 1}, {0, 1, 0, 1}, 2) == doctest::Approx(0.5));
        // class A F1 = 6/7, class B F1 = 0
        CHECK(macro_f1({0, 0, 0, 1}, {0, 0, 0, 0}, 2) == doctest::Approx(0.42857).epsilon(1e-4));
    }
    SUBCASE("label permutation invariance of macro F1") {
        const std::vector<int> truth = {0, 1, 2, 2, 1, 0, 2};
        const std::vector<int> preds = {0, 2, 2, 1, 1, 0, 2};
        auto permute = [](const std::vector<int>& v) {
            std::vector<int> out;
            for (int x : v) out.push_back((x + 1) % 3);  // 0->1,1->2,2->0
            return out;
        };
        CHECK(macro_f1(truth, preds, 3) ==
              doctest::Approx(macro_f1(permute(truth), permute(preds), 3)));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(macro_f1({}, {}, 2), data_error);
        CHECK_THROWS_AS(binary_f1({0, 1}, {0, 1}, 3), parameter_error);
        CHECK_THROWS_AS(macro_f1({0, 5}, {0, 1}, 2), index_error);
    }
}

TEST_CASE("cohens_d definition and antisymmetry") {
    CHECK_THROWS_AS(cohens_d({1, 1, 1}, {1, 1, 1}), degenerate_error);

    // means 1 and 0, both sample sd 1
    const std::vector<double> a = {0, 1, 2};
    const std::vector<double> b = {-1, 0, 1};
    CHECK(cohens_d(a, b) == doctest::Approx(1.0));
    CHECK(cohens_d(b, a) == doctest::Approx(-1.0));
    CHECK(cohens_d(a, a) == doctest::Approx(0.0));
}
