#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "lattheta/proofcheck.hpp"

using namespace lattheta;

namespace {

const double kUnit = 2.0 / (3.0 * std::sqrt(3.0));

}  // namespace

TEST_CASE("Q1 form") {
    CHECK(q1(0, 0) == doctest::Approx(kUnit));
    CHECK(q1(-1, -1) == doctest::Approx(4.0 * kUnit));
    const QuadFormLedger led = enumerate_form(FormId::Q1, 8);
    REQUIRE_FALSE(led.entries.empty());
    CHECK(led.entries.front().value == doctest::Approx(kUnit));
    CHECK(led.entries.front().indices.size() == 3);
    std::set<std::pair<long, long>> first(led.entries.front().indices.begin(), led.entries.front().indices.end());
    CHECK(first == std::set<std::pair<long, long>>{{0, -1}, {-1, 0}, {0, 0}});
    for (std::size_t i = 1; i < led.entries.size(); ++i) CHECK(led.entries[i - 1].value < led.entries[i].value);
    // levels are integers in units of 2/(3 sqrt 3)
    for (long k = -5; k <= 5; ++k)
        for (long l = -5; l <= 5; ++l) CHECK(q1(k, l) == doctest::Approx(q1_level(k, l) * kUnit));
    CHECK(min_level_outside_box(FormId::Q1, 5, 40) == 73);
    CHECK(min_level_outside_box(FormId::Q1, 5, 40) * kUnit == doctest::Approx(28.09).epsilon(1e-3));
}

TEST_CASE("Q2 form") {
    const QuadFormLedger led = enumerate_form(FormId::Q2, 8);
    std::vector<long> levels;
    for (const auto& e : led.entries)
        if (e.level > 0) levels.push_back(e.level);
    CHECK(led.entries.front().level == 0);
    CHECK(led.entries[1].indices.size() == 6);
    REQUIRE(levels.size() >= 5);
    CHECK(std::vector<long>(levels.begin(), levels.begin() + 5) == std::vector<long>{1, 3, 4, 7, 9});
    CHECK(std::find(levels.begin(), levels.end(), 2) == levels.end());
}

TEST_CASE("phi derivatives against finite differences") {
    const double h = 1e-5;
    for (long k : {-2, 0, 3})
        for (long l : {-1, 1, 2})
            for (double y : {0.9, 1.3, 2.2}) {
                CHECK(phi_f_d1(k, l, y) ==
                      doctest::Approx((phi_f(k, l, y + h) - phi_f(k, l, y - h)) / (2 * h)).epsilon(1e-6));
                CHECK(phi_g_d1(k, l, y) ==
                      doctest::Approx((phi_g(k, l, y + h) - phi_g(k, l, y - h)) / (2 * h)).epsilon(1e-6));
                CHECK(psi_d1(k, l, y) ==
                      doctest::Approx((psi(k, l, y + h) - psi(k, l, y - h)) / (2 * h)).epsilon(1e-5));
            }
}

TEST_CASE("golden section") {
    const auto [x, fx] = golden_section_min([](double t) { return (t - 1.3) * (t - 1.3) + 2.0; }, 0.0, 5.0);
    CHECK(x == doctest::Approx(1.3).epsilon(1e-6));
    CHECK(fx == doctest::Approx(2.0));
}

TEST_CASE("growth lemmas") {
    const LemmaReport g1 = check_growth_lemma_1(20);
    CHECK(g1.pass);
    CHECK(g1.details.at("min_ratio") == doctest::Approx(0.62).epsilon(0.01));
    CHECK(g1.details.at("pairs_at_min_ratio") == 3);
    // (0,0) by direct minimization
    const auto [y0, m0] = golden_section_min([](double y) { return phi_f(0, 0, y); }, std::sqrt(3.0) / 2.0, 10.0);
    CHECK(std::sqrt(m0) > 0.5 * std::sqrt(kUnit));
    CHECK(check_growth_lemma_2(10).pass);
    CHECK(check_growth_lemma_11().pass);
    std::vector<double> ys;
    for (int i = 0; i < 200; ++i) ys.push_back(std::sqrt(3.0) / 2.0 + i * 0.05);
    CHECK(check_derivative_bounds(ys, 20).pass);
}

TEST_CASE("concavity reports") {
    CHECK(check_dominant_concavity({6}).pass);
    CHECK(check_dominant_concavity({50}).pass);
    CHECK(check_nine_term_concavity({6, 10, 50}).pass);
    CHECK(check_charged_concavity({5, 10, 50}).pass);
}

TEST_CASE("one-dimensional heat kernel") {
    for (double x : {0.0, 0.1, 0.37, 0.5}) CHECK(std::abs(heat_kernel_1d(10.0, x).value - 1.0) < 1e-10);
    CHECK(heat_inflection_point(0.001) == doctest::Approx(std::sqrt(0.002)).epsilon(0.05));
    CHECK(heat_inflection_point(10.0) == doctest::Approx(0.25).epsilon(1e-6));
    const double x1 = heat_inflection_point(0.1);
    CHECK(x1 > 0.045);
    CHECK(x1 < 0.3);
    CHECK(heat_inflection_point(0.05) < x1);
    CHECK(check_heat_inflection({0.001, 0.01, 0.1, 1.0, 10.0}).pass);
}

TEST_CASE("G monotonicity and the heat decrement") {
    std::vector<double> ys;
    for (int i = 0; i < 60; ++i) ys.push_back(std::sqrt(3.0) / 2.0 + i * (3.0 - std::sqrt(3.0) / 2.0) / 59.0);
    CHECK(check_G_monotone({1.0}, ys).pass);
    CHECK(std::abs(G_alpha(1.0, 50.0) - G_alpha(1.0, 60.0)) < 1e-2);
    CHECK(check_heat_decrement({1, 2, 4}).pass);
}

TEST_CASE("printed constants") {
    const double printed[] = {0.0359475, 0.0000671031, 0.380714, 0.00746983, 0.180383, 1.20646};
    const TailConstant ids[] = {TailConstant::A1, TailConstant::A2, TailConstant::B1,
                                TailConstant::B2, TailConstant::P2a, TailConstant::P2b};
    for (int i = 0; i < 6; ++i) {
        CHECK(tail_constant_printed(ids[i]) == printed[i]);
        const int d = tail_constant_sig_digits(ids[i]);
        const double ulp = std::pow(10.0, std::floor(std::log10(printed[i])) - d + 1);
        CHECK(std::abs(tail_constant(ids[i]) - printed[i]) <= 0.5 * ulp);
    }
    CHECK(check_tail_constants().pass);
}

TEST_CASE("lemma suite") {
    const auto all = run_lemma_suite("all");
    CHECK(all.size() >= 12);
    for (const auto& r : all) {
        INFO(r.lemma_id);
        CHECK(r.pass);
        CHECK(r.worst_margin > 0.0);
    }
    CHECK(std::is_sorted(all.begin(), all.end(),
                         [](const LemmaReport& a, const LemmaReport& b) { return a.lemma_id < b.lemma_id; }));
    const auto ex = run_lemma_suite("exploratory");
    REQUIRE(ex.size() == 1);
    CHECK_FALSE(ex.front().pass);
    CHECK_THROWS_AS(run_lemma_suite("bogus"), Error);
}
