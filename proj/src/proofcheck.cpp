#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "lattheta/proofcheck.hpp"
#include "lattheta/theta.hpp"

namespace lattheta {

namespace {

constexpr double kYHex = kSqrt3 / 2.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1.0);
    return v;
}

std::vector<double> logspace(double a, double b, std::size_t n) {
    std::vector<double> v = linspace(std::log(a), std::log(b), n);
    for (double& x : v) x = std::exp(x);
    return v;
}

std::string join(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

std::string key(const char* prefix, double a) {
    std::ostringstream os;
    os << prefix << a;
    return os.str();
}

}  // namespace

LemmaReport make_report(std::string id, std::string params, double margin,
                        std::map<std::string, double> details) {
    LemmaReport r;
    r.lemma_id = std::move(id);
    r.params_tested = std::move(params);
    r.worst_margin = margin;
    r.pass = margin > 0.0;
    r.details = std::move(details);
    return r;
}

// Exact integer checks report (smallest slack + 1/2): a valid non-strict
// inequality scores at least 1/2, any violation at most -1/2.

LemmaReport check_q1_ledger(long box_radius) {
    const QuadFormLedger led = enumerate_form(FormId::Q1, box_radius);
    double margin = kInf;
    using Set = std::vector<std::pair<long, long>>;
    const std::map<long, Set> expected = {
        {1, {{-1, 0}, {0, -1}, {0, 0}}},
        {4, {{-1, -1}, {-1, 1}, {1, -1}}},
        {7, {{-2, 0}, {-2, 1}, {0, -2}, {0, 1}, {1, -2}, {1, 0}}},
    };
    std::set<long> seen;
    for (const auto& e : led.entries) {
        seen.insert(e.level);
        if (std::abs(e.value - e.level * 2.0 / (3.0 * kSqrt3)) > 1e-12 * e.level) margin = -1.0;
        for (auto [k, l] : e.indices) {
            margin = std::min(margin, (e.level - 1) + 0.5);
            margin = std::min(margin, static_cast<double>(e.level - (k * k + l * l)) + 0.5);
        }
    }
    for (const auto& [lev, idx] : expected) {
        auto it = std::find_if(led.entries.begin(), led.entries.end(),
                               [&](const LedgerEntry& e) { return e.level == lev; });
        if (it == led.entries.end() || it->indices != idx) margin = std::min(margin, -0.5);
    }
    for (long gap : {2L, 3L, 5L, 6L})
        if (seen.count(gap)) margin = std::min(margin, -0.5);
    const long lev_gt1 = min_level_outside_box(FormId::Q1, 1, box_radius);
    const long lev_gt5 = min_level_outside_box(FormId::Q1, 5, std::max(box_radius, 12L));
    if (lev_gt1 != 7 || lev_gt5 != 73) margin = std::min(margin, -0.5);
    return make_report("q1_ledger", "Q1 over |k|,|l| <= " + std::to_string(box_radius), margin,
                       {{"min_level_max_gt_1", double(lev_gt1)},
                        {"min_q1_max_gt_1", lev_gt1 * 2.0 / (3.0 * kSqrt3)},
                        {"min_level_max_gt_5", double(lev_gt5)},
                        {"min_q1_max_gt_5", lev_gt5 * 2.0 / (3.0 * kSqrt3)},
                        {"distinct_levels", double(led.entries.size())}});
}

LemmaReport check_q2_ledger(long box_radius) {
    const QuadFormLedger led = enumerate_form(FormId::Q2, box_radius);
    double margin = kInf;
    using Set = std::vector<std::pair<long, long>>;
    const std::map<long, Set> expected = {
        {1, {{-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}}},
        {3, {{-2, 1}, {-1, -1}, {-1, 2}, {1, -2}, {1, 1}, {2, -1}}},
        {4, {{-2, 0}, {-2, 2}, {0, -2}, {0, 2}, {2, -2}, {2, 0}}},
    };
    for (const auto& e : led.entries)
        for (auto [k, l] : e.indices) margin = std::min(margin, static_cast<double>(2 * e.level - (k * k + l * l)) + 0.5);
    bool has2 = false;
    for (const auto& e : led.entries) has2 |= e.level == 2;
    if (has2) margin = std::min(margin, -0.5);
    for (const auto& [lev, idx] : expected) {
        auto it = std::find_if(led.entries.begin(), led.entries.end(),
                               [&](const LedgerEntry& e) { return e.level == lev; });
        if (it == led.entries.end() || it->indices != idx) margin = std::min(margin, -0.5);
    }
    if (q2_level(3, -3) != 9) margin = std::min(margin, -0.5);
    return make_report("q2_ledger", "Q2 over |k|,|l| <= " + std::to_string(box_radius), margin,
                       {{"smallest_levels_1_3_4_7_9",
                         double(led.entries.size() > 5 && led.entries[1].level == 1 && led.entries[2].level == 3 &&
                                led.entries[3].level == 4 && led.entries[4].level == 7 && led.entries[5].level == 9)}});
}

LemmaReport check_growth_lemma_1(long k_max) {
    double margin = kInf, min_ratio = kInf, golden_gap = 0.0;
    std::vector<std::pair<double, std::pair<long, long>>> ratios;
    for (long k = -k_max; k <= k_max; ++k)
        for (long l = -k_max; l <= k_max; ++l) {
            const double m = phi_f_min(k, l), q = q1(k, l);
            margin = std::min(margin, m - 0.5 * std::sqrt(q));
            ratios.push_back({m / std::sqrt(q), {k, l}});
            // independent 1D minimization as a cross-check of the closed form
            // the stationary point passes 50 once |k| > 25, so the bracket grows with it
            const double top = std::max(50.0, 2.0 * phi_f_stationary(k, l));
            const auto g = golden_section_min([&](double y) { return phi_f(k, l, y); }, kYHex, top, 1e-13);
            const double gm = std::min({g.second, phi_f(k, l, kYHex), phi_f(k, l, top)});
            golden_gap = std::max(golden_gap, (std::abs(gm - m) / std::max(1.0, m)));
        }
    std::sort(ratios.begin(), ratios.end());
    min_ratio = ratios.front().first;
    std::size_t at_min = 0;
    bool dominant = true;
    const std::set<std::pair<long, long>> dom = {{0, 0}, {-1, 0}, {0, -1}};
    for (const auto& r : ratios)
        if (r.first < min_ratio + 1e-12) {
            ++at_min;
            dominant &= dom.count(r.second) > 0;
        }
    if (golden_gap > 1e-9) margin = std::min(margin, -golden_gap);
    return make_report("growth1", "|k|,|l| <= " + std::to_string(k_max) + ", y >= sqrt(3)/2", margin,
                       {{"min_ratio", min_ratio},
                        {"pairs_at_min_ratio", double(at_min)},
                        {"min_ratio_only_dominant_pairs", double(dominant)},
                        {"golden_section_rel_gap", golden_gap}});
}

LemmaReport check_derivative_bounds(const std::vector<double>& y_grid, long k_max) {
    double r1 = 0.0, r2 = 0.0;
    for (double y : y_grid)
        for (long k = -k_max; k <= k_max; ++k)
            for (long l = -k_max; l <= k_max; ++l) {
                const double q = q1(k, l);
                r1 = std::max(r1, std::abs(phi_f_d1(k, l, y)) / q);
                r2 = std::max(r2, std::abs(phi_f_d2(k, l, y)) / q);
            }
    const double asym = phi_f_d2(400, 0, kYHex) / q1(400, 0);
    return make_report("lem66_derivative_bounds",
                       std::to_string(y_grid.size()) + " y in [sqrt(3)/2,10], |k|,|l| <= " + std::to_string(k_max),
                       std::min(2.0 - r1, 3.0 - r2),
                       {{"max_d1_over_q1", r1}, {"max_d2_over_q1", r2}, {"d2_ratio_at_k400", asym}});
}

LemmaReport check_growth_lemma_11(double alpha, long k_max) {
    double margin = kInf;
    for (double y : linspace(kYHex, 10.0, 400))
        for (long k = -k_max; k <= k_max; ++k)
            for (long l = -k_max; l <= k_max; ++l) {
                const double q = q1(k, l);
                const double rhs = 5.0 * kPi * kPi * alpha * alpha * q * q * std::exp(-kPi * alpha / 2.0 * std::sqrt(q));
                const double lhs = std::abs(dominant_term_d2(k, l, alpha, y));
                margin = std::min(margin, (rhs - lhs) / rhs);
            }
    return make_report("growth11", "alpha=" + std::to_string(alpha) + ", |k|,|l| <= " + std::to_string(k_max), margin);
}

LemmaReport check_growth_lemma_2(long k_max) {
    double margin = kInf, gap = 0.0;
    for (long k = -k_max; k <= k_max; ++k)
        for (long l = -k_max; l <= k_max; ++l) {
            if (l == 0) continue;  // the l = 0 terms tend to +-1 and are handled separately
            const double m = phi_g_min(k, l);
            margin = std::min(margin, m - std::sqrt(q2(k, l)));
            const auto g = golden_section_min([&](double y) { return phi_g(k, l, y); }, kYHex, 50.0, 1e-13);
            const double gm = std::min({g.second, phi_g(k, l, kYHex)});
            gap = std::max(gap, std::abs(gm - m) / std::max(1.0, m));
        }
    if (gap > 1e-9) margin = std::min(margin, -gap);
    return make_report("growth2", "l != 0, |k|,|l| <= " + std::to_string(k_max), margin,
                       {{"golden_section_rel_gap", gap}});
}

namespace {

// max over the window of d2 / (alpha e^{-2 pi alpha/(3 sqrt 3)})
double concavity_ratio(double alpha, bool nine_terms, double* others = nullptr) {
    const double scale = alpha * std::exp(-2.0 * kPi * alpha / (3.0 * kSqrt3));
    double worst = -kInf, oth = 0.0;
    for (double y : linspace(kYHex, kYHex + 1.0 / (3.0 * std::sqrt(alpha)), 801)) {
        double s = dominant_term_d2(0, 0, alpha, y);
        if (nine_terms) {
            double rest = 0.0;
            for (long k = -1; k <= 1; ++k)
                for (long l = -1; l <= 1; ++l) {
                    if (k == 0 && l == 0) continue;
                    const double t = dominant_term_d2(k, l, alpha, y);
                    s += t;
                    if (!((k == -1 && l == 0) || (k == 0 && l == -1))) rest += t;
                }
            oth = std::max(oth, std::abs(rest) / scale);
        }
        worst = std::max(worst, s / scale);
    }
    if (others) *others = oth;
    return worst;
}

}  // namespace

LemmaReport check_dominant_concavity(const std::vector<double>& alphas) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        if (a < 6.0) throw Error(Errc::InvalidArgument, "dominant concavity needs alpha >= 6");
        const double r = concavity_ratio(a, false);
        det[key("ratio_alpha_", a)] = r;
        margin = std::min(margin, -0.84 - r);
    }
    return make_report("lem4_dominant_concavity", "alpha in {" + join(alphas) + "}", margin, det);
}

LemmaReport check_nine_term_concavity(const std::vector<double>& alphas) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        if (a < 6.0) throw Error(Errc::InvalidArgument, "nine-term concavity needs alpha >= 6");
        double oth = 0.0;
        const double r = concavity_ratio(a, true, &oth);
        det[key("ratio_alpha_", a)] = r;
        det[key("other_terms_alpha_", a)] = oth;
        margin = std::min(margin, -2.5 - r);
    }
    return make_report("lem44_nine_term_concavity", "alpha in {" + join(alphas) + "}", margin, det);
}

namespace {

double charged_ratio(double alpha, bool printed) {
    double worst = -kInf;
    for (double y : linspace(kYHex, 1.0, 801)) {
        double s = 0.0;
        for (long k = -1; k <= 1; ++k)
            for (long l = -1; l <= 1; ++l) s += charged_term_d2(k, l, alpha, y);
        const double scale = printed ? 0.6 * kPi * kPi * alpha * alpha * std::exp(kPi * alpha * (y - 2.0))
                                     : 0.6 * kPi * kPi * alpha * alpha * std::exp(-kPi * alpha / y) / std::pow(y, 6);
        worst = std::max(worst, s / scale);
    }
    return worst;
}

}  // namespace

LemmaReport check_charged_concavity(const std::vector<double>& alphas) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        const double r = charged_ratio(a, false);
        det[key("ratio_alpha_", a)] = r;
        margin = std::min(margin, -1.0 - r);
    }
    return make_report("almostdone_nine_term_charged",
                       "alpha in {" + join(alphas) + "}, y in [sqrt(3)/2,1], bound -0.6 pi^2 a^2 e^{-pi a/y}/y^6",
                       margin, det);
}

LemmaReport check_charged_concavity_printed(const std::vector<double>& alphas) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        const double r = charged_ratio(a, true);
        det[key("ratio_alpha_", a)] = r;
        margin = std::min(margin, -1.0 - r);
    }
    return make_report("almostdone_printed_bound",
                       "alpha in {" + join(alphas) + "}, y in [sqrt(3)/2,1], bound -0.6 pi^2 a^2 e^{pi a (y-2)}",
                       margin, det);
}

// ---- heat kernel ----

CertifiedValue heat_kernel_1d(double t, double x, const TruncationPolicy& pol) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
    return theta1d_hat(x, 4.0 * kPi * t, pol);
}

double heat_kernel_1d_xx(double t, double x) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
    CompensatedSum acc;
    if (4.0 * kPi * t >= 1.0) {
        for (long k = 1; k < 200; ++k) {
            const double w = std::exp(-4.0 * kPi * kPi * k * k * t);
            if (w == 0.0) break;
            acc.add(-2.0 * 4.0 * kPi * kPi * k * k * w * std::cos(2.0 * kPi * k * x));
        }
        return acc.result();
    }
    // image sum: u = (4 pi t)^{-1/2} sum_m exp(-(x+m)^2/(4t))
    const long M = 2 + static_cast<long>(std::ceil(std::sqrt(4.0 * t * 750.0)));
    for (long m = -M; m <= M; ++m) {
        const double s = x + m;
        const double g = std::exp(-s * s / (4.0 * t));
        acc.add((s * s / (4.0 * t * t) - 1.0 / (2.0 * t)) * g);
    }
    return acc.result() / std::sqrt(4.0 * kPi * t);
}

double heat_inflection_point(double t, double tol) {
    double lo = 0.0, hi = 0.5;
    if (!(heat_kernel_1d_xx(t, lo) < 0.0 && heat_kernel_1d_xx(t, hi) > 0.0))
        throw Error(Errc::NoConvergence, "no sign change of u_xx on (0, 1/2)");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (heat_kernel_1d_xx(t, mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

LemmaReport check_heat_inflection(const std::vector<double>& ts) {
    double max_root = 0.0, convex = kInf;
    bool monotone = true;
    double prev = -1.0;
    std::map<std::string, double> det;
    for (double t : ts) {
        const double r = heat_inflection_point(t);
        max_root = std::max(max_root, r);
        monotone &= r >= prev - 1e-9;
        prev = r;
        double peak = 0.0;
        for (double x : linspace(0.0, 0.5, 101)) peak = std::max(peak, std::abs(heat_kernel_1d_xx(t, x)));
        for (double x : linspace(0.3, 0.7, 81)) convex = std::min(convex, heat_kernel_1d_xx(t, x) / peak);
    }
    det["max_root"] = max_root;
    det["roots_monotone_in_t"] = monotone;
    det["min_normalized_uxx_on_0.3_0.7"] = convex;
    det["root_at_first_t"] = heat_inflection_point(ts.front());
    det["root_at_last_t"] = heat_inflection_point(ts.back());
    // u_xx at x = 0.3 is exponentially small for short times, so only its sign enters the margin
    const double margin = std::min({0.3 - max_root, convex > 0.0 ? kInf : -1.0, monotone ? kInf : -1.0});
    return make_report("heat_inflection", std::to_string(ts.size()) + " log-spaced t in [" +
                                              std::to_string(ts.front()) + "," + std::to_string(ts.back()) + "]",
                       margin, det);
}

// ---- G_alpha ----

namespace {

// G_alpha(y) - 1 without forming the leading 1 when the direct series is used.
double G_minus_one(double alpha, double y) {
    const double t = alpha / y, beta = 0.5 - 1.0 / (8.0 * y * y);
    if (t < 1.0) return theta1d_hat(beta, t).value - 1.0;
    CompensatedSum acc;
    for (long k = 1; k < 100; ++k) {
        const double w = std::exp(-kPi * t * k * k);
        if (w < 1e-300) break;
        acc.add(2.0 * w * std::cos(2.0 * kPi * k * beta));
    }
    return acc.result();
}

}  // namespace

double G_alpha(double alpha, double y) { return 1.0 + G_minus_one(alpha, y); }

LemmaReport check_G_monotone(const std::vector<double>& alphas, const std::vector<double>& y_grid) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        double worst = kInf;
        for (std::size_t i = 0; i + 1 < y_grid.size(); ++i) {
            const double g0 = G_minus_one(a, y_grid[i]), g1 = G_minus_one(a, y_grid[i + 1]);
            worst = std::min(worst, (g0 - g1) / std::abs(g0));
        }
        det[key("min_rel_step_alpha_", a)] = worst;
        det[key("G_at_y50_alpha_", a)] = G_alpha(a, 50.0);
        margin = std::min(margin, worst);
    }
    return make_report("lem_mon_G_decreasing",
                       "alpha in {" + join(alphas) + "}, " + std::to_string(y_grid.size()) + " y in [" +
                           std::to_string(y_grid.front()) + "," + std::to_string(y_grid.back()) + "]",
                       margin, det);
}

LemmaReport check_heat_decrement(const std::vector<double>& alphas) {
    double margin = kInf;
    std::map<std::string, double> det;
    for (double a : alphas) {
        if (a < 1.0) throw Error(Errc::InvalidArgument, "decrement estimate needs alpha >= 1");
        const double dec = G_minus_one(a, kYHex) - G_minus_one(a, kYHex + 1.0 / (4.0 * std::sqrt(a)));
        const double bound = 2.0 * std::sqrt(a) / 3.0 * std::exp(-2.0 * kPi * a / kSqrt3);
        det[key("ratio_alpha_", a)] = dec / bound;
        margin = std::min(margin, (dec - bound) / bound);
    }
    return make_report("heat_est_decrement", "alpha in {" + join(alphas) + "}", margin, det);
}

// ---- printed constants ----

const char* tail_constant_name(TailConstant id) {
    switch (id) {
        case TailConstant::A1: return "A1";
        case TailConstant::A2: return "A2";
        case TailConstant::B1: return "B1";
        case TailConstant::B2: return "B2";
        case TailConstant::P2a: return "P2a";
        case TailConstant::P2b: return "P2b";
    }
    return "?";
}

double tail_constant_printed(TailConstant id) {
    switch (id) {
        case TailConstant::A1: return 0.0359475;
        case TailConstant::A2: return 0.0000671031;
        case TailConstant::B1: return 0.380714;
        case TailConstant::B2: return 0.00746983;
        case TailConstant::P2a: return 0.180383;
        case TailConstant::P2b: return 1.20646;
    }
    return 0.0;
}

int tail_constant_sig_digits(TailConstant) { return 6; }

double tail_constant(TailConstant id) {
    auto series = [](long from, auto term) {
        CompensatedSum acc;
        for (long n = from; n < 80; ++n) acc.add(term(static_cast<double>(n)));
        return acc.result();
    };
    const double p = kPi;
    switch (id) {
        case TailConstant::A1:
            return series(2, [&](double l) { return l * l * std::exp(-p / 2 * (l * l + (l - 4) / 2)); });
        case TailConstant::A2:
            return series(2, [&](double l) { return l * l * std::exp(-p * (l * l + (l - 3) / 2)); });
        case TailConstant::B1:
            return series(2, [&](double l) { return l * l * std::exp(-p / 2 * (l * l - l - 0.5)); });
        case TailConstant::B2:
            return series(2, [&](double l) { return l * l * std::exp(-p * (l * l - l)); });
        case TailConstant::P2a: {
            const double sk = series(1, [&](double k) { return k * k * std::exp(-p * (k * k - k - 1)); });
            const double sk2 = series(2, [&](double k) { return k * k * std::exp(-p * (k * k - k - 1)); });
            const double sl = series(2, [&](double l) { return l * l * std::exp(-p * (l * l - 1)); });
            return sk2 + sl * sk;
        }
        case TailConstant::P2b: {
            const double c = 1.0 / (2.0 * p) + 0.25;
            const double s1 = series(1, [&](double l) { return l * l * std::exp(-p / 2 * (l * l - 1.5)); });
            const double s2 = series(1, [&](double l) { return l * l * std::exp(-p / 2 * (l * l - 1)); });
            const double s3 = series(1, [&](double k) { return std::exp(-p * (k * k - 0.25)) * (k * k + c); });
            return c * s1 + 2.0 * s2 * s3;
        }
    }
    return 0.0;
}

LemmaReport check_tail_constants() {
    double margin = kInf;
    std::map<std::string, double> det;
    for (TailConstant id : {TailConstant::A1, TailConstant::A2, TailConstant::B1, TailConstant::B2,
                            TailConstant::P2a, TailConstant::P2b}) {
        const double v = tail_constant(id), pr = tail_constant_printed(id);
        const double half_ulp = 0.5 * std::pow(10.0, std::floor(std::log10(pr)) - (tail_constant_sig_digits(id) - 1));
        det[tail_constant_name(id)] = v;
        // relative position inside the rounding interval of the printed value
        margin = std::min(margin, 1.0 - std::abs(v - pr) / half_ulp);
    }
    return make_report("printed_constants", "A1,A2,B1,B2,P2a,P2b to 6 significant digits", margin, det);
}

// ---- Montgomery ----

LemmaReport check_montgomery_sandwich(std::size_t n_beta, std::size_t n_t) {
    double margin = kInf;
    for (double t : logspace(0.2, 10.0, n_t))
        for (double b : linspace(0.0, 0.5, n_beta)) {
            const double q = montgomery_Q(b, t).value;
            const double A = montgomery_A(t), B = montgomery_B(t);
            margin = std::min({margin, (q - A) / A, (B - q) / B});
        }
    return make_report("montgomery_sandwich",
                       std::to_string(n_beta) + " beta in [0,1/2] x " + std::to_string(n_t) + " t in [0.2,10]",
                       margin);
}

LemmaReport check_closed_form_derivatives(std::size_t probes) {
    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<long> K(-10, 10);
    std::uniform_real_distribution<double> Y(kYHex, 5.0);
    const double h = 1e-4;
    double worst = 0.0;
    auto fd = [&](auto f, double y) {
        return (f(y - 2.0 * h) - 8.0 * f(y - h) + 8.0 * f(y + h) - f(y + 2.0 * h)) / (12.0 * h);
    };
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
    for (std::size_t i = 0; i < probes; ++i) {
        const long k = K(rng), l = K(rng);
        const double y = Y(rng);
        worst = std::max(worst, rel(fd([&](double s) { return phi_f(k, l, s); }, y), phi_f_d1(k, l, y)));
        worst = std::max(worst, rel(fd([&](double s) { return phi_f_d1(k, l, s); }, y), phi_f_d2(k, l, y)));
        worst = std::max(worst, rel(fd([&](double s) { return phi_g(k, l, s); }, y), phi_g_d1(k, l, y)));
        worst = std::max(worst, rel(fd([&](double s) { return phi_g_d1(k, l, s); }, y), phi_g_d2(k, l, y)));
        worst = std::max(worst, rel(fd([&](double s) { return psi(k, l, s); }, y), psi_d1(k, l, y)));
        worst = std::max(worst, rel(fd([&](double s) { return psi_d1(k, l, s); }, y), psi_d2(k, l, y)));
    }
    return make_report("closed_form_derivatives", std::to_string(probes) + " random (k,l,y), tolerance 1e-7",
                       1.0 - worst / 1e-7, {{"max_rel_error", worst}});
}

std::vector<LemmaReport> run_lemma_suite(const std::string& suite) {
    std::vector<LemmaReport> out;
    if (suite == "exploratory") {
        out.push_back(check_charged_concavity_printed({5, 6, 10, 20, 30, 50}));
        return out;
    }
    const bool quick = suite == "quick";
    if (!quick && suite != "all") throw Error(Errc::InvalidArgument, "unknown suite: " + suite);
    const long km = quick ? 20 : 30;
    out.push_back(check_q1_ledger(8));
    out.push_back(check_q2_ledger(8));
    out.push_back(check_growth_lemma_1(km));
    out.push_back(check_growth_lemma_2(quick ? 10 : 20));
    out.push_back(check_derivative_bounds(linspace(kYHex, 10.0, 200), km));
    out.push_back(check_growth_lemma_11(5.0, quick ? 8 : 12));
    out.push_back(check_dominant_concavity({6, 10, 50}));
    out.push_back(check_nine_term_concavity({6, 10, 50}));
    out.push_back(check_charged_concavity({5, 6, 8, 10, 20, 50, 100}));
    out.push_back(check_heat_inflection(logspace(1e-3, 10.0, quick ? 21 : 61)));
    out.push_back(check_G_monotone({0.5, 1, 2, 4, 8}, linspace(kYHex, 3.0, quick ? 40 : 120)));
    out.push_back(check_heat_decrement({1, 2, 4, 6, 8, 10, 20, 50}));
    out.push_back(check_tail_constants());
    out.push_back(check_montgomery_sandwich(50, 9));
    out.push_back(check_closed_form_derivatives(quick ? 200 : 1000));
    std::sort(out.begin(), out.end(), [](const LemmaReport& a, const LemmaReport& b) { return a.lemma_id < b.lemma_id; });
    return out;
}

}  // namespace lattheta
