#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lattheta/core.hpp"

namespace lattheta {

// ---- quadratic forms ----

enum class FormId { Q1, Q2 };

double q1(long k, long l);
double q2(long k, long l);
// Q1 in units of 2/(3 sqrt 3) and Q2 itself; both are integers.
long q1_level(long k, long l);
long q2_level(long k, long l);

struct LedgerEntry {
    double value;
    long level;
    std::vector<std::pair<long, long>> indices;
};

struct QuadFormLedger {
    FormId form_id;
    long box_radius;
    std::vector<LedgerEntry> entries;  // ascending by value
};

QuadFormLedger enumerate_form(FormId form, long box_radius);

// Smallest level over the annulus inner < max(|k|,|l|) <= outer.
long min_level_outside_box(FormId form, long inner, long outer);

// ---- phi / psi families along x = 1/2 ----

// shifted family: phi(y) = (2k+l+1)^2/(4y) + y (l + 1/2 - 1/(8y^2))^2
double phi_f(long k, long l, double y);
double phi_f_d1(long k, long l, double y);
double phi_f_d2(long k, long l, double y);

// charged family: phi(y) = (k^2 + kl + (1/4 + y^2) l^2)/y
double phi_g(long k, long l, double y);
double phi_g_d1(long k, long l, double y);
double phi_g_d2(long k, long l, double y);

// psi(y) = cos(2 pi (k (1/2 - 1/(8y^2)) - l (1/4 + 1/(16y^2))))
double psi(long k, long l, double y);
double psi_d1(long k, long l, double y);
double psi_d2(long k, long l, double y);

// Unique positive stationary point of phi_f, and the min over y >= sqrt(3)/2.
double phi_f_stationary(long k, long l);
double phi_f_min(long k, long l);
// min over y >= sqrt(3)/2 of phi_g (l != 0), stationary point |1/2 + k/l|.
double phi_g_min(long k, long l);

// Golden-section minimum of a unimodal function on [a, b].
std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double a, double b,
                                             double tol = 1e-12);

// Second y-derivative of exp(-pi alpha phi_f) in closed form.
double dominant_term_d2(long k, long l, double alpha, double y);
// Second y-derivative of exp(-pi alpha phi_g) psi in closed form.
double charged_term_d2(long k, long l, double alpha, double y);

// ---- reports ----

struct LemmaReport {
    std::string lemma_id;
    std::string params_tested;
    double worst_margin = 0.0;
    bool pass = false;
    std::map<std::string, double> details;
};

LemmaReport make_report(std::string id, std::string params, double margin,
                        std::map<std::string, double> details = {});

LemmaReport check_q1_ledger(long box_radius = 8);
LemmaReport check_q2_ledger(long box_radius = 8);
LemmaReport check_growth_lemma_1(long k_max = 20);
LemmaReport check_derivative_bounds(const std::vector<double>& y_grid, long k_max = 20);
LemmaReport check_growth_lemma_11(double alpha = 5.0, long k_max = 12);
LemmaReport check_growth_lemma_2(long k_max = 10);
LemmaReport check_dominant_concavity(const std::vector<double>& alphas);
LemmaReport check_nine_term_concavity(const std::vector<double>& alphas);
LemmaReport check_charged_concavity(const std::vector<double>& alphas);
LemmaReport check_charged_concavity_printed(const std::vector<double>& alphas);
LemmaReport check_heat_inflection(const std::vector<double>& ts);
LemmaReport check_G_monotone(const std::vector<double>& alphas, const std::vector<double>& y_grid);
LemmaReport check_heat_decrement(const std::vector<double>& alphas);
LemmaReport check_tail_constants();
LemmaReport check_montgomery_sandwich(std::size_t n_beta = 50, std::size_t n_t = 9);
LemmaReport check_closed_form_derivatives(std::size_t probes = 1000);

// suite "all" (every report expected to pass), "quick", or "exploratory"
std::vector<LemmaReport> run_lemma_suite(const std::string& suite);

// ---- printed series constants ----

enum class TailConstant { A1, A2, B1, B2, P2a, P2b };
double tail_constant(TailConstant id);
const char* tail_constant_name(TailConstant id);
double tail_constant_printed(TailConstant id);
int tail_constant_sig_digits(TailConstant id);

// ---- one-dimensional heat kernel ----

// u(t,x) = 1 + 2 sum exp(-4 pi^2 k^2 t) cos(2 pi k x)
CertifiedValue heat_kernel_1d(double t, double x, const TruncationPolicy& pol = {});
// d^2u/dx^2, switching to the Gaussian image sum for short times
double heat_kernel_1d_xx(double t, double x);
// Inflection point of u(t,.) inside (0, 1/2) by bisection.
double heat_inflection_point(double t, double tol = 1e-10);

// G_alpha(y) = sum_k exp(-pi alpha k^2 / y) cos(2 pi k (1/2 - 1/(8 y^2)))
double G_alpha(double alpha, double y);

}  // namespace lattheta
