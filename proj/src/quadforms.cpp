#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "lattheta/proofcheck.hpp"

namespace lattheta {

namespace {
constexpr double kYHex = kSqrt3 / 2.0;
}  // namespace

// Q1 = (2/(3 sqrt 3)) (1 + 3(k+l) + 3(k^2+kl+l^2))
long q1_level(long k, long l) { return 1 + 3 * (k + l) + 3 * (k * k + k * l + l * l); }
long q2_level(long k, long l) { return k * k + k * l + l * l; }

double q1(long k, long l) {
    const double a = k + (l + 1) / 2.0, b = l + 1.0 / 3.0;
    return 2.0 / kSqrt3 * a * a + kSqrt3 / 2.0 * b * b;
}

double q2(long k, long l) { return static_cast<double>(q2_level(k, l)); }

QuadFormLedger enumerate_form(FormId form, long box_radius) {
    if (box_radius < 1) throw Error(Errc::InvalidArgument, "box_radius must be >= 1");
    std::map<long, LedgerEntry> by_level;
    for (long k = -box_radius; k <= box_radius; ++k)
        for (long l = -box_radius; l <= box_radius; ++l) {
            const long lev = form == FormId::Q1 ? q1_level(k, l) : q2_level(k, l);
            auto& e = by_level[lev];
            e.level = lev;
            e.value = form == FormId::Q1 ? q1(k, l) : q2(k, l);
            e.indices.emplace_back(k, l);
        }
    QuadFormLedger out{form, box_radius, {}};
    for (auto& [lev, e] : by_level) {
        std::sort(e.indices.begin(), e.indices.end());
        out.entries.push_back(std::move(e));
    }
    return out;
}

long min_level_outside_box(FormId form, long inner, long outer) {
    long best = -1;
    for (long k = -outer; k <= outer; ++k)
        for (long l = -outer; l <= outer; ++l) {
            if (std::max(std::labs(k), std::labs(l)) <= inner) continue;
            const long lev = form == FormId::Q1 ? q1_level(k, l) : q2_level(k, l);
            if (best < 0 || lev < best) best = lev;
        }
    return best;
}

// ---- phi_f ----

namespace {
double P_f(long k, long l) { return 8.0 * k * k + 8.0 * k * (l + 1) + 2.0 * l * (l + 1) + 1.0; }
}  // namespace

double phi_f(long k, long l, double y) {
    const double s = 2.0 * k + l + 1.0, c = l + 0.5 - 1.0 / (8.0 * y * y);
    return s * s / (4.0 * y) + y * c * c;
}

double phi_f_d1(long k, long l, double y) {
    const double y2 = y * y, m = 2.0 * l + 1.0;
    return (16.0 * y2 * y2 * m * m - 8.0 * y2 * P_f(k, l) - 3.0) / (64.0 * y2 * y2);
}

double phi_f_d2(long k, long l, double y) {
    return (4.0 * y * y * P_f(k, l) + 3.0) / (16.0 * std::pow(y, 5));
}

double phi_f_stationary(long k, long l) {
    // 16 m^2 w^2 - 8 P w - 3 = 0 in w = y^2 has exactly one positive root
    const double m2 = (2.0 * l + 1.0) * (2.0 * l + 1.0), P = P_f(k, l);
    const double w = (8.0 * P + std::sqrt(64.0 * P * P + 192.0 * m2)) / (32.0 * m2);
    return std::sqrt(w);
}

double phi_f_min(long k, long l) { return phi_f(k, l, std::max(phi_f_stationary(k, l), kYHex)); }

// ---- phi_g ----

double phi_g(long k, long l, double y) {
    return (k * k + k * l + (0.25 + y * y) * l * l) / y;
}

double phi_g_d1(long k, long l, double y) {
    const double C = (k + 0.5 * l) * (k + 0.5 * l);
    return -C / (y * y) + static_cast<double>(l * l);
}

double phi_g_d2(long k, long l, double y) {
    const double C = (k + 0.5 * l) * (k + 0.5 * l);
    return 2.0 * C / (y * y * y);
}

double phi_g_min(long k, long l) {
    if (l == 0) throw Error(Errc::InvalidArgument, "phi_g_min needs l != 0");
    const double y0 = std::abs(0.5 + static_cast<double>(k) / static_cast<double>(l));
    return phi_g(k, l, std::max(y0, kYHex));
}

// ---- psi ----

namespace {
double psi_arg(long k, long l, double y) {
    return k * (0.5 - 1.0 / (8.0 * y * y)) - l * (0.25 + 1.0 / (16.0 * y * y));
}
double psi_arg_d1(long k, long l, double y) { return (k / 4.0 + l / 8.0) / (y * y * y); }
double psi_arg_d2(long k, long l, double y) { return -3.0 * (k / 4.0 + l / 8.0) / (y * y * y * y); }
}  // namespace

double psi(long k, long l, double y) { return std::cos(2.0 * kPi * psi_arg(k, l, y)); }

double psi_d1(long k, long l, double y) {
    return -2.0 * kPi * psi_arg_d1(k, l, y) * std::sin(2.0 * kPi * psi_arg(k, l, y));
}

double psi_d2(long k, long l, double y) {
    const double th = 2.0 * kPi * psi_arg(k, l, y), d1 = psi_arg_d1(k, l, y);
    return -2.0 * kPi * psi_arg_d2(k, l, y) * std::sin(th) - 4.0 * kPi * kPi * d1 * d1 * std::cos(th);
}

std::pair<double, double> golden_section_min(const std::function<double(double)>& f, double a, double b,
                                             double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

double dominant_term_d2(long k, long l, double alpha, double y) {
    const double d1 = phi_f_d1(k, l, y), d2 = phi_f_d2(k, l, y);
    return (kPi * kPi * alpha * alpha * d1 * d1 - kPi * alpha * d2) * std::exp(-kPi * alpha * phi_f(k, l, y));
}

double charged_term_d2(long k, long l, double alpha, double y) {
    const double p1 = phi_g_d1(k, l, y), p2 = phi_g_d2(k, l, y);
    const double s0 = psi(k, l, y), s1 = psi_d1(k, l, y), s2 = psi_d2(k, l, y);
    const double pa = kPi * alpha;
    return std::exp(-pa * phi_g(k, l, y)) * ((pa * pa * p1 * p1 - pa * p2) * s0 - 2.0 * pa * p1 * s1 + s2);
}

}  // namespace lattheta
