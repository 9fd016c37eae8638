#include <algorithm>
#include <cmath>

#include "lattheta/theta.hpp"

namespace lattheta {

namespace {

void require_t(double t) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
}

double frac(double b) {
    double f = b - std::floor(b);
    return f >= 1.0 ? 0.0 : f;
}

// Tail of sum over |k+beta| > R of exp(-pi t (k+beta)^2), both sides.
double tail_1d(double R, double t) {
    return 2.0 * std::exp(-kPi * t * R * R) / (1.0 - std::exp(-2.0 * kPi * t * std::max(R, 1e-300)));
}

double radius_for(double t, const TruncationPolicy& pol) {
    double R = std::max(1.0, std::sqrt(std::log(2.0 / pol.target_tol) / (kPi * t)));
    const double cap = static_cast<double>(pol.max_radius);
    while (tail_1d(R, t) > pol.target_tol && R < cap) R += 1.0;
    return std::min(R, cap);
}

CertifiedValue direct_theta(double beta, double t, const TruncationPolicy& pol) {
    const double R = radius_for(t, pol);
    const long lo = static_cast<long>(std::ceil(-R - beta));
    const long hi = static_cast<long>(std::floor(R - beta));
    // accumulate outward from the centre so large terms come first
    CompensatedSum acc;
    const long c = static_cast<long>(std::round(-beta));
    for (long j = 0; c - j >= lo || c + j <= hi; ++j) {
        if (c + j <= hi) acc.add(std::exp(-kPi * t * (c + j + beta) * (c + j + beta)));
        if (j > 0 && c - j >= lo) acc.add(std::exp(-kPi * t * (c - j + beta) * (c - j + beta)));
    }
    const double tb = tail_1d(R, t);
    return {acc.result(), tb, static_cast<std::size_t>(hi - lo + 1), tb <= pol.target_tol};
}

CertifiedValue direct_theta_hat(double beta, double t, const TruncationPolicy& pol) {
    const double R = radius_for(t, pol);
    const long K = static_cast<long>(std::floor(R));
    CompensatedSum acc;
    acc.add(1.0);
    for (long k = 1; k <= K; ++k) acc.add(2.0 * std::exp(-kPi * t * k * k) * std::cos(2.0 * kPi * k * beta));
    const double tb = tail_1d(static_cast<double>(K + 1), t);
    return {acc.result(), tb, static_cast<std::size_t>(2 * K + 1), tb <= pol.target_tol};
}

CertifiedValue rescale(CertifiedValue v, double s) {
    v.value *= s;
    v.tail_bound *= s;
    return v;
}

}  // namespace

CertifiedValue theta1d(double beta, double t, const TruncationPolicy& pol) {
    require_t(t);
    beta = frac(beta);
    if (t < 1.0 && pol.allow_dual_route) return rescale(direct_theta_hat(beta, 1.0 / t, pol), 1.0 / std::sqrt(t));
    return direct_theta(beta, t, pol);
}

CertifiedValue theta1d_hat(double beta, double t, const TruncationPolicy& pol) {
    require_t(t);
    beta = frac(beta);
    if (t < 1.0 && pol.allow_dual_route) return rescale(direct_theta(beta, 1.0 / t, pol), 1.0 / std::sqrt(t));
    return direct_theta_hat(beta, t, pol);
}

CertifiedValue theta1d_dbeta(double beta, double t, const TruncationPolicy& pol) {
    require_t(t);
    beta = frac(beta);
    CompensatedSum acc;
    if (t >= 1.0 || !pol.allow_dual_route) {
        const double R = radius_for(t, pol) + 1.0;
        const long lo = static_cast<long>(std::ceil(-R - beta));
        const long hi = static_cast<long>(std::floor(R - beta));
        for (long k = lo; k <= hi; ++k) {
            const double u = k + beta;
            acc.add(-2.0 * kPi * t * u * std::exp(-kPi * t * u * u));
        }
        // |u| e^{-pi t u^2} <= e^{-pi t (|u|-1)^2} once |u| >= 1
        const double tb = 2.0 * kPi * t * tail_1d(R - 1.0, t);
        return {acc.result(), tb, static_cast<std::size_t>(hi - lo + 1), tb <= pol.target_tol};
    }
    // t^{-1/2} sum exp(-pi k^2 / t) cos(2 pi k beta), differentiated term by term
    const double s = 1.0 / t;
    const double R = radius_for(s, pol) + 1.0;
    const long K = static_cast<long>(std::floor(R));
    for (long k = 1; k <= K; ++k)
        acc.add(-4.0 * kPi * k * std::exp(-kPi * s * k * k) * std::sin(2.0 * kPi * k * beta));
    const double tb = 4.0 * kPi * tail_1d(static_cast<double>(K), s) / std::sqrt(t);
    return {acc.result() / std::sqrt(t), tb, static_cast<std::size_t>(K), tb <= pol.target_tol};
}

double product_rep_theta1d_hat(double beta, double t, int n_factors) {
    require_t(t);
    if (n_factors < 1) throw Error(Errc::InvalidArgument, "n_factors must be >= 1");
    const double c = std::cos(2.0 * kPi * beta);
    double p = 1.0;
    for (int k = 1; k <= n_factors; ++k) {
        const double q1 = std::exp(-(2.0 * k - 1.0) * kPi * t);
        p *= (1.0 - std::exp(-2.0 * kPi * k * t)) * (1.0 + 2.0 * c * q1 + q1 * q1);
    }
    return p;
}

CertifiedValue montgomery_Q(double beta, double t, const TruncationPolicy& pol) {
    require_t(t);
    // Q = 4 pi theta_hat(beta;t) * sum_{l>=1} q^{2l-1} / (1 + 2 c q^{2l-1} + q^{4l-2}),
    // q = e^{-pi t}; each denominator is at least (1 - q^{2l-1})^2.
    const CertifiedValue th = theta1d_hat(beta, t, pol);
    const double c = std::cos(2.0 * kPi * frac(beta));
    const double q = std::exp(-kPi * t);
    const double q2 = q * q;
    CompensatedSum acc;
    double ql = q;  // q^{2l-1}
    std::size_t l = 0;
    double rest = 0.0;
    const std::size_t cap = std::max<std::size_t>(pol.max_radius, 16) * 100;
    for (;;) {
        ++l;
        acc.add(ql / (1.0 + 2.0 * c * ql + ql * ql));
        ql *= q2;
        // remaining terms: sum_{j>l} q^{2j-1}/(1-q^{2j-1})^2 <= ql / ((1-ql)^2 (1-q^2))
        rest = ql / ((1.0 - ql) * (1.0 - ql) * (1.0 - q2));
        if (rest < 1e-3 * pol.target_tol || l >= cap) break;
    }
    const double S = acc.result();
    CertifiedValue out;
    out.value = 4.0 * kPi * th.value * S;
    out.tail_bound = 4.0 * kPi * (th.tail_bound * (S + rest) + th.value * rest);
    out.terms_used = th.terms_used + l;
    out.converged = th.converged && out.tail_bound <= pol.target_tol * std::max(1.0, 4.0 * kPi * S);
    return out;
}

double montgomery_A(double t) {
    require_t(t);
    if (t < 1.0) return std::pow(t, -1.5) * std::exp(-kPi / (4.0 * t));
    return (1.0 - 1.0 / 3000.0) * 4.0 * kPi * std::exp(-kPi * t);
}

double montgomery_B(double t) {
    require_t(t);
    if (t < 1.0) return std::pow(t, -1.5);
    return (1.0 + 1.0 / 3000.0) * 4.0 * kPi * std::exp(-kPi * t);
}

}  // namespace lattheta
