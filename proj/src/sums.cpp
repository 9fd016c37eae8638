#include "sums.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace lattheta::detail {

double gaussian_tail(double R, double alpha, double d, double covol) {
    const double pa = kPi * alpha;
    const double e = std::exp(-pa * R * R);
    const double tail_int = std::erfc(std::sqrt(pa) * R) / (2.0 * std::sqrt(alpha));
    return kPi / covol * (e * (R * R + 1.0 / pa) + 2.0 * d * (R * e + tail_int) + d * d * e);
}

ReducedBasis lagrange_reduce(const Mat2& G) {
    Vec2 b1 = G.col0(), b2 = G.col1();
    long U[2][2] = {{1, 0}, {0, 1}};
    for (int iter = 0; iter < 200; ++iter) {
        if (norm2(b1) > norm2(b2)) {
            std::swap(b1, b2);
            for (auto& row : U) std::swap(row[0], row[1]);
        }
        const double mu = std::round(dot(b1, b2) / norm2(b1));
        if (mu == 0.0) break;
        b2 = {b2.x - mu * b1.x, b2.y - mu * b1.y};
        const long m = static_cast<long>(mu);
        for (auto& row : U) row[1] -= m * row[0];
    }
    ReducedBasis rb;
    rb.B = {b1.x, b2.x, b1.y, b2.y};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) rb.U[i][j] = U[i][j];
    rb.shortest = std::sqrt(norm2(b1));
    rb.d = 0.5 * (std::sqrt(norm2(b1)) + std::sqrt(norm2(b2)));
    return rb;
}

std::vector<Term> enumerate_reduced(const ReducedBasis& rb, Vec2 c, double R) {
    const Vec2 b1 = rb.B.col0(), b2 = rb.B.col1();
    const double r11 = std::sqrt(norm2(b1));
    const Vec2 q{b1.x / r11, b1.y / r11};
    const double r12 = dot(q, b2);
    const double r22 = q.x * b2.y - q.y * b2.x;
    const double c1 = dot(q, c), c2 = q.x * c.y - q.y * c.x;

    std::vector<Term> out;
    const double lo2 = (-R - c2) / r22, hi2 = (R - c2) / r22;
    const long m_lo = static_cast<long>(std::ceil(std::min(lo2, hi2)));
    const long m_hi = static_cast<long>(std::floor(std::max(lo2, hi2)));
    for (long m = m_lo; m <= m_hi; ++m) {
        const double py = r22 * m + c2;
        const double rem = R * R - py * py;
        if (rem < 0.0) continue;
        const double w = std::sqrt(rem);
        const double off = r12 * m + c1;
        const long n_lo = static_cast<long>(std::ceil((-w - off) / r11));
        const long n_hi = static_cast<long>(std::floor((w - off) / r11));
        for (long n = n_lo; n <= n_hi; ++n) {
            const double px = r11 * n + off;
            const double r2 = px * px + py * py;
            if (r2 > R * R) continue;
            Term t;
            t.k = rb.U[0][0] * n + rb.U[0][1] * m;
            t.l = rb.U[1][0] * n + rb.U[1][1] * m;
            t.r2 = r2;
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.r2 < b.r2; });
    return out;
}

std::vector<Term> enumerate_disk(const Mat2& G, Vec2 c, double R) {
    return enumerate_reduced(lagrange_reduce(G), c, R);
}

RadiusPlan plan_radius(const Mat2& G, double alpha, const TruncationPolicy& pol) {
    if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
    if (!(pol.target_tol > 0.0)) throw Error(Errc::InvalidArgument, "target_tol must be positive");
    RadiusPlan plan;
    plan.rb = lagrange_reduce(G);
    const double covol = std::abs(G.det());
    auto tail = [&](double R) { return gaussian_tail(R, alpha, plan.rb.d, covol); };

    const double r_cap = static_cast<double>(pol.max_radius) * plan.rb.shortest;
    double hi = std::max(1.0 / std::sqrt(alpha), plan.rb.d);
    while (tail(hi) > pol.target_tol && hi < r_cap) hi *= 2.0;
    if (hi >= r_cap && tail(r_cap) > pol.target_tol) {
        plan.radius = r_cap;
        plan.converged = false;
    } else {
        double lo = 0.0;
        while (hi - lo > 1e-3 * hi) {
            const double mid = 0.5 * (lo + hi);
            (tail(mid) > pol.target_tol ? lo : hi) = mid;
        }
        plan.radius = hi;
    }
    plan.tail_bound = tail(plan.radius);
    return plan;
}

Ball gaussian_ball(const Mat2& G, Vec2 c, double alpha, const TruncationPolicy& pol) {
    const RadiusPlan plan = plan_radius(G, alpha, pol);
    Ball ball;
    ball.radius = plan.radius;
    ball.tail_bound = plan.tail_bound;
    ball.converged = plan.converged;
    ball.terms = enumerate_reduced(plan.rb, c, plan.radius);
    if (ball.terms.empty()) {
        // keep at least the nearest point so the value is never an empty sum
        const double R1 = plan.radius + plan.rb.d;
        ball.terms = enumerate_reduced(plan.rb, c, R1);
        ball.radius = R1;
        ball.tail_bound = gaussian_tail(R1, alpha, plan.rb.d, std::abs(G.det()));
    }
    return ball;
}

CertifiedValue shifted_sum(const Mat2& G, Vec2 c, double alpha, const TruncationPolicy& pol) {
    const Ball ball = gaussian_ball(G, c, alpha, pol);
    CompensatedSum acc;
    for (const Term& t : ball.terms) acc.add(std::exp(-kPi * alpha * t.r2));
    return {acc.result(), ball.tail_bound, ball.terms.size(), ball.converged};
}

CertifiedValue charged_sum(const Mat2& G, Vec2 w, double alpha, const TruncationPolicy& pol,
                           bool skip_origin) {
    const Ball ball = gaussian_ball(G, {0.0, 0.0}, alpha, pol);
    CompensatedSum acc;
    std::size_t used = 0;
    for (const Term& t : ball.terms) {
        if (skip_origin && t.k == 0 && t.l == 0) continue;
        const Vec2 p = G * Vec2{static_cast<double>(t.k), static_cast<double>(t.l)};
        acc.add(std::exp(-kPi * alpha * t.r2) * std::cos(2.0 * kPi * dot(p, w)));
        ++used;
    }
    return {acc.result(), ball.tail_bound, std::max<std::size_t>(used, 1), ball.converged};
}

}  // namespace lattheta::detail
