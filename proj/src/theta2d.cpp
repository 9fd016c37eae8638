#include <cmath>

#include "lattheta/theta.hpp"
#include "sums.hpp"

namespace lattheta {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
}

bool unit_covolume(const Lattice& L) { return std::abs(L.covolume() - 1.0) < 1e-12; }

CertifiedValue rescale(CertifiedValue v, double s) {
    v.value *= s;
    v.tail_bound *= s;
    return v;
}

Mat2 dual_gen(const Lattice& L) { return L.gen.inverse().transpose(); }

// |k v1 + l v2|^2 = (A/y) |k + tau l|^2
double form(const Lattice& L, double k, double l) {
    return L.covolume() / L.y * (k * k + 2.0 * L.x * k * l + (L.x * L.x + L.y * L.y) * l * l);
}

CertifiedValue shifted_direct(const Lattice& L, const PhasePoint& b, double alpha,
                              const TruncationPolicy& pol) {
    const detail::Ball ball = detail::gaussian_ball(L.gen, L.gen * Vec2{b.u, b.v}, alpha, pol);
    CompensatedSum acc;
    for (const auto& t : ball.terms)
        acc.add(std::exp(-kPi * alpha * form(L, t.k + b.u, t.l + b.v)));
    return {acc.result(), ball.tail_bound, ball.terms.size(), ball.converged};
}

CertifiedValue charged_direct(const Lattice& L, const PhasePoint& b, double alpha,
                              const TruncationPolicy& pol) {
    const detail::Ball ball = detail::gaussian_ball(L.gen, {0.0, 0.0}, alpha, pol);
    const double det = L.gen.det();
    CompensatedSum acc;
    for (const auto& t : ball.terms) {
        const double k = static_cast<double>(t.k), l = static_cast<double>(t.l);
        acc.add(std::exp(-kPi * alpha * form(L, k, l)) *
                std::cos(2.0 * kPi * det * (k * b.v - l * b.u)));
    }
    return {acc.result(), ball.tail_bound, ball.terms.size(), ball.converged};
}

}  // namespace

CertifiedValue lattice_gaussian_sum(const Lattice& L, const PhasePoint& z, double alpha,
                                    const TruncationPolicy& pol) {
    require_alpha(alpha);
    const Vec2 c = z.cartesian(L);
    if (alpha < 1.0 && pol.allow_dual_route) {
        // Poisson: E(z;alpha) = (A alpha)^{-1} sum_{mu dual} e^{-pi|mu|^2/alpha} cos(2 pi mu.z)
        const CertifiedValue v = detail::charged_sum(dual_gen(L), c, 1.0 / alpha, pol);
        return rescale(v, 1.0 / (L.covolume() * alpha));
    }
    return detail::shifted_sum(L.gen, c, alpha, pol);
}

CertifiedValue lattice_charged_sum(const Lattice& L, Vec2 w, double alpha, const TruncationPolicy& pol) {
    require_alpha(alpha);
    if (alpha < 1.0 && pol.allow_dual_route) {
        const CertifiedValue v = detail::shifted_sum(dual_gen(L), {-w.x, -w.y}, 1.0 / alpha, pol);
        return rescale(v, 1.0 / (L.covolume() * alpha));
    }
    return detail::charged_sum(L.gen, w, alpha, pol);
}

CertifiedValue theta_shifted(const Lattice& L, const PhasePoint& b, double alpha,
                             const TruncationPolicy& pol) {
    require_alpha(alpha);
    const PhasePoint bl = b.to_lattice(L);
    if (alpha < 1.0 && pol.allow_dual_route && unit_covolume(L))
        return rescale(charged_direct(L, bl, 1.0 / alpha, pol), 1.0 / alpha);
    return shifted_direct(L, bl, alpha, pol);
}

CertifiedValue theta_charged(const Lattice& L, const PhasePoint& b, double alpha,
                             const TruncationPolicy& pol) {
    require_alpha(alpha);
    const PhasePoint bl = b.to_lattice(L);
    if (alpha < 1.0 && pol.allow_dual_route && unit_covolume(L))
        return rescale(shifted_direct(L, bl, 1.0 / alpha, pol), 1.0 / alpha);
    return charged_direct(L, bl, alpha, pol);
}

double functional_equation_residual(const Lattice& L, const PhasePoint& b, double alpha,
                                    const TruncationPolicy& pol) {
    require_alpha(alpha);
    if (!unit_covolume(L)) throw Error(Errc::InvalidArgument, "functional equation needs unit covolume");
    TruncationPolicy direct = pol;
    direct.allow_dual_route = false;
    const PhasePoint bl = b.to_lattice(L);
    const double lhs = shifted_direct(L, bl, alpha, direct).value;
    const double rhs = charged_direct(L, bl, 1.0 / alpha, direct).value / alpha;
    return std::abs(lhs - rhs);
}

}  // namespace lattheta
