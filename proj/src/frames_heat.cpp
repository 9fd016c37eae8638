#include <cmath>

#include "lattheta/applications.hpp"
#include "lattheta/theta.hpp"
#include "parallel.hpp"

namespace lattheta {

FrameBounds gabor_frame_bounds(double x, double y, long density, const TruncationPolicy& pol) {
    if (density <= 0 || density % 2 != 0)
        throw Error(Errc::UnsupportedDensity, "frame bounds need an even positive density");
    // The adjoint lattice of the covolume-1/(2n) lattice is sqrt(2n) times the unit
    // shape, so the e^{-(pi/2)|lambda|^2} sum becomes a charged sum at alpha = n.
    const Lattice S = lattice_from_tau(x, y);
    const double n = static_cast<double>(density / 2);
    const MinResult m = minimize_charged(S, n, 64, pol);
    FrameBounds fb;
    fb.density = density;
    fb.lower_A = density * m.value.value;
    fb.upper_B = density * theta_charged(S, PhasePoint{0.0, 0.0}, n, pol).value;
    fb.argmin_z = m.argmin;
    return fb;
}

std::vector<FrameSweepRow> strohmer_beaver_sweep(long density, const std::vector<double>& xs,
                                                 const std::vector<double>& ys, const TruncationPolicy& pol) {
    if (density <= 0 || density % 2 != 0)
        throw Error(Errc::UnsupportedDensity, "frame bounds need an even positive density");
    std::vector<FrameSweepRow> out(xs.size() * ys.size());
    detail::parallel_for(out.size(), [&](std::size_t i) {
        const double x = xs[i / ys.size()], y = ys[i % ys.size()];
        const FrameBounds fb = gabor_frame_bounds(x, y, density, pol);
        out[i] = {x, y, fb.lower_A, fb.upper_B, fb.upper_B / fb.lower_A};
    });
    return out;
}

namespace {

TruncationPolicy direct_only(TruncationPolicy pol) {
    pol.allow_dual_route = false;
    return pol;
}

}  // namespace

CertifiedValue heat_kernel_torus(const Lattice& L, const PhasePoint& z, double t, const TruncationPolicy& pol) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
    const double s = 1.0 / (4.0 * kPi * t);
    CertifiedValue v = lattice_gaussian_sum(L, z, s, direct_only(pol));
    v.value *= s;
    v.tail_bound *= s;
    return v;
}

CertifiedValue heat_kernel_torus_spectral(const Lattice& L, const PhasePoint& z, double t,
                                          const TruncationPolicy& pol) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
    const double inv = 1.0 / L.covolume();
    CertifiedValue v = lattice_charged_sum(dual_lattice(L), z.cartesian(L), 4.0 * kPi * t, direct_only(pol));
    v.value *= inv;
    v.tail_bound *= inv;
    return v;
}

TemperatureExtremes temperature_extremes(const Lattice& L, double t, std::size_t grid_n,
                                         const TruncationPolicy& pol) {
    if (!(t > 0.0)) throw Error(Errc::NonPositiveT, "t must be positive");
    const double s = 1.0 / (4.0 * kPi * t);
    const MinResult m = minimize_over_cell(L, s, grid_n, pol);
    TemperatureExtremes te;
    te.A_t = s * m.value.value;
    te.B_t = s * lattice_gaussian_sum(L, PhasePoint{0.0, 0.0}, s, pol).value;
    te.argmin = m.argmin;
    return te;
}

LandauConstants landau_constants(const TruncationPolicy& pol) {
    LandauConstants c;
    c.L_hex = std::tgamma(1.0 / 3.0) * std::tgamma(5.0 / 6.0) / std::tgamma(1.0 / 6.0);
    c.A_hex = minimize_over_cell(hexagonal_lattice(), 1.0, 64, pol).value.value;
    c.product = c.L_hex * c.A_hex;
    c.L_square = 1.0 / (2.0 * minimize_over_cell(square_lattice(), 1.0, 64, pol).value.value);
    return c;
}

std::vector<StabilityRow> stability_sweep(const std::vector<double>& alphas, const std::vector<double>& xs,
                                          const std::vector<double>& ys, const std::vector<double>& mixes,
                                          const TruncationPolicy& pol) {
    for (double y : ys)
        if (!(y > 0.0)) throw Error(Errc::NonPositiveY, "y must be positive");
    const Lattice H = hexagonal_lattice();
    const PhasePoint ah = special_point_a(H.x, H.y);
    std::vector<double> hex(alphas.size());
    for (std::size_t i = 0; i < alphas.size(); ++i) hex[i] = theta_shifted(H, ah, alphas[i], pol).value;

    const std::size_t per_cell = alphas.size() * mixes.size();
    std::vector<StabilityRow> out(xs.size() * ys.size() * per_cell);
    detail::parallel_for(xs.size() * ys.size(), [&](std::size_t c) {
        const double x = xs[c / ys.size()], y = ys[c % ys.size()];
        const Lattice L = lattice_from_tau(x, y);
        const double a2 = special_point_a(x, y).v, b2 = special_point_b(x, y).v;
        std::size_t k = c * per_cell;
        for (std::size_t i = 0; i < alphas.size(); ++i)
            for (double mix : mixes) {
                const double z2 = (1.0 - mix) * b2 + mix * a2;
                const double v = theta_shifted(L, PhasePoint{0.5 - x * z2, z2}, alphas[i], pol).value;
                out[k++] = {x, y, alphas[i], mix, v, hex[i], v - hex[i]};
            }
    });
    return out;
}

}  // namespace lattheta
