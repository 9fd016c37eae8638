#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lattheta/applications.hpp"
#include "lattheta/theta.hpp"

using namespace lattheta;

namespace {

const double kYHex = std::sqrt(3.0) / 2.0;

// high-precision Ewald evaluations (mpmath, 40 digits)
constexpr double kZetaSquareHalf15 = 16.5173189200771090;
constexpr double kZetaSquareHalf2 = 18.0804361190758204;
constexpr double kZetaHexThird15 = 18.6576569487723110;

// naive double sum over a box for the Born energy
double born_direct(const Lattice& L, const ChargeDistribution& eps, double alpha, int R) {
    const long N = eps.period_N;
    double e = 0.0;
    for (long a = 0; a < N; ++a)
        for (long b = 0; b < N; ++b) {
            const Vec2 y = L.gen * Vec2{double(a), double(b)};
            for (long k = -R; k <= R; ++k)
                for (long l = -R; l <= R; ++l) {
                    const Vec2 x = L.gen * Vec2{double(k), double(l)};
                    e += eps.at(a, b) * eps.at(k, l) * std::exp(-kPi * alpha * norm2({x.x - y.x, x.y - y.y}));
                }
        }
    return e / double(N * N);
}

CMPotential gaussian_node(double alpha) {
    CMPotential p;
    p.nodes = {{alpha, 1.0}};
    return p;
}

}  // namespace

TEST_CASE("Gabor frame bounds") {
    const FrameBounds sq = gabor_frame_bounds(0.0, 1.0, 2);
    CHECK(std::abs(sq.upper_B / sq.lower_A - std::sqrt(2.0)) < 1e-9);
    const FrameBounds hx = gabor_frame_bounds(0.5, kYHex, 2);
    CHECK(std::abs(hx.upper_B / hx.lower_A - std::cbrt(2.0)) < 1e-6);
    CHECK_THROWS_AS(gabor_frame_bounds(0.5, kYHex, 3), Error);

    // the same bounds from the shifted sum at 1/n
    for (long d : {2L, 4L}) {
        const double n = d / 2.0;
        const Lattice S = lattice_from_tau(0.2, 1.3);
        const FrameBounds fb = gabor_frame_bounds(0.2, 1.3, d);
        CHECK(std::abs(fb.lower_A - 2.0 * minimize_over_cell(S, 1.0 / n).value.value) < 1e-9);
        CHECK(std::abs(fb.upper_B - 2.0 * lattice_gaussian_sum(S, {0.0, 0.0}, 1.0 / n).value) < 1e-9);
    }
}

TEST_CASE("frame-bound ratio is smallest at the hexagonal shape") {
    std::vector<double> xs, ys;
    for (int i = 0; i < 9; ++i) xs.push_back(0.5 * i / 8.0);
    for (int i = 0; i < 9; ++i) ys.push_back(kYHex + (2.0 - kYHex) * i / 8.0);
    const auto rows = strohmer_beaver_sweep(2, xs, ys);
    REQUIRE(rows.size() == 81);
    const auto best = std::min_element(rows.begin(), rows.end(),
                                       [](const FrameSweepRow& a, const FrameSweepRow& b) { return a.ratio < b.ratio; });
    CHECK(best->x == doctest::Approx(0.5));
    CHECK(best->y == doctest::Approx(kYHex));
}

TEST_CASE("heat kernel on the torus") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> ux(0.0, 0.5), uy(0.87, 2.0), uz(0.0, 1.0), ut(0.02, 1.0);
    for (int i = 0; i < 40; ++i) {
        const Lattice L = lattice_from_tau(ux(rng), uy(rng));
        const PhasePoint z{uz(rng), uz(rng)};
        const double t = ut(rng);
        const CertifiedValue g = heat_kernel_torus(L, z, t), s = heat_kernel_torus_spectral(L, z, t);
        CHECK(std::abs(g.value - s.value) <= g.tail_bound + s.tail_bound + 1e-13 * g.value);
    }
    CHECK(std::abs(heat_kernel_torus(hexagonal_lattice(), {0.2, 0.7}, 50.0).value - 1.0) < 1e-12);
    const TemperatureExtremes te = temperature_extremes(hexagonal_lattice(), 5.0);
    CHECK(std::abs(te.B_t - te.A_t) < 1e-8);
    CHECK(te.A_t == doctest::Approx(1.0));
    CHECK_THROWS_AS(heat_kernel_torus(hexagonal_lattice(), {0.0, 0.0}, 0.0), Error);
}

TEST_CASE("completely monotone energies") {
    const Lattice L = lattice_from_tau(0.1, 1.2);
    const PhasePoint z{0.3, 0.4};
    CHECK(cm_lattice_energy(gaussian_node(1.0), L, z).value ==
          doctest::Approx(lattice_gaussian_sum(L, z, 1.0).value).epsilon(1e-14));
    CMPotential two;
    two.nodes = {{1.0, 0.5}, {2.0, 0.5}};
    CHECK(cm_lattice_energy(two, L, z).value ==
          doctest::Approx(0.5 * (lattice_gaussian_sum(L, z, 1.0).value + lattice_gaussian_sum(L, z, 2.0).value))
              .epsilon(1e-14));
    CMPotential more = two;
    more.nodes.push_back({3.0, 0.1});
    for (double u : {0.0, 0.25, 0.5, 0.75})
        CHECK(cm_lattice_energy(more, L, {u, 0.5}).value > cm_lattice_energy(two, L, {u, 0.5}).value);
    CHECK(two(2.0) == doctest::Approx(0.5 * std::exp(-2.0 * kPi) + 0.5 * std::exp(-4.0 * kPi)));
    CHECK_THROWS_AS(cm_lattice_energy(CMPotential{}, L, z), Error);
}

TEST_CASE("Gauss-Laguerre rule integrates polynomials") {
    const GaussLaguerre gl = gauss_laguerre(20);
    double s0 = 0.0, s5 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        s0 += gl.weights[i];
        s5 += gl.weights[i] * std::pow(gl.nodes[i], 5);
    }
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(s5 == doctest::Approx(120.0).epsilon(1e-12));
}

TEST_CASE("shifted Epstein zeta") {
    const Lattice Z = square_lattice(), H = hexagonal_lattice();
    TruncationPolicy pol;
    pol.target_tol = 1e-6;
    CHECK(std::abs(epstein_zeta_shifted(Z, {0.5, 0.5}, 2.0, pol).value - kZetaSquareHalf2) < 1e-8);
    CHECK(std::abs(epstein_zeta_quadrature(Z, {0.5, 0.5}, 2.0) - kZetaSquareHalf2) < 1e-10);
    CHECK(std::abs(epstein_zeta_quadrature(Z, {0.5, 0.5}, 1.5) - kZetaSquareHalf15) < 1e-10);
    CHECK(std::abs(epstein_zeta_quadrature(H, {1.0 / 3.0, 1.0 / 3.0}, 1.5) - kZetaHexThird15) < 1e-10);
    const CertifiedValue d15 = epstein_zeta_shifted(Z, {0.5, 0.5}, 1.5, pol);
    CHECK(std::abs(d15.value - kZetaSquareHalf15) <= d15.tail_bound);

    // the CM quadrature route with the true nearest squared distance
    const CMPotential r2 = riesz_potential(2.0, 0.5);
    CHECK(std::abs(cm_lattice_energy(r2, Z, {0.5, 0.5}).value - kZetaSquareHalf2) < 1e-8);
    const CMPotential r15 = riesz_potential(1.5, 0.5);
    CHECK(std::abs(cm_lattice_energy(r15, Z, {0.5, 0.5}).value - kZetaSquareHalf15) < 1e-8);
    CHECK(r2(0.7) == doctest::Approx(std::pow(0.7, -2.0)).epsilon(1e-8));

    CHECK_THROWS_AS(epstein_zeta_shifted(Z, {0.0, 0.0}, 2.0), Error);
    CHECK_THROWS_AS(epstein_zeta_shifted(Z, {0.5, 0.5}, 1.0), Error);
    CHECK_THROWS_AS(riesz_potential(2.0, 0.0), Error);

    const MinResult m = minimize_epstein(H, 2.0);
    CHECK(std::hypot(m.argmin.u - 1.0 / 3.0, m.argmin.v - 1.0 / 3.0) < 1e-6);
}

TEST_CASE("Born energies") {
    SUBCASE("constraints") {
        ChargeDistribution flat{3, std::vector<double>(9, 1.0)};
        CHECK_THROWS_AS(validate_charges(flat), Error);
        CHECK_THROWS_AS(epsilon_opt_hexagonal(4), Error);
        const ChargeDistribution e3 = epsilon_opt_hexagonal(3);
        CHECK(std::count_if(e3.weights.begin(), e3.weights.end(), [](double w) { return w > 0; }) == 3);
        double s = 0.0, s2 = 0.0;
        for (double w : e3.weights) s += w, s2 += w * w;
        CHECK(std::abs(s) < 1e-14);
        CHECK(s2 == doctest::Approx(9.0).epsilon(1e-15));
        const ChargeDistribution e6 = epsilon_opt_hexagonal(6);
        s2 = 0.0;
        for (double w : e6.weights) s2 += w * w;
        CHECK(s2 == doctest::Approx(36.0).epsilon(1e-15));
        CHECK(std::sqrt(2.0) * std::pow(3.0, -0.25) * std::sqrt(2.0) * std::pow(3.0, -0.25) * kYHex ==
              doctest::Approx(1.0));
    }
    SUBCASE("direct double-sum oracle") {
        const Lattice Z = square_lattice();
        ChargeDistribution alt{2, {1.0, -1.0, -1.0, 1.0}};
        const double e = born_energy(Z, alt, gaussian_node(1.0));
        // checkerboard energy factorizes; dropping the self term p(0) = 1 makes it negative
        double h = 0.0;
        for (int k = -30; k <= 30; ++k) h += (k % 2 == 0 ? 1.0 : -1.0) * std::exp(-kPi * k * k);
        CHECK(e == doctest::Approx(h * h).epsilon(1e-13));
        CHECK(e - 1.0 < 0.0);
        CHECK(e == doctest::Approx(born_direct(Z, alt, 1.0, 12)).epsilon(1e-12));
        const Lattice H = hexagonal_lattice();
        const ChargeDistribution opt = epsilon_opt_hexagonal(3);
        CHECK(born_energy(H, opt, gaussian_node(1.0)) == doctest::Approx(born_direct(H, opt, 1.0, 12)).epsilon(1e-12));
    }
    SUBCASE("sign flip and translation invariance") {
        const Lattice L = lattice_from_tau(0.3, 1.2);
        ChargeDistribution e{3, {1.2, -0.4, -0.8, 0.3, 0.9, -1.2, -1.5, 0.5, 1.0}};
        double s2 = 0.0;
        for (double w : e.weights) s2 += w * w;
        for (double& w : e.weights) w *= 3.0 / std::sqrt(s2);
        const CMPotential p = gaussian_node(0.8);
        const double base = born_energy(L, e, p);
        ChargeDistribution flip = e, shift = e;
        for (double& w : flip.weights) w = -w;
        for (long a = 0; a < 3; ++a)
            for (long b = 0; b < 3; ++b) shift.weights[a * 3 + b] = e.at(a + 1, b + 2);
        CHECK(born_energy(L, flip, p) == doctest::Approx(base).epsilon(1e-13));
        CHECK(born_energy(L, shift, p) == doctest::Approx(base).epsilon(1e-13));
        const auto M = born_matrix(L, 3, p);
        double q = 0.0;
        for (int i = 0; i < 9; ++i)
            for (int j = 0; j < 9; ++j) q += e.weights[i] * e.weights[j] * M[i * 9 + j];
        CHECK(q / 9.0 == doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("Landau constants") {
    const LandauConstants c = landau_constants();
    CHECK(c.L_hex == doctest::Approx(0.543259).epsilon(1e-6));
    CHECK(std::abs(c.product - 0.5) < 1e-6);
    CHECK(c.L_square == doctest::Approx(0.59907).epsilon(1e-5));
    CHECK(c.L_square >= c.L_hex);
    // Gamma values through the reflection and duplication identities
    const double g13 = std::tgamma(1.0 / 3.0), g23 = std::tgamma(2.0 / 3.0), g16 = std::tgamma(1.0 / 6.0),
                 g56 = std::tgamma(5.0 / 6.0);
    CHECK(g13 * g23 == doctest::Approx(kPi / std::sin(kPi / 3.0)).epsilon(1e-14));
    CHECK(g16 * g56 == doctest::Approx(kPi / std::sin(kPi / 6.0)).epsilon(1e-14));
    CHECK(g16 * g23 == doctest::Approx(std::pow(2.0, 1.0 - 2.0 / 6.0) * std::sqrt(kPi) * g13).epsilon(1e-14));
}

TEST_CASE("exploratory stability sweep") {
    const auto rows = stability_sweep({1.0, 3.0}, {0.0, 0.25, 0.5}, {kYHex, 1.3}, {0.0, 1.0});
    REQUIRE(rows.size() == 3 * 2 * 2 * 2);
    for (const auto& r : rows) {
        const PhasePoint b = special_point_b(r.x, r.y), a = special_point_a(r.x, r.y);
        const PhasePoint want = r.mix == 0.0 ? b : a;
        CHECK(r.value == doctest::Approx(theta_shifted(lattice_from_tau(r.x, r.y), want, r.alpha).value).epsilon(1e-13));
        if (r.x == 0.5 && r.y == kYHex) CHECK(std::abs(r.excess) < 1e-14);
    }
}
