#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "lattheta/lattice.hpp"

using namespace lattheta;
using cd = std::complex<double>;

namespace {

const double kYHex = std::sqrt(3.0) / 2.0;

// the six shortest nonzero vectors of a lattice, by brute force over a small box
std::vector<Vec2> shortest_vectors(const Mat2& g) {
    double best = 1e300;
    std::vector<Vec2> out;
    for (int k = -4; k <= 4; ++k)
        for (int l = -4; l <= 4; ++l) {
            if (k == 0 && l == 0) continue;
            const Vec2 v = g * Vec2{double(k), double(l)};
            const double r = norm2(v);
            if (r < best - 1e-9) {
                best = r;
                out.clear();
            }
            if (std::abs(r - best) < 1e-9) out.push_back(v);
        }
    return out;
}

// every endpoint in D_+ reachable by a word of length <= depth, mirror applied last
void collect_endpoints(cd tau, int depth, std::vector<cd>& ends) {
    const cd m{std::abs(tau.real()), tau.imag()};
    if (in_fundamental_domain(m.real(), m.imag(), 1e-12)) ends.push_back(m);
    if (depth == 0) return;
    for (Generator g : {Generator::J, Generator::T, Generator::Tinv})
        collect_endpoints(apply_generator(g, tau), depth - 1, ends);
}

}  // namespace

TEST_CASE("lattice_from_tau builds unit covolume generators") {
    const Lattice Z = lattice_from_tau(0.0, 1.0);
    CHECK(Z.gen.a == doctest::Approx(1.0));
    CHECK(Z.gen.b == doctest::Approx(0.0));
    CHECK(Z.gen.d == doctest::Approx(1.0));

    const Lattice H = hexagonal_lattice();
    const double s = 1.0 / std::sqrt(kYHex);
    CHECK(H.gen.a == doctest::Approx(s));
    CHECK(H.gen.b == doctest::Approx(0.5 * s));
    CHECK(H.gen.d == doctest::Approx(kYHex * s));
    CHECK(H.covolume() == doctest::Approx(1.0).epsilon(1e-14));

    const Lattice R = lattice_from_tau(0.3, 2.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(R.gen.a == doctest::Approx(r));
    CHECK(R.gen.b == doctest::Approx(0.3 * r));
    CHECK(R.gen.c == doctest::Approx(0.0));
    CHECK(R.gen.d == doctest::Approx(2.0 * r));
    CHECK(R.covolume() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(lattice_from_tau(0.0, -1.0), Error);
    CHECK_THROWS_AS(lattice_from_tau(0.0, 0.0), Error);
}

TEST_CASE("generator round trip") {
    const Lattice L = lattice_from_tau(0.21, 1.37);
    const Lattice M = lattice_from_generator(L.gen);
    CHECK(M.x == doctest::Approx(0.21));
    CHECK(M.y == doctest::Approx(1.37));
    const Lattice S = scaled(L, 2.0);
    CHECK(S.covolume() == doctest::Approx(4.0));
}

TEST_CASE("reduction into D_+") {
    SUBCASE("integer translation") {
        const ReductionTrace t = reduce_to_fundamental({2.5, 0.9});
        CHECK(t.tau_out.real() == doctest::Approx(0.5));
        CHECK(t.tau_out.imag() == doctest::Approx(0.9).epsilon(1e-14));
        CHECK(std::abs(replay(t.word, t.tau_in) - t.tau_out) < 1e-12);
    }
    SUBCASE("fixed point i") {
        const ReductionTrace t = reduce_to_fundamental({0.0, 1.0});
        CHECK(t.word.empty());
        CHECK(std::abs(t.tau_out - cd(0.0, 1.0)) < 1e-15);
    }
    SUBCASE("brute-force word oracle") {
        const cd tau{0.1, 0.5};
        const ReductionTrace t = reduce_to_fundamental(tau);
        CHECK(in_fundamental_domain(t.tau_out.real(), t.tau_out.imag(), 1e-12));
        CHECK(std::abs(replay(t.word, tau) - t.tau_out) < 1e-12);
        std::vector<cd> ends;
        collect_endpoints(tau, 6, ends);
        REQUIRE_FALSE(ends.empty());
        for (const cd& e : ends) CHECK(std::abs(e - t.tau_out) < 1e-10);
    }
    SUBCASE("random points land in D_+ with a replayable word") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> ux(-5.0, 5.0), uy(0.02, 3.0);
        for (int i = 0; i < 200; ++i) {
            const cd tau{ux(rng), uy(rng)};
            const ReductionTrace t = reduce_to_fundamental(tau);
            CHECK(in_fundamental_domain(t.tau_out.real(), t.tau_out.imag(), 1e-9));
            CHECK(std::abs(replay(t.word, tau) - t.tau_out) < 1e-9);
        }
    }
    CHECK_THROWS_AS(reduce_to_fundamental({0.3, -0.1}), Error);
}

TEST_CASE("dual lattices") {
    const Lattice Z = square_lattice();
    const Lattice Zd = dual_lattice(Z);
    CHECK(Zd.gen.a == doctest::Approx(1.0));
    CHECK(Zd.gen.d == doctest::Approx(1.0));

    // hexagonal dual: same shortest-vector set up to rotation
    const Lattice H = hexagonal_lattice();
    const Lattice Hd = dual_lattice(H);
    const auto sv = shortest_vectors(H.gen), svd = shortest_vectors(Hd.gen);
    CHECK(sv.size() == 6);
    CHECK(svd.size() == 6);
    CHECK(norm2(svd.front()) == doctest::Approx(norm2(sv.front())));
    CHECK(Hd.covolume() == doctest::Approx(1.0));
    // and the dual vectors pair integrally with the lattice
    for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
            const Vec2 a = H.gen * Vec2{double(k), double(l)}, b = Hd.gen * Vec2{double(l), double(k)};
            const double p = dot(a, b);
            CHECK(std::abs(p - std::round(p)) < 1e-12);
        }

    // rectangle y = 2 has a dual of shape y = 1/2
    const Lattice R = lattice_from_tau(0.0, 2.0);
    const Lattice Rd = dual_lattice(R);
    CHECK(Rd.gen.a == doctest::Approx(std::sqrt(2.0)));
    CHECK(Rd.gen.d == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(Rd.y == doctest::Approx(0.5));
}

TEST_CASE("symplectic dual") {
    const Lattice L = lattice_from_tau(0.2, 1.3);
    const Lattice Ls = symplectic_dual(L);
    CHECK(Ls.gen.a == doctest::Approx(L.gen.a));
    CHECK(Ls.gen.d == doctest::Approx(L.gen.d));

    const Lattice half = scaled(lattice_from_tau(0.17, 1.21), 1.0 / std::sqrt(2.0));
    CHECK(half.covolume() == doctest::Approx(0.5));
    const Lattice adj = symplectic_dual(half);
    CHECK(adj.covolume() == doctest::Approx(2.0));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> ui(-9, 9);
    for (int i = 0; i < 100; ++i) {
        const Vec2 p = adj.gen * Vec2{double(ui(rng)), double(ui(rng))};
        const Vec2 q = half.gen * Vec2{double(ui(rng)), double(ui(rng))};
        const double s = symplectic_form(p, q);
        CHECK(std::abs(s - std::round(s)) < 1e-10);
    }
}

TEST_CASE("special points") {
    const PhasePoint ah = special_point_a(0.5, kYHex);
    CHECK(ah.u == doctest::Approx(1.0 / 3.0));
    CHECK(ah.v == doctest::Approx(1.0 / 3.0));
    const PhasePoint as = special_point_a(0.0, 1.0);
    CHECK(as.u == doctest::Approx(0.5));
    CHECK(as.v == doctest::Approx(0.5));

    // circumcentre: equidistant from 0, v1 and v2
    const Lattice L = lattice_from_tau(0.3, 1.1);
    const Vec2 c = special_point_a(0.3, 1.1).cartesian(L);
    const Vec2 v1 = L.gen.col0(), v2 = L.gen.col1();
    const double d0 = norm2(c), d1 = norm2({c.x - v1.x, c.y - v1.y}), d2 = norm2({c.x - v2.x, c.y - v2.y});
    CHECK(std::abs(d0 - d1) < 1e-10);
    CHECK(std::abs(d0 - d2) < 1e-10);

    const PhasePoint bh = special_point_b(0.5, kYHex);
    CHECK(bh.u == doctest::Approx(1.0 / 3.0));
    CHECK(bh.v == doctest::Approx(1.0 / 3.0));
    const PhasePoint bs = special_point_b(0.0, 1.0);
    CHECK(bs.u == doctest::Approx(0.5));
    CHECK(bs.v == doctest::Approx(3.0 / 8.0));
    const PhasePoint bq = special_point_b(0.25, kYHex);
    CHECK(bq.v == doctest::Approx(1.0 / 3.0));
    CHECK(bq.u + 0.25 * bq.v == doctest::Approx(0.5));
}

TEST_CASE("phase point frames") {
    const Lattice L = lattice_from_tau(0.4, 1.2);
    const PhasePoint p{0.3, 0.7};
    const Vec2 c = p.cartesian(L);
    const PhasePoint back = PhasePoint{c.x, c.y, Frame::Cartesian}.to_lattice(L);
    CHECK(back.u == doctest::Approx(0.3));
    CHECK(back.v == doctest::Approx(0.7));
    const PhasePoint w = PhasePoint{-1.3, 2.7}.canonical(L);
    CHECK(w.u == doctest::Approx(0.7));
    CHECK(w.v == doctest::Approx(0.7));
}
