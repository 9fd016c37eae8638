#include "lattheta/lattice.hpp"

#include <cmath>

namespace lattheta {

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPositiveY: return "NonPositiveY";
        case Errc::NotUpperHalfPlane: return "NotUpperHalfPlane";
        case Errc::NoConvergence: return "NoConvergence";
        case Errc::NonPositiveT: return "NonPositiveT";
        case Errc::NonPositiveAlpha: return "NonPositiveAlpha";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::OutsideFundamentalDomain: return "OutsideFundamentalDomain";
        case Errc::UnsupportedDensity: return "UnsupportedDensity";
        case Errc::EmptyQuadrature: return "EmptyQuadrature";
        case Errc::PoleAtLatticePoint: return "PoleAtLatticePoint";
        case Errc::ConstraintViolated: return "ConstraintViolated";
        case Errc::NotMultipleOfThree: return "NotMultipleOfThree";
    }
    return "Unknown";
}

Lattice lattice_from_tau(double x, double y) {
    if (!(y > 0.0)) throw Error(Errc::NonPositiveY, "y must be positive");
    const double s = 1.0 / std::sqrt(y);
    Lattice L;
    L.x = x;
    L.y = y;
    L.gen = {s, s * x, 0.0, s * y};
    return L;
}

Lattice hexagonal_lattice() { return lattice_from_tau(0.5, kSqrt3 / 2.0); }
Lattice square_lattice() { return lattice_from_tau(0.0, 1.0); }

Lattice lattice_from_generator(const Mat2& gen) {
    const std::complex<double> v1(gen.a, gen.c), v2(gen.b, gen.d);
    const std::complex<double> tau = v2 / v1;
    if (!(tau.imag() > 0.0))
        throw Error(Errc::NotUpperHalfPlane, "generator must be positively oriented");
    Lattice L;
    L.x = tau.real();
    L.y = tau.imag();
    L.gen = gen;
    return L;
}

Lattice scaled(const Lattice& L, double s) {
    Lattice out = L;
    out.gen = L.gen.scaled(s);
    return out;
}

Lattice dual_lattice(const Lattice& L) {
    return lattice_from_generator(L.gen.inverse().transpose());
}

// In the plane every lattice is symplectic, and the adjoint is vol^{-1} L.
Lattice symplectic_dual(const Lattice& L) { return scaled(L, 1.0 / L.covolume()); }

Vec2 PhasePoint::cartesian(const Lattice& L) const {
    if (frame == Frame::Cartesian) return {u, v};
    return L.gen * Vec2{u, v};
}

PhasePoint PhasePoint::to_lattice(const Lattice& L) const {
    if (frame == Frame::LatticeCoords) return *this;
    const Vec2 w = L.gen.inverse() * Vec2{u, v};
    return {w.x, w.y, Frame::LatticeCoords};
}

PhasePoint PhasePoint::canonical(const Lattice& L) const {
    PhasePoint p = to_lattice(L);
    p.u -= std::floor(p.u);
    p.v -= std::floor(p.v);
    if (p.u >= 1.0) p.u = 0.0;
    if (p.v >= 1.0) p.v = 0.0;
    return p;
}

PhasePoint special_point_a(double x, double y) {
    if (!(y > 0.0)) throw Error(Errc::NonPositiveY, "y must be positive");
    const double r2 = x * x + y * y, d = 2.0 * y * y;
    return {(1.0 - x) * r2 / d, (r2 - x) / d, Frame::LatticeCoords};
}

PhasePoint special_point_b(double x, double y) {
    if (!(y > 0.0)) throw Error(Errc::NonPositiveY, "y must be positive");
    const double y2 = y * y;
    return {(x + (1.0 - x) * 4.0 * y2) / (8.0 * y2), (4.0 * y2 - 1.0) / (8.0 * y2),
            Frame::LatticeCoords};
}

const char* generator_name(Generator g) {
    switch (g) {
        case Generator::J: return "J";
        case Generator::T: return "T";
        case Generator::Tinv: return "Tinv";
        case Generator::Mirror: return "Mirror";
    }
    return "?";
}

std::complex<double> apply_generator(Generator g, std::complex<double> tau) {
    switch (g) {
        case Generator::J: return -1.0 / tau;
        case Generator::T: return tau + 1.0;
        case Generator::Tinv: return tau - 1.0;
        case Generator::Mirror: return {-tau.real(), tau.imag()};
    }
    return tau;
}

std::complex<double> replay(const std::vector<Generator>& word, std::complex<double> tau) {
    for (Generator g : word) tau = apply_generator(g, tau);
    return tau;
}

bool in_fundamental_domain(double x, double y, double tol) {
    return y > 0.0 && x >= -tol && x <= 0.5 + tol && x * x + y * y >= 1.0 - tol;
}

ReductionTrace reduce_to_fundamental(std::complex<double> tau) {
    if (!(tau.imag() > 0.0)) throw Error(Errc::NotUpperHalfPlane, "Im(tau) must be positive");
    constexpr std::size_t kMaxSteps = 10000;
    ReductionTrace tr;
    tr.tau_in = tau;
    auto push = [&](Generator g) {
        if (tr.word.size() >= kMaxSteps)
            throw Error(Errc::NoConvergence, "more than 1e4 generator applications");
        tau = apply_generator(g, tau);
        tr.word.push_back(g);
    };
    for (;;) {
        // translate Re(tau) into (-1/2, 1/2]
        const double k = std::ceil(tau.real() - 0.5);
        if (k > 0)
            for (double i = 0; i < k; ++i) push(Generator::Tinv);
        else
            for (double i = 0; i < -k; ++i) push(Generator::T);
        if (std::norm(tau) < 1.0 - 1e-15)
            push(Generator::J);
        else
            break;
    }
    if (tau.real() < 0.0) push(Generator::Mirror);
    tr.tau_out = tau;
    return tr;
}

}  // namespace lattheta
