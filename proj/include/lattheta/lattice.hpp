#pragma once

#include <complex>
#include <string>
#include <vector>

#include "lattheta/core.hpp"

namespace lattheta {

// A planar lattice described by its shape tau = x + iy and a generator
// whose columns are basis vectors. Lattices built by lattice_from_tau have
// unit covolume and the canonical generator y^{-1/2}[[1,x],[0,y]].
struct Lattice {
    double x = 0.0;
    double y = 1.0;
    Mat2 gen;

    double covolume() const { return std::abs(gen.det()); }
    std::complex<double> tau() const { return {x, y}; }
};

Lattice lattice_from_tau(double x, double y);
Lattice hexagonal_lattice();
Lattice square_lattice();

// Shape is read off from the ratio of the two basis columns.
Lattice lattice_from_generator(const Mat2& gen);
Lattice scaled(const Lattice& L, double s);

Lattice dual_lattice(const Lattice& L);
Lattice symplectic_dual(const Lattice& L);

// Standard symplectic form sigma(u, v) = u1 v2 - u2 v1.
inline double symplectic_form(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

enum class Frame { LatticeCoords, Cartesian };

struct PhasePoint {
    double u = 0.0;
    double v = 0.0;
    Frame frame = Frame::LatticeCoords;

    Vec2 cartesian(const Lattice& L) const;
    PhasePoint to_lattice(const Lattice& L) const;
    // Lattice coordinates reduced into [0,1)^2.
    PhasePoint canonical(const Lattice& L) const;
};

PhasePoint special_point_a(double x, double y);
PhasePoint special_point_b(double x, double y);

enum class Generator { J, T, Tinv, Mirror };
const char* generator_name(Generator g);

struct ReductionTrace {
    std::complex<double> tau_in;
    std::complex<double> tau_out;
    std::vector<Generator> word;
};

std::complex<double> apply_generator(Generator g, std::complex<double> tau);
std::complex<double> replay(const std::vector<Generator>& word, std::complex<double> tau);

ReductionTrace reduce_to_fundamental(std::complex<double> tau);

// Membership in D_+ = {0 <= Re <= 1/2, |tau| >= 1} up to tol.
bool in_fundamental_domain(double x, double y, double tol = 1e-12);

}  // namespace lattheta
