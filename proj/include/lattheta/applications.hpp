#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lattheta/core.hpp"
#include "lattheta/lattice.hpp"
#include "lattheta/optimize.hpp"

namespace lattheta {

// ---- Gabor frame bounds ----

struct FrameBounds {
    double lower_A = 0.0;
    double upper_B = 0.0;
    long density = 0;     // vol(L)^{-1}
    PhasePoint argmin_z;  // minimizing charge, lattice coordinates of the unit shape
};

// Lattice with shape (x,y) and covolume 1/density. Only even densities are supported.
FrameBounds gabor_frame_bounds(double x, double y, long density, const TruncationPolicy& pol = {});

struct FrameSweepRow {
    double x, y, lower_A, upper_B, ratio;
};
std::vector<FrameSweepRow> strohmer_beaver_sweep(long density, const std::vector<double>& xs,
                                                 const std::vector<double>& ys,
                                                 const TruncationPolicy& pol = {});

// ---- heat kernel on R^2 / L ----

// (1/(4 pi t)) sum exp(-|lambda + z|^2/(4t)), always summed in space.
CertifiedValue heat_kernel_torus(const Lattice& L, const PhasePoint& z, double t,
                                 const TruncationPolicy& pol = {});
// vol^{-1} sum over the dual lattice of exp(-4 pi^2 t |mu|^2) cos(2 pi mu.z)
CertifiedValue heat_kernel_torus_spectral(const Lattice& L, const PhasePoint& z, double t,
                                          const TruncationPolicy& pol = {});

struct TemperatureExtremes {
    double A_t = 0.0;
    double B_t = 0.0;
    PhasePoint argmin;
};
TemperatureExtremes temperature_extremes(const Lattice& L, double t, std::size_t grid_n = 48,
                                         const TruncationPolicy& pol = {});

// ---- completely monotone energies ----

// p(r) = sum_i w_i exp(-pi alpha_i r), r the squared distance
struct CMPotential {
    std::vector<std::pair<double, double>> nodes;  // (alpha, weight)
    std::string label;

    double operator()(double r) const;
};

CertifiedValue cm_lattice_energy(const CMPotential& p, const Lattice& L, const PhasePoint& z,
                                 const TruncationPolicy& pol = {});

// Gauss-Laguerre rule on [0, inf) with weight e^{-x}.
struct GaussLaguerre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLaguerre gauss_laguerre(int n);

// Quadrature of r^{-s} = pi^s/Gamma(s) int_0^inf e^{-pi alpha r} alpha^{s-1} d alpha.
// The alpha >= 1 half is rescaled by kappa = pi c_min, c_min the smallest squared
// distance the potential will be evaluated at; below alpha = 1 the nodes are
// geometric in alpha. 64 nodes per half.
CMPotential riesz_potential(double s, double c_min, int n_nodes = 64);

// sum_lambda |lambda + z|^{-2s}, direct summation with an integral tail.
CertifiedValue epstein_zeta_shifted(const Lattice& L, const PhasePoint& z, double s,
                                    const TruncationPolicy& pol = {});

// Same sum through the Gaussian mixture; the alpha < 1 half goes through the dual lattice.
class EpsteinQuadrature {
public:
    EpsteinQuadrature(const Lattice& L, double s, int n_nodes = 64);
    double operator()(const PhasePoint& z) const;
    double operator()(double u, double v) const { return (*this)(PhasePoint{u, v}); }

private:
    Lattice L_;
    double s_, pref_;
    GaussLaguerre gl_;
    std::vector<std::pair<Vec2, double>> dual_modes_;  // mu with z-independent weight
    double dual_zero_ = 0.0;
};

double epstein_zeta_quadrature(const Lattice& L, const PhasePoint& z, double s, int n_nodes = 64);

// min over z of the shifted Epstein zeta function
MinResult minimize_epstein(const Lattice& L, double s, std::size_t grid_n = 24);

// ---- Born charges ----

struct ChargeDistribution {
    long period_N = 0;
    std::vector<double> weights;  // index m1 * N + m2

    double at(long m1, long m2) const;
};

void validate_charges(const ChargeDistribution& eps, double tol = 1e-12);

// (1/N^2) sum_{y in K_N} sum_{x in L} eps_x eps_y p(|x - y|^2), self term included.
double born_energy(const Lattice& L, const ChargeDistribution& eps, const CMPotential& p,
                   const TruncationPolicy& pol = {});

// N^2 x N^2 interaction matrix M with born_energy = eps^T M eps / N^2
std::vector<double> born_matrix(const Lattice& L, long N, const CMPotential& p,
                                const TruncationPolicy& pol = {});

ChargeDistribution epsilon_opt_hexagonal(long N);

// ---- Landau constants ----

struct LandauConstants {
    double L_hex = 0.0;
    double A_hex = 0.0;
    double product = 0.0;
    double L_square = 0.0;
};
LandauConstants landau_constants(const TruncationPolicy& pol = {});

// ---- exploratory: stability of the hexagonal minimum under shifted charges ----

// Shift z with z1 + x z2 = 1/2 and z2 = (1 - mix) b2 + mix a2, so mix = 0 is point b and
// mix = 1 the circumcentre. excess = theta_L(z;alpha) - theta_hex(a;alpha); the sign is
// only observed, never asserted.
struct StabilityRow {
    double x, y, alpha, mix, value, hex_value, excess;
};
std::vector<StabilityRow> stability_sweep(const std::vector<double>& alphas, const std::vector<double>& xs,
                                          const std::vector<double>& ys, const std::vector<double>& mixes,
                                          const TruncationPolicy& pol = {});

}  // namespace lattheta
