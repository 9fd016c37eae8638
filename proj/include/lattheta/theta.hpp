#pragma once

#include "lattheta/core.hpp"
#include "lattheta/lattice.hpp"

namespace lattheta {

// ---- one-dimensional theta functions ----

// sum_k exp(-pi t (k+beta)^2)
CertifiedValue theta1d(double beta, double t, const TruncationPolicy& pol = {});
// sum_k exp(-pi t k^2) cos(2 pi k beta)
CertifiedValue theta1d_hat(double beta, double t, const TruncationPolicy& pol = {});
// d/dbeta of theta1d
CertifiedValue theta1d_dbeta(double beta, double t, const TruncationPolicy& pol = {});

// Jacobi triple product for theta1d_hat truncated after n_factors factors.
double product_rep_theta1d_hat(double beta, double t, int n_factors);

// Montgomery's ratio Q(beta;t) = -d/dbeta theta1d_hat(beta;t) / sin(2 pi beta), the
// normalization under which A(t) <= Q <= B(t). Evaluated through the logarithmic
// derivative of the triple product, so half-integers need no special casing.
// The same ratio built from theta1d equals t^{-1/2} Q(beta;1/t).
CertifiedValue montgomery_Q(double beta, double t, const TruncationPolicy& pol = {});
double montgomery_A(double t);
double montgomery_B(double t);

// ---- two-dimensional Gaussian sums ----

// E_L(z;alpha) = sum exp(-pi alpha |lambda + z|^2), z in either frame.
CertifiedValue lattice_gaussian_sum(const Lattice& L, const PhasePoint& z, double alpha,
                                    const TruncationPolicy& pol = {});

// sum exp(-pi alpha |lambda|^2) cos(2 pi lambda.w), w Cartesian (dual-form charge).
CertifiedValue lattice_charged_sum(const Lattice& L, Vec2 w, double alpha,
                                   const TruncationPolicy& pol = {});

// theta_L(b;alpha) through the explicit (x,y) quadratic form, b in lattice coordinates.
CertifiedValue theta_shifted(const Lattice& L, const PhasePoint& b, double alpha,
                             const TruncationPolicy& pol = {});

// Charged theta with phase exp(2 pi i sigma(lambda, gen b)) = cos(2 pi (k b2 - l b1)).
CertifiedValue theta_charged(const Lattice& L, const PhasePoint& b, double alpha,
                             const TruncationPolicy& pol = {});

// |theta_L(b;alpha) - theta_hat_L(b;1/alpha)/alpha| with both sides summed directly.
double functional_equation_residual(const Lattice& L, const PhasePoint& b, double alpha,
                                    const TruncationPolicy& pol = {});

}  // namespace lattheta
