#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "lattheta/core.hpp"
#include "lattheta/lattice.hpp"

namespace lattheta {

struct MinResult {
    PhasePoint argmin;  // lattice coordinates, canonical in [0,1)^2
    CertifiedValue value;
    std::size_t grid_resolution = 0;
    std::size_t refinement_steps = 0;
};

struct SweepRecord {
    double x = 0.0;
    double y = 0.0;
    double alpha = 0.0;
    double min_value = 0.0;
    double argmin_u = 0.0;
    double argmin_v = 0.0;
    double tail_bound = 0.0;
};

// Grid scan plus multi-start pattern search for a 1-periodic function of (u,v).
struct TorusMinimum {
    double u = 0.0;
    double v = 0.0;
    double value = 0.0;
    std::size_t evaluations = 0;
};
TorusMinimum minimize_torus(const std::function<double(double, double)>& f, std::size_t grid_n,
                            std::size_t starts = 5, double min_step = 1e-9);

// Of z and -z pick the representative with u + v <= 1 (ties: smaller u).
PhasePoint canonical_argmin(double u, double v);

// min_z E_L(z;alpha)
MinResult minimize_over_cell(const Lattice& L, double alpha, std::size_t grid_n = 64,
                             const TruncationPolicy& pol = {});

// min_b of the charged theta function
MinResult minimize_charged(const Lattice& L, double alpha, std::size_t grid_n = 64,
                           const TruncationPolicy& pol = {});

bool verify_max_at_origin(const Lattice& L, double alpha, std::size_t samples,
                          std::uint64_t seed = 1, const TruncationPolicy& pol = {});

// Rows ordered by x, then y, then alpha. With require_domain every (x,y)
// must lie in D_+; otherwise any y > 0 is accepted as given.
std::vector<SweepRecord> sweep_fundamental_domain(const std::vector<double>& alphas,
                                                  const std::vector<double>& xs,
                                                  const std::vector<double>& ys,
                                                  std::size_t grid_n = 64,
                                                  bool require_domain = true,
                                                  const TruncationPolicy& pol = {});

enum class PointRule { PointA, PointB };

// Central difference of (x,y) -> theta_{L(x,y)}(c(x,y); alpha).
std::pair<double, double> gradient_at_point(PointRule rule, double x, double y, double alpha,
                                            double h = 1e-5);

struct XDerivativeScan {
    std::vector<double> shifted;  // d/dx theta_L(b;alpha)
    std::vector<double> charged;  // d/dx theta_hat_L(b;alpha)
    double tail_slack = 0.0;      // truncation uncertainty carried into each difference quotient
};
XDerivativeScan x_derivative_sign_scan(double alpha, double y, const std::vector<double>& xs,
                                       double h = 1e-5);

enum class RidgeFamily { F, G };

// f_alpha(y) or g_alpha(y) along x = 1/2 at the circumcentre a.
std::vector<double> ridge_profile(RidgeFamily family, double alpha, const std::vector<double>& ys);

}  // namespace lattheta
