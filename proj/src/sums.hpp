#pragma once

// Internal ball enumeration shared by every two-dimensional series.

#include <vector>

#include "lattheta/core.hpp"

namespace lattheta::detail {

struct Term {
    long k;
    long l;
    double r2;  // |G(k,l) + c|^2
};

struct Ball {
    std::vector<Term> terms;  // sorted by r2 ascending
    double radius = 0.0;
    double tail_bound = 0.0;  // bound on sum of exp(-pi*alpha*r2) over the complement
    bool converged = true;
};

// Upper bound on sum_{|p| > R} exp(-pi*alpha*|p|^2) over a shifted lattice
// with covolume A, from the cell-packing count N(r) <= pi (r+d)^2 / A.
double gaussian_tail(double R, double alpha, double d, double covol);

// Points of G Z^2 + c in the closed disk of radius R, original indices.
std::vector<Term> enumerate_disk(const Mat2& G, Vec2 c, double R);

// Ball large enough that the Gaussian tail is below pol.target_tol.
Ball gaussian_ball(const Mat2& G, Vec2 c, double alpha, const TruncationPolicy& pol);

// Lagrange-reduced basis and packing radius d = (|b1| + |b2|)/2.
struct ReducedBasis {
    Mat2 B;      // reduced generator
    long U[2][2];  // B = G U
    double shortest;
    double d;
};
ReducedBasis lagrange_reduce(const Mat2& G);

// The ball radius depends on the lattice and alpha but not on the shift,
// so repeated evaluations can share one plan.
struct RadiusPlan {
    ReducedBasis rb;
    double radius = 0.0;
    double tail_bound = 0.0;
    bool converged = true;
};
RadiusPlan plan_radius(const Mat2& G, double alpha, const TruncationPolicy& pol);
std::vector<Term> enumerate_reduced(const ReducedBasis& rb, Vec2 c, double R);

// sum exp(-pi*alpha*|Gn + c|^2)
CertifiedValue shifted_sum(const Mat2& G, Vec2 c, double alpha, const TruncationPolicy& pol);

// sum exp(-pi*alpha*|Gn|^2) cos(2 pi (Gn).w), optionally without n = 0
CertifiedValue charged_sum(const Mat2& G, Vec2 w, double alpha, const TruncationPolicy& pol,
                           bool skip_origin = false);

}  // namespace lattheta::detail
