#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "lattheta/applications.hpp"
#include "lattheta/theta.hpp"
#include "sums.hpp"

namespace lattheta {

double CMPotential::operator()(double r) const {
    double s = 0.0;
    for (const auto& [a, w] : nodes) s += w * std::exp(-kPi * a * r);
    return s;
}

CertifiedValue cm_lattice_energy(const CMPotential& p, const Lattice& L, const PhasePoint& z,
                                 const TruncationPolicy& pol) {
    if (p.nodes.empty()) throw Error(Errc::EmptyQuadrature, "potential has no quadrature nodes");
    CertifiedValue out{0.0, 0.0, 0, true};
    CompensatedSum acc;
    for (const auto& [a, w] : p.nodes) {
        if (!(a > 0.0) || !(w >= 0.0)) throw Error(Errc::InvalidArgument, "nodes need alpha > 0 and weight >= 0");
        const CertifiedValue e = lattice_gaussian_sum(L, z, a, pol);
        acc.add(w * e.value);
        out.tail_bound += w * e.tail_bound;
        out.terms_used += e.terms_used;
        out.converged = out.converged && e.converged;
    }
    out.value = acc.result();
    return out;
}

// ---- Gauss-Laguerre ----

namespace {

// log(1/alpha) per unit of the Laguerre variable below alpha = 1
constexpr double kLogAlphaScale = 0.1;

// L_n(x) and L_{n-1}(x) by the three-term recurrence
std::pair<double, double> laguerre(int n, double x) {
    double p0 = 1.0, p1 = 1.0 - x;
    if (n == 0) return {p0, 0.0};
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0 - x) * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

}  // namespace

GaussLaguerre gauss_laguerre(int n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "need at least one node");
    // Golub-Welsch: eigenvalues of the symmetric Jacobi matrix
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = 2.0 * i + 1.0;
        if (i > 0) J(i, i - 1) = J(i - 1, i) = i;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    GaussLaguerre gl;
    for (int i = 0; i < n; ++i) {
        double x = es.eigenvalues()(i);
        for (int it = 0; it < 3; ++it) {  // Newton polish, L_n' = n (L_n - L_{n-1}) / x
            const auto [ln, lm] = laguerre(n, x);
            const double d = n * (ln - lm) / x;
            if (d == 0.0) break;
            x -= ln / d;
        }
        const double ln1 = laguerre(n + 1, x).first;
        gl.nodes.push_back(x);
        gl.weights.push_back(x / ((n + 1.0) * (n + 1.0) * ln1 * ln1));
    }
    return gl;
}

CMPotential riesz_potential(double s, double c_min, int n_nodes) {
    if (!(s > 1.0)) throw Error(Errc::InvalidArgument, "s must exceed 1");
    if (!(c_min > 0.0)) throw Error(Errc::InvalidArgument, "c_min must be positive");
    const GaussLaguerre gl = gauss_laguerre(n_nodes);
    const double pref = std::pow(kPi, s) / std::tgamma(s), kappa = kPi * c_min;
    CMPotential p;
    p.label = "riesz_s=" + std::to_string(s);
    // alpha < 1: alpha = exp(-lam t/(s-1)) spreads the e^{-pi m/alpha} cutoffs over many
    // nodes.
    const double lam = kLogAlphaScale * (s - 1.0);
    std::vector<std::pair<double, double>> low;
    double moment = 0.0;
    for (int i = 0; i < n_nodes; ++i) {
        const double x = gl.nodes[i];
        const double a_lo = std::exp(-kLogAlphaScale * x);
        const double w_over_a = std::exp(std::log(gl.weights[i]) + std::log(lam) + (1.0 - lam) * x);
        if (a_lo > 0.0 && std::isfinite(w_over_a) && w_over_a * a_lo > 1e-300) {
            low.push_back({a_lo, w_over_a * a_lo});
            moment += w_over_a;
        }
    }
    for (auto& [a, w] : low) p.nodes.push_back({a, pref * w / (s - 1.0)});
    // GL misses part of the 1/alpha moment; a node at tiny alpha restores it without
    // disturbing the oscillating part of the lattice sum
    constexpr double a_fix = 1e-6;
    if (moment < 1.0) p.nodes.push_back({a_fix, pref * (1.0 - moment) * a_fix / (s - 1.0)});
    for (int i = 0; i < n_nodes; ++i) {
        const double x = gl.nodes[i], W = gl.weights[i];
        const double a_hi = 1.0 + x / kappa;
        const double w_hi = pref * std::exp(std::log(W) + x - std::log(kappa) + (s - 1.0) * std::log(a_hi));
        if (std::isfinite(w_hi) && w_hi > 1e-300) p.nodes.push_back({a_hi, w_hi});
    }
    return p;
}

// ---- Epstein zeta ----

namespace {

// Error of the integral tail pi R^{2-2s}/(A (s-1)) for the points beyond R,
// from the packing count pi (r-d)^2/A <= N(r) <= pi (r+d)^2/A.
double epstein_tail_error(double R, double s, double d, double A) {
    const double boundary = (2.0 * kPi * d * R + kPi * d * d) * std::pow(R, -2.0 * s) / A;
    const double bulk = (2.0 * kPi * d * 2.0 * s * std::pow(R, 1.0 - 2.0 * s) / (2.0 * s - 1.0) +
                         kPi * d * d * std::pow(R, -2.0 * s)) / A;
    return boundary + bulk;
}

}  // namespace

CertifiedValue epstein_zeta_shifted(const Lattice& L, const PhasePoint& z, double s, const TruncationPolicy& pol) {
    if (!(s > 1.0)) throw Error(Errc::InvalidArgument, "s must exceed 1");
    const detail::ReducedBasis rb = detail::lagrange_reduce(L.gen);
    const double A = L.covolume(), d = rb.d;
    const Vec2 c = z.cartesian(L);

    const double R_cap = std::sqrt(3.0e7 * A / kPi);  // about 3e7 terms
    double R = std::max(4.0 * d, 8.0);
    bool converged = true;
    while (epstein_tail_error(R, s, d, A) > pol.target_tol) {
        if (R >= R_cap) {
            converged = false;
            R = R_cap;
            break;
        }
        R = std::min(2.0 * R, R_cap);
    }

    const Vec2 b1 = rb.B.col0(), b2 = rb.B.col1();
    const double n11 = dot(b1, b1), R2 = R * R;
    const long lmax = static_cast<long>(std::ceil((R + std::sqrt(norm2(c)) + 1.0) * std::sqrt(n11) / std::abs(rb.B.det()))) + 1;
    CompensatedSum total;
    std::size_t terms = 0;
    double c_min = std::numeric_limits<double>::infinity();
    for (long l = -lmax; l <= lmax; ++l) {
        const Vec2 w{l * b2.x + c.x, l * b2.y + c.y};
        // |k b1 + w|^2 <= R^2 as a quadratic in k
        const double bw = dot(b1, w), disc = bw * bw - n11 * (dot(w, w) - R2);
        if (disc < 0.0) continue;
        const long k0 = static_cast<long>(std::ceil((-bw - std::sqrt(disc)) / n11));
        const long k1 = static_cast<long>(std::floor((-bw + std::sqrt(disc)) / n11));
        CompensatedSum row;
        for (long k = k0; k <= k1; ++k) {
            const Vec2 p{k * b1.x + w.x, k * b1.y + w.y};
            const double r2 = dot(p, p);
            if (r2 > R2) continue;
            c_min = std::min(c_min, r2);
            double t;
            if (s == 2.0)
                t = 1.0 / (r2 * r2);
            else if (s == 1.5)
                t = 1.0 / (r2 * std::sqrt(r2));
            else if (s == 3.0)
                t = 1.0 / (r2 * r2 * r2);
            else
                t = std::pow(r2, -s);
            row.add(t);
            ++terms;
        }
        total.add(row.result());
    }
    if (c_min < 1e-24) throw Error(Errc::PoleAtLatticePoint, "z lies on a lattice point");
    total.add(kPi * std::pow(R, 2.0 - 2.0 * s) / (A * (s - 1.0)));
    return {total.result(), epstein_tail_error(R, s, d, A), terms, converged};
}

EpsteinQuadrature::EpsteinQuadrature(const Lattice& L, double s, int n_nodes)
    : L_(L), s_(s), pref_(0.0), gl_(gauss_laguerre(n_nodes)) {
    if (!(s > 1.0)) throw Error(Errc::InvalidArgument, "s must exceed 1");
    pref_ = std::pow(kPi, s) / std::tgamma(s);
    const double A = L.covolume();
    // alpha < 1 half: with alpha = exp(-w/(s-1)) every dual mode gets a fixed weight
    dual_zero_ = pref_ / (A * (s - 1.0));
    const Mat2 D = L.gen.inverse().transpose();
    const detail::ReducedBasis rb = detail::lagrange_reduce(D);
    const double Rd = std::sqrt(40.0 / kPi) + rb.d;
    for (const auto& t : detail::enumerate_reduced(rb, {0.0, 0.0}, Rd)) {
        if (t.k == 0 && t.l == 0) continue;
        // same log-alpha scaling as riesz_potential; the mu = 0 part is exact here
        const double lam = kLogAlphaScale * (s - 1.0);
        double k = 0.0;
        for (std::size_t i = 0; i < gl_.nodes.size(); ++i) {
            const double x = gl_.nodes[i];
            const double e = std::log(gl_.weights[i]) + std::log(lam) + (1.0 - lam) * x -
                             kPi * t.r2 * std::exp(kLogAlphaScale * x);
            k += std::exp(e);
        }
        if (k > 0.0) dual_modes_.push_back({D * Vec2{double(t.k), double(t.l)}, dual_zero_ * k});
    }
}

double EpsteinQuadrature::operator()(const PhasePoint& z) const {
    const Vec2 c = z.cartesian(L_);
    const detail::ReducedBasis rb = detail::lagrange_reduce(L_.gen);
    // alpha >= 1 half: e^{-pi alpha r} with r >= c_min is negligible once r > c_min + 15
    const auto pts = detail::enumerate_reduced(rb, c, std::sqrt(rb.d * rb.d + 15.0));
    const double c_min = pts.empty() ? rb.d * rb.d : pts.front().r2;
    if (c_min < 1e-24) throw Error(Errc::PoleAtLatticePoint, "z lies on a lattice point");
    CompensatedSum acc;
    for (const auto& t : pts) {
        if (t.r2 > c_min + 15.0) break;
        // rescaled per point: int_1^inf e^{-pi a r} a^{s-1} da = e^{-kappa}/kappa int e^{-x} (1+x/kappa)^{s-1} dx
        const double kappa = kPi * t.r2, lk = std::log(kappa);
        CompensatedSum inner;
        for (std::size_t i = 0; i < gl_.nodes.size(); ++i) {
            const double x = gl_.nodes[i];
            inner.add(std::exp(std::log(gl_.weights[i]) + (s_ - 1.0) * std::log1p(x / kappa) - kappa - lk));
        }
        acc.add(inner.result());
    }
    CompensatedSum low;
    low.add(dual_zero_);
    for (const auto& [mu, w] : dual_modes_) low.add(w * std::cos(2.0 * kPi * dot(mu, c)));
    return pref_ * acc.result() + low.result();
}

double epstein_zeta_quadrature(const Lattice& L, const PhasePoint& z, double s, int n_nodes) {
    return EpsteinQuadrature(L, s, n_nodes)(z);
}

MinResult minimize_epstein(const Lattice& L, double s, std::size_t grid_n) {
    const EpsteinQuadrature q(L, s);
    auto f = [&](double u, double v) {
        try {
            return q(u, v);
        } catch (const Error&) {
            return std::numeric_limits<double>::infinity();
        }
    };
    const TorusMinimum m = minimize_torus(f, grid_n);
    MinResult r;
    r.argmin = canonical_argmin(m.u, m.v);
    r.value = {m.value, 0.0, 0, true};
    r.grid_resolution = grid_n;
    r.refinement_steps = m.evaluations;
    return r;
}

// ---- Born ----

double ChargeDistribution::at(long m1, long m2) const {
    const long N = period_N;
    return weights[static_cast<std::size_t>(((m1 % N + N) % N) * N + ((m2 % N + N) % N))];
}

void validate_charges(const ChargeDistribution& eps, double tol) {
    const long N = eps.period_N;
    if (N <= 0 || eps.weights.size() != static_cast<std::size_t>(N * N))
        throw Error(Errc::ConstraintViolated, "weights must have N^2 entries");
    CompensatedSum s1, s2;
    for (double w : eps.weights) {
        s1.add(w);
        s2.add(w * w);
    }
    const double n2 = static_cast<double>(N * N);
    if (std::abs(s1.result()) > tol * n2) throw Error(Errc::ConstraintViolated, "charges are not neutral");
    if (std::abs(s2.result() - n2) > tol * n2) throw Error(Errc::ConstraintViolated, "sum of squares must equal N^2");
}

std::vector<double> born_matrix(const Lattice& L, long N, const CMPotential& p, const TruncationPolicy& pol) {
    if (N <= 0) throw Error(Errc::InvalidArgument, "period must be positive");
    if (p.nodes.empty()) throw Error(Errc::EmptyQuadrature, "potential has no quadrature nodes");
    // x - y = N gen(m + (c - y)/N), so each residue offset is one shifted sum at alpha N^2
    std::vector<double> S(static_cast<std::size_t>(N * N));
    for (long d1 = 0; d1 < N; ++d1)
        for (long d2 = 0; d2 < N; ++d2) {
            const PhasePoint z{double(d1) / N, double(d2) / N};
            double v = 0.0;
            for (const auto& [a, w] : p.nodes) v += w * lattice_gaussian_sum(L, z, a * N * N, pol).value;
            S[d1 * N + d2] = v;
        }
    const std::size_t M = static_cast<std::size_t>(N * N);
    std::vector<double> out(M * M);
    for (long y1 = 0; y1 < N; ++y1)
        for (long y2 = 0; y2 < N; ++y2)
            for (long c1 = 0; c1 < N; ++c1)
                for (long c2 = 0; c2 < N; ++c2) {
                    const long d1 = ((c1 - y1) % N + N) % N, d2 = ((c2 - y2) % N + N) % N;
                    out[(y1 * N + y2) * M + (c1 * N + c2)] = S[d1 * N + d2];
                }
    return out;
}

double born_energy(const Lattice& L, const ChargeDistribution& eps, const CMPotential& p,
                   const TruncationPolicy& pol) {
    validate_charges(eps);
    const long N = eps.period_N;
    const std::vector<double> M = born_matrix(L, N, p, pol);
    const std::size_t n = eps.weights.size();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc.add(eps.weights[i] * eps.weights[j] * M[i * n + j]);
    return acc.result() / static_cast<double>(N * N);
}

ChargeDistribution epsilon_opt_hexagonal(long N) {
    if (N <= 0 || N % 3 != 0) throw Error(Errc::NotMultipleOfThree, "period must be a positive multiple of 3");
    ChargeDistribution e{N, std::vector<double>(static_cast<std::size_t>(N * N))};
    for (long m1 = 0; m1 < N; ++m1)
        for (long m2 = 0; m2 < N; ++m2)
            e.weights[m1 * N + m2] = ((m2 - m1) % 3 == 0) ? std::sqrt(2.0) : -1.0 / std::sqrt(2.0);
    return e;
}

}  // namespace lattheta
