#include "lattheta/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lattheta/theta.hpp"
#include "parallel.hpp"
#include "sums.hpp"

namespace lattheta {

namespace {

double wrap(double t) {
    t -= std::floor(t);
    return t >= 1.0 ? 0.0 : t;
}

struct Probe {
    double u, v, f;
};

// Shrinking-step coordinate pattern search on the unit torus.
Probe pattern_search(const std::function<double(double, double)>& f, Probe p, double step,
                     double min_step, std::size_t& evals) {
    static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                        {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
    // Gains below rounding level do not count, and each step size gets a bounded
    // number of moves, so flat valleys cannot trap the search in a roundoff walk.
    int moves = 0;
    while (step >= min_step) {
        Probe best = p;
        for (const auto& d : kDirs) {
            const double u = wrap(p.u + d[0] * step), v = wrap(p.v + d[1] * step);
            const double fv = f(u, v);
            ++evals;
            if (fv < best.f) best = {u, v, fv};
        }
        if (best.f < p.f - 4e-16 * std::abs(p.f) && ++moves <= 64) {
            p = best;
        } else {
            step *= 0.5;
            moves = 0;
        }
    }
    return p;
}

// Pattern search crawls along narrow slanted valleys and cannot see past a saddle
// whose descent direction lies between its eight probes. A finite-difference
// Newton step handles the valley; a negative Hessian eigenvalue triggers a
// probe along its eigenvector followed by a fresh pattern search.
Probe newton_polish(const std::function<double(double, double)>& f, Probe p, double step0, double min_step,
                    std::size_t& evals) {
    const double h = 1e-4;
    for (int iter = 0; iter < 40; ++iter) {
        const double f0 = p.f;
        const double fpu = f(wrap(p.u + h), p.v), fmu = f(wrap(p.u - h), p.v);
        const double fpv = f(p.u, wrap(p.v + h)), fmv = f(p.u, wrap(p.v - h));
        const double fpp = f(wrap(p.u + h), wrap(p.v + h)), fmm = f(wrap(p.u - h), wrap(p.v - h));
        const double fpm = f(wrap(p.u + h), wrap(p.v - h)), fmp = f(wrap(p.u - h), wrap(p.v + h));
        evals += 8;
        const double gu = (fpu - fmu) / (2 * h), gv = (fpv - fmv) / (2 * h);
        const double huu = (fpu - 2 * f0 + fmu) / (h * h), hvv = (fpv - 2 * f0 + fmv) / (h * h);
        const double huv = (fpp - fpm - fmp + fmm) / (4 * h * h);
        const double tr = huu + hvv, det = huu * hvv - huv * huv;
        const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
        const double lmin = tr / 2 - disc;
        double du, dv;
        if (lmin < -1e-6 * std::max(1.0, std::abs(tr))) {
            // eigenvector of the negative eigenvalue
            du = huv;
            dv = lmin - huu;
            if (std::abs(du) + std::abs(dv) < 1e-300) {
                du = lmin - hvv;
                dv = huv;
            }
            const double n = std::hypot(du, dv);
            du /= n;
            dv /= n;
            bool moved = false;
            for (double t = step0; t >= min_step && !moved; t *= 0.5)
                for (double sgn : {1.0, -1.0}) {
                    const double u = wrap(p.u + sgn * t * du), v = wrap(p.v + sgn * t * dv);
                    const double fv = f(u, v);
                    ++evals;
                    if (fv < p.f) {
                        p = pattern_search(f, {u, v, fv}, step0, min_step, evals);
                        moved = true;
                        break;
                    }
                }
            if (!moved) break;
            continue;
        }
        if (!(det > 0.0)) break;
        du = -(hvv * gu - huv * gv) / det;
        dv = -(huu * gv - huv * gu) / det;
        if (std::hypot(du, dv) > step0) {
            const double sc = step0 / std::hypot(du, dv);
            du *= sc;
            dv *= sc;
        }
        bool improved = false;
        for (double t = 1.0; t > 1e-6; t *= 0.5) {
            const double u = wrap(p.u + t * du), v = wrap(p.v + t * dv);
            const double fv = f(u, v);
            ++evals;
            if (fv < p.f) {
                p = {u, v, fv};
                improved = true;
                break;
            }
        }
        if (!improved || std::hypot(du, dv) < min_step) break;
    }
    return p;
}

// Objective of E(z;alpha) in lattice coordinates. Below alpha = 1 the
// constant dual term is split off so the fluctuating part keeps full precision.
struct GaussianObjective {
    Lattice L;
    double alpha;
    bool dual;
    detail::RadiusPlan plan;
    std::vector<std::pair<Vec2, double>> modes;  // dual vectors with their weights

    GaussianObjective(const Lattice& lat, double a, const TruncationPolicy& pol)
        : L(lat), alpha(a), dual(a < 1.0 && pol.allow_dual_route) {
        if (dual) {
            const Mat2 D = L.gen.inverse().transpose();
            const auto ball = detail::gaussian_ball(D, {0.0, 0.0}, 1.0 / alpha, pol);
            for (const auto& t : ball.terms) {
                if (t.k == 0 && t.l == 0) continue;
                modes.push_back({D * Vec2{double(t.k), double(t.l)}, std::exp(-kPi * t.r2 / alpha)});
            }
        } else {
            plan = detail::plan_radius(L.gen, alpha, pol);
        }
    }

    // For the dual route this is sum over mu != 0 only; see to_value.
    double operator()(double u, double v) const {
        const Vec2 c = L.gen * Vec2{u, v};
        CompensatedSum acc;
        if (dual) {
            for (const auto& [mu, w] : modes) acc.add(w * std::cos(2.0 * kPi * dot(mu, c)));
        } else {
            for (const auto& t : detail::enumerate_reduced(plan.rb, c, plan.radius))
                acc.add(std::exp(-kPi * alpha * t.r2));
        }
        return acc.result();
    }

    double to_value(double raw) const { return dual ? (1.0 + raw) / (L.covolume() * alpha) : raw; }
};

MinResult finish(const TorusMinimum& m, std::size_t grid_n, CertifiedValue v) {
    MinResult r;
    r.argmin = canonical_argmin(m.u, m.v);
    r.value = v;
    r.grid_resolution = grid_n;
    r.refinement_steps = m.evaluations;
    return r;
}

}  // namespace

PhasePoint canonical_argmin(double u, double v) {
    u = wrap(u);
    v = wrap(v);
    const double mu = wrap(-u), mv = wrap(-v);
    const double s1 = u + v, s2 = mu + mv;
    const bool take_neg = (s2 < s1 - 1e-12) || (std::abs(s2 - s1) <= 1e-12 && mu < u);
    return take_neg ? PhasePoint{mu, mv, Frame::LatticeCoords} : PhasePoint{u, v, Frame::LatticeCoords};
}

TorusMinimum minimize_torus(const std::function<double(double, double)>& f, std::size_t grid_n,
                            std::size_t starts, double min_step) {
    if (grid_n < 2) throw Error(Errc::InvalidArgument, "grid_n too small");
    std::vector<Probe> grid;
    grid.reserve(grid_n * grid_n);
    const double h = 1.0 / static_cast<double>(grid_n);
    for (std::size_t i = 0; i < grid_n; ++i)
        for (std::size_t j = 0; j < grid_n; ++j) grid.push_back({i * h, j * h, f(i * h, j * h)});
    std::size_t evals = grid.size();
    const std::size_t k = std::min(starts, grid.size());
    std::partial_sort(grid.begin(), grid.begin() + static_cast<long>(k), grid.end(),
                      [](const Probe& a, const Probe& b) { return a.f < b.f; });
    Probe best = grid.front();
    for (std::size_t s = 0; s < k; ++s) {
        Probe p = pattern_search(f, grid[s], h, min_step, evals);
        p = newton_polish(f, p, h, min_step, evals);
        if (p.f < best.f) best = p;
    }
    return {best.u, best.v, best.f, evals};
}

MinResult minimize_over_cell(const Lattice& L, double alpha, std::size_t grid_n,
                             const TruncationPolicy& pol) {
    if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
    if (grid_n < 8) throw Error(Errc::InvalidArgument, "grid_n must be at least 8");
    const GaussianObjective obj(L, alpha, pol);
    const TorusMinimum m = minimize_torus(std::cref(obj), grid_n);
    CertifiedValue v = lattice_gaussian_sum(L, PhasePoint{m.u, m.v}, alpha, pol);
    v.value = obj.to_value(m.value);
    MinResult r = finish(m, grid_n, v);
    return r;
}

MinResult minimize_charged(const Lattice& L, double alpha, std::size_t grid_n, const TruncationPolicy& pol) {
    if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
    if (grid_n < 8) throw Error(Errc::InvalidArgument, "grid_n must be at least 8");
    const bool unit = std::abs(L.covolume() - 1.0) < 1e-12;
    if (alpha < 1.0 && pol.allow_dual_route && unit) {
        // theta_hat(b;alpha) = theta(b;1/alpha)/alpha
        const GaussianObjective obj(L, 1.0 / alpha, pol);
        const TorusMinimum m = minimize_torus(std::cref(obj), grid_n);
        CertifiedValue v = theta_charged(L, PhasePoint{m.u, m.v}, alpha, pol);
        v.value = obj.to_value(m.value) / alpha;
        return finish(m, grid_n, v);
    }
    // fixed mode list, phases 2 pi det (k b2 - l b1)
    const auto ball = detail::gaussian_ball(L.gen, {0.0, 0.0}, alpha, pol);
    const double det = L.gen.det();
    struct Mode {
        double k, l, w;
    };
    std::vector<Mode> modes;
    for (const auto& t : ball.terms)
        if (t.k != 0 || t.l != 0) modes.push_back({double(t.k), double(t.l), std::exp(-kPi * alpha * t.r2)});
    auto f = [&](double u, double v) {
        CompensatedSum acc;
        for (const Mode& md : modes) acc.add(md.w * std::cos(2.0 * kPi * det * (md.k * v - md.l * u)));
        return acc.result();
    };
    const TorusMinimum m = minimize_torus(f, grid_n);
    CertifiedValue v = theta_charged(L, PhasePoint{m.u, m.v}, alpha, pol);
    v.value = 1.0 + m.value;
    return finish(m, grid_n, v);
}

bool verify_max_at_origin(const Lattice& L, double alpha, std::size_t samples, std::uint64_t seed,
                          const TruncationPolicy& pol) {
    const CertifiedValue e0 = lattice_gaussian_sum(L, PhasePoint{0.0, 0.0}, alpha, pol);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const CertifiedValue e = lattice_gaussian_sum(L, PhasePoint{U(rng), U(rng)}, alpha, pol);
        if (e.value > e0.value + e.tail_bound + e0.tail_bound) return false;
    }
    return true;
}

std::vector<SweepRecord> sweep_fundamental_domain(const std::vector<double>& alphas,
                                                  const std::vector<double>& xs,
                                                  const std::vector<double>& ys, std::size_t grid_n,
                                                  bool require_domain, const TruncationPolicy& pol) {
    std::vector<double> as = alphas, xv = xs, yv = ys;
    std::sort(as.begin(), as.end());
    std::sort(xv.begin(), xv.end());
    std::sort(yv.begin(), yv.end());
    for (double x : xv)
        for (double y : yv) {
            if (!(y > 0.0)) throw Error(Errc::NonPositiveY, "sweep y must be positive");
            if (require_domain && !in_fundamental_domain(x, y, 1e-9))
                throw Error(Errc::OutsideFundamentalDomain, "sweep cell outside D_+");
        }
    for (double a : as)
        if (!(a > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");

    std::vector<SweepRecord> out(xv.size() * yv.size() * as.size());
    detail::parallel_for(out.size(), [&](std::size_t idx) {
        const std::size_t ia = idx % as.size();
        const std::size_t iy = (idx / as.size()) % yv.size();
        const std::size_t ix = idx / (as.size() * yv.size());
        const Lattice L = lattice_from_tau(xv[ix], yv[iy]);
        const MinResult m = minimize_over_cell(L, as[ia], grid_n, pol);
        out[idx] = {xv[ix], yv[iy], as[ia], m.value.value, m.argmin.u, m.argmin.v, m.value.tail_bound};
    });
    return out;
}

namespace {

TruncationPolicy fine_policy() {
    TruncationPolicy p;
    p.target_tol = 1e-16;
    return p;
}

PhasePoint point_for(PointRule rule, double x, double y) {
    return rule == PointRule::PointA ? special_point_a(x, y) : special_point_b(x, y);
}

}  // namespace

std::pair<double, double> gradient_at_point(PointRule rule, double x, double y, double alpha, double h) {
    if (!(h >= 1e-7 && h <= 1e-3)) throw Error(Errc::InvalidArgument, "h must lie in [1e-7, 1e-3]");
    const TruncationPolicy pol = fine_policy();
    auto f = [&](double xx, double yy) {
        return theta_shifted(lattice_from_tau(xx, yy), point_for(rule, xx, yy), alpha, pol).value;
    };
    return {(f(x + h, y) - f(x - h, y)) / (2.0 * h), (f(x, y + h) - f(x, y - h)) / (2.0 * h)};
}

XDerivativeScan x_derivative_sign_scan(double alpha, double y, const std::vector<double>& xs, double h) {
    const TruncationPolicy pol = fine_policy();
    XDerivativeScan out;
    for (double x : xs) {
        auto at = [&](double xx, bool charged) {
            const Lattice L = lattice_from_tau(xx, y);
            const PhasePoint b = special_point_b(xx, y);
            return charged ? theta_charged(L, b, alpha, pol) : theta_shifted(L, b, alpha, pol);
        };
        for (bool charged : {false, true}) {
            const CertifiedValue p = at(x + h, charged), m = at(x - h, charged);
            const double d = (p.value - m.value) / (2.0 * h);
            out.tail_slack = std::max(out.tail_slack, (p.tail_bound + m.tail_bound) / (2.0 * h));
            (charged ? out.charged : out.shifted).push_back(d);
        }
    }
    return out;
}

std::vector<double> ridge_profile(RidgeFamily family, double alpha, const std::vector<double>& ys) {
    if (!(alpha > 0.0)) throw Error(Errc::NonPositiveAlpha, "alpha must be positive");
    std::vector<double> out;
    out.reserve(ys.size());
    for (double y : ys) {
        const Lattice L = lattice_from_tau(0.5, y);
        const PhasePoint a = special_point_a(0.5, y);
        double v;
        if (alpha >= 1.0)
            v = (family == RidgeFamily::F ? theta_shifted(L, a, alpha) : theta_charged(L, a, alpha)).value;
        else  // g_alpha = f_{1/alpha}/alpha and f_alpha = g_{1/alpha}/alpha
            v = (family == RidgeFamily::F ? theta_charged(L, a, 1.0 / alpha) : theta_shifted(L, a, 1.0 / alpha)).value / alpha;
        out.push_back(v);
    }
    return out;
}

}  // namespace lattheta
