#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace lattheta {

enum class Errc {
    NonPositiveY,
    NotUpperHalfPlane,
    NoConvergence,
    NonPositiveT,
    NonPositiveAlpha,
    InvalidArgument,
    OutsideFundamentalDomain,
    UnsupportedDensity,
    EmptyQuadrature,
    PoleAtLatticePoint,
    ConstraintViolated,
    NotMultipleOfThree,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// Row-major 2x2; the columns are the basis vectors when used as a generator.
struct Mat2 {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    double det() const { return a * d - b * c; }
    Vec2 col0() const { return {a, c}; }
    Vec2 col1() const { return {b, d}; }
    Vec2 operator*(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    Mat2 operator*(const Mat2& m) const {
        return {a * m.a + b * m.c, a * m.b + b * m.d, c * m.a + d * m.c, c * m.b + d * m.d};
    }
    Mat2 scaled(double s) const { return {s * a, s * b, s * c, s * d}; }
    Mat2 inverse() const {
        const double D = det();
        return {d / D, -b / D, -c / D, a / D};
    }
    Mat2 transpose() const { return {a, c, b, d}; }
};

inline double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }
inline double norm2(Vec2 u) { return dot(u, u); }

// A series value together with a rigorous bound on the discarded tail.
struct CertifiedValue {
    double value = 0.0;
    double tail_bound = 0.0;
    std::size_t terms_used = 0;
    bool converged = true;  // false means the target tolerance was not reached
};

struct TruncationPolicy {
    double target_tol = 1e-12;
    std::size_t max_radius = 10000;  // cap on the ball radius, in units of the shortest basis vector
    bool allow_dual_route = true;    // evaluate small exponents through the functional equation
};

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v) {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double result() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.73205080756887729353;

}  // namespace lattheta
