// Two-dimensional projective structures: the second-order ODE
// y'' = A0 + A1 y' + A2 y'^2 + A3 y'^3, torsion-free connections up to
// projective equivalence, the geodesic spray in the affine fibre patch
// lambda = y', and the flatness obstruction.
#pragma once

#include "nullasd/expr.hpp"

#include <array>
#include <string>
#include <vector>

namespace nullasd {

using Chart2 = std::array<std::string, 2>;

// Fibre coordinate of the spray.
inline const std::string kFibre = "lambda";

struct ProjectiveStructure {
    Chart2 chart{"x", "y"};
    std::array<Expr, 4> a{};  // A0..A3

    // F = A0 + lambda A1 + lambda^2 A2 + lambda^3 A3.
    Expr fibre_polynomial() const;
};

class Connection2D {
public:
    Connection2D() = default;
    explicit Connection2D(Chart2 chart) : chart_(std::move(chart)) {}

    const Chart2& chart() const { return chart_; }
    // Gamma^i_jk; (i, j, k) and (i, k, j) share storage.
    Expr& operator()(int i, int j, int k) { return g_[i * 3 + j + k]; }
    const Expr& operator()(int i, int j, int k) const { return g_[i * 3 + j + k]; }

private:
    Chart2 chart_{"x", "y"};
    std::array<Expr, 6> g_{};
};

// d/dx + lambda d/dy + c[2] d/dlambda; c[0] and c[1] are kept explicit so the
// normalized form can be checked.
struct Spray {
    Chart2 chart{"x", "y"};
    std::array<Expr, 3> c{};
};

ProjectiveStructure ode_from_connection(const Connection2D& c);
// Gamma~^i_jk = Gamma^i_jk + a_j delta^i_k + a_k delta^i_j.
Connection2D projective_equivalence_shift(const Connection2D& c, const std::array<Expr, 2>& a);
Spray spray(const ProjectiveStructure& p);

// The structure read with x and y exchanged, which is the fibre patch
// 1/lambda: (A0, A1, A2, A3) -> (-A3, -A2, -A1, -A0).
ProjectiveStructure exchange_coordinates(const ProjectiveStructure& p);

struct FlatnessResult {
    Expr invariant;  // polynomial in lambda over functions of (x, y)
    ZeroResult result;
};

// With d/dx = d_x + lambda d_y + F d_lambda, F_0 = dF/dy and F_1 = dF/dlambda:
// (d/dx)^2 F_11 - 4 (d/dx) F_01 - F_1 (d/dx) F_11 + 4 F_1 F_01 - 3 F_0 F_11 + 6 F_00.
FlatnessResult flatness_invariant(const ProjectiveStructure& p, const SamplingConfig& cfg = {});

// y'' = b_y y' + b_x, the derivative of y' = b(x, y).
ProjectiveStructure derivative_of_first_order(const Expr& b, const Chart2& chart = {"x", "y"});

struct GeodesicPath {
    std::vector<std::array<double, 3>> points;  // (x, y, lambda), initial point first
    bool complete = true;
    std::string error;  // set when evaluation failed and the path was cut short
};

// Classical fixed-step RK4 for dx/ds = 1, dy/ds = lambda, dlambda/ds = F.
GeodesicPath geodesic_integrate(const ProjectiveStructure& p, std::array<double, 3> init, double h, int n,
                                const Assignment& params = {});

}  // namespace nullasd
