// Builders for the explicit metric families: the non-twisting and twisting
// normal forms with null Killing vector d/dt, the Fefferman-like family, the
// pp-wave, the generalized Sparling-Tod metric and Plebanski's heavenly form.
// Every builder returns the metric, a null tetrad with K = e_00', and its
// side constraints as residuals with verdicts attached.
#pragma once

#include "nullasd/projective.hpp"
#include "nullasd/spinor.hpp"
#include "nullasd/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nullasd {

// Chart of the normal forms.
inline const Chart kNormalFormChart{"t", "x", "y", "z"};
// Chart of the pp-wave, Sparling-Tod and heavenly metrics.
inline const Chart kHeavenlyChart{"T", "X", "Y", "Z"};

struct Constraint {
    std::string name;
    std::vector<Expr> residual;
    ZeroResult verdict;
};

struct BuiltGeometry {
    std::string family;
    Metric g;
    NullTetrad tet;
    VectorField k;
    std::optional<ProjectiveStructure> proj;
    std::vector<Constraint> constraints;

    bool constraints_hold() const;
    const Constraint* constraint(const std::string& name) const;
};

// g = (dt + (z A3 - Q) dy)(dy - beta dx)
//     - (dz - z(-beta_y + A1 + beta A2 + beta^2 A3) dx - (z(A2 + 2 beta A3) + P) dy) dx
// with A0 = beta_x + beta beta_y - beta A1 - beta^2 A2 - beta^3 A3. Inputs are
// functions of (x, y).
BuiltGeometry build_nontwisting(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& beta, const Expr& p,
                                const Expr& q, const SamplingConfig& cfg = {});

// The beta = 0 member: (dt + (z A3 - Q) dy) dy - (dz - z A1 dx - (z A2 + P) dy) dx.
BuiltGeometry build_beta_zero(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& p = Expr(),
                              const Expr& q = Expr(), const SamplingConfig& cfg = {});

// (d_x + z d_y + (A0 + z A1 + z^2 A2 + z^3 A3) d_z) G_zz.
Expr g_residual(const ProjectiveStructure& proj, const Expr& g);

// g = (dt + A3 G_z dy + (A2 G_z + 2 A3 (z G_z - G) - G_zy) dx)(dy - z dx)
//     - G_zz dx (dz - (A0 + z A1 + z^2 A2 + z^3 A3) dx).
// Throws GeometryError when G_zz is identically zero. A projective structure
// is taken in the chart (x, y).
BuiltGeometry build_twisting(const ProjectiveStructure& proj, const Expr& g, const SamplingConfig& cfg = {});

struct FeffermanData {
    Expr gamma, delta, rho, sigma;
    ProjectiveStructure proj;
};

// The twisting family with G = z^2/2 + z gamma + delta, keeping rho and sigma:
// (dt + ((z + gamma) A3 + sigma) dy + ((z + gamma) A2 + 2 A3 (z^2/2 - delta) - gamma_y + rho) dx)(dy - z dx)
//     - (dz - (A0 + z A1 + z^2 A2 + z^3 A3) dx) dx.
BuiltGeometry build_fefferman_like(const FeffermanData& d, const SamplingConfig& cfg = {});

// The (rho, sigma) that satisfy both type N conditions for given gamma, delta, A.
std::pair<Expr, Expr> fefferman_type_n_gauge(const FeffermanData& d);

// The conditions c1 = gamma A3 + sigma - A2/3 and
// c2 = gamma A2 - 2 A3 delta - gamma_y + rho - 2 A1/3 hold in a gauge. The
// shift t -> t + f(x, y) moves (rho, sigma) by (f_x, f_y), so only
// d(c2 dx + c1 dy) is invariant. Psi_0 = Psi_1 = Psi_2 = 0 and
// Psi_3 = -3/4 (c1_x - c2_y).
struct FeffermanCheck {
    std::array<Expr, 2> conditions;  // c1, c2
    ZeroResult verdict;              // c1 = c2 = 0
    Expr curl;                       // c1_x - c2_y
    ZeroResult curl_verdict;
    std::vector<PetrovType> types;   // unprimed type at the sample points
    bool consistent = false;         // curl vanishes <=> no sample point of type III
};

FeffermanCheck fefferman_type_n_check(const FeffermanData& d, const SamplingConfig& cfg = {});

// g = dY dT - dZ dX - Q dY^2 with K = d_T; Q a function of (X, Y).
BuiltGeometry build_ppwave(const Expr& q, const SamplingConfig& cfg = {});

// g = dY dT - dZ dX - H(Y/w, Z/w) w^-3 (Y dZ - Z dY)^2 with w = YT - ZX and
// K = Y d_X + Z d_T. H is an expression in the formal arguments u and v.
BuiltGeometry build_sparling_tod(const Expr& h, const SamplingConfig& cfg = {});

// (T, X, Y, Z) -> (t, x, y, z) with t = -(X/Y + T/Z)/2, z = (YZ)^-1/2,
// x = (YT - XZ)(YZ)^-1/2, y = log(Z/Y). Throws GeometryError on YT = ZX or YZ <= 0.
Assignment sparling_tod_transform(const Assignment& pt);

// A3(x, y) = -x/4 - H(e^(-y/2)/x, e^(y/2)/x)/x^3, so that z^2 g becomes
// dy dt - dz dx + z A3 dy^2, the beta = 0 form with only A3. The -x/4 comes
// from the flat part dY dT - dZ dX.
Expr sparling_tod_a3(const Expr& h);

struct HeavenlyData {
    Expr theta;
    Expr residual;  // Theta_YT - Theta_ZX + Theta_TT Theta_XX - Theta_XT^2
    ZeroResult verdict;
};

struct HeavenlyGeometry {
    BuiltGeometry geometry;
    HeavenlyData data;
};

// g = dY (dT - Theta_XX dY - Theta_TX dZ) - dZ (dX + Theta_TT dZ + Theta_TX dY).
HeavenlyGeometry build_heavenly(const Expr& theta, const SamplingConfig& cfg = {});

// Antisymmetric 4x4 arrays (coordinate components, row-major) of
// Sigma^0'0' = theta^00' ^ theta^10', Sigma^0'1' = (theta^00' ^ theta^11' + theta^01' ^ theta^10')/2,
// Sigma^1'1' = theta^01' ^ theta^11', for o^A' = (1, 0) and iota^A' = (0, -1).
std::array<std::array<Expr, 16>, 3> heavenly_two_forms(const NullTetrad& t);

// pi_A' pi_B' Sigma^A'B' with pi_0', pi_1' given.
std::array<Expr, 16> sigma_pulled_back(const std::array<std::array<Expr, 16>, 3>& sigma, const Expr& pi0,
                                       const Expr& pi1);

// Endomorphisms E^a_b = g^ac Sigma_cb of R = Sigma^0'0' - Sigma^1'1', I = Sigma^0'0' + Sigma^1'1'
// and S = 2 Sigma^0'1'; checks -I^2 = R^2 = S^2 = Id and IRS = Id.
std::vector<NamedVerdict> endomorphism_check(const Metric& g, const std::array<std::array<Expr, 16>, 3>& sigma,
                                             const SamplingConfig& cfg = {});

}  // namespace nullasd
