// The twistor distribution L_A = pi^A' (e_AA' - Gamma_AA'B'^C' pi^B' d/dpi^C')
// in the affine fibre patch pi = (1, lambda), its integrability, and the lift
// of a conformal Killing vector to the projective primed spin bundle.
#pragma once

#include "nullasd/construct.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace nullasd {

// Components along the four chart directions, then d/dlambda.
using FibredVector = std::array<Expr, 5>;

struct LaxPair {
    Chart chart;
    FibredVector l0, l1;
};

struct LiftedKilling {
    Chart chart;
    FibredVector v;
};

// Derivation U(f) over (chart, lambda).
Expr apply(const Chart& c, const FibredVector& u, const Expr& f);
FibredVector commutator(const Chart& c, const FibredVector& u, const FibredVector& v);

LaxPair lax_pair(const NullTetrad& t);
LaxPair lax_pair(const BuiltGeometry& bg);

// Rewrites the pair in the fibre coordinate mu = forward(x, lambda), where
// lambda = inverse(x, mu) and mu is again called lambda. Both are expressions
// in the chart and kFibre.
LaxPair fibre_transform(const LaxPair& lp, const Expr& forward, const Expr& inverse);

// The pair with the fibre coordinate 1/lambda.
LaxPair other_patch(const LaxPair& lp);

// v = c0 a0 + c1 a1, solved through the first 2x2 minor of (a0, a1) that is
// not identically zero. The residual is det (v - c0 a0 - c1 a1), which is
// free of denominators introduced by the solve.
struct SpanSolve {
    Expr c0, c1;
    std::pair<int, int> minor{-1, -1};
    FibredVector residual;
    ZeroResult verdict;
    std::string failing;  // component of the witness
};

// Throws GeometryError when every minor of (a0, a1) vanishes.
SpanSolve solve_in_span(const FibredVector& a0, const FibredVector& a1, const FibredVector& v,
                        const SamplingConfig& cfg = {});

struct Integrability {
    FibredVector bracket;  // [L0, L1]
    SpanSolve solve;
    bool integrable() const { return solve.verdict.is_zero(); }
};

Integrability integrability_check(const LaxPair& lp, const SamplingConfig& cfg = {});

// Both vectors of b lie in the span of a.
ZeroResult same_distribution(const LaxPair& a, const LaxPair& b, const SamplingConfig& cfg = {});

// K~ = K^a e~_a + (N pi)^C' d/dpi^C' projectivized, where N_B'^C' is the primed
// part of the endomorphism v -> nabla_v K. For Killing K with [K, e_a] = 0 the
// vertical part vanishes. No Killing check is made.
LiftedKilling lift_vector(const NullTetrad& t, const VectorField& k);

// Throws VerdictError when K is not a conformal Killing vector.
LiftedKilling lift_killing(const NullTetrad& t, const VectorField& k, const SamplingConfig& cfg = {});
LiftedKilling lift_killing(const BuiltGeometry& bg, const SamplingConfig& cfg = {});

// [K~, L_A] = m_A0 L0 + m_A1 L1 for A = 0, 1.
struct LiftCommutation {
    std::array<SpanSolve, 2> solves;
    bool closes() const { return solves[0].verdict.is_zero() && solves[1].verdict.is_zero(); }
};

LiftCommutation lift_commutation_check(const LiftedKilling& kl, const LaxPair& lp, const SamplingConfig& cfg = {});

// The normalized pairs in the fibre coordinate where L0 has no d/dlambda term.
// Non-twisting family, after L1 -> L1 - C L0:
//   L0 = d_t + (lambda - beta) d_z,
//   L1 = d_x + lambda d_y + F d_lambda + lambda (Q - z A3) d_t
//        + (z(-beta_y + A1 + beta A2 + beta^2 A3) + lambda (z(A2 + 2 beta A3) + P)) d_z,
// with A0 fixed by beta as in build_nontwisting. The fibre coordinate is
// lambda + beta in terms of the tetrad of build_nontwisting.
LaxPair normalized_lax_pair_nontwisting(const Expr& a1, const Expr& a2, const Expr& a3, const Expr& beta,
                                        const Expr& p, const Expr& q);

// Twisting family:
//   L0 = G_zz d_t + (lambda - z) d_z,
//   L1 = d_x + lambda d_y + F d_lambda + (G_zy - G_z A2 - 2 A3 (z G_z - G) - lambda G_z A3) d_t
//        + (A0 + z A1 + z^2 A2 + z^3 A3) d_z.
// The fibre coordinate is z + G_zz lambda in terms of the tetrad of build_twisting.
LaxPair normalized_lax_pair_twisting(const ProjectiveStructure& proj, const Expr& g);

}  // namespace nullasd
