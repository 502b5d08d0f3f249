// Two-component spinor calculus for neutral signature: null tetrads, spin
// coefficients, Weyl spinors, Petrov-Penrose classification, conformal
// Killing data and the Szekeres obstruction.
//
// Frame indices are packed as a = 2A + A' (00' = 0, 01' = 1, 10' = 2, 11' = 3).
// eps_01 = eps_0'1' = 1, eps^01 = 1; mu_A = mu^B eps_BA and mu^A = eps^AB mu_B.
#pragma once

#include "nullasd/local.hpp"
#include "nullasd/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nullasd {

constexpr int frame_index(int A, int Ap) { return 2 * A + Ap; }
constexpr int spinor_part(int a) { return a >> 1; }
constexpr int primed_part(int a) { return a & 1; }

// eps_AB (and eps_A'B'); eps^AB has the same entries.
constexpr int eps(int A, int B) { return A == B ? 0 : (A < B ? 1 : -1); }
// Frame metric eta_ab = eps_AB eps_A'B'.
constexpr int frame_metric(int a, int b)
{
    return eps(spinor_part(a), spinor_part(b)) * eps(primed_part(a), primed_part(b));
}

class NullTetrad {
public:
    NullTetrad() = default;
    // Forms in the order theta^00', theta^01', theta^10', theta^11'. With
    // sigma = -1 the roles of 01' and 10' are exchanged, which swaps the
    // primed and unprimed spin bundles. Throws GeometryError when the forms
    // are linearly dependent.
    explicit NullTetrad(std::array<OneForm, 4> theta, int sigma = 1);

    const Chart& chart() const { return theta_[0].chart; }
    int sigma() const { return sigma_; }
    const OneForm& theta(int a) const { return theta_[a]; }
    const VectorField& e(int a) const { return e_[a]; }
    const std::array<OneForm, 4>& forms() const { return theta_; }

    Metric metric() const;  // eps_AB eps_A'B' theta^AA' (x) theta^BB'
    Expr volume() const;    // det of theta components in chart order

    // Frame components V^a = theta^a(V).
    std::array<Expr, 4> components(const VectorField& v) const;

private:
    std::array<OneForm, 4> theta_{};
    std::array<VectorField, 4> e_{};
    int sigma_ = 1;
};

// Chooses sigma so the tetrad volume is positive at a regular sample point.
NullTetrad oriented_tetrad(std::array<OneForm, 4> theta, const SamplingConfig& cfg = {});

struct TetradCheck {
    ZeroResult reconstruction;
    ZeroResult duality;
    std::string failing;
    bool ok() const { return reconstruction.is_zero() && duality.is_zero(); }
};

TetradCheck check_tetrad(const Metric& g, const NullTetrad& t, const SamplingConfig& cfg = {});

// Connection and curvature of the Levi-Civita connection in the tetrad.
class FrameGeometry {
public:
    explicit FrameGeometry(NullTetrad t);

    const NullTetrad& tetrad() const { return t_; }
    Expr apply(int a, const Expr& f) const { return t_.e(a).apply(f); }

    // [e_a, e_b] = C(a,b,c) e_c
    const Expr& structure(int a, int b, int c) const { return comm_[(a * 4 + b) * 4 + c]; }
    // nabla_{e_a} e_b = omega(a,b,c) e_c
    const Expr& omega(int a, int b, int c) const { return om_[(a * 4 + b) * 4 + c]; }
    // Gamma_{d C}^E and Gamma_{d C'}^E'.
    const Expr& spin_unprimed(int d, int C, int E) const { return gu_[(d * 2 + C) * 2 + E]; }
    const Expr& spin_primed(int d, int Cp, int Ep) const { return gp_[(d * 2 + Cp) * 2 + Ep]; }

    // R_abcd with R(e_c, e_d) e_b = R^a_bcd e_a, frame indices lowered with eta.
    const std::vector<Expr>& riemann();
    const Expr& riemann(int a, int b, int c, int d) { return riemann()[((a * 4 + b) * 4 + c) * 4 + d]; }

private:
    NullTetrad t_;
    std::array<Expr, 64> comm_{}, om_{};
    std::array<Expr, 16> gu_{}, gp_{};
    std::optional<std::vector<Expr>> riem_;
};

// Psi_k is the component with k indices equal to 1.
struct WeylSpinor {
    std::array<Expr, 5> psi{};
    bool primed = false;
    bool is_zero() const;
};

struct WeylPair {
    WeylSpinor unprimed, primed;
};

WeylPair weyl_spinors(FrameGeometry& fg);
// Validates the tetrad against g first; throws GeometryError with the failing
// component otherwise.
WeylPair weyl_spinors(const Metric& g, const NullTetrad& t, const SamplingConfig& cfg = {});
// Projects a covariant coordinate curvature tensor (Riemann or Weyl) onto the tetrad.
WeylPair weyl_spinors_from_tensor(const TensorField& r, const NullTetrad& t);

// Symmetrized extraction from frame components R[a][b][c][d].
template <class S>
std::pair<std::array<S, 5>, std::array<S, 5>> spinors_from_frame(const T4<S>& r);

// Ricci spinor Phi_{AB A'B'} stored as frame tensor Phi_ab, and Lambda = R/24.
struct CurvatureSpinors {
    WeylPair weyl;
    std::array<Expr, 16> phi{};
    Expr lambda;
};

CurvatureSpinors curvature_spinors(FrameGeometry& fg);
// Frame components of R_abcd rebuilt from the spinor parts.
std::vector<Expr> reassemble_riemann(const CurvatureSpinors& cs);

// Two-form F_ab = phi_A'B' eps_AB + psi_AB eps_A'B'; symmetric spinors stored
// as (00, 01, 11).
template <class S>
struct TwoFormSpinors {
    std::array<S, 3> phi{}, psi{};
};
TwoFormSpinors<Expr> decompose_two_form(const std::array<Expr, 16>& f);
std::array<Expr, 16> assemble_two_form(const TwoFormSpinors<Expr>& s);

// Classification --------------------------------------------------------

enum class PetrovType { I, II, D, III, N, O };
const char* petrov_name(PetrovType t);

struct RootStructure {
    std::vector<int> real;           // multiplicities of real roots, infinity included
    std::vector<int> complex_pairs;  // multiplicity of each conjugate pair
};

struct PetrovResult {
    PetrovType type = PetrovType::O;
    std::vector<int> partition;  // complex multiplicities, descending
    RootStructure roots;
    bool exact = false;
};

PetrovResult classify_quartic(const std::array<Rational, 5>& psi);
PetrovResult classify_quartic(const std::array<double, 5>& psi, double tol = 1e-8);
PetrovResult petrov_classify(const WeylSpinor& w, const Assignment& at);

struct SampledPetrov {
    Assignment at;
    PetrovResult petrov;
};
// Classifies w at cfg.count sample points where every guard (typically the
// metric components and determinant) evaluates regularly.
std::vector<SampledPetrov> petrov_at_samples(const WeylSpinor& w, const std::vector<Expr>& guards,
                                             const SamplingConfig& cfg = {});

struct Invariants {
    Expr I, J;
};
Invariants scalar_invariants(const WeylSpinor& w);
template <class S>
std::pair<S, S> quartic_invariants(const std::array<S, 5>& psi);

// Conformal Killing data ------------------------------------------------

struct KillingSpinorData {
    std::array<Expr, 3> phi{};  // phi_{0'0'}, phi_{0'1'}, phi_{1'1'}
    std::array<Expr, 3> psi{};  // psi_00, psi_01, psi_11
    Expr eta;
    std::array<Expr, 16> nabla_k{};  // frame nabla_a K_b
};

// A failed precondition verdict, carrying its witness.
struct VerdictError : GeometryError {
    VerdictError(const std::string& msg, ZeroResult r) : GeometryError(msg), result(std::move(r)) {}
    ZeroResult result;
};

// Residual of L_K g - eta g with eta = (1/2) div K, coordinate components.
TensorField conformal_killing_residual(const Metric& g, const VectorField& k);
KillingSpinorData killing_decompose(FrameGeometry& fg, const VectorField& k, const SamplingConfig& cfg = {});

struct SpinorField {
    std::array<Expr, 2> c{};
    bool primed = false;
};

struct NullFactorization {
    SpinorField iota, o;
};
NullFactorization null_killing_factorize(const Metric& g, const NullTetrad& t, const VectorField& k,
                                         const SamplingConfig& cfg = {});

struct NamedVerdict {
    std::string name;
    ZeroResult result;
};

std::vector<NamedVerdict> check_lemma_identities(FrameGeometry& fg, const VectorField& k,
                                                 const SamplingConfig& cfg = {});

// iota^A iota^B iota^C iota^D C_ABCD, and the three components of iota^C iota^D C_ABCD.
Expr contract4(const WeylSpinor& w, const SpinorField& iota);
std::array<Expr, 3> contract2(const WeylSpinor& w, const SpinorField& iota);
ZeroResult principal_direction_check(const WeylSpinor& w, const SpinorField& iota, const SamplingConfig& cfg = {});
ZeroResult type_constraint_check(const WeylSpinor& w, const SpinorField& iota, const SamplingConfig& cfg = {});

// Pointwise helpers ------------------------------------------------------

// Frame e[a][mu] at a point for a numeric metric, eta-normalized, positively oriented.
T2<double> numeric_frame(const T2<double>& g);

// Weyl spinors at a point without a symbolic tetrad. Components below
// 1e-9 max(1, max |R_abcd|) in the frame are rounding noise and are set to 0.
std::pair<std::array<double, 5>, std::array<double, 5>> weyl_spinors_at(const MetricJet& jet, const Assignment& at);

// Szekeres obstruction ----------------------------------------------------
//
// If a Ricci-flat metric exists in the conformal class then
// D_abc = g^de nabla_e C_abcd equals C_abcd K^d for a gradient K. Two
// pointwise consequences are tested:
//  - the algebraic identity
//    O_pqrsabc = 1/2 C_pqfh C_rs^fh D_abc + C_abcd (C_pq^df D_rsf + C_rs^df D_pqf) = 0,
//    valid when the Weyl tensor has a single chirality, where
//    C_pq^df C_rsfe + C_rs^df C_pqfe = -1/2 C_pqfh C_rs^fh delta^d_e;
//  - closure: when K -> C_abcd K^d has rank 4 (types I, II, D, III), K is
//    unique and its lowered form must satisfy d_a K_b - d_b K_a = 0.

template <class S>
struct SzekeresValues {
    std::vector<S> o;  // 4^7 entries, index ((((((p*4+q)*4+r)*4+s)*4+a)*4+b)*4+c)
    double scale = 0;  // magnitude reference for relative tests
};

template <class S>
SzekeresValues<S> szekeres_at(const JetValues<S>& jet);

template <class S>
struct GradientClosure {
    bool determined = false;   // C_abcd K^d has rank 4 at the point
    std::array<S, 4> k{};      // K_a, lowered
    std::array<S, 6> curl{};   // d_a K_b - d_b K_a for a < b, lexicographic
    double scale = 0;          // max |d_a K_b|
};

// Needs a fourth-order jet (MetricJet(g, 4)).
template <class S>
GradientClosure<S> gradient_closure_at(const JetValues<S>& jet);

struct SzekeresReport {
    bool applicable = false;        // some sample point has type I, II, D or III
    ZeroResult algebraic;           // the tensor identity O = 0
    ZeroResult closure;             // d K = 0
    ZeroResult result;              // joint verdict
    std::vector<PetrovType> types;  // type at each sampled point
    std::string failing;            // component label of the witness
};

SzekeresReport szekeres_obstruction(const Metric& g, const SamplingConfig& cfg = {});

}  // namespace nullasd
