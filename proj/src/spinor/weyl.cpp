#include "nullasd/spinor.hpp"

namespace nullasd {

namespace {

constexpr int binom4[5] = {1, 4, 6, 4, 1};

int ones(int A, int B, int C, int D) { return A + B + C + D; }

template <class S>
S scaled(const S& v, int num, int den)
{
    return v * S(num) / S(den);
}

T4<Expr> to_t4(const std::vector<Expr>& v)
{
    T4<Expr> r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    r[a][b][c][d] = v[((a * 4 + b) * 4 + c) * 4 + d];
    return r;
}

bool skip(const Expr& e) { return e.is_zero(); }
bool skip(double) { return false; }
bool skip(const mpq_class&) { return false; }

}  // namespace

bool WeylSpinor::is_zero() const
{
    for (auto& p : psi)
        if (!p.is_zero())
            return false;
    return true;
}

template <class S>
std::pair<std::array<S, 5>, std::array<S, 5>> spinors_from_frame(const T4<S>& r)
{
    std::array<S, 5> un, pr;
    for (int k = 0; k < 5; ++k) {
        un[k] = S(0);
        pr[k] = S(0);
    }
    // Unsymmetrized X_ABCD = 1/4 R_{AA'BB'CC'DD'} eps^A'B' eps^C'D', summed over the
    // arrangements with k ones; the symmetrized component is the average.
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
            for (int C = 0; C < 2; ++C)
                for (int D = 0; D < 2; ++D) {
                    int k = ones(A, B, C, D);
                    S u(0), p(0);
                    for (int X = 0; X < 2; ++X)
                        for (int Y = 0; Y < 2; ++Y) {
                            int s = eps(X, 1 - X) * eps(Y, 1 - Y);
                            const S& ru = r[frame_index(A, X)][frame_index(B, 1 - X)][frame_index(C, Y)]
                                           [frame_index(D, 1 - Y)];
                            const S& rp = r[frame_index(X, A)][frame_index(1 - X, B)][frame_index(Y, C)]
                                           [frame_index(1 - Y, D)];
                            if (!skip(ru))
                                u += s > 0 ? ru : S(-ru);
                            if (!skip(rp))
                                p += s > 0 ? rp : S(-rp);
                        }
                    un[k] += u;
                    pr[k] += p;
                }
    for (int k = 0; k < 5; ++k) {
        un[k] = scaled(un[k], 1, 4 * binom4[k]);
        pr[k] = scaled(pr[k], 1, 4 * binom4[k]);
    }
    return {un, pr};
}

template std::pair<std::array<Expr, 5>, std::array<Expr, 5>> spinors_from_frame(const T4<Expr>&);
template std::pair<std::array<double, 5>, std::array<double, 5>> spinors_from_frame(const T4<double>&);
template std::pair<std::array<mpq_class, 5>, std::array<mpq_class, 5>> spinors_from_frame(const T4<mpq_class>&);

WeylPair weyl_spinors(FrameGeometry& fg)
{
    auto [u, p] = spinors_from_frame(to_t4(fg.riemann()));
    WeylPair w;
    w.unprimed.psi = u;
    w.primed.psi = p;
    w.primed.primed = true;
    return w;
}

WeylPair weyl_spinors(const Metric& g, const NullTetrad& t, const SamplingConfig& cfg)
{
    auto chk = check_tetrad(g, t, cfg);
    if (!chk.ok())
        throw GeometryError("tetrad does not reproduce the metric: " + chk.failing);
    FrameGeometry fg(t);
    return weyl_spinors(fg);
}

WeylPair weyl_spinors_from_tensor(const TensorField& r, const NullTetrad& t)
{
    // Contract one slot at a time: out(i,...) = sum_mu e_i^mu in(mu,...).
    std::vector<Expr> cur(r.data()), next(256);
    for (int slot = 0; slot < 4; ++slot) {
        int stride = 1;
        for (int s = slot + 1; s < 4; ++s)
            stride *= 4;
        for (std::size_t idx = 0; idx < 256; ++idx) {
            int i = static_cast<int>(idx / stride) % 4;
            std::size_t base = idx - static_cast<std::size_t>(i) * stride;
            Expr v;
            for (int mu = 0; mu < 4; ++mu) {
                const Expr& c = t.e(i).c[mu];
                const Expr& x = cur[base + static_cast<std::size_t>(mu) * stride];
                if (!c.is_zero() && !x.is_zero())
                    v += c * x;
            }
            next[idx] = v;
        }
        std::swap(cur, next);
    }
    auto [u, p] = spinors_from_frame(to_t4(cur));
    WeylPair w;
    w.unprimed.psi = u;
    w.primed.psi = p;
    w.primed.primed = true;
    return w;
}

CurvatureSpinors curvature_spinors(FrameGeometry& fg)
{
    CurvatureSpinors cs;
    cs.weyl = weyl_spinors(fg);
    const auto& R = fg.riemann();
    std::array<Expr, 16> ric;
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d) {
            Expr v;
            for (int a = 0; a < 4; ++a)
                for (int c = 0; c < 4; ++c)
                    if (int s = frame_metric(a, c))
                        v += Expr(s) * R[((a * 4 + b) * 4 + c) * 4 + d];
            ric[b * 4 + d] = v;
        }
    Expr scal;
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d)
            if (int s = frame_metric(b, d))
                scal += Expr(s) * ric[b * 4 + d];
    cs.lambda = scal / Expr(24);
    Expr quarter = scal / Expr(4);
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d)
            cs.phi[b * 4 + d] = Expr(Rational(-1, 2)) * (ric[b * 4 + d] - quarter * Expr(frame_metric(b, d)));
    return cs;
}

std::vector<Expr> reassemble_riemann(const CurvatureSpinors& cs)
{
    std::vector<Expr> out(256);
    const auto& C = cs.weyl.unprimed.psi;
    const auto& Ct = cs.weyl.primed.psi;
    auto phi = [&](int A, int B, int Ap, int Bp) -> const Expr& {
        return cs.phi[frame_index(A, Ap) * 4 + frame_index(B, Bp)];
    };
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d) {
                    int A = spinor_part(a), B = spinor_part(b), Cc = spinor_part(c), D = spinor_part(d);
                    int Ap = primed_part(a), Bp = primed_part(b), Cp = primed_part(c), Dp = primed_part(d);
                    Expr v;
                    if (int s = eps(Ap, Bp) * eps(Cp, Dp))
                        v += Expr(s) * C[A + B + Cc + D];
                    if (int s = eps(A, B) * eps(Cc, D))
                        v += Expr(s) * Ct[Ap + Bp + Cp + Dp];
                    if (int s = eps(Ap, Bp) * eps(Cc, D))
                        v += Expr(s) * phi(A, B, Cp, Dp);
                    if (int s = eps(A, B) * eps(Cp, Dp))
                        v += Expr(s) * phi(Cc, D, Ap, Bp);
                    int l = eps(A, Cc) * eps(B, D) * eps(Ap, Cp) * eps(Bp, Dp) -
                            eps(A, D) * eps(B, Cc) * eps(Ap, Dp) * eps(Bp, Cp);
                    if (l)
                        v += Expr(2 * l) * cs.lambda;
                    out[((a * 4 + b) * 4 + c) * 4 + d] = v;
                }
    return out;
}

TwoFormSpinors<Expr> decompose_two_form(const std::array<Expr, 16>& f)
{
    TwoFormSpinors<Expr> s;
    Expr half(Rational(1, 2));
    auto sym_index = [](int X, int Y) { return X + Y; };
    std::array<Expr, 4> phi_raw, psi_raw;  // unsymmetrized, index 2X+Y
    for (int X = 0; X < 2; ++X)
        for (int Y = 0; Y < 2; ++Y) {
            Expr p, q;
            for (int U = 0; U < 2; ++U)
                for (int V = 0; V < 2; ++V)
                    if (int e = eps(U, V)) {
                        p += Expr(e) * f[frame_index(U, X) * 4 + frame_index(V, Y)];
                        q += Expr(e) * f[frame_index(X, U) * 4 + frame_index(Y, V)];
                    }
            phi_raw[2 * X + Y] = half * p;
            psi_raw[2 * X + Y] = half * q;
        }
    for (int X = 0; X < 2; ++X)
        for (int Y = X; Y < 2; ++Y) {
            s.phi[sym_index(X, Y)] = half * (phi_raw[2 * X + Y] + phi_raw[2 * Y + X]);
            s.psi[sym_index(X, Y)] = half * (psi_raw[2 * X + Y] + psi_raw[2 * Y + X]);
        }
    return s;
}

std::array<Expr, 16> assemble_two_form(const TwoFormSpinors<Expr>& s)
{
    std::array<Expr, 16> f;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            int A = spinor_part(a), B = spinor_part(b), Ap = primed_part(a), Bp = primed_part(b);
            Expr v;
            if (int e = eps(A, B))
                v += Expr(e) * s.phi[Ap + Bp];
            if (int e = eps(Ap, Bp))
                v += Expr(e) * s.psi[A + B];
            f[a * 4 + b] = v;
        }
    return f;
}

template <class S>
std::pair<S, S> quartic_invariants(const std::array<S, 5>& p)
{
    S I = S(2) * p[0] * p[4] - S(8) * p[1] * p[3] + S(6) * p[2] * p[2];
    // J = C_AB^CD C_CD^EF C_EF^AB, raising with mu^A = eps^AB mu_B:
    // upper index value 0 reads lower 1 with sign +, upper 1 reads lower 0 with sign -.
    S J(0);
    for (int A = 0; A < 2; ++A)
        for (int B = 0; B < 2; ++B)
            for (int C = 0; C < 2; ++C)
                for (int D = 0; D < 2; ++D)
                    for (int E = 0; E < 2; ++E)
                        for (int F = 0; F < 2; ++F) {
                            // C_AB^CD = C_AB(1-C)(1-D) * sign; sign = (-1)^(C+D)
                            int s = ((C + D) + (E + F) + (A + B)) % 2 ? -1 : 1;
                            S t = p[A + B + (1 - C) + (1 - D)] * p[C + D + (1 - E) + (1 - F)] *
                                  p[E + F + (1 - A) + (1 - B)];
                            J += s > 0 ? t : S(-t);
                        }
    return {I, J};
}

template std::pair<Expr, Expr> quartic_invariants(const std::array<Expr, 5>&);
template std::pair<double, double> quartic_invariants(const std::array<double, 5>&);
template std::pair<mpq_class, mpq_class> quartic_invariants(const std::array<mpq_class, 5>&);

Invariants scalar_invariants(const WeylSpinor& w)
{
    auto [I, J] = quartic_invariants(w.psi);
    return {I, J};
}

namespace {

Expr power(const Expr& b, int n)
{
    Expr r(1);
    for (int i = 0; i < n; ++i)
        r *= b;
    return r;
}

}  // namespace

Expr contract4(const WeylSpinor& w, const SpinorField& iota)
{
    Expr v;
    for (int k = 0; k < 5; ++k) {
        if (w.psi[k].is_zero())
            continue;
        v += Expr(binom4[k]) * power(iota.c[0], 4 - k) * power(iota.c[1], k) * w.psi[k];
    }
    return v;
}

std::array<Expr, 3> contract2(const WeylSpinor& w, const SpinorField& iota)
{
    std::array<Expr, 3> out;
    constexpr int binom2[3] = {1, 2, 1};
    for (int j = 0; j < 3; ++j)
        for (int m = 0; m < 3; ++m)
            if (!w.psi[j + m].is_zero())
                out[j] += Expr(binom2[m]) * power(iota.c[0], 2 - m) * power(iota.c[1], m) * w.psi[j + m];
    return out;
}

ZeroResult principal_direction_check(const WeylSpinor& w, const SpinorField& iota, const SamplingConfig& cfg)
{
    return is_zero(contract4(w, iota), cfg);
}

ZeroResult type_constraint_check(const WeylSpinor& w, const SpinorField& iota, const SamplingConfig& cfg)
{
    auto c = contract2(w, iota);
    return all_zero({c[0], c[1], c[2]}, cfg);
}

}  // namespace nullasd
