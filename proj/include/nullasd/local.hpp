// Pointwise curvature engine. Works over any field-like scalar: mpq_class
// for exact points, double otherwise, and Dual<T> when first derivatives of
// the curvature are needed.
#pragma once

#include "nullasd/tensor.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace nullasd {

template <class T>
struct Dual {
    T v{};
    std::array<T, 4> d{};

    Dual() : v(0), d{T(0), T(0), T(0), T(0)} {}
    Dual(int x) : v(x), d{T(0), T(0), T(0), T(0)} {}
    Dual(const T& x) : v(x), d{T(0), T(0), T(0), T(0)} {}
    Dual(const T& x, const std::array<T, 4>& dx) : v(x), d(dx) {}

    Dual& operator+=(const Dual& o)
    {
        v += o.v;
        for (int i = 0; i < 4; ++i)
            d[i] += o.d[i];
        return *this;
    }
    Dual& operator-=(const Dual& o)
    {
        v -= o.v;
        for (int i = 0; i < 4; ++i)
            d[i] -= o.d[i];
        return *this;
    }
    Dual& operator*=(const Dual& o)
    {
        for (int i = 0; i < 4; ++i)
            d[i] = d[i] * o.v + v * o.d[i];
        v *= o.v;
        return *this;
    }
    Dual& operator/=(const Dual& o)
    {
        T inv = T(1) / o.v;
        for (int i = 0; i < 4; ++i)
            d[i] = (d[i] * o.v - v * o.d[i]) * inv * inv;
        v *= inv;
        return *this;
    }
    Dual operator-() const
    {
        Dual r(*this);
        r.v = -r.v;
        for (auto& x : r.d)
            x = -x;
        return r;
    }
};

template <class T> Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T> Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T> Dual<T> operator*(Dual<T> a, const Dual<T>& b) { return a *= b; }
template <class T> Dual<T> operator/(Dual<T> a, const Dual<T>& b) { return a /= b; }

inline double magnitude(double x) { return std::fabs(x); }
inline double magnitude(const mpq_class& x) { return std::fabs(x.get_d()); }
template <class T> double magnitude(const Dual<T>& x) { return magnitude(x.v); }

// nonzero: some part (value or derivative) is nonzero, so the term cannot be
// skipped. value_nonzero: the value itself is nonzero, usable as a pivot.
inline bool nonzero(double x) { return x != 0.0; }
inline bool nonzero(const mpq_class& x) { return sgn(x) != 0; }
template <class T> bool nonzero(const Dual<T>& x)
{
    if (nonzero(x.v))
        return true;
    for (const auto& e : x.d)
        if (nonzero(e))
            return true;
    return false;
}
inline bool value_nonzero(double x) { return x != 0.0; }
inline bool value_nonzero(const mpq_class& x) { return sgn(x) != 0; }
template <class T> bool value_nonzero(const Dual<T>& x) { return value_nonzero(x.v); }

template <class S> S from_number(const Number& n);
template <> inline double from_number<double>(const Number& n) { return n.to_double(); }
template <> inline mpq_class from_number<mpq_class>(const Number& n)
{
    if (!n.exact())
        throw GeometryError("floating value in an exact pointwise computation");
    return n.q();
}

template <class S> using T1 = std::array<S, 4>;
template <class S> using T2 = std::array<T1<S>, 4>;
template <class S> using T3 = std::array<T2<S>, 4>;
template <class S> using T4 = std::array<T3<S>, 4>;

template <class S> T2<S> zero2()
{
    T2<S> z;
    for (auto& r : z)
        r.fill(S(0));
    return z;
}
template <class S> T3<S> zero3()
{
    T3<S> z;
    for (auto& r : z)
        r = zero2<S>();
    return z;
}
template <class S> T4<S> zero4()
{
    T4<S> z;
    for (auto& r : z)
        r = zero3<S>();
    return z;
}

// Gauss-Jordan inverse with largest-magnitude pivoting.
template <class S>
T2<S> invert(const T2<S>& m)
{
    T2<S> a = m, inv = zero2<S>();
    for (int i = 0; i < 4; ++i)
        inv[i][i] = S(1);
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        double best = -1;
        for (int r = col; r < 4; ++r)
            if (value_nonzero(a[r][col]) && magnitude(a[r][col]) > best) {
                best = magnitude(a[r][col]);
                piv = r;
            }
        if (piv < 0)
            throw GeometryError("singular matrix at evaluation point");
        std::swap(a[col], a[piv]);
        std::swap(inv[col], inv[piv]);
        S p = a[col][col];
        for (int j = 0; j < 4; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (int r = 0; r < 4; ++r) {
            if (r == col || !nonzero(a[r][col]))
                continue;
            S f = a[r][col];
            for (int j = 0; j < 4; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

template <class S>
struct LocalCurvature {
    T2<S> g, gi;
    T3<S> gam;  // Gamma^a_bc
    T4<S> R;    // R_abcd
    T2<S> ric;  // R_bd = R^a_bad
    S scal{};
    T4<S> C;    // C_abcd
};

// dg[c][a][b] = d_c g_ab, d2g[c][d][a][b] = d_c d_d g_ab.
template <class S>
LocalCurvature<S> local_curvature(const T2<S>& g, const T3<S>& dg, const T4<S>& d2g)
{
    LocalCurvature<S> L;
    L.g = g;
    L.gi = invert(g);
    const auto& gi = L.gi;
    S half = S(1) / S(2);
    T3<S> first = zero3<S>();  // [c][a][b]
    for (int c = 0; c < 4; ++c)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                first[c][a][b] = (dg[a][b][c] + dg[b][a][c] - dg[c][a][b]) * half;
    L.gam = zero3<S>();
    for (int d = 0; d < 4; ++d)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    L.gam[d][a][b] += gi[d][c] * first[c][a][b];
    // d_e g^dc = -g^dp d_e g_pq g^qc
    T3<S> dgi = zero3<S>();
    for (int e = 0; e < 4; ++e) {
        T2<S> tmp = zero2<S>();
        for (int p = 0; p < 4; ++p)
            for (int c = 0; c < 4; ++c)
                for (int q = 0; q < 4; ++q)
                    tmp[p][c] += dg[e][p][q] * gi[q][c];
        for (int d = 0; d < 4; ++d)
            for (int c = 0; c < 4; ++c)
                for (int p = 0; p < 4; ++p)
                    dgi[e][d][c] -= gi[d][p] * tmp[p][c];
    }
    // dgam[e][d][a][b] = d_e Gamma^d_ab
    T4<S> dgam = zero4<S>();
    for (int e = 0; e < 4; ++e)
        for (int c = 0; c < 4; ++c)
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) {
                    S dfirst = (d2g[e][a][b][c] + d2g[e][b][a][c] - d2g[e][c][a][b]) * half;
                    for (int d = 0; d < 4; ++d)
                        dgam[e][d][a][b] += dgi[e][d][c] * first[c][a][b] + gi[d][c] * dfirst;
                }
    // R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb
    T4<S> Rup = zero4<S>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = c + 1; d < 4; ++d) {
                    S v = dgam[c][a][d][b] - dgam[d][a][c][b];
                    for (int e = 0; e < 4; ++e)
                        v += L.gam[a][c][e] * L.gam[e][d][b] - L.gam[a][d][e] * L.gam[e][c][b];
                    Rup[a][b][c][d] = v;
                    Rup[a][b][d][c] = -v;
                }
    L.R = zero4<S>();
    for (int a = 0; a < 4; ++a)
        for (int e = 0; e < 4; ++e) {
            if (!nonzero(g[a][e]))
                continue;
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d)
                        L.R[a][b][c][d] += g[a][e] * Rup[e][b][c][d];
        }
    L.ric = zero2<S>();
    for (int b = 0; b < 4; ++b)
        for (int d = 0; d < 4; ++d)
            for (int a = 0; a < 4; ++a)
                L.ric[b][d] += Rup[a][b][a][d];
    L.scal = S(0);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            L.scal += gi[a][b] * L.ric[a][b];
    S sixth = L.scal / S(6);
    L.C = zero4<S>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    L.C[a][b][c][d] = L.R[a][b][c][d] -
                                      half * (g[a][c] * L.ric[b][d] - g[a][d] * L.ric[b][c] -
                                              g[b][c] * L.ric[a][d] + g[b][d] * L.ric[a][c]) +
                                      sixth * (g[a][c] * g[b][d] - g[a][d] * g[b][c]);
    return L;
}

// Contract every slot of a covariant rank-4 array with frame vectors:
// out[i][j][k][l] = T(e_i, e_j, e_k, e_l), e[i][mu] = component mu of e_i.
template <class S>
T4<S> project4(const T4<S>& t, const T2<S>& e)
{
    T4<S> a = zero4<S>(), b = zero4<S>();
    for (int i = 0; i < 4; ++i)
        for (int m = 0; m < 4; ++m)
            if (nonzero(e[i][m]))
                for (int q = 0; q < 4; ++q)
                    for (int r = 0; r < 4; ++r)
                        for (int s = 0; s < 4; ++s)
                            a[i][q][r][s] += e[i][m] * t[m][q][r][s];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int m = 0; m < 4; ++m)
                if (nonzero(e[j][m]))
                    for (int r = 0; r < 4; ++r)
                        for (int s = 0; s < 4; ++s)
                            b[i][j][r][s] += e[j][m] * a[i][m][r][s];
    a = zero4<S>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int m = 0; m < 4; ++m)
                    if (nonzero(e[k][m]))
                        for (int s = 0; s < 4; ++s)
                            a[i][j][k][s] += e[k][m] * b[i][j][m][s];
    b = zero4<S>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l)
                    for (int m = 0; m < 4; ++m)
                        if (nonzero(e[l][m]))
                            b[i][j][k][l] += e[l][m] * a[i][j][k][m];
    return b;
}

// Evaluates the jet of a metric at a point into scalar arrays.
template <class S>
struct JetValues {
    T2<S> g;
    T3<S> dg;
    T4<S> d2g;
    std::array<T4<S>, 4> d3g;  // d3g[e][c][d][a][b] = d_e d_c d_d g_ab
    std::vector<T4<S>> d4g;    // d4g[f * 4 + e][c][d][a][b], filled for fourth-order jets
};

template <class S>
JetValues<S> evaluate_jet(const MetricJet& jet, PointEvaluator& pe)
{
    JetValues<S> v;
    v.g = zero2<S>();
    v.dg = zero3<S>();
    v.d2g = zero4<S>();
    for (auto& t : v.d3g)
        t = zero4<S>();
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            v.g[a][b] = v.g[b][a] = from_number<S>(pe.eval(jet.g(a, b)));
            if (jet.order() < 1)
                continue;
            for (int c = 0; c < 4; ++c) {
                v.dg[c][a][b] = v.dg[c][b][a] = from_number<S>(pe.eval(jet.dg(c, a, b)));
                if (jet.order() < 2)
                    continue;
                for (int d = c; d < 4; ++d) {
                    S x = from_number<S>(pe.eval(jet.d2g(c, d, a, b)));
                    v.d2g[c][d][a][b] = v.d2g[c][d][b][a] = v.d2g[d][c][a][b] = v.d2g[d][c][b][a] = x;
                    if (jet.order() < 3)
                        continue;
                    for (int e = d; e < 4; ++e) {
                        S y = from_number<S>(pe.eval(jet.d3g(c, d, e, a, b)));
                        int idx[3] = {c, d, e};
                        for (int p = 0; p < 3; ++p)
                            for (int q = 0; q < 3; ++q)
                                for (int r = 0; r < 3; ++r)
                                    if (p != q && q != r && p != r) {
                                        v.d3g[idx[p]][idx[q]][idx[r]][a][b] = y;
                                        v.d3g[idx[p]][idx[q]][idx[r]][b][a] = y;
                                    }
                    }
                }
            }
        }
    if (jet.order() >= 4) {
        v.d4g.assign(16, zero4<S>());
        for (int f = 0; f < 4; ++f)
            for (int e = f; e < 4; ++e)
                for (int c = e; c < 4; ++c)
                    for (int d = c; d < 4; ++d)
                        for (int a = 0; a < 4; ++a)
                            for (int b = a; b < 4; ++b) {
                                S y = from_number<S>(pe.eval(jet.d4g(f, e, c, d, a, b)));
                                std::array<int, 4> idx{f, e, c, d};
                                do {
                                    v.d4g[idx[0] * 4 + idx[1]][idx[2]][idx[3]][a][b] = y;
                                    v.d4g[idx[0] * 4 + idx[1]][idx[2]][idx[3]][b][a] = y;
                                } while (std::next_permutation(idx.begin(), idx.end()));
                            }
    }
    return v;
}

// Promotes a fourth-order jet to a third-order jet of duals carrying one
// more coordinate derivative.
template <class T>
JetValues<Dual<T>> lift_jet(const JetValues<T>& j)
{
    using D = Dual<T>;
    if (j.d4g.size() != 16)
        throw GeometryError("lift_jet needs a fourth-order jet");
    JetValues<D> v;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            v.g[a][b] = D(j.g[a][b], {j.dg[0][a][b], j.dg[1][a][b], j.dg[2][a][b], j.dg[3][a][b]});
            for (int c = 0; c < 4; ++c) {
                v.dg[c][a][b] = D(j.dg[c][a][b], {j.d2g[0][c][a][b], j.d2g[1][c][a][b], j.d2g[2][c][a][b],
                                                  j.d2g[3][c][a][b]});
                for (int d = 0; d < 4; ++d) {
                    v.d2g[c][d][a][b] = D(j.d2g[c][d][a][b], {j.d3g[0][c][d][a][b], j.d3g[1][c][d][a][b],
                                                              j.d3g[2][c][d][a][b], j.d3g[3][c][d][a][b]});
                    for (int e = 0; e < 4; ++e)
                        v.d3g[e][c][d][a][b] =
                            D(j.d3g[e][c][d][a][b], {j.d4g[0 * 4 + e][c][d][a][b], j.d4g[1 * 4 + e][c][d][a][b],
                                                     j.d4g[2 * 4 + e][c][d][a][b], j.d4g[3 * 4 + e][c][d][a][b]});
                }
            }
        }
    return v;
}

// Curvature with first derivatives: each entry of the result carries its
// coordinate gradient. Requires a third-order jet.
template <class T>
LocalCurvature<Dual<T>> local_curvature_with_gradient(const JetValues<T>& j)
{
    using D = Dual<T>;
    T2<D> g;
    T3<D> dg;
    T4<D> d2g;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            g[a][b] = D(j.g[a][b], {j.dg[0][a][b], j.dg[1][a][b], j.dg[2][a][b], j.dg[3][a][b]});
            for (int c = 0; c < 4; ++c) {
                dg[c][a][b] = D(j.dg[c][a][b], {j.d2g[0][c][a][b], j.d2g[1][c][a][b], j.d2g[2][c][a][b],
                                                j.d2g[3][c][a][b]});
                for (int d = 0; d < 4; ++d)
                    d2g[c][d][a][b] = D(j.d2g[c][d][a][b], {j.d3g[0][c][d][a][b], j.d3g[1][c][d][a][b],
                                                            j.d3g[2][c][d][a][b], j.d3g[3][c][d][a][b]});
            }
        }
    return local_curvature(g, dg, d2g);
}

}  // namespace nullasd
