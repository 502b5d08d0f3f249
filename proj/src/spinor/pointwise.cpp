#include "nullasd/spinor.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace nullasd {

T2<double> numeric_frame(const T2<double>& g)
{
    Eigen::Matrix4d m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            m(a, b) = g[a][b];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m);
    if (es.info() != Eigen::Success)
        throw GeometryError("eigen decomposition of the metric failed");
    std::vector<Eigen::Vector4d> pos, neg;
    double big = es.eigenvalues().cwiseAbs().maxCoeff();
    for (int i = 0; i < 4; ++i) {
        double ev = es.eigenvalues()[i];
        if (std::fabs(ev) <= 1e-13 * big)
            throw GeometryError("degenerate metric at evaluation point");
        Eigen::Vector4d v = es.eigenvectors().col(i) / std::sqrt(std::fabs(ev));
        (ev > 0 ? pos : neg).push_back(v);
    }
    if (pos.size() != 2 || neg.size() != 2)
        throw GeometryError("metric is not of neutral signature at evaluation point");
    const double r = 1.0 / std::sqrt(2.0);
    std::array<Eigen::Vector4d, 4> e{
        (pos[0] + neg[0]) * r,
        (pos[1] + neg[1]) * r,
        -(pos[1] - neg[1]) * r,
        (pos[0] - neg[0]) * r,
    };
    Eigen::Matrix4d em;
    for (int a = 0; a < 4; ++a)
        em.row(a) = e[a].transpose();
    if (em.determinant() < 0)
        std::swap(e[1], e[2]);
    T2<double> out;
    for (int a = 0; a < 4; ++a)
        for (int mu = 0; mu < 4; ++mu)
            out[a][mu] = e[a][mu];
    return out;
}

std::pair<std::array<double, 5>, std::array<double, 5>> weyl_spinors_at(const MetricJet& jet, const Assignment& at)
{
    PointEvaluator pe(at);
    auto j = evaluate_jet<double>(jet, pe);
    auto L = local_curvature(j.g, j.dg, j.d2g);
    auto e = numeric_frame(j.g);
    auto rf = project4(L.R, e);
    double big = 1;
    for (auto& x : rf)
        for (auto& y : x)
            for (auto& z : y)
                for (double w : z)
                    big = std::max(big, std::fabs(w));
    auto out = spinors_from_frame(rf);
    for (auto* p : {&out.first, &out.second})
        for (double& v : *p)
            if (std::fabs(v) <= 1e-9 * big)
                v = 0;
    return out;
}

namespace {

template <class S>
struct WeylDivergence {
    T2<S> g, gi;
    T4<S> C;
    T3<S> D;  // g^de nabla_e C_abcd
};

template <class S>
WeylDivergence<S> weyl_divergence(const JetValues<S>& jet)
{
    auto L = local_curvature_with_gradient(jet);
    WeylDivergence<S> w;
    T3<S> gam;
    w.C = zero4<S>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            w.g[a][b] = L.g[a][b].v;
            w.gi[a][b] = L.gi[a][b].v;
            for (int c = 0; c < 4; ++c) {
                gam[a][b][c] = L.gam[a][b][c].v;
                for (int d = 0; d < 4; ++d)
                    w.C[a][b][c][d] = L.C[a][b][c][d].v;
            }
        }
    const auto& C = w.C;
    const auto& gi = w.gi;
    w.D = zero3<S>();
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    for (int e = 0; e < 4; ++e) {
                        if (!nonzero(gi[d][e]))
                            continue;
                        // nabla_e C_abcd
                        S v = L.C[a][b][c][d].d[e];
                        for (int f = 0; f < 4; ++f) {
                            if (nonzero(gam[f][e][a]))
                                v -= gam[f][e][a] * C[f][b][c][d];
                            if (nonzero(gam[f][e][b]))
                                v -= gam[f][e][b] * C[a][f][c][d];
                            if (nonzero(gam[f][e][c]))
                                v -= gam[f][e][c] * C[a][b][f][d];
                            if (nonzero(gam[f][e][d]))
                                v -= gam[f][e][d] * C[a][b][c][f];
                        }
                        w.D[a][b][c] += gi[d][e] * v;
                    }
    return w;
}

}  // namespace

template <class S>
SzekeresValues<S> szekeres_at(const JetValues<S>& jet)
{
    auto wd = weyl_divergence(jet);
    const auto& C = wd.C;
    const auto& D = wd.D;
    const auto& gi = wd.gi;
    // C_pq^df
    T4<S> Cu = zero4<S>(), tmp = zero4<S>();
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int d = 0; d < 4; ++d)
                for (int f = 0; f < 4; ++f)
                    for (int x = 0; x < 4; ++x)
                        if (nonzero(gi[d][x]))
                            tmp[p][q][d][f] += gi[d][x] * C[p][q][x][f];
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int d = 0; d < 4; ++d)
                for (int f = 0; f < 4; ++f)
                    for (int x = 0; x < 4; ++x)
                        if (nonzero(gi[f][x]))
                            Cu[p][q][d][f] += gi[f][x] * tmp[p][q][d][x];
    // W_pqrs = C_pqfh C_rs^fh; Y_pqrs^d = C_pq^df D_rsf + C_rs^df D_pqf.
    T4<S> W = zero4<S>();
    std::array<T4<S>, 4> Y;
    for (auto& y : Y)
        y = zero4<S>();
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    for (int f = 0; f < 4; ++f)
                        for (int h = 0; h < 4; ++h)
                            W[p][q][r][s] += C[p][q][f][h] * Cu[r][s][f][h];
                    for (int d = 0; d < 4; ++d) {
                        S v(0);
                        for (int f = 0; f < 4; ++f)
                            v += Cu[p][q][d][f] * D[r][s][f] + Cu[r][s][d][f] * D[p][q][f];
                        Y[d][p][q][r][s] = v;
                    }
                }
    SzekeresValues<S> out;
    out.o.assign(1u << 14, S(0));
    S half = S(1) / S(2);
    double mw = 0, md = 0, mc = 0, my = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s) {
                    mw = std::max(mw, magnitude(W[p][q][r][s]));
                    mc = std::max(mc, magnitude(C[p][q][r][s]));
                    for (int d = 0; d < 4; ++d)
                        my = std::max(my, magnitude(Y[d][p][q][r][s]));
                }
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                md = std::max(md, magnitude(D[a][b][c]));
    out.scale = mw * md + 4 * mc * my;
    std::size_t i = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
            for (int r = 0; r < 4; ++r)
                for (int s = 0; s < 4; ++s)
                    for (int a = 0; a < 4; ++a)
                        for (int b = 0; b < 4; ++b)
                            for (int c = 0; c < 4; ++c, ++i) {
                                S v = half * W[p][q][r][s] * D[a][b][c];
                                for (int d = 0; d < 4; ++d)
                                    if (nonzero(C[a][b][c][d]))
                                        v += C[a][b][c][d] * Y[d][p][q][r][s];
                                out.o[i] = v;
                            }
    return out;
}

template SzekeresValues<double> szekeres_at(const JetValues<double>&);
template SzekeresValues<mpq_class> szekeres_at(const JetValues<mpq_class>&);

template <class S>
GradientClosure<S> gradient_closure_at(const JetValues<S>& jet)
{
    using D = Dual<S>;
    auto wd = weyl_divergence(lift_jet(jet));
    // Rows of C_abcd K^d = D_abc, reduced by elimination with pivots chosen on values.
    std::vector<std::array<D, 5>> rows;
    double cmax = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                std::array<D, 5> r;
                for (int d = 0; d < 4; ++d) {
                    r[d] = wd.C[a][b][c][d];
                    cmax = std::max(cmax, magnitude(r[d]));
                }
                r[4] = wd.D[a][b][c];
                rows.push_back(r);
            }
    GradientClosure<S> out;
    if (cmax == 0)
        return out;
    std::array<int, 4> piv{};
    std::size_t top = 0;
    for (int col = 0; col < 4; ++col) {
        std::size_t best = top;
        for (std::size_t i = top; i < rows.size(); ++i)
            if (magnitude(rows[i][col]) > magnitude(rows[best][col]))
                best = i;
        if (best >= rows.size() || !value_nonzero(rows[best][col].v) ||
            magnitude(rows[best][col]) <= 1e-9 * cmax)
            return out;
        std::swap(rows[top], rows[best]);
        for (std::size_t i = top + 1; i < rows.size(); ++i) {
            if (!nonzero(rows[i][col]))
                continue;
            D f = rows[i][col] / rows[top][col];
            for (int j = col; j < 5; ++j)
                rows[i][j] -= f * rows[top][j];
        }
        piv[col] = static_cast<int>(top);
        ++top;
    }
    std::array<D, 4> k;
    for (int col = 3; col >= 0; --col) {
        D v = rows[piv[col]][4];
        for (int j = col + 1; j < 4; ++j)
            v -= rows[piv[col]][j] * k[j];
        k[col] = v / rows[piv[col]][col];
    }
    std::array<D, 4> kl;
    for (int a = 0; a < 4; ++a) {
        D v(0);
        for (int b = 0; b < 4; ++b)
            v += wd.g[a][b] * k[b];
        kl[a] = v;
    }
    out.determined = true;
    for (int a = 0; a < 4; ++a) {
        out.k[a] = kl[a].v;
        for (int b = 0; b < 4; ++b)
            out.scale = std::max(out.scale, magnitude(kl[b].d[a]));
    }
    int i = 0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            out.curl[i++] = kl[b].d[a] - kl[a].d[b];
    return out;
}

template GradientClosure<double> gradient_closure_at(const JetValues<double>&);
template GradientClosure<mpq_class> gradient_closure_at(const JetValues<mpq_class>&);

namespace {

std::string szekeres_label(std::size_t i)
{
    std::string s = "]";
    for (int k = 0; k < 7; ++k) {
        s = std::to_string(i % 4) + (k ? "," : "") + s;
        i /= 4;
    }
    return "O[" + s;
}

std::string curl_label(int i)
{
    static const char* pairs[6] = {"0,1", "0,2", "0,3", "1,2", "1,3", "2,3"};
    return std::string("dK[") + pairs[i] + "]";
}

std::set<std::string> metric_symbols(const Metric& g)
{
    std::set<std::string> names(g.chart().begin(), g.chart().end());
    for (auto& e : g.components())
        for (auto& s : e.free_symbols())
            names.insert(s);
    return names;
}

bool is_nonzero(const mpq_class& v, double) { return sgn(v) != 0; }
bool is_nonzero(double v, double bound) { return std::fabs(v) > bound; }

template <class S>
void check_point(const MetricJet& jet, PointEvaluator& pe, bool algebraic, const SamplingConfig& cfg,
                 SzekeresReport& rep)
{
    auto j = evaluate_jet<S>(jet, pe);
    const Assignment& pt = pe.assignment();
    if (algebraic && rep.algebraic.is_zero()) {
        auto v = szekeres_at(j);
        double bound = cfg.tolerance * std::max(1.0, v.scale);
        for (std::size_t i = 0; i < v.o.size(); ++i)
            if (is_nonzero(v.o[i], bound)) {
                rep.algebraic = {Verdict::nonzero, pt, Number(v.o[i])};
                if (rep.failing.empty())
                    rep.failing = szekeres_label(i);
                break;
            }
    }
    if (rep.closure.is_zero()) {
        auto c = gradient_closure_at(j);
        if (!c.determined)
            return;
        // Differentiating K loses accuracy in floating point; allow for it.
        double bound = std::sqrt(cfg.tolerance) * std::max(1.0, c.scale);
        for (int i = 0; i < 6; ++i)
            if (is_nonzero(c.curl[i], bound)) {
                rep.closure = {Verdict::nonzero, pt, Number(c.curl[i])};
                if (rep.failing.empty())
                    rep.failing = curl_label(i);
                break;
            }
    }
}

}  // namespace

SzekeresReport szekeres_obstruction(const Metric& g, const SamplingConfig& cfg)
{
    SzekeresReport rep;
    MetricJet jet(g, 4);
    bool exact = true;
    for (auto& e : g.components())
        exact = exact && !e.has_kernels();
    std::vector<Expr> guards = g.components();
    guards.push_back(g.det());
    auto names = metric_symbols(g);
    Sampler sampler(cfg.seed);
    rep.algebraic.verdict = Verdict::sampled_zero;
    rep.closure.verdict = Verdict::sampled_zero;
    int used = 0;
    for (int attempt = 0; attempt < 10 * cfg.count && used < cfg.count; ++attempt) {
        Assignment pt = sampler.point(names);
        if (!point_is_regular(guards, pt))
            continue;
        PetrovType type;
        bool single = false;
        try {
            auto [u, p] = weyl_spinors_at(jet, pt);
            type = classify_quartic(u).type;
            single = std::all_of(p.begin(), p.end(), [](double v) { return v == 0; });
        } catch (const EvalError&) {
            continue;
        } catch (const GeometryError&) {
            continue;
        }
        ++used;
        rep.types.push_back(type);
        // The tensor is evaluated at every point; only types I to III make a
        // nonzero value an obstruction.
        if (type != PetrovType::N && type != PetrovType::O)
            rep.applicable = true;
        PointEvaluator pe(pt);
        if (exact)
            check_point<mpq_class>(jet, pe, single, cfg, rep);
        else
            check_point<double>(jet, pe, single, cfg, rep);
    }
    rep.result = !rep.algebraic.is_zero() ? rep.algebraic : rep.closure;
    return rep;
}

}  // namespace nullasd
