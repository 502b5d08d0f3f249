// Coordinate tensor calculus on a four-dimensional chart.
#pragma once

#include "nullasd/expr.hpp"

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nullasd {

using Chart = std::array<std::string, 4>;

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void validate_chart(const Chart& c);

enum class Valence { up, down };

// Dense 4^rank array of Exprs.
class TensorField {
public:
    TensorField() = default;
    TensorField(Chart chart, std::vector<Valence> valence);

    const Chart& chart() const { return chart_; }
    const std::vector<Valence>& valence() const { return valence_; }
    std::size_t rank() const { return valence_.size(); }
    std::size_t size() const { return data_.size(); }

    template <class... I>
    Expr& operator()(I... idx) { return data_[flat({static_cast<int>(idx)...})]; }
    template <class... I>
    const Expr& operator()(I... idx) const { return data_[flat({static_cast<int>(idx)...})]; }

    Expr& at_flat(std::size_t i) { return data_[i]; }
    const Expr& at_flat(std::size_t i) const { return data_[i]; }
    const std::vector<Expr>& data() const { return data_; }

    std::size_t flat(std::initializer_list<int> idx) const;
    std::vector<int> unflat(std::size_t i) const;
    std::string label(std::size_t i, const std::string& name) const;  // name[i0,i1,...]

private:
    Chart chart_{};
    std::vector<Valence> valence_;
    std::vector<Expr> data_;
};

struct VectorField {
    Chart chart{};
    std::array<Expr, 4> c{};
    Expr apply(const Expr& f) const;  // directional derivative
};

struct OneForm {
    Chart chart{};
    std::array<Expr, 4> c{};
    Expr operator()(const VectorField& v) const;
};

OneForm operator+(const OneForm& a, const OneForm& b);
OneForm operator-(const OneForm& a, const OneForm& b);
OneForm operator*(const Expr& f, const OneForm& a);
OneForm coordinate_form(const Chart& c, int i);  // dx^i
VectorField coordinate_vector(const Chart& c, int i);  // d/dx^i

// Components on dx^i^dx^j^dx^k for (i,j,k) = (0,1,2), (0,1,3), (0,2,3), (1,2,3).
struct ThreeForm {
    Chart chart{};
    std::array<Expr, 4> c{};
    static constexpr std::array<std::array<int, 3>, 4> slots{{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
};

class Metric {
public:
    Metric() = default;
    // Upper triangle (a <= b) is authoritative; the lower triangle is ignored.
    Metric(Chart chart, const std::array<std::array<Expr, 4>, 4>& comps);

    const Chart& chart() const { return chart_; }
    const Expr& operator()(int a, int b) const { return g_[a < b ? a * 4 + b : b * 4 + a]; }
    std::array<Expr, 16> matrix() const;
    Expr det() const;
    TensorField as_tensor() const;
    std::vector<Expr> components() const;  // the 10 independent entries

private:
    Chart chart_{};
    std::array<Expr, 16> g_{};
};

// The symmetric product of one-forms: ab = a(x)b + b(x)a, so a^2 = 2 a(x)a.
struct ProductTerm {
    Expr coef;
    OneForm a, b;
};
Metric metric_from_products(const Chart& c, const std::vector<ProductTerm>& terms);

Expr determinant4(const std::array<Expr, 16>& m);
// Adjugate over the Expr field; throws GeometryError when det normalizes to 0.
std::array<Expr, 16> inverse4(const std::array<Expr, 16>& m);

VectorField lie_bracket(const VectorField& a, const VectorField& b);
OneForm lower(const Metric& g, const VectorField& v);
Expr inner(const Metric& g, const VectorField& a, const VectorField& b);
TensorField exterior_derivative(const OneForm& w);  // (dw)_ab = d_a w_b - d_b w_a
ThreeForm wedge(const OneForm& a, const TensorField& two_form);

// Levi-Civita curvature, computed lazily and cached.
class Curvature {
public:
    explicit Curvature(Metric g);

    const Metric& metric() const { return g_; }
    const TensorField& inverse();      // g^ab
    const TensorField& christoffel();  // Gamma^a_bc
    const TensorField& riemann();      // R^a_bcd
    const TensorField& riemann_lower();  // R_abcd
    const TensorField& ricci();        // R_bd = R^a_bad
    const Expr& scalar();
    const TensorField& weyl();         // C_abcd
    TensorField weyl_mixed();          // C^a_bcd

private:
    Metric g_;
    std::optional<TensorField> inv_, gam_, riem_, riem_low_, ric_, weyl_;
    std::optional<Expr> scal_;
};

TensorField christoffels(const Metric& g);
TensorField riemann(const Metric& g);
TensorField ricci(const Metric& g);
Expr scalar_curvature(const Metric& g);
TensorField weyl(const Metric& g);

// nabla_c g_ab, index order (c, a, b); vanishes for the Levi-Civita connection.
TensorField metric_compatibility(Curvature& cv);

TensorField lie_derivative_metric(const Metric& g, const VectorField& k);
ThreeForm twist_three_form(const Metric& g, const VectorField& k);
Metric conformal_rescale(const Metric& g, const Expr& omega);

// Joint zero test over every component of a tensor.
ZeroResult tensor_is_zero(const TensorField& t, const SamplingConfig& cfg = {},
                          std::string* failing = nullptr, const std::string& name = "T");

// Symbolic derivatives of the metric up to a fixed order, for the pointwise
// engine in local.hpp. Only index-sorted derivatives are computed.
class MetricJet {
public:
    MetricJet(const Metric& g, int order);
    const Metric& metric() const { return g_; }
    int order() const { return order_; }
    const Expr& g(int a, int b) const { return g_(a, b); }
    const Expr& dg(int c, int a, int b) const { return d1_[(c * 4 + a) * 4 + b]; }
    const Expr& d2g(int c, int d, int a, int b) const { return d2_[((c * 4 + d) * 4 + a) * 4 + b]; }
    const Expr& d3g(int c, int d, int e, int a, int b) const
    {
        return d3_[(((c * 4 + d) * 4 + e) * 4 + a) * 4 + b];
    }
    const Expr& d4g(int c, int d, int e, int f, int a, int b) const
    {
        return d4_[((((c * 4 + d) * 4 + e) * 4 + f) * 4 + a) * 4 + b];
    }

private:
    Metric g_;
    int order_;
    std::vector<Expr> d1_, d2_, d3_, d4_;
};

}  // namespace nullasd
