// Sparse Laurent polynomials over Q in numbered generators.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace nullasd::detail {

using GenId = std::uint32_t;

// Sorted by generator id; exponents are nonzero and may be negative.
using Mono = std::vector<std::pair<GenId, std::int32_t>>;

// Lexicographic order with the smallest generator id most significant.
int lex_cmp(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);
Mono mono_inv(const Mono& a);
std::int32_t mono_exp(const Mono& m, GenId g);
int mono_degree(const Mono& m);

struct Term {
    Mono m;
    mpq_class c;
};

// Terms sorted ascending by lex_cmp, no zero coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(const mpq_class& c);
    static Poly generator(GenId g, std::int32_t e = 1);
    static Poly from_terms(std::vector<Term> terms);  // sorts and merges

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_monomial() const { return terms_.size() == 1; }
    mpq_class constant_value() const;  // 0 when not a pure constant
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const Term& leading() const { return terms_.back(); }

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }
    int compare(const Poly& o) const;  // total order for canonical sorting

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const mpq_class& c) const;
    Poly times_mono(const Mono& m) const;
    Poly pow(unsigned n) const;

    // Componentwise minimum exponent over all terms (Laurent content).
    Mono min_mono() const;
    // Largest exponent span per generator, used for cheap divisibility rejection.
    std::int32_t degree_in(GenId g) const;
    std::int32_t low_degree_in(GenId g) const;
    std::vector<GenId> generators() const;
    bool mentions(GenId g) const;

    // Formal partial derivative with respect to a generator.
    Poly partial(GenId g) const;

    // Exact quotient a / f when f divides a; f must have nonnegative exponents
    // and no monomial content.
    std::optional<Poly> divide_exact(const Poly& f) const;

    // Positive rational content with the sign of the leading coefficient.
    mpq_class content() const;

private:
    explicit Poly(std::vector<Term> sorted) : terms_(std::move(sorted)) {}
    friend Poly merge_add(const Poly& a, const Poly& b, bool subtract);
    std::vector<Term> terms_;
};

Poly merge_add(const Poly& a, const Poly& b, bool subtract);

}  // namespace nullasd::detail
