#pragma once

#include "wittdiv/galois_field.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wittdiv {

constexpr std::size_t kMaxLaurentVars = 6;

/// Exponent vector of a Laurent monomial; unused trailing slots stay 0.
using Monomial = std::array<std::int32_t, kMaxLaurentVars>;

struct LaurentTerm {
    Monomial exponent{};
    FieldElem coeff;
    friend bool operator==(const LaurentTerm&, const LaurentTerm&) = default;
};

/// Sparse Laurent polynomial over F_q: zero-free terms sorted by exponent.
struct LaurentPoly {
    std::vector<LaurentTerm> terms;
    bool is_zero() const { return terms.empty(); }
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

enum class ExponentRule { NonNegative, Any };

/// Multigraded Laurent polynomial ring F_q[x_0^{±}, ...] restricted to an
/// allowed exponent region: a sign rule per variable and, optionally, total
/// degree zero. With N+1 variables, NonNegative outside I and degree zero,
/// this is the coordinate ring of the chart U_I of P^N.
class LaurentRing {
public:
    using Element = LaurentPoly;

    LaurentRing(std::shared_ptr<const GaloisField> field, std::vector<ExponentRule> rules, bool degree_zero = false);

    /// Coordinate ring of U_I = {x_i != 0 for i in I} on P^N.
    static LaurentRing chart(std::shared_ptr<const GaloisField> field, unsigned N, std::span<const unsigned> chart_index);
    /// Degree-zero Laurent monomials in N+1 variables with no sign rule: the
    /// part of the function field of P^N spanned by torus characters.
    static LaurentRing function_field(std::shared_ptr<const GaloisField> field, unsigned N);

    const GaloisField& field() const { return *field_; }
    const std::shared_ptr<const GaloisField>& field_ptr() const { return field_; }
    std::size_t variables() const { return rules_.size(); }
    const std::vector<ExponentRule>& rules() const { return rules_; }
    bool degree_zero() const { return degree_zero_; }
    unsigned characteristic() const { return field_->characteristic(); }

    /// True iff the exponent lies in the allowed region.
    bool allows(const Monomial& u) const;
    bool contains(const LaurentPoly& a) const;

    /// Canonicalizes a list of (coefficient, exponent) pairs; throws
    /// ExponentOutOfChart for an exponent outside the region.
    LaurentPoly make(const std::vector<std::pair<FieldElem, std::vector<int>>>& monomials) const;
    LaurentPoly monomial(FieldElem c, std::span<const int> exponent) const;
    LaurentPoly monomial(FieldElem c, const Monomial& exponent) const;
    LaurentPoly constant(FieldElem c) const;

    LaurentPoly zero() const { return {}; }
    LaurentPoly one() const { return constant(field_->one()); }
    LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b) const;
    LaurentPoly neg(const LaurentPoly& a) const;
    LaurentPoly sub(const LaurentPoly& a, const LaurentPoly& b) const { return add(a, neg(b)); }
    LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b) const;
    LaurentPoly scale(FieldElem c, const LaurentPoly& a) const;
    /// Componentwise p-th power: (sum c x^u)^p = sum c^p x^{pu}.
    LaurentPoly frobenius(const LaurentPoly& a) const;
    bool eq(const LaurentPoly& a, const LaurentPoly& b) const { return a == b; }
    bool is_zero(const LaurentPoly& a) const { return a.terms.empty(); }

    /// The common exponent of a homogeneous element; absent for 0 and for
    /// elements with more than one multidegree.
    std::optional<std::vector<int>> multidegree(const LaurentPoly& a) const;

    /// Random element with up to `max_terms` terms and exponents in
    /// [-radius, radius] inside the allowed region.
    LaurentPoly random(std::mt19937_64& rng, int max_terms = 3, int radius = 2) const;

    std::string to_string(const LaurentPoly& a) const;

private:
    std::shared_ptr<const GaloisField> field_;
    std::vector<ExponentRule> rules_;
    bool degree_zero_;
};

Monomial to_monomial(std::span<const int> exponent);

}  // namespace wittdiv
