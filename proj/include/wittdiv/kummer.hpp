#pragma once

#include "wittdiv/divisor.hpp"
#include "wittdiv/finite_witt.hpp"
#include "wittdiv/laurent.hpp"
#include "wittdiv/sections.hpp"

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace wittdiv {

/// Membership in W_n O(D) on the affine chart Spec F_q[x_0, ..., x_k] for
/// D = sum a_j div(x_j): every exponent u of the m-th component satisfies
/// u_j + floor(p^m a_j) >= 0.
bool affine_member(const LaurentWittVector& v, const std::vector<mpq_class>& a);

/// A random member of W_n O(D) on that chart, up to max_terms terms per
/// component with exponents within `spread` of the lower bound.
LaurentWittVector random_affine_member(const LaurentWitt& ring, const std::vector<mpq_class>& a, std::mt19937_64& rng,
                                       int max_terms = 2, int spread = 2);

/// The cyclic cover A = F_q[x] <- B = F_q[y], x = y^ell, with group
/// generated by sigma(y) = zeta y for a primitive ell-th root of unity zeta.
class KummerCover {
public:
    /// Throws OrderDivisibleByP when p | ell and InvalidArgument when F_q has
    /// no primitive ell-th root of unity.
    KummerCover(std::shared_ptr<const GaloisField> field, unsigned ell, unsigned n);

    const GaloisField& field() const { return *field_; }
    unsigned ell() const { return ell_; }
    unsigned p() const { return field_->characteristic(); }
    unsigned length() const { return base_witt_.length(); }
    FieldElem zeta() const { return zeta_; }
    const LaurentRing& base() const { return *base_; }
    const LaurentRing& cover() const { return *cover_; }
    const LaurentWitt& base_witt() const { return base_witt_; }
    const LaurentWitt& cover_witt() const { return cover_witt_; }
    /// The inverse of ell * 1 in W_n(F_q).
    const WittVector<FieldElem>& inverse_of_ell() const { return ell_inverse_; }

    /// sigma^i on B.
    LaurentPoly sigma(const LaurentPoly& b, unsigned i = 1) const;
    /// W(sigma^i), componentwise.
    LaurentWittVector galois_on_witt(const LaurentWittVector& w, unsigned i = 1) const;

    /// x -> y^ell, componentwise.
    LaurentWittVector pullback(const LaurentWittVector& phi) const;
    /// ell * a, the coefficient of f^*(a div x) along div y. Throws
    /// DivisorNotCompatible unless it is an integer.
    mpq_class pulled_back_divisor(const mpq_class& a) const;
    /// The pullback of a section of W_n O_A(a div x); throws
    /// MembershipViolation when phi is not one.
    LaurentWittVector pullback_section(const LaurentWittVector& phi, const mpq_class& a) const;

    /// The inverse of the pullback on vectors whose exponents are all
    /// multiples of ell.
    std::optional<LaurentWittVector> descend(const LaurentWittVector& w) const;
    /// (1/ell) sum_i W(sigma^i)(w), as a vector over A.
    LaurentWittVector trace(const LaurentWittVector& w) const;
    /// The same average, left over B.
    LaurentWittVector average(const LaurentWittVector& w) const;

    bool base_member(const LaurentWittVector& phi, const mpq_class& a) const;
    bool cover_member(const LaurentWittVector& psi, const mpq_class& b) const;

private:
    std::shared_ptr<const GaloisField> field_;
    unsigned ell_;
    FieldElem zeta_;
    std::shared_ptr<const LaurentRing> base_;
    std::shared_ptr<const LaurentRing> cover_;
    LaurentWitt base_witt_;
    LaurentWitt cover_witt_;
    WittVector<FieldElem> ell_inverse_;
};

struct TraceSplitReport {
    int samples = 0;
    int splitting_failures = 0;   // T(pullback phi) != phi
    int descent_failures = 0;     // T(psi) not a base section
    int idempotence_failures = 0; // pullback o T not idempotent
    int invariance_failures = 0;  // T(psi) = psi disagrees with sigma(psi) = psi
    int order_failures = 0;       // W(sigma)^ell != id
    bool passed() const {
        return splitting_failures + descent_failures + idempotence_failures + invariance_failures + order_failures == 0;
    }
};

/// Sampled checks of the trace splitting for D = a div x.
TraceSplitReport trace_split_check(const KummerCover& cover, const mpq_class& a, int samples, std::mt19937_64& rng);

/// A = F_p[x_0, ...] -> C = A[z]/(1 + z + ... + z^{ell-1}) with ell prime
/// and the cyclotomic polynomial irreducible over F_p, so C = A tensor F_{p^{ell-1}}.
struct EtaleExtension {
    unsigned p;
    unsigned ell;
    std::shared_ptr<const GaloisField> base_field;
    std::shared_ptr<const GaloisField> extension_field;
    /// gcd of the modulus and its derivative is 1.
    bool etale = false;
    unsigned rank() const { return ell - 1; }

    /// Throws InvalidArgument when ell is not prime or the cyclotomic
    /// polynomial is reducible over F_p.
    static EtaleExtension make(unsigned p, unsigned ell);
};

struct EtaleReport {
    bool passed = true;
    unsigned pieces = 0;
    int samples = 0;
    std::string witness;
};

/// Checks that W_n(C) tensor W_n O_A(D) -> W_n O_C(D), sum [alpha_i] phi_i,
/// is bijective on every multidegree |e_j| <= radius (orders and full
/// enumeration of the kernel), and that sampled images are sections. D
/// is sum a_j div(x_j) with one coefficient per coordinate.
EtaleReport etale_pullback_iso_check(const EtaleExtension& ext, const std::vector<mpq_class>& a, unsigned n,
                                     long long radius, int samples, std::mt19937_64& rng);

}  // namespace wittdiv
