#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace wittdiv {

/// Element of a finite field F_q, stored as the base-p digit encoding of
/// its residue polynomial: v = sum_i c_i p^i for c_0 + c_1 t + ... .
struct FieldElem {
    std::uint32_t v = 0;
    friend bool operator==(FieldElem, FieldElem) = default;
    friend auto operator<=>(FieldElem, FieldElem) = default;
};

/// F_q = F_p[t]/(f) with a fixed monic irreducible f of degree d. Degree 1
/// gives the prime field. All arithmetic is table driven; q is capped at
/// 2^16.
class GaloisField {
public:
    using Element = FieldElem;

    /// Prime field F_p.
    static std::shared_ptr<const GaloisField> prime(unsigned p);
    /// F_{p^d} with the default modulus: the irreducible monic polynomial of
    /// degree d with the smallest digit encoding (t^2+t+1 for F_4).
    static std::shared_ptr<const GaloisField> make(unsigned p, unsigned d);
    /// F_q for a prime power q, default modulus.
    static std::shared_ptr<const GaloisField> of_order(unsigned q);
    /// F_{p^d} with an explicit modulus given by its coefficients c_0..c_d
    /// (c_d must be 1). Throws InvalidArgument when f is reducible.
    static std::shared_ptr<const GaloisField> with_modulus(unsigned p, std::vector<unsigned> modulus);

    unsigned characteristic() const { return p_; }
    unsigned degree() const { return d_; }
    std::uint32_t order() const { return q_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    FieldElem zero() const { return {0}; }
    FieldElem one() const { return {1}; }
    FieldElem from_int(long long k) const;
    /// The F_p-basis 1, t, ..., t^{d-1}.
    std::vector<FieldElem> basis() const;
    /// A generator of the multiplicative group.
    FieldElem primitive_element() const { return {exp_[1]}; }

    FieldElem add(FieldElem a, FieldElem b) const;
    FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }
    FieldElem neg(FieldElem a) const { return {neg_[a.v]}; }
    FieldElem mul(FieldElem a, FieldElem b) const;
    FieldElem inv(FieldElem a) const;
    FieldElem pow(FieldElem a, std::uint64_t e) const;
    FieldElem frobenius(FieldElem a) const { return {frob_[a.v]}; }
    bool eq(FieldElem a, FieldElem b) const { return a.v == b.v; }
    bool is_zero(FieldElem a) const { return a.v == 0; }

    /// Multiplicative order of a nonzero element.
    std::uint32_t multiplicative_order(FieldElem a) const;
    /// A primitive ell-th root of unity; throws InvalidArgument unless ell | q-1.
    FieldElem root_of_unity(unsigned ell) const;

    template <class Rng>
    FieldElem random(Rng& rng) const {
        std::uniform_int_distribution<std::uint32_t> dist(0, q_ - 1);
        return {dist(rng)};
    }

    /// Digits c_0..c_{d-1} of an element.
    std::vector<unsigned> digits(FieldElem a) const;
    FieldElem from_digits(const std::vector<unsigned>& digits) const;
    std::string to_string(FieldElem a) const;

    /// Same characteristic, degree and modulus.
    bool same_field(const GaloisField& other) const;

private:
    GaloisField(unsigned p, std::vector<unsigned> modulus);
    std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const;

    unsigned p_;
    unsigned d_;
    std::uint32_t q_;
    std::vector<unsigned> modulus_;
    std::vector<std::uint32_t> neg_, frob_, log_, exp_;
    std::vector<std::uint32_t> add_table_;  // q*q when q <= 256
};

}  // namespace wittdiv
