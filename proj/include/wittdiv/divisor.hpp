#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace wittdiv {

/// A Q-divisor on P^N supported on the coordinate hyperplanes
/// H_j = {x_j = 0}: D = sum_j a_j H_j with exact rational a_j.
class RDivisor {
public:
    RDivisor() = default;
    RDivisor(unsigned N, std::vector<mpq_class> coefficients);

    static RDivisor zero(unsigned N);
    /// c * H_j.
    static RDivisor hyperplane(unsigned N, unsigned j, const mpq_class& c = 1);
    /// Parses literals such as `D = 3/2*H0 - 1/3*H1`, `-2*H0` or `0`.
    /// Throws ParseError, including for an index above N.
    static RDivisor parse(const std::string& text, unsigned N);

    unsigned N() const { return N_; }
    const std::vector<mpq_class>& coefficients() const { return a_; }
    const mpq_class& coefficient(unsigned j) const { return a_.at(j); }

    RDivisor operator+(const RDivisor& other) const;
    RDivisor operator-(const RDivisor& other) const;
    RDivisor scaled(const mpq_class& factor) const;
    friend bool operator==(const RDivisor& a, const RDivisor& b) { return a.N_ == b.N_ && a.a_ == b.a_; }

    /// Coefficient-wise floor.
    std::vector<long long> floor() const;
    /// Coefficient-wise fractional part {D} = D - floor(D).
    RDivisor fractional() const;
    /// floor(p^m D).
    std::vector<long long> floor_scaled(unsigned p, unsigned m) const;
    bool is_integral() const;
    mpq_class degree() const;
    /// Coefficient-wise D <= other.
    bool leq(const RDivisor& other) const;

    /// Canonical literal, e.g. `3/2*H0 - 1/3*H1`; `0` for the zero divisor.
    std::string to_string() const;

private:
    unsigned N_ = 0;
    std::vector<mpq_class> a_;
};

/// Exact floor of a rational.
long long floor_of(const mpq_class& x);

/// Sum of the entries of floor(p^m D): the degree of the line bundle
/// O(floor(p^m D)).
long long floor_degree(const RDivisor& D, unsigned p, unsigned m);

}  // namespace wittdiv
