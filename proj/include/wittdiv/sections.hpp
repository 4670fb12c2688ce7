#pragma once

#include "wittdiv/divisor.hpp"
#include "wittdiv/finite_witt.hpp"
#include "wittdiv/galois_field.hpp"
#include "wittdiv/laurent.hpp"
#include "wittdiv/witt_vector.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace wittdiv {

/// A chart U_I of P^N, given by the sorted index set I.
using Chart = std::vector<unsigned>;

/// All nonempty charts of P^N with |I| = size, in lexicographic order.
std::vector<Chart> charts_of_size(unsigned N, unsigned size);
void validate_chart(unsigned N, const Chart& I);

/// A multidegree e = num / p^k in (1/p^k) Z^{N+1}, normalized so that k is
/// minimal.
struct GradedDegree {
    unsigned p = 2;
    unsigned k = 0;
    std::vector<long long> num;

    static GradedDegree make(unsigned p, unsigned k, std::vector<long long> num);
    std::size_t size() const { return num.size(); }
    /// p^m e when it is integral.
    std::optional<std::vector<long long>> at_level(unsigned m) const;
    /// p^t e.
    GradedDegree scaled_up(unsigned t) const;
    /// e / p^t.
    GradedDegree scaled_down(unsigned t) const;
    mpq_class coordinate(unsigned j) const;
    long long total() const;
    std::string to_string() const;
    friend bool operator==(const GradedDegree&, const GradedDegree&) = default;
    friend auto operator<=>(const GradedDegree&, const GradedDegree&) = default;
};

/// Every e in (1/p^k) Z^{N+1} with sum 0 and |e_j| <= radius, sorted.
std::vector<GradedDegree> degree_window(unsigned N, unsigned p, unsigned k, long long radius);

/// u_j + floor(p^m a_j) >= 0 for all j outside I, and sum u = 0: the
/// condition for x^u to be a section of O(floor(p^m D)) over U_I.
bool monomial_member(std::span<const long long> u, const RDivisor& D, unsigned p, unsigned m, const Chart& I);

/// Membership of a Laurent element in Gamma(U_I, O(floor(p^m D))). The
/// ring must be the degree-zero Laurent ring in N+1 variables, otherwise
/// ChartMismatch.
bool membership(const LaurentRing& ring, const LaurentPoly& phi, const RDivisor& D, unsigned p, unsigned m,
                const Chart& I);

/// Levels m < n whose slot is nonzero in the multidegree-e piece of
/// Gamma(U_I, W_n O(D)): p^m e integral and p^m e + floor(p^m D) >= 0
/// off I. Always an interval [m0, n) or empty.
std::vector<unsigned> admissible_levels(const GradedDegree& e, const RDivisor& D, unsigned n, const Chart& I);

/// True iff floor(p^m D) = floor(p^m D') for all m < n (so both define the
/// same sheaf at level n). Requires D <= D'.
bool perturbation_invariance(const RDivisor& D, const RDivisor& Dprime, unsigned p, unsigned n);

using LaurentWitt = WittRing<LaurentRing>;
using LaurentWittVector = WittVector<LaurentPoly>;

class WittSectionSpace;

/// An element of Gamma(U_I, W_n O(D)).
struct WittSection {
    std::shared_ptr<const WittSectionSpace> space;
    LaurentWittVector value;
};

/// Gamma(U_I, W_n O_X(D)) on P^N over F_q: Witt vectors of degree-zero
/// Laurent polynomials whose m-th component is a section of
/// O(floor(p^m D)) on U_I.
class WittSectionSpace : public std::enable_shared_from_this<WittSectionSpace> {
public:
    static std::shared_ptr<const WittSectionSpace> make(std::shared_ptr<const GaloisField> field, RDivisor D,
                                                        unsigned n, Chart I);

    const RDivisor& divisor() const { return D_; }
    unsigned N() const { return D_.N(); }
    unsigned p() const { return field_->characteristic(); }
    unsigned length() const { return n_; }
    const Chart& chart() const { return I_; }
    const std::shared_ptr<const GaloisField>& field() const { return field_; }
    /// Witt vectors over the degree-zero Laurent ring (ambient).
    const LaurentWitt& ambient() const { return ambient_; }
    /// W_n of the chart coordinate ring O(U_I).
    const LaurentWitt& chart_ring() const { return chart_; }

    bool contains(const LaurentWittVector& v) const;
    /// Throws MembershipViolation when v is not a section.
    WittSection make_section(const LaurentWittVector& v) const;
    WittSection zero() const;

    WittSection add(const WittSection& a, const WittSection& b) const;
    WittSection neg(const WittSection& a) const;
    /// a * s for a in W_n(O(U_I)).
    WittSection scale(const LaurentWittVector& a, const WittSection& s) const;

    /// A random section with up to max_terms monomials per component.
    WittSection random_member(std::mt19937_64& rng, int max_terms = 2, int radius = 2) const;
    /// A random element of W_n(O(U_I)).
    LaurentWittVector random_scalar(std::mt19937_64& rng, int max_terms = 2, int radius = 2) const;

    /// log_p of the order of the multidegree-e piece: d times the number of
    /// admissible levels, q = p^d.
    unsigned graded_log_order(const GradedDegree& e) const;
    /// The same order counted by enumerating every coefficient tuple of the
    /// homogeneous Witt vectors of degree e and testing membership.
    std::uint64_t graded_order_by_enumeration(const GradedDegree& e) const;

    /// The homogeneous Witt vector of degree e with the given coefficients.
    LaurentWittVector homogeneous(const GradedDegree& e, const WittVector<FieldElem>& coefficients) const;

private:
    WittSectionSpace(std::shared_ptr<const GaloisField> field, RDivisor D, unsigned n, Chart I);
    void check_same(const WittSection& s) const;

    std::shared_ptr<const GaloisField> field_;
    RDivisor D_;
    unsigned n_;
    Chart I_;
    LaurentWitt ambient_;
    LaurentWitt chart_;
};

/// Orders in one multidegree of 0 -> F^n_* W_m O(p^n D) -V^n-> W_{n+m} O(D)
/// -R^m-> W_n O(D) -> 0 on a chart.
struct PieceOrders {
    GradedDegree e;
    std::uint64_t sub = 1;
    std::uint64_t total = 1;
    std::uint64_t quotient = 1;
    bool v_injective = true;
    bool image_is_kernel = true;
    bool holds() const { return total == sub * quotient && v_injective && image_is_kernel; }
};

struct ExactSequenceReport {
    std::vector<PieceOrders> pieces;
    bool holds() const;
};

/// Checks the graded exact sequence on every multidegree of the window
/// |e_j| <= radius, e in (1/p^{n+m-1}) Z^{N+1}, by enumerating the groups.
ExactSequenceReport exact_sequence_orders(std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                          unsigned m, const Chart& I, long long radius);

/// For D' = D + div(x^u) (u of total degree 0): checks on sampled sections
/// that phi -> [x^{-u}] phi maps W_n O(D) into W_n O(D') and that
/// [x^{u}] maps back, with the two maps mutually inverse.
bool linear_equivalence_check(std::shared_ptr<const GaloisField> field, const RDivisor& D,
                              const std::vector<long long>& u, unsigned n, const Chart& I, int samples,
                              std::mt19937_64& rng);

}  // namespace wittdiv
