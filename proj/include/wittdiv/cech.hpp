#pragma once

#include "wittdiv/divisor.hpp"
#include "wittdiv/finite_witt.hpp"
#include "wittdiv/sections.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace wittdiv {

constexpr std::uint64_t kDefaultEnumerationBound = std::uint64_t{1} << 20;

/// (h^0, ..., h^N) of O(d) on P^N.
std::vector<std::uint64_t> classical_h(unsigned N, long long d);

/// floor(p^m D) for m < n, computed once.
struct LevelFloors {
    unsigned p;
    std::vector<std::vector<long long>> b;  // b[m][j]
    LevelFloors(const RDivisor& D, unsigned p, unsigned n);
    /// Same test as monomial_member, on precomputed floors.
    bool admits(const std::vector<long long>& u, unsigned m, const Chart& I) const;
};

/// The multidegree-e part of the Čech complex of W_n O(D) for the standard
/// cover of P^N. The slot of chart I is the subgroup V^{m0} W_{n-m0}(F_q)
/// of W_n(F_q) given by the admissible levels [m0, n); restrictions are the
/// identity on coefficients, and d is the alternating Witt sum.
class GradedCechComplex {
public:
    using Cochain = std::vector<FiniteWitt::Code>;

    GradedCechComplex(std::shared_ptr<const FiniteWitt> witt, const RDivisor& D, const GradedDegree& e);
    GradedCechComplex(std::shared_ptr<const FiniteWitt> witt, const LevelFloors& floors, unsigned N,
                      const GradedDegree& e);

    unsigned N() const { return N_; }
    const FiniteWitt& witt() const { return *witt_; }
    const GradedDegree& degree() const { return e_; }
    /// Charts with |I| = j + 1.
    const std::vector<Chart>& charts(int j) const;
    /// First admissible level of each slot of C^j (n when the slot is 0).
    const std::vector<unsigned>& slot_levels(int j) const;
    /// |C^j|; 1 outside 0..N.
    std::uint64_t group_order(int j) const;
    bool trivial() const;

    Cochain zero(int j) const;
    Cochain differential(int j, const Cochain& c) const;
    Cochain add(const Cochain& a, const Cochain& b) const;
    Cochain times_p(const Cochain& a) const;
    /// Generators V^m[beta] in each slot, beta running over an F_p-basis.
    std::vector<Cochain> generators(int j) const;
    bool d_squared_zero() const;

    /// Mixed-radix index of a cochain in C^j and back.
    std::uint64_t encode(int j, const Cochain& c) const;
    Cochain decode(int j, std::uint64_t index) const;
    /// Calls visit on every element of C^j; throws EnumerationBoundExceeded
    /// when |C^j| > bound.
    void for_each(int j, std::uint64_t bound, const std::function<void(const Cochain&)>& visit) const;
    /// Encoded elements of d(C^{j-1}), by breadth-first closure of the
    /// generator images under addition.
    std::unordered_set<std::uint64_t> boundaries(int j, std::uint64_t bound) const;

    /// A key identifying the complex up to equality: the slot levels.
    std::vector<unsigned> structure_key() const;

private:
    void build(const LevelFloors& floors);

    std::shared_ptr<const FiniteWitt> witt_;
    unsigned N_;
    GradedDegree e_;
    std::vector<std::vector<Chart>> charts_;
    std::vector<std::vector<unsigned>> levels_;
};

/// Orders of the pieces of H^j in one multidegree.
struct GradedCohomology {
    unsigned log_order = 0;   // log_p |H^j|
    unsigned log_p_rank = 0;  // log_p |H^j[p]|
    /// log_p |H^j[p^k]| for k = 1..n.
    std::vector<unsigned> log_torsion;
};

GradedCohomology graded_cohomology(const GradedCechComplex& complex, int j,
                                   std::uint64_t bound = kDefaultEnumerationBound);

struct CohomologyReport {
    int j = 0;
    unsigned log_order = 0;
    unsigned log_p_rank = 0;
    std::string method;  // "brute-force" or "LES-certificate"
    /// Per multidegree contributions (brute force only, nonzero pieces).
    std::map<GradedDegree, GradedCohomology> pieces;
};

/// H^j of W_n O(D) in the single multidegree e, by brute force.
CohomologyReport witt_cech_H(int j, std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                             const GradedDegree& e, std::uint64_t bound = kDefaultEnumerationBound);

/// Smallest integer radius such that every multidegree with a nonzero
/// contribution to any H^j(W_n O(D)) has |e_j| <= radius, from the
/// supports of the classical cohomology of each O(floor(p^m D)).
long long certified_radius(const RDivisor& D, unsigned p, unsigned n);

/// H^j of W_n O(D) summed over the window |e_j| <= radius. Throws
/// WindowIncomplete when the window misses part of the certified support.
CohomologyReport witt_cech_H_total(int j, std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                   std::optional<long long> radius = std::nullopt,
                                   std::uint64_t bound = kDefaultEnumerationBound);

struct VanishingCertificate {
    bool vanishes = false;
    std::vector<std::string> trace;
};

/// One-sided: true when h^j(O(floor(p^m D))) = 0 for all m < n, which
/// forces H^j(W_n O(D)) = 0 through the V-filtration. False means
/// inconclusive.
VanishingCertificate vanishing_certificate(int j, const RDivisor& D, unsigned p, unsigned n);

/// log_p |H^j(W_n O(D))| predicted by the exact sequences when the
/// neighbouring classical groups vanish at every level (or every h^j does);
/// nullopt otherwise.
std::optional<unsigned> les_prediction(int j, const RDivisor& D, unsigned p, unsigned field_degree, unsigned n);

/// Vanishing of H^i(P^N, W_n O(sH)) for i > 0 by certificate.
VanishingCertificate witt_serre_check(int i, unsigned N, long long s, unsigned p, unsigned n);

struct GrowthRow {
    long long s;
    unsigned formula;     // d * sum_{m<n} h^0(O(p^m s))
    unsigned enumerated;  // brute-force Čech H^0
};

std::vector<GrowthRow> h0_growth_table(unsigned N, std::shared_ptr<const GaloisField> field, unsigned n,
                                       long long s_first, long long s_last,
                                       std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace wittdiv
