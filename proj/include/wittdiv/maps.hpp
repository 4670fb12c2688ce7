#pragma once

#include "wittdiv/cech.hpp"

#include <functional>
#include <string>
#include <vector>

namespace wittdiv {

/// Applies a slotwise map of Witt codes to a cochain.
GradedCechComplex::Cochain map_cochain(const GradedCechComplex::Cochain& c,
                                       const std::function<FiniteWitt::Code(FiniteWitt::Code)>& f);

struct InducedMap {
    bool commutes = true;           // f d = d f on generators of C^{j-1} and C^j
    unsigned source_log_order = 0;  // log_p |H^j(source)|
    unsigned kernel_log_order = 0;  // log_p |ker H^j(f)|
    bool injective() const { return commutes && kernel_log_order == 0; }
};

/// The map induced on H^j by a slotwise cochain map between two graded
/// complexes on the same P^N, decided by enumerating the cocycles of the
/// source.
InducedMap induced_on_cohomology(const GradedCechComplex& source, const GradedCechComplex& target, int j,
                                 const std::function<FiniteWitt::Code(FiniteWitt::Code)>& f,
                                 std::uint64_t bound = kDefaultEnumerationBound);

/// Monomial basis {u : u_j <= -1, sum u = -s} of H^N(P^N, O(-s)), sorted.
std::vector<std::vector<long long>> top_basis(unsigned N, long long s);

struct TopFrobeniusReport {
    unsigned N = 1;
    unsigned p = 2;
    long long s = 1;
    std::vector<std::vector<long long>> basis;   // of H^N(O(-s))
    std::vector<std::vector<long long>> images;  // p u, one per basis element
    std::vector<std::pair<std::size_t, std::size_t>> support;  // (row, column) into the target basis
    std::size_t target_dimension = 0;
    unsigned rank = 0;                   // of the matrix over F_p
    bool images_in_target_basis = true;
    bool brute_force_agrees = true;      // level-1 Čech computation in each degree
    bool injective() const { return images_in_target_basis && rank == basis.size() && brute_force_agrees; }
};

/// Frobenius H^N(P^N, O(-s)) -> H^N(P^N, O(-ps)), x^u -> x^{pu}.
TopFrobeniusReport frobenius_on_top_H(unsigned N, long long s, unsigned p);

struct WittMapReport {
    std::string map;
    unsigned pieces = 0;           // multidegrees with nonzero source cohomology
    unsigned source_log_order = 0;
    unsigned kernel_log_order = 0;
    bool commutes = true;
    bool injective() const { return commutes && kernel_log_order == 0; }
};

/// Frobenius H^N(W_n O(-sH)) -> H^N(W_n O(-psH)), e -> pe, by brute force.
WittMapReport frobenius_on_witt_top_H(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                      std::uint64_t bound = kDefaultEnumerationBound);

struct VerschiebungReport {
    WittMapReport brute_force;
    /// h^{N-1}(O(-s)) = 0, the classical sufficient condition.
    bool certificate = false;
    bool injective() const { return brute_force.injective(); }
};

/// V: H^N(F_* W_n O(-psH)) -> H^N(W_{n+1} O(-sH)), e' -> e'/p.
VerschiebungReport verschiebung_on_H(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                     std::uint64_t bound = kDefaultEnumerationBound);

struct TorsionProbe {
    unsigned log_order = 0;           // brute force
    unsigned expected_log_order = 0;  // d * sum_m h^N(O(-p^m s))
    /// log_p |H^N[p^k]|, k = 1..n.
    std::vector<unsigned> log_torsion;
    bool frobenius_injective = false;
    bool verschiebung_injective = false;
    /// F V = V F = p on every enumerated class.
    bool fv_equals_p = false;
};

TorsionProbe finite_level_torsion_probe(unsigned N, long long s, std::shared_ptr<const GaloisField> field, unsigned n,
                                        std::uint64_t bound = kDefaultEnumerationBound);

}  // namespace wittdiv
