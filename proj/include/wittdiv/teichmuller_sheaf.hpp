#pragma once

#include "wittdiv/divisor.hpp"
#include "wittdiv/sections.hpp"

#include <map>
#include <memory>
#include <random>
#include <utility>

namespace wittdiv {

/// Transition functions f_ij on U_i ∩ U_j of the standard cover of P^N, as
/// degree-zero Laurent polynomials. Only i != j is stored; f_ii = 1.
struct Transitions {
    unsigned N = 1;
    std::map<std::pair<unsigned, unsigned>, LaurentPoly> f;
};

/// f_ij = (x_j / x_i)^d, the transition functions of O(d).
Transitions line_bundle_transitions(const LaurentRing& ring, unsigned N, long long d);

/// Teichmüller lifts of a cocycle, in W_n of the degree-zero Laurent ring.
struct TeichmullerCocycle {
    std::shared_ptr<const LaurentWitt> ring;
    std::map<std::pair<unsigned, unsigned>, LaurentWittVector> lifts;

    /// Lift of f_ij, the unit for i == j.
    LaurentWittVector lift(unsigned i, unsigned j) const;
    /// lift_ij lift_jk lift_ki = 1 for all i, j, k.
    bool satisfies_cocycle_condition() const;
    /// The first components, which should give back the input.
    Transitions truncate(unsigned N) const;
};

/// Throws NotACocycle when f_ij f_jk f_ki != 1 for some triple (or a
/// transition is missing), and InvalidArgument for a ring that is not the
/// degree-zero Laurent ring in N+1 variables.
TeichmullerCocycle teichmuller_cocycle(std::shared_ptr<const LaurentRing> ring, const Transitions& t, unsigned n);

/// f_i = prod_j (x_j / x_i)^{a_j} for integral D, so that
/// W_n O(D)|_{U_i} = [f_i^{-1}] W_n O(U_i). Throws NotCartier.
LaurentPoly local_equation(const LaurentRing& ring, const RDivisor& D, unsigned i);

struct TeichmullerReport {
    int samples = 0;
    int members = 0;      // sampled vectors that were sections
    int disagreements = 0;
    bool passed() const { return disagreements == 0; }
};

/// On U_i, compares membership of sampled Witt vectors phi in W_n O(D) with
/// membership of [f_i] phi in W_n O(U_i), and checks that [f_i^{-1}] psi is
/// a section for sampled psi in W_n O(U_i). Throws NotCartier for
/// fractional D.
TeichmullerReport div_vs_teichmuller(std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                     unsigned i, int samples, std::mt19937_64& rng);

}  // namespace wittdiv
