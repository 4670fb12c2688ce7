#include "wittdiv/teichmuller_sheaf.hpp"

#include "wittdiv/errors.hpp"

namespace wittdiv {

Transitions line_bundle_transitions(const LaurentRing& ring, unsigned N, long long d) {
    Transitions t;
    t.N = N;
    for (unsigned i = 0; i <= N; ++i)
        for (unsigned j = 0; j <= N; ++j) {
            if (i == j) continue;
            std::vector<int> e(N + 1, 0);
            e[j] = static_cast<int>(d);
            e[i] = static_cast<int>(-d);
            t.f[{i, j}] = ring.monomial(ring.field().one(), e);
        }
    return t;
}

LaurentWittVector TeichmullerCocycle::lift(unsigned i, unsigned j) const {
    if (i == j) return ring->one();
    return lifts.at({i, j});
}

bool TeichmullerCocycle::satisfies_cocycle_condition() const {
    unsigned N = 0;
    for (const auto& [key, v] : lifts) N = std::max({N, key.first, key.second});
    for (unsigned i = 0; i <= N; ++i)
        for (unsigned j = 0; j <= N; ++j)
            for (unsigned k = 0; k <= N; ++k) {
                auto prod = ring->mul(ring->mul(lift(i, j), lift(j, k)), lift(k, i));
                if (!ring->equal(prod, ring->one())) return false;
            }
    return true;
}

Transitions TeichmullerCocycle::truncate(unsigned N) const {
    Transitions t;
    t.N = N;
    for (const auto& [key, v] : lifts) t.f[key] = v.components.front();
    return t;
}

TeichmullerCocycle teichmuller_cocycle(std::shared_ptr<const LaurentRing> ring, const Transitions& t, unsigned n) {
    const unsigned N = t.N;
    if (!ring->degree_zero() || ring->variables() != N + 1)
        throw InvalidArgument("transitions must live in the degree-zero Laurent ring of P^N");
    for (auto rule : ring->rules())
        if (rule != ExponentRule::Any) throw InvalidArgument("transitions need all exponents allowed");
    auto f = [&](unsigned i, unsigned j) {
        if (i == j) return ring->one();
        auto it = t.f.find({i, j});
        if (it == t.f.end())
            throw NotACocycle("missing transition f_" + std::to_string(i) + std::to_string(j));
        return it->second;
    };
    for (unsigned i = 0; i <= N; ++i)
        for (unsigned j = 0; j <= N; ++j)
            for (unsigned k = 0; k <= N; ++k)
                if (!ring->eq(ring->mul(ring->mul(f(i, j), f(j, k)), f(k, i)), ring->one()))
                    throw NotACocycle("f_ij f_jk f_ki != 1 for (i, j, k) = (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ", " + std::to_string(k) + ")");
    TeichmullerCocycle c;
    c.ring = std::make_shared<const LaurentWitt>(ring, n);
    for (const auto& [key, value] : t.f) c.lifts.emplace(key, c.ring->teichmuller(value));
    if (!c.satisfies_cocycle_condition()) throw std::logic_error("Teichmüller lifts lost the cocycle condition");
    return c;
}

LaurentPoly local_equation(const LaurentRing& ring, const RDivisor& D, unsigned i) {
    if (!D.is_integral()) throw NotCartier("divisor " + D.to_string() + " has a fractional coefficient");
    if (i > D.N()) throw ChartMismatch("chart index above N");
    std::vector<int> e(D.N() + 1, 0);
    for (unsigned j = 0; j <= D.N(); ++j) {
        if (j == i) continue;
        e[j] = static_cast<int>(floor_of(D.coefficients()[j]));
        e[i] -= e[j];
    }
    return ring.monomial(ring.field().one(), e);
}

TeichmullerReport div_vs_teichmuller(std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                     unsigned i, int samples, std::mt19937_64& rng) {
    if (!D.is_integral()) throw NotCartier("divisor " + D.to_string() + " has a fractional coefficient");
    const unsigned N = D.N();
    auto space = WittSectionSpace::make(field, D, n, Chart{i});
    const auto& W = space->ambient();
    const auto& L = W.base();
    const auto& chart = space->chart_ring().base();
    const auto f = W.teichmuller(local_equation(L, D, i));
    const auto f_inv = W.teichmuller(local_equation(L, D.scaled(-1), i));
    const auto a = D.floor();
    const unsigned p = field->characteristic();

    std::uniform_int_distribution<int> terms(1, 2), offset(-1, 2);
    TeichmullerReport report;
    for (int s = 0; s < samples; ++s, ++report.samples) {
        // exponents straddling the boundary u_j + p^m a_j >= 0
        std::vector<LaurentPoly> comps;
        long long pm = 1;
        for (unsigned m = 0; m < n; ++m, pm *= p) {
            std::vector<std::pair<FieldElem, std::vector<int>>> monomials;
            for (int t = terms(rng); t > 0; --t) {
                std::vector<int> u(N + 1, 0);
                for (unsigned j = 0; j <= N; ++j) {
                    if (j == i) continue;
                    u[j] = static_cast<int>(-pm * a[j]) + offset(rng);
                    u[i] -= u[j];
                }
                monomials.emplace_back(field->random(rng), u);
            }
            comps.push_back(L.make(monomials));
        }
        auto phi = W.make(std::move(comps));
        const bool member = space->contains(phi);
        report.members += member;
        auto twisted = W.mul(f, phi);
        bool in_chart = true;
        for (const auto& c : twisted.components) in_chart = in_chart && chart.contains(c);
        if (member != in_chart) ++report.disagreements;

        auto psi = space->random_scalar(rng);
        if (!space->contains(W.mul(f_inv, psi))) ++report.disagreements;
    }
    return report;
}

}  // namespace wittdiv
