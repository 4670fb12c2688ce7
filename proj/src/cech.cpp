#include "wittdiv/cech.hpp"

#include "wittdiv/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wittdiv {

namespace {

std::uint64_t binomial(long long n, long long k) {
    if (k < 0 || n < k) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    if (!r.fits_ulong_p()) throw std::overflow_error("binomial coefficient above 2^64");
    return r.get_ui();
}

// log_p of an exact power of p.
unsigned exact_log(std::uint64_t value, unsigned p) {
    unsigned k = 0;
    while (value > 1) {
        if (value % p != 0) throw std::logic_error("group order is not a power of p");
        value /= p;
        ++k;
    }
    return k;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

const std::vector<Chart> kNoCharts;
const std::vector<unsigned> kNoLevels;

}  // namespace

std::vector<std::uint64_t> classical_h(unsigned N, long long d) {
    std::vector<std::uint64_t> h(N + 1, 0);
    if (d >= 0) h[0] = binomial(d + N, N);
    if (d <= -static_cast<long long>(N) - 1) h[N] += binomial(-d - 1, N);
    return h;
}

LevelFloors::LevelFloors(const RDivisor& D, unsigned p_, unsigned n) : p(p_) {
    for (unsigned m = 0; m < n; ++m) b.push_back(D.floor_scaled(p, m));
}

bool LevelFloors::admits(const std::vector<long long>& u, unsigned m, const Chart& I) const {
    if (std::accumulate(u.begin(), u.end(), 0LL) != 0) return false;
    const auto& bm = b.at(m);
    std::size_t next = 0;
    for (unsigned j = 0; j < u.size(); ++j) {
        if (next < I.size() && I[next] == j) {
            ++next;
            continue;
        }
        if (u[j] + bm[j] < 0) return false;
    }
    return true;
}

// --- GradedCechComplex -------------------------------------------------------

GradedCechComplex::GradedCechComplex(std::shared_ptr<const FiniteWitt> witt, const RDivisor& D, const GradedDegree& e)
    : witt_(std::move(witt)), N_(D.N()), e_(e) {
    if (e.size() != N_ + 1) throw InvalidArgument("multidegree does not match P^N");
    if (e.p != witt_->p()) throw InvalidArgument("multidegree uses a different prime");
    build(LevelFloors(D, witt_->p(), witt_->length()));
}

GradedCechComplex::GradedCechComplex(std::shared_ptr<const FiniteWitt> witt, const LevelFloors& floors, unsigned N,
                                     const GradedDegree& e)
    : witt_(std::move(witt)), N_(N), e_(e) {
    if (e.size() != N_ + 1) throw InvalidArgument("multidegree does not match P^N");
    build(floors);
}

void GradedCechComplex::build(const LevelFloors& floors) {
    const unsigned n = witt_->length();
    if (e_.total() != 0) throw InvalidArgument("multidegree must have total degree 0");
    std::vector<std::optional<std::vector<long long>>> at(n);
    for (unsigned m = 0; m < n; ++m) at[m] = e_.at_level(m);
    for (unsigned j = 0; j <= N_; ++j) {
        charts_.push_back(charts_of_size(N_, j + 1));
        std::vector<unsigned> levels;
        for (const auto& I : charts_.back()) {
            unsigned first = n;
            bool interval = true;
            for (unsigned m = 0; m < n; ++m) {
                bool ok = at[m] && floors.admits(*at[m], m, I);
                if (ok && first == n) first = m;
                if (!ok && first != n) interval = false;
            }
            if (!interval) throw std::logic_error("admissible levels do not form an interval");
            levels.push_back(first);
        }
        levels_.push_back(std::move(levels));
    }
}

const std::vector<Chart>& GradedCechComplex::charts(int j) const {
    if (j < 0 || j > static_cast<int>(N_)) return kNoCharts;
    return charts_[j];
}

const std::vector<unsigned>& GradedCechComplex::slot_levels(int j) const {
    if (j < 0 || j > static_cast<int>(N_)) return kNoLevels;
    return levels_[j];
}

std::uint64_t GradedCechComplex::group_order(int j) const {
    std::uint64_t order = 1;
    for (unsigned m0 : slot_levels(j)) order *= ipow(witt_->q(), witt_->length() - m0);
    return order;
}

bool GradedCechComplex::trivial() const {
    for (unsigned j = 0; j <= N_; ++j)
        if (group_order(static_cast<int>(j)) != 1) return false;
    return true;
}

GradedCechComplex::Cochain GradedCechComplex::zero(int j) const { return Cochain(charts(j).size(), 0); }

GradedCechComplex::Cochain GradedCechComplex::add(const Cochain& a, const Cochain& b) const {
    Cochain r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = witt_->add(a[i], b[i]);
    return r;
}

GradedCechComplex::Cochain GradedCechComplex::times_p(const Cochain& a) const {
    Cochain r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = witt_->times_p(a[i]);
    return r;
}

GradedCechComplex::Cochain GradedCechComplex::differential(int j, const Cochain& c) const {
    const auto& source = charts(j);
    const auto& target = charts(j + 1);
    if (c.size() != source.size()) throw InvalidArgument("cochain has the wrong number of slots");
    Cochain out(target.size(), 0);
    for (std::size_t t = 0; t < target.size(); ++t) {
        const Chart& J = target[t];
        FiniteWitt::Code acc = 0;
        for (std::size_t k = 0; k < J.size(); ++k) {
            Chart I;
            for (std::size_t i = 0; i < J.size(); ++i)
                if (i != k) I.push_back(J[i]);
            auto it = std::lower_bound(source.begin(), source.end(), I);
            auto v = c[static_cast<std::size_t>(it - source.begin())];
            acc = witt_->add(acc, k % 2 ? witt_->neg(v) : v);
        }
        out[t] = acc;
    }
    return out;
}

std::vector<GradedCechComplex::Cochain> GradedCechComplex::generators(int j) const {
    std::vector<Cochain> out;
    const auto& levels = slot_levels(j);
    const auto basis = witt_->field().basis();
    std::uint64_t qm = 1;
    std::vector<std::uint64_t> scale(witt_->length());
    for (unsigned m = 0; m < witt_->length(); ++m, qm *= witt_->q()) scale[m] = qm;
    for (std::size_t s = 0; s < levels.size(); ++s) {
        for (unsigned m = levels[s]; m < witt_->length(); ++m) {
            for (auto beta : basis) {
                auto g = zero(j);
                g[s] = static_cast<FiniteWitt::Code>(beta.v * scale[m]);
                out.push_back(std::move(g));
            }
        }
    }
    return out;
}

bool GradedCechComplex::d_squared_zero() const {
    for (int j = 0; j + 1 <= static_cast<int>(N_); ++j) {
        for (const auto& g : generators(j)) {
            auto dd = differential(j + 1, differential(j, g));
            if (std::any_of(dd.begin(), dd.end(), [](FiniteWitt::Code x) { return x != 0; })) return false;
        }
    }
    return true;
}

std::uint64_t GradedCechComplex::encode(int j, const Cochain& c) const {
    const auto& levels = slot_levels(j);
    std::uint64_t index = 0;
    for (std::size_t s = levels.size(); s-- > 0;) {
        const std::uint64_t below = ipow(witt_->q(), levels[s]);
        const std::uint64_t radix = ipow(witt_->q(), witt_->length() - levels[s]);
        if (c[s] % below != 0) throw InvalidArgument("cochain has a component outside its slot");
        index = index * radix + c[s] / below;
    }
    return index;
}

GradedCechComplex::Cochain GradedCechComplex::decode(int j, std::uint64_t index) const {
    const auto& levels = slot_levels(j);
    Cochain c(levels.size());
    for (std::size_t s = 0; s < levels.size(); ++s) {
        const std::uint64_t radix = ipow(witt_->q(), witt_->length() - levels[s]);
        c[s] = static_cast<FiniteWitt::Code>((index % radix) * ipow(witt_->q(), levels[s]));
        index /= radix;
    }
    return c;
}

void GradedCechComplex::for_each(int j, std::uint64_t bound, const std::function<void(const Cochain&)>& visit) const {
    const std::uint64_t order = group_order(j);
    if (order > bound)
        throw EnumerationBoundExceeded("C^" + std::to_string(j) + " has " + std::to_string(order) +
                                       " elements, above the bound " + std::to_string(bound));
    for (std::uint64_t i = 0; i < order; ++i) visit(decode(j, i));
}

std::unordered_set<std::uint64_t> GradedCechComplex::boundaries(int j, std::uint64_t bound) const {
    std::unordered_set<std::uint64_t> seen{0};
    if (j <= 0 || j > static_cast<int>(N_)) return seen;
    if (group_order(j) > bound)
        throw EnumerationBoundExceeded("C^" + std::to_string(j) + " is above the enumeration bound");
    std::vector<Cochain> images;
    for (const auto& g : generators(j - 1)) {
        auto dg = differential(j - 1, g);
        if (std::any_of(dg.begin(), dg.end(), [](FiniteWitt::Code x) { return x != 0; })) images.push_back(dg);
    }
    std::deque<Cochain> frontier{zero(j)};
    while (!frontier.empty()) {
        Cochain x = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& g : images) {
            Cochain y = add(x, g);
            if (seen.insert(encode(j, y)).second) frontier.push_back(std::move(y));
        }
    }
    return seen;
}

std::vector<unsigned> GradedCechComplex::structure_key() const {
    std::vector<unsigned> key;
    for (const auto& l : levels_) key.insert(key.end(), l.begin(), l.end());
    return key;
}

GradedCohomology graded_cohomology(const GradedCechComplex& complex, int j, std::uint64_t bound) {
    GradedCohomology out;
    const unsigned n = complex.witt().length();
    const unsigned p = complex.witt().p();
    out.log_torsion.assign(n, 0);
    if (j < 0 || j > static_cast<int>(complex.N())) return out;
    auto B = complex.boundaries(j, bound);
    std::uint64_t kernel = 0;
    std::vector<std::uint64_t> torsion(n, 0);
    complex.for_each(j, bound, [&](const GradedCechComplex::Cochain& c) {
        auto dc = complex.differential(j, c);
        if (std::any_of(dc.begin(), dc.end(), [](FiniteWitt::Code x) { return x != 0; })) return;
        ++kernel;
        auto x = c;
        for (unsigned k = 0; k < n; ++k) {
            x = complex.times_p(x);
            if (B.count(complex.encode(j, x))) ++torsion[k];
        }
    });
    if (kernel % B.size() != 0) throw std::logic_error("boundaries are not a subgroup of the cocycles");
    out.log_order = exact_log(kernel / B.size(), p);
    for (unsigned k = 0; k < n; ++k) out.log_torsion[k] = exact_log(torsion[k] / B.size(), p);
    out.log_p_rank = out.log_torsion[0];
    return out;
}

CohomologyReport witt_cech_H(int j, std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                             const GradedDegree& e, std::uint64_t bound) {
    auto W = std::make_shared<const FiniteWitt>(field, n);
    GradedCechComplex complex(W, D, e);
    auto g = graded_cohomology(complex, j, bound);
    CohomologyReport r{j, g.log_order, g.log_p_rank, "brute-force", {}};
    if (g.log_order > 0) r.pieces.emplace(e, g);
    return r;
}

long long certified_radius(const RDivisor& D, unsigned p, unsigned n) {
    const long long N = D.N();
    mpq_class radius = 0;
    std::uint64_t pm = 1;
    for (unsigned m = 0; m < n; ++m, pm *= p) {
        auto b = D.floor_scaled(p, m);
        long long sum = std::accumulate(b.begin(), b.end(), 0LL);
        long long extent = 0;
        for (unsigned j = 0; j <= D.N(); ++j) {
            if (sum >= 0)  // H^0 support: -b_j <= u_j <= sum - b_j
                extent = std::max({extent, std::llabs(b[j]), std::llabs(sum - b[j])});
            if (sum <= -N - 1)  // H^N support: sum - b_j + N <= u_j <= -b_j - 1
                extent = std::max({extent, std::llabs(sum - b[j] + N), std::llabs(b[j] + 1)});
        }
        mpq_class r(static_cast<long>(extent), static_cast<unsigned long>(pm));
        r.canonicalize();
        if (r > radius) radius = r;
    }
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), radius.get_num_mpz_t(), radius.get_den_mpz_t());
    return c.get_si();
}

CohomologyReport witt_cech_H_total(int j, std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                   std::optional<long long> radius, std::uint64_t bound) {
    CohomologyReport report{j, 0, 0, "brute-force", {}};
    if (j < 0 || j > static_cast<int>(D.N())) return report;
    const unsigned p = field->characteristic();
    const long long needed = certified_radius(D, p, n);
    if (radius && *radius < needed)
        throw WindowIncomplete("window radius " + std::to_string(*radius) + " misses the certified support (radius " +
                               std::to_string(needed) + ")");
    const long long r = radius.value_or(needed);
    auto W = std::make_shared<const FiniteWitt>(field, n);
    LevelFloors floors(D, p, n);
    std::map<std::vector<unsigned>, GradedCohomology> memo;
    for (const auto& e : degree_window(D.N(), p, n - 1, r)) {
        GradedCechComplex complex(W, floors, D.N(), e);
        if (complex.group_order(j) == 1) continue;
        auto key = complex.structure_key();
        auto it = memo.find(key);
        if (it == memo.end()) {
            if (!complex.d_squared_zero()) throw std::logic_error("d o d != 0 at " + e.to_string());
            it = memo.emplace(key, graded_cohomology(complex, j, bound)).first;
        }
        if (it->second.log_order == 0) continue;
        report.log_order += it->second.log_order;
        report.log_p_rank += it->second.log_p_rank;
        report.pieces.emplace(e, it->second);
    }
    return report;
}

VanishingCertificate vanishing_certificate(int j, const RDivisor& D, unsigned p, unsigned n) {
    VanishingCertificate cert;
    const int N = static_cast<int>(D.N());
    if (j < 0 || j > N) {
        cert.vanishes = true;
        cert.trace.push_back("no Čech cochains in degree " + std::to_string(j) + " on P^" + std::to_string(N));
        return cert;
    }
    cert.vanishes = true;
    for (unsigned m = 0; m < n; ++m) {
        long long d = floor_degree(D, p, m);
        auto h = classical_h(D.N(), d);
        std::ostringstream os;
        os << "m=" << m << ": h^" << j << "(O(" << d << ")) = " << h[j];
        cert.trace.push_back(os.str());
        if (h[j] != 0) cert.vanishes = false;
    }
    cert.trace.push_back(cert.vanishes ? "all graded pieces of the V-filtration vanish"
                                       : "inconclusive: some classical group is nonzero");
    return cert;
}

std::optional<unsigned> les_prediction(int j, const RDivisor& D, unsigned p, unsigned field_degree, unsigned n) {
    const int N = static_cast<int>(D.N());
    if (j < 0 || j > N) return 0;
    std::uint64_t total = 0;
    bool neighbours_vanish = true;
    for (unsigned m = 0; m < n; ++m) {
        auto h = classical_h(D.N(), floor_degree(D, p, m));
        if (j - 1 >= 0 && h[j - 1] != 0) neighbours_vanish = false;
        if (j + 1 <= N && h[j + 1] != 0) neighbours_vanish = false;
        total += h[j];
    }
    if (total != 0 && !neighbours_vanish) return std::nullopt;
    return static_cast<unsigned>(total * field_degree);
}

VanishingCertificate witt_serre_check(int i, unsigned N, long long s, unsigned p, unsigned n) {
    if (i <= 0) throw InvalidArgument("Witt-Serre vanishing concerns i > 0");
    auto cert = vanishing_certificate(i, RDivisor::hyperplane(N, 0, mpq_class(static_cast<long>(s))), p, n);
    if (s < 1) cert.trace.insert(cert.trace.begin(), "s = " + std::to_string(s) + ": sH is not ample");
    return cert;
}

std::vector<GrowthRow> h0_growth_table(unsigned N, std::shared_ptr<const GaloisField> field, unsigned n,
                                       long long s_first, long long s_last, std::uint64_t bound) {
    if (s_first < 0 || s_last < s_first) throw InvalidArgument("growth table needs 0 <= s_first <= s_last");
    const unsigned p = field->characteristic();
    std::vector<GrowthRow> rows;
    for (long long s = s_first; s <= s_last; ++s) {
        std::uint64_t formula = 0;
        std::uint64_t pm = 1;
        for (unsigned m = 0; m < n; ++m, pm *= p) formula += classical_h(N, s * static_cast<long long>(pm))[0];
        auto D = RDivisor::hyperplane(N, 0, mpq_class(static_cast<long>(s)));
        auto report = witt_cech_H_total(0, field, D, n, std::nullopt, bound);
        rows.push_back({s, static_cast<unsigned>(formula * field->degree()), report.log_order});
    }
    return rows;
}

}  // namespace wittdiv
