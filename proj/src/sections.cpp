#include "wittdiv/sections.hpp"

#include "wittdiv/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace wittdiv {

namespace {

long long ipow(long long base, unsigned e) {
    long long r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

// Enumerates every tuple in the product of the given value lists.
template <class F>
void for_each_tuple(const std::vector<std::vector<FieldElem>>& choices, F&& visit) {
    std::vector<std::size_t> idx(choices.size(), 0);
    std::vector<FieldElem> cur(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) {
        if (choices[i].empty()) return;
        cur[i] = choices[i][0];
    }
    while (true) {
        visit(cur);
        std::size_t i = 0;
        while (i < choices.size()) {
            if (++idx[i] < choices[i].size()) {
                cur[i] = choices[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = choices[i][0];
            ++i;
        }
        if (i == choices.size()) return;
    }
}

std::uint64_t code_of(const std::vector<FieldElem>& c, std::uint32_t q) {
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * q + c[i].v;
    return v;
}

}  // namespace

std::vector<Chart> charts_of_size(unsigned N, unsigned size) {
    std::vector<Chart> out;
    if (size == 0 || size > N + 1) return out;
    std::vector<bool> pick(N + 1, false);
    std::fill(pick.begin(), pick.begin() + size, true);
    do {
        Chart I;
        for (unsigned j = 0; j <= N; ++j)
            if (pick[j]) I.push_back(j);
        out.push_back(I);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

void validate_chart(unsigned N, const Chart& I) {
    if (I.empty()) throw ChartMismatch("empty chart index set");
    for (std::size_t i = 0; i < I.size(); ++i) {
        if (I[i] > N) throw ChartMismatch("chart index " + std::to_string(I[i]) + " above N");
        if (i > 0 && I[i] <= I[i - 1]) throw ChartMismatch("chart index set must be sorted and distinct");
    }
}

GradedDegree GradedDegree::make(unsigned p, unsigned k, std::vector<long long> num) {
    GradedDegree e{p, k, std::move(num)};
    while (e.k > 0 && std::all_of(e.num.begin(), e.num.end(), [p](long long v) { return v % p == 0; })) {
        for (auto& v : e.num) v /= p;
        --e.k;
    }
    return e;
}

std::optional<std::vector<long long>> GradedDegree::at_level(unsigned m) const {
    std::vector<long long> out(num.size());
    if (m >= k) {
        long long s = ipow(p, m - k);
        for (std::size_t j = 0; j < num.size(); ++j) out[j] = num[j] * s;
        return out;
    }
    long long d = ipow(p, k - m);
    for (std::size_t j = 0; j < num.size(); ++j) {
        if (num[j] % d != 0) return std::nullopt;
        out[j] = num[j] / d;
    }
    return out;
}

GradedDegree GradedDegree::scaled_up(unsigned t) const {
    if (t <= k) return make(p, k - t, num);
    auto v = num;
    long long s = ipow(p, t - k);
    for (auto& x : v) x *= s;
    return make(p, 0, v);
}

GradedDegree GradedDegree::scaled_down(unsigned t) const { return make(p, k + t, num); }

mpq_class GradedDegree::coordinate(unsigned j) const {
    mpq_class c(mpz_class(static_cast<long>(num.at(j))), mpz_class(static_cast<long>(ipow(p, k))));
    c.canonicalize();
    return c;
}

long long GradedDegree::total() const { return std::accumulate(num.begin(), num.end(), 0LL); }

std::string GradedDegree::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t j = 0; j < num.size(); ++j) os << (j ? "," : "") << coordinate(static_cast<unsigned>(j));
    os << ')';
    return os.str();
}

std::vector<GradedDegree> degree_window(unsigned N, unsigned p, unsigned k, long long radius) {
    const long long bound = radius * ipow(p, k);
    std::vector<GradedDegree> out;
    std::vector<long long> num(N + 1, -bound);
    while (true) {
        long long partial = 0;
        for (unsigned j = 0; j < N; ++j) partial += num[j];
        if (-partial >= -bound && -partial <= bound) {
            auto v = num;
            v[N] = -partial;
            out.push_back(GradedDegree::make(p, k, v));
        }
        unsigned j = 0;
        while (j < N && num[j] == bound) num[j++] = -bound;
        if (j == N) break;
        ++num[j];
    }
    std::sort(out.begin(), out.end(), [](const GradedDegree& a, const GradedDegree& b) {
        for (std::size_t j = 0; j < a.num.size(); ++j) {
            auto ca = a.coordinate(static_cast<unsigned>(j)), cb = b.coordinate(static_cast<unsigned>(j));
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    return out;
}

bool monomial_member(std::span<const long long> u, const RDivisor& D, unsigned p, unsigned m, const Chart& I) {
    if (u.size() != D.N() + 1) throw ChartMismatch("exponent vector does not match P^N");
    if (std::accumulate(u.begin(), u.end(), 0LL) != 0) return false;
    auto b = D.floor_scaled(p, m);
    for (unsigned j = 0; j <= D.N(); ++j) {
        if (std::binary_search(I.begin(), I.end(), j)) continue;
        if (u[j] + b[j] < 0) return false;
    }
    return true;
}

bool membership(const LaurentRing& ring, const LaurentPoly& phi, const RDivisor& D, unsigned p, unsigned m,
                const Chart& I) {
    validate_chart(D.N(), I);
    if (ring.variables() != D.N() + 1 || !ring.degree_zero())
        throw ChartMismatch("element does not live in a chart ring of P^" + std::to_string(D.N()));
    if (!ring.contains(phi)) return false;
    std::vector<long long> u(D.N() + 1);
    for (const auto& t : phi.terms) {
        for (unsigned j = 0; j <= D.N(); ++j) u[j] = t.exponent[j];
        if (!monomial_member(u, D, p, m, I)) return false;
    }
    return true;
}

std::vector<unsigned> admissible_levels(const GradedDegree& e, const RDivisor& D, unsigned n, const Chart& I) {
    std::vector<unsigned> out;
    for (unsigned m = 0; m < n; ++m) {
        auto u = e.at_level(m);
        if (u && monomial_member(*u, D, e.p, m, I)) out.push_back(m);
    }
    return out;
}

bool perturbation_invariance(const RDivisor& D, const RDivisor& Dprime, unsigned p, unsigned n) {
    if (!D.leq(Dprime)) throw InvalidArgument("perturbation_invariance expects D <= D'");
    for (unsigned m = 0; m < n; ++m)
        if (D.floor_scaled(p, m) != Dprime.floor_scaled(p, m)) return false;
    return true;
}

// --- WittSectionSpace -------------------------------------------------------

WittSectionSpace::WittSectionSpace(std::shared_ptr<const GaloisField> field, RDivisor D, unsigned n, Chart I)
    : field_(field),
      D_(std::move(D)),
      n_(n),
      I_(std::move(I)),
      ambient_(std::make_shared<const LaurentRing>(LaurentRing::function_field(field, D_.N())), n),
      chart_(std::make_shared<const LaurentRing>(LaurentRing::chart(field, D_.N(), I_)), n) {}

std::shared_ptr<const WittSectionSpace> WittSectionSpace::make(std::shared_ptr<const GaloisField> field, RDivisor D,
                                                               unsigned n, Chart I) {
    validate_chart(D.N(), I);
    if (D.N() + 1 > kMaxLaurentVars) throw InvalidArgument("P^N with N + 1 above the Laurent variable limit");
    return std::shared_ptr<const WittSectionSpace>(new WittSectionSpace(std::move(field), std::move(D), n, std::move(I)));
}

bool WittSectionSpace::contains(const LaurentWittVector& v) const {
    if (v.p != p() || v.components.size() != n_) return false;
    for (unsigned m = 0; m < n_; ++m)
        if (!membership(ambient_.base(), v.components[m], D_, p(), m, I_)) return false;
    return true;
}

WittSection WittSectionSpace::make_section(const LaurentWittVector& v) const {
    if (!contains(v)) throw MembershipViolation("Witt vector is not a section of W_" + std::to_string(n_) + "O(" +
                                                D_.to_string() + ") on the chart");
    return {shared_from_this(), v};
}

WittSection WittSectionSpace::zero() const { return {shared_from_this(), ambient_.zero()}; }

void WittSectionSpace::check_same(const WittSection& s) const {
    if (!s.space) throw ChartMismatch("section without a space");
    if (s.space.get() == this) return;
    const auto& o = *s.space;
    if (!(o.D_ == D_) || o.n_ != n_ || o.I_ != I_ || !o.field_->same_field(*field_))
        throw ChartMismatch("sections of different chart, level or divisor");
}

WittSection WittSectionSpace::add(const WittSection& a, const WittSection& b) const {
    check_same(a);
    check_same(b);
    return make_section(ambient_.add(a.value, b.value));
}

WittSection WittSectionSpace::neg(const WittSection& a) const {
    check_same(a);
    return make_section(ambient_.neg(a.value));
}

WittSection WittSectionSpace::scale(const LaurentWittVector& a, const WittSection& s) const {
    check_same(s);
    for (const auto& c : a.components)
        if (!chart_.base().contains(c)) throw ChartMismatch("scalar is not in W_n of the chart ring");
    return make_section(ambient_.mul(a, s.value));
}

WittSection WittSectionSpace::random_member(std::mt19937_64& rng, int max_terms, int radius) const {
    const unsigned N = D_.N();
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<int> step(0, radius);
    std::uniform_int_distribution<int> free(-radius, radius);
    std::vector<LaurentPoly> comps;
    for (unsigned m = 0; m < n_; ++m) {
        auto b = D_.floor_scaled(p(), m);
        std::vector<std::pair<FieldElem, std::vector<int>>> terms;
        const int k = count(rng);
        for (int t = 0; t < k; ++t) {
            for (int attempt = 0; attempt < 100; ++attempt) {
                std::vector<long long> u(N + 1);
                long long total = 0;
                for (unsigned j = 0; j < N; ++j) {
                    bool in_chart = std::binary_search(I_.begin(), I_.end(), j);
                    u[j] = in_chart ? free(rng) : -b[j] + step(rng);
                    total += u[j];
                }
                u[N] = -total;
                if (!monomial_member(u, D_, p(), m, I_)) continue;
                auto c = field_->random(rng);
                if (field_->is_zero(c)) c = field_->one();
                terms.push_back({c, std::vector<int>(u.begin(), u.end())});
                break;
            }
        }
        comps.push_back(ambient_.base().make(terms));
    }
    return make_section(ambient_.make(comps));
}

LaurentWittVector WittSectionSpace::random_scalar(std::mt19937_64& rng, int max_terms, int radius) const {
    std::vector<LaurentPoly> comps;
    for (unsigned m = 0; m < n_; ++m) comps.push_back(chart_.base().random(rng, max_terms, radius));
    return chart_.make(comps);
}

unsigned WittSectionSpace::graded_log_order(const GradedDegree& e) const {
    return field_->degree() * static_cast<unsigned>(admissible_levels(e, D_, n_, I_).size());
}

LaurentWittVector WittSectionSpace::homogeneous(const GradedDegree& e, const WittVector<FieldElem>& c) const {
    if (c.components.size() != n_) throw LengthMismatch("coefficient vector has the wrong length");
    std::vector<LaurentPoly> comps;
    for (unsigned m = 0; m < n_; ++m) {
        auto u = e.at_level(m);
        if (!u) {
            if (!field_->is_zero(c.components[m]))
                throw InvalidArgument("nonzero coefficient at a level where p^m e is not integral");
            comps.emplace_back();
            continue;
        }
        std::vector<int> ui(u->begin(), u->end());
        comps.push_back(ambient_.base().monomial(c.components[m], std::span<const int>(ui)));
    }
    return ambient_.make(comps);
}

std::uint64_t WittSectionSpace::graded_order_by_enumeration(const GradedDegree& e) const {
    std::vector<std::vector<FieldElem>> choices(n_);
    for (unsigned m = 0; m < n_; ++m) {
        if (e.at_level(m)) {
            for (std::uint32_t v = 0; v < field_->order(); ++v) choices[m].push_back({v});
        } else {
            choices[m].push_back(field_->zero());
        }
    }
    std::uint64_t count = 0;
    for_each_tuple(choices, [&](const std::vector<FieldElem>& c) {
        if (contains(homogeneous(e, {p(), c}))) ++count;
    });
    return count;
}

// --- exact sequence ----------------------------------------------------------

bool ExactSequenceReport::holds() const {
    return std::all_of(pieces.begin(), pieces.end(), [](const PieceOrders& x) { return x.holds(); });
}

ExactSequenceReport exact_sequence_orders(std::shared_ptr<const GaloisField> field, const RDivisor& D, unsigned n,
                                          unsigned m, const Chart& I, long long radius) {
    if (n == 0 || m == 0) throw InvalidArgument("exact_sequence_orders needs n, m >= 1");
    const unsigned p = field->characteristic();
    const std::uint32_t q = field->order();
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    auto total_space = WittSectionSpace::make(field, D, n + m, I);
    auto quotient_space = WittSectionSpace::make(field, D, n, I);
    auto sub_space = WittSectionSpace::make(field, D.scaled(mpq_class(pn)), m, I);

    auto members = [&](const WittSectionSpace& S, const GradedDegree& e) {
        std::vector<std::vector<FieldElem>> choices(S.length());
        for (unsigned l = 0; l < S.length(); ++l) {
            if (e.at_level(l)) {
                for (std::uint32_t v = 0; v < q; ++v) choices[l].push_back({v});
            } else {
                choices[l].push_back(field->zero());
            }
        }
        std::vector<std::vector<FieldElem>> out;
        for_each_tuple(choices, [&](const std::vector<FieldElem>& c) {
            if (S.contains(S.homogeneous(e, {p, c}))) out.push_back(c);
        });
        return out;
    };

    ExactSequenceReport report;
    for (const auto& e : degree_window(D.N(), p, n + m - 1, radius)) {
        PieceOrders piece{e};
        auto total = members(*total_space, e);
        auto quotient = members(*quotient_space, e);
        const auto e_sub = e.scaled_up(n);
        auto sub = members(*sub_space, e_sub);
        piece.total = total.size();
        piece.quotient = quotient.size();
        piece.sub = sub.size();

        std::set<std::uint64_t> kernel, image, truncations;
        for (const auto& c : total) {
            std::vector<FieldElem> head(c.begin(), c.begin() + n);
            truncations.insert(code_of(head, q));
            if (std::all_of(head.begin(), head.end(), [](FieldElem x) { return x.v == 0; }))
                kernel.insert(code_of(c, q));
        }
        for (const auto& c : sub) {
            std::vector<FieldElem> shifted(n, field->zero());
            shifted.insert(shifted.end(), c.begin(), c.end());
            if (!total_space->contains(total_space->homogeneous(e, {p, shifted}))) piece.image_is_kernel = false;
            image.insert(code_of(shifted, q));
        }
        piece.v_injective = image.size() == sub.size();
        if (image != kernel) piece.image_is_kernel = false;
        // R is onto the quotient piece
        if (truncations.size() != quotient.size()) piece.image_is_kernel = false;
        report.pieces.push_back(std::move(piece));
    }
    return report;
}

bool linear_equivalence_check(std::shared_ptr<const GaloisField> field, const RDivisor& D,
                              const std::vector<long long>& u, unsigned n, const Chart& I, int samples,
                              std::mt19937_64& rng) {
    const unsigned N = D.N();
    if (u.size() != N + 1 || std::accumulate(u.begin(), u.end(), 0LL) != 0)
        throw InvalidArgument("x^u must have N+1 exponents summing to 0");
    std::vector<mpq_class> shift;
    for (auto v : u) shift.emplace_back(static_cast<long>(v));
    RDivisor Dp = D + RDivisor(N, shift);
    auto S = WittSectionSpace::make(field, D, n, I);
    auto Sp = WittSectionSpace::make(field, Dp, n, I);
    const auto& W = S->ambient();
    const auto& L = W.base();
    std::vector<int> minus_u, plus_u;
    for (auto v : u) {
        minus_u.push_back(static_cast<int>(-v));
        plus_u.push_back(static_cast<int>(v));
    }
    auto to_Dp = W.teichmuller(L.monomial(field->one(), std::span<const int>(minus_u)));
    auto to_D = W.teichmuller(L.monomial(field->one(), std::span<const int>(plus_u)));
    for (int i = 0; i < samples; ++i) {
        auto s = S->random_member(rng, 2, 3);
        auto image = W.mul(to_Dp, s.value);
        if (!Sp->contains(image) || !(W.mul(to_D, image) == s.value)) return false;
        auto t = Sp->random_member(rng, 2, 3);
        auto back = W.mul(to_D, t.value);
        if (!S->contains(back) || !(W.mul(to_Dp, back) == t.value)) return false;
        // arbitrary vectors: membership is preserved in both directions
        std::vector<LaurentPoly> comps;
        for (unsigned m = 0; m < n; ++m) comps.push_back(L.random(rng, 2, 4));
        auto v = W.make(comps);
        if (S->contains(v) != Sp->contains(W.mul(to_Dp, v))) return false;
    }
    return true;
}

}  // namespace wittdiv
