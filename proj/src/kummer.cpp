#include "wittdiv/kummer.hpp"

#include "wittdiv/errors.hpp"
#include "wittdiv/universal_poly.hpp"

#include <sstream>
#include <unordered_set>

namespace wittdiv {

namespace {

std::vector<std::vector<long long>> level_floors(const std::vector<mpq_class>& a, unsigned p, unsigned n) {
    std::vector<std::vector<long long>> out;
    mpz_class pm = 1;
    for (unsigned m = 0; m < n; ++m, pm *= p) {
        std::vector<long long> row;
        for (const auto& c : a) row.push_back(floor_of(c * pm));
        out.push_back(std::move(row));
    }
    return out;
}

LaurentPoly map_terms(const LaurentRing& target, const LaurentPoly& a,
                      const std::function<void(LaurentTerm&)>& f) {
    std::vector<std::pair<FieldElem, std::vector<int>>> monomials;
    for (auto t : a.terms) {
        f(t);
        monomials.emplace_back(t.coeff, std::vector<int>(t.exponent.begin(), t.exponent.begin() + target.variables()));
    }
    return target.make(monomials);
}

LaurentWittVector map_components(const LaurentWitt& target, const LaurentWittVector& w,
                                 const std::function<void(LaurentTerm&)>& f) {
    std::vector<LaurentPoly> comps;
    for (const auto& c : w.components) comps.push_back(map_terms(target.base(), c, f));
    return target.make(std::move(comps));
}

unsigned inverse_mod(unsigned a, unsigned p) {
    unsigned r = 1;
    for (unsigned e = p - 2, b = a % p; e > 0; e >>= 1, b = b * b % p)
        if (e & 1u) r = r * b % p;
    return r;
}

void trim(std::vector<unsigned>& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

// gcd of two polynomials over F_p, coefficients from the constant term up.
std::vector<unsigned> poly_gcd(std::vector<unsigned> f, std::vector<unsigned> g, unsigned p) {
    trim(f);
    trim(g);
    while (!g.empty()) {
        const unsigned lead_inv = inverse_mod(g.back(), p);
        while (f.size() >= g.size()) {
            const unsigned c = f.back() * lead_inv % p;
            const std::size_t shift = f.size() - g.size();
            for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] = (f[shift + i] + p * p - c * g[i]) % p;
            trim(f);
            if (f.empty()) break;
        }
        std::swap(f, g);
    }
    return f;
}

}  // namespace

bool affine_member(const LaurentWittVector& v, const std::vector<mpq_class>& a) {
    auto floors = level_floors(a, v.p, static_cast<unsigned>(v.length()));
    for (std::size_t m = 0; m < v.length(); ++m)
        for (const auto& t : v.components[m].terms)
            for (std::size_t j = 0; j < a.size(); ++j)
                if (t.exponent[j] + floors[m][j] < 0) return false;
    return true;
}

LaurentWittVector random_affine_member(const LaurentWitt& ring, const std::vector<mpq_class>& a, std::mt19937_64& rng,
                                       int max_terms, int spread) {
    auto floors = level_floors(a, ring.p(), ring.length());
    std::uniform_int_distribution<int> count(0, max_terms), offset(0, spread);
    std::vector<LaurentPoly> comps;
    for (unsigned m = 0; m < ring.length(); ++m) {
        std::vector<std::pair<FieldElem, std::vector<int>>> monomials;
        for (int t = count(rng); t > 0; --t) {
            std::vector<int> u;
            for (std::size_t j = 0; j < a.size(); ++j) u.push_back(static_cast<int>(-floors[m][j]) + offset(rng));
            monomials.emplace_back(ring.base().field().random(rng), u);
        }
        comps.push_back(ring.base().make(monomials));
    }
    return ring.make(std::move(comps));
}

// --- KummerCover -------------------------------------------------------------

KummerCover::KummerCover(std::shared_ptr<const GaloisField> field, unsigned ell, unsigned n)
    : field_(field),
      ell_(ell),
      zeta_(),
      base_(std::make_shared<const LaurentRing>(field, std::vector<ExponentRule>{ExponentRule::Any})),
      cover_(std::make_shared<const LaurentRing>(field, std::vector<ExponentRule>{ExponentRule::Any})),
      base_witt_(base_, n),
      cover_witt_(cover_, n) {
    if (ell < 2) throw InvalidArgument("cover degree must be at least 2");
    if (ell % field->characteristic() == 0) throw OrderDivisibleByP("p divides the group order " + std::to_string(ell));
    zeta_ = field->root_of_unity(ell);
    WittRing<GaloisField> W(field, n);
    ell_inverse_ = W.inverse(W.from_integer(ell));
}

LaurentPoly KummerCover::sigma(const LaurentPoly& b, unsigned i) const {
    return map_terms(*cover_, b, [&](LaurentTerm& t) {
        long long k = (static_cast<long long>(t.exponent[0]) * i) % ell_;
        if (k < 0) k += ell_;
        t.coeff = field_->mul(t.coeff, field_->pow(zeta_, static_cast<std::uint64_t>(k)));
    });
}

LaurentWittVector KummerCover::galois_on_witt(const LaurentWittVector& w, unsigned i) const {
    std::vector<LaurentPoly> comps;
    for (const auto& c : w.components) comps.push_back(sigma(c, i));
    return cover_witt_.make(std::move(comps));
}

LaurentWittVector KummerCover::pullback(const LaurentWittVector& phi) const {
    return map_components(cover_witt_, phi, [&](LaurentTerm& t) { t.exponent[0] *= static_cast<int>(ell_); });
}

mpq_class KummerCover::pulled_back_divisor(const mpq_class& a) const {
    mpq_class b = a * static_cast<unsigned long>(ell_);
    b.canonicalize();
    if (b.get_den() != 1)
        throw DivisorNotCompatible("ell * D is not integral: " + b.get_str() + " along div(y)");
    return b;
}

LaurentWittVector KummerCover::pullback_section(const LaurentWittVector& phi, const mpq_class& a) const {
    const auto b = pulled_back_divisor(a);
    if (!base_member(phi, a)) throw MembershipViolation("not a section of W_n O_A(D)");
    auto psi = pullback(phi);
    if (!cover_member(psi, b)) throw std::logic_error("pullback left W_n O_B(f^*D)");
    return psi;
}

std::optional<LaurentWittVector> KummerCover::descend(const LaurentWittVector& w) const {
    for (const auto& c : w.components)
        for (const auto& t : c.terms)
            if (t.exponent[0] % static_cast<int>(ell_) != 0) return std::nullopt;
    return map_components(base_witt_, w, [&](LaurentTerm& t) { t.exponent[0] /= static_cast<int>(ell_); });
}

LaurentWittVector KummerCover::average(const LaurentWittVector& w) const {
    auto sum = w;
    for (unsigned i = 1; i < ell_; ++i) sum = cover_witt_.add(sum, galois_on_witt(w, i));
    std::vector<LaurentPoly> u;
    for (auto c : ell_inverse_.components) u.push_back(cover_->constant(c));
    return cover_witt_.mul(cover_witt_.make(std::move(u)), sum);
}

LaurentWittVector KummerCover::trace(const LaurentWittVector& w) const {
    auto t = descend(average(w));
    if (!t) throw std::logic_error("Galois average is not invariant");
    return *t;
}

bool KummerCover::base_member(const LaurentWittVector& phi, const mpq_class& a) const {
    return affine_member(phi, {a});
}

bool KummerCover::cover_member(const LaurentWittVector& psi, const mpq_class& b) const {
    return affine_member(psi, {b});
}

TraceSplitReport trace_split_check(const KummerCover& cover, const mpq_class& a, int samples, std::mt19937_64& rng) {
    TraceSplitReport r;
    const auto b = cover.pulled_back_divisor(a);
    const auto& WB = cover.cover_witt();
    for (int s = 0; s < samples; ++s, ++r.samples) {
        auto phi = random_affine_member(cover.base_witt(), {a}, rng);
        auto pulled = cover.pullback_section(phi, a);
        if (!cover.base_witt().equal(cover.trace(pulled), phi)) ++r.splitting_failures;

        // alternate generic and invariant vectors on the cover
        auto psi = s % 2 ? random_affine_member(WB, {b}, rng) : pulled;
        auto t = cover.trace(psi);
        if (!cover.base_member(t, a)) ++r.descent_failures;
        auto proj = cover.pullback(t);
        if (!WB.equal(cover.pullback(cover.trace(proj)), proj)) ++r.idempotence_failures;
        bool fixed = WB.equal(cover.galois_on_witt(psi), psi);
        if (fixed != WB.equal(proj, psi)) ++r.invariance_failures;
        if (!WB.equal(cover.galois_on_witt(psi, cover.ell()), psi)) ++r.order_failures;
    }
    return r;
}

// --- étale extension ----------------------------------------------------------

EtaleExtension EtaleExtension::make(unsigned p, unsigned ell) {
    if (!is_prime(ell)) throw InvalidArgument("cyclotomic extension needs a prime ell");
    std::vector<unsigned> phi(ell, 1);
    EtaleExtension ext{p, ell, GaloisField::prime(p), GaloisField::with_modulus(p, phi), false};
    std::vector<unsigned> derivative;
    for (unsigned i = 1; i < ell; ++i) derivative.push_back(i % p);
    ext.etale = poly_gcd(phi, derivative, p).size() == 1;
    return ext;
}

EtaleReport etale_pullback_iso_check(const EtaleExtension& ext, const std::vector<mpq_class>& a, unsigned n,
                                     long long radius, int samples, std::mt19937_64& rng) {
    EtaleReport report;
    if (!ext.etale) {
        report.passed = false;
        report.witness = "modulus shares a factor with its derivative";
        return report;
    }
    const unsigned p = ext.p;
    const auto floors = level_floors(a, p, n);
    FiniteWitt Wp(ext.base_field, n), Wq(ext.extension_field, n);
    const auto basis = ext.extension_field->basis();
    const unsigned r = ext.rank();
    if (basis.size() != r) throw std::logic_error("extension degree differs from the rank");

    auto embed = [&](FiniteWitt::Code c) {
        FiniteWitt::Code out = 0;
        for (unsigned m = 0; m < n; ++m)
            out = Wq.with_component(out, m, ext.extension_field->from_int(Wp.component(c, m).v));
        return out;
    };

    // Each piece depends only on its first admissible level, so the map is
    // checked once per level and the pieces are only counted.
    std::vector<bool> checked(n, false);
    long long pk = 1;
    for (unsigned m = 1; m < n; ++m) pk *= p;
    const long long bound = radius * pk;
    std::vector<long long> num(a.size(), -bound);
    while (true) {
        unsigned first = n;
        bool interval = true;
        long long scale = 1;  // p^m
        for (unsigned m = 0; m < n; ++m, scale *= p) {
            bool ok = true;
            for (std::size_t j = 0; j < a.size() && ok; ++j) {
                long long v = num[j] * scale;
                if (v % pk != 0 || v / pk + floors[m][j] < 0) ok = false;
            }
            if (ok && first == n) first = m;
            if (!ok && first != n) interval = false;
        }
        if (!interval) throw std::logic_error("admissible levels do not form an interval");
        if (first < n) {
            ++report.pieces;
            if (!checked[first]) {
                checked[first] = true;
                const unsigned levels = n - first;
                std::uint64_t slot = 1, source = 1, target = 1;
                for (unsigned i = 0; i < levels; ++i) slot *= p;
                for (unsigned i = 0; i < r; ++i) source *= slot;
                for (unsigned i = 0; i < levels; ++i) target *= Wq.q();
                if (source != target) {
                    report.passed = false;
                    report.witness = "orders differ at level " + std::to_string(first);
                    return report;
                }
                std::uint64_t below = 1;
                for (unsigned i = 0; i < first; ++i) below *= p;
                std::unordered_set<FiniteWitt::Code> images;
                for (std::uint64_t idx = 0; idx < source; ++idx) {
                    FiniteWitt::Code image = 0;
                    std::uint64_t rest = idx;
                    for (unsigned i = 0; i < r; ++i, rest /= slot) {
                        auto phi = static_cast<FiniteWitt::Code>((rest % slot) * below);
                        image = Wq.add(image, Wq.teichmuller_scale(basis[i], embed(phi)));
                    }
                    images.insert(image);
                }
                if (images.size() != source) {
                    report.passed = false;
                    report.witness = "not injective on pieces starting at level " + std::to_string(first);
                    return report;
                }
            }
        }
        std::size_t j = 0;
        while (j < num.size() && num[j] == bound) num[j++] = -bound;
        if (j == num.size()) break;
        ++num[j];
    }

    std::vector<ExponentRule> rules(a.size(), ExponentRule::Any);
    LaurentWitt WA(std::make_shared<const LaurentRing>(ext.base_field, rules), n);
    LaurentWitt WC(std::make_shared<const LaurentRing>(ext.extension_field, rules), n);
    for (int s = 0; s < samples; ++s, ++report.samples) {
        auto image = WC.zero();
        bool all_zero = true;
        for (unsigned i = 0; i < r; ++i) {
            auto phi = random_affine_member(WA, a, rng);
            all_zero = all_zero && WA.is_zero(phi);
            auto lifted = map_components(WC, phi, [&](LaurentTerm& t) {
                t.coeff = ext.extension_field->from_int(t.coeff.v);
            });
            image = WC.add(image, WC.mul(WC.teichmuller(WC.base().constant(basis[i])), lifted));
        }
        if (!affine_member(image, a) || (WC.is_zero(image) && !all_zero)) {
            std::ostringstream os;
            os << "sample " << s << " maps outside W_n O_C(D) or to zero";
            report.passed = false;
            report.witness = os.str();
            return report;
        }
    }
    return report;
}

}  // namespace wittdiv
