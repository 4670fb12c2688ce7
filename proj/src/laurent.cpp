#include "wittdiv/laurent.hpp"

#include "wittdiv/errors.hpp"

#include <algorithm>
#include <sstream>

namespace wittdiv {

namespace {

bool exponent_less(const LaurentTerm& a, const LaurentTerm& b) { return a.exponent < b.exponent; }

// Sorts and merges equal exponents, dropping zeros.
void canonicalize(const GaloisField& F, std::vector<LaurentTerm>& terms) {
    std::sort(terms.begin(), terms.end(), exponent_less);
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        LaurentTerm t = terms[i++];
        while (i < terms.size() && terms[i].exponent == t.exponent) t.coeff = F.add(t.coeff, terms[i++].coeff);
        if (!F.is_zero(t.coeff)) terms[out++] = t;
    }
    terms.resize(out);
}

}  // namespace

Monomial to_monomial(std::span<const int> exponent) {
    if (exponent.size() > kMaxLaurentVars) throw InvalidArgument("too many Laurent variables");
    Monomial m{};
    std::copy(exponent.begin(), exponent.end(), m.begin());
    return m;
}

LaurentRing::LaurentRing(std::shared_ptr<const GaloisField> field, std::vector<ExponentRule> rules, bool degree_zero)
    : field_(std::move(field)), rules_(std::move(rules)), degree_zero_(degree_zero) {
    if (rules_.empty() || rules_.size() > kMaxLaurentVars) throw InvalidArgument("LaurentRing needs 1..6 variables");
}

LaurentRing LaurentRing::chart(std::shared_ptr<const GaloisField> field, unsigned N, std::span<const unsigned> chart_index) {
    std::vector<ExponentRule> rules(N + 1, ExponentRule::NonNegative);
    for (unsigned i : chart_index) {
        if (i > N) throw InvalidArgument("chart index out of range");
        rules[i] = ExponentRule::Any;
    }
    return LaurentRing(std::move(field), std::move(rules), true);
}

LaurentRing LaurentRing::function_field(std::shared_ptr<const GaloisField> field, unsigned N) {
    return LaurentRing(std::move(field), std::vector<ExponentRule>(N + 1, ExponentRule::Any), true);
}

bool LaurentRing::allows(const Monomial& u) const {
    long long total = 0;
    for (std::size_t i = 0; i < kMaxLaurentVars; ++i) {
        if (i >= rules_.size()) {
            if (u[i] != 0) return false;
            continue;
        }
        if (rules_[i] == ExponentRule::NonNegative && u[i] < 0) return false;
        total += u[i];
    }
    return !degree_zero_ || total == 0;
}

bool LaurentRing::contains(const LaurentPoly& a) const {
    return std::all_of(a.terms.begin(), a.terms.end(), [&](const LaurentTerm& t) { return allows(t.exponent); });
}

LaurentPoly LaurentRing::monomial(FieldElem c, const Monomial& exponent) const {
    if (!allows(exponent)) {
        std::ostringstream os;
        os << "exponent (";
        for (std::size_t i = 0; i < rules_.size(); ++i) os << (i ? "," : "") << exponent[i];
        os << ") is outside the chart";
        throw ExponentOutOfChart(os.str());
    }
    LaurentPoly r;
    if (!field_->is_zero(c)) r.terms.push_back({exponent, c});
    return r;
}

LaurentPoly LaurentRing::monomial(FieldElem c, std::span<const int> exponent) const {
    if (exponent.size() != rules_.size()) throw InvalidArgument("exponent vector has wrong length");
    return monomial(c, to_monomial(exponent));
}

LaurentPoly LaurentRing::constant(FieldElem c) const { return monomial(c, Monomial{}); }

LaurentPoly LaurentRing::make(const std::vector<std::pair<FieldElem, std::vector<int>>>& monomials) const {
    LaurentPoly r;
    for (const auto& [c, e] : monomials) {
        auto m = monomial(c, std::span<const int>(e));
        r.terms.insert(r.terms.end(), m.terms.begin(), m.terms.end());
    }
    canonicalize(*field_, r.terms);
    return r;
}

LaurentPoly LaurentRing::add(const LaurentPoly& a, const LaurentPoly& b) const {
    if (a.terms.empty()) return b;
    if (b.terms.empty()) return a;
    LaurentPoly r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    auto i = a.terms.begin(), j = b.terms.begin();
    while (i != a.terms.end() && j != b.terms.end()) {
        if (i->exponent < j->exponent) {
            r.terms.push_back(*i++);
        } else if (j->exponent < i->exponent) {
            r.terms.push_back(*j++);
        } else {
            auto c = field_->add(i->coeff, j->coeff);
            if (!field_->is_zero(c)) r.terms.push_back({i->exponent, c});
            ++i;
            ++j;
        }
    }
    r.terms.insert(r.terms.end(), i, a.terms.end());
    r.terms.insert(r.terms.end(), j, b.terms.end());
    return r;
}

LaurentPoly LaurentRing::neg(const LaurentPoly& a) const {
    LaurentPoly r = a;
    for (auto& t : r.terms) t.coeff = field_->neg(t.coeff);
    return r;
}

LaurentPoly LaurentRing::mul(const LaurentPoly& a, const LaurentPoly& b) const {
    if (a.terms.empty() || b.terms.empty()) return {};
    LaurentPoly r;
    r.terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& s : a.terms) {
        for (const auto& t : b.terms) {
            LaurentTerm u;
            for (std::size_t k = 0; k < kMaxLaurentVars; ++k) u.exponent[k] = s.exponent[k] + t.exponent[k];
            u.coeff = field_->mul(s.coeff, t.coeff);
            r.terms.push_back(u);
        }
    }
    if (a.terms.size() > 1 && b.terms.size() > 1) canonicalize(*field_, r.terms);
    return r;
}

LaurentPoly LaurentRing::scale(FieldElem c, const LaurentPoly& a) const {
    if (field_->is_zero(c)) return {};
    LaurentPoly r = a;
    for (auto& t : r.terms) t.coeff = field_->mul(c, t.coeff);
    return r;
}

LaurentPoly LaurentRing::frobenius(const LaurentPoly& a) const {
    const int p = static_cast<int>(field_->characteristic());
    LaurentPoly r = a;
    for (auto& t : r.terms) {
        for (auto& e : t.exponent) e *= p;
        t.coeff = field_->frobenius(t.coeff);
    }
    return r;
}

std::optional<std::vector<int>> LaurentRing::multidegree(const LaurentPoly& a) const {
    if (a.terms.size() != 1) return std::nullopt;
    return std::vector<int>(a.terms[0].exponent.begin(), a.terms[0].exponent.begin() + rules_.size());
}

LaurentPoly LaurentRing::random(std::mt19937_64& rng, int max_terms, int radius) const {
    std::uniform_int_distribution<int> count(0, max_terms);
    std::uniform_int_distribution<int> coord(-radius, radius);
    std::vector<LaurentTerm> terms;
    const int k = count(rng);
    const std::size_t n = rules_.size();
    for (int t = 0; t < k; ++t) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            Monomial u{};
            int total = 0;
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = coord(rng);
                total += u[i];
            }
            if (degree_zero_) u[n - 1] -= total;
            if (!allows(u)) continue;
            auto c = field_->random(rng);
            if (field_->is_zero(c)) c = field_->one();
            terms.push_back({u, c});
            break;
        }
    }
    canonicalize(*field_, terms);
    return {std::move(terms)};
}

std::string LaurentRing::to_string(const LaurentPoly& a) const {
    if (a.terms.empty()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
        if (i) os << " + ";
        os << field_->to_string(a.terms[i].coeff);
        for (std::size_t k = 0; k < rules_.size(); ++k) {
            if (a.terms[i].exponent[k] != 0) os << "*x" << k << "^" << a.terms[i].exponent[k];
        }
    }
    return os.str();
}

}  // namespace wittdiv
