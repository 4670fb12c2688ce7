#include "wittdiv/universal_poly.hpp"

#include "wittdiv/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace wittdiv {

namespace {

constexpr unsigned kBitsPerVar = 8;

mpz_class power_of(unsigned p, unsigned e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

}  // namespace

UniversalPoly::UniversalPoly(std::size_t arity) : arity_(arity) {
    if (arity > kMaxArity) throw std::overflow_error("UniversalPoly: arity above 16");
}

UniversalPoly UniversalPoly::variable(std::size_t arity, std::size_t index) {
    if (index >= arity) throw InvalidArgument("variable index out of range");
    UniversalPoly r(arity);
    Exponents e(arity, 0);
    e[index] = 1;
    r.add_term(1, e);
    return r;
}

UniversalPoly UniversalPoly::constant(std::size_t arity, const mpz_class& c) {
    UniversalPoly r(arity);
    r.add_term(c, Exponents(arity, 0));
    return r;
}

UniversalPoly::Key UniversalPoly::pack(const Exponents& e) {
    Key k = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > kMaxExponent) throw std::overflow_error("UniversalPoly: exponent above 255");
        k |= static_cast<Key>(e[i]) << (kBitsPerVar * i);
    }
    return k;
}

Exponents UniversalPoly::unpack(Key k) const {
    Exponents e(arity_);
    for (std::size_t i = 0; i < arity_; ++i)
        e[i] = static_cast<unsigned>((k >> (kBitsPerVar * i)) & 0xFF);
    return e;
}

void UniversalPoly::accumulate(Key k, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

mpz_class UniversalPoly::coefficient(const Exponents& exponents) const {
    if (exponents.size() != arity_) throw InvalidArgument("exponent vector has wrong arity");
    auto it = terms_.find(pack(exponents));
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void UniversalPoly::add_term(const mpz_class& coefficient, const Exponents& exponents) {
    if (exponents.size() != arity_) throw InvalidArgument("exponent vector has wrong arity");
    accumulate(pack(exponents), coefficient);
}

std::vector<IntTerm> UniversalPoly::terms() const {
    std::vector<IntTerm> out;
    out.reserve(terms_.size());
    for (const auto& [k, c] : terms_) out.push_back({c, unpack(k)});
    std::sort(out.begin(), out.end(), [](const IntTerm& a, const IntTerm& b) {
        auto da = std::accumulate(a.exponents.begin(), a.exponents.end(), 0u);
        auto db = std::accumulate(b.exponents.begin(), b.exponents.end(), 0u);
        if (da != db) return da > db;
        return a.exponents > b.exponents;
    });
    return out;
}

std::vector<unsigned> UniversalPoly::max_exponents() const {
    std::vector<unsigned> m(arity_, 0);
    for (const auto& [k, c] : terms_) {
        for (std::size_t i = 0; i < arity_; ++i)
            m[i] = std::max(m[i], static_cast<unsigned>((k >> (kBitsPerVar * i)) & 0xFF));
    }
    return m;
}

UniversalPoly& UniversalPoly::operator+=(const UniversalPoly& other) {
    if (other.arity_ != arity_) throw InvalidArgument("arity mismatch in polynomial sum");
    for (const auto& [k, c] : other.terms_) accumulate(k, c);
    return *this;
}

UniversalPoly& UniversalPoly::operator-=(const UniversalPoly& other) {
    if (other.arity_ != arity_) throw InvalidArgument("arity mismatch in polynomial difference");
    for (const auto& [k, c] : other.terms_) accumulate(k, -c);
    return *this;
}

UniversalPoly UniversalPoly::operator-() const {
    UniversalPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

UniversalPoly operator*(const UniversalPoly& a, const UniversalPoly& b) {
    if (a.arity_ != b.arity_) throw InvalidArgument("arity mismatch in polynomial product");
    auto ma = a.max_exponents();
    auto mb = b.max_exponents();
    for (std::size_t i = 0; i < a.arity_; ++i) {
        if (ma[i] + mb[i] > UniversalPoly::kMaxExponent)
            throw std::overflow_error("UniversalPoly: product exponent above 255");
    }
    UniversalPoly r(a.arity_);
    r.terms_.reserve(a.terms_.size() * 2 + b.terms_.size() * 2);
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            // Exponent fields cannot carry: the bound was checked above.
            auto [it, inserted] = r.terms_.try_emplace(ka + kb);
            mpz_addmul(it->second.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
        }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
        if (it->second == 0)
            it = r.terms_.erase(it);
        else
            ++it;
    }
    return r;
}

UniversalPoly UniversalPoly::scaled(const mpz_class& factor) const {
    if (factor == 0) return UniversalPoly(arity_);
    UniversalPoly r = *this;
    for (auto& [k, c] : r.terms_) c *= factor;
    return r;
}

UniversalPoly UniversalPoly::pow(unsigned k) const {
    UniversalPoly result = constant(arity_, 1);
    if (k == 0) return result;
    for (unsigned m : max_exponents()) {
        if (static_cast<unsigned long>(m) * k > kMaxExponent)
            throw std::overflow_error("UniversalPoly: power exponent above 255");
    }
    UniversalPoly base = *this;
    bool first = true;
    while (k > 0) {
        if (k & 1u) {
            result = first ? base : result * base;
            first = false;
        }
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

UniversalPoly UniversalPoly::divided_exactly(const mpz_class& divisor) const {
    if (divisor == 0) throw InvalidArgument("division by zero");
    UniversalPoly r = *this;
    for (auto& [k, c] : r.terms_) {
        if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t())) {
            std::ostringstream os;
            os << "coefficient " << c << " is not divisible by " << divisor;
            throw InexactDivision(os.str());
        }
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    }
    return r;
}

UniversalPoly UniversalPoly::remapped(std::size_t new_arity, std::span<const std::size_t> index_map) const {
    if (index_map.size() != arity_) throw InvalidArgument("index map has wrong length");
    UniversalPoly r(new_arity);
    for (const auto& [k, c] : terms_) {
        Exponents src = unpack(k);
        Exponents dst(new_arity, 0);
        for (std::size_t i = 0; i < arity_; ++i) {
            if (src[i] == 0) continue;
            if (index_map[i] >= new_arity) throw InvalidArgument("index map target out of range");
            dst[index_map[i]] += src[i];
        }
        r.accumulate(pack(dst), c);
    }
    return r;
}

bool operator==(const UniversalPoly& a, const UniversalPoly& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
}

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

UniversalPoly ghost(std::span<const UniversalPoly> components, unsigned p, unsigned n) {
    if (components.size() < n + 1) throw InvalidArgument("ghost: need n + 1 components");
    UniversalPoly w(components[0].arity());
    for (unsigned i = 0; i <= n; ++i) {
        unsigned e = 1;
        for (unsigned k = i; k < n; ++k) e *= p;
        w += components[i].pow(e).scaled(power_of(p, i));
    }
    return w;
}

UniversalPoly ghost_of_variables(unsigned p, unsigned n, std::size_t arity, std::size_t offset) {
    std::vector<UniversalPoly> vars;
    vars.reserve(n + 1);
    for (unsigned i = 0; i <= n; ++i) vars.push_back(UniversalPoly::variable(arity, offset + i));
    return ghost(vars, p, n);
}

char family_tag(WittFamily family) {
    switch (family) {
        case WittFamily::Sum: return 'S';
        case WittFamily::Negation: return 'I';
        case WittFamily::Product: return 'P';
    }
    return '?';
}

std::size_t family_arity(WittFamily family, unsigned n) {
    return family == WittFamily::Negation ? n + 1 : 2 * (n + 1);
}

namespace {

UniversalPoly ghost_target(WittFamily family, unsigned p, unsigned m, unsigned n_top) {
    std::size_t arity = family_arity(family, n_top);
    switch (family) {
        case WittFamily::Sum:
            return ghost_of_variables(p, m, arity, 0) + ghost_of_variables(p, m, arity, n_top + 1);
        case WittFamily::Product:
            return ghost_of_variables(p, m, arity, 0) * ghost_of_variables(p, m, arity, n_top + 1);
        case WittFamily::Negation:
            return -ghost_of_variables(p, m, arity, 0);
    }
    throw InvalidArgument("unknown Witt family");
}

// Embeds a member of index m (own arity) into the arity of index n_top.
UniversalPoly embed(WittFamily family, const UniversalPoly& poly, unsigned m, unsigned n_top) {
    std::vector<std::size_t> map(poly.arity());
    if (family == WittFamily::Negation) {
        std::iota(map.begin(), map.end(), 0);
    } else {
        for (unsigned i = 0; i <= m; ++i) {
            map[i] = i;
            map[m + 1 + i] = n_top + 1 + i;
        }
    }
    return poly.remapped(family_arity(family, n_top), map);
}

// Z_k = (G_k - sum_{i<k} p^i Z_i^{p^{k-i}}) / p^k, all at the arity of n.
std::vector<UniversalPoly> companion_recursion(WittFamily family, unsigned p, unsigned n) {
    if (!is_prime(p)) throw InvalidArgument("p = " + std::to_string(p) + " is not prime");
    std::vector<UniversalPoly> z;
    std::vector<UniversalPoly> powers;  // powers[i] = Z_i^{p^{k-i}}
    for (unsigned k = 0; k <= n; ++k) {
        for (auto& pw : powers) pw = pw.pow(p);
        UniversalPoly acc = ghost_target(family, p, k, n);
        for (unsigned i = 0; i < k; ++i) acc -= powers[i].scaled(power_of(p, i));
        z.push_back(acc.divided_exactly(power_of(p, k)));
        powers.push_back(z.back());
    }
    std::vector<UniversalPoly> out;
    out.reserve(z.size());
    for (unsigned m = 0; m <= n; ++m) {
        // Inverse of embed(): only the variables of index <= m occur in Z_m.
        std::vector<std::size_t> own(family_arity(family, n), 0);
        if (family == WittFamily::Negation) {
            std::iota(own.begin(), own.end(), 0);
            auto need = family_arity(family, m);
            for (auto& v : own)
                if (v >= need) v = 0;
        } else {
            for (unsigned i = 0; i <= n; ++i) {
                own[i] = i <= m ? i : 0;
                own[n + 1 + i] = i <= m ? m + 1 + i : 0;
            }
        }
        out.push_back(z[m].remapped(family_arity(family, m), own));
    }
    return out;
}

}  // namespace

std::vector<UniversalPoly> sum_polys(unsigned p, unsigned n) { return companion_recursion(WittFamily::Sum, p, n); }
std::vector<UniversalPoly> neg_polys(unsigned p, unsigned n) { return companion_recursion(WittFamily::Negation, p, n); }
std::vector<UniversalPoly> prod_polys(unsigned p, unsigned n) { return companion_recursion(WittFamily::Product, p, n); }

std::vector<UniversalPoly> witt_polys(WittFamily family, unsigned p, unsigned n) {
    return companion_recursion(family, p, n);
}

bool ghost_identity_holds(WittFamily family, unsigned p, std::span<const UniversalPoly> polys) {
    for (unsigned m = 0; m < polys.size(); ++m) {
        std::vector<UniversalPoly> embedded;
        for (unsigned i = 0; i <= m; ++i) embedded.push_back(embed(family, polys[i], i, m));
        if (!(ghost(embedded, p, m) == ghost_target(family, p, m, m))) return false;
    }
    return true;
}

bool is_weighted_homogeneous(const UniversalPoly& poly, std::span<const std::uint64_t> weights,
                             std::uint64_t degree) {
    if (weights.size() != poly.arity()) throw InvalidArgument("weight vector has wrong arity");
    for (const auto& t : poly.terms()) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) d += weights[i] * t.exponents[i];
        if (d != degree) return false;
    }
    return true;
}

std::vector<std::uint64_t> witt_weights(unsigned p, unsigned n, std::size_t arity) {
    std::vector<std::uint64_t> w;
    std::uint64_t pw = 1;
    std::vector<std::uint64_t> block;
    for (unsigned i = 0; i <= n; ++i, pw *= p) block.push_back(pw);
    if (arity == n + 1) return block;
    if (arity == 2 * (n + 1)) {
        w = block;
        w.insert(w.end(), block.begin(), block.end());
        return w;
    }
    throw InvalidArgument("arity is neither n+1 nor 2(n+1)");
}

bool homogeneity_check(const UniversalPoly& poly, unsigned p, unsigned n) {
    std::uint64_t deg = 1;
    for (unsigned i = 0; i < n; ++i) deg *= p;
    auto weights = witt_weights(p, n, poly.arity());
    return is_weighted_homogeneous(poly, weights, deg);
}

std::string serialize_poly(char tag, unsigned p, unsigned n, const UniversalPoly& poly) {
    std::ostringstream os;
    os << tag << ' ' << p << ' ' << n << " :";
    bool first = true;
    for (const auto& t : poly.terms()) {
        os << (first ? " " : "; ") << t.coefficient << ' ';
        for (std::size_t i = 0; i < t.exponents.size(); ++i) os << (i ? "," : "") << t.exponents[i];
        first = false;
    }
    return os.str();
}

ParsedPoly parse_poly_line(const std::string& line) {
    std::istringstream is(line);
    ParsedPoly out{};
    std::string colon;
    if (!(is >> out.tag >> out.p >> out.n >> colon) || colon != ":")
        throw ParseError("malformed polynomial header: " + line);
    WittFamily family;
    switch (out.tag) {
        case 'S': family = WittFamily::Sum; break;
        case 'I': family = WittFamily::Negation; break;
        case 'P': family = WittFamily::Product; break;
        default: throw ParseError(std::string("unknown polynomial tag ") + out.tag);
    }
    std::size_t arity = family_arity(family, out.n);
    out.poly = UniversalPoly(arity);
    std::string rest;
    std::getline(is, rest);
    std::istringstream terms(rest);
    std::string chunk;
    while (std::getline(terms, chunk, ';')) {
        std::istringstream ts(chunk);
        std::string coeff, exps;
        if (!(ts >> coeff)) continue;
        if (!(ts >> exps)) throw ParseError("term without exponent vector: " + chunk);
        Exponents e;
        std::istringstream es(exps);
        std::string part;
        while (std::getline(es, part, ',')) e.push_back(static_cast<unsigned>(std::stoul(part)));
        if (e.size() != arity) throw ParseError("exponent vector has wrong arity: " + chunk);
        mpz_class c;
        if (c.set_str(coeff, 10) != 0) throw ParseError("bad coefficient: " + coeff);
        out.poly.add_term(c, e);
    }
    return out;
}

PolynomialCache::PolynomialCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

PolynomialCache& PolynomialCache::global() {
    static PolynomialCache cache = [] {
        if (const char* dir = std::getenv("WITTDIV_CACHE_DIR"); dir && *dir)
            return PolynomialCache(std::filesystem::path(dir));
        return PolynomialCache();
    }();
    return cache;
}

std::shared_ptr<const std::vector<UniversalPoly>> PolynomialCache::get(WittFamily family, unsigned p, unsigned n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(family_tag(family), p);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second->size() > n) return it->second;

    if (it == entries_.end()) {
        if (auto loaded = load(family, p); loaded && loaded->size() > n) {
            auto ptr = std::make_shared<const std::vector<UniversalPoly>>(std::move(*loaded));
            entries_[key] = ptr;
            return ptr;
        }
    }
    auto ptr = std::make_shared<const std::vector<UniversalPoly>>(witt_polys(family, p, n));
    entries_[key] = ptr;
    store(family, p, *ptr);
    return ptr;
}

std::optional<std::vector<UniversalPoly>> PolynomialCache::load(WittFamily family, unsigned p) const {
    if (!directory_) return std::nullopt;
    auto path = *directory_ / (std::string("witt_") + family_tag(family) + "_p" + std::to_string(p) + ".txt");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::vector<UniversalPoly> polys;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto parsed = parse_poly_line(line);
        if (parsed.tag != family_tag(family) || parsed.p != p || parsed.n != polys.size())
            throw ParseError("cache file " + path.string() + " is out of order");
        polys.push_back(std::move(parsed.poly));
    }
    return polys;
}

void PolynomialCache::store(WittFamily family, unsigned p, const std::vector<UniversalPoly>& polys) const {
    if (!directory_) return;
    std::filesystem::create_directories(*directory_);
    auto path = *directory_ / (std::string("witt_") + family_tag(family) + "_p" + std::to_string(p) + ".txt");
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        for (unsigned m = 0; m < polys.size(); ++m) out << serialize_poly(family_tag(family), p, m, polys[m]) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace wittdiv
