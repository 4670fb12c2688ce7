#include "wittdiv/galois_field.hpp"

#include "wittdiv/errors.hpp"
#include "wittdiv/universal_poly.hpp"

#include <sstream>

namespace wittdiv {

namespace {

constexpr std::uint32_t kMaxOrder = 1u << 16;

std::uint32_t checked_order(unsigned p, unsigned d) {
    std::uint64_t q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= p;
        if (q > kMaxOrder) throw InvalidArgument("field order above 2^16");
    }
    return static_cast<std::uint32_t>(q);
}

}  // namespace

GaloisField::GaloisField(unsigned p, std::vector<unsigned> modulus)
    : p_(p), d_(static_cast<unsigned>(modulus.size()) - 1), q_(checked_order(p, d_)), modulus_(std::move(modulus)) {
    neg_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
        auto dg = digits({a});
        for (auto& c : dg) c = (p_ - c) % p_;
        neg_[a] = from_digits(dg).v;
    }
    if (q_ <= 256) {
        add_table_.resize(static_cast<std::size_t>(q_) * q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto da = digits({a});
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto db = digits({b});
                std::vector<unsigned> s(d_);
                for (unsigned i = 0; i < d_; ++i) s[i] = (da[i] + db[i]) % p_;
                add_table_[static_cast<std::size_t>(a) * q_ + b] = from_digits(s).v;
            }
        }
    }
    // A reducible modulus has zero divisors, so no element reaches order q - 1.
    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    bool found = false;
    for (std::uint32_t g = 1; g < q_ && !found; ++g) {
        std::uint32_t x = 1;
        std::uint32_t k = 0;
        do {
            exp_[k] = x;
            x = mul_slow(x, g);
            ++k;
        } while (x != 1 && x != 0 && k < q_);
        if (x == 1 && k == q_ - 1) found = true;
    }
    if (!found) throw InvalidArgument("modulus is not irreducible over F_" + std::to_string(p_));
    exp_[q_ - 1] = 1;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
    frob_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) frob_[a] = pow({a}, p_).v;
}

std::shared_ptr<const GaloisField> GaloisField::with_modulus(unsigned p, std::vector<unsigned> modulus) {
    if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (modulus.size() < 2 || modulus.back() != 1) throw InvalidArgument("modulus must be monic of degree >= 1");
    for (auto c : modulus)
        if (c >= p) throw InvalidArgument("modulus coefficient out of range");
    return std::shared_ptr<const GaloisField>(new GaloisField(p, std::move(modulus)));
}

std::shared_ptr<const GaloisField> GaloisField::prime(unsigned p) { return with_modulus(p, {0, 1}); }

std::shared_ptr<const GaloisField> GaloisField::make(unsigned p, unsigned d) {
    if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
    if (d == 0) throw InvalidArgument("field degree must be positive");
    if (d == 1) return prime(p);
    std::uint32_t span = checked_order(p, d);
    for (std::uint32_t code = 0; code < span; ++code) {
        std::vector<unsigned> f(d + 1);
        std::uint32_t c = code;
        for (unsigned i = 0; i < d; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[d] = 1;
        if (f[0] == 0) continue;
        try {
            return with_modulus(p, f);
        } catch (const InvalidArgument&) {
        }
    }
    throw InvalidArgument("no irreducible polynomial found");
}

std::shared_ptr<const GaloisField> GaloisField::of_order(unsigned q) {
    if (q < 2) throw InvalidArgument("field order must be at least 2");
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned d = 0;
    unsigned r = q;
    while (r % p == 0) {
        r /= p;
        ++d;
    }
    if (r != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
    return make(p, d);
}

std::vector<unsigned> GaloisField::digits(FieldElem a) const {
    std::vector<unsigned> out(d_);
    std::uint32_t v = a.v;
    for (unsigned i = 0; i < d_; ++i) {
        out[i] = v % p_;
        v /= p_;
    }
    return out;
}

FieldElem GaloisField::from_digits(const std::vector<unsigned>& dg) const {
    std::uint32_t v = 0;
    for (unsigned i = d_; i-- > 0;) v = v * p_ + (i < dg.size() ? dg[i] % p_ : 0);
    return {v};
}

FieldElem GaloisField::from_int(long long k) const {
    long long r = k % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
}

std::vector<FieldElem> GaloisField::basis() const {
    std::vector<FieldElem> out;
    std::uint32_t v = 1;
    for (unsigned i = 0; i < d_; ++i, v *= p_) out.push_back({v});
    return out;
}

std::uint32_t GaloisField::mul_slow(std::uint32_t a, std::uint32_t b) const {
    auto da = digits({a});
    auto db = digits({b});
    std::vector<unsigned> prod(2 * d_, 0);
    for (unsigned i = 0; i < d_; ++i)
        for (unsigned j = 0; j < d_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    for (unsigned k = 2 * d_ - 1; k >= d_; --k) {
        unsigned c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < d_; ++i) prod[k - d_ + i] = (prod[k - d_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    prod.resize(d_);
    return from_digits(prod).v;
}

FieldElem GaloisField::add(FieldElem a, FieldElem b) const {
    if (!add_table_.empty()) return {add_table_[static_cast<std::size_t>(a.v) * q_ + b.v]};
    std::uint32_t x = a.v, y = b.v, r = 0, scale = 1;
    for (unsigned i = 0; i < d_; ++i) {
        r += ((x % p_ + y % p_) % p_) * scale;
        x /= p_;
        y /= p_;
        scale *= p_;
    }
    return {r};
}

FieldElem GaloisField::mul(FieldElem a, FieldElem b) const {
    if (a.v == 0 || b.v == 0) return {0};
    std::uint32_t s = log_[a.v] + log_[b.v];
    if (s >= q_ - 1) s -= q_ - 1;
    return {exp_[s]};
}

FieldElem GaloisField::inv(FieldElem a) const {
    if (a.v == 0) throw InvalidArgument("inverse of zero");
    std::uint32_t l = log_[a.v];
    return {exp_[l == 0 ? 0 : q_ - 1 - l]};
}

FieldElem GaloisField::pow(FieldElem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.v == 0) return zero();
    std::uint64_t l = (static_cast<std::uint64_t>(log_[a.v]) * (e % (q_ - 1))) % (q_ - 1);
    return {exp_[l]};
}

std::uint32_t GaloisField::multiplicative_order(FieldElem a) const {
    if (a.v == 0) throw InvalidArgument("zero has no multiplicative order");
    std::uint32_t n = q_ - 1;
    std::uint32_t l = log_[a.v];
    std::uint32_t g = n, x = l;
    while (x) {
        std::uint32_t t = g % x;
        g = x;
        x = t;
    }
    return n / g;
}

FieldElem GaloisField::root_of_unity(unsigned ell) const {
    if (ell == 0 || (q_ - 1) % ell != 0)
        throw InvalidArgument("F_" + std::to_string(q_) + " has no primitive " + std::to_string(ell) + "-th root of unity");
    return {exp_[(q_ - 1) / ell]};
}

std::string GaloisField::to_string(FieldElem a) const {
    if (d_ == 1) return std::to_string(a.v);
    auto dg = digits(a);
    std::ostringstream os;
    bool any = false;
    for (unsigned i = d_; i-- > 0;) {
        if (dg[i] == 0) continue;
        if (any) os << '+';
        if (i == 0 || dg[i] != 1) os << dg[i];
        if (i >= 1) os << 't';
        if (i >= 2) os << '^' << i;
        any = true;
    }
    if (!any) os << '0';
    return os.str();
}

bool GaloisField::same_field(const GaloisField& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
}

}  // namespace wittdiv
