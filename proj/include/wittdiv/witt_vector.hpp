#pragma once

#include "wittdiv/base_ring.hpp"
#include "wittdiv/errors.hpp"
#include "wittdiv/universal_poly.hpp"

#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace wittdiv {

/// A universal polynomial with its coefficients reduced mod p, grouped by
/// residue so that evaluation needs one small multiple per group.
struct CompiledPoly {
    struct Factor {
        std::uint16_t variable;
        std::uint16_t exponent;
    };
    using Monomial = std::vector<Factor>;
    struct Group {
        unsigned coefficient;  // in [1, p)
        std::vector<Monomial> monomials;
    };
    std::size_t arity = 0;
    std::vector<Group> groups;
};

CompiledPoly compile_mod_p(const UniversalPoly& poly, unsigned p);

/// Members 0..n of a family, reduced mod p. Computed once per (family, p)
/// and shared by every ring.
std::shared_ptr<const std::vector<CompiledPoly>> compiled_witt_polys(WittFamily family, unsigned p, unsigned n);

template <class E>
struct WittVector {
    unsigned p = 0;
    std::vector<E> components;

    std::size_t length() const { return components.size(); }
    friend bool operator==(const WittVector&, const WittVector&) = default;
};

/// W_n(A) for a base ring A of characteristic p. Addition, negation and
/// multiplication evaluate the universal polynomials; F, V and R act on
/// components directly.
template <BaseRing R>
class WittRing {
public:
    using Base = R;
    using Scalar = typename R::Element;
    using Element = WittVector<Scalar>;

    WittRing(std::shared_ptr<const R> base, unsigned length)
        : base_(std::move(base)), p_(base_->characteristic()), n_(length), lazy_(std::make_shared<Lazy>()) {
        if (n_ == 0) throw InvalidArgument("Witt length must be positive");
        if (!is_prime(p_)) throw InvalidArgument("base ring characteristic is not prime");
        sum_ = compiled_witt_polys(WittFamily::Sum, p_, n_ - 1);
        neg_ = compiled_witt_polys(WittFamily::Negation, p_, n_ - 1);
    }

    const R& base() const { return *base_; }
    const std::shared_ptr<const R>& base_ptr() const { return base_; }
    unsigned p() const { return p_; }
    unsigned length() const { return n_; }

    Element make(std::vector<Scalar> components) const {
        if (components.size() != n_) throw LengthMismatch("expected " + std::to_string(n_) + " components");
        return {p_, std::move(components)};
    }
    Element zero() const { return {p_, std::vector<Scalar>(n_, base_->zero())}; }
    Element one() const { return teichmuller(base_->one()); }
    Element teichmuller(const Scalar& a) const {
        Element r = zero();
        r.components[0] = a;
        return r;
    }
    Element from_integer(long long k) const { return scale_int(one(), k); }

    Element add(const Element& a, const Element& b) const {
        check(a);
        check(b);
        return evaluate2(*sum_, a, b);
    }
    Element neg(const Element& a) const {
        check(a);
        Element r{p_, {}};
        r.components.reserve(n_);
        PowerCache cache(*this, a.components, {});
        for (unsigned m = 0; m < n_; ++m) r.components.push_back(evaluate((*neg_)[m], cache));
        return r;
    }
    Element sub(const Element& a, const Element& b) const { return add(a, neg(b)); }
    Element mul(const Element& a, const Element& b) const {
        check(a);
        check(b);
        std::call_once(lazy_->once, [&] { lazy_->prod = compiled_witt_polys(WittFamily::Product, p_, n_ - 1); });
        return evaluate2(*lazy_->prod, a, b);
    }
    Element scale_int(Element a, long long k) const {
        check(a);
        if (k < 0) {
            a = neg(a);
            k = -k;
        }
        Element r = zero();
        auto e = static_cast<unsigned long long>(k);
        while (e > 0) {
            if (e & 1u) r = add(r, a);
            e >>= 1;
            if (e > 0) a = add(a, a);
        }
        return r;
    }
    bool equal(const Element& a, const Element& b) const {
        check(a);
        check(b);
        for (unsigned i = 0; i < n_; ++i)
            if (!base_->eq(a.components[i], b.components[i])) return false;
        return true;
    }
    bool is_zero(const Element& a) const { return equal(a, zero()); }

    /// Componentwise p-th power; a ring endomorphism since p = 0 in A.
    Element frobenius(const Element& a) const {
        check(a);
        Element r = a;
        for (auto& c : r.components) c = base_->frobenius(c);
        return r;
    }
    /// Fixed-length V^m: shifts right by m and drops the top m components.
    Element verschiebung(const Element& a, unsigned m = 1) const {
        check(a);
        Element r = zero();
        for (unsigned i = 0; i + m < n_; ++i) r.components[i + m] = a.components[i];
        return r;
    }
    /// Length-increasing V^m: W_n -> W_{n+m}, no truncation.
    Element verschiebung_extend(const Element& a, unsigned m = 1) const {
        check(a);
        Element r{p_, std::vector<Scalar>(m, base_->zero())};
        r.components.insert(r.components.end(), a.components.begin(), a.components.end());
        return r;
    }
    /// Truncation R^{n-m}: W_n -> W_m.
    Element restrict_to(const Element& a, unsigned m) const {
        check(a);
        if (m == 0 || m > n_) throw LengthMismatch("cannot restrict length " + std::to_string(n_) + " to " + std::to_string(m));
        return {p_, std::vector<Scalar>(a.components.begin(), a.components.begin() + m)};
    }

    /// Multiplicative inverse by Newton iteration u <- u(2 - a u) starting
    /// from the Teichmüller lift of a_0^{-1}; each step doubles the number
    /// of correct components.
    Element inverse(const Element& a) const
        requires requires(const R& r, const Scalar& s) { r.inv(s); }
    {
        check(a);
        Element u = teichmuller(base_->inv(a.components[0]));
        const Element two = from_integer(2);
        for (unsigned precision = 1; precision < n_; precision *= 2) u = mul(u, sub(two, mul(a, u)));
        if (!equal(mul(a, u), one())) throw InvalidArgument("Witt vector is not invertible");
        return u;
    }

    template <class Rng>
    Element random(Rng& rng) const {
        Element r{p_, {}};
        r.components.reserve(n_);
        for (unsigned i = 0; i < n_; ++i) r.components.push_back(base_->random(rng));
        return r;
    }

private:
    struct Lazy {
        std::once_flag once;
        std::shared_ptr<const std::vector<CompiledPoly>> prod;
    };

    // Powers of the input components, memoized per variable. Variables
    // 0..n-1 are the x block, n..2n-1 the y block.
    class PowerCache {
    public:
        PowerCache(const WittRing& ring, const std::vector<Scalar>& x, const std::vector<Scalar>& y)
            : ring_(ring) {
            values_.insert(values_.end(), x.begin(), x.end());
            values_.insert(values_.end(), y.begin(), y.end());
            zero_.resize(values_.size());
            for (std::size_t i = 0; i < values_.size(); ++i) zero_[i] = ring.base_->eq(values_[i], ring.base_->zero());
            memo_.resize(values_.size());
        }
        bool is_zero(std::size_t var) const { return zero_[var]; }
        const Scalar& get(std::size_t var, unsigned e) {
            if (e == 1) return values_[var];
            auto& memo = memo_[var];
            for (auto& [k, v] : memo)
                if (k == e) return v;
            memo.emplace_back(e, power(*ring_.base_, values_[var], e));
            return memo.back().second;
        }

    private:
        const WittRing& ring_;
        std::vector<Scalar> values_;
        std::vector<bool> zero_;
        std::vector<std::vector<std::pair<unsigned, Scalar>>> memo_;
    };

    void check(const Element& a) const {
        if (a.p != p_) throw RingMismatch("Witt vector over p=" + std::to_string(a.p) + " used in W_n with p=" + std::to_string(p_));
        if (a.components.size() != n_)
            throw RingMismatch("Witt vector of length " + std::to_string(a.components.size()) + " used in W_" + std::to_string(n_));
    }

    // The compiled polynomial for index m has x_i at i and y_i at m+1+i;
    // `y_shift` moves its y block onto the cache's y block at n.
    Scalar evaluate(const CompiledPoly& poly, PowerCache& cache, std::size_t y_shift = 0) const {
        const std::size_t half = poly.arity / 2;
        Scalar result = base_->zero();
        for (const auto& group : poly.groups) {
            Scalar acc = base_->zero();
            bool any = false;
            for (const auto& mono : group.monomials) {
                bool skip = false;
                for (const auto& f : mono) {
                    if (cache.is_zero(var_index(f.variable, half, y_shift))) {
                        skip = true;
                        break;
                    }
                }
                if (skip) continue;
                Scalar term = base_->one();
                bool first = true;
                for (const auto& f : mono) {
                    const Scalar& v = cache.get(var_index(f.variable, half, y_shift), f.exponent);
                    term = first ? v : base_->mul(term, v);
                    first = false;
                }
                acc = any ? base_->add(acc, term) : term;
                any = true;
            }
            if (any) result = base_->add(result, small_multiple(*base_, acc, group.coefficient));
        }
        return result;
    }

    static std::size_t var_index(std::size_t v, std::size_t half, std::size_t y_shift) {
        return (y_shift == 0 || v < half) ? v : v - half + y_shift;
    }

    Element evaluate2(const std::vector<CompiledPoly>& polys, const Element& a, const Element& b) const {
        PowerCache cache(*this, a.components, b.components);
        Element r{p_, {}};
        r.components.reserve(n_);
        for (unsigned m = 0; m < n_; ++m) r.components.push_back(evaluate(polys[m], cache, n_));
        return r;
    }

    std::shared_ptr<const R> base_;
    unsigned p_;
    unsigned n_;
    std::shared_ptr<const std::vector<CompiledPoly>> sum_, neg_;
    std::shared_ptr<Lazy> lazy_;
};

}  // namespace wittdiv
