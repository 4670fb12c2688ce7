#pragma once

#include <concepts>
#include <cstdint>
#include <random>

namespace wittdiv {

/// A commutative ring of prime characteristic p plugged into the Witt
/// vector arithmetic. Values are plain `Element`s; the ring object carries
/// whatever context the arithmetic needs.
template <class R>
concept BaseRing = requires(const R& r, const typename R::Element& a, const typename R::Element& b,
                            std::mt19937_64& rng) {
    typename R::Element;
    { r.characteristic() } -> std::convertible_to<unsigned>;
    { r.zero() } -> std::same_as<typename R::Element>;
    { r.one() } -> std::same_as<typename R::Element>;
    { r.add(a, b) } -> std::same_as<typename R::Element>;
    { r.mul(a, b) } -> std::same_as<typename R::Element>;
    { r.neg(a) } -> std::same_as<typename R::Element>;
    { r.eq(a, b) } -> std::convertible_to<bool>;
    { r.frobenius(a) } -> std::same_as<typename R::Element>;
    { r.random(rng) } -> std::same_as<typename R::Element>;
};

/// k * a for a small non-negative integer k, by doubling.
template <BaseRing R>
typename R::Element small_multiple(const R& ring, typename R::Element a, std::uint64_t k) {
    auto result = ring.zero();
    while (k > 0) {
        if (k & 1u) result = ring.add(result, a);
        k >>= 1;
        if (k > 0) a = ring.add(a, a);
    }
    return result;
}

/// a^e using the Frobenius for the base-p digits of e.
template <BaseRing R>
typename R::Element power(const R& ring, typename R::Element a, std::uint64_t e) {
    if constexpr (requires { ring.pow(a, e); }) {
        return ring.pow(a, e);
    } else {
        const unsigned p = ring.characteristic();
        auto result = ring.one();
        bool trivial = true;
        while (e > 0) {
            auto digit = e % p;
            if (digit != 0) {
                auto term = a;
                for (std::uint64_t i = 1; i < digit; ++i) term = ring.mul(term, a);
                result = trivial ? term : ring.mul(result, term);
                trivial = false;
            }
            e /= p;
            if (e > 0) a = ring.frobenius(a);
        }
        return result;
    }
}

}  // namespace wittdiv
