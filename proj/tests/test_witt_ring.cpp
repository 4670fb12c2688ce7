#include "wittdiv/finite_witt.hpp"
#include "wittdiv/galois_field.hpp"
#include "wittdiv/laurent.hpp"
#include "wittdiv/witt_vector.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace wittdiv;

namespace {

using FW = WittRing<GaloisField>;

FW ring(unsigned q, unsigned n) { return FW(GaloisField::of_order(q), n); }

WittVector<FieldElem> vec(const FW& W, std::vector<std::uint32_t> c) {
    std::vector<FieldElem> comps;
    for (auto v : c) comps.push_back({v});
    return W.make(comps);
}

}  // namespace

TEST_CASE("W_2(F_2): 1 + 1 = V(1)") {
    auto W = ring(2, 2);
    CHECK(W.add(vec(W, {1, 0}), vec(W, {1, 0})) == vec(W, {0, 1}));
    CHECK(W.from_integer(2) == W.verschiebung(W.one()));
    CHECK(W.from_integer(4) == W.zero());
}

TEST_CASE("additive identity and inverses on W_3(F_4)") {
    auto W = ring(4, 3);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 100; ++i) {
        auto a = W.random(rng);
        CHECK(W.add(a, W.zero()) == a);
        CHECK(W.add(a, W.neg(a)) == W.zero());
    }
}

TEST_CASE("W_n(F_p) is cyclic of order p^n") {
    for (unsigned p : {2u, 3u, 5u}) {
        for (unsigned n = 1; n <= 4; ++n) {
            CAPTURE(p);
            CAPTURE(n);
            auto W = ring(p, n);
            std::set<std::vector<std::uint32_t>> seen;
            auto x = W.zero();
            unsigned long order = 0;
            do {
                std::vector<std::uint32_t> key;
                for (auto c : x.components) key.push_back(c.v);
                seen.insert(key);
                x = W.add(x, W.one());
                ++order;
            } while (!W.is_zero(x));
            unsigned long expected = 1;
            for (unsigned i = 0; i < n; ++i) expected *= p;
            CHECK(order == expected);
            CHECK(seen.size() == expected);
        }
    }
}

TEST_CASE("ring axioms on W_3(F_4)") {
    auto W = ring(4, 3);
    std::mt19937_64 rng(2024);
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
        auto a = W.random(rng), b = W.random(rng), c = W.random(rng);
        failures += !(W.add(W.add(a, b), c) == W.add(a, W.add(b, c)));
        failures += !(W.add(a, b) == W.add(b, a));
        failures += !(W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c)));
        failures += !(W.mul(a, b) == W.mul(b, a));
        failures += !(W.mul(a, W.add(b, c)) == W.add(W.mul(a, b), W.mul(a, c)));
        failures += !(W.mul(a, W.one()) == a);
        failures += !(W.mul(a, W.zero()) == W.zero());
    }
    CHECK(failures == 0);
}

TEST_CASE("Frobenius and Verschiebung") {
    auto W = ring(4, 3);
    const auto& F = W.base();
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto x = W.random(rng), y = W.random(rng);
        auto px = W.scale_int(x, 2);
        CHECK(W.frobenius(W.verschiebung(x)) == px);
        CHECK(W.verschiebung(W.frobenius(x)) == px);
        CHECK(W.frobenius(W.add(x, y)) == W.add(W.frobenius(x), W.frobenius(y)));
        CHECK(W.frobenius(W.mul(x, y)) == W.mul(W.frobenius(x), W.frobenius(y)));
        auto a = F.random(rng);
        CHECK(W.frobenius(W.teichmuller(a)) == W.teichmuller(F.pow(a, 2)));
        CHECK(W.verschiebung(W.add(x, y)) == W.add(W.verschiebung(x), W.verschiebung(y)));
    }
}

TEST_CASE("Teichmüller scaling and the projection formula") {
    auto W = ring(9, 3);
    const auto& F = W.base();
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        auto b = F.random(rng);
        auto c = W.random(rng);
        auto expected = W.make({F.mul(b, c.components[0]), F.mul(F.pow(b, 3), c.components[1]),
                                F.mul(F.pow(b, 9), c.components[2])});
        CHECK(W.mul(W.teichmuller(b), c) == expected);
        for (unsigned m = 1; m < 3; ++m) {
            auto Fm = c;
            for (unsigned k = 0; k < m; ++k) Fm = W.frobenius(Fm);
            CHECK(W.mul(W.verschiebung(W.teichmuller(b), m), c) ==
                  W.verschiebung(W.mul(W.teichmuller(b), Fm), m));
        }
        auto a = F.random(rng);
        CHECK(W.mul(W.teichmuller(a), W.teichmuller(b)) == W.teichmuller(F.mul(a, b)));
    }
}

TEST_CASE("restriction and length-increasing Verschiebung") {
    auto W = ring(3, 3);
    auto x = vec(W, {1, 2, 0});
    CHECK(W.restrict_to(x, 2).components.size() == 2);
    CHECK_THROWS_AS(W.restrict_to(x, 4), LengthMismatch);
    auto v = W.verschiebung_extend(x, 1);
    CHECK(v.components.size() == 4);
    CHECK(v.components[0].v == 0);
    CHECK(v.components[1].v == 1);
    // R V = V R on the part that survives truncation
    auto W4 = ring(3, 4);
    CHECK(W4.restrict_to(W4.make(v.components), 3) == W.verschiebung(x));
}

TEST_CASE("inverse of an integer unit") {
    for (unsigned q : {3u, 4u}) {
        auto W = ring(q, 3);
        auto three = W.from_integer(q == 4 ? 3 : 2);
        auto u = W.inverse(three);
        CHECK(W.mul(u, three) == W.one());
    }
    auto W = ring(3, 2);
    CHECK_THROWS_AS(W.inverse(W.from_integer(3)), InvalidArgument);
}

TEST_CASE("mismatched rings are rejected") {
    auto W2 = ring(2, 2);
    auto W3 = ring(3, 2);
    auto W23 = ring(2, 3);
    CHECK_THROWS_AS(W2.add(W2.one(), W3.one()), RingMismatch);
    CHECK_THROWS_AS(W2.mul(W2.one(), W23.one()), RingMismatch);
    CHECK_THROWS_AS(W2.make({FieldElem{1}}), LengthMismatch);
}

TEST_CASE("table-driven W_n(F_q) agrees with polynomial arithmetic") {
    FiniteWitt T(GaloisField::of_order(4), 3);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(T.size() - 1));
    for (int i = 0; i < 200; ++i) {
        auto a = pick(rng), b = pick(rng);
        CHECK(T.decode(T.add(a, b)) == T.ring().add(T.decode(a), T.decode(b)));
        CHECK(T.decode(T.neg(a)) == T.ring().neg(T.decode(a)));
        CHECK(T.decode(T.verschiebung(a, 1)) == T.ring().verschiebung(T.decode(a), 1));
        FieldElem beta{static_cast<std::uint32_t>(i % 4)};
        CHECK(T.decode(T.teichmuller_scale(beta, a)) == T.ring().mul(T.ring().teichmuller(beta), T.decode(a)));
        CHECK(T.times_p(T.frobenius(a)) == T.frobenius(T.times_p(a)));
    }
    CHECK(T.valuation(T.verschiebung(1, 2)) == 2);
    CHECK(T.valuation(0) == 3);
}

TEST_CASE("Witt sums of homogeneous Laurent vectors stay homogeneous") {
    auto F = GaloisField::of_order(4);
    auto L = std::make_shared<const LaurentRing>(LaurentRing::function_field(F, 2));
    WittRing<LaurentRing> W(L, 3);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int i = 0; i < 100; ++i) {
        int e0 = coord(rng), e1 = coord(rng);
        int f0 = coord(rng), f1 = coord(rng);
        auto homogeneous = [&](int u0, int u1) {
            std::vector<LaurentPoly> comps;
            int scale = 1;
            for (int m = 0; m < 3; ++m, scale *= 2) {
                std::vector<int> u{u0 * scale, u1 * scale, -(u0 + u1) * scale};
                comps.push_back(L->monomial(F->random(rng), u));
            }
            return W.make(comps);
        };
        auto a = homogeneous(e0, e1), b = homogeneous(e0, e1), c = homogeneous(f0, f1);
        auto s = W.add(a, b);
        auto prod = W.mul(a, c);
        int scale = 1;
        for (int m = 0; m < 3; ++m, scale *= 2) {
            if (!s.components[m].is_zero()) {
                auto d = L->multidegree(s.components[m]);
                REQUIRE(d);
                CHECK((*d)[0] == e0 * scale);
                CHECK((*d)[1] == e1 * scale);
            }
            if (!prod.components[m].is_zero()) {
                auto d = L->multidegree(prod.components[m]);
                REQUIRE(d);
                CHECK((*d)[0] == (e0 + f0) * scale);
                CHECK((*d)[1] == (e1 + f1) * scale);
            }
        }
    }
}
