#include "wittdiv/base_ring.hpp"
#include "wittdiv/errors.hpp"
#include "wittdiv/galois_field.hpp"
#include "wittdiv/laurent.hpp"

#include <doctest.h>

#include <random>

using namespace wittdiv;

static_assert(BaseRing<GaloisField>);
static_assert(BaseRing<LaurentRing>);

template <class R>
static int axiom_failures(const R& r, std::mt19937_64& rng, int samples) {
    int bad = 0;
    for (int i = 0; i < samples; ++i) {
        auto a = r.random(rng), b = r.random(rng), c = r.random(rng);
        bad += !r.eq(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        bad += !r.eq(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        bad += !r.eq(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        bad += !r.eq(r.mul(a, b), r.mul(b, a));
        bad += !r.eq(r.add(a, r.neg(a)), r.zero());
        bad += !r.eq(r.mul(a, r.one()), a);
        bad += !r.eq(r.frobenius(r.mul(a, b)), r.mul(r.frobenius(a), r.frobenius(b)));
        bad += !r.eq(r.frobenius(r.add(a, b)), r.add(r.frobenius(a), r.frobenius(b)));
        bad += !r.eq(small_multiple(r, r.one(), r.characteristic()), r.zero());
    }
    return bad;
}

TEST_CASE("finite field axioms") {
    std::mt19937_64 rng(1);
    for (unsigned q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u}) {
        CAPTURE(q);
        auto F = GaloisField::of_order(q);
        CHECK(axiom_failures(*F, rng, 200) == 0);
        for (std::uint32_t a = 1; a < q; ++a) CHECK(F->mul({a}, F->inv({a})) == F->one());
    }
}

TEST_CASE("Frobenius has order d and fixes exactly the prime field") {
    for (unsigned q : {4u, 8u, 9u, 16u, 27u}) {
        auto F = GaloisField::of_order(q);
        unsigned fixed = 0;
        for (std::uint32_t a = 0; a < q; ++a) {
            auto x = FieldElem{a};
            if (F->frobenius(x) == x) ++fixed;
            auto y = x;
            for (unsigned i = 0; i < F->degree(); ++i) y = F->frobenius(y);
            CHECK(y == x);
        }
        CHECK(fixed == F->characteristic());
        bool some_moved = false;
        for (std::uint32_t a = 0; a < q; ++a) {
            auto y = FieldElem{a};
            for (unsigned i = 0; i + 1 < F->degree(); ++i) y = F->frobenius(y);
            if (F->degree() > 1 && !(F->frobenius(y) == y)) some_moved = true;
        }
        CHECK(some_moved);
    }
}

TEST_CASE("field construction") {
    auto F4 = GaloisField::of_order(4);
    CHECK(F4->modulus() == std::vector<unsigned>{1, 1, 1});
    CHECK_THROWS_AS(GaloisField::with_modulus(2, {1, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(GaloisField::of_order(6), InvalidArgument);
    CHECK_THROWS_AS(GaloisField::prime(4), InvalidArgument);
}

TEST_CASE("roots of unity exist exactly when ell divides q - 1") {
    for (unsigned q : {3u, 4u, 5u, 7u, 9u, 16u}) {
        auto F = GaloisField::of_order(q);
        for (unsigned ell = 2; ell <= 6; ++ell) {
            if ((q - 1) % ell == 0) {
                auto z = F->root_of_unity(ell);
                CHECK(F->multiplicative_order(z) == ell);
            } else {
                CHECK_THROWS_AS(F->root_of_unity(ell), InvalidArgument);
            }
        }
    }
}

TEST_CASE("Laurent construction respects the chart") {
    auto F = GaloisField::of_order(4);
    LaurentRing plane(F, {ExponentRule::NonNegative, ExponentRule::Any});
    CHECK(plane.eq(plane.make({{F->one(), {0, 0}}}), plane.one()));
    auto m = plane.make({{F->one(), {2, -1}}});
    CHECK(m.terms.size() == 1);
    CHECK_THROWS_AS(plane.make({{F->one(), {-1, 0}}}), ExponentOutOfChart);
    auto sum = plane.make({{F->one(), {1, 0}}, {F->one(), {1, 0}}});
    CHECK(sum.is_zero());

    unsigned chart[] = {0};
    auto U0 = LaurentRing::chart(F, 2, chart);
    CHECK_NOTHROW(U0.make({{F->one(), {-2, 1, 1}}}));
    CHECK_THROWS_AS(U0.make({{F->one(), {-1, 1, 1}}}), ExponentOutOfChart);
    CHECK_THROWS_AS(U0.make({{F->one(), {1, -1, 0}}}), ExponentOutOfChart);
}

TEST_CASE("multidegree") {
    auto F = GaloisField::of_order(3);
    LaurentRing L(F, {ExponentRule::Any, ExponentRule::Any});
    auto a = L.make({{F->one(), {2, -1}}});
    CHECK(L.multidegree(a) == std::vector<int>{2, -1});
    CHECK_FALSE(L.multidegree(L.make({{F->one(), {1, 0}}, {F->one(), {0, 1}}})));
    CHECK_FALSE(L.multidegree(L.zero()));
    auto b = L.make({{F->from_int(2), {-3, 4}}});
    CHECK(L.multidegree(L.mul(a, b)) == std::vector<int>{-1, 3});
}

TEST_CASE("Laurent ring axioms") {
    std::mt19937_64 rng(7);
    auto F = GaloisField::of_order(9);
    unsigned chart[] = {1};
    auto U1 = LaurentRing::chart(F, 2, chart);
    CHECK(axiom_failures(U1, rng, 200) == 0);
    LaurentRing L(GaloisField::of_order(2), {ExponentRule::Any, ExponentRule::NonNegative, ExponentRule::Any});
    CHECK(axiom_failures(L, rng, 200) == 0);
    for (int i = 0; i < 100; ++i) CHECK(U1.contains(U1.random(rng)));
}
