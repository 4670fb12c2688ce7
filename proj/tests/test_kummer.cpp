#include "wittdiv/errors.hpp"
#include "wittdiv/kummer.hpp"

#include <doctest.h>

using namespace wittdiv;

namespace {

LaurentWittVector y_teich(const KummerCover& K, int power = 1) {
    std::vector<int> e{power};
    return K.cover_witt().teichmuller(K.cover().monomial(K.field().one(), e));
}

}  // namespace

TEST_CASE("Kummer cover basics") {
    KummerCover K(GaloisField::of_order(4), 3, 3);
    CHECK(K.field().multiplicative_order(K.zeta()) == 3);
    // sigma(teich y) = teich(zeta y)
    std::vector<int> one{1};
    auto zy = K.cover_witt().teichmuller(K.cover().monomial(K.zeta(), one));
    CHECK(K.cover_witt().equal(K.galois_on_witt(y_teich(K)), zy));
    // 1/ell really is an inverse
    WittRing<GaloisField> W(GaloisField::of_order(4), 3);
    CHECK(W.equal(W.mul(K.inverse_of_ell(), W.from_integer(3)), W.one()));
}

TEST_CASE("trace of Teichmuller lifts") {
    for (unsigned n = 1; n <= 3; ++n) {
        KummerCover K(GaloisField::of_order(4), 3, n);
        CHECK(K.base_witt().is_zero(K.trace(y_teich(K))));
        CHECK(K.base_witt().is_zero(K.trace(y_teich(K, 2))));
        CHECK(K.base_witt().equal(K.trace(K.cover_witt().one()), K.base_witt().one()));
        // y^3 = x is invariant
        auto x = K.base_witt().teichmuller(K.base().monomial(K.field().one(), std::vector<int>{1}));
        CHECK(K.base_witt().equal(K.trace(y_teich(K, 3)), x));
    }
}

TEST_CASE("pullback of sections") {
    std::mt19937_64 rng(11);
    KummerCover K(GaloisField::of_order(4), 3, 2);
    CHECK(K.pulled_back_divisor(mpq_class(1, 3)) == 1);
    CHECK(K.pulled_back_divisor(mpq_class(2, 3)) == 2);
    CHECK(K.pulled_back_divisor(0) == 0);
    CHECK_THROWS_AS(K.pulled_back_divisor(mpq_class(1, 2)), DivisorNotCompatible);
    for (int i = 0; i < 100; ++i) {
        auto phi = random_affine_member(K.base_witt(), {mpq_class(2, 3)}, rng);
        auto psi = K.pullback_section(phi, mpq_class(2, 3));
        CHECK(K.cover_member(psi, 2));
        auto zero_phi = random_affine_member(K.base_witt(), {mpq_class(0)}, rng);
        CHECK(K.cover_member(K.pullback_section(zero_phi, 0), 0));
    }
    // x^{-1} is not a section of O(1/3 div x) at level 0
    auto bad = K.base_witt().teichmuller(K.base().monomial(K.field().one(), std::vector<int>{-1}));
    CHECK_THROWS_AS(K.pullback_section(bad, mpq_class(1, 3)), MembershipViolation);
}

TEST_CASE("invalid covers") {
    CHECK_THROWS_AS(KummerCover(GaloisField::prime(2), 2, 2), OrderDivisibleByP);
    CHECK_THROWS_AS(KummerCover(GaloisField::prime(3), 3, 2), OrderDivisibleByP);
    CHECK_THROWS_AS(KummerCover(GaloisField::prime(2), 3, 2), InvalidArgument);
}

TEST_CASE("trace splits the pullback") {
    std::mt19937_64 rng(5);
    for (unsigned n = 1; n <= 3; ++n) {
        KummerCover K4(GaloisField::of_order(4), 3, n);
        for (auto a : {mpq_class(0), mpq_class(1, 3), mpq_class(-2, 3), mpq_class(5, 3)}) {
            auto r = trace_split_check(K4, a, 20, rng);
            CHECK(r.passed());
        }
        KummerCover K3(GaloisField::prime(3), 2, n);
        for (auto a : {mpq_class(1, 2), mpq_class(-3, 2)}) CHECK(trace_split_check(K3, a, 20, rng).passed());
    }
}

TEST_CASE("cyclotomic extensions") {
    auto e = EtaleExtension::make(2, 3);
    CHECK(e.etale);
    CHECK(e.extension_field->order() == 4);
    CHECK(EtaleExtension::make(2, 5).extension_field->order() == 16);
    CHECK(EtaleExtension::make(3, 2).extension_field->order() == 3);
    // 1 + z + ... + z^6 splits over F_2
    CHECK_THROWS_AS(EtaleExtension::make(2, 7), InvalidArgument);
    CHECK_THROWS_AS(EtaleExtension::make(2, 4), InvalidArgument);
}

TEST_CASE("etale base change is an isomorphism") {
    std::mt19937_64 rng(3);
    auto E23 = EtaleExtension::make(2, 3);
    CHECK(etale_pullback_iso_check(E23, {0}, 2, 2, 10, rng).passed);
    CHECK(etale_pullback_iso_check(E23, {1}, 3, 2, 10, rng).passed);
    CHECK(etale_pullback_iso_check(EtaleExtension::make(3, 2), {mpq_class(1, 2)}, 2, 2, 10, rng).passed);
    auto two = etale_pullback_iso_check(E23, {mpq_class(1, 3), mpq_class(-1, 2)}, 2, 2, 10, rng);
    CHECK(two.passed);
    CHECK(two.pieces > 0);
    CHECK(etale_pullback_iso_check(EtaleExtension::make(2, 5), {mpq_class(2, 5)}, 2, 2, 10, rng).passed);
}
