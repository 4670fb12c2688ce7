#include "wittdiv/maps.hpp"
#include "wittdiv/errors.hpp"

#include <doctest.h>

using namespace wittdiv;

TEST_CASE("top cohomology monomial basis") {
    CHECK(top_basis(1, 2) == std::vector<std::vector<long long>>{{-1, -1}});
    CHECK(top_basis(1, 1).empty());
    CHECK(top_basis(2, 3) == std::vector<std::vector<long long>>{{-1, -1, -1}});
    // h^N(O(-s)) = C(s-1, N)
    for (long long s = 1; s <= 9; ++s) CHECK(top_basis(2, s).size() == classical_h(2, -s)[2]);
}

TEST_CASE("Frobenius on H^N(O(-s)) is injective") {
    auto r = frobenius_on_top_H(1, 2, 2);
    REQUIRE(r.basis.size() == 1);
    CHECK(r.images.front() == std::vector<long long>{-2, -2});
    CHECK(r.target_dimension == 3);
    CHECK(r.injective());

    auto vacuous = frobenius_on_top_H(1, 1, 2);
    CHECK(vacuous.basis.empty());
    CHECK(vacuous.injective());

    auto plane = frobenius_on_top_H(2, 3, 2);
    CHECK(plane.basis.size() == 1);
    CHECK(plane.injective());

    for (unsigned p : {2u, 3u})
        for (unsigned N = 1; N <= 2; ++N)
            for (long long s = 1; s <= 6; ++s) {
                auto x = frobenius_on_top_H(N, s, p);
                CHECK(x.rank == x.basis.size());
                CHECK(x.support.size() == x.basis.size());
                CHECK(x.injective());
            }
    CHECK_THROWS_AS(frobenius_on_top_H(1, 0, 2), InvalidArgument);
}

TEST_CASE("Verschiebung into the next Witt level") {
    auto F2 = GaloisField::prime(2);
    auto r = verschiebung_on_H(1, 2, F2, 1);
    CHECK(r.certificate);
    CHECK(r.injective());
    // H^1(O(-4)) has order 2^3
    CHECK(r.brute_force.source_log_order == 3);

    auto degenerate = verschiebung_on_H(1, 0, F2, 1);
    CHECK_FALSE(degenerate.certificate);
    CHECK(degenerate.brute_force.source_log_order == 0);

    CHECK(verschiebung_on_H(2, 1, F2, 1).certificate);
}

TEST_CASE("torsion probe on the projective line") {
    auto F2 = GaloisField::prime(2);
    auto a = finite_level_torsion_probe(1, 2, F2, 2);
    CHECK(a.log_order == 4);
    CHECK(a.expected_log_order == 4);
    CHECK(a.frobenius_injective);
    CHECK(a.verschiebung_injective);
    CHECK(a.fv_equals_p);

    auto b = finite_level_torsion_probe(1, 1, F2, 2);
    CHECK(b.log_order == 1);
    CHECK(b.expected_log_order == 1);
    CHECK(b.fv_equals_p);
}

TEST_CASE("induced maps at higher level") {
    auto F3 = GaloisField::prime(3);
    for (long long s = 1; s <= 3; ++s) {
        CAPTURE(s);
        auto p = finite_level_torsion_probe(2, s, F3, 2);
        CHECK(p.log_order == p.expected_log_order);
        CHECK(p.frobenius_injective);
        CHECK(p.verschiebung_injective);
        CHECK(p.fv_equals_p);
    }
    auto F4 = GaloisField::of_order(4);
    auto q = finite_level_torsion_probe(1, 3, F4, 2);
    CHECK(q.log_order == q.expected_log_order);
    CHECK(q.log_torsion.back() == q.log_order);
    CHECK(q.fv_equals_p);
}
