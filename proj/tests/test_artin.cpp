#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcw/artin.hpp"

using namespace sdcw;

TEST_CASE("validate_ring on the standard rings") {
    Field k(3);
    auto de = dual_numbers(k);
    CHECK(de.dim == 2);
    CHECK(de.nilpotency == 2);
    auto t3 = truncated_poly(k, 3);
    CHECK(t3.dim == 3);
    CHECK(t3.nilpotency == 3);
    auto xy = square_zero_pair(k);
    CHECK(xy.dim == 3);
    CHECK(xy.nilpotency == 2);
}

TEST_CASE("validate_ring rejects bad input with named errors") {
    Field k(2);
    // e1*e1 = e1: idempotent maximal ideal, not nilpotent
    std::vector<std::vector<Vec>> mul(2, std::vector<Vec>(2, zero_vec(k, 2)));
    mul[0][0] = {Scalar::one(k), Scalar::zero(k)};
    mul[0][1] = {Scalar::zero(k), Scalar::one(k)};
    mul[1][0] = mul[0][1];
    mul[1][1] = {Scalar::zero(k), Scalar::one(k)};
    try {
        validate_ring(k, {}, mul);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind == "non_artinian");
    }
}

TEST_CASE("fiber products") {
    Field k(2);
    auto A = truncated_poly(k, 3);
    SUBCASE("A x_A A along identities is A") {
        auto fp = fiber_product(ring_identity(A), ring_identity(A));
        CHECK(fp.ring.dim == A.dim);
        CHECK(rings_isomorphic(fp.ring, A));
    }
    SUBCASE("k[eps] x_k k[eps] is the square-zero pair") {
        auto de = dual_numbers(k);
        auto fp = fiber_product(residue_map(de), residue_map(de));
        CHECK(fp.ring.dim == 3);
        CHECK(rings_isomorphic(fp.ring, square_zero_pair(k)));
    }
    SUBCASE("A x_B B = A for a surjection A -> B") {
        // A = k[t]/t^3 -> B = k[eps]
        auto B = dual_numbers(k);
        Mat proj(k, 2, 3);
        proj.at(0, 0) = Scalar::one(k);
        proj.at(1, 1) = Scalar::one(k);
        RingMorphism f{A, B, proj};
        f.validate();
        auto fp = fiber_product(f, ring_identity(B));
        CHECK(fp.ring.dim == A.dim);
        CHECK(rings_isomorphic(fp.ring, A));
    }
}

TEST_CASE("factor_small") {
    Field k(2);
    auto A = truncated_poly(k, 3);
    SUBCASE("t^3 -> k factors in two small steps through k[eps]") {
        RingMorphism f = compose_ring(ring_identity(ring_k(k)), residue_map(A));
        auto steps = factor_small(f);
        CHECK(steps.size() == 2);
        // composition equals f
        Mat comp = steps[0].f.map;
        for (size_t i = 1; i < steps.size(); ++i) comp = mat_mul(steps[i].f.map, comp);
        CHECK(comp == f.map);
        CHECK(steps[0].f.dst.dim == 2); // middle ring is k[eps]
    }
    SUBCASE("small extension input returns itself") {
        auto B = dual_numbers(k);
        Mat proj(k, 2, 3);
        proj.at(0, 0) = Scalar::one(k);
        proj.at(1, 1) = Scalar::one(k);
        RingMorphism f{A, B, proj};
        auto steps = factor_small(f);
        CHECK(steps.size() == 1);
        CHECK(steps[0].f.map == f.map);
    }
    SUBCASE("identity factors into nothing") {
        CHECK(factor_small(ring_identity(A)).empty());
    }
}

TEST_CASE("enumerate_small_extensions golden counts") {
    Field k(2);
    SUBCASE("over k: only the dual numbers") {
        auto exts = enumerate_small_extensions(ring_k(k));
        CHECK(exts.size() == 1);
        CHECK(rings_isomorphic(exts[0].f.src, dual_numbers(k)));
    }
    SUBCASE("over k[eps]: split and k[t]/t^3") {
        auto exts = enumerate_small_extensions(dual_numbers(k));
        CHECK(exts.size() == 2);
        bool found_t3 = false;
        for (const auto& e : exts)
            if (rings_isomorphic(e.f.src, truncated_poly(k, 3))) found_t3 = true;
        CHECK(found_t3);
    }
}

TEST_CASE("enumerate_test_rings") {
    Field k(2);
    CHECK(enumerate_test_rings(k, 1).size() == 1);
    auto d2 = enumerate_test_rings(k, 2);
    CHECK(d2.size() == 1);
    CHECK(rings_isomorphic(d2[0], dual_numbers(k)));
    auto d3 = enumerate_test_rings(k, 3);
    CHECK(d3.size() == 2); // square-zero pair and k[t]/t^3
}

TEST_CASE("square-zero simplicial rings") {
    Field k(3);
    SUBCASE("constant k gives constant k[eps]") {
        auto S = square_zero_module(constant_module(k, 1, 3));
        S.validate();
        for (int n = 0; n <= 3; ++n) CHECK(S.level[n].dim == 2);
    }
    SUBCASE("V = denormalization of k[1]: cotangent pi_1 = k") {
        auto S = square_zero(ChainComplex::concentrated(k, 1, 1), 3);
        S.validate();
        auto pi = homotopy_groups(S.m_module());
        CHECK(pi[0] == 0);
        CHECK(pi[1] == 1);
        CHECK(pi[2] == 0);
    }
    SUBCASE("V = 0 gives the constant ring k") {
        auto S = square_zero_module(constant_module(k, 0, 2));
        S.validate();
        CHECK(S.level[0].dim == 1);
    }
    SUBCASE("cotangent top at the cap is rejected") {
        auto S = square_zero(ChainComplex::concentrated(k, 2, 1), 2);
        CHECK_THROWS_AS(S.validate(), Error);
    }
}

TEST_CASE("power rings at a point and over connected sets") {
    Field k(2);
    SUBCASE("constant A: A^K = A for connected K") {
        auto A = constant_simplicial_ring(truncated_poly(k, 3), 3);
        for (auto K : {sset_simplex(0, 3), sset_simplex(2, 3), sset_cube(2, 3)}) {
            auto P = power_point_ring(A, K);
            CHECK(P.ring.dim == 3);
            CHECK(rings_isomorphic(P.ring, truncated_poly(k, 3)));
        }
    }
    SUBCASE("A^{K + K'} = A^K x_k A^{K'}") {
        auto Ssq = square_zero(ChainComplex::concentrated(k, 1, 1), 3);
        SSet K = sset_simplex(1, 3), K2 = sset_point(3);
        SSet KK = sset_coproduct(K, K2);
        auto P = power_point_ring(Ssq, KK);
        auto P1 = power_point_ring(Ssq, K);
        auto P2 = power_point_ring(Ssq, K2);
        CHECK(P.ring.dim == P1.ring.dim + P2.ring.dim - 1);
        auto fp = fiber_product(residue_map(P1.ring), residue_map(P2.ring));
        CHECK(rings_isomorphic(P.ring, fp.ring));
    }
}

TEST_CASE("power ring simplicial structure: A^{Delta^0} recovers A levelwise") {
    Field k(3);
    auto A = square_zero(ChainComplex::concentrated(k, 1, 1), 3);
    auto P = power_ring(A, sset_point(3), 2);
    P.ring.validate();
    for (int i = 0; i <= 2; ++i) {
        CHECK(P.ring.level[i].dim == A.level[i].dim);
        CHECK(rings_isomorphic(P.ring.level[i], A.level[i]));
    }
}

TEST_CASE("power functoriality (A^K)^L = A^{K x L}") {
    Field k(2);
    auto A = square_zero(ChainComplex::concentrated(k, 1, 1), 3);
    SSet K = sset_simplex(1, 3), L = sset_simplex(1, 3);
    auto AK = power_ring(A, K, 3);
    auto lhs = power_point_ring(AK.ring, L);
    auto KL = sset_product(K, L, 3);
    auto rhs = power_point_ring(A, KL.Z);
    CHECK(lhs.ring.dim == rhs.ring.dim);
    CHECK(rings_isomorphic(lhs.ring, rhs.ring));
}

TEST_CASE("extend_simplicial_ring agrees with native construction") {
    Field k(3);
    auto small = square_zero(ChainComplex::concentrated(k, 1, 1), 2);
    auto ext = extend_simplicial_ring(small, 4);
    auto native = square_zero(ChainComplex::concentrated(k, 1, 1), 4);
    for (int n = 0; n <= 4; ++n) {
        CHECK(ext.level[n].dim == native.level[n].dim);
        CHECK(rings_isomorphic(ext.level[n], native.level[n]));
    }
    ext.validate();
}
