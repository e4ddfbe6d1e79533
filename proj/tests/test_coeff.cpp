#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcw/matrix.hpp"

using namespace sdcw;

TEST_CASE("field axioms hold exactly on samples") {
    for (int p : {0, 2, 3, 5, 7}) {
        Field k(p);
        SplitMix64 rng(17 + p);
        for (int t = 0; t < 200; ++t) {
            Scalar a = rng.scalar(k), b = rng.scalar(k), c = rng.scalar(k);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == Scalar::zero(k));
            if (!a.is_zero()) CHECK(a * a.inv() == Scalar::one(k));
        }
    }
}

TEST_CASE("mixing characteristics is rejected") {
    Scalar a(Field(2), 1), b(Field(3), 1);
    CHECK_THROWS_AS(a + b, Error);
}

TEST_CASE("rank_kernel: zero map k^3 -> k^2") {
    Field k(5);
    Mat m = Mat::zero(k, 2, 3);
    auto rk = rank_kernel(m);
    CHECK(rk.rank == 0);
    CHECK(rk.kernel.size() == 3);
}

TEST_CASE("rank_kernel: identity on k^4") {
    Field k(3);
    auto rk = rank_kernel(Mat::identity(k, 4));
    CHECK(rk.rank == 4);
    CHECK(rk.kernel.empty());
}

TEST_CASE("rank_kernel: [[1,1],[1,1]] over F_2 has rank 1, kernel dim 1") {
    Field k(2);
    Mat m(k, 2, 2);
    m.at(0, 0) = m.at(0, 1) = m.at(1, 0) = m.at(1, 1) = Scalar::one(k);
    auto rk = rank_kernel(m);
    CHECK(rk.rank == 1);
    CHECK(rk.kernel.size() == 1);
    for (const Vec& v : rk.kernel) CHECK(is_zero_vec(mat_vec(m, v)));
}

TEST_CASE("solve_affine basics") {
    Field k(7);
    SUBCASE("identity") {
        Mat id = Mat::identity(k, 3);
        Vec b = {Scalar(k, 2), Scalar(k, 5), Scalar(k, 6)};
        auto s = solve_affine(id, b);
        REQUIRE(s.solvable);
        CHECK(vec_eq(s.x, b));
        CHECK(s.kernel.empty());
    }
    SUBCASE("zero system") {
        Mat z = Mat::zero(k, 2, 4);
        auto s = solve_affine(z, zero_vec(k, 2));
        REQUIRE(s.solvable);
        CHECK(is_zero_vec(s.x));
        CHECK(s.kernel.size() == 4);
    }
    SUBCASE("[[1,1]] over F_2 with b=[1]") {
        Field f2(2);
        Mat m(f2, 1, 2);
        m.at(0, 0) = m.at(0, 1) = Scalar::one(f2);
        Vec b = {Scalar::one(f2)};
        auto s = solve_affine(m, b);
        REQUIRE(s.solvable);
        CHECK(vec_eq(mat_vec(m, s.x), b));
        CHECK(s.kernel.size() == 1);
    }
}

TEST_CASE("solve_affine agrees with exhaustive enumeration over F_p, dims <= 8") {
    for (int p : {2, 3}) {
        Field k(p);
        SplitMix64 rng(99 + p);
        for (int t = 0; t < 30; ++t) {
            int rows = 1 + (int)rng.below(3), cols = 1 + (int)rng.below(4);
            Mat m(k, rows, cols);
            for (auto& x : m.a) x = rng.scalar(k);
            Vec b(rows, Scalar::zero(k));
            for (auto& x : b) x = rng.scalar(k);
            auto s = solve_affine(m, b);
            bool found = false;
            long long count = 0;
            enumerate_vectors(k, cols, [&](const Vec& v) {
                if (vec_eq(mat_vec(m, v), b)) {
                    found = true;
                    ++count;
                }
                return true;
            });
            CHECK(s.solvable == found);
            if (s.solvable) {
                CHECK(vec_eq(mat_vec(m, s.x), b));
                CHECK(count == pow_ll(p, (int)s.kernel.size()));
            }
        }
    }
}

TEST_CASE("rank agrees with exhaustive enumeration rank over F_2, dims <= 6") {
    Field k(2);
    SplitMix64 rng(1234);
    for (int t = 0; t < 20; ++t) {
        int rows = 1 + (int)rng.below(3), cols = 1 + (int)rng.below(3);
        Mat m(k, rows, cols);
        for (auto& x : m.a) x = rng.scalar(k);
        // image size = 2^rank by direct enumeration of inputs
        std::set<std::vector<long long>> image;
        enumerate_vectors(k, cols, [&](const Vec& v) {
            Vec y = mat_vec(m, v);
            std::vector<long long> key;
            for (const auto& s : y) key.push_back(s.fp_value());
            image.insert(key);
            return true;
        });
        CHECK((long long)image.size() == pow_ll(2, rank_kernel(m).rank));
    }
}

TEST_CASE("composition is associative on samples") {
    Field k(0);
    SplitMix64 rng(5);
    for (int t = 0; t < 10; ++t) {
        Mat a(k, 2, 3), b(k, 3, 2), c(k, 2, 2);
        for (auto& x : a.a) x = rng.scalar(k);
        for (auto& x : b.a) x = rng.scalar(k);
        for (auto& x : c.a) x = rng.scalar(k);
        CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    }
}

TEST_CASE("exact rational arithmetic, no rounding") {
    Field k(0);
    Scalar third = Scalar::frac(k, 1, 3);
    Scalar sum = third + third + third;
    CHECK(sum == Scalar::one(k));
}
