#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcw/smod.hpp"

using namespace sdcw;

namespace {
// random complex: direct sum of shifted [k -> k] pieces and bare k's, conjugated
ChainComplex random_complex(Field k, SplitMix64& rng, int top) {
    ChainComplex C;
    C.k = k;
    C.dims.assign(top + 1, 0);
    C.d.resize(top + 1);
    // choose summands
    std::vector<std::pair<int, int>> pieces; // (degree, kind): kind 0 = bare, 1 = id-pair deg,deg-1
    int total = 0;
    while (total < 5) {
        int deg = (int)rng.below(top + 1);
        int kind = deg >= 1 ? (int)rng.below(2) : 0;
        pieces.push_back({deg, kind});
        total += kind ? 2 : 1;
    }
    for (auto [deg, kind] : pieces) {
        C.dims[deg] += 1;
        if (kind) C.dims[deg - 1] += 1;
    }
    C.d[0] = Mat::zero(k, 0, 0);
    for (int n = 1; n <= top; ++n) C.d[n] = Mat::zero(k, C.dims[n - 1], C.dims[n]);
    // fill identity blocks
    std::vector<int> used(top + 1, 0);
    std::vector<int> used_lower(top + 1, 0);
    // assign column/row slots: bare pieces occupy slots but no differential
    // process pairs first for deterministic layout
    std::vector<int> col(top + 1, 0);
    for (auto [deg, kind] : pieces) {
        int c = col[deg]++;
        if (kind) {
            int r = col[deg - 1]++;
            C.d[deg].at(r, c) = Scalar::one(k);
        }
    }
    C.validate();
    return C;
}

std::vector<Mat> random_base_changes(Field k, SplitMix64& rng, const std::vector<int>& dims) {
    std::vector<Mat> P;
    for (int d : dims) {
        // random invertible: identity + random strictly upper + permutation-ish
        Mat m = Mat::identity(k, d);
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) m.at(i, j) = rng.scalar(k);
        P.push_back(m);
    }
    return P;
}
} // namespace

TEST_CASE("normalize constant module") {
    Field k(3);
    auto V = constant_module(k, 2, 4);
    V.validate();
    auto N = normalize(V);
    CHECK(N.C.dim(0) == 2);
    for (int n = 1; n <= 4; ++n) CHECK(N.C.dim(n) == 0);
    auto pi = homotopy_groups(V);
    CHECK(pi[0] == 2);
    CHECK(pi[1] == 0);
}

TEST_CASE("normalize free module on Delta^1 over F_2") {
    Field k(2);
    SSet d1 = sset_simplex(1, 3);
    auto V = free_module_on(d1, k, 3);
    V.validate();
    auto N = normalize(V);
    CHECK(N.C.dim(0) == 2);
    CHECK(N.C.dim(1) == 1);
    CHECK(N.C.dim(2) == 0);
}

TEST_CASE("denormalize k[1]: level dims are binomials, pi_1 = k") {
    Field k(5);
    ChainComplex C = ChainComplex::concentrated(k, 1, 1);
    auto V = denormalize_module(C, 4);
    CHECK(V.dim(0) == 0);
    CHECK(V.dim(1) == 1);
    CHECK(V.dim(2) == 2);
    CHECK(V.dim(3) == 3);
    CHECK(V.dim(4) == 4);
    auto pi = homotopy_groups(V);
    CHECK(pi[0] == 0);
    CHECK(pi[1] == 1);
    CHECK(pi[2] == 0);
    CHECK(pi[3] == 0);
}

TEST_CASE("denormalize concentrated degree 0 is constant") {
    Field k(2);
    auto V = denormalize_module(ChainComplex::concentrated(k, 0, 3), 3);
    for (int n = 0; n <= 3; ++n) CHECK(V.dim(n) == 3);
}

TEST_CASE("acyclic complex denormalizes to contractible module") {
    Field k(3);
    ChainComplex C;
    C.k = k;
    C.dims = {0, 1, 1};
    C.d.resize(3);
    C.d[0] = Mat::zero(k, 0, 0);
    C.d[1] = Mat::zero(k, 0, 1);
    C.d[2] = Mat::identity(k, 1);
    C.validate();
    auto V = denormalize_module(C, 4);
    auto pi = homotopy_groups(V);
    for (int n = 0; n <= 3; ++n) CHECK(pi[n] == 0);
}

TEST_CASE("Dold-Kan round trip: normalize(denormalize(C)) == C") {
    for (int p : {2, 3, 0}) {
        Field k(p);
        SplitMix64 rng(42 + p);
        for (int t = 0; t < 17; ++t) {
            ChainComplex C = random_complex(k, rng, 3 + (int)rng.below(2));
            auto V = denormalize_module(C, C.top() + 1);
            auto N = normalize(V);
            REQUIRE(N.C.dims.size() == C.dims.size() + 0 + 1u + (V.cap - C.top() - 1));
            for (int n = 0; n <= C.top(); ++n) CHECK(N.C.dim(n) == C.dim(n));
            // differentials agree up to the basis ordering produced by the round trip
            auto hC = C.homology_dims();
            auto hN = N.C.homology_dims();
            for (int n = 0; n <= C.top(); ++n) CHECK(hC[n] == hN[n]);
        }
    }
}

TEST_CASE("normalized and unnormalized homology agree on random modules") {
    for (int p : {2, 3}) {
        Field k(p);
        SplitMix64 rng(7 + p);
        for (int t = 0; t < 10; ++t) {
            ChainComplex C = random_complex(k, rng, 3);
            auto V = denormalize_module(C, 4);
            auto P = random_base_changes(k, rng, V.dims);
            auto W = base_change(V, P);
            W.validate();
            auto a = homotopy_groups(W);
            auto b = homotopy_groups_unnormalized(W);
            for (int n = 0; n + 1 <= 4; ++n) CHECK(a[n] == b[n]);
        }
    }
}
