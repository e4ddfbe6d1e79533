#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcw/sgroup.hpp"

using namespace sdcw;

TEST_CASE("wbar of the trivial group is a point in every level") {
    auto G = constant_sgroup(trivial_group(), 4);
    auto W = wbar_explicit(G);
    for (int n = 0; n <= 4; ++n) CHECK(W.sizes[n] == 1);
}

TEST_CASE("wbar of constant Z/2: level n has 2^n elements") {
    auto G = constant_sgroup(cyclic_group(2), 4);
    auto W = wbar_explicit(G);
    for (int n = 0; n <= 4; ++n) CHECK(W.sizes[n] == (1 << n));
    SSet B = from_explicit(W);
    B.validate();
    CHECK(B.nd_count(0) == 1);
    CHECK(B.nd_count(1) == 1);
}

TEST_CASE("pi_1 of wbar Z/2 and Z/3 via edge paths") {
    for (int m : {2, 3}) {
        auto G = constant_sgroup(cyclic_group(m), 3);
        SSet B = wbar(G);
        CHECK(edge_path_group_order(B) == m);
    }
}

TEST_CASE("wbar of a finite constant group is Kan") {
    auto G = constant_sgroup(cyclic_group(2), 4);
    SSet B = wbar(G);
    CHECK(kan_probe(B, 3).empty());
}

TEST_CASE("homotopy quotient of G acting on itself is contractible-ish") {
    auto G = constant_sgroup(cyclic_group(3), 3);
    SGroupAction A;
    A.G = G;
    // X = G with right translation
    A.X.cap = 3;
    A.X.sizes.assign(4, 3);
    A.X.face.resize(4);
    A.X.degen.resize(4);
    std::vector<int> id = {0, 1, 2};
    for (int n = 1; n <= 3; ++n) A.X.face[n].assign(n + 1, id);
    for (int n = 0; n < 3; ++n) A.X.degen[n].assign(n + 1, id);
    A.act.resize(4);
    for (int n = 0; n <= 3; ++n) {
        A.act[n].assign(3, std::vector<int>(3));
        for (int x = 0; x < 3; ++x)
            for (int g = 0; g < 3; ++g) A.act[n][x][g] = G.level[n].mul[x][g];
    }
    A.validate();
    auto Q = homotopy_quotient_explicit(A);
    CHECK(Q.sizes[2] == 3 * 3 * 3); // |X_2| |G_1| |G_0|
    SSet S = from_explicit(Q);
    CHECK(component_count(S) == 1);
    CHECK(edge_path_group_order(S) == 1);
}

TEST_CASE("trivial group quotient returns X itself") {
    auto G = constant_sgroup(trivial_group(), 3);
    SGroupAction A = trivial_action_on_point(G);
    // replace X by a 2-point discrete set
    A.X.sizes.assign(4, 2);
    std::vector<int> id2 = {0, 1};
    for (int n = 1; n <= 3; ++n) A.X.face[n].assign(n + 1, id2);
    for (int n = 0; n < 3; ++n) A.X.degen[n].assign(n + 1, id2);
    A.act.assign(4, std::vector<std::vector<int>>(2, std::vector<int>(1, 0)));
    for (int n = 0; n <= 3; ++n)
        for (int x = 0; x < 2; ++x) A.act[n][x] = {x};
    A.validate();
    auto Q = homotopy_quotient_explicit(A);
    for (int n = 0; n <= 3; ++n) CHECK(Q.sizes[n] == 2);
}
