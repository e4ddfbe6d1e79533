#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sdcw/sset.hpp"

using namespace sdcw;

TEST_CASE("simplex cell counts and identities") {
    SSet d2 = sset_simplex(2, 4);
    CHECK(d2.nd_count(0) == 3);
    CHECK(d2.nd_count(1) == 3);
    CHECK(d2.nd_count(2) == 1);
    CHECK(d2.nd_count(3) == 0);
    d2.validate();
    // full level sizes: |Delta^2_n| = C(n+3, 2+1)... Delta^2_1 = 6, Delta^2_2 = 10
    CHECK(d2.full_level(1).size() == 6);
    CHECK(d2.full_level(2).size() == 10);
}

TEST_CASE("boundary of Delta^2") {
    SSet b = sset_boundary(2, 3);
    CHECK(b.nd_count(0) == 3);
    CHECK(b.nd_count(1) == 3);
    CHECK(b.nd_count(2) == 0);
    b.validate();
}

TEST_CASE("cube I^n counts") {
    SSet i0 = sset_cube(0, 2);
    CHECK(i0.nd_count(0) == 1); // point
    SSet i1 = sset_cube(1, 3);
    CHECK(i1.nd_count(0) == 2);
    CHECK(i1.nd_count(1) == 1);
    SSet i2 = sset_cube(2, 4);
    i2.validate();
    CHECK(i2.nd_count(0) == 4);
    CHECK(i2.nd_count(1) == 5); // 4 sides + diagonal
    CHECK(i2.nd_count(2) == 2); // two triangles
    CHECK(i2.nd_count(3) == 0);
}

TEST_CASE("product Delta^1 x Delta^1 matches the cube") {
    SSet d1 = sset_simplex(1, 3);
    ProductSSet p = sset_product(d1, d1, 3);
    p.Z.validate();
    CHECK(p.Z.nd_count(0) == 4);
    CHECK(p.Z.nd_count(1) == 5);
    CHECK(p.Z.nd_count(2) == 2);
    // full level 1: |(Delta^1 x Delta^1)_1| = 3*3 = 9
    CHECK(p.Z.full_level(1).size() == 9);
}

TEST_CASE("cube coordinate maps validate") {
    int cap = 3;
    SSet i1 = sset_cube(1, cap), i2 = sset_cube(2, cap);
    SMap ins0 = cube_insert(i1, i2, 1, 0);
    ins0.validate();
    SMap ins1 = cube_insert(i1, i2, 2, 1);
    ins1.validate();
    SMap del = cube_delete(i2, i1, 1);
    del.validate();
    SMap mn = cube_min(i2, i1, 1);
    mn.validate();
    SMap prj = cube_project_first(i2, i1, 1);
    prj.validate();
}

TEST_CASE("nerve of the one-object identity category is a point") {
    SSet n = sset_nerve(fincat_point(), 4);
    for (int d = 0; d <= 4; ++d) CHECK(n.full_level(d).size() == 1);
}

TEST_CASE("nerve of the arrow category") {
    SSet n = sset_nerve(fincat_arrow(), 3);
    n.validate();
    CHECK(n.nd_count(0) == 2);
    CHECK(n.nd_count(1) == 1);
    CHECK(n.nd_count(2) == 0); // f composed with identities only
}

TEST_CASE("simplicial cohomology of spheres and disks") {
    Field k(3);
    SSet s1 = sset_circle(4);
    s1.validate();
    auto h = sset_cohomology(s1, k, 4);
    CHECK(h.at(0) == 1);
    CHECK(h.at(1) == 1);
    CHECK(h.at(2) == 0);
    SSet d3 = sset_simplex(3, 4);
    auto h2 = sset_cohomology(d3, k, 4);
    CHECK(h2.at(0) == 1);
    CHECK(h2.at(1) == 0);
    SSet dd = sset_boundary(2, 4); // circle up to homotopy
    auto h3 = sset_cohomology(dd, k, 4);
    CHECK(h3.at(0) == 1);
    CHECK(h3.at(1) == 1);
}

TEST_CASE("components") {
    SSet two = sset_coproduct(sset_point(2), sset_simplex(1, 2));
    CHECK(component_count(two) == 2);
}

TEST_CASE("kan probe: Delta^0 fine, Delta^1 fails at horn dimension 2") {
    SSet pt = sset_point(3);
    CHECK(kan_probe(pt, 2).empty());
    SSet d1 = sset_simplex(1, 3);
    auto f1 = kan_probe(d1, 1);
    CHECK(f1.empty()); // degenerate fillers handle all 1-horns
    auto f2 = kan_probe(d1, 2);
    CHECK(!f2.empty()); // Lambda^2_0 asking for an inverse edge is unfilled
}

TEST_CASE("product projections behave on vertices") {
    SSet d1 = sset_simplex(1, 2);
    SSet i2 = sset_cube(2, 2);
    // parts of product cells recombine
    ProductSSet p = sset_product(d1, i2, 2);
    for (int lvl = 0; lvl <= 2; ++lvl)
        for (int c = 0; c < p.Z.nd_count(lvl); ++c) {
            auto [vx, vy] = p.parts(lvl, c);
            SimplexVal back = p.pair_value(vx, vy);
            CHECK(back.nondegenerate());
            CHECK(back.cell == c);
        }
}
