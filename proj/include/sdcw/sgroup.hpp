#pragma once

#include "sdcw/sset.hpp"

namespace sdcw {

struct FiniteGroup {
    int n = 1;
    std::vector<std::vector<int>> mul;
    int e = 0;
    std::vector<int> inv;
    void validate() const;
};

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);

// Truncated simplicial group with finite levels; face/degeneracy homomorphisms
// as index maps.
struct SimplicialGroupF {
    int cap = 0;
    std::vector<FiniteGroup> level;
    std::vector<std::vector<std::vector<int>>> face;  // face[n][i]: G_n -> G_{n-1}
    std::vector<std::vector<std::vector<int>>> degen; // degen[n][i]: G_n -> G_{n+1}
    void validate() const;
};

SimplicialGroupF constant_sgroup(const FiniteGroup& G, int cap);

// Right action of G on an explicit simplicial set X, levelwise.
struct SGroupAction {
    ExplicitSSet X;
    SimplicialGroupF G;
    std::vector<std::vector<std::vector<int>>> act; // act[n][x][g]
    void validate() const;
};

SGroupAction trivial_action_on_point(const SimplicialGroupF& G);

// Borel-style homotopy quotient [X/G]_n = X_n x G_{n-1} x ... x G_0, with the
// universal-bundle face/degeneracy formulas.
ExplicitSSet homotopy_quotient_explicit(const SGroupAction& A);
SSet homotopy_quotient(const SGroupAction& A);

// classifying space: [point/G]
ExplicitSSet wbar_explicit(const SimplicialGroupF& G);
SSet wbar(const SimplicialGroupF& G);

} // namespace sdcw
