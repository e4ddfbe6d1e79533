#pragma once

#include "sdcw/chain.hpp"
#include "sdcw/sset.hpp"

namespace sdcw {

// Truncated simplicial k-module: levels V_0..V_cap with face/degeneracy matrices.
struct SimplicialModule {
    Field k;
    int cap = 0;
    std::vector<int> dims;
    std::vector<std::vector<Mat>> face;  // face[n][i]: V_n -> V_{n-1}, 1 <= n <= cap
    std::vector<std::vector<Mat>> degen; // degen[n][i]: V_n -> V_{n+1}, 0 <= n < cap

    int dim(int n) const { return (n >= 0 && n <= cap) ? dims[n] : 0; }
    void validate() const; // all simplicial identities as matrix equalities
};

// Normalization data: N_n = intersect_{i>0} ker d_i, with d_0 as differential,
// plus the degenerate complement and the projection onto N along it.
struct Normalization {
    ChainComplex C;
    std::vector<std::vector<Vec>> n_basis; // basis of N_n inside V_n
    std::vector<std::vector<Vec>> d_basis; // basis of the degenerate part D_n
    std::vector<Mat> proj_n;               // V_n -> N-coordinates (dim C_n x dim V_n)
};

Normalization normalize(const SimplicialModule& V);

// Dold-Kan inverse: levels D^n = sum over surjections [n]->>[m] of copies of C_m.
SimplicialModule denormalize_module(const ChainComplex& C, int n_max);

// pi_i = H_i of the normalized complex (valid through cap-1; the top level is a
// truncation artifact).
std::vector<int> homotopy_groups(const SimplicialModule& V);
// cross-check: homology of the unnormalized complex (alternating face sum)
std::vector<int> homotopy_groups_unnormalized(const SimplicialModule& V);

SimplicialModule constant_module(Field k, int dim, int cap);
SimplicialModule free_module_on(const SSet& X, Field k, int cap);
// conjugate all levels by invertible base changes (identities preserved)
SimplicialModule base_change(const SimplicialModule& V, const std::vector<Mat>& P);
// direct sum
SimplicialModule module_sum(const SimplicialModule& A, const SimplicialModule& B);

// labels of the denormalized basis: (surjection, index into C_m)
struct DenormBasis {
    std::vector<std::vector<std::pair<Monotone, int>>> labels; // per level
};
DenormBasis denormalize_labels(const ChainComplex& C, int n_max);

} // namespace sdcw
