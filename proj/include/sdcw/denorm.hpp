#pragma once

#include "sdcw/dgla.hpp"

namespace sdcw {

// sign of the shuffle permutation of S u T sending the first |S| positions to S
// (in order) and the rest to T (in order); S, T disjoint
Scalar shuffle_sign(Field k, const std::vector<int>& S, const std::vector<int>& T);

// Cosimplicial denormalization of an N_0-graded DGLA: level n has basis
// (J, v) with J a strictly increasing set of positive coface indices inside
// {1..n} and v a basis element of L^{n-|J|}.
struct DenormDgla {
    Field k;
    Dgla L;
    int cap = 0;
    struct Lbl {
        std::vector<int> J;
        int li;
    };
    std::vector<std::vector<Lbl>> labels;
    std::vector<int> dims;
    std::vector<std::vector<Mat>> coface; // coface[n][i]: D^n -> D^{n+1}, 0 <= i <= n+1, n < cap
    std::vector<std::vector<Mat>> codeg;  // codeg[n][i]: D^n -> D^{n-1}, 0 <= i <= n-1
    std::vector<Mat> bracket;             // per-level Lie bracket tables

    int dim(int n) const { return (n >= 0 && n <= cap) ? dims[n] : 0; }
    Vec br(int n, const Vec& a, const Vec& b) const;
    Vec apply_coface(int i, int n, const Vec& a) const;
    Vec apply_codeg(int i, int n, const Vec& a) const;
};

DenormDgla denormalize_dgla(const Dgla& L, int cap);

// cosimplicial identity + per-level Lie axiom + coface/codegeneracy
// homomorphism report; empty = pass
std::vector<AxiomWitness> denorm_axiom_report(const DenormDgla& D);

// plain cosimplicial module
struct CosimplicialModule {
    Field k;
    int cap = 0;
    std::vector<int> dims;
    std::vector<std::vector<Mat>> coface;
    std::vector<std::vector<Mat>> codeg;
    void validate() const;
};
CosimplicialModule denorm_underlying(const DenormDgla& D);

struct Conormalization {
    CochainComplex total;                  // unnormalized: alternating coface sum
    CochainComplex Nc;                     // conormalized complex
    std::vector<std::vector<Vec>> nc_basis;
    std::vector<std::vector<Vec>> deg_basis; // the coface summand D^n
    std::vector<Mat> proj_nc;              // C^n -> Nc coordinates
    bool matching_iso_ok = false;          // sigma-bar: D^n -> M^{n-1}C bijective
};
Conormalization conormalize(const CosimplicialModule& C);

// nilpotent Lie algebra structure on D^n(L) (x) m(A) (single piece in degree 0),
// the group underlying exp at level n
NilpotentDgla level_lie(const DenormDgla& D, int n, const TestRing& A);

} // namespace sdcw
