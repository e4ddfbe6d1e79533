#pragma once

#include "sdcw/smod.hpp"

namespace sdcw {

// Finite local Artinian k-algebra with residue field k. Basis convention:
// index 0 is the unit, indices 1..dim-1 span the maximal ideal m.
struct TestRing {
    Field k;
    int dim = 1;
    std::vector<std::string> names;
    std::vector<std::vector<Vec>> mul; // mul[i][j] = coordinates of e_i e_j
    int nilpotency = 1;                // least N with m^N = 0

    int mdim() const { return dim - 1; }
    // multiply maximal ideal elements (coordinates of length mdim)
    Vec m_mul(const Vec& a, const Vec& b) const;
    // multiply full-ring elements (length dim)
    Vec ring_mul(const Vec& a, const Vec& b) const;
    Vec unit() const;
    bool operator==(const TestRing& o) const { return k == o.k && dim == o.dim && mul == o.mul; }
};

// Validates associativity, commutativity, unitality, ideal property and
// nilpotency; fills in the nilpotency index. Throws named errors.
TestRing validate_ring(Field k, const std::vector<std::string>& names,
                       const std::vector<std::vector<Vec>>& mul);

TestRing ring_k(Field k);
TestRing dual_numbers(Field k);                 // k[eps]/eps^2
TestRing truncated_poly(Field k, int order);    // k[t]/t^order
TestRing square_zero_pair(Field k);             // k[x,y]/(x^2,xy,y^2)

// Ring morphism preserving 1; f(m) in m is checked.
struct RingMorphism {
    TestRing src, dst;
    Mat map; // dim(dst) x dim(src)
    void validate() const;
    Mat m_part() const; // restriction m(src) -> m(dst)
    bool surjective() const;
};

RingMorphism ring_identity(const TestRing& A);
RingMorphism residue_map(const TestRing& A); // A -> k
RingMorphism compose_ring(const RingMorphism& g, const RingMorphism& f);

struct SmallExtension {
    RingMorphism f;              // A ->> B
    std::vector<Vec> kernel;     // basis of I = ker f (full A coordinates)
    void validate() const;       // surjectivity, kernel match, m(A) I = 0
};

// fiber product A x_C B with projections; one of f, g must be surjective
struct FiberProduct {
    TestRing ring;
    RingMorphism to_a, to_b;
};
FiberProduct fiber_product(const RingMorphism& f, const RingMorphism& g);

// factor a surjection through the filtration I, mI, m^2 I, ...
std::vector<SmallExtension> factor_small(const RingMorphism& f);

// all small extensions of B with 1-dimensional kernel, up to isomorphism over B
std::vector<SmallExtension> enumerate_small_extensions(const TestRing& B);

// all local Artinian k-algebras of the given total dimension up to isomorphism
std::vector<TestRing> enumerate_test_rings(Field k, int dim);

// brute-force isomorphism test (unit-preserving, searches GL(m))
bool rings_isomorphic(const TestRing& A, const TestRing& B);

// stable fingerprint for memoization keyed on structure constants
std::string ring_fingerprint(const TestRing& A);

// ---------- simplicial test rings ----------

struct SimplicialTestRing {
    Field k;
    int cap = 0;
    std::vector<TestRing> level;
    std::vector<std::vector<Mat>> face;  // ring morphism matrices
    std::vector<std::vector<Mat>> degen;

    SimplicialModule underlying_module() const;
    SimplicialModule m_module() const; // maximal ideals with induced maps
    // checks: levels valid, maps are ring morphisms, simplicial identities,
    // finite cotangent normalization with vanishing top margin, m^N = 0
    void validate() const;
    int cotangent_top() const; // largest degree with N(cot) nonzero
};

SimplicialTestRing constant_simplicial_ring(const TestRing& A, int cap);
// k + V with V^2 = 0, V the denormalization of C
SimplicialTestRing square_zero(const ChainComplex& C, int cap);
SimplicialTestRing square_zero_module(const SimplicialModule& V);
// Dold-Kan extension with products solved from the joint face system
SimplicialTestRing extend_simplicial_ring(const SimplicialTestRing& S, int new_cap);

// ---------- power rings A^K ----------

// The ring of simplicial maps K -> A with constant residue; an object of C_k.
struct PowerRing {
    TestRing ring;
    // chain-map data per basis element: values[b][d] is a (dim N_d(kK) columns)
    // matrix into A_d... stored internally; public surface below.
    // value of basis element b on an nd cell (level, cell) of K, as A_level coords
    std::vector<std::map<std::pair<int, int>, Vec>> cell_values;
};

PowerRing power_point_ring(const SimplicialTestRing& A, const SSet& K);

// ring morphism A^{K'} -> A^{K} induced by phi: K -> K'
Mat power_push(const SimplicialTestRing& A, const PowerRing& PK2, const PowerRing& PK,
               const SMap& phi);

// level-wise power ring (A^K)_i = A^{K x Delta^i}
struct SimplicialPowerRing {
    SimplicialTestRing ring;
    std::vector<PowerRing> levels;
};
SimplicialPowerRing power_ring(const SimplicialTestRing& A, const SSet& K, int cap);

} // namespace sdcw
