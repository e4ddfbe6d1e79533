#pragma once

#include "sdcw/artin.hpp"
#include "sdcw/chain.hpp"

namespace sdcw {

// Differential graded Lie algebra with finitely many nonzero pieces
// L^{min_deg}, ..., L^{min_deg + pieces - 1}. Brackets landing outside the
// stored range are zero (the stored range is closed under everything we form).
struct Dgla {
    Field k;
    int min_deg = 0;
    std::vector<int> dims;                 // dims[t] = dim of degree min_deg + t
    std::vector<Mat> d;                    // d[t]: piece t -> piece t+1 (t < pieces-1)
    std::vector<std::vector<Mat>> br;      // br[s][t]: piece_s (x) piece_t -> target
    std::vector<std::vector<std::string>> names;

    int pieces() const { return (int)dims.size(); }
    int max_deg() const { return min_deg + pieces() - 1; }
    int dim_deg(int degree) const {
        int t = degree - min_deg;
        return (t >= 0 && t < pieces()) ? dims[t] : 0;
    }
    // d on a degree piece (zero map if out of range)
    Vec d_apply(int degree, const Vec& a) const;
    // bracket of homogeneous elements
    Vec bracket(int deg_a, int deg_b, const Vec& a, const Vec& b) const;
};

struct AxiomWitness {
    std::string axiom;
    std::string witness;
};

// checks antisymmetry, graded Jacobi, d^2 = 0 and Leibniz on all basis tuples;
// returns the violations (empty = valid)
std::vector<AxiomWitness> dgla_axiom_report(const Dgla& L);
Dgla validate_dgla(const Dgla& raw); // throws on the first violation

struct NilpotentDgla {
    Dgla L;
    int nilpotency = 1; // least c with Gamma_c = 0 (Gamma_1 = L)
};

// lower central series certificate, computed not asserted
int lower_central_vanishing(const Dgla& L, int bound = 12);
NilpotentDgla certify_nilpotent(const Dgla& L, int bound = 12);

// L (x) m(A): basis pairs (L-basis, m-basis), grading from L
NilpotentDgla nilpotent_tensor(const Dgla& L, const TestRing& A);

// CBH multiplication in degree zero, truncated at the nilpotency certificate.
// Throws characteristic_clash when the truncation depth needs denominators
// divisible by char k.
Vec cbh_mul(const NilpotentDgla& T, const Vec& x, const Vec& y);
Vec cbh_inverse(const NilpotentDgla& T, const Vec& x);

// gauge action of exp(degree 0) on degree-1 elements:
// exp(ad_g)(w) - sum_n ad_g^n/(n+1)! (dg)
Vec gauge_act(const NilpotentDgla& T, const Vec& g, const Vec& w);

// Maurer-Cartan defect d w + (1/2)[w, w] in degree 2 (char-2 uses the
// polarized form and requires vanishing basis self-brackets)
Vec mc_defect(const NilpotentDgla& T, const Vec& w);
bool mc_check(const NilpotentDgla& T, const Vec& w);

// exact MC solution sets
std::vector<Vec> mc_points_exhaustive(const NilpotentDgla& T, long long budget = 2000000);
// filtration lifting along small extensions of A; exact over finite fields
std::vector<Vec> mc_points_lifting(const Dgla& L, const TestRing& A, long long budget = 2000000);

CohomologyTable dgla_cohomology(const Dgla& L);

struct DglaGroupoid {
    std::vector<Vec> objects;     // MC points
    std::vector<int> orbit;       // orbit id per object
    int orbit_count = 0;
    std::vector<long long> stabilizer_size; // per object
    long long gauge_group_size = 0;
};
DglaGroupoid def_groupoid(const Dgla& L, const TestRing& A, long long budget = 2000000);

// Tot^Pi(L (x) N m(A)): cochain degree from L minus chain degree of Nm(A),
// differential d_L +- d_N, bracket via the Eilenberg-Zilber shuffle product
NilpotentDgla tot_pi_tensor(const Dgla& L, const SimplicialTestRing& A);
// the shuffle product on normalized chains of the maximal ideal, exposed for tests:
// N_p (x) N_q -> N_{p+q} in N-coordinates of A.m_module()
Vec nm_shuffle(const SimplicialTestRing& A, const Normalization& N, int p, int q,
               const Vec& a, const Vec& b);

// small helpers for building test DGLAs
Dgla abelian_dgla(Field k, const std::vector<int>& dims, const std::vector<Mat>& d);
// endomorphism DGLA of a cochain complex, non-negative degrees
Dgla end_dgla(const CochainComplex& V);

} // namespace sdcw
