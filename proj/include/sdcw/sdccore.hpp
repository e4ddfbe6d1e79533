#pragma once

#include "sdcw/denorm.hpp"
#include "sdcw/sset.hpp"

#include <functional>

namespace sdcw {

// A simplicial deformation complex in coordinate form: level n evaluated at a
// test ring A is the coordinate module M_n tensored with m(A), with basepoint 0
// (the canonical undeformed element). Cofaces/codegeneracies are matrices on
// the coordinate modules acting as (matrix (x) id); the associative product is
// a realization-specific closure, natural in A.
//
// Elements of E^n(A) are Vecs of length dim[n] * A.mdim(), laid out as
// (module index j, m index t) -> j * mdim + t.
struct Sdc {
    Field k;
    int cap = 0;
    std::vector<int> dim;
    std::vector<std::vector<Mat>> coface; // coface[n][i-1]: M_n -> M_{n+1}, 1 <= i <= n, n < cap
    std::vector<std::vector<Mat>> codeg;  // codeg[n][i]: M_n -> M_{n-1}, 0 <= i < n
    std::function<Vec(int, int, const TestRing&, const Vec&, const Vec&)> product;
    std::string name;

    Vec zero_elt(int n, const TestRing& A) const { return zero_vec(k, dim[n] * A.mdim()); }
};

// matrix (x) id_m action on an element
Vec tensor_apply(const Mat& M, int mdim, const Vec& x);
Vec sdc_coface(const Sdc& E, int i, int n, const TestRing& A, const Vec& x);
Vec sdc_codeg(const Sdc& E, int i, int n, const TestRing& A, const Vec& x);
// pushforward along a ring morphism (id (x) m-part)
Vec sdc_push(const Sdc& E, int n, const Mat& m_part, const Vec& x);

// level morphisms of SDCs (coordinate-module matrices commuting with everything)
struct SdcMorphism {
    std::vector<Mat> level; // level[n]: M_n(src) -> M_n(dst)
};

// tangent complex: cosimplicial module on the coordinate dims with the outer
// cofaces induced by the product with the canonical Maurer-Cartan basepoint
struct SdcTangent {
    CosimplicialModule C;
    Conormalization conorm;
};
SdcTangent sdc_tangent(const Sdc& E);
CohomologyTable tangent_cohomology(const Sdc& E);

// axiom checker: families (1)-(3) as exact matrix identities; (4)-(7),
// associativity and unit laws on the full level sets when enumerable within
// the pool budget, else on a deterministic structured pool
struct SdcCheckOptions {
    int n_max = 4;
    long long pool_budget = 512;
    int samples = 6;
    std::uint64_t seed = 2024;
};
std::vector<AxiomWitness> check_sdc_axioms(const Sdc& E, const std::vector<TestRing>& rings,
                                           const SdcCheckOptions& opt = {});

// smoothness probes: sigma-bar surjectivity onto the matching space and the
// relative lifting surjectivity over small extensions, for n + 1 <= n_max
std::vector<AxiomWitness> matching_probe(const Sdc& E, int n_max,
                                         const std::vector<SmallExtension>& extensions);

// exp realization: levels exp(D^n(L) (x) m(A)), Alexander-Whitney product
Sdc exp_sdc(const DenormDgla& D, int cap);

// power SDC E^X
struct PowerSdc {
    Sdc E;
    std::vector<std::vector<SimplexVal>> cells; // full levels of X
};
PowerSdc power_sdc(const Sdc& E, const SSet& X);
// E^X -> E^Y induced by phi: Y -> X
SdcMorphism power_sdc_map(const Sdc& base, const PowerSdc& EX, const PowerSdc& EY, const SMap& phi);

// fiber of a levelwise morphism over the canonical basepoint; embed maps the
// fiber coordinates into the source
struct ConstrainedSdc {
    Sdc E;
    std::vector<Mat> embed;
};
ConstrainedSdc constrained_sdc(const Sdc& full, const Sdc& sub, const SdcMorphism& restriction);

// path and loop SDCs: PE = fibre of ev_0 on E^{Delta^1}, Omega E = fibre of
// ev_1 on PE; bases chosen so Omega E level n = interior Delta^1_n blocks
struct LoopPath {
    Sdc PE;
    Sdc OmegaE;
    ConstrainedSdc pe_data;     // inside E^{Delta^1}
    std::vector<Mat> omega_embed; // Omega level n -> (E^{Delta^1})^n coords
};
LoopPath loop_path_sdc(const Sdc& E);

// ---------- morphism families and diagram SDCs ----------

// a family of cosimplicial complexes E(f) indexed by the morphisms of a finite
// category, with composition pairings; produced by the monadic realization
struct MorphismFamily {
    Field k;
    FinCat I;
    int cap = 0;
    std::vector<std::vector<int>> dim;                  // dim[f][n]
    std::vector<std::vector<std::vector<Mat>>> coface;  // [f][n][i], 0 <= i <= n+1 (full cosimplicial)
    std::vector<std::vector<std::vector<Mat>>> codeg;   // [f][n][i], 0 <= i < n
    // pairing closure: x in E^m(f2), y in E^n(f1) with f2 . f1 defined,
    // resulting in E^{m+n}(f2 . f1)
    std::function<Vec(int f2, int f1, int m, int n, const TestRing&, const Vec&, const Vec&)> pairing;
};

// diagram SDC over the nerve of F.I; component data tracks which morphism
// complex sits over which nerve cell
struct DiagramSdc {
    Sdc E;
    std::vector<std::vector<SimplexVal>> cells; // nerve full levels
    std::vector<std::vector<int>> composite;    // composite morphism per cell
    std::vector<std::vector<int>> offset;       // coordinate offset per cell
};
DiagramSdc diagram_sdc(const MorphismFamily& F);

// total cohomology of the binormalized bicomplex of Lemma-style rows indexed by
// strings of non-identity morphisms
CohomologyTable bicomplex_cohomology(const MorphismFamily& F, int range);

} // namespace sdcw
