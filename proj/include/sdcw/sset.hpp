#pragma once

#include "sdcw/chain.hpp"

#include <map>
#include <string>
#include <vector>

namespace sdcw {

// Monotone map [dom] -> [cod] between finite ordinals {0..dom}, {0..cod}.
struct Monotone {
    int dom = 0, cod = 0;
    std::vector<int> f; // size dom+1, nondecreasing, values in [0, cod]

    static Monotone identity(int n);
    static Monotone coface(int n, int i);     // delta_i: [n-1] -> [n], skips i
    static Monotone codegeneracy(int n, int i); // sigma_i: [n+1] -> [n], repeats i
    bool is_identity() const;
    bool is_surjective() const;
    bool is_injective() const;
    void validate() const;
};

Monotone compose(const Monotone& g, const Monotone& f); // g after f
// epi-mono factorization: m = mono . epi
struct EpiMono {
    Monotone epi, mono;
};
EpiMono epi_mono(const Monotone& m);
// all surjective monotone maps [n] ->> [m]
std::vector<Monotone> all_surjections(int n, int m);

// A simplex of a (truncated) simplicial set in normal form: s_alpha applied to a
// nondegenerate cell. epi: [level] ->> [cell_level].
struct SimplexVal {
    Monotone epi;
    int cell_level = 0;
    int cell = 0;
    bool nondegenerate() const { return epi.is_identity(); }
    bool operator==(const SimplexVal& o) const {
        return cell_level == o.cell_level && cell == o.cell && epi.f == o.epi.f;
    }
    bool operator<(const SimplexVal& o) const;
};

// Finite simplicial set, truncated at `cap`: only nondegenerate cells are stored;
// everything above the cap is formally degenerate.
class SSet {
  public:
    int cap = 0;
    // faces[n][c][i] = value of the i-th face of nd cell c at level n (1 <= n <= cap, 0 <= i <= n)
    std::vector<std::vector<std::vector<SimplexVal>>> faces;
    std::vector<std::vector<std::string>> names; // debug labels per nd cell

    int levels() const { return cap; }
    int nd_count(int n) const {
        return (n >= 0 && n < (int)faces.size()) ? (int)faces[n].size() : 0;
    }
    // act: value . g for a monotone g: [m] -> [level of v]
    SimplexVal act(const SimplexVal& v, const Monotone& g) const;
    SimplexVal face(const SimplexVal& v, int i) const;
    SimplexVal degen(const SimplexVal& v, int i) const;
    SimplexVal nd(int level, int cell) const {
        return SimplexVal{Monotone::identity(level), level, cell};
    }
    // all simplices at level n (degenerate ones included)
    std::vector<SimplexVal> full_level(int n) const;
    void validate() const; // simplicial identities on every stored face
    std::string name(const SimplexVal& v) const;
};

// builders
SSet sset_point(int cap);
SSet sset_simplex(int m, int cap);   // Delta^m
SSet sset_boundary(int m, int cap);  // boundary of Delta^m
SSet sset_circle(int cap);           // Delta^1 with both endpoints identified
SSet sset_coproduct(const SSet& X, const SSet& Y);
SSet sset_cube(int n, int cap); // I^n = (Delta^1)^n

// Simplicial map X -> Y given on nondegenerate cells (values in Y).
struct SMap {
    const SSet* X = nullptr;
    const SSet* Y = nullptr;
    std::vector<std::vector<SimplexVal>> img; // img[n][c] for nd cells of X
    SimplexVal apply(const SimplexVal& v) const;
    void validate() const; // commutes with faces
};

SMap smap_identity(const SSet& X);
// cube coordinate maps (cubes built by sset_cube; positions 1-based)
SMap cube_insert(const SSet& In, const SSet& In1, int pos, int vertex); // I^n -> I^{n+1}
SMap cube_delete(const SSet& In, const SSet& In_1, int pos);            // drop coordinate
SMap cube_min(const SSet& In, const SSet& In_1, int pos);               // min of coords pos, pos+1
SMap cube_project_first(const SSet& Imn, const SSet& Im, int m);        // I^{m+n} -> I^m
SMap cube_project_last(const SSet& Imn, const SSet& In, int n);         // I^{m+n} -> I^n
// Delta-side: map Delta^m -> Delta^n from a monotone [m]->[n]
SMap simplex_map(const SSet& Dm, const SSet& Dn, const Monotone& g);

// Binary product with enough structure to pair values and map functorially.
class ProductSSet {
  public:
    SSet Z;
    const SSet* X = nullptr;
    const SSet* Y = nullptr;
    // factor data of an nd cell
    std::pair<SimplexVal, SimplexVal> parts(int level, int cell) const;
    // joint normal form of a pair of values at a common level
    SimplexVal pair_value(const SimplexVal& vx, const SimplexVal& vy) const;
    // (f x g): src -> this, for f: src.X -> X, g: src.Y -> Y
    SMap map_from(const ProductSSet& src, const SMap& f, const SMap& g) const;

    struct Key {
        int xlev, xcell, ylev, ycell;
        std::vector<int> af, bf;
        bool operator<(const Key& o) const;
    };
    std::vector<std::vector<Key>> cells;
    std::map<Key, int> index;
};

ProductSSet sset_product(const SSet& X, const SSet& Y, int cap);

// Finite category presented by tables; used for nerves and diagram bookkeeping.
struct FinCat {
    int n_obj = 0;
    struct Mor {
        int src, dst;
        std::string name;
    };
    std::vector<Mor> mor;                   // includes identities, first n_obj entries: id_i
    std::vector<std::vector<int>> comp;     // comp[g][f] = g . f (or -1 if not composable)
    int id(int obj) const { return obj; }
    bool is_id(int m) const { return m < n_obj; }
    void validate() const;
};
FinCat fincat_point();
FinCat fincat_arrow();          // 0 -> 1
FinCat fincat_composable_pair(); // 0 -> 1 -> 2
SSet sset_nerve(const FinCat& C, int cap);
// the morphism string of a level-n nerve value (identities included), length n;
// entries are morphism ids of C
std::vector<int> nerve_string(const FinCat& C, const SSet& N, const SimplexVal& v);
// object of a vertex value
int nerve_vertex_object(const SSet& N, const SimplexVal& v);

// normalized chains with k-coefficients (basis = nd cells), through level `top`
ChainComplex normalized_chains(const SSet& X, Field k, int top);
// simplicial cohomology H^j(X, k), j = 0..top-1
CohomologyTable sset_cohomology(const SSet& X, Field k, int top);

// path components of the 1-truncation
int component_count(const SSet& X);
std::vector<int> component_of_vertices(const SSet& X);

struct HornFailure {
    int n, k;
    std::string witness;
};
// enumerate horns Lambda^n_k for 1 <= n <= up_to; requires X materialized through up_to
std::vector<HornFailure> kan_probe(const SSet& X, int up_to);

// Edge-path group of a connected complex, as the order of the group presented by
// edges modulo 2-cell relations (bounded Todd-Coxeter coset enumeration).
// Returns the group order, or -1 if the bound is exceeded.
long long edge_path_group_order(const SSet& X, long long coset_bound = 4096);

// explicit-table route: full levels given (used by the bar construction and quotients)
struct ExplicitSSet {
    int cap = 0;
    std::vector<int> sizes;                       // |X_n|
    std::vector<std::vector<std::vector<int>>> face; // face[n][i][x], 1<=n, 0<=i<=n
    std::vector<std::vector<std::vector<int>>> degen; // degen[n][i][x], 0<=n<cap, 0<=i<=n
    std::vector<std::vector<std::string>> labels;
    void validate() const;
};
// convert to normal-form SSet (identifying nondegenerate cells)
SSet from_explicit(const ExplicitSSet& E);

} // namespace sdcw
