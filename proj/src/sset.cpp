#include "sdcw/sset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace sdcw {

// ---------- monotone map calculus ----------

Monotone Monotone::identity(int n) {
    Monotone m;
    m.dom = m.cod = n;
    m.f.resize(n + 1);
    for (int i = 0; i <= n; ++i) m.f[i] = i;
    return m;
}

Monotone Monotone::coface(int n, int i) {
    // delta_i: [n-1] -> [n], image misses i
    Monotone m;
    m.dom = n - 1;
    m.cod = n;
    for (int j = 0; j <= n - 1; ++j) m.f.push_back(j < i ? j : j + 1);
    return m;
}

Monotone Monotone::codegeneracy(int n, int i) {
    // sigma_i: [n+1] -> [n], hits i twice
    Monotone m;
    m.dom = n + 1;
    m.cod = n;
    for (int j = 0; j <= n + 1; ++j) m.f.push_back(j <= i ? j : j - 1);
    return m;
}

bool Monotone::is_identity() const {
    if (dom != cod) return false;
    for (int i = 0; i <= dom; ++i)
        if (f[i] != i) return false;
    return true;
}

bool Monotone::is_surjective() const {
    std::vector<bool> hit(cod + 1, false);
    for (int v : f) hit[v] = true;
    for (bool b : hit)
        if (!b) return false;
    return true;
}

bool Monotone::is_injective() const {
    for (int i = 0; i < dom; ++i)
        if (f[i] == f[i + 1]) return false;
    return true;
}

void Monotone::validate() const {
    if ((int)f.size() != dom + 1) throw Error("bad_monotone", "size");
    for (int i = 0; i <= dom; ++i) {
        if (f[i] < 0 || f[i] > cod) throw Error("bad_monotone", "range");
        if (i > 0 && f[i] < f[i - 1]) throw Error("bad_monotone", "not monotone");
    }
}

Monotone compose(const Monotone& g, const Monotone& f) {
    if (f.cod != g.dom) throw Error("dim_mismatch", "monotone composition");
    Monotone c;
    c.dom = f.dom;
    c.cod = g.cod;
    for (int i = 0; i <= f.dom; ++i) c.f.push_back(g.f[f.f[i]]);
    return c;
}

EpiMono epi_mono(const Monotone& m) {
    // image values, sorted
    std::vector<int> img;
    for (int v : m.f)
        if (img.empty() || img.back() != v) img.push_back(v);
    EpiMono em;
    em.mono.dom = (int)img.size() - 1;
    em.mono.cod = m.cod;
    em.mono.f = img;
    em.epi.dom = m.dom;
    em.epi.cod = em.mono.dom;
    for (int v : m.f) {
        int pos = (int)(std::lower_bound(img.begin(), img.end(), v) - img.begin());
        em.epi.f.push_back(pos);
    }
    return em;
}

bool SimplexVal::operator<(const SimplexVal& o) const {
    if (cell_level != o.cell_level) return cell_level < o.cell_level;
    if (cell != o.cell) return cell < o.cell;
    return epi.f < o.epi.f;
}

// ---------- SSet core ----------

SimplexVal SSet::act(const SimplexVal& v, const Monotone& g) const {
    Monotone c = compose(v.epi, g);
    EpiMono em = epi_mono(c);
    // evaluate cell . mono by iterated faces (missing image values, descending)
    SimplexVal w = nd(v.cell_level, v.cell);
    std::vector<int> missing;
    {
        std::vector<bool> hit(v.cell_level + 1, false);
        for (int x : em.mono.f) hit[x] = true;
        for (int b = v.cell_level; b >= 0; --b)
            if (!hit[b]) missing.push_back(b);
    }
    for (int b : missing) w = face(w, b);
    // apply the epi part
    SimplexVal out;
    out.cell_level = w.cell_level;
    out.cell = w.cell;
    out.epi = compose(w.epi, em.epi);
    return out;
}

SimplexVal SSet::face(const SimplexVal& v, int i) const {
    int n = v.epi.dom;
    if (n < 1 || i < 0 || i > n) throw Error("bad_index", "face index");
    if (v.nondegenerate()) return faces[n][v.cell][i];
    return act(v, Monotone::coface(n, i));
}

SimplexVal SSet::degen(const SimplexVal& v, int i) const {
    int n = v.epi.dom;
    if (i < 0 || i > n) throw Error("bad_index", "degeneracy index");
    SimplexVal out(v);
    out.epi = compose(v.epi, Monotone::codegeneracy(n, i));
    return out;
}

namespace {
void all_surjections_rec(int n, int m, std::vector<int>& cur, std::vector<Monotone>& out) {
    int pos = (int)cur.size();
    if (pos == n + 1) {
        if (cur.back() == m) {
            Monotone s;
            s.dom = n;
            s.cod = m;
            s.f = cur;
            out.push_back(std::move(s));
        }
        return;
    }
    int last = pos == 0 ? 0 : cur[pos - 1];
    // next value: last or last+1 (surjective monotone onto [m])
    for (int v = last; v <= std::min(last + 1, m); ++v) {
        if (pos == 0 && v != 0) continue;
        // feasibility: remaining positions must reach m
        int remaining = n - pos;
        if (v + remaining < m) continue;
        cur.push_back(v);
        all_surjections_rec(n, m, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Monotone> all_surjections(int n, int m) {
    std::vector<Monotone> out;
    if (m > n || m < 0) return out;
    std::vector<int> cur;
    all_surjections_rec(n, m, cur, out);
    return out;
}

std::vector<SimplexVal> SSet::full_level(int n) const {
    std::vector<SimplexVal> out;
    for (int m = 0; m <= n; ++m) {
        if (nd_count(m) == 0) continue;
        for (const Monotone& s : all_surjections(n, m))
            for (int c = 0; c < nd_count(m); ++c) out.push_back(SimplexVal{s, m, c});
    }
    return out;
}

void SSet::validate() const {
    for (int n = 1; n <= cap; ++n) {
        for (int c = 0; c < nd_count(n); ++c) {
            for (int i = 0; i <= n; ++i) {
                const SimplexVal& f = faces[n][c][i];
                if (f.epi.dom != n - 1) throw Error("bad_sset", "face level");
                if (f.cell < 0 || f.cell >= nd_count(f.cell_level))
                    throw Error("bad_sset", "face cell index");
            }
            if (n < 2) continue;
            SimplexVal v = nd(n, c);
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexVal a = face(face(v, j), i);
                    SimplexVal b = face(face(v, i), j - 1);
                    if (!(a == b))
                        throw Error("simplicial_identity",
                                    "dd identity fails at level " + std::to_string(n) + " cell " +
                                        std::to_string(c) + " (i,j)=(" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
                }
        }
    }
}

std::string SSet::name(const SimplexVal& v) const {
    std::ostringstream os;
    if (!v.nondegenerate()) {
        os << "s[";
        for (int i = 0; i <= v.epi.dom; ++i) os << v.epi.f[i] << (i < v.epi.dom ? " " : "");
        os << "]";
    }
    if (v.cell_level < (int)names.size() && v.cell < (int)names[v.cell_level].size())
        os << names[v.cell_level][v.cell];
    else
        os << "c" << v.cell_level << "_" << v.cell;
    return os.str();
}

// ---------- poset nerves: simplices, cubes and their products ----------

namespace {

struct Poset {
    int n = 0;
    std::vector<std::vector<char>> lt; // strict order: lt[a][b] == a < b
    std::vector<std::string> labels;
};

Poset chain_poset(int m) {
    Poset p;
    p.n = m + 1;
    p.lt.assign(p.n, std::vector<char>(p.n, 0));
    for (int a = 0; a < p.n; ++a)
        for (int b = a + 1; b < p.n; ++b) p.lt[a][b] = 1;
    for (int a = 0; a < p.n; ++a) p.labels.push_back(std::to_string(a));
    return p;
}

Poset cube_poset(int ncoords) {
    Poset p;
    p.n = 1 << ncoords;
    p.lt.assign(p.n, std::vector<char>(p.n, 0));
    for (int a = 0; a < p.n; ++a)
        for (int b = 0; b < p.n; ++b)
            if (a != b && (a & b) == a) p.lt[a][b] = 1;
    for (int a = 0; a < p.n; ++a) {
        std::string s;
        for (int t = 0; t < ncoords; ++t) s += ((a >> t) & 1) ? '1' : '0';
        p.labels.push_back(s.empty() ? "*" : s);
    }
    return p;
}

// nerve of a poset: nd cells at level d = strictly increasing chains of length d+1
SSet poset_nerve(const Poset& p, int cap) {
    SSet X;
    X.cap = cap;
    X.faces.resize(cap + 1);
    X.names.resize(cap + 1);
    std::vector<std::vector<std::vector<int>>> chains(cap + 1);
    std::map<std::vector<int>, int> index;
    // level 0
    for (int a = 0; a < p.n; ++a) {
        chains[0].push_back({a});
        index[{a}] = a;
        X.names[0].push_back(p.labels[a]);
    }
    X.faces[0].resize(p.n);
    for (int d = 1; d <= cap; ++d) {
        for (const auto& c : chains[d - 1]) {
            for (int b = 0; b < p.n; ++b) {
                if (!p.lt[c.back()][b]) continue;
                std::vector<int> c2(c);
                c2.push_back(b);
                int id = (int)chains[d].size();
                chains[d].push_back(c2);
                index[c2] = id;
                std::string nm;
                for (size_t t = 0; t < c2.size(); ++t) nm += p.labels[c2[t]] + (t + 1 < c2.size() ? "<" : "");
                X.names[d].push_back(nm);
            }
        }
        X.faces[d].resize(chains[d].size());
        for (size_t c = 0; c < chains[d].size(); ++c) {
            for (int i = 0; i <= d; ++i) {
                std::vector<int> f(chains[d][c]);
                f.erase(f.begin() + i);
                SimplexVal v;
                v.epi = Monotone::identity(d - 1);
                v.cell_level = d - 1;
                v.cell = index.at(f);
                X.faces[d][c].push_back(v);
            }
        }
    }
    return X;
}

std::map<std::vector<int>, int> poset_nerve_index(const SSet& X, const Poset& p) {
    // rebuild chain list in the same order as poset_nerve
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<std::vector<int>>> chains(X.cap + 1);
    for (int a = 0; a < p.n; ++a) {
        chains[0].push_back({a});
        index[{a}] = a;
    }
    for (int d = 1; d <= X.cap; ++d)
        for (const auto& c : chains[d - 1])
            for (int b = 0; b < p.n; ++b) {
                if (!p.lt[c.back()][b]) continue;
                std::vector<int> c2(c);
                c2.push_back(b);
                index[c2] = (int)chains[d].size();
                chains[d].push_back(c2);
            }
    return index;
}

// chain of poset elements for an nd cell (inverse of the index)
std::vector<std::vector<std::vector<int>>> poset_nerve_chains(const Poset& p, int cap) {
    std::vector<std::vector<std::vector<int>>> chains(cap + 1);
    for (int a = 0; a < p.n; ++a) chains[0].push_back({a});
    for (int d = 1; d <= cap; ++d)
        for (const auto& c : chains[d - 1])
            for (int b = 0; b < p.n; ++b) {
                if (!p.lt[c.back()][b]) continue;
                std::vector<int> c2(c);
                c2.push_back(b);
                chains[d].push_back(c2);
            }
    return chains;
}

// simplicial map of poset nerves from a monotone function on elements
SMap poset_map(const SSet& NX, const Poset& px, const SSet& NY, const Poset& py,
               const std::function<int(int)>& phi) {
    SMap f;
    f.X = &NX;
    f.Y = &NY;
    auto chains = poset_nerve_chains(px, NX.cap);
    auto yindex = poset_nerve_index(NY, py);
    f.img.resize(NX.cap + 1);
    for (int d = 0; d <= NX.cap; ++d) {
        for (const auto& c : chains[d]) {
            // image chain, collapsing repeats
            std::vector<int> imgpts;
            std::vector<int> epi;
            for (int a : c) {
                int v = phi(a);
                if (imgpts.empty() || imgpts.back() != v) imgpts.push_back(v);
                epi.push_back((int)imgpts.size() - 1);
            }
            SimplexVal val;
            val.cell_level = (int)imgpts.size() - 1;
            val.cell = yindex.at(imgpts);
            val.epi.dom = d;
            val.epi.cod = val.cell_level;
            val.epi.f = epi;
            f.img[d].push_back(val);
        }
    }
    return f;
}

} // namespace

SSet sset_point(int cap) { return poset_nerve(chain_poset(0), cap); }
SSet sset_simplex(int m, int cap) { return poset_nerve(chain_poset(m), cap); }
SSet sset_cube(int n, int cap) { return poset_nerve(cube_poset(n), cap); }

SSet sset_boundary(int m, int cap) {
    SSet full = sset_simplex(m, cap);
    if (m == 0) throw Error("bad_index", "boundary of a point");
    // remove the single top nd cell (the full chain) at level m, if within cap
    if (m <= cap) {
        // it is the last chain at level m? locate by vertex count: the unique chain of length m+1
        // chains at level m with m+1 strictly increasing elements of [m]: only 0<1<...<m
        if (full.nd_count(m) != 1) throw Error("internal", "unexpected top cell count");
        full.faces[m].clear();
        full.names[m].clear();
    }
    return full;
}

SSet sset_circle(int cap) {
    SSet X;
    X.cap = cap;
    X.faces.resize(cap + 1);
    X.names.resize(cap + 1);
    X.faces[0].resize(1);
    X.names[0].push_back("v");
    if (cap >= 1) {
        X.faces[1].resize(1);
        SimplexVal v;
        v.epi = Monotone::identity(0);
        v.cell_level = 0;
        v.cell = 0;
        X.faces[1][0] = {v, v};
        X.names[1].push_back("e");
    }
    return X;
}

SSet sset_coproduct(const SSet& X, const SSet& Y) {
    SSet Z;
    Z.cap = std::min(X.cap, Y.cap);
    Z.faces.resize(Z.cap + 1);
    Z.names.resize(Z.cap + 1);
    for (int n = 0; n <= Z.cap; ++n) {
        for (int c = 0; c < X.nd_count(n); ++c) {
            if (n >= 1) Z.faces[n].push_back(X.faces[n][c]);
            else Z.faces[n].push_back({});
            Z.names[n].push_back("L:" + (n < (int)X.names.size() && c < (int)X.names[n].size() ? X.names[n][c] : ""));
        }
        for (int c = 0; c < Y.nd_count(n); ++c) {
            std::vector<SimplexVal> fc;
            if (n >= 1) {
                fc = Y.faces[n][c];
                for (auto& v : fc) v.cell += X.nd_count(v.cell_level);
            }
            Z.faces[n].push_back(fc);
            Z.names[n].push_back("R:" + (n < (int)Y.names.size() && c < (int)Y.names[n].size() ? Y.names[n][c] : ""));
        }
    }
    return Z;
}

// ---------- generic binary product ----------

bool ProductSSet::Key::operator<(const Key& o) const {
    return std::tie(xlev, xcell, ylev, ycell, af, bf) <
           std::tie(o.xlev, o.xcell, o.ylev, o.ycell, o.af, o.bf);
}

namespace {
// jointly injective pairs of surjections [d] ->> [p], [d] ->> [q]
void joint_pairs_rec(int d, int p, int q, std::vector<int>& a, std::vector<int>& b,
                     std::vector<std::pair<Monotone, Monotone>>& out) {
    int pos = (int)a.size();
    if (pos == d + 1) {
        if (a.back() == p && b.back() == q) {
            Monotone ma{d, p, a}, mb{d, q, b};
            out.push_back({ma, mb});
        }
        return;
    }
    if (pos == 0) {
        a.push_back(0);
        b.push_back(0);
        joint_pairs_rec(d, p, q, a, b, out);
        a.pop_back();
        b.pop_back();
        return;
    }
    int la = a[pos - 1], lb = b[pos - 1];
    static const int steps[3][2] = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& s : steps) {
        int na = la + s[0], nb = lb + s[1];
        if (na > p || nb > q) continue;
        int rem = d - pos;
        if (na + rem < p || nb + rem < q) continue;
        a.push_back(na);
        b.push_back(nb);
        joint_pairs_rec(d, p, q, a, b, out);
        a.pop_back();
        b.pop_back();
    }
}

std::vector<std::pair<Monotone, Monotone>> joint_pairs(int d, int p, int q) {
    std::vector<std::pair<Monotone, Monotone>> out;
    if (p > d || q > d || p + q < d) return out;
    std::vector<int> a, b;
    joint_pairs_rec(d, p, q, a, b, out);
    return out;
}
} // namespace

std::pair<SimplexVal, SimplexVal> ProductSSet::parts(int level, int cell) const {
    const Key& key = cells[level][cell];
    SimplexVal vx{Monotone{level, key.xlev, key.af}, key.xlev, key.xcell};
    SimplexVal vy{Monotone{level, key.ylev, key.bf}, key.ylev, key.ycell};
    return {vx, vy};
}

SimplexVal ProductSSet::pair_value(const SimplexVal& vx, const SimplexVal& vy) const {
    int n = vx.epi.dom;
    if (vy.epi.dom != n) throw Error("dim_mismatch", "pair_value levels");
    std::vector<int> mu, af, bf;
    for (int i = 0; i <= n; ++i) {
        int ga = vx.epi.f[i], de = vy.epi.f[i];
        if (af.empty() || af.back() != ga || bf.back() != de) {
            af.push_back(ga);
            bf.push_back(de);
        }
        mu.push_back((int)af.size() - 1);
    }
    Key key{vx.cell_level, vx.cell, vy.cell_level, vy.cell, af, bf};
    auto it = index.find(key);
    if (it == index.end()) throw Error("internal", "product cell lookup failed");
    SimplexVal out;
    out.cell_level = (int)af.size() - 1;
    out.cell = it->second;
    out.epi.dom = n;
    out.epi.cod = out.cell_level;
    out.epi.f = mu;
    return out;
}

SMap ProductSSet::map_from(const ProductSSet& src, const SMap& f, const SMap& g) const {
    SMap h;
    h.X = &src.Z;
    h.Y = &Z;
    h.img.resize(src.Z.cap + 1);
    for (int d = 0; d <= src.Z.cap; ++d)
        for (int c = 0; c < (int)src.cells[d].size(); ++c) {
            auto [vx, vy] = src.parts(d, c);
            h.img[d].push_back(pair_value(f.apply(vx), g.apply(vy)));
        }
    return h;
}

ProductSSet sset_product(const SSet& X, const SSet& Y, int cap) {
    ProductSSet P;
    P.X = &X;
    P.Y = &Y;
    P.cells.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        for (int p = 0; p <= std::min(d, X.cap); ++p)
            for (int q = 0; q <= std::min(d, Y.cap); ++q) {
                if (X.nd_count(p) == 0 || Y.nd_count(q) == 0) continue;
                auto pairs = joint_pairs(d, p, q);
                if (pairs.empty()) continue;
                for (int cx = 0; cx < X.nd_count(p); ++cx)
                    for (int cy = 0; cy < Y.nd_count(q); ++cy)
                        for (const auto& [ma, mb] : pairs) {
                            ProductSSet::Key key{p, cx, q, cy, ma.f, mb.f};
                            P.index[key] = (int)P.cells[d].size();
                            P.cells[d].push_back(key);
                        }
            }
    }
    SSet& Zs = P.Z;
    Zs.cap = cap;
    Zs.faces.resize(cap + 1);
    Zs.names.resize(cap + 1);
    for (int d = 0; d <= cap; ++d) {
        Zs.faces[d].resize(P.cells[d].size());
        for (size_t c = 0; c < P.cells[d].size(); ++c) {
            const ProductSSet::Key& key = P.cells[d][c];
            std::string nx = key.xlev < (int)X.names.size() && key.xcell < (int)X.names[key.xlev].size()
                                 ? X.names[key.xlev][key.xcell]
                                 : "x";
            std::string ny = key.ylev < (int)Y.names.size() && key.ycell < (int)Y.names[key.ylev].size()
                                 ? Y.names[key.ylev][key.ycell]
                                 : "y";
            Zs.names[d].push_back("(" + nx + "," + ny + ")");
            if (d == 0) continue;
            SimplexVal vx{Monotone{d, key.xlev, key.af}, key.xlev, key.xcell};
            SimplexVal vy{Monotone{d, key.ylev, key.bf}, key.ylev, key.ycell};
            for (int i = 0; i <= d; ++i) {
                SimplexVal fx = X.act(vx, Monotone::coface(d, i));
                SimplexVal fy = Y.act(vy, Monotone::coface(d, i));
                Zs.faces[d][c].push_back(P.pair_value(fx, fy));
            }
        }
    }
    return P;
}

SimplexVal SMap::apply(const SimplexVal& v) const {
    const SimplexVal& base = img[v.cell_level][v.cell];
    SimplexVal out(base);
    out.epi = compose(base.epi, v.epi);
    return out;
}

void SMap::validate() const {
    for (int n = 1; n <= X->cap; ++n)
        for (int c = 0; c < X->nd_count(n); ++c)
            for (int i = 0; i <= n; ++i) {
                SimplexVal a = apply(X->faces[n][c][i]);
                SimplexVal b = Y->face(apply(X->nd(n, c)), i);
                if (!(a == b)) throw Error("bad_smap", "does not commute with faces");
            }
}

SMap smap_identity(const SSet& X) {
    SMap f;
    f.X = &X;
    f.Y = &X;
    f.img.resize(X.cap + 1);
    for (int n = 0; n <= X.cap; ++n)
        for (int c = 0; c < X.nd_count(n); ++c) f.img[n].push_back(X.nd(n, c));
    return f;
}

namespace {
SMap cube_coordinate_map(const SSet& src, int nsrc, const SSet& dst, int ndst,
                         const std::function<int(int)>& on_points) {
    return poset_map(src, cube_poset(nsrc), dst, cube_poset(ndst), on_points);
}
} // namespace

SMap cube_insert(const SSet& In, const SSet& In1, int pos, int vertex) {
    int n = 0;
    while ((1 << n) < (int)In.nd_count(0)) ++n;
    return cube_coordinate_map(In, n, In1, n + 1, [pos, vertex, n](int a) {
        int low = a & ((1 << (pos - 1)) - 1);
        int high = a >> (pos - 1);
        return low | (vertex << (pos - 1)) | (high << pos);
    });
}

SMap cube_delete(const SSet& In, const SSet& In_1, int pos) {
    int n = 0;
    while ((1 << n) < (int)In.nd_count(0)) ++n;
    return cube_coordinate_map(In, n, In_1, n - 1, [pos](int a) {
        int low = a & ((1 << (pos - 1)) - 1);
        int high = a >> pos;
        return low | (high << (pos - 1));
    });
}

SMap cube_min(const SSet& In, const SSet& In_1, int pos) {
    int n = 0;
    while ((1 << n) < (int)In.nd_count(0)) ++n;
    return cube_coordinate_map(In, n, In_1, n - 1, [pos](int a) {
        int b1 = (a >> (pos - 1)) & 1;
        int b2 = (a >> pos) & 1;
        int m = b1 & b2;
        int low = a & ((1 << (pos - 1)) - 1);
        int high = a >> (pos + 1);
        return low | (m << (pos - 1)) | (high << pos);
    });
}

SMap cube_project_first(const SSet& Imn, const SSet& Im, int m) {
    int n = 0;
    while ((1 << n) < (int)Imn.nd_count(0)) ++n;
    return cube_coordinate_map(Imn, n, Im, m, [m](int a) { return a & ((1 << m) - 1); });
}

SMap cube_project_last(const SSet& Imn, const SSet& In, int n) {
    int total = 0;
    while ((1 << total) < (int)Imn.nd_count(0)) ++total;
    int m = total - n;
    return cube_coordinate_map(Imn, total, In, n, [m](int a) { return a >> m; });
}

SMap simplex_map(const SSet& Dm, const SSet& Dn, const Monotone& g) {
    return poset_map(Dm, chain_poset(g.dom), Dn, chain_poset(g.cod), [&g](int a) { return g.f[a]; });
}

// ---------- finite categories and nerves ----------

void FinCat::validate() const {
    for (int o = 0; o < n_obj; ++o) {
        if (mor[o].src != o || mor[o].dst != o) throw Error("bad_category", "identity placement");
    }
    for (int g = 0; g < (int)mor.size(); ++g)
        for (int f = 0; f < (int)mor.size(); ++f) {
            if (mor[f].dst != mor[g].src) {
                if (comp[g][f] != -1) throw Error("bad_category", "composite of non-composable");
                continue;
            }
            int gf = comp[g][f];
            if (gf < 0) throw Error("bad_category", "missing composite");
            if (mor[gf].src != mor[f].src || mor[gf].dst != mor[g].dst)
                throw Error("bad_category", "composite endpoints");
        }
    // associativity + identity laws
    for (int f = 0; f < (int)mor.size(); ++f) {
        if (comp[f][id(mor[f].src)] != f || comp[id(mor[f].dst)][f] != f)
            throw Error("bad_category", "identity law");
        for (int g = 0; g < (int)mor.size(); ++g) {
            if (mor[f].dst != mor[g].src) continue;
            for (int h = 0; h < (int)mor.size(); ++h) {
                if (mor[g].dst != mor[h].src) continue;
                if (comp[comp[h][g]][f] != comp[h][comp[g][f]])
                    throw Error("bad_category", "associativity");
            }
        }
    }
}

FinCat fincat_point() {
    FinCat C;
    C.n_obj = 1;
    C.mor = {{0, 0, "id0"}};
    C.comp = {{0}};
    return C;
}

FinCat fincat_arrow() {
    FinCat C;
    C.n_obj = 2;
    C.mor = {{0, 0, "id0"}, {1, 1, "id1"}, {0, 1, "f"}};
    C.comp.assign(3, std::vector<int>(3, -1));
    C.comp[0][0] = 0;
    C.comp[1][1] = 1;
    C.comp[2][0] = 2; // f . id0
    C.comp[1][2] = 2; // id1 . f
    return C;
}

FinCat fincat_composable_pair() {
    FinCat C;
    C.n_obj = 3;
    C.mor = {{0, 0, "id0"}, {1, 1, "id1"}, {2, 2, "id2"}, {0, 1, "f"}, {1, 2, "g"}, {0, 2, "gf"}};
    C.comp.assign(6, std::vector<int>(6, -1));
    for (int o = 0; o < 3; ++o) C.comp[o][o] = o;
    C.comp[3][0] = 3;
    C.comp[1][3] = 3;
    C.comp[4][1] = 4;
    C.comp[2][4] = 4;
    C.comp[5][0] = 5;
    C.comp[2][5] = 5;
    C.comp[4][3] = 5; // g . f = gf
    C.comp[5][0] = 5;
    return C;
}

SSet sset_nerve(const FinCat& C, int cap) {
    C.validate();
    SSet X;
    X.cap = cap;
    X.faces.resize(cap + 1);
    X.names.resize(cap + 1);
    // nd cells at level d: strings of d non-identity composable morphisms
    std::vector<std::vector<std::vector<int>>> strings(cap + 1);
    std::map<std::vector<int>, int> index;
    for (int o = 0; o < C.n_obj; ++o) {
        strings[0].push_back({o}); // encode level-0 cell as {object}
        index[{-1, o}] = o;        // key with sentinel to distinguish from strings
        X.names[0].push_back("o" + std::to_string(o));
    }
    X.faces[0].resize(C.n_obj);
    std::map<std::vector<int>, int> sindex; // strings of morphisms -> cell
    for (int d = 1; d <= cap; ++d) {
        // strings (f_1,...,f_d), all non-identity, composable: dst(f_i) = src(f_{i+1})
        std::vector<std::vector<int>> cur;
        std::function<void(std::vector<int>&)> rec = [&](std::vector<int>& s) {
            if ((int)s.size() == d) {
                cur.push_back(s);
                return;
            }
            for (int f = C.n_obj; f < (int)C.mor.size(); ++f) {
                if (!s.empty() && C.mor[s.back()].dst != C.mor[f].src) continue;
                s.push_back(f);
                rec(s);
                s.pop_back();
            }
        };
        std::vector<int> s;
        rec(s);
        strings[d] = cur;
        for (int c = 0; c < (int)cur.size(); ++c) {
            sindex[cur[c]] = c;
            std::string nm;
            for (size_t t = 0; t < cur[c].size(); ++t)
                nm += C.mor[cur[c][t]].name + (t + 1 < cur[c].size() ? "|" : "");
            X.names[d].push_back(nm);
        }
        X.faces[d].resize(cur.size());
    }
    // value of a (possibly degenerate) string: strip identities
    auto string_value = [&](const std::vector<int>& str, int src_obj) -> SimplexVal {
        std::vector<int> stripped;
        std::vector<int> epif;
        int pos = 0;
        epif.push_back(0);
        for (int f : str) {
            if (!C.is_id(f)) {
                stripped.push_back(f);
                ++pos;
            }
            epif.push_back(pos);
        }
        SimplexVal v;
        v.cell_level = (int)stripped.size();
        if (stripped.empty())
            v.cell = src_obj;
        else
            v.cell = sindex.at(stripped);
        v.epi.dom = (int)str.size();
        v.epi.cod = v.cell_level;
        v.epi.f = epif;
        return v;
    };
    for (int d = 1; d <= cap; ++d) {
        for (int c = 0; c < (int)strings[d].size(); ++c) {
            const std::vector<int>& s = strings[d][c];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> t;
                int src_obj;
                if (i == 0) {
                    t.assign(s.begin() + 1, s.end());
                    src_obj = C.mor[s[0]].dst;
                } else if (i == d) {
                    t.assign(s.begin(), s.end() - 1);
                    src_obj = C.mor[s[0]].src;
                } else {
                    t.assign(s.begin(), s.end());
                    int g = t[i];
                    t[i - 1] = C.comp[g][s[i - 1]];
                    t.erase(t.begin() + i);
                    src_obj = C.mor[s[0]].src;
                }
                X.faces[d][c].push_back(string_value(t, src_obj));
            }
        }
    }
    return X;
}

std::vector<int> nerve_string(const FinCat& C, const SSet& N, const SimplexVal& v) {
    // morphism string (length = level of v), identities included.
    // nd 1-cells are the non-identity morphisms in enumeration order, so nd edge c
    // is morphism C.n_obj + c; nd 0-cells are the objects.
    int n = v.epi.dom;
    std::vector<int> out;
    SimplexVal base{Monotone::identity(v.epi.dom), v.epi.dom, 0};
    for (int i = 0; i < n; ++i) {
        Monotone e;
        e.dom = 1;
        e.cod = n;
        e.f = {i, i + 1};
        SimplexVal fullv = v; // act applies v's epi itself
        SimplexVal ev = N.act(fullv, e);
        if (ev.cell_level == 1)
            out.push_back(C.n_obj + ev.cell);
        else
            out.push_back(C.id(ev.cell)); // degenerate edge at object ev.cell
    }
    (void)base;
    return out;
}

int nerve_vertex_object(const SSet& N, const SimplexVal& v) {
    if (v.epi.dom != 0) throw Error("bad_index", "nerve_vertex_object expects a vertex");
    (void)N;
    return v.cell;
}

// ---------- chains, cohomology, components ----------

ChainComplex normalized_chains(const SSet& X, Field k, int top) {
    ChainComplex C;
    C.k = k;
    C.dims.resize(top + 1);
    for (int n = 0; n <= top; ++n) C.dims[n] = X.nd_count(n);
    C.d.resize(top + 1);
    C.d[0] = Mat::zero(k, 0, 0);
    for (int n = 1; n <= top; ++n) {
        Mat D(k, C.dims[n - 1], C.dims[n]);
        for (int c = 0; c < C.dims[n]; ++c)
            for (int i = 0; i <= n; ++i) {
                const SimplexVal& f = X.faces[n][c][i];
                if (f.nondegenerate())
                    D.at(f.cell, c) += (i % 2 == 0) ? Scalar::one(k) : -Scalar::one(k);
            }
        C.d[n] = std::move(D);
    }
    return C;
}

CohomologyTable sset_cohomology(const SSet& X, Field k, int top) {
    ChainComplex C = normalized_chains(X, k, top);
    CochainComplex D;
    D.k = k;
    D.dims = C.dims;
    D.d.resize(top);
    for (int n = 0; n < top; ++n) D.d[n] = transpose(C.d[n + 1]);
    auto h = D.cohomology_dims();
    CohomologyTable t;
    for (int j = 0; j < top; ++j)
        if (h[j] != 0) t.dim[j] = h[j];
    return t;
}

std::vector<int> component_of_vertices(const SSet& X) {
    int n0 = X.nd_count(0);
    std::vector<int> parent(n0);
    for (int i = 0; i < n0; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int c = 0; c < X.nd_count(1); ++c) {
        int a = X.faces[1][c][0].cell, b = X.faces[1][c][1].cell;
        parent[find(a)] = find(b);
    }
    std::vector<int> comp(n0);
    std::map<int, int> rename;
    for (int i = 0; i < n0; ++i) {
        int r = find(i);
        if (!rename.count(r)) rename[r] = (int)rename.size();
        comp[i] = rename[r];
    }
    return comp;
}

int component_count(const SSet& X) {
    auto c = component_of_vertices(X);
    int m = 0;
    for (int x : c) m = std::max(m, x + 1);
    return m;
}

std::vector<HornFailure> kan_probe(const SSet& X, int up_to) {
    std::vector<HornFailure> fails;
    for (int n = 1; n <= up_to; ++n) {
        std::vector<SimplexVal> lower = X.full_level(n - 1);
        std::vector<SimplexVal> level = X.full_level(n);
        for (int kk = 0; kk <= n; ++kk) {
            // tuples (x_0..x_n) omitting slot kk with matching faces
            std::vector<int> idx(n, 0); // indices into `lower` for the n slots (i != kk)
            std::vector<int> slots;
            for (int i = 0; i <= n; ++i)
                if (i != kk) slots.push_back(i);
            std::function<void(int, std::vector<SimplexVal>&)> rec = [&](int s,
                                                                         std::vector<SimplexVal>& tup) {
                if (s == (int)slots.size()) {
                    // find filler
                    for (const SimplexVal& y : level) {
                        bool ok = true;
                        for (int t = 0; t < (int)slots.size() && ok; ++t)
                            if (!(X.face(y, slots[t]) == tup[t])) ok = false;
                        if (ok) return;
                    }
                    std::ostringstream os;
                    os << "horn(" << n << "," << kk << "): ";
                    for (const auto& v : tup) os << X.name(v) << " ";
                    fails.push_back({n, kk, os.str()});
                    return;
                }
                for (const SimplexVal& cand : lower) {
                    // compatibility with already chosen
                    bool ok = true;
                    if (n >= 2) {
                        for (int t = 0; t < s && ok; ++t) {
                            int i = slots[t], j = slots[s];
                            // i < j guaranteed by slot order
                            if (!(X.face(cand, i) == X.face(tup[t], j - 1))) ok = false;
                        }
                    }
                    if (!ok) continue;
                    tup.push_back(cand);
                    rec(s + 1, tup);
                    tup.pop_back();
                }
            };
            std::vector<SimplexVal> tup;
            rec(0, tup);
        }
    }
    return fails;
}

// ---------- edge path group via bounded Todd-Coxeter ----------

namespace {
struct Presentation {
    int ngen = 0;
    std::vector<std::vector<int>> relators; // words in gens: g -> 2g, g^-1 -> 2g+1
};

long long todd_coxeter(const Presentation& P, long long bound) {
    int nsym = 2 * P.ngen;
    std::vector<std::vector<long long>> table;
    std::vector<long long> fuse;
    std::vector<std::pair<long long, long long>> pending;
    auto new_coset = [&]() -> long long {
        table.push_back(std::vector<long long>(nsym, -1));
        fuse.push_back((long long)fuse.size());
        return (long long)table.size() - 1;
    };
    std::function<long long(long long)> rep = [&](long long a) {
        while (fuse[a] != a) a = fuse[a] = fuse[fuse[a]];
        return a;
    };
    std::function<void(long long, int, long long)> deduce = [&](long long c, int sym, long long d) {
        c = rep(c);
        d = rep(d);
        if (table[c][sym] < 0)
            table[c][sym] = d;
        else if (rep(table[c][sym]) != d)
            pending.push_back({rep(table[c][sym]), d});
        if (table[d][sym ^ 1] < 0)
            table[d][sym ^ 1] = c;
        else if (rep(table[d][sym ^ 1]) != c)
            pending.push_back({rep(table[d][sym ^ 1]), c});
    };
    auto process_pending = [&]() {
        while (!pending.empty()) {
            auto [a, b] = pending.back();
            pending.pop_back();
            a = rep(a);
            b = rep(b);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            fuse[b] = a;
            for (int s = 0; s < nsym; ++s) {
                long long tb = table[b][s];
                if (tb < 0) continue;
                deduce(a, s, rep(tb));
            }
        }
    };
    new_coset();
    bool changed = true;
    while (changed) {
        changed = false;
        for (long long c = 0; c < (long long)table.size(); ++c) {
            if (rep(c) != c) continue;
            for (const auto& rel : P.relators) {
                long long cur = c;
                for (size_t t = 0; t < rel.size(); ++t) {
                    long long nxt = table[rep(cur)][rel[t]];
                    if (nxt < 0) {
                        if (t + 1 == rel.size()) {
                            deduce(rep(cur), rel[t], rep(c));
                            changed = true;
                            cur = rep(c);
                            break;
                        }
                        if ((long long)table.size() >= bound) return -1;
                        long long fresh = new_coset();
                        deduce(rep(cur), rel[t], fresh);
                        changed = true;
                        nxt = fresh;
                    }
                    cur = rep(nxt);
                    if (t + 1 == rel.size() && cur != rep(c)) {
                        pending.push_back({cur, rep(c)});
                        changed = true;
                    }
                }
                process_pending();
            }
        }
        // fill undefined generator entries so the action is total
        for (long long c = 0; c < (long long)table.size() && !changed; ++c) {
            if (rep(c) != c) continue;
            for (int s = 0; s < nsym && !changed; ++s) {
                if (table[c][s] < 0) {
                    if ((long long)table.size() >= bound) return -1;
                    long long fresh = new_coset();
                    deduce(c, s, fresh);
                    changed = true;
                }
            }
        }
    }
    long long count = 0;
    for (long long c = 0; c < (long long)table.size(); ++c) {
        if (rep(c) != c) continue;
        for (int s = 0; s < nsym; ++s)
            if (table[c][s] < 0) return -1;
        ++count;
    }
    return count;
}
} // namespace

long long edge_path_group_order(const SSet& X, long long coset_bound) {
    if (component_count(X) != 1) throw Error("not_connected", "edge path group of disconnected complex");
    int nv = X.nd_count(0);
    int ne = X.nd_count(1);
    // spanning tree via BFS on nd edges
    std::vector<int> tree_edge(nv, -1);
    std::vector<bool> seen(nv, false);
    std::vector<int> queue = {0};
    seen[0] = true;
    std::vector<bool> in_tree(ne, false);
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int e = 0; e < ne; ++e) {
            int a = X.faces[1][e][1].cell; // source (face_1 = drop vertex 1)
            int b = X.faces[1][e][0].cell; // target
            int other = -1;
            if (a == v && !seen[b]) other = b;
            else if (b == v && !seen[a]) other = a;
            if (other >= 0) {
                seen[other] = true;
                in_tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    Presentation P;
    std::vector<int> gen_of_edge(ne, -1);
    for (int e = 0; e < ne; ++e)
        if (!in_tree[e]) gen_of_edge[e] = P.ngen++;
    // relations from nd 2-cells: edge(d1) = edge(d2) * edge(d0)  (path composition)
    auto edge_word = [&](const SimplexVal& v, std::vector<int>& word, bool invert) {
        // v is a 1-simplex value; degenerate -> identity
        if (!v.nondegenerate() || v.cell_level != 1) return;
        int e = v.cell;
        if (gen_of_edge[e] < 0) return; // tree edge: trivial in pi_1
        word.push_back(2 * gen_of_edge[e] + (invert ? 1 : 0));
    };
    for (int c = 0; c < X.nd_count(2); ++c) {
        // relation: d2 . d0 . d1^{-1} = 1
        std::vector<int> w;
        edge_word(X.faces[2][c][2], w, false);
        edge_word(X.faces[2][c][0], w, false);
        edge_word(X.faces[2][c][1], w, true);
        if (!w.empty()) P.relators.push_back(w);
    }
    if (P.ngen == 0) return 1;
    return todd_coxeter(P, coset_bound);
}

// ---------- explicit tables ----------

void ExplicitSSet::validate() const {
    for (int n = 2; n <= cap; ++n)
        for (int x = 0; x < sizes[n]; ++x)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (face[n - 1][i][face[n][j][x]] != face[n - 1][j - 1][face[n][i][x]])
                        throw Error("simplicial_identity", "explicit dd identity");
    for (int n = 0; n < cap; ++n)
        for (int x = 0; x < sizes[n]; ++x)
            for (int i = 0; i <= n; ++i) {
                if (face[n + 1][i][degen[n][i][x]] != x || face[n + 1][i + 1][degen[n][i][x]] != x)
                    throw Error("simplicial_identity", "explicit sd identity");
            }
}

SSet from_explicit(const ExplicitSSet& E) {
    // identify degenerate cells and build normal forms
    std::vector<std::vector<bool>> degenerate(E.cap + 1);
    std::vector<std::vector<int>> nd_index(E.cap + 1);
    SSet X;
    X.cap = E.cap;
    X.faces.resize(E.cap + 1);
    X.names.resize(E.cap + 1);
    for (int n = 0; n <= E.cap; ++n) {
        degenerate[n].assign(E.sizes[n], false);
        nd_index[n].assign(E.sizes[n], -1);
        for (int x = 0; x < E.sizes[n]; ++x) {
            bool deg = false;
            if (n >= 1)
                for (int i = 0; i <= n - 1 && !deg; ++i)
                    if (E.degen[n - 1][i][E.face[n][i][x]] == x) deg = true;
            degenerate[n][x] = deg;
            if (!deg) {
                nd_index[n][x] = (int)X.faces[n].size();
                X.faces[n].push_back({});
                X.names[n].push_back(n < (int)E.labels.size() && x < (int)E.labels[n].size()
                                         ? E.labels[n][x]
                                         : "c" + std::to_string(n) + "_" + std::to_string(x));
            }
        }
    }
    // normal form of explicit cell
    std::function<SimplexVal(int, int)> norm = [&](int n, int x) -> SimplexVal {
        if (!degenerate[n][x]) return SimplexVal{Monotone::identity(n), n, nd_index[n][x]};
        for (int i = 0; i <= n - 1; ++i)
            if (E.degen[n - 1][i][E.face[n][i][x]] == x) {
                SimplexVal inner = norm(n - 1, E.face[n][i][x]);
                SimplexVal out(inner);
                out.epi = compose(inner.epi, Monotone::codegeneracy(n - 1, i));
                return out;
            }
        throw Error("internal", "degeneracy strip failed");
    };
    for (int n = 1; n <= E.cap; ++n)
        for (int x = 0; x < E.sizes[n]; ++x) {
            if (degenerate[n][x]) continue;
            int c = nd_index[n][x];
            for (int i = 0; i <= n; ++i) X.faces[n][c].push_back(norm(n - 1, E.face[n][i][x]));
        }
    return X;
}

} // namespace sdcw
