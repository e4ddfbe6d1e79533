#include "sdcw/sgroup.hpp"

namespace sdcw {

void FiniteGroup::validate() const {
    if ((int)mul.size() != n || (int)inv.size() != n) throw Error("bad_group", "table sizes");
    for (int a = 0; a < n; ++a) {
        if (mul[e][a] != a || mul[a][e] != a) throw Error("bad_group", "identity law");
        if (mul[a][inv[a]] != e || mul[inv[a]][a] != e) throw Error("bad_group", "inverse law");
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw Error("bad_group", "associativity");
    }
}

FiniteGroup trivial_group() {
    FiniteGroup g;
    g.n = 1;
    g.mul = {{0}};
    g.inv = {0};
    return g;
}

FiniteGroup cyclic_group(int n) {
    FiniteGroup g;
    g.n = n;
    g.mul.assign(n, std::vector<int>(n));
    g.inv.resize(n);
    for (int a = 0; a < n; ++a) {
        g.inv[a] = (n - a) % n;
        for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
    }
    return g;
}

void SimplicialGroupF::validate() const {
    for (auto& g : level) g.validate();
    auto hom_ok = [&](const std::vector<int>& h, const FiniteGroup& src, const FiniteGroup& dst) {
        for (int a = 0; a < src.n; ++a)
            for (int b = 0; b < src.n; ++b)
                if (h[src.mul[a][b]] != dst.mul[h[a]][h[b]]) return false;
        return h[src.e] == dst.e;
    };
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i)
            if (!hom_ok(face[n][i], level[n], level[n - 1]))
                throw Error("bad_sgroup", "face not a homomorphism");
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i)
            if (!hom_ok(degen[n][i], level[n], level[n + 1]))
                throw Error("bad_sgroup", "degeneracy not a homomorphism");
    // simplicial identities
    for (int n = 2; n <= cap; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                for (int x = 0; x < level[n].n; ++x)
                    if (face[n - 1][i][face[n][j][x]] != face[n - 1][j - 1][face[n][i][x]])
                        throw Error("simplicial_identity", "sgroup dd");
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n + 1; ++i)
            for (int j = 0; j <= n; ++j)
                for (int x = 0; x < level[n].n; ++x) {
                    int lhs = face[n + 1][i][degen[n][j][x]];
                    int rhs;
                    if (i == j || i == j + 1)
                        rhs = x;
                    else if (i < j)
                        rhs = degen[n - 1][j - 1][face[n][i][x]];
                    else
                        rhs = degen[n - 1][j][face[n][i - 1][x]];
                    if (lhs != rhs) throw Error("simplicial_identity", "sgroup ds");
                }
}

SimplicialGroupF constant_sgroup(const FiniteGroup& G, int cap) {
    SimplicialGroupF S;
    S.cap = cap;
    S.level.assign(cap + 1, G);
    std::vector<int> id(G.n);
    for (int i = 0; i < G.n; ++i) id[i] = i;
    S.face.resize(cap + 1);
    S.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) S.face[n].assign(n + 1, id);
    for (int n = 0; n < cap; ++n) S.degen[n].assign(n + 1, id);
    return S;
}

void SGroupAction::validate() const {
    X.validate();
    G.validate();
    for (int n = 0; n <= X.cap; ++n) {
        const FiniteGroup& Gn = G.level[n];
        for (int x = 0; x < X.sizes[n]; ++x) {
            if (act[n][x][Gn.e] != x) throw Error("bad_action", "unit");
            for (int g = 0; g < Gn.n; ++g)
                for (int h = 0; h < Gn.n; ++h)
                    if (act[n][act[n][x][g]][h] != act[n][x][Gn.mul[g][h]])
                        throw Error("bad_action", "associativity");
        }
        if (n >= 1)
            for (int x = 0; x < X.sizes[n]; ++x)
                for (int g = 0; g < Gn.n; ++g)
                    for (int i = 0; i <= n; ++i)
                        if (X.face[n][i][act[n][x][g]] != act[n - 1][X.face[n][i][x]][G.face[n][i][g]])
                            throw Error("bad_action", "face compatibility");
        if (n < X.cap)
            for (int x = 0; x < X.sizes[n]; ++x)
                for (int g = 0; g < Gn.n; ++g)
                    for (int i = 0; i <= n; ++i)
                        if (X.degen[n][i][act[n][x][g]] != act[n + 1][X.degen[n][i][x]][G.degen[n][i][g]])
                            throw Error("bad_action", "degeneracy compatibility");
    }
}

SGroupAction trivial_action_on_point(const SimplicialGroupF& G) {
    SGroupAction A;
    A.G = G;
    A.X.cap = G.cap;
    A.X.sizes.assign(G.cap + 1, 1);
    A.X.face.resize(G.cap + 1);
    A.X.degen.resize(G.cap + 1);
    for (int n = 1; n <= G.cap; ++n) A.X.face[n].assign(n + 1, std::vector<int>{0});
    for (int n = 0; n < G.cap; ++n) A.X.degen[n].assign(n + 1, std::vector<int>{0});
    A.act.resize(G.cap + 1);
    for (int n = 0; n <= G.cap; ++n) A.act[n] = {std::vector<int>(G.level[n].n, 0)};
    return A;
}

namespace {
// mixed-radix encoding of (x, g_{n-1}, ..., g_0)
struct QuotLevel {
    int xsize;
    std::vector<int> gsizes; // sizes of G_{n-1}, ..., G_0 in that order
    long long total() const {
        long long t = xsize;
        for (int s : gsizes) t *= s;
        return t;
    }
    long long encode(int x, const std::vector<int>& gs) const {
        long long code = x;
        for (size_t i = 0; i < gs.size(); ++i) code = code * gsizes[i] + gs[i];
        return code;
    }
    std::pair<int, std::vector<int>> decode(long long code) const {
        std::vector<int> gs(gsizes.size());
        for (int i = (int)gsizes.size() - 1; i >= 0; --i) {
            gs[i] = (int)(code % gsizes[i]);
            code /= gsizes[i];
        }
        return {(int)code, gs};
    }
};
} // namespace

ExplicitSSet homotopy_quotient_explicit(const SGroupAction& A) {
    const ExplicitSSet& X = A.X;
    const SimplicialGroupF& G = A.G;
    int cap = std::min(X.cap, G.cap);
    std::vector<QuotLevel> L(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        L[n].xsize = X.sizes[n];
        for (int j = n - 1; j >= 0; --j) L[n].gsizes.push_back(G.level[j].n);
    }
    ExplicitSSet Q;
    Q.cap = cap;
    Q.sizes.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        if (L[n].total() > 2000000) throw Error("budget_exceeded", "homotopy quotient level too large");
        Q.sizes[n] = (int)L[n].total();
    }
    Q.face.resize(cap + 1);
    Q.degen.resize(cap + 1);
    Q.labels.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        Q.face[n].assign(n + 1, std::vector<int>(Q.sizes[n]));
        for (long long code = 0; code < (long long)Q.sizes[n]; ++code) {
            auto [x, gs] = L[n].decode(code); // gs[0] = g_{n-1}, ..., gs[n-1] = g_0
            for (int i = 0; i <= n; ++i) {
                int fx;
                std::vector<int> fgs;
                if (i == 0) {
                    fx = A.act[n - 1][X.face[n][0][x]][gs[0]];
                    for (int t = 1; t < n; ++t) fgs.push_back(gs[t]);
                } else if (i == n) {
                    fx = X.face[n][n][x];
                    for (int t = 0; t + 1 < n; ++t) fgs.push_back(G.face[n - 1 - t][n - 1 - t][gs[t]]);
                } else {
                    fx = X.face[n][i][x];
                    // entries g_{n-1}..g_{n-i+1} get faces d_{i-1}..d_1, then
                    // (d_0 g_{n-i}) g_{n-i-1}, then the tail unchanged
                    for (int t = 0; t < i - 1; ++t) fgs.push_back(G.face[n - 1 - t][i - 1 - t][gs[t]]);
                    int merged = G.level[n - i - 1].mul[G.face[n - i][0][gs[i - 1]]][gs[i]];
                    fgs.push_back(merged);
                    for (int t = i + 1; t < n; ++t) fgs.push_back(gs[t]);
                }
                Q.face[n][i][(size_t)code] = (int)L[n - 1].encode(fx, fgs);
            }
        }
    }
    for (int n = 0; n < cap; ++n) {
        Q.degen[n].assign(n + 1, std::vector<int>(Q.sizes[n]));
        for (long long code = 0; code < (long long)Q.sizes[n]; ++code) {
            auto [x, gs] = L[n].decode(code);
            for (int i = 0; i <= n; ++i) {
                int sx = X.degen[n][i][x];
                std::vector<int> sgs;
                for (int t = 0; t < i; ++t) sgs.push_back(G.degen[n - 1 - t][i - 1 - t][gs[t]]);
                sgs.push_back(G.level[n - i].e);
                for (int t = i; t < n; ++t) sgs.push_back(gs[t]);
                Q.degen[n][i][(size_t)code] = (int)L[n + 1].encode(sx, sgs);
            }
        }
    }
    Q.validate();
    return Q;
}

SSet homotopy_quotient(const SGroupAction& A) { return from_explicit(homotopy_quotient_explicit(A)); }

ExplicitSSet wbar_explicit(const SimplicialGroupF& G) {
    return homotopy_quotient_explicit(trivial_action_on_point(G));
}

SSet wbar(const SimplicialGroupF& G) { return from_explicit(wbar_explicit(G)); }

} // namespace sdcw
