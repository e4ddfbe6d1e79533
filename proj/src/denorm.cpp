#include "sdcw/denorm.hpp"

#include <algorithm>
#include <map>

namespace sdcw {

Scalar shuffle_sign(Field k, const std::vector<int>& S, const std::vector<int>& T) {
    for (int s : S)
        for (int t : T)
            if (s == t) throw Error("overlap", "shuffle sets intersect");
    // parity of the permutation sorting (S, T) concatenated: inversions across blocks
    long long inv = 0;
    for (int s : S)
        for (int t : T)
            if (s > t) ++inv;
    return inv % 2 == 0 ? Scalar::one(k) : -Scalar::one(k);
}

namespace {
// term in the straightening calculus: word in application order (first applied
// first), base element index at a given L-degree, coefficient
struct Term {
    Scalar coeff;
    std::vector<int> word;
    int deg;
    int li;
};

// straighten words into normal form: strictly increasing, no zero letters.
// rules: (applied a then b) with b <= a rewrites to (applied b then a+1);
// a leading 0 expands by d v - sum_{r=1}^{deg+1} (-1)^r d^r v.
std::vector<Term> straighten(const Dgla& L, std::vector<Term> terms) {
    Field k = L.k;
    std::vector<Term> done;
    while (!terms.empty()) {
        Term t = terms.back();
        terms.pop_back();
        if (t.coeff.is_zero()) continue;
        // find a violation
        bool expanded = false;
        if (!t.word.empty() && t.word[0] == 0) {
            // expand the innermost zero
            std::vector<int> rest(t.word.begin() + 1, t.word.end());
            // d v
            if (L.dim_deg(t.deg + 1) > 0) {
                Vec e = zero_vec(k, L.dim_deg(t.deg));
                e[t.li] = Scalar::one(k);
                Vec dv = L.d_apply(t.deg, e);
                for (int r = 0; r < (int)dv.size(); ++r)
                    if (!dv[r].is_zero()) terms.push_back({t.coeff * dv[r], rest, t.deg + 1, r});
            }
            // - sum (-1)^r d^r v
            for (int r = 1; r <= t.deg + 1; ++r) {
                std::vector<int> w = {r};
                w.insert(w.end(), rest.begin(), rest.end());
                Scalar c = (r % 2 == 0) ? -t.coeff : t.coeff; // -(-1)^r
                terms.push_back({c, w, t.deg, t.li});
            }
            continue;
        }
        for (size_t p = 0; p + 1 < t.word.size(); ++p) {
            if (t.word[p + 1] <= t.word[p]) {
                // swap: outer b = word[p+1] <= inner a = word[p]
                std::vector<int> w = t.word;
                int a = w[p], b = w[p + 1];
                w[p] = b;
                w[p + 1] = a + 1;
                terms.push_back({t.coeff, w, t.deg, t.li});
                expanded = true;
                break;
            }
        }
        if (!expanded) done.push_back(t);
    }
    return done;
}

std::vector<Term> apply_sigma(const Dgla& L, int i, Term t) {
    // compose sigma^i with the word (outermost first handling): push sigma inward
    // through the word from the outer end; it either cancels a letter or reaches
    // the base element and kills the term.
    (void)L;
    int c = i;
    std::vector<int> emitted; // letters that stay, outermost-first
    std::vector<int> w = t.word;
    // outermost letter is the last entry
    while (!w.empty()) {
        int j = w.back();
        w.pop_back();
        if (j == c || j == c + 1) {
            // sigma cancels this coface; remaining word stays as-is
            std::vector<int> out = w;
            for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) out.push_back(*it);
            return {{t.coeff, out, t.deg, t.li}};
        }
        if (j < c) {
            emitted.push_back(j);
            c -= 1;
        } else { // j > c + 1
            emitted.push_back(j - 1);
        }
    }
    // sigma reached the base element: zero
    return {};
}
} // namespace

Vec DenormDgla::br(int n, const Vec& a, const Vec& b) const {
    const Mat& B = bracket[n];
    Vec out = zero_vec(k, dims[n]);
    for (int i = 0; i < dims[n]; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dims[n]; ++j) {
            if (b[j].is_zero()) continue;
            Scalar c = a[i] * b[j];
            for (int r = 0; r < dims[n]; ++r) out[r] += c * B.at(r, i * dims[n] + j);
        }
    }
    return out;
}

Vec DenormDgla::apply_coface(int i, int n, const Vec& a) const {
    if (i < 0 || i > n + 1 || n >= cap) throw Error("bad_index", "coface");
    return mat_vec(coface[n][i], a);
}

Vec DenormDgla::apply_codeg(int i, int n, const Vec& a) const {
    if (i < 0 || i >= n) throw Error("bad_index", "codegeneracy");
    return mat_vec(codeg[n][i], a);
}

DenormDgla denormalize_dgla(const Dgla& L, int cap) {
    if (L.min_deg != 0) throw Error("bad_index", "denormalization needs an N_0-graded input");
    Field k = L.k;
    DenormDgla D;
    D.k = k;
    D.L = L;
    D.cap = cap;
    D.labels.resize(cap + 1);
    D.dims.resize(cap + 1);
    std::vector<std::map<std::pair<std::vector<int>, int>, int>> index(cap + 1);
    // labels: J subset of {1..n} strictly increasing, |J| = n - m, v in L^m
    for (int n = 0; n <= cap; ++n) {
        std::vector<std::vector<int>> subsets = {{}};
        for (int j = 1; j <= n; ++j) {
            size_t old = subsets.size();
            for (size_t s = 0; s < old; ++s) {
                std::vector<int> J2 = subsets[s];
                J2.push_back(j);
                subsets.push_back(J2);
            }
        }
        std::sort(subsets.begin(), subsets.end(),
                  [](const std::vector<int>& a, const std::vector<int>& b) {
                      if (a.size() != b.size()) return a.size() < b.size();
                      return a < b;
                  });
        for (const auto& J : subsets) {
            int m = n - (int)J.size();
            if (m < 0 || m > L.max_deg()) continue;
            for (int li = 0; li < L.dim_deg(m); ++li) {
                index[n][{J, li}] = (int)D.labels[n].size();
                D.labels[n].push_back({J, li});
            }
        }
        D.dims[n] = (int)D.labels[n].size();
    }
    // cofaces by straightening
    D.coface.resize(cap + 1);
    for (int n = 0; n < cap; ++n) {
        D.coface[n].resize(n + 2);
        for (int i = 0; i <= n + 1; ++i) {
            Mat M(k, D.dims[n + 1], D.dims[n]);
            for (int t = 0; t < D.dims[n]; ++t) {
                const auto& lbl = D.labels[n][t];
                std::vector<int> word = lbl.J; // application order: increasing
                word.push_back(i);             // applied last
                auto terms = straighten(L, {{Scalar::one(k), word, n - (int)lbl.J.size(), lbl.li}});
                for (const Term& tm : terms) {
                    auto it = index[n + 1].find({tm.word, tm.li});
                    if (it == index[n + 1].end())
                        throw Error("internal", "coface straightening left the basis");
                    M.at(it->second, t) += tm.coeff;
                }
            }
            D.coface[n][i] = std::move(M);
        }
    }
    // codegeneracies
    D.codeg.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        D.codeg[n].resize(n);
        for (int i = 0; i < n; ++i) {
            Mat M(k, D.dims[n - 1], D.dims[n]);
            for (int t = 0; t < D.dims[n]; ++t) {
                const auto& lbl = D.labels[n][t];
                auto terms = apply_sigma(L, i, {Scalar::one(k), lbl.J, n - (int)lbl.J.size(), lbl.li});
                terms = straighten(L, terms);
                for (const Term& tm : terms) {
                    auto it = index[n - 1].find({tm.word, tm.li});
                    if (it == index[n - 1].end())
                        throw Error("internal", "codegeneracy straightening left the basis");
                    M.at(it->second, t) += tm.coeff;
                }
            }
            D.codeg[n][i] = std::move(M);
        }
    }
    // Eilenberg-Zilber bracket tables
    D.bracket.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        Mat B(k, D.dims[n], D.dims[n] * D.dims[n]);
        for (int a = 0; a < D.dims[n]; ++a)
            for (int b = 0; b < D.dims[n]; ++b) {
                const auto& la = D.labels[n][a];
                const auto& lb = D.labels[n][b];
                int degv = n - (int)la.J.size();
                int degw = n - (int)lb.J.size();
                // J \ I and I \ J for I = la.J, J = lb.J
                std::vector<int> JmI, ImJ, IcJ;
                for (int x : lb.J)
                    if (!std::binary_search(la.J.begin(), la.J.end(), x)) JmI.push_back(x);
                for (int x : la.J)
                    if (!std::binary_search(lb.J.begin(), lb.J.end(), x)) ImJ.push_back(x);
                for (int x : la.J)
                    if (std::binary_search(lb.J.begin(), lb.J.end(), x)) IcJ.push_back(x);
                if (degv != (int)JmI.size() || degw != (int)ImJ.size()) continue;
                if (degv + degw > L.max_deg()) continue;
                Vec ev = zero_vec(k, L.dim_deg(degv));
                ev[la.li] = Scalar::one(k);
                Vec ew = zero_vec(k, L.dim_deg(degw));
                ew[lb.li] = Scalar::one(k);
                Vec vw = L.bracket(degv, degw, ev, ew);
                if (vw.empty() || is_zero_vec(vw)) continue;
                Scalar sgn = shuffle_sign(k, JmI, ImJ);
                for (int r = 0; r < (int)vw.size(); ++r) {
                    if (vw[r].is_zero()) continue;
                    auto it = index[n].find({IcJ, r});
                    if (it == index[n].end()) throw Error("internal", "bracket target missing");
                    B.at(it->second, a * D.dims[n] + b) += sgn * vw[r];
                }
            }
        D.bracket[n] = std::move(B);
    }
    return D;
}

std::vector<AxiomWitness> denorm_axiom_report(const DenormDgla& D) {
    std::vector<AxiomWitness> out;
    Field k = D.k;
    // cosimplicial identities as matrix equalities
    for (int n = 0; n + 1 < D.cap; ++n)
        for (int i = 0; i <= n + 1; ++i)
            for (int j = i + 1; j <= n + 2; ++j)
                if (!(mat_mul(D.coface[n + 1][j], D.coface[n][i]) ==
                      mat_mul(D.coface[n + 1][i], D.coface[n][j - 1])))
                    out.push_back({"cosimplicial_dd",
                                   "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                                       " j=" + std::to_string(j)});
    for (int n = 2; n <= D.cap; ++n)
        for (int j = 0; j <= n - 2; ++j)
            for (int i = 0; i <= j; ++i)
                if (!(mat_mul(D.codeg[n - 1][i], D.codeg[n][j + 1]) ==
                      mat_mul(D.codeg[n - 1][j], D.codeg[n][i])))
                    out.push_back({"cosimplicial_ss", "n=" + std::to_string(n)});
    for (int n = 0; n < D.cap; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                Mat lhs = mat_mul(D.codeg[n + 1][j], D.coface[n][i]);
                Mat rhs;
                if (i < j)
                    rhs = mat_mul(D.coface[n - 1][i], D.codeg[n][j - 1]);
                else if (i == j || i == j + 1)
                    rhs = Mat::identity(k, D.dims[n]);
                else
                    rhs = mat_mul(D.coface[n - 1][i - 1], D.codeg[n][j]);
                if (!(lhs == rhs))
                    out.push_back({"cosimplicial_sd",
                                   "n=" + std::to_string(n) + " i=" + std::to_string(i) +
                                       " j=" + std::to_string(j)});
            }
    // per-level Lie algebra axioms
    for (int n = 0; n <= D.cap; ++n) {
        int d = D.dims[n];
        auto basis = [&](int i) {
            Vec e = zero_vec(k, d);
            e[i] = Scalar::one(k);
            return e;
        };
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
                if (!is_zero_vec(add(D.br(n, basis(a), basis(b)), D.br(n, basis(b), basis(a)))))
                    out.push_back({"level_antisymmetry", "n=" + std::to_string(n)});
            }
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                for (int c = 0; c < d; ++c) {
                    Vec s = D.br(n, basis(a), D.br(n, basis(b), basis(c)));
                    s = add(s, D.br(n, basis(b), D.br(n, basis(c), basis(a))));
                    s = add(s, D.br(n, basis(c), D.br(n, basis(a), basis(b))));
                    if (!is_zero_vec(s)) out.push_back({"level_jacobi", "n=" + std::to_string(n)});
                }
    }
    // cofaces and codegeneracies are Lie homomorphisms
    for (int n = 0; n < D.cap; ++n)
        for (int i = 0; i <= n + 1; ++i) {
            int d = D.dims[n];
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    Vec ea = zero_vec(k, d), eb = zero_vec(k, d);
                    ea[a] = Scalar::one(k);
                    eb[b] = Scalar::one(k);
                    Vec lhs = mat_vec(D.coface[n][i], D.br(n, ea, eb));
                    Vec rhs = D.br(n + 1, mat_vec(D.coface[n][i], ea), mat_vec(D.coface[n][i], eb));
                    if (!vec_eq(lhs, rhs))
                        out.push_back({"coface_not_lie_hom",
                                       "n=" + std::to_string(n) + " i=" + std::to_string(i)});
                }
        }
    for (int n = 1; n <= D.cap; ++n)
        for (int i = 0; i < n; ++i) {
            int d = D.dims[n];
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b) {
                    Vec ea = zero_vec(k, d), eb = zero_vec(k, d);
                    ea[a] = Scalar::one(k);
                    eb[b] = Scalar::one(k);
                    Vec lhs = mat_vec(D.codeg[n][i], D.br(n, ea, eb));
                    Vec rhs = D.br(n - 1, mat_vec(D.codeg[n][i], ea), mat_vec(D.codeg[n][i], eb));
                    if (!vec_eq(lhs, rhs))
                        out.push_back({"codeg_not_lie_hom",
                                       "n=" + std::to_string(n) + " i=" + std::to_string(i)});
                }
        }
    return out;
}

void CosimplicialModule::validate() const {
    for (int n = 0; n + 1 < cap; ++n)
        for (int i = 0; i <= n + 1; ++i)
            for (int j = i + 1; j <= n + 2; ++j)
                if (!(mat_mul(coface[n + 1][j], coface[n][i]) ==
                      mat_mul(coface[n + 1][i], coface[n][j - 1])))
                    throw Error("cosimplicial_identity", "dd");
    for (int n = 0; n < cap; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                Mat lhs = mat_mul(codeg[n + 1][j], coface[n][i]);
                Mat rhs;
                if (i < j)
                    rhs = mat_mul(coface[n - 1][i], codeg[n][j - 1]);
                else if (i == j || i == j + 1)
                    rhs = Mat::identity(k, dims[n]);
                else
                    rhs = mat_mul(coface[n - 1][i - 1], codeg[n][j]);
                if (!(lhs == rhs)) throw Error("cosimplicial_identity", "sd");
            }
}

CosimplicialModule denorm_underlying(const DenormDgla& D) {
    CosimplicialModule C;
    C.k = D.k;
    C.cap = D.cap;
    C.dims = D.dims;
    C.coface = D.coface;
    C.codeg = D.codeg;
    return C;
}

Conormalization conormalize(const CosimplicialModule& C) {
    Field k = C.k;
    Conormalization out;
    out.total.k = k;
    out.total.dims = C.dims;
    out.total.d.resize(C.cap);
    for (int n = 0; n < C.cap; ++n) {
        Mat d = Mat::zero(k, C.dims[n + 1], C.dims[n]);
        for (int i = 0; i <= n + 1; ++i) {
            Mat term = C.coface[n][i];
            if (i % 2 == 1) term = mat_scale(-Scalar::one(k), term);
            d = mat_add(d, term);
        }
        out.total.d[n] = std::move(d);
    }
    out.total.validate();
    out.nc_basis.resize(C.cap + 1);
    out.deg_basis.resize(C.cap + 1);
    out.proj_nc.resize(C.cap + 1);
    out.matching_iso_ok = true;
    for (int n = 0; n <= C.cap; ++n) {
        if (n == 0) {
            for (int i = 0; i < C.dims[0]; ++i) {
                Vec e = zero_vec(k, C.dims[0]);
                e[i] = Scalar::one(k);
                out.nc_basis[0].push_back(e);
            }
            out.proj_nc[0] = Mat::identity(k, C.dims[0]);
            continue;
        }
        Mat stacked = C.codeg[n][0];
        for (int i = 1; i < n; ++i) stacked = vstack(stacked, C.codeg[n][i]);
        out.nc_basis[n] = rank_kernel(stacked).kernel;
        std::vector<Vec> dg;
        for (int i = 1; i <= n; ++i)
            for (int c = 0; c < C.dims[n - 1]; ++c) {
                Vec e = zero_vec(k, C.dims[n - 1]);
                e[c] = Scalar::one(k);
                dg.push_back(mat_vec(C.coface[n - 1][i], e));
            }
        out.deg_basis[n] = span_basis(k, C.dims[n], dg);
        if ((int)(out.nc_basis[n].size() + out.deg_basis[n].size()) != C.dims[n]) {
            out.matching_iso_ok = false;
            continue;
        }
        std::vector<Vec> all(out.nc_basis[n]);
        for (auto& v : out.deg_basis[n]) all.push_back(v);
        Mat B = from_columns(k, C.dims[n], all);
        Mat Bi = mat_inverse(B);
        Mat P(k, (int)out.nc_basis[n].size(), C.dims[n]);
        for (int r = 0; r < P.rows; ++r)
            for (int c = 0; c < P.cols; ++c) P.at(r, c) = Bi.at(r, c);
        out.proj_nc[n] = std::move(P);
        // sigma-bar restricted to the coface part is injective onto the matching
        // space; verify dimensions agree with the matching subspace
        {
            // matching space M^{n-1}: tuples (e_0..e_{n-1}) in (C^{n-1})^n with
            // sigma^i e_j = sigma^{j-1} e_i for i < j
            int dn1 = C.dims[n - 1];
            std::vector<Vec> rows;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    // careful: sigma maps C^{n-1} -> C^{n-2}
                    if (n - 1 == 0) continue;
                    for (int r = 0; r < C.dims[n - 2]; ++r) {
                        Vec row = zero_vec(k, dn1 * n);
                        for (int c = 0; c < dn1; ++c) {
                            row[(size_t)j * dn1 + c] += C.codeg[n - 1][i].at(r, c);
                            row[(size_t)i * dn1 + c] -= C.codeg[n - 1][j - 1].at(r, c);
                        }
                        rows.push_back(row);
                    }
                }
            int match_dim;
            if (rows.empty())
                match_dim = dn1 * n;
            else {
                Mat sys(k, (int)rows.size(), dn1 * n);
                for (int r = 0; r < (int)rows.size(); ++r)
                    for (int c = 0; c < dn1 * n; ++c) sys.at(r, c) = rows[r][c];
                match_dim = (int)rank_kernel(sys).kernel.size();
            }
            // sigma-bar on the coface part: injective iff dim D^n = rank of the map
            std::vector<Vec> imgs;
            for (const Vec& v : out.deg_basis[n]) {
                Vec img;
                for (int i = 0; i < n; ++i) {
                    Vec s = mat_vec(C.codeg[n][i], v);
                    img.insert(img.end(), s.begin(), s.end());
                }
                imgs.push_back(img);
            }
            int rank = span_dim(k, dn1 * n, imgs);
            if (rank != (int)out.deg_basis[n].size() || rank != match_dim)
                out.matching_iso_ok = false;
        }
    }
    // conormalized differential: restriction of the total one
    out.Nc.k = k;
    out.Nc.dims.resize(C.cap + 1);
    for (int n = 0; n <= C.cap; ++n) out.Nc.dims[n] = (int)out.nc_basis[n].size();
    out.Nc.d.resize(C.cap);
    for (int n = 0; n < C.cap; ++n) {
        Mat D(k, out.Nc.dims[n + 1], out.Nc.dims[n]);
        for (int j = 0; j < out.Nc.dims[n]; ++j) {
            Vec img = mat_vec(out.total.d[n], out.nc_basis[n][j]);
            Vec coords = mat_vec(out.proj_nc[n + 1], img);
            // the projection must be lossless on the conormalized part
            Vec recon = zero_vec(k, C.dims[n + 1]);
            for (int t = 0; t < (int)coords.size(); ++t)
                recon = add(recon, scale(coords[t], out.nc_basis[n + 1][t]));
            if (!vec_eq(recon, img))
                throw Error("internal", "total differential does not preserve the conormalization");
            for (int r = 0; r < D.rows; ++r) D.at(r, j) = coords[r];
        }
        out.Nc.d[n] = std::move(D);
    }
    out.Nc.validate();
    return out;
}

NilpotentDgla level_lie(const DenormDgla& D, int n, const TestRing& A) {
    // single piece in degree 0: D^n(L) (x) m(A)
    Field k = D.k;
    int dl = D.dims[n], md = A.mdim();
    Dgla T;
    T.k = k;
    T.min_deg = 0;
    T.dims = {dl * md};
    T.br.assign(1, std::vector<Mat>(1));
    Mat B(k, dl * md, (size_t)dl * md * dl * md);
    for (int i = 0; i < dl; ++i)
        for (int j = 0; j < dl; ++j) {
            Vec ei = zero_vec(k, dl), ej = zero_vec(k, dl);
            ei[i] = Scalar::one(k);
            ej[j] = Scalar::one(k);
            Vec lij = D.br(n, ei, ej);
            if (is_zero_vec(lij)) continue;
            for (int a = 0; a < md; ++a)
                for (int b = 0; b < md; ++b) {
                    Vec ea = zero_vec(k, md), eb = zero_vec(k, md);
                    ea[a] = Scalar::one(k);
                    eb[b] = Scalar::one(k);
                    Vec mab = A.m_mul(ea, eb);
                    if (is_zero_vec(mab)) continue;
                    int col = (i * md + a) * dl * md + (j * md + b);
                    for (int r = 0; r < dl; ++r)
                        for (int c = 0; c < md; ++c) B.at(r * md + c, col) = lij[r] * mab[c];
                }
        }
    T.br[0][0] = std::move(B);
    NilpotentDgla out;
    out.L = T;
    out.nilpotency = std::min(A.nilpotency, lower_central_vanishing(T, A.nilpotency + 2));
    return out;
}

} // namespace sdcw
