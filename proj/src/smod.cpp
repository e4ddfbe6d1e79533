#include "sdcw/smod.hpp"

namespace sdcw {

void SimplicialModule::validate() const {
    for (int n = 1; n <= cap; ++n) {
        if ((int)face[n].size() != n + 1) throw Error("bad_smod", "face count at " + std::to_string(n));
        for (int i = 0; i <= n; ++i)
            if (face[n][i].rows != dim(n - 1) || face[n][i].cols != dim(n))
                throw Error("bad_smod", "face shape");
    }
    for (int n = 0; n < cap; ++n) {
        if ((int)degen[n].size() != n + 1) throw Error("bad_smod", "degeneracy count");
        for (int i = 0; i <= n; ++i)
            if (degen[n][i].rows != dim(n + 1) || degen[n][i].cols != dim(n))
                throw Error("bad_smod", "degeneracy shape");
    }
    for (int n = 2; n <= cap; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (!(mat_mul(face[n - 1][i], face[n][j]) == mat_mul(face[n - 1][j - 1], face[n][i])))
                    throw Error("simplicial_identity", "dd at level " + std::to_string(n));
    for (int n = 0; n + 2 <= cap; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (!(mat_mul(degen[n + 1][j + 1], degen[n][i]) == mat_mul(degen[n + 1][i], degen[n][j])))
                    throw Error("simplicial_identity", "ss at level " + std::to_string(n));
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n + 1; ++i)
            for (int j = 0; j <= n; ++j) {
                Mat lhs = mat_mul(face[n + 1][i], degen[n][j]);
                Mat rhs;
                if (i == j || i == j + 1)
                    rhs = Mat::identity(k, dim(n));
                else if (i < j)
                    rhs = mat_mul(degen[n - 1][j - 1], face[n][i]);
                else
                    rhs = mat_mul(degen[n - 1][j], face[n][i - 1]);
                if (!(lhs == rhs)) throw Error("simplicial_identity", "ds at level " + std::to_string(n));
            }
}

Normalization normalize(const SimplicialModule& V) {
    Normalization N;
    N.C.k = V.k;
    N.C.dims.resize(V.cap + 1);
    N.C.d.resize(V.cap + 1);
    N.n_basis.resize(V.cap + 1);
    N.d_basis.resize(V.cap + 1);
    N.proj_n.resize(V.cap + 1);
    for (int n = 0; n <= V.cap; ++n) {
        std::vector<Vec> basis;
        if (V.dim(n) == 0) {
            basis = {};
        } else if (n == 0) {
            for (int j = 0; j < V.dim(0); ++j) {
                Vec e = zero_vec(V.k, V.dim(0));
                e[j] = Scalar::one(V.k);
                basis.push_back(e);
            }
        } else {
            Mat stacked = V.face[n][1];
            for (int i = 2; i <= n; ++i) stacked = vstack(stacked, V.face[n][i]);
            basis = rank_kernel(stacked).kernel;
        }
        N.n_basis[n] = basis;
        N.C.dims[n] = (int)basis.size();
        std::vector<Vec> dgens;
        if (n >= 1)
            for (int i = 0; i <= n - 1; ++i)
                for (int j = 0; j < V.dim(n - 1); ++j) {
                    Vec e = zero_vec(V.k, V.dim(n - 1));
                    e[j] = Scalar::one(V.k);
                    dgens.push_back(mat_vec(V.degen[n - 1][i], e));
                }
        N.d_basis[n] = span_basis(V.k, V.dim(n), dgens);
        if ((int)(N.n_basis[n].size() + N.d_basis[n].size()) != V.dim(n))
            throw Error("internal", "Dold-Kan decomposition dimension mismatch");
        if (V.dim(n) > 0) {
            std::vector<Vec> all(N.n_basis[n]);
            for (const Vec& v : N.d_basis[n]) all.push_back(v);
            Mat B = from_columns(V.k, V.dim(n), all);
            Mat Binv = mat_inverse(B);
            Mat P(V.k, (int)N.n_basis[n].size(), V.dim(n));
            for (int r = 0; r < P.rows; ++r)
                for (int c = 0; c < P.cols; ++c) P.at(r, c) = Binv.at(r, c);
            N.proj_n[n] = std::move(P);
        } else {
            N.proj_n[n] = Mat::zero(V.k, 0, 0);
        }
    }
    N.C.d[0] = Mat::zero(V.k, 0, 0);
    for (int n = 1; n <= V.cap; ++n) {
        Mat D(V.k, N.C.dims[n - 1], N.C.dims[n]);
        for (int j = 0; j < N.C.dims[n]; ++j) {
            Vec img = mat_vec(V.face[n][0], N.n_basis[n][j]);
            Vec coords = mat_vec(N.proj_n[n - 1], img);
            Vec recon = zero_vec(V.k, V.dim(n - 1));
            for (int t = 0; t < (int)coords.size(); ++t)
                recon = add(recon, scale(coords[t], N.n_basis[n - 1][t]));
            if (!vec_eq(recon, img)) throw Error("internal", "d_0 does not preserve N");
            for (int i = 0; i < D.rows; ++i) D.at(i, j) = coords[i];
        }
        N.C.d[n] = std::move(D);
    }
    N.C.validate();
    return N;
}

DenormBasis denormalize_labels(const ChainComplex& C, int n_max) {
    DenormBasis B;
    B.labels.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        for (int m = 0; m <= std::min(n, C.top()); ++m) {
            if (C.dim(m) == 0) continue;
            for (const Monotone& s : all_surjections(n, m))
                for (int j = 0; j < C.dim(m); ++j) B.labels[n].push_back({s, j});
        }
    return B;
}

SimplicialModule denormalize_module(const ChainComplex& C, int n_max) {
    DenormBasis B = denormalize_labels(C, n_max);
    SimplicialModule V;
    V.k = C.k;
    V.cap = n_max;
    V.dims.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) V.dims[n] = (int)B.labels[n].size();
    std::vector<std::map<std::pair<std::vector<int>, int>, int>> index(n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        for (int t = 0; t < V.dims[n]; ++t)
            index[n][{B.labels[n][t].first.f, B.labels[n][t].second}] = t;

    V.face.resize(n_max + 1);
    V.degen.resize(n_max + 1);
    for (int n = 1; n <= n_max; ++n) {
        V.face[n].assign(n + 1, Mat::zero(C.k, V.dims[n - 1], V.dims[n]));
        for (int i = 0; i <= n; ++i) {
            Mat& F = V.face[n][i];
            for (int t = 0; t < V.dims[n]; ++t) {
                const auto& [alpha, j] = B.labels[n][t];
                Monotone c = compose(alpha, Monotone::coface(n, i));
                EpiMono em = epi_mono(c);
                int m = alpha.cod;
                if (em.mono.is_identity()) {
                    F.at(index[n - 1].at({em.epi.f, j}), t) += Scalar::one(C.k);
                } else if (em.mono.dom == m - 1 && m >= 1 && em.mono.f[0] == 1) {
                    // the factorization misses exactly vertex 0: one differential step
                    for (int r = 0; r < C.dim(m - 1); ++r) {
                        const Scalar& coeff = C.d[m].at(r, j);
                        if (!coeff.is_zero()) F.at(index[n - 1].at({em.epi.f, r}), t) += coeff;
                    }
                }
                // other missing faces annihilate the normalized part
            }
        }
    }
    for (int n = 0; n < n_max; ++n) {
        V.degen[n].assign(n + 1, Mat::zero(C.k, V.dims[n + 1], V.dims[n]));
        for (int i = 0; i <= n; ++i)
            for (int t = 0; t < V.dims[n]; ++t) {
                const auto& [alpha, j] = B.labels[n][t];
                Monotone c = compose(alpha, Monotone::codegeneracy(n, i));
                V.degen[n][i].at(index[n + 1].at({c.f, j}), t) = Scalar::one(C.k);
            }
    }
    V.validate();
    return V;
}

std::vector<int> homotopy_groups(const SimplicialModule& V) {
    return normalize(V).C.homology_dims();
}

std::vector<int> homotopy_groups_unnormalized(const SimplicialModule& V) {
    ChainComplex C;
    C.k = V.k;
    C.dims = V.dims;
    C.d.resize(V.cap + 1);
    C.d[0] = Mat::zero(V.k, 0, 0);
    for (int n = 1; n <= V.cap; ++n) {
        Mat D = Mat::zero(V.k, V.dim(n - 1), V.dim(n));
        for (int i = 0; i <= n; ++i) {
            Mat term = V.face[n][i];
            if (i % 2 == 1) term = mat_scale(-Scalar::one(V.k), term);
            D = mat_add(D, term);
        }
        C.d[n] = std::move(D);
    }
    C.validate();
    return C.homology_dims();
}

SimplicialModule constant_module(Field k, int dim, int cap) {
    SimplicialModule V;
    V.k = k;
    V.cap = cap;
    V.dims.assign(cap + 1, dim);
    V.face.resize(cap + 1);
    V.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) V.face[n].assign(n + 1, Mat::identity(k, dim));
    for (int n = 0; n < cap; ++n) V.degen[n].assign(n + 1, Mat::identity(k, dim));
    return V;
}

SimplicialModule free_module_on(const SSet& X, Field k, int cap) {
    SimplicialModule V;
    V.k = k;
    V.cap = cap;
    V.dims.resize(cap + 1);
    std::vector<std::vector<SimplexVal>> levels(cap + 1);
    std::vector<std::map<std::vector<int>, int>> index(cap + 1);
    auto key = [](const SimplexVal& v) {
        std::vector<int> k2 = v.epi.f;
        k2.push_back(v.cell_level);
        k2.push_back(v.cell);
        return k2;
    };
    for (int n = 0; n <= cap; ++n) {
        levels[n] = X.full_level(n);
        V.dims[n] = (int)levels[n].size();
        for (int t = 0; t < V.dims[n]; ++t) index[n][key(levels[n][t])] = t;
    }
    V.face.resize(cap + 1);
    V.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) {
        V.face[n].assign(n + 1, Mat::zero(k, V.dims[n - 1], V.dims[n]));
        for (int i = 0; i <= n; ++i)
            for (int t = 0; t < V.dims[n]; ++t)
                V.face[n][i].at(index[n - 1].at(key(X.face(levels[n][t], i))), t) = Scalar::one(k);
    }
    for (int n = 0; n < cap; ++n) {
        V.degen[n].assign(n + 1, Mat::zero(k, V.dims[n + 1], V.dims[n]));
        for (int i = 0; i <= n; ++i)
            for (int t = 0; t < V.dims[n]; ++t)
                V.degen[n][i].at(index[n + 1].at(key(X.degen(levels[n][t], i))), t) = Scalar::one(k);
    }
    return V;
}

SimplicialModule base_change(const SimplicialModule& V, const std::vector<Mat>& P) {
    SimplicialModule W(V);
    std::vector<Mat> Pinv(P.size());
    for (size_t n = 0; n < P.size(); ++n) Pinv[n] = mat_inverse(P[n]);
    for (int n = 1; n <= V.cap; ++n)
        for (int i = 0; i <= n; ++i) W.face[n][i] = mat_mul(P[n - 1], mat_mul(V.face[n][i], Pinv[n]));
    for (int n = 0; n < V.cap; ++n)
        for (int i = 0; i <= n; ++i) W.degen[n][i] = mat_mul(P[n + 1], mat_mul(V.degen[n][i], Pinv[n]));
    return W;
}

SimplicialModule module_sum(const SimplicialModule& A, const SimplicialModule& B) {
    if (A.cap != B.cap) throw Error("dim_mismatch", "module_sum caps");
    SimplicialModule S;
    S.k = A.k;
    S.cap = A.cap;
    S.dims.resize(A.cap + 1);
    for (int n = 0; n <= A.cap; ++n) S.dims[n] = A.dim(n) + B.dim(n);
    auto block = [&](const Mat& X, const Mat& Y) {
        Mat Z(A.k, X.rows + Y.rows, X.cols + Y.cols);
        for (int i = 0; i < X.rows; ++i)
            for (int j = 0; j < X.cols; ++j) Z.at(i, j) = X.at(i, j);
        for (int i = 0; i < Y.rows; ++i)
            for (int j = 0; j < Y.cols; ++j) Z.at(X.rows + i, X.cols + j) = Y.at(i, j);
        return Z;
    };
    S.face.resize(S.cap + 1);
    S.degen.resize(S.cap + 1);
    for (int n = 1; n <= S.cap; ++n)
        for (int i = 0; i <= n; ++i) S.face[n].push_back(block(A.face[n][i], B.face[n][i]));
    for (int n = 0; n < S.cap; ++n)
        for (int i = 0; i <= n; ++i) S.degen[n].push_back(block(A.degen[n][i], B.degen[n][i]));
    return S;
}

} // namespace sdcw
