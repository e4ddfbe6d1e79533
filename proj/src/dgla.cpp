#include "sdcw/dgla.hpp"

#include "sdcw/denorm.hpp"

#include <functional>

namespace sdcw {

Vec Dgla::d_apply(int degree, const Vec& a) const {
    int t = degree - min_deg;
    if (t < 0 || t >= pieces()) throw Error("bad_index", "d_apply degree");
    if (t + 1 >= pieces()) return zero_vec(k, 0);
    return mat_vec(d[t], a);
}

Vec Dgla::bracket(int deg_a, int deg_b, const Vec& a, const Vec& b) const {
    int s = deg_a - min_deg, t = deg_b - min_deg;
    if (s < 0 || s >= pieces() || t < 0 || t >= pieces()) throw Error("bad_index", "bracket degree");
    int u = deg_a + deg_b - min_deg;
    if (u < 0 || u >= pieces()) return zero_vec(k, 0);
    if (dims[s] == 0 || dims[t] == 0 || dims[u] == 0) return zero_vec(k, dims[u < 0 ? 0 : u]);
    const Mat& B = br[s][t];
    Vec out = zero_vec(k, dims[u]);
    for (int i = 0; i < dims[s]; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dims[t]; ++j) {
            if (b[j].is_zero()) continue;
            Scalar c = a[i] * b[j];
            for (int r = 0; r < dims[u]; ++r) out[r] += c * B.at(r, i * dims[t] + j);
        }
    }
    return out;
}

namespace {
Scalar sign_pow(Field k, int exp) {
    return exp % 2 == 0 ? Scalar::one(k) : -Scalar::one(k);
}
std::string basis_name(const Dgla& L, int deg, int i) {
    int t = deg - L.min_deg;
    if (t < (int)L.names.size() && i < (int)L.names[t].size()) return L.names[t][i];
    return "x(" + std::to_string(deg) + "," + std::to_string(i) + ")";
}
} // namespace

std::vector<AxiomWitness> dgla_axiom_report(const Dgla& L) {
    std::vector<AxiomWitness> out;
    Field k = L.k;
    // shapes
    for (int t = 0; t + 1 < L.pieces(); ++t)
        if (L.d[t].rows != L.dims[t + 1] || L.d[t].cols != L.dims[t]) {
            out.push_back({"shape", "differential at piece " + std::to_string(t)});
            return out;
        }
    // d^2 = 0
    for (int t = 0; t + 2 < L.pieces(); ++t)
        if (!mat_mul(L.d[t + 1], L.d[t]).is_zero())
            out.push_back({"d_squared", "degree " + std::to_string(L.min_deg + t)});
    auto basis = [&](int deg, int i) {
        Vec e = zero_vec(k, L.dim_deg(deg));
        e[i] = Scalar::one(k);
        return e;
    };
    // helper tolerating out-of-range intermediates (those are zero)
    auto safe_bracket = [&](int dA, int dB, const Vec& va, const Vec& vb) -> Vec {
        if (va.empty() || vb.empty()) return Vec();
        if (dA < L.min_deg || dA > L.max_deg() || dB < L.min_deg || dB > L.max_deg()) return Vec();
        return L.bracket(dA, dB, va, vb);
    };
    auto or_zero = [&](Vec v, int target_dim) {
        if ((int)v.size() != target_dim) return zero_vec(k, target_dim);
        return v;
    };
    // antisymmetry
    for (int da = L.min_deg; da <= L.max_deg(); ++da)
        for (int db = L.min_deg; db <= L.max_deg(); ++db) {
            int dim_t = L.dim_deg(da + db);
            if (dim_t == 0) continue;
            for (int i = 0; i < L.dim_deg(da); ++i)
                for (int j = 0; j < L.dim_deg(db); ++j) {
                    Vec lhs = or_zero(safe_bracket(da, db, basis(da, i), basis(db, j)), dim_t);
                    Vec rhs = scale(sign_pow(k, da * db),
                                    or_zero(safe_bracket(db, da, basis(db, j), basis(da, i)), dim_t));
                    if (!is_zero_vec(add(lhs, rhs)))
                        out.push_back({"antisymmetry",
                                       "[" + basis_name(L, da, i) + "," + basis_name(L, db, j) + "]"});
                }
        }
    // graded Jacobi
    for (int da = L.min_deg; da <= L.max_deg(); ++da)
        for (int db = L.min_deg; db <= L.max_deg(); ++db)
            for (int dc = L.min_deg; dc <= L.max_deg(); ++dc) {
                int dim_t = L.dim_deg(da + db + dc);
                if (dim_t == 0) continue;
                for (int i = 0; i < L.dim_deg(da); ++i)
                    for (int j = 0; j < L.dim_deg(db); ++j)
                        for (int l = 0; l < L.dim_deg(dc); ++l) {
                            Vec a = basis(da, i), b = basis(db, j), c = basis(dc, l);
                            Vec s1 = scale(sign_pow(k, dc * da),
                                           or_zero(safe_bracket(da, db + dc, a,
                                                                safe_bracket(db, dc, b, c)),
                                                   dim_t));
                            Vec s2 = scale(sign_pow(k, da * db),
                                           or_zero(safe_bracket(db, dc + da, b,
                                                                safe_bracket(dc, da, c, a)),
                                                   dim_t));
                            Vec s3 = scale(sign_pow(k, db * dc),
                                           or_zero(safe_bracket(dc, da + db, c,
                                                                safe_bracket(da, db, a, b)),
                                                   dim_t));
                            if (!is_zero_vec(add(add(s1, s2), s3)))
                                out.push_back({"jacobi", "(" + basis_name(L, da, i) + "," +
                                                             basis_name(L, db, j) + "," +
                                                             basis_name(L, dc, l) + ")"});
                        }
            }
    // Leibniz
    for (int da = L.min_deg; da <= L.max_deg(); ++da)
        for (int db = L.min_deg; db <= L.max_deg(); ++db) {
            int dim_t = L.dim_deg(da + db + 1);
            if (dim_t == 0) continue;
            for (int i = 0; i < L.dim_deg(da); ++i)
                for (int j = 0; j < L.dim_deg(db); ++j) {
                    Vec a = basis(da, i), b = basis(db, j);
                    Vec lhs = safe_bracket(da, db, a, b);
                    Vec dlhs = lhs.empty() || L.dim_deg(da + db) == 0
                                   ? Vec()
                                   : L.d_apply(da + db, lhs);
                    dlhs = or_zero(dlhs, dim_t);
                    Vec da_a = L.dim_deg(da) > 0 && da < L.max_deg() ? L.d_apply(da, a) : Vec();
                    Vec db_b = L.dim_deg(db) > 0 && db < L.max_deg() ? L.d_apply(db, b) : Vec();
                    Vec r1 = or_zero(safe_bracket(da + 1, db, da_a, b), dim_t);
                    Vec r2 = scale(sign_pow(k, da), or_zero(safe_bracket(da, db + 1, a, db_b), dim_t));
                    if (!vec_eq(dlhs, add(r1, r2)))
                        out.push_back({"leibniz", "d[" + basis_name(L, da, i) + "," +
                                                      basis_name(L, db, j) + "]"});
                }
        }
    return out;
}

Dgla validate_dgla(const Dgla& raw) {
    auto report = dgla_axiom_report(raw);
    if (!report.empty())
        throw Error(report[0].axiom, report[0].witness);
    return raw;
}

int lower_central_vanishing(const Dgla& L, int bound) {
    // Gamma_1 = L; Gamma_{n+1} = [L, Gamma_n]; spans per degree
    std::vector<std::vector<Vec>> cur(L.pieces());
    for (int t = 0; t < L.pieces(); ++t)
        for (int i = 0; i < L.dims[t]; ++i) {
            Vec e = zero_vec(L.k, L.dims[t]);
            e[i] = Scalar::one(L.k);
            cur[t].push_back(e);
        }
    int c = 1;
    auto empty = [&](const std::vector<std::vector<Vec>>& g) {
        for (const auto& v : g)
            if (!v.empty()) return false;
        return true;
    };
    while (!empty(cur)) {
        ++c;
        if (c > bound) throw Error("not_nilpotent", "lower central series does not vanish");
        std::vector<std::vector<Vec>> next(L.pieces());
        for (int s = 0; s < L.pieces(); ++s)
            for (int i = 0; i < L.dims[s]; ++i) {
                Vec e = zero_vec(L.k, L.dims[s]);
                e[i] = Scalar::one(L.k);
                for (int t = 0; t < L.pieces(); ++t)
                    for (const Vec& v : cur[t]) {
                        int ti = s + t + L.min_deg; // target piece index
                        if (ti < 0 || ti >= L.pieces()) continue;
                        Vec w = L.bracket(s + L.min_deg, t + L.min_deg, e, v);
                        if (!w.empty() && !is_zero_vec(w)) next[ti].push_back(w);
                    }
            }
        for (int t = 0; t < L.pieces(); ++t) next[t] = span_basis(L.k, L.dims[t], next[t]);
        cur = next;
    }
    return c;
}

NilpotentDgla certify_nilpotent(const Dgla& L, int bound) {
    return NilpotentDgla{L, lower_central_vanishing(L, bound)};
}

NilpotentDgla nilpotent_tensor(const Dgla& L, const TestRing& A) {
    Field k = L.k;
    int md = A.mdim();
    Dgla T;
    T.k = k;
    T.min_deg = L.min_deg;
    T.dims.resize(L.pieces());
    for (int t = 0; t < L.pieces(); ++t) T.dims[t] = L.dims[t] * md;
    T.d.resize(std::max(0, L.pieces() - 1));
    for (int t = 0; t + 1 < L.pieces(); ++t) T.d[t] = kron(L.d[t], Mat::identity(k, md));
    T.br.assign(L.pieces(), std::vector<Mat>(L.pieces()));
    for (int s = 0; s < L.pieces(); ++s)
        for (int t = 0; t < L.pieces(); ++t) {
            int u = s + t + L.min_deg; // target piece index
            if (u < 0 || u >= L.pieces()) continue;
            Mat B(k, T.dims[u], T.dims[s] * T.dims[t]);
            for (int i = 0; i < L.dims[s]; ++i)
                for (int j = 0; j < L.dims[t]; ++j) {
                    // [x (x) a, y (x) b] = [x,y] (x) ab
                    Vec ei = zero_vec(k, L.dims[s]), ej = zero_vec(k, L.dims[t]);
                    ei[i] = Scalar::one(k);
                    ej[j] = Scalar::one(k);
                    Vec lxy = L.bracket(s + L.min_deg, t + L.min_deg, ei, ej);
                    if (lxy.empty() || is_zero_vec(lxy)) continue;
                    for (int a = 0; a < md; ++a)
                        for (int b = 0; b < md; ++b) {
                            Vec ea = zero_vec(k, md), eb = zero_vec(k, md);
                            ea[a] = Scalar::one(k);
                            eb[b] = Scalar::one(k);
                            Vec mab = A.m_mul(ea, eb);
                            int col = (i * md + a) * T.dims[t] + (j * md + b);
                            for (int r = 0; r < L.dims[u]; ++r)
                                for (int c = 0; c < md; ++c) B.at(r * md + c, col) = lxy[r] * mab[c];
                        }
                }
            T.br[s][t] = std::move(B);
        }
    NilpotentDgla out;
    out.L = T;
    out.nilpotency = std::min(A.nilpotency, lower_central_vanishing(T, A.nilpotency + 2));
    return out;
}

namespace {
// degree-0 bracket helper
Vec br0(const NilpotentDgla& T, const Vec& x, const Vec& y) { return T.L.bracket(0, 0, x, y); }

Scalar coeff(Field k, long long num, long long den) { return Scalar::frac(k, num, den); }
} // namespace

Vec cbh_mul(const NilpotentDgla& T, const Vec& x, const Vec& y) {
    Field k = T.L.k;
    int c = T.nilpotency;
    if (c > 5)
        throw Error("nilpotency_budget", "CBH implemented through bracket depth 4 (nilpotency 5)");
    Vec out = add(x, y);
    if (c >= 3) out = add(out, scale(coeff(k, 1, 2), br0(T, x, y)));
    if (c >= 4) {
        out = add(out, scale(coeff(k, 1, 12), br0(T, x, br0(T, x, y))));
        out = add(out, scale(coeff(k, 1, 12), br0(T, y, br0(T, y, x))));
    }
    if (c >= 5) out = add(out, scale(coeff(k, -1, 24), br0(T, y, br0(T, x, br0(T, x, y)))));
    return out;
}

Vec cbh_inverse(const NilpotentDgla& T, const Vec& x) { return scale(-Scalar::one(T.L.k), x); }

Vec gauge_act(const NilpotentDgla& T, const Vec& g, const Vec& w) {
    Field k = T.L.k;
    int c = T.nilpotency;
    if (T.L.dim_deg(0) == 0 || T.L.dim_deg(1) == 0) return w;
    // exp(ad_g)(w); fractional coefficients only touched for nonzero terms
    Vec out = w;
    Vec term = w;
    long long fact = 1;
    for (int n = 1; n < c; ++n) {
        term = T.L.bracket(0, 1, g, term);
        fact *= n;
        if (is_zero_vec(term)) break;
        out = add(out, scale(coeff(k, 1, fact), term));
    }
    // minus sum_{n>=0} ad_g^n/(n+1)! (dg)
    Vec dg = T.L.d_apply(0, g);
    if (!dg.empty()) {
        Vec t2 = dg;
        long long f2 = 1; // (n+1)! for n = 0
        out = sub(out, t2);
        for (int n = 1; n < c; ++n) {
            t2 = T.L.bracket(0, 1, g, t2);
            f2 = f2 * (n + 1);
            if (is_zero_vec(t2)) break;
            out = sub(out, scale(coeff(k, 1, f2), t2));
        }
    }
    return out;
}

Vec mc_defect(const NilpotentDgla& T, const Vec& w) {
    Field k = T.L.k;
    int d2 = T.L.dim_deg(2);
    Vec out = zero_vec(k, d2);
    Vec dw = T.L.d_apply(1, w);
    if (!dw.empty()) out = add(out, dw);
    if (d2 == 0) return out;
    int d1 = T.L.dim_deg(1);
    if (k.p == 2) {
        // polarized form: sum_{i<j} c_i c_j [e_i, e_j] + sum_i c_i^2 (1/2)[e_i,e_i]
        for (int i = 0; i < d1; ++i) {
            Vec ei = zero_vec(k, d1);
            ei[i] = Scalar::one(k);
            Vec self = T.L.bracket(1, 1, ei, ei);
            if (!is_zero_vec(self))
                throw Error("characteristic_clash",
                            "char 2 MC needs vanishing self-brackets in degree 1");
        }
        for (int i = 0; i < d1; ++i) {
            if (w[i].is_zero()) continue;
            Vec ei = zero_vec(k, d1);
            ei[i] = Scalar::one(k);
            for (int j = i + 1; j < d1; ++j) {
                if (w[j].is_zero()) continue;
                Vec ej = zero_vec(k, d1);
                ej[j] = Scalar::one(k);
                out = add(out, scale(w[i] * w[j], T.L.bracket(1, 1, ei, ej)));
            }
        }
        return out;
    }
    out = add(out, scale(coeff(k, 1, 2), T.L.bracket(1, 1, w, w)));
    return out;
}

bool mc_check(const NilpotentDgla& T, const Vec& w) { return is_zero_vec(mc_defect(T, w)); }

std::vector<Vec> mc_points_exhaustive(const NilpotentDgla& T, long long budget) {
    Field k = T.L.k;
    if (!k.is_finite()) throw Error("bad_field", "exhaustive MC needs a finite field");
    int d1 = T.L.dim_deg(1);
    long long count = pow_ll(k.p, d1);
    if (count > budget) throw Error("budget_exceeded", "MC enumeration too large");
    std::vector<Vec> out;
    enumerate_vectors(k, d1, [&](const Vec& w) {
        if (mc_check(T, w)) out.push_back(w);
        return true;
    });
    return out;
}

std::vector<Vec> mc_points_lifting(const Dgla& L, const TestRing& A, long long budget) {
    Field k = L.k;
    // small-extension chain from A down to k
    RingMorphism res = residue_map(A);
    auto chain = factor_small(res); // A = R_T -> ... -> R_0 = k
    // iterate from k upward
    std::vector<TestRing> rings = {ring_k(k)};
    for (int i = (int)chain.size() - 1; i >= 0; --i) rings.push_back(chain[i].f.src);
    // solutions over k: only zero (m = 0)
    std::vector<Vec> sols = {zero_vec(k, L.dim_deg(1) * 0)};
    for (size_t step = 0; step < chain.size(); ++step) {
        const SmallExtension& ext = chain[chain.size() - 1 - step];
        const TestRing& lower = ext.f.dst;
        const TestRing& upper = ext.f.src;
        NilpotentDgla Tup = nilpotent_tensor(L, upper);
        int d1 = L.dim_deg(1), d2 = L.dim_deg(2);
        // section of m(lower) <- m(upper) and kernel basis in m-coordinates
        Mat fm = ext.f.m_part();
        std::vector<Vec> ker_m;
        for (const Vec& v : ext.kernel) ker_m.push_back(Vec(v.begin() + 1, v.end()));
        // section: solve fm s = e per basis
        Mat section(k, upper.mdim(), lower.mdim());
        for (int j = 0; j < lower.mdim(); ++j) {
            Vec e = zero_vec(k, lower.mdim());
            e[j] = Scalar::one(k);
            auto s = solve_affine(fm, e);
            if (!s.solvable) throw Error("internal", "section of a surjection failed");
            for (int r = 0; r < upper.mdim(); ++r) section.at(r, j) = s.x[r];
        }
        // kernel of d1 (x) id_I: corrections live in L^1 (x) I
        // assemble the linear map c -> d c on L^1 (x) I
        int ik = (int)ker_m.size();
        std::vector<Vec> next;
        for (const Vec& w : sols) {
            // lift: w in L^1 (x) m(lower) coords (d1 * lower.mdim()); apply section
            Vec wlift = zero_vec(k, d1 * upper.mdim());
            for (int i = 0; i < d1; ++i)
                for (int j = 0; j < lower.mdim(); ++j) {
                    if (w.empty() || w[(size_t)i * lower.mdim() + j].is_zero()) continue;
                    for (int r = 0; r < upper.mdim(); ++r)
                        wlift[(size_t)i * upper.mdim() + r] +=
                            w[(size_t)i * lower.mdim() + j] * section.at(r, j);
                }
            Vec defect = mc_defect(Tup, wlift);
            // solve d c = -defect with c in L^1 (x) I
            // columns: basis of L^1 (x) I
            std::vector<Vec> cols;
            for (int i = 0; i < d1; ++i)
                for (const Vec& kv : ker_m) {
                    Vec c = zero_vec(k, d1 * upper.mdim());
                    for (int r = 0; r < upper.mdim(); ++r) c[(size_t)i * upper.mdim() + r] = kv[r];
                    cols.push_back(c);
                }
            Mat M(k, d2 * upper.mdim(), (int)cols.size());
            for (int cidx = 0; cidx < (int)cols.size(); ++cidx) {
                Vec img = Tup.L.d_apply(1, cols[cidx]);
                if (img.empty()) img = zero_vec(k, d2 * upper.mdim());
                for (int r = 0; r < (int)img.size(); ++r) M.at(r, cidx) = img[r];
            }
            auto sol = solve_affine(M, scale(-Scalar::one(k), defect));
            if (!sol.solvable) continue; // obstructed branch
            if (!k.is_finite() && !sol.kernel.empty())
                throw Error("budget_exceeded", "infinite solution family over Q");
            // enumerate kernel
            std::vector<Vec> coeffs;
            if (sol.kernel.empty()) {
                coeffs.push_back(zero_vec(k, 0));
            } else {
                long long total = pow_ll(k.p, (int)sol.kernel.size());
                if (total > budget) throw Error("budget_exceeded", "MC lifting branch too large");
                enumerate_vectors(k, (int)sol.kernel.size(), [&](const Vec& cf) {
                    coeffs.push_back(cf);
                    return true;
                });
            }
            for (const Vec& cf : coeffs) {
                Vec c = sol.x;
                for (size_t t = 0; t < cf.size(); ++t) c = add(c, scale(cf[t], sol.kernel[t]));
                Vec corr = zero_vec(k, d1 * upper.mdim());
                for (int cidx = 0; cidx < (int)cols.size(); ++cidx)
                    corr = add(corr, scale(c[cidx], cols[cidx]));
                Vec cand = add(wlift, corr);
                if (!mc_check(Tup, cand)) throw Error("internal", "lifted point fails MC");
                next.push_back(cand);
            }
            (void)ik;
        }
        sols = std::move(next);
        if ((long long)sols.size() > budget) throw Error("budget_exceeded", "MC solution count");
    }
    return sols;
}

CohomologyTable dgla_cohomology(const Dgla& L) {
    CochainComplex C;
    C.k = L.k;
    C.dims = L.dims;
    C.d = L.d;
    auto h = C.cohomology_dims();
    CohomologyTable t;
    for (int i = 0; i < (int)h.size(); ++i)
        if (h[i] != 0) t.dim[L.min_deg + i] = h[i];
    return t;
}

DglaGroupoid def_groupoid(const Dgla& L, const TestRing& A, long long budget) {
    Field k = L.k;
    if (!k.is_finite()) throw Error("bad_field", "def_groupoid needs a finite field");
    NilpotentDgla T = nilpotent_tensor(L, A);
    DglaGroupoid G;
    G.objects = mc_points_lifting(L, A, budget);
    int d0 = T.L.dim_deg(0);
    long long gsize = pow_ll(k.p, d0);
    if (gsize > budget) throw Error("budget_exceeded", "gauge group too large");
    G.gauge_group_size = gsize;
    // orbit computation
    std::map<std::vector<long long>, int> index;
    auto key = [&](const Vec& v) {
        std::vector<long long> kk;
        for (const auto& s : v) kk.push_back(s.fp_value());
        return kk;
    };
    for (int i = 0; i < (int)G.objects.size(); ++i) index[key(G.objects[i])] = i;
    std::vector<int> parent(G.objects.size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = (int)i;
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    G.stabilizer_size.assign(G.objects.size(), 0);
    enumerate_vectors(k, d0, [&](const Vec& g) {
        for (int i = 0; i < (int)G.objects.size(); ++i) {
            Vec img = gauge_act(T, g, G.objects[i]);
            auto it = index.find(key(img));
            if (it == index.end()) throw Error("internal", "gauge action leaves MC");
            parent[find(i)] = find(it->second);
            if (it->second == i) G.stabilizer_size[i]++;
        }
        return true;
    });
    std::map<int, int> rename;
    G.orbit.resize(G.objects.size());
    for (size_t i = 0; i < G.objects.size(); ++i) {
        int r = find((int)i);
        if (!rename.count(r)) rename[r] = (int)rename.size();
        G.orbit[i] = rename[r];
    }
    G.orbit_count = (int)rename.size();
    return G;
}

// ---------- total complex of L (x) N m(A) ----------

Vec nm_shuffle(const SimplicialTestRing& A, const Normalization& N, int p, int q,
               const Vec& a, const Vec& b) {
    Field k = A.k;
    SimplicialModule m = A.m_module();
    int n = p + q;
    if (n > A.cap) throw Error("bad_index", "shuffle beyond the ring cap");
    // lift to m-levels
    Vec av = zero_vec(k, m.dim(p)), bv = zero_vec(k, m.dim(q));
    for (int t = 0; t < (int)a.size(); ++t) av = add(av, scale(a[t], N.n_basis[p][t]));
    for (int t = 0; t < (int)b.size(); ++t) bv = add(bv, scale(b[t], N.n_basis[q][t]));
    Vec out = zero_vec(k, m.dim(n));
    // sum over (p,q)-shuffles of {0..n-1}
    std::vector<int> subset(p);
    std::function<void(int, int)> rec = [&](int start, int chosen) {
        if (chosen == p) {
            std::vector<int> mu(subset.begin(), subset.end());
            std::vector<int> nu;
            for (int t = 0; t < n; ++t)
                if (std::find(mu.begin(), mu.end(), t) == mu.end()) nu.push_back(t);
            // term: sign(mu,nu) (s_nu a)(s_mu b), smallest degeneracy applied first
            Vec sa = av;
            for (int t = 0; t < (int)nu.size(); ++t) sa = mat_vec(m.degen[p + t][nu[t]], sa);
            Vec sb = bv;
            for (int t = 0; t < (int)mu.size(); ++t) sb = mat_vec(m.degen[q + t][mu[t]], sb);
            Scalar sgn = shuffle_sign(k, mu, nu);
            Vec prod = A.level[n].m_mul(sa, sb);
            out = add(out, scale(sgn, prod));
            return;
        }
        for (int t = start; t <= n - (p - chosen); ++t) {
            subset[chosen] = t;
            rec(t + 1, chosen + 1);
        }
    };
    rec(0, 0);
    // project to N
    Vec pn = mat_vec(N.proj_n[n], out);
    // verify nothing is lost
    Vec recon = zero_vec(k, m.dim(n));
    for (int t = 0; t < (int)pn.size(); ++t) recon = add(recon, scale(pn[t], N.n_basis[n][t]));
    if (!vec_eq(recon, out)) throw Error("internal", "shuffle product not normalized");
    return pn;
}

NilpotentDgla tot_pi_tensor(const Dgla& L, const SimplicialTestRing& A) {
    Field k = L.k;
    SimplicialModule m = A.m_module();
    Normalization N = normalize(m);
    int capN = 0;
    for (int n = 0; n <= A.cap; ++n)
        if (N.C.dim(n) > 0) capN = n;
    // degrees: L-degree i minus chain degree j
    int mind = L.min_deg - capN, maxd = L.max_deg();
    Dgla T;
    T.k = k;
    T.min_deg = mind;
    T.dims.assign(maxd - mind + 1, 0);
    // basis: (i, j, L-index, N-index), degree i - j
    struct Lbl {
        int i, j, li, ni;
    };
    std::vector<std::vector<Lbl>> labels(maxd - mind + 1);
    for (int i = L.min_deg; i <= L.max_deg(); ++i)
        for (int j = 0; j <= capN; ++j) {
            if (L.dim_deg(i) == 0 || N.C.dim(j) == 0) continue;
            int t = i - j - mind;
            for (int li = 0; li < L.dim_deg(i); ++li)
                for (int ni = 0; ni < N.C.dim(j); ++ni) labels[t].push_back({i, j, li, ni});
        }
    for (int t = 0; t < (int)labels.size(); ++t) T.dims[t] = (int)labels[t].size();
    auto index_of = [&](int t, int i, int j, int li, int ni) {
        for (int s = 0; s < (int)labels[t].size(); ++s) {
            const Lbl& l = labels[t][s];
            if (l.i == i && l.j == j && l.li == li && l.ni == ni) return s;
        }
        return -1;
    };
    // differential: d(x (x) a) = d_L x (x) a + (-1)^i x (x) d_N a
    T.d.resize(std::max(0, (int)T.dims.size() - 1));
    for (int t = 0; t + 1 < (int)T.dims.size(); ++t) {
        Mat D(k, T.dims[t + 1], T.dims[t]);
        for (int s = 0; s < T.dims[t]; ++s) {
            const Lbl& l = labels[t][s];
            // d_L part
            if (L.dim_deg(l.i + 1) > 0) {
                Vec e = zero_vec(k, L.dim_deg(l.i));
                e[l.li] = Scalar::one(k);
                Vec img = L.d_apply(l.i, e);
                for (int r = 0; r < (int)img.size(); ++r) {
                    if (img[r].is_zero()) continue;
                    int idx = index_of(t + 1, l.i + 1, l.j, r, l.ni);
                    if (idx >= 0) D.at(idx, s) += img[r];
                }
            }
            // d_N part: lowers chain degree j by one, raises total degree
            if (l.j >= 1 && N.C.dim(l.j - 1) > 0) {
                Vec e = zero_vec(k, N.C.dim(l.j));
                e[l.ni] = Scalar::one(k);
                Vec img = mat_vec(N.C.d[l.j], e);
                Scalar sgn = sign_pow(k, l.i);
                for (int r = 0; r < (int)img.size(); ++r) {
                    if (img[r].is_zero()) continue;
                    int idx = index_of(t + 1, l.i, l.j - 1, l.li, r);
                    if (idx >= 0) D.at(idx, s) += sgn * img[r];
                }
            }
        }
        T.d[t] = std::move(D);
    }
    // bracket: [x (x) a, y (x) b] = (-1)^{j_a * i_y} [x,y] (x) (a shuffle b)
    T.br.assign(T.dims.size(), std::vector<Mat>(T.dims.size()));
    for (int s = 0; s < (int)T.dims.size(); ++s)
        for (int t = 0; t < (int)T.dims.size(); ++t) {
            int ui = s + t + mind; // target piece index
            if (ui < 0 || ui >= (int)T.dims.size()) continue;
            Mat B(k, T.dims[ui], T.dims[s] * T.dims[t]);
            for (int si = 0; si < T.dims[s]; ++si)
                for (int ti = 0; ti < T.dims[t]; ++ti) {
                    const Lbl& la = labels[s][si];
                    const Lbl& lb = labels[t][ti];
                    if (la.i + lb.i > L.max_deg() || la.j + lb.j > capN) continue;
                    if (L.dim_deg(la.i + lb.i) == 0 || N.C.dim(la.j + lb.j) == 0) continue;
                    Vec ex = zero_vec(k, L.dim_deg(la.i));
                    ex[la.li] = Scalar::one(k);
                    Vec ey = zero_vec(k, L.dim_deg(lb.i));
                    ey[lb.li] = Scalar::one(k);
                    Vec lxy = L.bracket(la.i, lb.i, ex, ey);
                    if (lxy.empty() || is_zero_vec(lxy)) continue;
                    Vec ea = zero_vec(k, N.C.dim(la.j));
                    ea[la.ni] = Scalar::one(k);
                    Vec eb = zero_vec(k, N.C.dim(lb.j));
                    eb[lb.ni] = Scalar::one(k);
                    Vec ab = nm_shuffle(A, N, la.j, lb.j, ea, eb);
                    if (is_zero_vec(ab)) continue;
                    Scalar sgn = sign_pow(k, la.j * lb.i);
                    int col = si * T.dims[t] + ti;
                    for (int r = 0; r < (int)lxy.size(); ++r)
                        for (int c = 0; c < (int)ab.size(); ++c) {
                            if (lxy[r].is_zero() || ab[c].is_zero()) continue;
                            int idx = index_of(ui, la.i + lb.i, la.j + lb.j, r, c);
                            if (idx >= 0) B.at(idx, col) += sgn * lxy[r] * ab[c];
                        }
                }
            T.br[s][t] = std::move(B);
        }
    // drop leading/trailing empty degrees for cleanliness is unnecessary; validate
    validate_dgla(T);
    int nil = 2;
    {
        int lower = 2;
        for (const TestRing& lev : A.level) lower = std::max(lower, lev.nilpotency);
        nil = std::min(lower, lower_central_vanishing(T, lower + 2));
    }
    return NilpotentDgla{T, nil};
}

Dgla abelian_dgla(Field k, const std::vector<int>& dims, const std::vector<Mat>& d) {
    Dgla L;
    L.k = k;
    L.min_deg = 0;
    L.dims = dims;
    L.d = d;
    if (L.d.size() + 1 < dims.size()) {
        L.d.resize(dims.size() - 1);
        for (size_t t = 0; t + 1 < dims.size(); ++t)
            if (L.d[t].rows == 0 && L.d[t].cols == 0 && (dims[t + 1] || dims[t]))
                L.d[t] = Mat::zero(k, dims[t + 1], dims[t]);
    }
    L.br.assign(dims.size(), std::vector<Mat>(dims.size()));
    for (size_t s = 0; s < dims.size(); ++s)
        for (size_t t = 0; t < dims.size(); ++t) {
            int u = (int)(s + t);
            if (u < (int)dims.size()) L.br[s][t] = Mat::zero(k, dims[u], dims[s] * dims[t]);
        }
    return validate_dgla(L);
}

Dgla end_dgla(const CochainComplex& V) {
    Field k = V.k;
    int top = V.top();
    // degree t piece: sum_i Hom(V^i, V^{i+t}), t = 0..top
    Dgla L;
    L.k = k;
    L.min_deg = 0;
    struct HLbl {
        int i, r, c;
    }; // map V^i -> V^{i+t}: entry (r, c)
    std::vector<std::vector<HLbl>> labels(top + 1);
    for (int t = 0; t <= top; ++t)
        for (int i = 0; i + t <= top; ++i)
            for (int r = 0; r < V.dim(i + t); ++r)
                for (int c = 0; c < V.dim(i); ++c) labels[t].push_back({i, r, c});
    L.dims.resize(top + 1);
    for (int t = 0; t <= top; ++t) L.dims[t] = (int)labels[t].size();
    auto idx = [&](int t, int i, int r, int c) {
        for (int s = 0; s < (int)labels[t].size(); ++s)
            if (labels[t][s].i == i && labels[t][s].r == r && labels[t][s].c == c) return s;
        return -1;
    };
    // d(f) = d_V . f - (-1)^{|f|} f . d_V
    L.d.resize(top);
    for (int t = 0; t < top; ++t) {
        Mat D(k, L.dims[t + 1], L.dims[t]);
        for (int s = 0; s < L.dims[t]; ++s) {
            const HLbl& l = labels[t][s];
            // d_V . f: component at (i, r', c) with r' via d[i+t]
            if (l.i + t < top)
                for (int r2 = 0; r2 < V.dim(l.i + t + 1); ++r2) {
                    Scalar cterm = V.d[l.i + t].at(r2, l.r);
                    if (cterm.is_zero()) continue;
                    int id = idx(t + 1, l.i, r2, l.c);
                    if (id >= 0) D.at(id, s) += cterm;
                }
            // -(-1)^t f . d_V: map V^{i-1} -> V^{i+t}: label (i-1, l.r, c2)
            if (l.i >= 1)
                for (int c2 = 0; c2 < V.dim(l.i - 1); ++c2) {
                    Scalar cterm = V.d[l.i - 1].at(l.c, c2);
                    if (cterm.is_zero()) continue;
                    int id = idx(t + 1, l.i - 1, l.r, c2);
                    if (id >= 0) D.at(id, s) -= sign_pow(k, t) * cterm;
                }
        }
        L.d[t] = std::move(D);
    }
    // bracket: [f, g] = f g - (-1)^{|f||g|} g f
    L.br.assign(top + 1, std::vector<Mat>(top + 1));
    for (int s = 0; s <= top; ++s)
        for (int t = 0; t <= top; ++t) {
            if (s + t > top) continue;
            Mat B(k, L.dims[s + t], L.dims[s] * L.dims[t]);
            for (int a = 0; a < L.dims[s]; ++a)
                for (int b = 0; b < L.dims[t]; ++b) {
                    const HLbl& lf = labels[s][a];
                    const HLbl& lg = labels[t][b];
                    int col = a * L.dims[t] + b;
                    // f g at source lg.i when lg.i + t == lf.i
                    if (lg.i + t == lf.i && lg.r == lf.c) {
                        int id = idx(s + t, lg.i, lf.r, lg.c);
                        if (id >= 0) B.at(id, col) += Scalar::one(k);
                    }
                    // -(-1)^{st} g f at source lf.i when lf.i + s == lg.i
                    if (lf.i + s == lg.i && lf.r == lg.c) {
                        int id = idx(s + t, lf.i, lg.r, lf.c);
                        if (id >= 0) B.at(id, col) -= sign_pow(k, s * t);
                    }
                }
            L.br[s][t] = std::move(B);
        }
    return validate_dgla(L);
}

} // namespace sdcw
