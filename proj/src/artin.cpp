#include "sdcw/artin.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sdcw {

// ---------- TestRing ----------

Vec TestRing::m_mul(const Vec& a, const Vec& b) const {
    if ((int)a.size() != mdim() || (int)b.size() != mdim()) throw Error("dim_mismatch", "m_mul");
    Vec r = zero_vec(k, mdim());
    for (int i = 0; i < mdim(); ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < mdim(); ++j) {
            if (b[j].is_zero()) continue;
            const Vec& p = mul[i + 1][j + 1];
            Scalar c = a[i] * b[j];
            for (int t = 0; t < mdim(); ++t) r[t] += c * p[t + 1];
        }
    }
    return r;
}

Vec TestRing::ring_mul(const Vec& a, const Vec& b) const {
    if ((int)a.size() != dim || (int)b.size() != dim) throw Error("dim_mismatch", "ring_mul");
    Vec r = zero_vec(k, dim);
    for (int i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            Scalar c = a[i] * b[j];
            for (int t = 0; t < dim; ++t) r[t] += c * mul[i][j][t];
        }
    }
    return r;
}

Vec TestRing::unit() const {
    Vec u = zero_vec(k, dim);
    u[0] = Scalar::one(k);
    return u;
}

TestRing validate_ring(Field k, const std::vector<std::string>& names,
                       const std::vector<std::vector<Vec>>& mul) {
    TestRing A;
    A.k = k;
    A.dim = (int)mul.size();
    A.names = names;
    A.mul = mul;
    if (A.dim < 1) throw Error("bad_ring", "empty basis");
    if ((int)A.names.size() != A.dim) {
        A.names.assign(A.dim, "");
        A.names[0] = "1";
        for (int i = 1; i < A.dim; ++i) A.names[i] = "e" + std::to_string(i);
    }
    for (int i = 0; i < A.dim; ++i) {
        if ((int)mul[i].size() != A.dim) throw Error("bad_ring", "table shape");
        for (int j = 0; j < A.dim; ++j)
            if ((int)mul[i][j].size() != A.dim) throw Error("bad_ring", "table entry size");
    }
    for (int i = 0; i < A.dim; ++i) {
        Vec ei = zero_vec(k, A.dim);
        ei[i] = Scalar::one(k);
        if (!vec_eq(mul[0][i], ei) || !vec_eq(mul[i][0], ei))
            throw Error("non_unital", "basis element 0 is not a unit");
    }
    for (int i = 0; i < A.dim; ++i)
        for (int j = i + 1; j < A.dim; ++j)
            if (!vec_eq(mul[i][j], mul[j][i]))
                throw Error("non_commutative", A.names[i] + "*" + A.names[j]);
    for (int i = 0; i < A.dim; ++i)
        for (int j = 0; j < A.dim; ++j)
            for (int l = 0; l < A.dim; ++l) {
                Vec ei = zero_vec(k, A.dim), ej = zero_vec(k, A.dim), el = zero_vec(k, A.dim);
                ei[i] = ej[j] = el[l] = Scalar::one(k);
                Vec lhs = A.ring_mul(A.ring_mul(ei, ej), el);
                Vec rhs = A.ring_mul(ei, A.ring_mul(ej, el));
                if (!vec_eq(lhs, rhs))
                    throw Error("non_associative",
                                "(" + A.names[i] + A.names[j] + ")" + A.names[l]);
            }
    for (int i = 1; i < A.dim; ++i)
        for (int j = 1; j < A.dim; ++j)
            if (!mul[i][j][0].is_zero()) throw Error("non_local", "m is not an ideal");
    std::vector<Vec> power;
    for (int i = 0; i < A.mdim(); ++i) {
        Vec e = zero_vec(k, A.mdim());
        e[i] = Scalar::one(k);
        power.push_back(e);
    }
    int N = 1;
    while (!power.empty()) {
        ++N;
        if (N > A.dim + 2) throw Error("non_artinian", "maximal ideal is not nilpotent");
        std::vector<Vec> next;
        for (int i = 0; i < A.mdim(); ++i) {
            Vec e = zero_vec(k, A.mdim());
            e[i] = Scalar::one(k);
            for (const Vec& v : power) next.push_back(A.m_mul(e, v));
        }
        power = span_basis(k, A.mdim(), next);
    }
    A.nilpotency = N;
    return A;
}

TestRing ring_k(Field k) {
    std::vector<std::vector<Vec>> mul(1, std::vector<Vec>(1, Vec{Scalar::one(k)}));
    return validate_ring(k, {"1"}, mul);
}

TestRing dual_numbers(Field k) { return truncated_poly(k, 2); }

TestRing truncated_poly(Field k, int order) {
    int d = order;
    std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d, zero_vec(k, d)));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i + j < d) mul[i][j][i + j] = Scalar::one(k);
    std::vector<std::string> names;
    for (int i = 0; i < d; ++i)
        names.push_back(i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)));
    return validate_ring(k, names, mul);
}

TestRing square_zero_pair(Field k) {
    std::vector<std::vector<Vec>> mul(3, std::vector<Vec>(3, zero_vec(k, 3)));
    for (int i = 0; i < 3; ++i) {
        Vec ei = zero_vec(k, 3);
        ei[i] = Scalar::one(k);
        mul[0][i] = ei;
        mul[i][0] = ei;
    }
    return validate_ring(k, {"1", "x", "y"}, mul);
}

// ---------- morphisms ----------

void RingMorphism::validate() const {
    if (map.rows != dst.dim || map.cols != src.dim) throw Error("dim_mismatch", "morphism shape");
    if (!vec_eq(mat_vec(map, src.unit()), dst.unit()))
        throw Error("bad_morphism", "unit not preserved");
    for (int i = 0; i < src.dim; ++i)
        for (int j = 0; j < src.dim; ++j) {
            Vec ei = zero_vec(src.k, src.dim), ej = zero_vec(src.k, src.dim);
            ei[i] = ej[j] = Scalar::one(src.k);
            Vec lhs = mat_vec(map, src.ring_mul(ei, ej));
            Vec rhs = dst.ring_mul(mat_vec(map, ei), mat_vec(map, ej));
            if (!vec_eq(lhs, rhs)) throw Error("bad_morphism", "not multiplicative");
        }
    for (int j = 1; j < src.dim; ++j)
        if (!map.at(0, j).is_zero()) throw Error("bad_morphism", "m not mapped into m");
}

Mat RingMorphism::m_part() const {
    Mat m(src.k, dst.mdim(), src.mdim());
    for (int i = 0; i < dst.mdim(); ++i)
        for (int j = 0; j < src.mdim(); ++j) m.at(i, j) = map.at(i + 1, j + 1);
    return m;
}

bool RingMorphism::surjective() const { return rank_kernel(map).rank == dst.dim; }

RingMorphism ring_identity(const TestRing& A) {
    return RingMorphism{A, A, Mat::identity(A.k, A.dim)};
}

RingMorphism residue_map(const TestRing& A) {
    Mat m(A.k, 1, A.dim);
    m.at(0, 0) = Scalar::one(A.k);
    return RingMorphism{A, ring_k(A.k), m};
}

RingMorphism compose_ring(const RingMorphism& g, const RingMorphism& f) {
    return RingMorphism{f.src, g.dst, mat_mul(g.map, f.map)};
}

void SmallExtension::validate() const {
    f.validate();
    if (!f.surjective()) throw Error("not_surjective", "small extension map");
    auto rk = rank_kernel(f.map);
    if (rk.kernel.size() != kernel.size()) throw Error("bad_extension", "kernel dimension");
    for (const Vec& v : kernel) {
        if (!is_zero_vec(mat_vec(f.map, v))) throw Error("bad_extension", "kernel vector not in kernel");
        if (!v[0].is_zero()) throw Error("bad_extension", "kernel not inside m");
        for (int i = 1; i < f.src.dim; ++i) {
            Vec ei = zero_vec(f.src.k, f.src.dim);
            ei[i] = Scalar::one(f.src.k);
            if (!is_zero_vec(f.src.ring_mul(ei, v))) throw Error("bad_extension", "m I != 0");
        }
    }
}

// ---------- fiber products ----------

FiberProduct fiber_product(const RingMorphism& f, const RingMorphism& g) {
    if (!(f.dst == g.dst)) throw Error("dim_mismatch", "fiber product targets differ");
    if (!f.surjective() && !g.surjective())
        throw Error("bad_morphism", "fiber product needs one surjection");
    Field k = f.src.k;
    const TestRing &A = f.src, &B = g.src;
    Mat sys = hstack(f.map, mat_scale(-Scalar::one(k), g.map));
    auto rk = rank_kernel(sys);
    Vec unit = zero_vec(k, A.dim + B.dim);
    unit[0] = Scalar::one(k);
    unit[A.dim] = Scalar::one(k);
    std::vector<Vec> mzero;
    for (const Vec& v : rk.kernel) {
        Vec w = sub(v, scale(v[0], unit));
        if (!w[A.dim].is_zero()) throw Error("internal", "fiber product residue mismatch");
        if (!is_zero_vec(w)) mzero.push_back(w);
    }
    mzero = span_basis(k, A.dim + B.dim, mzero);
    std::vector<Vec> basis = {unit};
    for (auto& v : mzero) basis.push_back(v);
    if (basis.size() != rk.kernel.size()) throw Error("internal", "fiber product basis adaptation");
    int d = (int)basis.size();
    auto mul_pair = [&](const Vec& u, const Vec& v) {
        Vec ua(u.begin(), u.begin() + A.dim), ub(u.begin() + A.dim, u.end());
        Vec va(v.begin(), v.begin() + A.dim), vb(v.begin() + A.dim, v.end());
        Vec pa = A.ring_mul(ua, va), pb = B.ring_mul(ub, vb);
        Vec out(pa);
        out.insert(out.end(), pb.begin(), pb.end());
        return out;
    };
    std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            auto coords = coords_in_span(k, basis, mul_pair(basis[i], basis[j]));
            if (!coords) throw Error("internal", "fiber product not multiplicatively closed");
            mul[i][j] = *coords;
        }
    FiberProduct out;
    out.ring = validate_ring(k, {}, mul);
    Mat pa(k, A.dim, d), pb(k, B.dim, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < A.dim; ++i) pa.at(i, j) = basis[j][i];
        for (int i = 0; i < B.dim; ++i) pb.at(i, j) = basis[j][A.dim + i];
    }
    out.to_a = RingMorphism{out.ring, A, pa};
    out.to_b = RingMorphism{out.ring, B, pb};
    out.to_a.validate();
    out.to_b.validate();
    return out;
}

// ---------- quotients and small-extension factorization ----------

namespace {
struct QuotientRing {
    TestRing ring;
    RingMorphism proj;
    std::vector<Vec> section;
};

QuotientRing quotient_ring(const TestRing& A, const std::vector<Vec>& J) {
    Field k = A.k;
    std::vector<Vec> jb = span_basis(k, A.dim, J);
    for (const Vec& v : jb)
        if (!v[0].is_zero()) throw Error("bad_ideal", "ideal not inside m");
    for (const Vec& v : jb)
        for (int i = 0; i < A.dim; ++i) {
            Vec ei = zero_vec(k, A.dim);
            ei[i] = Scalar::one(k);
            if (!coords_in_span(k, jb, A.ring_mul(ei, v))) throw Error("bad_ideal", "not an ideal");
        }
    Vec unit = A.unit();
    std::vector<Vec> inside(jb);
    inside.push_back(unit);
    std::vector<Vec> ambient;
    for (int i = 1; i < A.dim; ++i) {
        Vec e = zero_vec(k, A.dim);
        e[i] = Scalar::one(k);
        ambient.push_back(e);
    }
    std::vector<Vec> comp = complement_basis(k, A.dim, inside, ambient);
    std::vector<Vec> section = {unit};
    for (auto& v : comp) section.push_back(v);
    int d = (int)section.size();
    std::vector<Vec> full(section);
    for (const Vec& v : jb) full.push_back(v);
    Mat Bm = from_columns(k, A.dim, full);
    Mat Binv = mat_inverse(Bm);
    Mat proj(k, d, A.dim);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < A.dim; ++c) proj.at(r, c) = Binv.at(r, c);
    std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) mul[i][j] = mat_vec(proj, A.ring_mul(section[i], section[j]));
    QuotientRing out;
    out.ring = validate_ring(k, {}, mul);
    out.proj = RingMorphism{A, out.ring, proj};
    out.proj.validate();
    out.section = section;
    return out;
}
} // namespace

std::vector<SmallExtension> factor_small(const RingMorphism& f) {
    if (!f.surjective()) throw Error("not_surjective", "factor_small input");
    Field k = f.src.k;
    const TestRing& A = f.src;
    auto I = rank_kernel(f.map).kernel;
    if (I.empty()) return {};
    std::vector<std::vector<Vec>> filt = {span_basis(k, A.dim, I)};
    while (!filt.back().empty()) {
        std::vector<Vec> next;
        for (const Vec& v : filt.back())
            for (int i = 1; i < A.dim; ++i) {
                Vec ei = zero_vec(k, A.dim);
                ei[i] = Scalar::one(k);
                next.push_back(A.ring_mul(ei, v));
            }
        filt.push_back(span_basis(k, A.dim, next));
    }
    int T = (int)filt.size() - 1;
    std::vector<QuotientRing> R(T + 1);
    for (int j = 1; j < T; ++j) R[j] = quotient_ring(A, filt[j]);
    R[T].ring = A;
    R[T].proj = ring_identity(A);
    R[T].section.clear();
    for (int c = 0; c < A.dim; ++c) {
        Vec e = zero_vec(k, A.dim);
        e[c] = Scalar::one(k);
        R[T].section.push_back(e);
    }
    std::vector<SmallExtension> out;
    for (int j = T - 1; j >= 0; --j) {
        const QuotientRing& hi = R[j + 1];
        const TestRing& target = (j == 0) ? f.dst : R[j].ring;
        const Mat& targproj = (j == 0) ? f.map : R[j].proj.map;
        Mat step(k, target.dim, hi.ring.dim);
        for (int c = 0; c < hi.ring.dim; ++c) {
            Vec img = mat_vec(targproj, hi.section[c]);
            for (int r = 0; r < target.dim; ++r) step.at(r, c) = img[r];
        }
        SmallExtension e;
        e.f = RingMorphism{hi.ring, target, step};
        e.f.validate();
        e.kernel = rank_kernel(step).kernel;
        e.validate();
        out.push_back(std::move(e));
    }
    return out;
}

// ---------- enumeration ----------

std::vector<SmallExtension> enumerate_small_extensions(const TestRing& B) {
    Field k = B.k;
    if (!k.is_finite()) throw Error("bad_field", "enumeration needs a finite field");
    int d = B.dim;
    std::vector<std::pair<int, int>> slots;
    for (int i = 1; i < d; ++i)
        for (int j = i; j < d; ++j) slots.push_back({i, j});
    int nvar = (int)slots.size();
    auto slot_of = [&](int i, int j) {
        if (i > j) std::swap(i, j);
        for (int t = 0; t < nvar; ++t)
            if (slots[t] == std::make_pair(i, j)) return t;
        return -1;
    };
    auto psi_bilinear = [&](const Vec& psi, const Vec& a, const Vec& b) {
        Scalar s = Scalar::zero(k);
        for (int i = 1; i < d; ++i)
            for (int j = 1; j < d; ++j)
                if (!a[i].is_zero() && !b[j].is_zero()) s += a[i] * b[j] * psi[slot_of(i, j)];
        return s;
    };
    // associativity = symmetric Hochschild cocycle condition
    std::vector<Vec> rows;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int l = 0; l < d; ++l) {
                Vec row = zero_vec(k, nvar);
                Vec ei = zero_vec(k, d), ej = zero_vec(k, d), el = zero_vec(k, d);
                ei[i] = ej[j] = el[l] = Scalar::one(k);
                auto addbil = [&](const Vec& a, const Vec& b, Scalar c) {
                    if (c.is_zero()) return;
                    for (int s = 1; s < d; ++s)
                        for (int t = 1; t < d; ++t)
                            if (!a[s].is_zero() && !b[t].is_zero()) row[slot_of(s, t)] += c * a[s] * b[t];
                };
                addbil(B.ring_mul(ei, ej), el, Scalar::one(k));
                addbil(ei, ej, el[0]);
                addbil(ei, B.ring_mul(ej, el), -Scalar::one(k));
                addbil(ej, el, -ei[0]);
                rows.push_back(row);
            }
    Mat sys(k, (int)rows.size(), nvar);
    for (int r = 0; r < (int)rows.size(); ++r)
        for (int c = 0; c < nvar; ++c) sys.at(r, c) = rows[r][c];
    auto Z = nvar == 0 ? std::vector<Vec>{} : rank_kernel(sys).kernel;
    std::vector<Vec> cob;
    for (int t = 1; t < d; ++t) {
        Vec cb = zero_vec(k, nvar);
        for (int s = 0; s < nvar; ++s) {
            auto [i, j] = slots[s];
            Vec ei = zero_vec(k, d), ej = zero_vec(k, d);
            ei[i] = ej[j] = Scalar::one(k);
            cb[s] = B.ring_mul(ei, ej)[t];
        }
        cob.push_back(cb);
    }
    cob = span_basis(k, nvar, cob);
    std::vector<Vec> reps_basis = complement_basis(k, nvar, cob, Z);
    std::vector<Vec> classes;
    classes.push_back(zero_vec(k, nvar));
    int r = (int)reps_basis.size();
    if (r > 0)
        enumerate_vectors(k, r, [&](const Vec& coeff) {
            if (is_zero_vec(coeff)) return true;
            bool canonical = false;
            for (int t = 0; t < r; ++t) {
                if (coeff[t].is_zero()) continue;
                canonical = coeff[t].is_one();
                break;
            }
            if (!canonical) return true;
            Vec psi = zero_vec(k, nvar);
            for (int t = 0; t < r; ++t) psi = add(psi, scale(coeff[t], reps_basis[t]));
            classes.push_back(psi);
            return true;
        });
    std::vector<SmallExtension> out;
    for (const Vec& psi : classes) {
        int ad = d + 1;
        std::vector<std::vector<Vec>> mul(ad, std::vector<Vec>(ad, zero_vec(k, ad)));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec ei = zero_vec(k, d), ej = zero_vec(k, d);
                ei[i] = ej[j] = Scalar::one(k);
                Vec p = B.ring_mul(ei, ej);
                for (int t = 0; t < d; ++t) mul[i][j][t] = p[t];
                if (nvar > 0) mul[i][j][d] = psi_bilinear(psi, ei, ej);
            }
        for (int i = 0; i < d; ++i) {
            mul[i][d] = zero_vec(k, ad);
            mul[d][i] = zero_vec(k, ad);
            if (i == 0) {
                mul[i][d][d] = Scalar::one(k);
                mul[d][i][d] = Scalar::one(k);
            }
        }
        mul[d][d] = zero_vec(k, ad);
        std::vector<std::string> names(B.names);
        names.push_back("x");
        TestRing A = validate_ring(k, names, mul);
        Mat proj(k, d, ad);
        for (int i = 0; i < d; ++i) proj.at(i, i) = Scalar::one(k);
        SmallExtension e;
        e.f = RingMorphism{A, B, proj};
        e.f.validate();
        Vec xv = zero_vec(k, ad);
        xv[d] = Scalar::one(k);
        e.kernel = {xv};
        e.validate();
        out.push_back(std::move(e));
    }
    return out;
}

std::string ring_fingerprint(const TestRing& A) {
    std::string s = "d" + std::to_string(A.dim) + "p" + std::to_string(A.k.p) + ":";
    for (const auto& row : A.mul)
        for (const auto& entry : row)
            for (const auto& x : entry) s += x.str() + ",";
    return s;
}

bool rings_isomorphic(const TestRing& A, const TestRing& B) {
    if (A.dim != B.dim || A.k != B.k || A.nilpotency != B.nilpotency) return false;
    int md = A.mdim();
    if (md == 0) return true;
    Field k = A.k;
    bool found = false;
    enumerate_vectors(k, md * md, [&](const Vec& entries) {
        Mat P(k, md, md);
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < md; ++j) P.at(i, j) = entries[i * md + j];
        if (rank_kernel(P).rank != md) return true;
        for (int i = 0; i < md; ++i)
            for (int j = 0; j < md; ++j) {
                Vec ei = zero_vec(k, md), ej = zero_vec(k, md);
                ei[i] = Scalar::one(k);
                ej[j] = Scalar::one(k);
                if (!vec_eq(mat_vec(P, A.m_mul(ei, ej)), B.m_mul(mat_vec(P, ei), mat_vec(P, ej))))
                    return true;
            }
        found = true;
        return false;
    });
    return found;
}

std::vector<TestRing> enumerate_test_rings(Field k, int dim) {
    if (!k.is_finite()) throw Error("bad_field", "enumeration needs a finite field");
    if (dim == 1) return {ring_k(k)};
    int md = dim - 1;
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < md; ++i)
        for (int j = i; j < md; ++j) slots.push_back({i, j});
    int nvar = (int)slots.size() * md;
    std::vector<TestRing> out;
    enumerate_vectors(k, nvar, [&](const Vec& entries) {
        std::vector<std::vector<Vec>> mul(dim, std::vector<Vec>(dim, zero_vec(k, dim)));
        for (int i = 0; i < dim; ++i) {
            Vec ei = zero_vec(k, dim);
            ei[i] = Scalar::one(k);
            mul[0][i] = ei;
            mul[i][0] = ei;
        }
        for (int s = 0; s < (int)slots.size(); ++s) {
            auto [i, j] = slots[s];
            for (int t = 0; t < md; ++t) {
                mul[i + 1][j + 1][t + 1] = entries[s * md + t];
                mul[j + 1][i + 1][t + 1] = entries[s * md + t];
            }
        }
        try {
            TestRing A = validate_ring(k, {}, mul);
            for (const TestRing& B : out)
                if (rings_isomorphic(A, B)) return true;
            out.push_back(A);
        } catch (const Error&) {
        }
        return true;
    });
    return out;
}

// ---------- simplicial test rings ----------

SimplicialModule SimplicialTestRing::underlying_module() const {
    SimplicialModule V;
    V.k = k;
    V.cap = cap;
    V.dims.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) V.dims[n] = level[n].dim;
    V.face = face;
    V.degen = degen;
    return V;
}

SimplicialModule SimplicialTestRing::m_module() const {
    SimplicialModule V;
    V.k = k;
    V.cap = cap;
    V.dims.resize(cap + 1);
    for (int n = 0; n <= cap; ++n) V.dims[n] = level[n].mdim();
    V.face.resize(cap + 1);
    V.degen.resize(cap + 1);
    auto mpart = [&](const Mat& full) {
        Mat m(k, full.rows - 1, full.cols - 1);
        for (int i = 1; i < full.rows; ++i)
            for (int j = 1; j < full.cols; ++j) m.at(i - 1, j - 1) = full.at(i, j);
        return m;
    };
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) V.face[n].push_back(mpart(face[n][i]));
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) V.degen[n].push_back(mpart(degen[n][i]));
    return V;
}

int SimplicialTestRing::cotangent_top() const {
    SimplicialModule mm = m_module();
    std::vector<std::vector<Vec>> m2(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        std::vector<Vec> gens;
        int md = level[n].mdim();
        for (int i = 0; i < md; ++i)
            for (int j = i; j < md; ++j) {
                Vec ei = zero_vec(k, md), ej = zero_vec(k, md);
                ei[i] = Scalar::one(k);
                ej[j] = Scalar::one(k);
                gens.push_back(level[n].m_mul(ei, ej));
            }
        m2[n] = span_basis(k, md, gens);
    }
    SimplicialModule cot;
    cot.k = k;
    cot.cap = cap;
    cot.dims.resize(cap + 1);
    std::vector<std::vector<Vec>> comp(cap + 1);
    std::vector<Mat> proj(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        int md = level[n].mdim();
        std::vector<Vec> ambient;
        for (int i = 0; i < md; ++i) {
            Vec e = zero_vec(k, md);
            e[i] = Scalar::one(k);
            ambient.push_back(e);
        }
        comp[n] = complement_basis(k, md, m2[n], ambient);
        cot.dims[n] = (int)comp[n].size();
        std::vector<Vec> full(comp[n]);
        for (auto& v : m2[n]) full.push_back(v);
        if (md > 0 && !full.empty()) {
            Mat Bm = from_columns(k, md, full);
            Mat Binv = mat_inverse(Bm);
            proj[n] = Mat(k, cot.dims[n], md);
            for (int r = 0; r < cot.dims[n]; ++r)
                for (int c = 0; c < md; ++c) proj[n].at(r, c) = Binv.at(r, c);
        } else {
            proj[n] = Mat::zero(k, cot.dims[n], md);
        }
    }
    cot.face.resize(cap + 1);
    cot.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) {
            Mat F(k, cot.dims[n - 1], cot.dims[n]);
            for (int c = 0; c < cot.dims[n]; ++c) {
                Vec img = mat_vec(proj[n - 1], mat_vec(mm.face[n][i], comp[n][c]));
                for (int r = 0; r < F.rows; ++r) F.at(r, c) = img[r];
            }
            cot.face[n].push_back(F);
        }
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) {
            Mat S(k, cot.dims[n + 1], cot.dims[n]);
            for (int c = 0; c < cot.dims[n]; ++c) {
                Vec img = mat_vec(proj[n + 1], mat_vec(mm.degen[n][i], comp[n][c]));
                for (int r = 0; r < S.rows; ++r) S.at(r, c) = img[r];
            }
            cot.degen[n].push_back(S);
        }
    cot.validate();
    auto N = normalize(cot);
    int top = -1;
    for (int n = 0; n <= cap; ++n)
        if (N.C.dim(n) > 0) top = n;
    return top;
}

void SimplicialTestRing::validate() const {
    for (const TestRing& A : level) validate_ring(k, A.names, A.mul);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) RingMorphism{level[n], level[n - 1], face[n][i]}.validate();
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) RingMorphism{level[n], level[n + 1], degen[n][i]}.validate();
    underlying_module().validate();
    if (cotangent_top() >= cap)
        throw Error("not_artinian_simplicial",
                    "cotangent normalization does not vanish below the cap");
}

SimplicialTestRing constant_simplicial_ring(const TestRing& A, int cap) {
    SimplicialTestRing S;
    S.k = A.k;
    S.cap = cap;
    S.level.assign(cap + 1, A);
    S.face.resize(cap + 1);
    S.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n) S.face[n].assign(n + 1, Mat::identity(A.k, A.dim));
    for (int n = 0; n < cap; ++n) S.degen[n].assign(n + 1, Mat::identity(A.k, A.dim));
    return S;
}

SimplicialTestRing square_zero_module(const SimplicialModule& V) {
    SimplicialTestRing S;
    S.k = V.k;
    S.cap = V.cap;
    S.level.resize(V.cap + 1);
    for (int n = 0; n <= V.cap; ++n) {
        int d = V.dim(n) + 1;
        std::vector<std::vector<Vec>> mul(d, std::vector<Vec>(d, zero_vec(V.k, d)));
        for (int i = 0; i < d; ++i) {
            Vec ei = zero_vec(V.k, d);
            ei[i] = Scalar::one(V.k);
            mul[0][i] = ei;
            mul[i][0] = ei;
        }
        S.level[n] = validate_ring(V.k, {}, mul);
    }
    auto extend1 = [&](const Mat& m) {
        Mat f(V.k, m.rows + 1, m.cols + 1);
        f.at(0, 0) = Scalar::one(V.k);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) f.at(i + 1, j + 1) = m.at(i, j);
        return f;
    };
    S.face.resize(V.cap + 1);
    S.degen.resize(V.cap + 1);
    for (int n = 1; n <= V.cap; ++n)
        for (int i = 0; i <= n; ++i) S.face[n].push_back(extend1(V.face[n][i]));
    for (int n = 0; n < V.cap; ++n)
        for (int i = 0; i <= n; ++i) S.degen[n].push_back(extend1(V.degen[n][i]));
    return S;
}

SimplicialTestRing square_zero(const ChainComplex& C, int cap) {
    return square_zero_module(denormalize_module(C, cap));
}

namespace {
// apply the degeneracy word of an epi to a vector living at level epi.cod
Vec apply_degeneracy_word(const SimplicialModule& U, const Monotone& epi, Vec v) {
    std::vector<int> sig;
    Monotone a = epi;
    while (a.dom > a.cod) {
        int i = 0;
        while (a.f[i] != a.f[i + 1]) ++i;
        sig.push_back(i);
        Monotone b;
        b.dom = a.dom - 1;
        b.cod = a.cod;
        for (int t = 0; t <= a.dom; ++t)
            if (t != i) b.f.push_back(a.f[t]);
        a = b;
    }
    int lev = epi.cod;
    for (int idx = (int)sig.size() - 1; idx >= 0; --idx) {
        v = mat_vec(U.degen[lev][sig[idx]], v);
        ++lev;
    }
    return v;
}
} // namespace

SimplicialTestRing extend_simplicial_ring(const SimplicialTestRing& S, int new_cap) {
    if (new_cap <= S.cap) return S;
    SimplicialModule U = S.underlying_module();
    Normalization N = normalize(U);
    int dstar = -1;
    for (int n = 0; n <= S.cap; ++n)
        if (N.C.dim(n) > 0) dstar = n;
    if (dstar >= S.cap)
        throw Error("not_artinian_simplicial", "normalization does not vanish below the cap");
    SimplicialModule V = denormalize_module(N.C, new_cap);
    DenormBasis B = denormalize_labels(N.C, new_cap);
    // conv[n]: old ring coords <- denorm coords on the stored range
    std::vector<Mat> oldP(S.cap + 1);
    for (int n = 0; n <= S.cap; ++n) {
        Mat Pn(S.k, U.dim(n), V.dim(n));
        for (int t = 0; t < V.dim(n); ++t) {
            const auto& [alpha, j] = B.labels[n][t];
            Vec cur = apply_degeneracy_word(U, alpha, N.n_basis[alpha.cod][j]);
            for (int r = 0; r < U.dim(n); ++r) Pn.at(r, t) = cur[r];
        }
        oldP[n] = Pn;
    }
    // unit in denorm coordinates, levelwise
    std::vector<Vec> unit(new_cap + 1);
    {
        auto s0 = solve_affine(oldP[0], S.level[0].unit());
        if (!s0.solvable) throw Error("internal", "unit not found in denormalization");
        unit[0] = s0.x;
        for (int n = 0; n < new_cap; ++n) unit[n + 1] = mat_vec(V.degen[n][0], unit[n]);
    }
    // denorm-coordinate multiplication tables
    std::vector<std::vector<std::vector<Vec>>> mul(new_cap + 1);
    std::vector<Mat> oldPi(S.cap + 1);
    for (int n = 0; n <= S.cap; ++n) oldPi[n] = mat_inverse(oldP[n]);
    for (int n = 0; n <= new_cap; ++n) {
        int d = V.dim(n);
        mul[n].assign(d, std::vector<Vec>(d, zero_vec(S.k, d)));
        if (n <= S.cap) {
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Vec ei = zero_vec(S.k, d), ej = zero_vec(S.k, d);
                    ei[i] = Scalar::one(S.k);
                    ej[j] = Scalar::one(S.k);
                    Vec a = mat_vec(oldP[n], ei), b = mat_vec(oldP[n], ej);
                    mul[n][i][j] = mat_vec(oldPi[n], S.level[n].ring_mul(a, b));
                }
        } else {
            Mat stacked = V.face[n][1];
            for (int i = 2; i <= n; ++i) stacked = vstack(stacked, V.face[n][i]);
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    Vec rhs;
                    for (int fi = 1; fi <= n; ++fi) {
                        Vec ei = zero_vec(S.k, d), ej = zero_vec(S.k, d);
                        ei[i] = Scalar::one(S.k);
                        ej[j] = Scalar::one(S.k);
                        Vec fa = mat_vec(V.face[n][fi], ei);
                        Vec fb = mat_vec(V.face[n][fi], ej);
                        Vec prod = zero_vec(S.k, V.dim(n - 1));
                        for (int s = 0; s < V.dim(n - 1); ++s) {
                            if (fa[s].is_zero()) continue;
                            for (int t = 0; t < V.dim(n - 1); ++t)
                                if (!fb[t].is_zero())
                                    prod = add(prod, scale(fa[s] * fb[t], mul[n - 1][s][t]));
                        }
                        rhs.insert(rhs.end(), prod.begin(), prod.end());
                    }
                    auto sol = solve_affine(stacked, rhs);
                    if (!sol.solvable || !sol.kernel.empty())
                        throw Error("internal", "ring extension product not determined");
                    mul[n][i][j] = sol.x;
                }
        }
    }
    // residue functional in denorm coords, levelwise (pull back along d_1 chains)
    std::vector<Vec> rho(new_cap + 1);
    {
        // level 0: residue of old coords composed with oldP[0]
        rho[0] = zero_vec(S.k, V.dim(0));
        for (int t = 0; t < V.dim(0); ++t) rho[0][t] = oldP[0].at(0, t);
        for (int n = 1; n <= new_cap; ++n) {
            rho[n] = zero_vec(S.k, V.dim(n));
            for (int t = 0; t < V.dim(n); ++t) {
                Vec img = mat_vec(V.face[n][1], [&] {
                    Vec e = zero_vec(S.k, V.dim(n));
                    e[t] = Scalar::one(S.k);
                    return e;
                }());
                Scalar s = Scalar::zero(S.k);
                for (int r = 0; r < V.dim(n - 1); ++r) s += rho[n - 1][r] * img[r];
                rho[n][t] = s;
            }
        }
    }
    SimplicialTestRing out;
    out.k = S.k;
    out.cap = new_cap;
    out.level.resize(new_cap + 1);
    out.face.resize(new_cap + 1);
    out.degen.resize(new_cap + 1);
    // ring bases: unit then kernel of the residue, per level
    std::vector<Mat> conv(new_cap + 1); // denorm coords <- ring coords
    for (int n = 0; n <= new_cap; ++n) {
        int d = V.dim(n);
        Mat rrow(S.k, 1, d);
        for (int t = 0; t < d; ++t) rrow.at(0, t) = rho[n][t];
        auto mker = rank_kernel(rrow).kernel;
        std::vector<Vec> basis = {unit[n]};
        for (auto& v : mker) basis.push_back(v);
        if ((int)basis.size() != d) throw Error("internal", "ring extension basis adaptation");
        conv[n] = from_columns(S.k, d, basis);
        Mat ci = mat_inverse(conv[n]);
        std::vector<std::vector<Vec>> m2(d, std::vector<Vec>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec prod = zero_vec(S.k, d);
                for (int s = 0; s < d; ++s) {
                    if (basis[i][s].is_zero()) continue;
                    for (int t = 0; t < d; ++t)
                        if (!basis[j][t].is_zero())
                            prod = add(prod, scale(basis[i][s] * basis[j][t], mul[n][s][t]));
                }
                m2[i][j] = mat_vec(ci, prod);
            }
        out.level[n] = validate_ring(S.k, {}, m2);
    }
    for (int n = 1; n <= new_cap; ++n)
        for (int i = 0; i <= n; ++i)
            out.face[n].push_back(
                mat_mul(mat_inverse(conv[n - 1]), mat_mul(V.face[n][i], conv[n])));
    for (int n = 0; n < new_cap; ++n)
        for (int i = 0; i <= n; ++i)
            out.degen[n].push_back(
                mat_mul(mat_inverse(conv[n + 1]), mat_mul(V.degen[n][i], conv[n])));
    out.validate();
    return out;
}

// ---------- power rings ----------

namespace {
struct ChainLayout {
    std::vector<int> offset;
    int total = 0;
};

ChainLayout layout_for(const SSet& K, const ChainComplex& NC, int dstar) {
    ChainLayout L;
    L.offset.resize(dstar + 1, 0);
    int off = 0;
    for (int d = 0; d <= dstar; ++d) {
        L.offset[d] = off;
        off += K.nd_count(d) * NC.dim(d);
    }
    L.total = off;
    return L;
}
} // namespace

PowerRing power_point_ring(const SimplicialTestRing& A, const SSet& K) {
    Field k = A.k;
    if (K.nd_count(0) == 0)
        throw Error("empty_sset", "power ring over a simplicial set with no vertices");
    SimplicialModule U = A.underlying_module();
    Normalization N = normalize(U);
    int dstar = 0;
    for (int n = 0; n <= A.cap; ++n)
        if (N.C.dim(n) > 0) dstar = n;
    if (dstar >= A.cap && A.cap > 0)
        throw Error("not_artinian_simplicial",
                    "power ring needs the normalization to vanish below the cap");
    ChainLayout L = layout_for(K, N.C, dstar);
    auto var = [&](int d, int cell, int t) { return L.offset[d] + cell * N.C.dim(d) + t; };
    std::vector<Vec> rows;
    for (int d = 1; d <= dstar + 1; ++d) {
        int target_dim = N.C.dim(d - 1);
        if (target_dim == 0 || K.nd_count(d) == 0) continue;
        for (int x = 0; x < K.nd_count(d); ++x)
            for (int r = 0; r < target_dim; ++r) {
                Vec row = zero_vec(k, L.total);
                if (d <= dstar)
                    for (int t = 0; t < N.C.dim(d); ++t) row[var(d, x, t)] += N.C.d[d].at(r, t);
                for (int i = 0; i <= d; ++i) {
                    const SimplexVal& f = K.faces[d][x][i];
                    if (!f.nondegenerate() || f.cell_level != d - 1) continue;
                    Scalar sgn = (i % 2 == 0) ? Scalar::one(k) : -Scalar::one(k);
                    row[var(d - 1, f.cell, r)] -= sgn;
                }
                rows.push_back(row);
            }
    }
    auto residue_row = [&](int v) {
        Vec row = zero_vec(k, L.total);
        for (int t = 0; t < N.C.dim(0); ++t) row[var(0, v, t)] = N.n_basis[0][t][0];
        return row;
    };
    for (int v = 1; v < K.nd_count(0); ++v) rows.push_back(sub(residue_row(v), residue_row(0)));
    std::vector<Vec> solbasis;
    if (rows.empty()) {
        for (int i = 0; i < L.total; ++i) {
            Vec e = zero_vec(k, L.total);
            e[i] = Scalar::one(k);
            solbasis.push_back(e);
        }
    } else {
        Mat sys(k, (int)rows.size(), L.total);
        for (int r = 0; r < (int)rows.size(); ++r)
            for (int c = 0; c < L.total; ++c) sys.at(r, c) = rows[r][c];
        solbasis = rank_kernel(sys).kernel;
    }
    // adapted basis: unit first, then the residue-zero part
    Vec unit_chain = zero_vec(k, L.total);
    {
        Vec u0 = mat_vec(N.proj_n[0], A.level[0].unit());
        for (int v = 0; v < K.nd_count(0); ++v)
            for (int t = 0; t < N.C.dim(0); ++t) unit_chain[var(0, v, t)] = u0[t];
    }
    Vec r0 = residue_row(0);
    std::vector<Vec> zero_res;
    for (const Vec& v : solbasis) {
        Scalar rv = Scalar::zero(k);
        for (int i = 0; i < L.total; ++i)
            if (!r0[i].is_zero()) rv += r0[i] * v[i];
        if (rv.is_zero())
            zero_res.push_back(v);
        else
            zero_res.push_back(sub(scale(rv.inv(), v), unit_chain));
    }
    zero_res = span_basis(k, L.total, zero_res);
    std::vector<Vec> basis = {unit_chain};
    for (const Vec& v : zero_res) basis.push_back(v);
    if (basis.size() != solbasis.size()) throw Error("internal", "power ring basis adaptation failed");
    int dim = (int)basis.size();
    int dval = std::min(dstar, K.cap);
    std::vector<std::map<std::pair<int, int>, Vec>> values(dim);
    for (int b = 0; b < dim; ++b) {
        for (int d = 0; d <= dval; ++d)
            for (int x = 0; x < K.nd_count(d); ++x) {
                Vec val;
                if (d == 0) {
                    val = zero_vec(k, U.dim(0));
                    for (int t = 0; t < N.C.dim(0); ++t)
                        val = add(val, scale(basis[b][var(0, x, t)], N.n_basis[0][t]));
                } else {
                    Vec npart = zero_vec(k, U.dim(d));
                    for (int t = 0; t < N.C.dim(d); ++t)
                        npart = add(npart, scale(basis[b][var(d, x, t)], N.n_basis[d][t]));
                    const std::vector<Vec>& dbasis = N.d_basis[d];
                    Mat cols(k, U.dim(d - 1) * d, (int)dbasis.size());
                    Vec rhs;
                    for (int i = 1; i <= d; ++i) {
                        const SimplexVal& f = K.faces[d][x][i];
                        Vec fv = apply_degeneracy_word(U, f.epi, values[b].at({f.cell_level, f.cell}));
                        Vec want = sub(fv, mat_vec(U.face[d][i], npart));
                        rhs.insert(rhs.end(), want.begin(), want.end());
                        for (int c = 0; c < (int)dbasis.size(); ++c) {
                            Vec img = mat_vec(U.face[d][i], dbasis[c]);
                            for (int r = 0; r < U.dim(d - 1); ++r)
                                cols.at((i - 1) * U.dim(d - 1) + r, c) = img[r];
                        }
                    }
                    auto s = solve_affine(cols, rhs);
                    if (!s.solvable || !s.kernel.empty())
                        throw Error("internal", "power ring value reconstruction failed");
                    val = npart;
                    for (int c = 0; c < (int)dbasis.size(); ++c)
                        val = add(val, scale(s.x[c], dbasis[c]));
                }
                values[b][{d, x}] = val;
            }
    }
    std::vector<std::vector<Vec>> mul(dim, std::vector<Vec>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Vec pc = zero_vec(k, L.total);
            for (int d = 0; d <= dval; ++d)
                for (int x = 0; x < K.nd_count(d); ++x) {
                    Vec p = A.level[d].ring_mul(values[i].at({d, x}), values[j].at({d, x}));
                    Vec pn = mat_vec(N.proj_n[d], p);
                    for (int t = 0; t < N.C.dim(d); ++t) pc[var(d, x, t)] = pn[t];
                }
            auto coords = coords_in_span(k, basis, pc);
            if (!coords) throw Error("internal", "power ring product not in span");
            mul[i][j] = *coords;
        }
    PowerRing out;
    out.ring = validate_ring(k, {}, mul);
    out.cell_values = values;
    return out;
}

Mat power_push(const SimplicialTestRing& A, const PowerRing& PK2, const PowerRing& PK,
               const SMap& phi) {
    Field k = A.k;
    SimplicialModule U = A.underlying_module();
    Normalization N = normalize(U);
    int dstar = 0;
    for (int n = 0; n <= A.cap; ++n)
        if (N.C.dim(n) > 0) dstar = n;
    const SSet& K = *phi.X;
    ChainLayout L = layout_for(K, N.C, dstar);
    int dval = std::min(dstar, K.cap);
    auto chain_of = [&](const std::map<std::pair<int, int>, Vec>& vals) {
        Vec c = zero_vec(k, L.total);
        for (int d = 0; d <= dval; ++d)
            for (int x = 0; x < K.nd_count(d); ++x) {
                Vec pn = mat_vec(N.proj_n[d], vals.at({d, x}));
                for (int t = 0; t < N.C.dim(d); ++t) c[L.offset[d] + x * N.C.dim(d) + t] = pn[t];
            }
        return c;
    };
    std::vector<Vec> kbasis;
    for (const auto& vals : PK.cell_values) kbasis.push_back(chain_of(vals));
    int dim2 = (int)PK2.cell_values.size();
    Mat out(k, (int)PK.cell_values.size(), dim2);
    for (int b = 0; b < dim2; ++b) {
        Vec c = zero_vec(k, L.total);
        for (int d = 0; d <= dval; ++d)
            for (int x = 0; x < K.nd_count(d); ++x) {
                SimplexVal img = phi.img[d][x];
                Vec fv = apply_degeneracy_word(U, img.epi,
                                               PK2.cell_values[b].at({img.cell_level, img.cell}));
                Vec pn = mat_vec(N.proj_n[d], fv);
                for (int t = 0; t < N.C.dim(d); ++t) c[L.offset[d] + x * N.C.dim(d) + t] = pn[t];
            }
        auto coords = coords_in_span(k, kbasis, c);
        if (!coords) throw Error("internal", "power push image not in span");
        for (int r = 0; r < out.rows; ++r) out.at(r, b) = (*coords)[r];
    }
    return out;
}

SimplicialPowerRing power_ring(const SimplicialTestRing& A, const SSet& K, int cap) {
    SimplicialPowerRing out;
    std::vector<SSet> simplices;
    std::vector<ProductSSet> prods;
    simplices.reserve(cap + 2);
    for (int i = 0; i <= cap; ++i) simplices.push_back(sset_simplex(i, A.cap));
    prods.reserve(cap + 1);
    for (int i = 0; i <= cap; ++i) prods.push_back(sset_product(K, simplices[i], A.cap));
    for (int i = 0; i <= cap; ++i) out.levels.push_back(power_point_ring(A, prods[i].Z));
    out.ring.k = A.k;
    out.ring.cap = cap;
    for (int i = 0; i <= cap; ++i) out.ring.level.push_back(out.levels[i].ring);
    out.ring.face.resize(cap + 1);
    out.ring.degen.resize(cap + 1);
    for (int n = 1; n <= cap; ++n)
        for (int i = 0; i <= n; ++i) {
            SMap m = prods[n].map_from(
                prods[n - 1], smap_identity(K),
                simplex_map(simplices[n - 1], simplices[n], Monotone::coface(n, i)));
            out.ring.face[n].push_back(power_push(A, out.levels[n], out.levels[n - 1], m));
        }
    for (int n = 0; n < cap; ++n)
        for (int i = 0; i <= n; ++i) {
            SMap m = prods[n].map_from(
                prods[n + 1], smap_identity(K),
                simplex_map(simplices[n + 1], simplices[n], Monotone::codegeneracy(n, i)));
            out.ring.degen[n].push_back(power_push(A, out.levels[n], out.levels[n + 1], m));
        }
    return out;
}

} // namespace sdcw
