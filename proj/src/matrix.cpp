#include "sdcw/matrix.hpp"

#include <functional>

namespace sdcw {

Vec zero_vec(Field k, int n) { return Vec((size_t)n, Scalar::zero(k)); }

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("dim_mismatch", "vector sizes differ");
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw Error("dim_mismatch", "vector sizes differ");
    Vec r(a);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scale(const Scalar& c, const Vec& a) {
    Vec r(a);
    for (auto& x : r) x = x * c;
    return r;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

bool vec_eq(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

Mat Mat::identity(Field k, int n) {
    Mat m(k, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(k);
    return m;
}

Mat Mat::zero(Field k, int r, int c) { return Mat(k, r, c); }

bool Mat::is_zero() const {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != o.a[i]) return false;
    return true;
}

Mat mat_mul(const Mat& A, const Mat& B) {
    if (A.cols != B.rows) throw Error("dim_mismatch", "mat_mul shapes");
    Mat C(A.k, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int l = 0; l < A.cols; ++l) {
            const Scalar& aij = A.at(i, l);
            if (aij.is_zero()) continue;
            for (int j = 0; j < B.cols; ++j) {
                const Scalar& b = B.at(l, j);
                if (!b.is_zero()) C.at(i, j) += aij * b;
            }
        }
    return C;
}

Vec mat_vec(const Mat& A, const Vec& x) {
    if ((int)x.size() != A.cols) throw Error("dim_mismatch", "mat_vec shapes");
    Vec y = zero_vec(A.k, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) {
            const Scalar& aij = A.at(i, j);
            if (!aij.is_zero() && !x[j].is_zero()) y[i] += aij * x[j];
        }
    return y;
}

Mat mat_add(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error("dim_mismatch", "mat_add shapes");
    Mat C(A);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

Mat mat_sub(const Mat& A, const Mat& B) {
    if (A.rows != B.rows || A.cols != B.cols) throw Error("dim_mismatch", "mat_sub shapes");
    Mat C(A);
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    return C;
}

Mat mat_scale(const Scalar& c, const Mat& A) {
    Mat C(A);
    for (auto& x : C.a) x = x * c;
    return C;
}

Mat transpose(const Mat& A) {
    Mat T(A.k, A.cols, A.rows);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

Mat kron(const Mat& A, const Mat& B) {
    Mat C(A.k, A.rows * B.rows, A.cols * B.cols);
    for (int i1 = 0; i1 < A.rows; ++i1)
        for (int j1 = 0; j1 < A.cols; ++j1) {
            if (A.at(i1, j1).is_zero()) continue;
            for (int i2 = 0; i2 < B.rows; ++i2)
                for (int j2 = 0; j2 < B.cols; ++j2)
                    C.at(i1 * B.rows + i2, j1 * B.cols + j2) = A.at(i1, j1) * B.at(i2, j2);
        }
    return C;
}

Mat hstack(const Mat& A, const Mat& B) {
    if (A.rows != B.rows) throw Error("dim_mismatch", "hstack");
    Mat C(A.k, A.rows, A.cols + B.cols);
    for (int i = 0; i < A.rows; ++i) {
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
        for (int j = 0; j < B.cols; ++j) C.at(i, A.cols + j) = B.at(i, j);
    }
    return C;
}

Mat vstack(const Mat& A, const Mat& B) {
    if (A.cols != B.cols) throw Error("dim_mismatch", "vstack");
    Mat C(A.k, A.rows + B.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
        for (int j = 0; j < A.cols; ++j) C.at(A.rows + i, j) = B.at(i, j);
    return C;
}

Mat from_columns(Field k, int rows, const std::vector<Vec>& cols) {
    Mat C(k, rows, (int)cols.size());
    for (int j = 0; j < (int)cols.size(); ++j) {
        if ((int)cols[j].size() != rows) throw Error("dim_mismatch", "from_columns");
        for (int i = 0; i < rows; ++i) C.at(i, j) = cols[j][i];
    }
    return C;
}

namespace {

// Row echelon reduction in place; returns pivot columns.
std::vector<int> echelon(Mat& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (!m.at(i, c).is_zero()) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(r, j));
        Scalar inv = m.at(r, c).inv();
        for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            Scalar f = m.at(i, c);
            for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace

RankKernel rank_kernel(const Mat& m) {
    Mat e(m);
    std::vector<int> pivots = echelon(e);
    RankKernel out;
    out.rank = (int)pivots.size();
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v = zero_vec(m.k, m.cols);
        v[c] = Scalar::one(m.k);
        for (int r = 0; r < (int)pivots.size(); ++r) v[pivots[r]] = -e.at(r, c);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

AffineSolution solve_affine(const Mat& m, const Vec& b) {
    if ((int)b.size() != m.rows) throw Error("dim_mismatch", "solve_affine rhs");
    Mat aug = hstack(m, from_columns(m.k, m.rows, {b}));
    Mat e(aug);
    std::vector<int> pivots = echelon(e);
    AffineSolution out;
    for (int c : pivots)
        if (c == m.cols) return out; // inconsistent: pivot in the rhs column
    out.solvable = true;
    out.x = zero_vec(m.k, m.cols);
    for (int r = 0; r < (int)pivots.size(); ++r) out.x[pivots[r]] = e.at(r, m.cols);
    out.kernel = rank_kernel(m).kernel;
    return out;
}

std::vector<Vec> image_basis(const Mat& m) {
    Mat t = transpose(m);
    std::vector<Vec> rows;
    rows.reserve(t.rows);
    for (int i = 0; i < t.rows; ++i) {
        Vec v(t.a.begin() + (size_t)i * t.cols, t.a.begin() + (size_t)(i + 1) * t.cols);
        rows.push_back(std::move(v));
    }
    return span_basis(m.k, m.rows, rows);
}

std::vector<Vec> span_basis(Field k, int dim, const std::vector<Vec>& gens) {
    if (gens.empty()) return {};
    Mat m(k, (int)gens.size(), dim);
    for (int i = 0; i < (int)gens.size(); ++i) {
        if ((int)gens[i].size() != dim) throw Error("dim_mismatch", "span_basis");
        for (int j = 0; j < dim; ++j) m.at(i, j) = gens[i][j];
    }
    std::vector<int> pivots = echelon(m);
    std::vector<Vec> out;
    for (int r = 0; r < (int)pivots.size(); ++r) {
        Vec v(m.a.begin() + (size_t)r * m.cols, m.a.begin() + (size_t)(r + 1) * m.cols);
        out.push_back(std::move(v));
    }
    return out;
}

int span_dim(Field k, int dim, const std::vector<Vec>& gens) {
    return (int)span_basis(k, dim, gens).size();
}

std::optional<Vec> coords_in_span(Field k, const std::vector<Vec>& basis, const Vec& v) {
    int dim = (int)v.size();
    Mat m = from_columns(k, dim, basis);
    AffineSolution s = solve_affine(m, v);
    if (!s.solvable) return std::nullopt;
    return s.x;
}

std::vector<Vec> span_intersection(Field k, int dim, const std::vector<Vec>& u, const std::vector<Vec>& w) {
    // Solve a*u = b*w: kernel of [U | -W] gives coefficient pairs.
    if (u.empty() || w.empty()) return {};
    Mat U = from_columns(k, dim, u);
    Mat W = from_columns(k, dim, w);
    Mat neg = mat_scale(-Scalar::one(k), W);
    Mat sys = hstack(U, neg);
    RankKernel rk = rank_kernel(sys);
    std::vector<Vec> gens;
    for (const Vec& c : rk.kernel) {
        Vec coeff(c.begin(), c.begin() + u.size());
        Vec v = zero_vec(k, dim);
        for (size_t j = 0; j < u.size(); ++j) v = add(v, scale(coeff[j], u[j]));
        gens.push_back(std::move(v));
    }
    return span_basis(k, dim, gens);
}

std::vector<Vec> complement_basis(Field k, int dim, const std::vector<Vec>& inside,
                                  const std::vector<Vec>& ambient) {
    std::vector<Vec> cur = span_basis(k, dim, inside);
    size_t base = cur.size();
    std::vector<Vec> out;
    for (const Vec& v : ambient) {
        std::vector<Vec> test(cur);
        test.push_back(v);
        if (span_dim(k, dim, test) > (int)cur.size()) {
            cur.push_back(v);
            out.push_back(v);
        }
    }
    (void)base;
    return out;
}

Mat mat_inverse(const Mat& A) {
    if (A.rows != A.cols) throw Error("dim_mismatch", "inverse of non-square");
    Mat aug = hstack(A, Mat::identity(A.k, A.rows));
    std::vector<int> pivots = echelon(aug);
    if ((int)pivots.size() != A.rows) throw Error("singular", "matrix not invertible");
    Mat inv(A.k, A.rows, A.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int j = 0; j < A.cols; ++j) inv.at(i, j) = aug.at(i, A.cols + j);
    return inv;
}

void enumerate_vectors(Field k, int n, const std::function<bool(const Vec&)>& f) {
    if (!k.is_finite()) throw Error("bad_field", "enumeration needs a finite field");
    Vec v = zero_vec(k, n);
    std::vector<int> digits(n, 0);
    for (;;) {
        if (!f(v)) return;
        int i = 0;
        while (i < n) {
            digits[i]++;
            if (digits[i] < k.p) {
                v[i] = Scalar(k, digits[i]);
                break;
            }
            digits[i] = 0;
            v[i] = Scalar::zero(k);
            ++i;
        }
        if (i == n) return;
    }
}

long long pow_ll(long long base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace sdcw
