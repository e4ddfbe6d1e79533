#pragma once

#include "sdcw/scalar.hpp"

#include <optional>
#include <vector>

namespace sdcw {

using Vec = std::vector<Scalar>;

Vec zero_vec(Field k, int n);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& c, const Vec& a);
bool is_zero_vec(const Vec& v);
bool vec_eq(const Vec& a, const Vec& b);

// Dense matrix, row-major. Maps act on column vectors: (rows x cols) * cols -> rows.
struct Mat {
    int rows = 0, cols = 0;
    Field k;
    std::vector<Scalar> a;

    Mat() = default;
    Mat(Field k_, int r, int c) : rows(r), cols(c), k(k_), a((size_t)r * c, Scalar::zero(k_)) {}

    Scalar& at(int r, int c) { return a[(size_t)r * cols + c]; }
    const Scalar& at(int r, int c) const { return a[(size_t)r * cols + c]; }

    static Mat identity(Field k, int n);
    static Mat zero(Field k, int r, int c);
    bool is_zero() const;
    bool operator==(const Mat& o) const;
};

Mat mat_mul(const Mat& A, const Mat& B);
Vec mat_vec(const Mat& A, const Vec& x);
Mat mat_add(const Mat& A, const Mat& B);
Mat mat_sub(const Mat& A, const Mat& B);
Mat mat_scale(const Scalar& c, const Mat& A);
Mat transpose(const Mat& A);
// Kronecker product: (A (x) B)(i1*Br+i2, j1*Bc+j2) = A(i1,j1)*B(i2,j2)
Mat kron(const Mat& A, const Mat& B);
Mat hstack(const Mat& A, const Mat& B);
Mat vstack(const Mat& A, const Mat& B);
Mat from_columns(Field k, int rows, const std::vector<Vec>& cols);

struct RankKernel {
    int rank = 0;
    std::vector<Vec> kernel; // basis of the null space, each of length cols
};

// Gaussian elimination over the exact field.
RankKernel rank_kernel(const Mat& m);

struct AffineSolution {
    bool solvable = false;
    Vec x;                   // one solution (if solvable)
    std::vector<Vec> kernel; // kernel basis of m
};

// Solve m x = b exactly; the full solution set is x + span(kernel).
AffineSolution solve_affine(const Mat& m, const Vec& b);

// Basis of the column span.
std::vector<Vec> image_basis(const Mat& m);

// Row-reduce the span of the given vectors to a basis (in echelon form).
std::vector<Vec> span_basis(Field k, int dim, const std::vector<Vec>& gens);

// Dimension of span.
int span_dim(Field k, int dim, const std::vector<Vec>& gens);

// Express v in the span of basis (columns); nullopt if not in span.
std::optional<Vec> coords_in_span(Field k, const std::vector<Vec>& basis, const Vec& v);

// Basis of the intersection of two spans.
std::vector<Vec> span_intersection(Field k, int dim, const std::vector<Vec>& u, const std::vector<Vec>& w);

// A complement basis: vectors extending `inside` to a basis of `ambient` span.
std::vector<Vec> complement_basis(Field k, int dim, const std::vector<Vec>& inside,
                                  const std::vector<Vec>& ambient);

// Inverse of a square invertible matrix; throws if singular.
Mat mat_inverse(const Mat& A);

// Enumerate all vectors of F_p^n in lexicographic order (finite fields only).
// Calls f(v); stops early if f returns false.
void enumerate_vectors(Field k, int n, const std::function<bool(const Vec&)>& f);

long long pow_ll(long long base, int exp); // small helper, overflow-unchecked

} // namespace sdcw
