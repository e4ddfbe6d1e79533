#include "sdcw/chain.hpp"

#include <sstream>

namespace sdcw {

void ChainComplex::validate() const {
    if ((int)d.size() != (int)dims.size())
        throw Error("dim_mismatch", "chain complex differential count");
    for (int n = 1; n <= top(); ++n) {
        if (d[n].rows != dim(n - 1) || d[n].cols != dim(n))
            throw Error("dim_mismatch", "chain differential shape at " + std::to_string(n));
        if (n >= 2 && !mat_mul(d[n - 1], d[n]).is_zero())
            throw Error("not_a_complex", "d d != 0 at degree " + std::to_string(n));
    }
}

std::vector<int> ChainComplex::homology_dims() const {
    std::vector<int> h(top() + 1, 0);
    for (int n = 0; n <= top(); ++n) {
        int cycles;
        if (n == 0 || dim(n) == 0)
            cycles = dim(n);
        else
            cycles = (int)rank_kernel(d[n]).kernel.size();
        int boundaries = 0;
        if (n + 1 <= top() && dim(n + 1) > 0 && dim(n) > 0) boundaries = rank_kernel(d[n + 1]).rank;
        h[n] = cycles - boundaries;
    }
    return h;
}

ChainComplex ChainComplex::concentrated(Field k, int degree, int dimn) {
    ChainComplex c;
    c.k = k;
    c.dims.assign(degree + 1, 0);
    c.dims[degree] = dimn;
    c.d.resize(degree + 1);
    for (int n = 1; n <= degree; ++n) c.d[n] = Mat::zero(k, c.dims[n - 1], c.dims[n]);
    c.d[0] = Mat::zero(k, 0, 0);
    return c;
}

void CochainComplex::validate() const {
    for (int n = 0; n < top(); ++n) {
        if (d[n].rows != dim(n + 1) || d[n].cols != dim(n))
            throw Error("dim_mismatch", "cochain differential shape at " + std::to_string(n));
        if (n + 1 < top() && !mat_mul(d[n + 1], d[n]).is_zero())
            throw Error("not_a_complex", "d d != 0 at degree " + std::to_string(n));
    }
}

std::vector<int> CochainComplex::cohomology_dims() const {
    std::vector<int> h(top() + 1, 0);
    for (int n = 0; n <= top(); ++n) {
        int cycles;
        if (dim(n) == 0) {
            h[n] = 0;
            continue;
        }
        if (n < top())
            cycles = (int)rank_kernel(d[n]).kernel.size();
        else
            cycles = dim(n);
        int boundaries = (n >= 1 && dim(n - 1) > 0) ? rank_kernel(d[n - 1]).rank : 0;
        h[n] = cycles - boundaries;
    }
    return h;
}

std::string CohomologyTable::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [j, v] : dim) {
        if (v == 0) continue;
        if (!first) os << ", ";
        os << "H^" << j << "=" << v;
        first = false;
    }
    os << "}";
    return os.str();
}

CochainComplex mapping_fibre(const CochainComplex& X, const CochainComplex& Y,
                             const std::vector<Mat>& f) {
    CochainComplex R;
    R.k = X.k;
    int top = std::max(X.top(), Y.top() + 1);
    R.dims.resize(top + 1, 0);
    for (int n = 0; n <= top; ++n) R.dims[n] = X.dim(n) + Y.dim(n - 1);
    R.d.resize(top);
    for (int n = 0; n < top; ++n) {
        Mat D(R.k, R.dims[n + 1], R.dims[n]);
        // X-part: d_X, then f into Y-part
        for (int j = 0; j < X.dim(n); ++j) {
            if (n < X.top())
                for (int i = 0; i < X.dim(n + 1); ++i) D.at(i, j) = X.d[n].at(i, j);
            if ((int)f.size() > n && f[n].rows == Y.dim(n))
                for (int i = 0; i < Y.dim(n); ++i) D.at(X.dim(n + 1) + i, j) = f[n].at(i, j);
        }
        // Y-part: -d_Y
        for (int j = 0; j < Y.dim(n - 1); ++j) {
            if (n - 1 >= 0 && n - 1 < Y.top())
                for (int i = 0; i < Y.dim(n); ++i)
                    D.at(X.dim(n + 1) + i, X.dim(n) + j) = -Y.d[n - 1].at(i, j);
        }
        R.d[n] = std::move(D);
    }
    return R;
}

} // namespace sdcw
