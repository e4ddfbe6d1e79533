#pragma once

#include "sdcw/matrix.hpp"

#include <map>

namespace sdcw {

// Non-negatively graded chain complex: d[n]: C_n -> C_{n-1} for 1 <= n <= top.
struct ChainComplex {
    Field k;
    std::vector<int> dims;  // dims[n] = dim C_n, n = 0..top
    std::vector<Mat> d;     // d[n] defined for n >= 1; d[0] unused placeholder

    int top() const { return (int)dims.size() - 1; }
    int dim(int n) const { return (n >= 0 && n <= top()) ? dims[n] : 0; }
    const Mat& diff(int n) const { return d[n]; }
    void validate() const;
    // homology dims H_n for 0 <= n <= top (top degree uses only incoming boundary
    // from within the stored range).
    std::vector<int> homology_dims() const;

    static ChainComplex concentrated(Field k, int degree, int dim);
};

// Non-negatively graded cochain complex: d[n]: C^n -> C^{n+1} for 0 <= n < top.
struct CochainComplex {
    Field k;
    std::vector<int> dims;
    std::vector<Mat> d; // d[n]: C^n -> C^{n+1}, defined for n = 0..top-1

    int top() const { return (int)dims.size() - 1; }
    int dim(int n) const { return (n >= 0 && n <= top()) ? dims[n] : 0; }
    void validate() const;
    // H^n for 0 <= n <= top; H^top uses only the differentials inside the range,
    // so it is an upper bound truncation artifact; callers restrict to n < top.
    std::vector<int> cohomology_dims() const;
};

// degree -> dimension, sparse
struct CohomologyTable {
    std::map<int, int> dim;
    int at(int j) const {
        auto it = dim.find(j);
        return it == dim.end() ? 0 : it->second;
    }
    bool operator==(const CohomologyTable& o) const {
        // compare ignoring zero entries
        for (const auto& [j, v] : dim)
            if (v != o.at(j)) return false;
        for (const auto& [j, v] : o.dim)
            if (v != at(j)) return false;
        return true;
    }
    std::string str() const;
};

// Mapping fibre of a cochain map f: X -> Y (levelwise matrices):
// R^n = X^n (+) Y^{n-1}, d(x,y) = (d x, f(x) - d y). Its cohomology sits in the
// long exact sequence ... -> H^j(R) -> H^j(X) -> H^j(Y) -> H^{j+1}(R) -> ...
CochainComplex mapping_fibre(const CochainComplex& X, const CochainComplex& Y,
                             const std::vector<Mat>& f);

} // namespace sdcw
