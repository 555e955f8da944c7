#pragma once

#include <cstdint>
#include <vector>

namespace riesz {

// exponent vector of z_1..z_n (all entries >= 0)
using MultiIndex = std::vector<int>;

inline long long weight(const MultiIndex& m) {
    long long s = 0;
    for (int e : m) s += e;
    return s;
}

// all multi-indices of length n with total weight w, lexicographic order
std::vector<MultiIndex> enumerate_multi_indices(int n, int w);

// max over the unit sphere of |z^gamma| = prod (gamma_i/|gamma|)^{gamma_i/2}
// with 0^0 = 1; the optimum splits |z_i|^2 proportionally to gamma_i
double monomial_sup(const MultiIndex& gamma);

}  // namespace riesz
