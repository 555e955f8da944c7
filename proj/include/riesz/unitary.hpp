#pragma once

#include <cstdint>
#include <vector>

#include "riesz/sphere_poly.hpp"

namespace riesz {

// n x n complex matrix with a certified unitarity defect
struct UnitaryMatrix {
    int n = 0;
    std::vector<Complex> a;  // row-major
    double unitarity_defect = 0.0;

    Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
    const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }

    static UnitaryMatrix identity(int n);
    static UnitaryMatrix permutation(int n, const std::vector<int>& perm);
};

// max |(U*U - I)_{rc}|
double unitarity_defect(const UnitaryMatrix& u);

Complex determinant(const UnitaryMatrix& u);

// Haar-distributed: Gram-Schmidt orthonormalization of an i.i.d. complex
// Gaussian matrix; the implicit triangular factor has a positive diagonal,
// which pins the distribution to Haar measure.
UnitaryMatrix haar_unitary(int n, std::uint64_t seed);

CVec apply_unitary(const UnitaryMatrix& u, const CVec& z);

inline constexpr long long kComposeDegreeCap = 64;

// z -> f(Uz) by exact multinomial substitution
SpherePoly compose_unitary(const SpherePoly& f, const UnitaryMatrix& u);

}  // namespace riesz
