#include "riesz/unitary.hpp"

#include <cmath>
#include <stdexcept>

#include "riesz/rng.hpp"

namespace riesz {

UnitaryMatrix UnitaryMatrix::identity(int n) {
    UnitaryMatrix u;
    u.n = n;
    u.a.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    for (int i = 0; i < n; ++i) u.at(i, i) = {1.0, 0.0};
    return u;
}

UnitaryMatrix UnitaryMatrix::permutation(int n, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != n)
        throw std::invalid_argument("permutation: size mismatch");
    UnitaryMatrix u;
    u.n = n;
    u.a.assign(static_cast<std::size_t>(n) * n, {0.0, 0.0});
    for (int i = 0; i < n; ++i) u.at(i, perm[i]) = {1.0, 0.0};
    return u;
}

double unitarity_defect(const UnitaryMatrix& u) {
    double defect = 0.0;
    for (int r = 0; r < u.n; ++r) {
        for (int c = 0; c < u.n; ++c) {
            Complex s{0.0, 0.0};
            for (int k = 0; k < u.n; ++k) s += std::conj(u.at(k, r)) * u.at(k, c);
            if (r == c) s -= 1.0;
            defect = std::max(defect, std::abs(s));
        }
    }
    return defect;
}

Complex determinant(const UnitaryMatrix& u) {
    // Gaussian elimination with partial pivoting; n stays tiny here
    std::vector<Complex> m = u.a;
    const int n = u.n;
    Complex det{1.0, 0.0};
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[r * n + col]) > std::abs(m[pivot * n + col])) pivot = r;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) std::swap(m[pivot * n + c], m[col * n + c]);
            det = -det;
        }
        const Complex p = m[col * n + col];
        if (p == Complex{0.0, 0.0}) return {0.0, 0.0};
        det *= p;
        for (int r = col + 1; r < n; ++r) {
            const Complex factor = m[r * n + col] / p;
            for (int c = col; c < n; ++c) m[r * n + c] -= factor * m[col * n + c];
        }
    }
    return det;
}

UnitaryMatrix haar_unitary(int n, std::uint64_t seed) {
    if (n < 1 || n > 8) throw std::invalid_argument("haar_unitary: dimension must be in [1, 8]");
    Rng rng = derive_stream(seed, kStreamHaar, 0);

    // columns of an i.i.d. CN(0,1) matrix
    std::vector<std::vector<Complex>> col(n, std::vector<Complex>(n));
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) col[c][r] = rng.complex_gaussian();

    // modified Gram-Schmidt, run twice to push the defect to rounding level
    for (int c = 0; c < n; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) {
                Complex proj{0.0, 0.0};
                for (int r = 0; r < n; ++r) proj += std::conj(col[p][r]) * col[c][r];
                for (int r = 0; r < n; ++r) col[c][r] -= proj * col[p][r];
            }
        }
        double norm = 0.0;
        for (int r = 0; r < n; ++r) norm += std::norm(col[c][r]);
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("haar_unitary: degenerate Gaussian draw");
        for (int r = 0; r < n; ++r) col[c][r] /= norm;
    }

    UnitaryMatrix u;
    u.n = n;
    u.a.resize(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) u.at(r, c) = col[c][r];
    u.unitarity_defect = unitarity_defect(u);
    if (u.unitarity_defect > 1e-10)
        throw std::runtime_error("haar_unitary: unitarity defect above 1e-10");
    return u;
}

CVec apply_unitary(const UnitaryMatrix& u, const CVec& z) {
    if (static_cast<int>(z.size()) != u.n) throw std::invalid_argument("apply: dimension mismatch");
    CVec out(u.n, Complex{0.0, 0.0});
    for (int r = 0; r < u.n; ++r)
        for (int c = 0; c < u.n; ++c) out[r] += u.at(r, c) * z[c];
    return out;
}

SpherePoly compose_unitary(const SpherePoly& f, const UnitaryMatrix& u) {
    if (f.n != u.n) throw std::invalid_argument("compose_unitary: dimension mismatch");
    if (f.total_degree() > kComposeDegreeCap)
        throw std::domain_error("compose_unitary: total degree beyond the substitution cap");

    const int n = f.n;
    // linear forms L_i = (Uz)_i and their conjugates, with memoized powers
    std::vector<SpherePoly> lin, linc;
    lin.reserve(n);
    linc.reserve(n);
    for (int i = 0; i < n; ++i) {
        SpherePoly li(n);
        MultiIndex e(n, 0), zero(n, 0);
        for (int j = 0; j < n; ++j) {
            if (u.at(i, j) == Complex{0.0, 0.0}) continue;
            e[j] = 1;
            li.add_term(e, zero, u.at(i, j));
            e[j] = 0;
        }
        lin.push_back(li);
        linc.push_back(li.conjugate());
    }

    std::vector<std::vector<SpherePoly>> pow_lin(n), pow_linc(n);
    auto power = [&](std::vector<SpherePoly>& cache, const SpherePoly& base,
                     int e) -> const SpherePoly& {
        if (cache.empty()) cache.push_back(SpherePoly::constant(n, {1.0, 0.0}));
        while (static_cast<int>(cache.size()) <= e) cache.push_back(multiply(cache.back(), base));
        return cache[e];
    };

    SpherePoly out(n);
    int a[8], b[8];
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        SpherePoly term = SpherePoly::constant(n, c);
        for (int i = 0; i < n; ++i) {
            if (a[i] > 0) term = multiply(term, power(pow_lin[i], lin[i], a[i]));
            if (b[i] > 0) term = multiply(term, power(pow_linc[i], linc[i], b[i]));
        }
        out = add(out, term);
    }
    return out;
}

}  // namespace riesz
