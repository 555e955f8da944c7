#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include "riesz/rng.hpp"
#include "riesz/sphere_poly.hpp"
#include "riesz/trig_poly.hpp"

namespace riesz::testing {

// Test-local symbolic convolution over plain maps, kept independent of the
// TrigPoly multiplication path it checks.
inline std::map<long long, Complex> convolve(const std::map<long long, Complex>& a,
                                             const std::map<long long, Complex>& b) {
    std::map<long long, Complex> out;
    for (const auto& [fa, ca] : a)
        for (const auto& [fb, cb] : b) out[fa + fb] += ca * cb;
    return out;
}

inline std::map<long long, Complex> riesz_factor_map(long long j, Complex a) {
    return {{-j, 0.5 * std::conj(a)}, {0, {1.0, 0.0}}, {j, 0.5 * a}};
}

// naive DFT, the oracle for the radix-2 transform
inline std::vector<Complex> naive_dft(const std::vector<Complex>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<Complex> out(n, {0.0, 0.0});
    const double pi = 3.14159265358979323846;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = sign * 2.0 * pi * static_cast<double>(k * m % n) /
                               static_cast<double>(n);
            out[k] += x[m] * Complex{std::cos(ang), std::sin(ang)};
        }
    return out;
}

// random homogeneous polynomial of exact bidegree (p, q)
inline SpherePoly random_homogeneous(int n, int p, int q, std::uint64_t seed) {
    Rng rng(seed);
    SpherePoly out(n);
    for (const auto& alpha : enumerate_multi_indices(n, p))
        for (const auto& beta : enumerate_multi_indices(n, q))
            out.add_term(alpha, beta, {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    return out;
}

// harmonic projection (top component) of a random homogeneous polynomial
inline SpherePoly random_harmonic(int n, int p, int q, std::uint64_t seed) {
    return harmonic_decomposition(random_homogeneous(n, p, q, seed))[0];
}

inline double max_coeff_dev(const TrigPoly& a, const TrigPoly& b) {
    double dev = 0.0;
    for (const auto& [f, c] : a.coeffs) dev = std::max(dev, std::abs(c - b.coeff(f)));
    for (const auto& [f, c] : b.coeffs) dev = std::max(dev, std::abs(c - a.coeff(f)));
    return dev;
}

inline double max_coeff_dev(const SpherePoly& a, const SpherePoly& b) {
    const SpherePoly d = subtract(a, b);
    double dev = 0.0;
    for (const auto& [k, c] : d.terms) dev = std::max(dev, std::abs(c));
    return dev;
}

}  // namespace riesz::testing
