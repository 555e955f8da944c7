#pragma once

#include <complex>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace riesz {

using Complex = std::complex<double>;

// Trigonometric polynomial on the unit circle, stored as a sparse map from
// integer frequency to complex coefficient. A real-valued density candidate
// satisfies coeff(-f) = conj(coeff(f)).
struct TrigPoly {
    std::unordered_map<long long, Complex> coeffs;

    TrigPoly() = default;

    static TrigPoly constant(Complex c) {
        TrigPoly p;
        if (c != Complex{0.0, 0.0}) p.coeffs.emplace(0, c);
        return p;
    }

    Complex coeff(long long f) const {
        auto it = coeffs.find(f);
        return it == coeffs.end() ? Complex{0.0, 0.0} : it->second;
    }

    void add(long long f, Complex c) {
        if (c == Complex{0.0, 0.0}) return;
        auto [it, inserted] = coeffs.emplace(f, c);
        if (!inserted) {
            it->second += c;
            if (it->second == Complex{0.0, 0.0}) coeffs.erase(it);
        }
    }

    std::size_t term_count() const { return coeffs.size(); }
    long long max_abs_freq() const;
    bool is_hermitian(double tol = 1e-12) const;
    TrigPoly conjugate() const;

    // drops coefficients with |c| <= eps
    void prune(double eps = 0.0);
};

TrigPoly add(const TrigPoly& a, const TrigPoly& b);
TrigPoly subtract(const TrigPoly& a, const TrigPoly& b);
TrigPoly multiply(const TrigPoly& a, const TrigPoly& b);

// p(theta) on the uniform grid theta_m = 2 pi (m + offset) / gridSize. Real
// parts are returned; a Hermitian coefficient map gives real values up to
// rounding. Uses FFT synthesis for large supports on power-of-two grids.
//
// offset 0 places a node at theta = 0, which is the global maximum of every
// partial Riesz product; quadrature paths therefore use the midpoint grid
// (offset 1/2), which integrates trig polynomials below the Nyquist bound
// just as exactly while keeping that peak off the nodes.
inline constexpr double kQuadratureOffset = 0.5;
std::vector<double> evaluate_circle(const TrigPoly& p, std::size_t grid_size,
                                    double offset = 0.0);

// sum_f |c_f|^2 = integral of |p|^2 against normalized Lebesgue measure
double l2_norm_sq_circle(const TrigPoly& p);

// smallest power of two >= 4*maxfreq + 4; exact quadrature for products of
// two densities with that frequency bound
std::size_t default_grid_size(long long max_freq);

// Grid-level density diagnostics. Values in [-1e-12, 0) are treated as
// rounding noise and clipped to zero; anything below -1e-6 is rejected as
// not a density.
double mean_value(const std::vector<double>& values);
double hellinger_affinity(const std::vector<double>& p, const std::vector<double>& q);
double l1_distance(const std::vector<double>& p, const std::vector<double>& q);

double hellinger_affinity(const TrigPoly& p, const TrigPoly& q, std::size_t grid_size);
double l1_distance(const TrigPoly& p, const TrigPoly& q, std::size_t grid_size);

}  // namespace riesz
