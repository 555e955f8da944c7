#include "riesz/trig_poly.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "riesz/fft.hpp"

namespace riesz {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
constexpr double kDensityFloor = -1e-6;
}  // namespace

long long TrigPoly::max_abs_freq() const {
    long long m = 0;
    for (const auto& [f, c] : coeffs)
        if (std::llabs(f) > m) m = std::llabs(f);
    return m;
}

bool TrigPoly::is_hermitian(double tol) const {
    for (const auto& [f, c] : coeffs) {
        if (std::abs(c - std::conj(coeff(-f))) > tol) return false;
    }
    return true;
}

TrigPoly TrigPoly::conjugate() const {
    TrigPoly out;
    out.coeffs.reserve(coeffs.size());
    for (const auto& [f, c] : coeffs) out.coeffs.emplace(-f, std::conj(c));
    return out;
}

void TrigPoly::prune(double eps) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
        if (std::abs(it->second) <= eps)
            it = coeffs.erase(it);
        else
            ++it;
    }
}

TrigPoly add(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [f, c] : b.coeffs) out.add(f, c);
    return out;
}

TrigPoly subtract(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out = a;
    for (const auto& [f, c] : b.coeffs) out.add(f, -c);
    return out;
}

TrigPoly multiply(const TrigPoly& a, const TrigPoly& b) {
    TrigPoly out;
    out.coeffs.reserve(a.coeffs.size() * b.coeffs.size());
    for (const auto& [fa, ca] : a.coeffs)
        for (const auto& [fb, cb] : b.coeffs) out.add(fa + fb, ca * cb);
    return out;
}

std::vector<double> evaluate_circle(const TrigPoly& p, std::size_t grid_size, double offset) {
    if (grid_size == 0) throw std::invalid_argument("evaluate_circle: empty grid");
    if (offset != 0.0 && offset != kQuadratureOffset)
        throw std::invalid_argument("evaluate_circle: offset must be 0 or 1/2");

    // e^{i f theta_m} depends on f through (f mod N) plus, on the shifted
    // grid, a phase e^{2 pi i f offset / N} carried by the original f
    if (p.term_count() > 512 && is_pow2(grid_size)) {
        std::vector<Complex> bins(grid_size, Complex{0.0, 0.0});
        const long long n = static_cast<long long>(grid_size);
        for (const auto& [f, c] : p.coeffs) {
            long long r = f % n;
            if (r < 0) r += n;
            Complex v = c;
            if (offset != 0.0) {
                const long long f2 = ((f % (2 * n)) + 2 * n) % (2 * n);
                const double ang = kTwoPi * offset * static_cast<double>(f2) /
                                   static_cast<double>(grid_size);
                v *= Complex{std::cos(ang), std::sin(ang)};
            }
            bins[static_cast<std::size_t>(r)] += v;
        }
        fft_pow2(bins, +1);
        std::vector<double> out(grid_size);
        for (std::size_t m = 0; m < grid_size; ++m) out[m] = bins[m].real();
        return out;
    }

    std::vector<double> out(grid_size, 0.0);
    const long long n = static_cast<long long>(grid_size);
    for (const auto& [f, c] : p.coeffs) {
        // fold the frequency so the cosine argument stays well conditioned
        // for huge lacunary indices
        long long r = f % n;
        if (r < 0) r += n;
        const long long q = (f - r) / n;
        const double w = kTwoPi * static_cast<double>(r) / static_cast<double>(grid_size);
        const double base = kTwoPi * offset * static_cast<double>(q % 2 == 0 ? 0 : 1) +
                            w * offset;
        for (std::size_t m = 0; m < grid_size; ++m) {
            const double ang = w * static_cast<double>(m) + base;
            out[m] += c.real() * std::cos(ang) - c.imag() * std::sin(ang);
        }
    }
    return out;
}

double l2_norm_sq_circle(const TrigPoly& p) {
    double s = 0.0;
    for (const auto& [f, c] : p.coeffs) s += std::norm(c);
    return s;
}

std::size_t default_grid_size(long long max_freq) {
    if (max_freq < 0) max_freq = 0;
    const unsigned long long need = 4ull * static_cast<unsigned long long>(max_freq) + 4ull;
    std::size_t n = 4;
    while (n < need) n <<= 1;
    return n;
}

namespace {

// clips rounding noise, rejects genuinely negative inputs
double clipped(double v) {
    if (v < kDensityFloor)
        throw std::domain_error("density has a grid value below -1e-6, not a nonnegative density");
    return v < 0.0 ? 0.0 : v;
}

}  // namespace

double mean_value(const std::vector<double>& values) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double hellinger_affinity(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("hellinger_affinity: grids must match and be nonempty");
    double s = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) s += std::sqrt(clipped(p[m]) * clipped(q[m]));
    return s / static_cast<double>(p.size());
}

double l1_distance(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("l1_distance: grids must match and be nonempty");
    double s = 0.0;
    for (std::size_t m = 0; m < p.size(); ++m) s += std::abs(clipped(p[m]) - clipped(q[m]));
    return s / static_cast<double>(p.size());
}

double hellinger_affinity(const TrigPoly& p, const TrigPoly& q, std::size_t grid_size) {
    return hellinger_affinity(evaluate_circle(p, grid_size, kQuadratureOffset),
                              evaluate_circle(q, grid_size, kQuadratureOffset));
}

double l1_distance(const TrigPoly& p, const TrigPoly& q, std::size_t grid_size) {
    return l1_distance(evaluate_circle(p, grid_size, kQuadratureOffset),
                       evaluate_circle(q, grid_size, kQuadratureOffset));
}

}  // namespace riesz
