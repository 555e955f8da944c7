#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "riesz/fft.hpp"
#include "riesz/rng.hpp"
#include "riesz/trig_poly.hpp"

using namespace riesz;

namespace {
constexpr double kPi = 3.14159265358979323846;

TrigPoly one_plus_cos() {
    TrigPoly p;
    p.add(0, {1.0, 0.0});
    p.add(1, {0.5, 0.0});
    p.add(-1, {0.5, 0.0});
    return p;
}

// Hermitian with sum of off-zero moduli below 1/2, so values stay positive.
TrigPoly random_density(std::uint64_t seed, int max_freq) {
    Rng rng(seed);
    TrigPoly p;
    p.add(0, {1.0, 0.0});
    const double scale = 0.2 / static_cast<double>(max_freq);
    for (int f = 1; f <= max_freq; ++f) {
        const Complex c{rng.uniform(-scale, scale), rng.uniform(-scale, scale)};
        p.add(f, c);
        p.add(-f, std::conj(c));
    }
    return p;
}

}  // namespace

TEST_CASE("constant evaluates to itself on any grid") {
    const auto v = evaluate_circle(TrigPoly::constant({1.0, 0.0}), 17);
    for (double x : v) CHECK(x == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("single factor value at theta = 0") {
    TrigPoly p;
    p.add(-1, {0.25, 0.0});
    p.add(0, {1.0, 0.0});
    p.add(1, {0.25, 0.0});
    const auto v = evaluate_circle(p, 8);
    CHECK(v[0] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("fft synthesis path agrees with a test-local direct sum") {
    // more than 512 coefficients on a power-of-two grid takes the fft path
    const TrigPoly p = random_density(5, 300);
    REQUIRE(p.term_count() > 512);
    const std::size_t grid = 2048;
    const auto got = evaluate_circle(p, grid);
    for (std::size_t m = 0; m < grid; m += 97) {
        const double theta = 2.0 * kPi * static_cast<double>(m) / static_cast<double>(grid);
        Complex want{0.0, 0.0};
        for (const auto& [f, c] : p.coeffs)
            want += c * Complex{std::cos(f * theta), std::sin(f * theta)};
        CHECK(std::abs(got[m] - want.real()) < 1e-9);
    }
}

TEST_CASE("l2 norm is the coefficient sum of squares") {
    CHECK(l2_norm_sq_circle(TrigPoly::constant({1.0, 0.0})) == doctest::Approx(1.0));
    TrigPoly p;
    p.add(-1, {0.25, 0.0});
    p.add(0, {1.0, 0.0});
    p.add(1, {0.25, 0.0});
    CHECK(l2_norm_sq_circle(p) == doctest::Approx(9.0 / 8.0).epsilon(1e-14));
}

TEST_CASE("hermitian symmetry detection") {
    CHECK(one_plus_cos().is_hermitian());
    TrigPoly bad;
    bad.add(1, {0.5, 0.0});
    CHECK_FALSE(bad.is_hermitian());
    CHECK(bad.conjugate().coeff(-1) == Complex{0.5, 0.0});
}

TEST_CASE("affinity of identical densities is 1") {
    const TrigPoly p = random_density(11, 6);
    CHECK(hellinger_affinity(p, p, 1024) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(l1_distance(p, p, 1024) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("affinity(1, 1 + cos) matches the antiderivative of sqrt(2)|cos(theta/2)|") {
    // int sqrt(1 + cos) dm = sqrt(2) * (1/2pi) int |cos(theta/2)| = 2 sqrt(2) / pi
    const double closed_form = 2.0 * std::sqrt(2.0) / kPi;
    const TrigPoly lebesgue = TrigPoly::constant({1.0, 0.0});
    const double a16 = hellinger_affinity(lebesgue, one_plus_cos(), 1 << 16);
    CHECK(a16 == doctest::Approx(closed_form).epsilon(1e-7));
    // quadrature refinement moves toward the closed form
    const double a10 = hellinger_affinity(lebesgue, one_plus_cos(), 1 << 10);
    CHECK(std::abs(a16 - closed_form) <= std::abs(a10 - closed_form) + 1e-12);
}

TEST_CASE("l1 distance between 1 and 1 + cos is the mean of |cos|") {
    // |p - q| = |cos theta| and int |cos| dm = 2/pi
    const double closed_form = 2.0 / kPi;
    const double d = l1_distance(TrigPoly::constant({1.0, 0.0}), one_plus_cos(), 1 << 16);
    CHECK(d == doctest::Approx(closed_form).epsilon(1e-7));
}

TEST_CASE("densities with genuinely negative values are rejected") {
    TrigPoly p;
    p.add(0, {1.0, 0.0});
    p.add(1, {0.8, 0.0});
    p.add(-1, {0.8, 0.0});  // 1 + 1.6 cos dips below -1e-6
    CHECK_THROWS_AS(hellinger_affinity(p, TrigPoly::constant({1.0, 0.0}), 256), std::domain_error);
}

TEST_CASE("rounding noise below zero is clipped") {
    std::vector<double> p{1.0, -1e-13, 2.0};
    std::vector<double> q{1.0, 1.0, 1.0};
    CHECK(hellinger_affinity(p, q) >= 0.0);
}

TEST_CASE("affinity is symmetric and l1 satisfies the triangle inequality") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const TrigPoly a = random_density(3 * seed + 1, 5);
        const TrigPoly b = random_density(3 * seed + 2, 5);
        const TrigPoly c = random_density(3 * seed + 3, 5);
        const std::size_t grid = 512;
        CHECK(hellinger_affinity(a, b, grid) ==
              doctest::Approx(hellinger_affinity(b, a, grid)).epsilon(1e-12));
        const double ab = l1_distance(a, b, grid);
        const double bc = l1_distance(b, c, grid);
        const double ac = l1_distance(a, c, grid);
        CHECK(ac <= ab + bc + 1e-9);
    }
}

TEST_CASE("multiply matches the test-local convolution") {
    const TrigPoly a = random_density(21, 4);
    const TrigPoly b = random_density(22, 3);
    std::map<long long, Complex> ma(a.coeffs.begin(), a.coeffs.end());
    std::map<long long, Complex> mb(b.coeffs.begin(), b.coeffs.end());
    const auto want = riesz::testing::convolve(ma, mb);
    const TrigPoly got = multiply(a, b);
    for (const auto& [f, c] : want) CHECK(std::abs(got.coeff(f) - c) < 1e-12);
    CHECK(got.term_count() == want.size());
}

TEST_CASE("default grid size is a power of two above 4 maxfreq + 4") {
    CHECK(default_grid_size(0) == 4);
    CHECK(default_grid_size(3) == 16);
    CHECK(default_grid_size(100) == 512);
    CHECK(is_pow2(default_grid_size(123456)));
    CHECK(default_grid_size(123456) >= 4 * 123456 + 4);
}
