#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <unordered_map>
#include <utility>
#include <vector>

#include "riesz/multi_index.hpp"
#include "riesz/trig_poly.hpp"

namespace riesz {

// point of C^n
using CVec = std::vector<Complex>;

using Bidegree = std::pair<int, int>;
using BidegreeSpectrum = std::set<Bidegree>;

// Polynomial in z, conj(z) on C^n, stored as a sparse map from the packed
// exponent pair (alpha, beta) to a complex coefficient. Exponents pack into a
// single 64-bit key with 64/(2n) bits per entry, which caps the dimension at
// 8 and the per-variable degree at 2^(64/(2n)) - 1 (65535 for n = 2, 1023
// for n = 3). A density candidate satisfies coeff(beta,alpha) =
// conj(coeff(alpha,beta)).
struct SpherePoly {
    int n = 2;
    std::unordered_map<std::uint64_t, Complex> terms;

    SpherePoly() = default;
    explicit SpherePoly(int dim);

    static SpherePoly constant(int dim, Complex c);
    static SpherePoly coordinate(int dim, int i);       // z_i
    static SpherePoly monomial(int dim, const MultiIndex& alpha, const MultiIndex& beta, Complex c);

    static int exponent_bits(int dim);
    static int max_exponent(int dim);

    std::uint64_t encode(const MultiIndex& alpha, const MultiIndex& beta) const;
    void decode(std::uint64_t key, int* alpha, int* beta) const;  // arrays of length n

    void add_term(const MultiIndex& alpha, const MultiIndex& beta, Complex c);
    void add_key(std::uint64_t key, Complex c);
    Complex coeff(const MultiIndex& alpha, const MultiIndex& beta) const;

    std::size_t term_count() const { return terms.size(); }
    bool is_zero() const { return terms.empty(); }

    long long total_degree() const;          // max |alpha| + |beta|
    bool is_holomorphic() const;             // all beta = 0
    // true when every term has the same (|alpha|, |beta|); the bidegree is
    // written to *bd when non-null
    bool is_homogeneous(Bidegree* bd = nullptr) const;

    double max_coeff_abs() const;
    void prune(double eps);

    SpherePoly conjugate() const;
    SpherePoly scaled(Complex s) const;
};

SpherePoly add(const SpherePoly& f, const SpherePoly& g);
SpherePoly subtract(const SpherePoly& f, const SpherePoly& g);
SpherePoly multiply(const SpherePoly& f, const SpherePoly& g);

// d/dz_i and d/dconj(z_i)
SpherePoly d_dz(const SpherePoly& f, int i);
SpherePoly d_dzbar(const SpherePoly& f, int i);

// Delta(z^a conj(z)^b) = 4 sum_i a_i b_i z^{a-e_i} conj(z)^{b-e_i}
SpherePoly complex_laplacian(const SpherePoly& f);

// int_S z^alpha conj(z)^beta dsigma = 0 for alpha != beta, else
// (n-1)! alpha! / (n-1+|alpha|)!. Exact rational arithmetic takes over from
// log-gamma accumulation above total degree 60; degrees beyond 200 are
// rejected.
double monomial_integral(const MultiIndex& alpha, const MultiIndex& beta, int n);
Complex integrate_sphere(const SpherePoly& f);

// int_S f conj(f) dsigma via difference-class grouping (terms pair up only
// when alpha - beta matches)
double norm_sq_sphere(const SpherePoly& f);

// split by (|alpha|, |beta|); parts sum to f exactly
std::map<Bidegree, SpherePoly> bidegree_components(const SpherePoly& f);

// For homogeneous f of bidegree (p,q) returns h_0..h_m, h_l harmonic of
// bidegree (p-l, q-l), with f = sum_l |z|^{2l} h_l as polynomials on C^n.
// Peels from the top: decompose Delta f recursively and recover h_l from
// Delta(|z|^{2l} h_l) = 4l(p+q-l+n-1) |z|^{2(l-1)} h_l.
std::vector<SpherePoly> harmonic_decomposition(const SpherePoly& f);

inline constexpr double kSpectrumTol = 1e-10;

// bidegrees whose harmonic component has L2(sigma) norm above tol
BidegreeSpectrum spectrum(const SpherePoly& f, double tol = kSpectrumTol);

// lambda -> f(lambda zeta) as a trigonometric polynomial; the bidegree (p,q)
// part of f contributes its value at zeta to frequency p - q
TrigPoly slice_restrict(const SpherePoly& f, const CVec& zeta);

// |int_S f - int_S (int_T f(lambda zeta) dm) dsigma(zeta)|, both sides exact
double slice_integral_residual_exact(const SpherePoly& f);
// Monte Carlo outer integral, exact inner circle integral
double slice_integral_residual_sampled(const SpherePoly& f, std::size_t samples, std::uint64_t seed);

struct SupBounds {
    double lower = 0.0;  // best sampled / ascended |f| value
    double upper = 0.0;  // sum |c| * monomial_sup(alpha+beta)
};

// lower <= sup_S |f| <= upper; the lower bound runs projected gradient
// ascent on |f|^2 from the best sampled starts
SupBounds sup_norm_bounds(const SpherePoly& f, std::size_t samples, int ascent_steps,
                          std::uint64_t seed);

// uniform points w.r.t. sigma (normalized complex Gaussians), deterministic
// per (seed, index)
CVec sample_sphere_point(int n, std::uint64_t seed, std::uint64_t index);
std::vector<CVec> sample_sphere(int n, std::size_t count, std::uint64_t seed);

// dense random test polynomial with every |alpha| + |beta| <= max_total_degree
// monomial present; coefficients uniform in the unit square
SpherePoly random_poly(int n, int max_total_degree, std::uint64_t seed);

// Point evaluation. Switches to per-term log-magnitude arithmetic when the
// coefficients or degrees are large enough that power tables could underflow
// a significant term.
class PolyEvaluator {
  public:
    explicit PolyEvaluator(const SpherePoly& f);
    Complex eval(const CVec& z) const;
    bool logspace() const { return logspace_; }

  private:
    struct Term {
        std::array<std::uint16_t, 8> a{};
        std::array<std::uint16_t, 8> b{};
        Complex c;
        double logmag = 0.0;
        double phase = 0.0;
    };
    int n_ = 2;
    bool logspace_ = false;
    int max_exp_ = 0;
    std::vector<Term> terms_;
};

Complex evaluate(const SpherePoly& f, const CVec& z);

}  // namespace riesz
