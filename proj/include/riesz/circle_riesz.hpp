#pragma once

#include <cstddef>
#include <vector>

#include "riesz/coeff_spec.hpp"
#include "riesz/trig_poly.hpp"

namespace riesz {

// Lacunary frequencies j_{k+1} >= 3 j_k with coefficients in the open unit
// disk. Under the ratio-3 bound the signed sums sum eps_k j_k over
// eps in {-1,0,1}^kappa are pairwise distinct, which is what makes partial
// products of the factors below have exactly 3^kappa terms and a clean
// Parseval identity.
struct AdmissiblePair {
    std::vector<long long> freqs;
    std::vector<Complex> coeffs;

    AdmissiblePair(std::vector<long long> j, std::vector<Complex> a);

    static AdmissiblePair from_spec(const std::vector<long long>& j, const CoeffSpec& spec);

    std::size_t size() const { return freqs.size(); }
};

// j_k = j1 * base^{k-1}, guarded against 64-bit overflow
std::vector<long long> lacunary_frequencies(long long base, std::size_t count, long long j1 = 1);

// exact coefficient expansion of prod_{k<=kappa} (conj(a_k)/2 z^{-j_k} + 1 + a_k/2 z^{j_k})
inline constexpr std::size_t kCircleTermCap = 5'000'000;
TrigPoly partial_product_circle(const AdmissiblePair& pair, std::size_t kappa);

// Streams the same density through pointwise factor products, never
// expanding coefficients. Grid values stay exact at the nodes for any kappa,
// so quadrature diagnostics keep working far beyond the expansion cap.
class CirclePartialEvaluator {
  public:
    CirclePartialEvaluator(const AdmissiblePair& pair, std::size_t grid_size);

    // advances from the current kappa to `kappa`, multiplying in new factors
    void advance_to(std::size_t kappa);

    std::size_t kappa() const { return kappa_; }
    const std::vector<double>& values() const { return values_; }

  private:
    const AdmissiblePair& pair_;
    std::size_t grid_size_;
    std::size_t kappa_ = 0;
    std::vector<double> values_;
};

struct DichotomyRow {
    std::size_t kappa = 0;
    double l2_norm_sq = 0.0;
    double affinity = 0.0;   // Hellinger affinity against Lebesgue measure
    double l1 = 0.0;         // L1 distance to the constant density 1
};

// One row per kappa in [0, kappa_max]. l2_norm_sq comes from the exact
// expansion while it fits under the term cap and from the lacunary product
// formula prod (1 + |a_k|^2/2) beyond it; the two agree under admissibility.
std::vector<DichotomyRow> dichotomy_curve(const CoeffSpec& spec, const std::vector<long long>& j,
                                          std::size_t kappa_max, std::size_t grid_size);

struct PeyriereRow {
    std::size_t kappa = 0;
    double l2_norm_sq = 0.0;  // of the first product
    double affinity = 0.0;    // between the two partial products
    double l1 = 0.0;
};

// Compares the partial products of (J, a) and (J, b) on a shared grid.
std::vector<PeyriereRow> peyriere_curve(const CoeffSpec& spec_a, const CoeffSpec& spec_b,
                                        const std::vector<long long>& j, std::size_t kappa_max,
                                        std::size_t grid_size);

}  // namespace riesz
