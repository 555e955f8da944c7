#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "riesz/sphere_poly.hpp"
#include "riesz/unitary.hpp"

namespace riesz {

// One certified sequence member: homogeneous holomorphic, normalized so the
// coefficient-sum certificate gives sup_S |poly| <= 1, exact L2 norm equal to
// delta.
struct RWMember {
    int degree = 0;
    SpherePoly poly;
    double l2_norm = 0.0;    // exact, from diagonal monomial integrals
    double sup_lower = 0.0;  // sampled/ascended, not certified
    double sup_upper = 0.0;  // certified coefficient-sum bound (= 1 after normalization)
    double delta = 0.0;      // l2_norm / certified sup bound of the candidate
};

struct RWSequence {
    int n = 2;
    double delta = 0.0;  // min over members
    std::vector<RWMember> members;
    std::uint64_t seed = 0;

    bool has_degree(int j) const;
    const RWMember& by_degree(int j) const;
    int max_degree() const;
};

// sum over |alpha| = j of eps_alpha sqrt(j!/alpha!) z^alpha with random signs;
// the multinomial weights make the exact L2(sigma) norm equal to 1
SpherePoly random_homogeneous_candidate(int j, int n, std::uint64_t seed);

// Normalizes a homogeneous holomorphic candidate by its certified sup bound.
// The coefficient-sum certificate ignores signs, so achievable delta is a
// function of the coefficient magnitudes alone; sampled sup quality breaks
// ties between draws.
RWMember certify_candidate(const SpherePoly& candidate, std::size_t samples, int ascent_steps,
                           std::uint64_t seed);

// best of `trials` sign draws at degree j; throws when the result misses the floor
RWMember build_rw_member(int j, int n, int trials, std::uint64_t seed, double floor,
                         std::size_t samples = 256, int ascent_steps = 40);

inline constexpr int kRwDegreeCapN2 = 24;
inline constexpr int kRwDegreeCapN3 = 12;
int default_rw_degree_cap(int n);

RWSequence build_rw_sequence(int n, int deg_max, int trials, std::uint64_t seed, double floor = 0.0,
                             std::size_t samples = 256, int ascent_steps = 40);

// members only at the listed degrees, e.g. a lacunary index set
RWSequence build_rw_sequence_for_degrees(int n, const std::vector<int>& degrees, int trials,
                                         std::uint64_t seed, double floor = 0.0,
                                         std::size_t samples = 256, int ascent_steps = 40);

// Index-to-degree maps for experiments whose index count outruns the
// materialized degree range.
enum class DegreeMap { TopConstant, Cycle };
std::vector<int> make_degree_map(const RWSequence& rw, std::size_t count, DegreeMap mode);

struct ScramblingResult {
    // sums[z][K-1] = S_K(zeta_z) = sum_{k<=K} |c_k|^2 |R_{d(k)} circ U_k (zeta_z)|^2
    std::vector<std::vector<double>> sums;
    std::vector<double> median_by_k;  // over zeta samples
};

// The growth experiment: with Haar U_k the expected increment at step k is
// |c_k|^2 delta_{d(k)}^2. Unitaries come from derive_stream(seed, haar, k);
// zeta samples from derive_stream(seed, zeta, i).
ScramblingResult scrambling_experiment(const RWSequence& rw, const std::vector<int>& degrees,
                                       const std::vector<Complex>& coeffs,
                                       const std::vector<UnitaryMatrix>& unitaries,
                                       const std::vector<CVec>& zetas, std::size_t k_max);

std::vector<UnitaryMatrix> haar_sequence(int n, std::size_t count, std::uint64_t seed);

double median(std::vector<double> values);

}  // namespace riesz
