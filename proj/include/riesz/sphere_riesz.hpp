#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/circle_riesz.hpp"
#include "riesz/coeff_spec.hpp"
#include "riesz/rw_sequence.hpp"
#include "riesz/sphere_poly.hpp"
#include "riesz/unitary.hpp"

namespace riesz {

// (R, J, a) plus optional scrambling unitaries. `degrees[k]` names the
// materialized sequence member backing factor k. A strict triple has
// degrees[k] == J[k], which is what every exact sphere-side operation
// requires; slice-level experiments may reuse bounded degrees against
// lacunary circle frequencies when J outruns what polynomials of degree j_k
// could ever materialize.
struct RieszTriple {
    RWSequence rw;
    std::vector<long long> freqs;  // lacunary J
    std::vector<int> degrees;
    std::vector<Complex> coeffs;
    std::vector<UnitaryMatrix> unitaries;  // empty means identity

    std::size_t size() const { return freqs.size(); }
    bool strict() const;
    void validate() const;
};

RieszTriple make_triple(RWSequence rw, std::vector<long long> j, const CoeffSpec& coeffs);
RieszTriple make_triple(RWSequence rw, std::vector<long long> j, std::vector<Complex> coeffs);

// slice-level triple with an explicit degree map (lacunary J, reused degrees)
RieszTriple make_slice_triple(RWSequence rw, std::vector<long long> j, std::vector<int> degrees,
                              const CoeffSpec& coeffs);

// draws independent Haar unitaries per factor
void scramble(RieszTriple& t, std::uint64_t seed);

inline constexpr std::size_t kSphereTermCap = 2'000'000;

// exact expansion of prod_{k<=kappa} (conj(a_k) conj(R_k)/2 + 1 + a_k R_k / 2),
// with R_k = R_{j_k} circ U_k; strict triples only
SpherePoly partial_product_sphere(const RieszTriple& t, std::size_t kappa,
                                  std::size_t term_cap = kSphereTermCap);

// {a_k R_{d(k)}(U_k zeta)}, the admissible-pair coefficients of the slice
std::vector<Complex> slice_coefficients(const RieszTriple& t, const CVec& zeta, std::size_t kappa);

// classical circle product of the sliced pair; matches
// slice_restrict(partial_product_sphere(t, kappa), zeta) coefficientwise
TrigPoly slice_product(const RieszTriple& t, const CVec& zeta, std::size_t kappa);

// |int f dN_kappa - int (int_T f d(N_kappa)_zeta) dsigma(zeta)|, both exact
double slice_decomposition_check(const RieszTriple& t, std::size_t kappa, const SpherePoly& f);

// smallest kappa0 with 3 j_{kappa0} > 2 deg f; beyond it no later factor can
// move the moment
std::size_t stabilization_threshold(const RieszTriple& t, const SpherePoly& f);

// int f dN_kappa computed exactly without holding the expanded product:
// factors multiply into f in descending frequency order and terms whose
// bidegree imbalance |p - q| exceeds the sum of the remaining frequencies
// are dropped (no continuation can bring them back to the diagonal)
Complex moment_sphere(const RieszTriple& t, const SpherePoly& f, std::size_t kappa);

// max over kappa in [kappa0, kappa1] of |int f dN_kappa - int f dN_{kappa0}|
double moment_stabilization_check(const RieszTriple& t, const SpherePoly& f, std::size_t kappa0,
                                  std::size_t kappa1);

struct SliceProfile {
    double mean_affinity = 0.0;
    double mean_l1 = 0.0;
    double stderr_affinity = 0.0;
    double stderr_l1 = 0.0;
    std::vector<double> affinity;  // per zeta
    std::vector<double> l1;
};

// Monte Carlo over zeta of the affinity/L1 between the slice partial
// products of two triples sharing R and J
SliceProfile slice_affinity_profile(const RieszTriple& ta, const RieszTriple& tb, std::size_t kappa,
                                    std::size_t zeta_count, std::size_t grid_size,
                                    std::uint64_t seed);

struct SingularityRow {
    std::size_t kappa = 0;
    double mean_affinity = 0.0;
    double mean_l1 = 0.0;
    double stderr_l1 = 0.0;
    double median_scramble_sum = 0.0;
};

struct SingularityExperiment {
    std::vector<SingularityRow> rows;
    // per-zeta values at each checkpoint, for paired comparisons
    std::vector<std::vector<double>> affinity_by_checkpoint;
    std::vector<std::vector<double>> l1_by_checkpoint;
    bool l2_warning = false;  // a - b looked square-summable
};

struct SingularityParams {
    std::uint64_t seed = 1;
    std::size_t kappa_max = 30;
    std::size_t zeta_count = 200;
    std::size_t grid_size = 4096;
    std::vector<std::size_t> checkpoints;  // defaults to 5,10,...,kappa_max
    DegreeMap degree_map = DegreeMap::Cycle;
};

// Draws Haar U_k, forms the scrambled slice pairs for coefficient specs a and
// b, and tracks affinity/L1 between the slices plus the scrambling sums
// sum |a_k - b_k|^2 |R_{d(k)}(U_k zeta)|^2.
SingularityExperiment mutual_singularity_experiment(const RWSequence& rw,
                                                    const std::vector<long long>& j,
                                                    const CoeffSpec& a, const CoeffSpec& b,
                                                    const SingularityParams& params);

}  // namespace riesz
