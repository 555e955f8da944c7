#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "riesz/coeff_spec.hpp"
#include "riesz/sphere_poly.hpp"
#include "riesz/trig_poly.hpp"

namespace riesz {

// per-step audit record of the inductive constructor
struct StepAudit {
    int k = 0;
    long long j = 0;  // accepted min degree of the block
    long long L = 0;  // required degree gap
    long long M_prev = 0;
    long long M_new = 0;
    long long degree = 0;  // deg of the partial product after the step
    double mass = 0.0;
    bool disjoint = false;
    std::string check_mode;  // "exact-set" or "certified-superset"
    double min_sample = 0.0;
    double block_delta = 0.0;
    int retries = 0;
    bool expanded = true;
};

// ---------------------------------------------------------------------------
// circle specialization: block members are monomials c z^{d}
// ---------------------------------------------------------------------------

struct CircleBlock {
    long long j = 0;
    long long L = 0;
    int D = 1;
    std::vector<long long> degrees;  // d_1 = j, d_{k+1} = d_k + L
    double coeff = 1.0;              // 1/D on every member
    double delta = 1.0;              // sum of member moduli is exactly D * (1/D) on |z| = 1
    double sup_bound = 1.0;
};

CircleBlock build_block_circle(long long j, long long L, int D);

struct GeneralizedCircleState {
    TrigPoly partial;  // starts at the constant 1
    long long degree = 0;
    std::vector<long long> J, L, M;
    std::vector<StepAudit> audit;
};

struct GeneralizedOptions {
    int D = 1;            // members per block (1 on the circle, 3 on the sphere by default)
    long long j1 = 1;     // first index
    int max_retries = 6;  // doublings of j on a failed disjointness check
    std::size_t sample_count = 1000;  // nonnegativity samples per step
    std::uint64_t seed = 1;           // block randomness and sampling
    int block_trials = 8;
    std::size_t delta_samples = 10000;
};

// Inductive constructor on the circle: L_{k+1} = 2 deg + 2, j_{k+1} proposed
// as 2 deg + 2 and doubled on a failed exact frequency-set disjointness
// check. `forced` replays a recorded (j, L) schedule so two coefficient
// sequences share one index set.
GeneralizedCircleState generalized_construct_circle(
    const CoeffSpec& coeffs, std::size_t kappa_max, const GeneralizedOptions& opt,
    const std::vector<std::pair<long long, long long>>* forced = nullptr);

struct GeneralizedCurveRow {
    std::size_t kappa = 0;
    double l2_norm_sq = 0.0;
    double affinity = 0.0;
    double l1 = 0.0;
};

// circle-mode singularity experiment: both products are built over the
// schedule recorded by the first, then compared by quadrature per kappa
std::vector<GeneralizedCurveRow> generalized_singularity_circle(const CoeffSpec& a,
                                                                const CoeffSpec& b,
                                                                std::size_t kappa_max,
                                                                const GeneralizedOptions& opt);

// ---------------------------------------------------------------------------
// sphere blocks: normalized random homogeneous holomorphic polynomials
// ---------------------------------------------------------------------------

struct LacunaryBlock {
    long long j = 0;
    long long L = 0;
    int n = 2;
    std::vector<SpherePoly> members;  // W_k, certified sup <= 1/D each
    std::vector<long long> degrees;
    double delta_sampled = 0.0;  // min over samples of sum |W_k|, reported not certified
    double sup_bound = 1.0;      // certified bound on sup |sum W_k|
};

using BlockFactory = std::function<LacunaryBlock(long long j, long long L)>;

LacunaryBlock build_block_sphere(long long j, long long L, int D, int n, int trials,
                                 std::uint64_t seed, std::size_t delta_samples = 10000);

BlockFactory default_sphere_block_factory(int n, int D, int trials, std::uint64_t seed,
                                          std::size_t delta_samples = 10000);

// a block source plus a coefficient sequence; the factory must honor the
// LacunaryBlock invariants for every requested (j, L)
struct GeneralizedPair {
    BlockFactory block_factory;
    CoeffSpec coeffs;
};

struct SphereTailFactor {
    Complex a;
    LacunaryBlock block;
};

// Partial products stay exactly expanded while the term count allows and
// switch to a factored tail beyond; every verification then runs on the
// certified bidegree superset, which is cancellation-proof.
struct GeneralizedSphereState {
    int n = 2;
    std::size_t kappa = 0;
    SpherePoly expanded;
    std::size_t expanded_kappa = 0;
    std::vector<SphereTailFactor> tail;
    std::set<Bidegree> support;  // certified superset of the bidegree support
    long long degree = 0;
    std::vector<long long> J, L, M;
    std::vector<StepAudit> audit;
    std::vector<LacunaryBlock> blocks;  // one per step, reused on replays
};

// constant-1 product with support {(0,0)}
GeneralizedSphereState make_generalized_sphere_state(int n);

// Exact check behind the constructor's fallback: true when no harmonic
// component of a flagged bidegree of `diff` has L2 norm above the spectrum
// tolerance inside [0, M]^2. Exercised only when the certified bidegree
// superset cannot rule an overlap out by itself.
bool harmonic_spectrum_avoids_box(const SpherePoly& diff, const std::vector<Bidegree>& flagged,
                                  long long M);

GeneralizedSphereState generalized_construct_sphere(const CoeffSpec& coeffs, std::size_t kappa_max,
                                                    int n, const GeneralizedOptions& opt,
                                                    const GeneralizedSphereState* schedule_from =
                                                        nullptr);

// same constructor driven by an explicit pair
GeneralizedSphereState generalized_construct_sphere(const GeneralizedPair& pair,
                                                    std::size_t kappa_max, int n,
                                                    const GeneralizedOptions& opt);

// single inductive step; the forced variant replays a recorded block so two
// coefficient sequences share one schedule
void generalized_sphere_step(GeneralizedSphereState& st, Complex a, const GeneralizedOptions& opt,
                             const BlockFactory& factory);
void generalized_sphere_step_forced(GeneralizedSphereState& st, Complex a,
                                    const GeneralizedOptions& opt, const LacunaryBlock& block);

// Caches per-member evaluators; holds a reference to the state, so the state
// must outlive the handle.
class GeneralizedSphereEvaluatorHandle {
  public:
    explicit GeneralizedSphereEvaluatorHandle(const GeneralizedSphereState& st);
    double density(const CVec& zeta) const;
    TrigPoly slice(const CVec& zeta) const;

  private:
    const GeneralizedSphereState& st_;
    PolyEvaluator expanded_;
    std::vector<std::vector<PolyEvaluator>> tail_members_;
};

// slice of the current partial product; factored tail factors slice to
// 1 + sum_k Re[a W_k(zeta) lambda^{d_k}]
TrigPoly generalized_slice(const GeneralizedSphereState& state, const CVec& zeta);

// evaluates the (possibly factored) density at a sphere point
double generalized_density_value(const GeneralizedSphereState& state, const CVec& zeta);

struct GeneralizedSphereCurveRow {
    std::size_t kappa = 0;
    double mean_affinity = 0.0;
    double mean_l1 = 0.0;
    double stderr_l1 = 0.0;
};

// sphere-mode experiment via slice-averaged affinity/L1 at each step
std::vector<GeneralizedSphereCurveRow> generalized_singularity_sphere(
    const CoeffSpec& a, const CoeffSpec& b, std::size_t kappa_max, int n,
    const GeneralizedOptions& opt, std::size_t zeta_count, std::size_t grid_size);

}  // namespace riesz
