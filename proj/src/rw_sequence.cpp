#include "riesz/rw_sequence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riesz/rng.hpp"

namespace riesz {

bool RWSequence::has_degree(int j) const {
    for (const auto& m : members)
        if (m.degree == j) return true;
    return false;
}

const RWMember& RWSequence::by_degree(int j) const {
    for (const auto& m : members)
        if (m.degree == j) return m;
    throw std::out_of_range("RW sequence has no member of degree " + std::to_string(j));
}

int RWSequence::max_degree() const {
    int m = 0;
    for (const auto& mem : members) m = std::max(m, mem.degree);
    return m;
}

SpherePoly random_homogeneous_candidate(int j, int n, std::uint64_t seed) {
    if (j < 0) throw std::invalid_argument("candidate degree must be nonnegative");
    Rng rng = derive_stream(seed, kStreamSigns, static_cast<std::uint64_t>(j));
    SpherePoly out(n);
    const MultiIndex zero(n, 0);
    // lgamma keeps sqrt(j!/alpha!) finite in log space at high degree
    const double lg_j = std::lgamma(static_cast<double>(j) + 1.0);
    for (const auto& alpha : enumerate_multi_indices(n, j)) {
        double lg_a = 0.0;
        for (int e : alpha) lg_a += std::lgamma(static_cast<double>(e) + 1.0);
        const double mag = std::exp(0.5 * (lg_j - lg_a));
        out.add_term(alpha, zero, {rng.sign() * mag, 0.0});
    }
    return out;
}

namespace {

// exact L2(sigma) norm of a holomorphic polynomial; distinct monomials are
// orthogonal so the diagonal sum is the whole story
double holomorphic_l2_norm(const SpherePoly& f) {
    double s = 0.0;
    int a[8], b[8];
    MultiIndex ma(f.n);
    for (const auto& [key, c] : f.terms) {
        f.decode(key, a, b);
        for (int i = 0; i < f.n; ++i) {
            if (b[i] != 0)
                throw std::invalid_argument("holomorphic L2 norm: input has antiholomorphic terms");
            ma[i] = a[i];
        }
        s += std::norm(c) * monomial_integral(ma, ma, f.n);
    }
    return std::sqrt(s);
}

}  // namespace

RWMember certify_candidate(const SpherePoly& candidate, std::size_t samples, int ascent_steps,
                           std::uint64_t seed) {
    Bidegree bd;
    if (!candidate.is_homogeneous(&bd) || bd.second != 0)
        throw std::invalid_argument("certify_candidate: need a homogeneous holomorphic candidate");

    const double l2 = holomorphic_l2_norm(candidate);
    const SupBounds bounds = sup_norm_bounds(candidate, samples, ascent_steps, seed);
    if (bounds.upper <= 0.0) throw std::invalid_argument("certify_candidate: zero candidate");

    RWMember m;
    m.degree = bd.first;
    m.poly = candidate.scaled({1.0 / bounds.upper, 0.0});
    m.l2_norm = l2 / bounds.upper;
    m.sup_upper = 1.0;
    m.sup_lower = bounds.lower / bounds.upper;
    m.delta = m.l2_norm;
    return m;
}

RWMember build_rw_member(int j, int n, int trials, std::uint64_t seed, double floor,
                         std::size_t samples, int ascent_steps) {
    if (trials < 1) throw std::invalid_argument("build_rw_member: need at least one trial");
    RWMember best;
    bool have = false;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed =
            mix_seed(seed, kStreamSigns, static_cast<std::uint64_t>(j) * 1000003ull + t);
        const SpherePoly cand = random_homogeneous_candidate(j, n, trial_seed);
        const RWMember m = certify_candidate(cand, samples, ascent_steps, trial_seed);
        // delta ties across sign draws (the certificate ignores signs); the
        // sampled sup picks the draw whose certificate has the least slack
        if (!have || m.delta > best.delta + 1e-15 ||
            (std::abs(m.delta - best.delta) <= 1e-15 && m.sup_lower > best.sup_lower)) {
            best = m;
            have = true;
        }
    }
    if (best.delta < floor)
        throw std::runtime_error("RW member at degree " + std::to_string(j) + " achieved delta " +
                                 std::to_string(best.delta) + " below the floor " +
                                 std::to_string(floor));
    return best;
}

int default_rw_degree_cap(int n) {
    if (n <= 2) return kRwDegreeCapN2;
    if (n == 3) return kRwDegreeCapN3;
    return 8;
}

RWSequence build_rw_sequence(int n, int deg_max, int trials, std::uint64_t seed, double floor,
                             std::size_t samples, int ascent_steps) {
    if (deg_max < 1) throw std::invalid_argument("build_rw_sequence: need deg_max >= 1");
    std::vector<int> degrees;
    for (int j = 1; j <= deg_max; ++j) degrees.push_back(j);
    return build_rw_sequence_for_degrees(n, degrees, trials, seed, floor, samples, ascent_steps);
}

RWSequence build_rw_sequence_for_degrees(int n, const std::vector<int>& degrees, int trials,
                                         std::uint64_t seed, double floor, std::size_t samples,
                                         int ascent_steps) {
    if (degrees.empty()) throw std::invalid_argument("build_rw_sequence: no degrees requested");
    RWSequence rw;
    rw.n = n;
    rw.seed = seed;
    rw.delta = 1.0;
    for (int j : degrees) {
        rw.members.push_back(build_rw_member(j, n, trials, seed, floor, samples, ascent_steps));
        rw.delta = std::min(rw.delta, rw.members.back().delta);
    }
    return rw;
}

std::vector<int> make_degree_map(const RWSequence& rw, std::size_t count, DegreeMap mode) {
    if (rw.members.empty()) throw std::invalid_argument("degree map needs a nonempty sequence");
    std::vector<int> out;
    out.reserve(count);
    const int top = rw.max_degree();
    std::vector<int> degrees;
    for (const auto& m : rw.members) degrees.push_back(m.degree);
    std::sort(degrees.begin(), degrees.end());
    for (std::size_t k = 0; k < count; ++k) {
        if (mode == DegreeMap::TopConstant)
            out.push_back(top);
        else
            out.push_back(degrees[k % degrees.size()]);
    }
    return out;
}

ScramblingResult scrambling_experiment(const RWSequence& rw, const std::vector<int>& degrees,
                                       const std::vector<Complex>& coeffs,
                                       const std::vector<UnitaryMatrix>& unitaries,
                                       const std::vector<CVec>& zetas, std::size_t k_max) {
    if (degrees.size() < k_max || coeffs.size() < k_max || unitaries.size() < k_max)
        throw std::invalid_argument("scrambling_experiment: fewer than k_max factors supplied");

    // evaluators keyed by degree, built once
    std::vector<PolyEvaluator> storage;
    storage.reserve(rw.members.size());
    std::vector<int> degree_of;
    for (const auto& m : rw.members) {
        storage.emplace_back(m.poly);
        degree_of.push_back(m.degree);
    }
    auto eval_for = [&](int degree) -> const PolyEvaluator& {
        for (std::size_t i = 0; i < degree_of.size(); ++i)
            if (degree_of[i] == degree) return storage[i];
        throw std::out_of_range("scrambling_experiment: no member of degree " +
                                std::to_string(degree));
    };

    ScramblingResult out;
    out.sums.assign(zetas.size(), std::vector<double>(k_max, 0.0));
    for (std::size_t z = 0; z < zetas.size(); ++z) {
        double acc = 0.0;
        for (std::size_t k = 0; k < k_max; ++k) {
            const CVec moved = apply_unitary(unitaries[k], zetas[z]);
            const Complex v = eval_for(degrees[k]).eval(moved);
            acc += std::norm(coeffs[k]) * std::norm(v);
            out.sums[z][k] = acc;
        }
    }
    out.median_by_k.resize(k_max);
    std::vector<double> col(zetas.size());
    for (std::size_t k = 0; k < k_max; ++k) {
        for (std::size_t z = 0; z < zetas.size(); ++z) col[z] = out.sums[z][k];
        out.median_by_k[k] = median(col);
    }
    return out;
}

std::vector<UnitaryMatrix> haar_sequence(int n, std::size_t count, std::uint64_t seed) {
    std::vector<UnitaryMatrix> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        out.push_back(haar_unitary(n, mix_seed(seed, kStreamHaar, k)));
    return out;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median of an empty set");
    std::sort(values.begin(), values.end());
    const std::size_t m = values.size() / 2;
    return (values.size() % 2) ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

}  // namespace riesz
