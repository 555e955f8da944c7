#include "riesz/sphere_riesz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riesz/rng.hpp"

namespace riesz {

bool RieszTriple::strict() const {
    for (std::size_t k = 0; k < freqs.size(); ++k)
        if (static_cast<long long>(degrees[k]) != freqs[k]) return false;
    return true;
}

void RieszTriple::validate() const {
    if (freqs.size() != coeffs.size() || freqs.size() != degrees.size())
        throw std::invalid_argument("riesz triple: component sizes differ");
    if (!unitaries.empty() && unitaries.size() != freqs.size())
        throw std::invalid_argument("riesz triple: unitary count mismatch");
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (freqs[k] <= 0) throw std::invalid_argument("riesz triple: frequencies must be positive");
        if (k > 0 && freqs[k] < 3 * freqs[k - 1])
            throw std::invalid_argument("riesz triple: lacunarity j_{k+1} >= 3 j_k violated");
        if (!(std::abs(coeffs[k]) < 1.0))
            throw std::invalid_argument("riesz triple: |a_k| < 1 violated");
        if (!rw.has_degree(degrees[k]))
            throw std::invalid_argument("riesz triple: sequence lacks a degree-" +
                                        std::to_string(degrees[k]) + " member");
    }
}

RieszTriple make_triple(RWSequence rw, std::vector<long long> j, const CoeffSpec& coeffs) {
    return make_triple(std::move(rw), std::move(j), coeffs.prefix(j.size()));
}

RieszTriple make_triple(RWSequence rw, std::vector<long long> j, std::vector<Complex> coeffs) {
    RieszTriple t;
    t.rw = std::move(rw);
    t.freqs = std::move(j);
    t.coeffs = std::move(coeffs);
    t.degrees.reserve(t.freqs.size());
    for (long long f : t.freqs) {
        if (f > t.rw.max_degree())
            throw std::invalid_argument(
                "make_triple: frequency " + std::to_string(f) +
                " has no materialized member; use make_slice_triple with a degree map");
        t.degrees.push_back(static_cast<int>(f));
    }
    t.validate();
    return t;
}

RieszTriple make_slice_triple(RWSequence rw, std::vector<long long> j, std::vector<int> degrees,
                              const CoeffSpec& coeffs) {
    RieszTriple t;
    t.rw = std::move(rw);
    t.freqs = std::move(j);
    t.degrees = std::move(degrees);
    t.coeffs = coeffs.prefix(t.freqs.size());
    t.validate();
    return t;
}

void scramble(RieszTriple& t, std::uint64_t seed) {
    t.unitaries.clear();
    t.unitaries.reserve(t.size());
    for (std::size_t k = 0; k < t.size(); ++k)
        t.unitaries.push_back(haar_unitary(t.rw.n, mix_seed(seed, kStreamHaar, k)));
}

SpherePoly partial_product_sphere(const RieszTriple& t, std::size_t kappa, std::size_t term_cap) {
    t.validate();
    if (kappa > t.size()) throw std::invalid_argument("partial product: kappa out of range");
    if (!t.strict())
        throw std::invalid_argument(
            "partial product: triple is slice-only (degrees differ from J); exact expansion "
            "requires degree-j_k members");

    SpherePoly p = SpherePoly::constant(t.rw.n, {1.0, 0.0});
    for (std::size_t k = 0; k < kappa; ++k) {
        SpherePoly r = t.rw.by_degree(t.degrees[k]).poly;
        if (!t.unitaries.empty()) r = compose_unitary(r, t.unitaries[k]);
        const Complex a = t.coeffs[k];
        SpherePoly factor = SpherePoly::constant(t.rw.n, {1.0, 0.0});
        factor = add(factor, r.scaled(0.5 * a));
        factor = add(factor, r.conjugate().scaled(0.5 * std::conj(a)));
        if (p.term_count() * factor.term_count() > term_cap)
            throw std::length_error("partial product: term cap exceeded at kappa=" +
                                    std::to_string(k + 1) + ", switch to slice evaluation");
        p = multiply(p, factor);
    }
    return p;
}

std::vector<Complex> slice_coefficients(const RieszTriple& t, const CVec& zeta, std::size_t kappa) {
    if (kappa > t.size()) throw std::invalid_argument("slice coefficients: kappa out of range");
    std::vector<Complex> out;
    out.reserve(kappa);
    for (std::size_t k = 0; k < kappa; ++k) {
        const CVec moved = t.unitaries.empty() ? zeta : apply_unitary(t.unitaries[k], zeta);
        const Complex v = evaluate(t.rw.by_degree(t.degrees[k]).poly, moved);
        out.push_back(t.coeffs[k] * v);
    }
    return out;
}

TrigPoly slice_product(const RieszTriple& t, const CVec& zeta, std::size_t kappa) {
    std::vector<long long> j(t.freqs.begin(), t.freqs.begin() + kappa);
    const AdmissiblePair pair(std::move(j), slice_coefficients(t, zeta, kappa));
    return partial_product_circle(pair, kappa);
}

double slice_decomposition_check(const RieszTriple& t, std::size_t kappa, const SpherePoly& f) {
    const SpherePoly n_kappa = partial_product_sphere(t, kappa);
    const SpherePoly g = multiply(f, n_kappa);
    const Complex lhs = integrate_sphere(g);

    // inner circle integral keeps only the frequency-zero part of the slice,
    // i.e. the |alpha| = |beta| terms, integrated exactly over zeta
    SpherePoly balanced(g.n);
    int a[8], b[8];
    for (const auto& [key, c] : g.terms) {
        g.decode(key, a, b);
        int p = 0, q = 0;
        for (int i = 0; i < g.n; ++i) {
            p += a[i];
            q += b[i];
        }
        if (p == q) balanced.add_key(key, c);
    }
    const Complex rhs = integrate_sphere(balanced);
    return std::abs(lhs - rhs);
}

std::size_t stabilization_threshold(const RieszTriple& t, const SpherePoly& f) {
    const long long d = f.total_degree();
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (3 * t.freqs[k] > 2 * d) return k + 1;
    }
    throw std::invalid_argument("stabilization threshold exceeds the available factors");
}

Complex moment_sphere(const RieszTriple& t, const SpherePoly& f, std::size_t kappa) {
    t.validate();
    if (kappa > t.size()) throw std::invalid_argument("moment: kappa out of range");
    if (!t.strict()) throw std::invalid_argument("moment: triple is slice-only");

    std::vector<long long> prefix(kappa + 1, 0);  // prefix[k] = sum of freqs below index k
    for (std::size_t k = 0; k < kappa; ++k) prefix[k + 1] = prefix[k] + t.freqs[k];

    SpherePoly cur = f;
    int a8[8], b8[8];
    for (std::size_t k = kappa; k-- > 0;) {
        SpherePoly r = t.rw.by_degree(t.degrees[k]).poly;
        if (!t.unitaries.empty()) r = compose_unitary(r, t.unitaries[k]);
        const Complex a = t.coeffs[k];
        SpherePoly factor = SpherePoly::constant(t.rw.n, {1.0, 0.0});
        factor = add(factor, r.scaled(0.5 * a));
        factor = add(factor, r.conjugate().scaled(0.5 * std::conj(a)));
        cur = multiply(cur, factor);

        const long long reach = prefix[k];
        SpherePoly kept(cur.n);
        for (const auto& [key, c] : cur.terms) {
            cur.decode(key, a8, b8);
            long long p = 0, q = 0;
            for (int i = 0; i < cur.n; ++i) {
                p += a8[i];
                q += b8[i];
            }
            if (std::llabs(p - q) <= reach) kept.add_key(key, c);
        }
        cur = std::move(kept);
    }
    return integrate_sphere(cur);
}

double moment_stabilization_check(const RieszTriple& t, const SpherePoly& f, std::size_t kappa0,
                                  std::size_t kappa1) {
    if (kappa1 < kappa0) throw std::invalid_argument("moment stabilization: empty range");
    const Complex base = moment_sphere(t, f, kappa0);
    double drift = 0.0;
    for (std::size_t kappa = kappa0 + 1; kappa <= kappa1; ++kappa)
        drift = std::max(drift, std::abs(moment_sphere(t, f, kappa) - base));
    return drift;
}

namespace {

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& v) {
    MeanStderr out;
    if (v.empty()) return out;
    double s = 0.0;
    for (double x : v) s += x;
    out.mean = s / static_cast<double>(v.size());
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - out.mean) * (x - out.mean);
        out.se = std::sqrt(ss / static_cast<double>(v.size() - 1)) /
                 std::sqrt(static_cast<double>(v.size()));
    }
    return out;
}

// incremental pointwise slice product on a fixed midpoint circle grid
class SliceGridProduct {
  public:
    SliceGridProduct(std::size_t grid, const std::vector<long long>& freqs)
        : freqs_(freqs), values_(grid, 1.0) {}

    void push(Complex coeff, std::size_t k) {
        const double r = std::abs(coeff);
        if (r == 0.0) return;
        const long long n = static_cast<long long>(values_.size());
        const long long j = freqs_[k];
        long long jm = j % n;
        if (jm < 0) jm += n;
        const long long q = (j - jm) / n;
        const double w = 6.28318530717958647692 * static_cast<double>(jm) /
                         static_cast<double>(values_.size());
        const double phase =
            std::arg(coeff) + 0.5 * w + (q % 2 ? 3.14159265358979323846 : 0.0);
        for (std::size_t m = 0; m < values_.size(); ++m)
            values_[m] *= 1.0 + r * std::cos(w * static_cast<double>(m) + phase);
    }

    const std::vector<double>& values() const { return values_; }

  private:
    const std::vector<long long>& freqs_;
    std::vector<double> values_;
};

}  // namespace

SliceProfile slice_affinity_profile(const RieszTriple& ta, const RieszTriple& tb, std::size_t kappa,
                                    std::size_t zeta_count, std::size_t grid_size,
                                    std::uint64_t seed) {
    if (ta.freqs != tb.freqs) throw std::invalid_argument("slice profile: triples must share J");
    SliceProfile out;
    for (std::size_t i = 0; i < zeta_count; ++i) {
        const CVec zeta = sample_sphere_point(ta.rw.n, seed, i);
        const auto ca = slice_coefficients(ta, zeta, kappa);
        const auto cb = slice_coefficients(tb, zeta, kappa);
        SliceGridProduct pa(grid_size, ta.freqs), pb(grid_size, tb.freqs);
        for (std::size_t k = 0; k < kappa; ++k) {
            pa.push(ca[k], k);
            pb.push(cb[k], k);
        }
        out.affinity.push_back(hellinger_affinity(pa.values(), pb.values()));
        out.l1.push_back(l1_distance(pa.values(), pb.values()));
    }
    const auto ma = mean_stderr(out.affinity);
    const auto ml = mean_stderr(out.l1);
    out.mean_affinity = ma.mean;
    out.stderr_affinity = ma.se;
    out.mean_l1 = ml.mean;
    out.stderr_l1 = ml.se;
    return out;
}

SingularityExperiment mutual_singularity_experiment(const RWSequence& rw,
                                                    const std::vector<long long>& j,
                                                    const CoeffSpec& a, const CoeffSpec& b,
                                                    const SingularityParams& params) {
    if (j.size() < params.kappa_max)
        throw std::invalid_argument("singularity experiment: J shorter than kappa_max");

    SingularityExperiment out;
    const auto ca = a.prefix(params.kappa_max);
    const auto cb = b.prefix(params.kappa_max);

    // square-summability heuristic on the realized prefix: compare the tail
    // of sum |a_k - b_k|^2 with the whole
    {
        double total = 0.0, tail = 0.0;
        for (std::size_t k = 0; k < params.kappa_max; ++k) {
            const double d = std::norm(ca[k] - cb[k]);
            total += d;
            if (k >= params.kappa_max / 2) tail += d;
        }
        out.l2_warning = (total > 0.0 && tail < 0.01 * total) || total == 0.0;
    }

    std::vector<std::size_t> checkpoints = params.checkpoints;
    if (checkpoints.empty()) {
        for (std::size_t k = 5; k <= params.kappa_max; k += 5) checkpoints.push_back(k);
        if (checkpoints.empty() || checkpoints.back() != params.kappa_max)
            checkpoints.push_back(params.kappa_max);
    }

    const std::vector<int> degrees = make_degree_map(rw, params.kappa_max, params.degree_map);
    const std::vector<UnitaryMatrix> unitaries = haar_sequence(rw.n, params.kappa_max, params.seed);

    std::vector<PolyEvaluator> evals;
    std::vector<int> eval_degrees;
    for (const auto& m : rw.members) {
        evals.emplace_back(m.poly);
        eval_degrees.push_back(m.degree);
    }
    auto eval_for = [&](int degree) -> const PolyEvaluator& {
        for (std::size_t i = 0; i < eval_degrees.size(); ++i)
            if (eval_degrees[i] == degree) return evals[i];
        throw std::out_of_range("singularity experiment: missing degree member");
    };

    out.affinity_by_checkpoint.assign(checkpoints.size(), {});
    out.l1_by_checkpoint.assign(checkpoints.size(), {});
    std::vector<std::vector<double>> scramble_by_checkpoint(checkpoints.size());

    for (std::size_t i = 0; i < params.zeta_count; ++i) {
        const CVec zeta = sample_sphere_point(rw.n, mix_seed(params.seed, kStreamZeta, 0), i);
        SliceGridProduct pa(params.grid_size, j), pb(params.grid_size, j);
        double scramble_sum = 0.0;
        std::size_t next_cp = 0;
        for (std::size_t k = 0; k < params.kappa_max; ++k) {
            const CVec moved = apply_unitary(unitaries[k], zeta);
            const Complex v = eval_for(degrees[k]).eval(moved);
            pa.push(ca[k] * v, k);
            pb.push(cb[k] * v, k);
            scramble_sum += std::norm(ca[k] - cb[k]) * std::norm(v);
            while (next_cp < checkpoints.size() && checkpoints[next_cp] == k + 1) {
                out.affinity_by_checkpoint[next_cp].push_back(
                    hellinger_affinity(pa.values(), pb.values()));
                out.l1_by_checkpoint[next_cp].push_back(l1_distance(pa.values(), pb.values()));
                scramble_by_checkpoint[next_cp].push_back(scramble_sum);
                ++next_cp;
            }
        }
    }

    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
        SingularityRow row;
        row.kappa = checkpoints[c];
        const auto ma = mean_stderr(out.affinity_by_checkpoint[c]);
        const auto ml = mean_stderr(out.l1_by_checkpoint[c]);
        row.mean_affinity = ma.mean;
        row.mean_l1 = ml.mean;
        row.stderr_l1 = ml.se;
        row.median_scramble_sum = median(scramble_by_checkpoint[c]);
        out.rows.push_back(row);
    }
    return out;
}

}  // namespace riesz
