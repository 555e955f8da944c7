#include "riesz/circle_riesz.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace riesz {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

AdmissiblePair::AdmissiblePair(std::vector<long long> j, std::vector<Complex> a)
    : freqs(std::move(j)), coeffs(std::move(a)) {
    if (freqs.size() != coeffs.size())
        throw std::invalid_argument("admissible pair: frequency and coefficient counts differ");
    for (std::size_t k = 0; k < freqs.size(); ++k) {
        if (freqs[k] <= 0) throw std::invalid_argument("admissible pair: frequencies must be positive");
        if (k > 0 && freqs[k] < 3 * freqs[k - 1])
            throw std::invalid_argument("admissible pair: lacunarity j_{k+1} >= 3 j_k violated at k=" +
                                        std::to_string(k));
        if (!(std::abs(coeffs[k]) < 1.0))
            throw std::invalid_argument("admissible pair: |a_k| < 1 violated at k=" + std::to_string(k));
    }
}

AdmissiblePair AdmissiblePair::from_spec(const std::vector<long long>& j, const CoeffSpec& spec) {
    return AdmissiblePair(j, spec.prefix(j.size()));
}

std::vector<long long> lacunary_frequencies(long long base, std::size_t count, long long j1) {
    if (base < 3) throw std::invalid_argument("lacunary base must be >= 3");
    if (j1 < 1) throw std::invalid_argument("first frequency must be >= 1");
    std::vector<long long> out;
    out.reserve(count);
    long long j = j1;
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(j);
        if (k + 1 < count) {
            if (j > std::numeric_limits<long long>::max() / base)
                throw std::overflow_error("lacunary frequency overflows 64 bits at k=" +
                                          std::to_string(k + 2));
            j *= base;
        }
    }
    return out;
}

TrigPoly partial_product_circle(const AdmissiblePair& pair, std::size_t kappa) {
    if (kappa > pair.size())
        throw std::invalid_argument("partial product: kappa exceeds available coefficients");

    TrigPoly p = TrigPoly::constant({1.0, 0.0});
    for (std::size_t k = 0; k < kappa; ++k) {
        const Complex a = pair.coeffs[k];
        if (a == Complex{0.0, 0.0}) continue;
        const long long j = pair.freqs[k];
        if (p.term_count() * 3 > kCircleTermCap)
            throw std::length_error("partial product: term cap exceeded at kappa=" +
                                    std::to_string(k + 1) + ", use pointwise evaluation");
        TrigPoly next;
        next.coeffs.reserve(p.term_count() * 3);
        const Complex half_a = 0.5 * a;
        const Complex half_conj = 0.5 * std::conj(a);
        for (const auto& [f, c] : p.coeffs) {
            next.add(f, c);
            next.add(f + j, c * half_a);
            next.add(f - j, c * half_conj);
        }
        p = std::move(next);
    }
    return p;
}

CirclePartialEvaluator::CirclePartialEvaluator(const AdmissiblePair& pair, std::size_t grid_size)
    : pair_(pair), grid_size_(grid_size), values_(grid_size, 1.0) {
    if (grid_size == 0) throw std::invalid_argument("pointwise evaluator: empty grid");
}

void CirclePartialEvaluator::advance_to(std::size_t kappa) {
    if (kappa > pair_.size())
        throw std::invalid_argument("pointwise evaluator: kappa exceeds available coefficients");
    if (kappa < kappa_) throw std::invalid_argument("pointwise evaluator cannot rewind");
    for (; kappa_ < kappa; ++kappa_) {
        const Complex a = pair_.coeffs[kappa_];
        const double r = std::abs(a);
        if (r == 0.0) continue;
        // 1 + Re(a e^{i j theta}) = 1 + |a| cos(j theta + arg a) on midpoint
        // nodes theta_m = 2 pi (m + 1/2) / N. Fold j = q N + jm; the shift
        // contributes the parity phase pi q on top of the folded frequency.
        const long long n = static_cast<long long>(grid_size_);
        const long long j = pair_.freqs[kappa_];
        long long jm = j % n;
        if (jm < 0) jm += n;
        const long long q = (j - jm) / n;
        const double w = kTwoPi * static_cast<double>(jm) / static_cast<double>(grid_size_);
        const double phase = std::arg(a) + 0.5 * w + (q % 2 ? kTwoPi * 0.5 : 0.0);
        for (std::size_t m = 0; m < grid_size_; ++m)
            values_[m] *= 1.0 + r * std::cos(w * static_cast<double>(m) + phase);
    }
}

namespace {

double parseval_product(const AdmissiblePair& pair, std::size_t kappa) {
    double p = 1.0;
    for (std::size_t k = 0; k < kappa; ++k) p *= 1.0 + 0.5 * std::norm(pair.coeffs[k]);
    return p;
}

}  // namespace

std::vector<DichotomyRow> dichotomy_curve(const CoeffSpec& spec, const std::vector<long long>& j,
                                          std::size_t kappa_max, std::size_t grid_size) {
    const AdmissiblePair pair = AdmissiblePair::from_spec(j, spec);
    if (kappa_max > pair.size()) throw std::invalid_argument("dichotomy curve: kappa_max too large");

    std::vector<DichotomyRow> rows;
    rows.reserve(kappa_max + 1);
    CirclePartialEvaluator eval(pair, grid_size);
    const std::vector<double> lebesgue(grid_size, 1.0);

    std::size_t expanded_terms = 1;
    double l2 = 1.0;
    for (std::size_t kappa = 0; kappa <= kappa_max; ++kappa) {
        if (kappa > 0) {
            eval.advance_to(kappa);
            if (pair.coeffs[kappa - 1] != Complex{0.0, 0.0})
                expanded_terms = expanded_terms > kCircleTermCap ? expanded_terms
                                                                 : expanded_terms * 3;
        }
        if (expanded_terms <= kCircleTermCap) {
            l2 = l2_norm_sq_circle(partial_product_circle(pair, kappa));
        } else {
            l2 = parseval_product(pair, kappa);
        }
        DichotomyRow row;
        row.kappa = kappa;
        row.l2_norm_sq = l2;
        row.affinity = hellinger_affinity(eval.values(), lebesgue);
        row.l1 = l1_distance(eval.values(), lebesgue);
        rows.push_back(row);
    }
    return rows;
}

std::vector<PeyriereRow> peyriere_curve(const CoeffSpec& spec_a, const CoeffSpec& spec_b,
                                        const std::vector<long long>& j, std::size_t kappa_max,
                                        std::size_t grid_size) {
    const AdmissiblePair pair_a = AdmissiblePair::from_spec(j, spec_a);
    const AdmissiblePair pair_b = AdmissiblePair::from_spec(j, spec_b);
    if (kappa_max > pair_a.size()) throw std::invalid_argument("peyriere curve: kappa_max too large");

    std::vector<PeyriereRow> rows;
    rows.reserve(kappa_max + 1);
    CirclePartialEvaluator ea(pair_a, grid_size);
    CirclePartialEvaluator eb(pair_b, grid_size);
    for (std::size_t kappa = 0; kappa <= kappa_max; ++kappa) {
        if (kappa > 0) {
            ea.advance_to(kappa);
            eb.advance_to(kappa);
        }
        PeyriereRow row;
        row.kappa = kappa;
        row.l2_norm_sq = parseval_product(pair_a, kappa);
        row.affinity = hellinger_affinity(ea.values(), eb.values());
        row.l1 = l1_distance(ea.values(), eb.values());
        rows.push_back(row);
    }
    return rows;
}

}  // namespace riesz
