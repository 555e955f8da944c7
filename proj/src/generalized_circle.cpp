#include <cmath>
#include <stdexcept>

#include "riesz/generalized.hpp"

namespace riesz {

CircleBlock build_block_circle(long long j, long long L, int D) {
    if (j < 1 || L < 1 || D < 1) throw std::invalid_argument("circle block: need j, L, D >= 1");
    CircleBlock b;
    b.j = j;
    b.L = L;
    b.D = D;
    b.coeff = 1.0 / static_cast<double>(D);
    long long d = j;
    for (int k = 0; k < D; ++k) {
        b.degrees.push_back(d);
        d += L;
    }
    return b;
}

namespace {

// 1 + Re[a * sum_k c z^{d_k}]
TrigPoly circle_factor(const CircleBlock& block, Complex a) {
    TrigPoly f = TrigPoly::constant({1.0, 0.0});
    for (long long d : block.degrees) {
        const Complex w = 0.5 * a * block.coeff;
        f.add(d, w);
        f.add(-d, std::conj(w));
    }
    return f;
}

}  // namespace

GeneralizedCircleState generalized_construct_circle(
    const CoeffSpec& coeffs, std::size_t kappa_max, const GeneralizedOptions& opt,
    const std::vector<std::pair<long long, long long>>* forced) {
    if (forced && forced->size() < kappa_max)
        throw std::invalid_argument("forced schedule shorter than kappa_max");

    GeneralizedCircleState st;
    st.partial = TrigPoly::constant({1.0, 0.0});

    for (std::size_t k = 1; k <= kappa_max; ++k) {
        const Complex a = coeffs.coeff(k);
        const long long M_prev = st.degree;  // [-M, M] spans spec(N_k) on the circle
        long long L = forced ? (*forced)[k - 1].second
                             : (k == 1 ? 1 : 2 * st.degree + 2);
        long long j = forced ? (*forced)[k - 1].first : (k == 1 ? opt.j1 : 2 * st.degree + 2);

        StepAudit audit;
        audit.k = static_cast<int>(k);
        audit.M_prev = M_prev;
        audit.block_delta = 1.0;

        TrigPoly candidate;
        CircleBlock block;
        bool ok = false;
        for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
            block = build_block_circle(j, L, opt.D);
            candidate = multiply(st.partial, circle_factor(block, a));

            // exact frequency-set check: every frequency the step adds must
            // leave the window [-M_prev, M_prev]
            const TrigPoly diff = subtract(candidate, st.partial);
            ok = true;
            for (const auto& [f, c] : diff.coeffs) {
                if (std::abs(c) <= 1e-15) continue;
                if (std::llabs(f) <= M_prev) {
                    ok = false;
                    break;
                }
            }
            if (ok) break;
            j *= 2;
            audit.retries = attempt + 1;
        }
        if (!ok)
            throw std::runtime_error("generalized circle step " + std::to_string(k) +
                                     ": spectral disjointness failed after retries");

        st.partial = std::move(candidate);
        st.degree = st.partial.max_abs_freq();
        st.J.push_back(j);
        st.L.push_back(L);
        st.M.push_back(st.degree);

        audit.j = j;
        audit.L = L;
        audit.M_new = st.degree;
        audit.degree = st.degree;
        audit.disjoint = true;
        audit.check_mode = "exact-set";
        audit.mass = st.partial.coeff(0).real();
        if (std::abs(st.partial.coeff(0) - Complex{1.0, 0.0}) > 1e-12)
            throw std::runtime_error("generalized circle step: mass drifted from 1");

        const auto values = evaluate_circle(st.partial, default_grid_size(st.degree));
        double mn = values.empty() ? 0.0 : values[0];
        for (double v : values) mn = std::min(mn, v);
        audit.min_sample = mn;
        if (mn < -1e-10)
            throw std::runtime_error("generalized circle step: partial product went negative");
        st.audit.push_back(audit);
    }
    return st;
}

std::vector<GeneralizedCurveRow> generalized_singularity_circle(const CoeffSpec& a,
                                                                const CoeffSpec& b,
                                                                std::size_t kappa_max,
                                                                const GeneralizedOptions& opt) {
    std::vector<GeneralizedCurveRow> rows;
    // row for kappa = 0: both products are Lebesgue measure
    rows.push_back({0, 1.0, 1.0, 0.0});

    // the driver run fixes the schedule; the second sequence replays it so
    // both measures share one index set
    const GeneralizedCircleState driver = generalized_construct_circle(a, kappa_max, opt);
    std::vector<std::pair<long long, long long>> schedule;
    for (std::size_t i = 0; i < kappa_max; ++i) schedule.emplace_back(driver.J[i], driver.L[i]);

    for (std::size_t kappa = 1; kappa <= kappa_max; ++kappa) {
        const GeneralizedCircleState sa = generalized_construct_circle(a, kappa, opt, &schedule);
        const GeneralizedCircleState sb = generalized_construct_circle(b, kappa, opt, &schedule);
        const std::size_t grid =
            default_grid_size(std::max(sa.partial.max_abs_freq(), sb.partial.max_abs_freq()));
        GeneralizedCurveRow row;
        row.kappa = kappa;
        row.l2_norm_sq = l2_norm_sq_circle(sa.partial);
        row.affinity = hellinger_affinity(sa.partial, sb.partial, grid);
        row.l1 = l1_distance(sa.partial, sb.partial, grid);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace riesz
