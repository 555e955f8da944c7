#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "riesz/generalized.hpp"
#include "riesz/rng.hpp"
#include "riesz/rw_sequence.hpp"

namespace riesz {

namespace {

constexpr std::size_t kSphereGeneralizedTermCap = 2'000'000;

double quick_block_delta(const std::vector<PolyEvaluator>& members, const std::vector<CVec>& pts) {
    double best = -1.0;
    for (const auto& z : pts) {
        double s = 0.0;
        for (const auto& m : members) s += std::abs(m.eval(z));
        if (best < 0.0 || s < best) best = s;
    }
    return std::max(best, 0.0);
}

}  // namespace

LacunaryBlock build_block_sphere(long long j, long long L, int D, int n, int trials,
                                 std::uint64_t seed, std::size_t delta_samples) {
    if (j < 1 || L < 1 || D < 1) throw std::invalid_argument("sphere block: need j, L, D >= 1");
    if (trials < 1) trials = 1;

    LacunaryBlock best;
    double best_delta = -1.0;
    const std::vector<CVec> select_pts =
        sample_sphere(n, std::min<std::size_t>(delta_samples, 512),
                      mix_seed(seed, kStreamBlock, static_cast<std::uint64_t>(j) * 31 + 1));

    for (int t = 0; t < trials; ++t) {
        LacunaryBlock b;
        b.j = j;
        b.L = L;
        b.n = n;
        std::vector<PolyEvaluator> evals;
        for (int k = 0; k < D; ++k) {
            const long long d = j + static_cast<long long>(k) * L;
            const std::uint64_t member_seed =
                mix_seed(seed, kStreamBlock, (static_cast<std::uint64_t>(j) << 20) ^
                                                 (static_cast<std::uint64_t>(t) << 8) ^
                                                 static_cast<std::uint64_t>(k));
            const SpherePoly cand = random_homogeneous_candidate(static_cast<int>(d), n, member_seed);
            // certified: sup |W| <= B/(D B) = 1/D, so sup |sum W| <= 1
            const SupBounds bounds = sup_norm_bounds(cand, 0, 0, member_seed);
            b.members.push_back(cand.scaled({1.0 / (D * bounds.upper), 0.0}));
            b.degrees.push_back(d);
            evals.emplace_back(b.members.back());
        }
        b.sup_bound = 1.0;
        const double delta = quick_block_delta(evals, select_pts);
        if (delta > best_delta) {
            best_delta = delta;
            best = std::move(b);
        }
    }

    // full scan on the winner fixes the reported delta
    std::vector<PolyEvaluator> evals;
    for (const auto& m : best.members) evals.emplace_back(m);
    best.delta_sampled = quick_block_delta(
        evals, sample_sphere(n, delta_samples,
                             mix_seed(seed, kStreamBlock, static_cast<std::uint64_t>(j) * 31 + 2)));
    return best;
}

BlockFactory default_sphere_block_factory(int n, int D, int trials, std::uint64_t seed,
                                          std::size_t delta_samples) {
    return [=](long long j, long long L) {
        return build_block_sphere(j, L, D, n, trials, seed, delta_samples);
    };
}

namespace {

bool block_respects_contract(const LacunaryBlock& block, long long j, long long L) {
    if (block.members.empty() || block.members.size() != block.degrees.size()) return false;
    for (std::size_t i = 0; i < block.degrees.size(); ++i) {
        if (block.degrees[i] < j) return false;
        Bidegree bd;
        if (!block.members[i].is_homogeneous(&bd) || bd.second != 0 ||
            bd.first != block.degrees[i])
            return false;
        for (std::size_t t = i + 1; t < block.degrees.size(); ++t)
            if (std::llabs(block.degrees[i] - block.degrees[t]) < L) return false;
    }
    return block.sup_bound <= 1.0 + 1e-12;
}

SpherePoly sphere_factor(const LacunaryBlock& block, Complex a, int n) {
    SpherePoly f = SpherePoly::constant(n, {1.0, 0.0});
    for (const auto& w : block.members) {
        f = add(f, w.scaled(0.5 * a));
        f = add(f, w.conjugate().scaled(0.5 * std::conj(a)));
    }
    return f;
}

struct SupersetCheck {
    std::set<Bidegree> additions;
    std::vector<Bidegree> violations;  // shift family reaches [0, M]^2
};

SupersetCheck superset_disjointness(const std::set<Bidegree>& support,
                                    const std::vector<long long>& degrees, long long M_prev) {
    SupersetCheck out;
    for (const auto& [p, q] : support) {
        for (long long d : degrees) {
            const Bidegree holo{p + static_cast<int>(d), q};
            const Bidegree anti{p, q + static_cast<int>(d)};
            for (const auto& bd : {holo, anti}) {
                out.additions.insert(bd);
                // the harmonic parts of a bidegree (p', q') term live on
                // (p'-l, q'-l); the family meets [0, M]^2 iff |p'-q'| <= M
                if (std::abs(bd.first - bd.second) <= M_prev) out.violations.push_back(bd);
            }
        }
    }
    return out;
}

long long support_degree(const std::set<Bidegree>& support) {
    long long deg = 0;
    for (const auto& [p, q] : support) deg = std::max<long long>(deg, p + q);
    return deg;
}

long long support_box(const std::set<Bidegree>& support) {
    long long m = 0;
    for (const auto& [p, q] : support) m = std::max<long long>(m, std::max(p, q));
    return m;
}

void sphere_step(GeneralizedSphereState& st, Complex a, const GeneralizedOptions& opt,
                 const BlockFactory* factory, const LacunaryBlock* forced_block) {
    const std::size_t k = st.kappa + 1;
    const long long M_prev = support_box(st.support);
    long long L = (k == 1) ? 1 : 2 * st.degree + 2;
    long long j = (k == 1) ? opt.j1 : 2 * st.degree + 2;
    if (forced_block) {
        j = forced_block->j;
        L = forced_block->L;
    }

    StepAudit audit;
    audit.k = static_cast<int>(k);
    audit.M_prev = M_prev;

    LacunaryBlock block;
    SupersetCheck check;
    bool ok = false;
    std::string mode = "certified-superset";

    for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
        block = forced_block ? *forced_block : (*factory)(j, L);
        if (block_respects_contract(block, j, L)) {
            check = superset_disjointness(st.support, block.degrees, M_prev);
            if (check.violations.empty() || a == Complex{0.0, 0.0}) {
                ok = true;
                mode = "certified-superset";
            } else if (st.tail.empty()) {
                // fall back to exact harmonic spectra of the flagged
                // components, if the product stays expandable
                const SpherePoly factor = sphere_factor(block, a, st.n);
                if (st.expanded.term_count() * factor.term_count() <=
                    kSphereGeneralizedTermCap) {
                    const SpherePoly diff =
                        subtract(multiply(st.expanded, factor), st.expanded);
                    if (harmonic_spectrum_avoids_box(diff, check.violations, M_prev)) {
                        ok = true;
                        mode = "exact-harmonic";
                    }
                }
            }
        }
        if (ok || forced_block) break;
        j *= 2;
        L = std::max(L, 1ll);
        audit.retries = attempt + 1;
    }
    if (!ok)
        throw std::runtime_error("generalized sphere step " + std::to_string(k) +
                                 ": spectral disjointness failed after retries");

    // expansion bookkeeping; a zero coefficient leaves the product unchanged
    double mass = st.audit.empty() ? 1.0 : st.audit.back().mass;
    bool expanded_now = st.tail.empty();
    if (a != Complex{0.0, 0.0}) {
        const SpherePoly factor = sphere_factor(block, a, st.n);
        if (st.tail.empty() &&
            st.expanded.term_count() * factor.term_count() <= kSphereGeneralizedTermCap) {
            st.expanded = multiply(st.expanded, factor);
            st.expanded_kappa = k;
            const Complex m = integrate_sphere(st.expanded);
            mass = m.real();
            if (std::abs(m - Complex{1.0, 0.0}) > 1e-9)
                throw std::runtime_error("generalized sphere step: mass drifted from 1");
        } else {
            st.tail.push_back({a, block});
            expanded_now = false;
            // the disjoint superset keeps every addition away from (0,0),
            // so the mass certificate carries over unchanged
        }
        st.support.insert(check.additions.begin(), check.additions.end());
    }

    st.kappa = k;
    st.degree = st.tail.empty() && a != Complex{0.0, 0.0}
                    ? st.expanded.total_degree()
                    : support_degree(st.support);
    if (a == Complex{0.0, 0.0} && st.tail.empty()) st.degree = st.expanded.total_degree();
    st.J.push_back(j);
    st.L.push_back(L);
    st.M.push_back(support_box(st.support));
    st.blocks.push_back(block);

    audit.j = j;
    audit.L = L;
    audit.M_new = st.M.back();
    audit.degree = st.degree;
    audit.mass = mass;
    audit.disjoint = true;
    audit.check_mode = mode;
    audit.block_delta = block.delta_sampled;
    audit.expanded = expanded_now;

    // nonnegativity on a fresh sample set each step
    {
        GeneralizedSphereEvaluatorHandle eval(st);
        double mn = 0.0;
        bool first = true;
        for (std::size_t i = 0; i < opt.sample_count; ++i) {
            const CVec z = sample_sphere_point(st.n, mix_seed(opt.seed, kStreamZeta, k), i);
            const double v = eval.density(z);
            if (first || v < mn) {
                mn = v;
                first = false;
            }
        }
        audit.min_sample = mn;
        if (mn < -1e-10)
            throw std::runtime_error("generalized sphere step: partial product went negative");
    }

    st.audit.push_back(audit);
}

}  // namespace

bool harmonic_spectrum_avoids_box(const SpherePoly& diff, const std::vector<Bidegree>& flagged,
                                  long long M) {
    const auto comps = bidegree_components(diff);
    for (const auto& bd : flagged) {
        auto it = comps.find(bd);
        if (it == comps.end()) continue;
        const auto parts = harmonic_decomposition(it->second);
        for (std::size_t l = 0; l < parts.size(); ++l) {
            const int p = bd.first - static_cast<int>(l);
            const int q = bd.second - static_cast<int>(l);
            if (p <= M && q <= M && !parts[l].is_zero() &&
                std::sqrt(norm_sq_sphere(parts[l])) > kSpectrumTol)
                return false;
        }
    }
    return true;
}

GeneralizedSphereState make_generalized_sphere_state(int n) {
    GeneralizedSphereState st;
    st.n = n;
    st.expanded = SpherePoly::constant(n, {1.0, 0.0});
    st.support.insert({0, 0});
    return st;
}

GeneralizedSphereState generalized_construct_sphere(const CoeffSpec& coeffs, std::size_t kappa_max,
                                                    int n, const GeneralizedOptions& opt,
                                                    const GeneralizedSphereState* schedule_from) {
    if (schedule_from && schedule_from->blocks.size() < kappa_max)
        throw std::invalid_argument("generalized sphere: schedule shorter than kappa_max");
    GeneralizedSphereState st = make_generalized_sphere_state(n);
    const BlockFactory factory =
        default_sphere_block_factory(n, opt.D, opt.block_trials, opt.seed, opt.delta_samples);
    for (std::size_t k = 0; k < kappa_max; ++k) {
        const LacunaryBlock* forced = schedule_from ? &schedule_from->blocks[k] : nullptr;
        sphere_step(st, coeffs.coeff(k + 1), opt, &factory, forced);
    }
    return st;
}

GeneralizedSphereState generalized_construct_sphere(const GeneralizedPair& pair,
                                                    std::size_t kappa_max, int n,
                                                    const GeneralizedOptions& opt) {
    GeneralizedSphereState st = make_generalized_sphere_state(n);
    for (std::size_t k = 0; k < kappa_max; ++k)
        sphere_step(st, pair.coeffs.coeff(k + 1), opt, &pair.block_factory, nullptr);
    return st;
}

void generalized_sphere_step(GeneralizedSphereState& st, Complex a, const GeneralizedOptions& opt,
                             const BlockFactory& factory) {
    sphere_step(st, a, opt, &factory, nullptr);
}

void generalized_sphere_step_forced(GeneralizedSphereState& st, Complex a,
                                    const GeneralizedOptions& opt, const LacunaryBlock& block) {
    sphere_step(st, a, opt, nullptr, &block);
}

GeneralizedSphereEvaluatorHandle::GeneralizedSphereEvaluatorHandle(
    const GeneralizedSphereState& st)
    : st_(st), expanded_(st.expanded) {
    for (const auto& tf : st.tail) {
        std::vector<PolyEvaluator> evals;
        for (const auto& m : tf.block.members) evals.emplace_back(m);
        tail_members_.push_back(std::move(evals));
    }
}

double GeneralizedSphereEvaluatorHandle::density(const CVec& zeta) const {
    double v = expanded_.eval(zeta).real();
    for (std::size_t t = 0; t < st_.tail.size(); ++t) {
        Complex s{0.0, 0.0};
        for (const auto& m : tail_members_[t]) s += m.eval(zeta);
        v *= 1.0 + (st_.tail[t].a * s).real();
    }
    return v;
}

TrigPoly GeneralizedSphereEvaluatorHandle::slice(const CVec& zeta) const {
    TrigPoly out = slice_restrict(st_.expanded, zeta);
    for (std::size_t t = 0; t < st_.tail.size(); ++t) {
        TrigPoly f = TrigPoly::constant({1.0, 0.0});
        for (std::size_t m = 0; m < tail_members_[t].size(); ++m) {
            const Complex w = 0.5 * st_.tail[t].a * tail_members_[t][m].eval(zeta);
            f.add(st_.tail[t].block.degrees[m], w);
            f.add(-st_.tail[t].block.degrees[m], std::conj(w));
        }
        out = multiply(out, f);
    }
    return out;
}

TrigPoly generalized_slice(const GeneralizedSphereState& state, const CVec& zeta) {
    return GeneralizedSphereEvaluatorHandle(state).slice(zeta);
}

double generalized_density_value(const GeneralizedSphereState& state, const CVec& zeta) {
    return GeneralizedSphereEvaluatorHandle(state).density(zeta);
}

std::vector<GeneralizedSphereCurveRow> generalized_singularity_sphere(
    const CoeffSpec& a, const CoeffSpec& b, std::size_t kappa_max, int n,
    const GeneralizedOptions& opt, std::size_t zeta_count, std::size_t grid_size) {
    std::vector<GeneralizedSphereCurveRow> rows;
    rows.push_back({0, 1.0, 0.0, 0.0});

    GeneralizedSphereState sa = make_generalized_sphere_state(n);
    GeneralizedSphereState sb = make_generalized_sphere_state(n);
    const BlockFactory factory =
        default_sphere_block_factory(n, opt.D, opt.block_trials, opt.seed, opt.delta_samples);

    const std::vector<CVec> zetas =
        sample_sphere(n, zeta_count, mix_seed(opt.seed, kStreamZeta, 998877));

    for (std::size_t k = 1; k <= kappa_max; ++k) {
        sphere_step(sa, a.coeff(k), opt, &factory, nullptr);
        sphere_step(sb, b.coeff(k), opt, nullptr, &sa.blocks.back());

        GeneralizedSphereEvaluatorHandle ea(sa), eb(sb);
        std::vector<double> aff, l1;
        aff.reserve(zetas.size());
        l1.reserve(zetas.size());
        for (const auto& zeta : zetas) {
            const auto va = evaluate_circle(ea.slice(zeta), grid_size);
            const auto vb = evaluate_circle(eb.slice(zeta), grid_size);
            aff.push_back(hellinger_affinity(va, vb));
            l1.push_back(l1_distance(va, vb));
        }
        GeneralizedSphereCurveRow row;
        row.kappa = k;
        double s = 0.0;
        for (double x : aff) s += x;
        row.mean_affinity = s / static_cast<double>(aff.size());
        s = 0.0;
        for (double x : l1) s += x;
        row.mean_l1 = s / static_cast<double>(l1.size());
        double ss = 0.0;
        for (double x : l1) ss += (x - row.mean_l1) * (x - row.mean_l1);
        row.stderr_l1 = l1.size() > 1 ? std::sqrt(ss / static_cast<double>(l1.size() - 1)) /
                                            std::sqrt(static_cast<double>(l1.size()))
                                      : 0.0;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace riesz
