// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.
//
// Thresholds marked "frozen" were fixed from oracle runs at seed 2026 and are
// asserted verbatim here; run dates and values are recorded next to each
// check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "riesz/circle_riesz.hpp"
#include "riesz/generalized.hpp"
#include "riesz/json_io.hpp"
#include "riesz/rng.hpp"
#include "riesz/rw_sequence.hpp"
#include "riesz/sphere_riesz.hpp"

using namespace riesz;
using clk = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kSeed = 2026;

int failures = 0;

struct Criterion {
    std::string name;
    bool ok = true;
    std::string detail;

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }

    void finish(double seconds) {
        std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), seconds,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

double paired_growth_z(const std::vector<double>& early, const std::vector<double>& late,
                       double* diff_out) {
    double mean = 0.0;
    for (std::size_t i = 0; i < early.size(); ++i) mean += late[i] - early[i];
    mean /= static_cast<double>(early.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < early.size(); ++i) {
        const double d = late[i] - early[i] - mean;
        ss += d * d;
    }
    const double se = std::sqrt(ss / static_cast<double>(early.size() - 1)) /
                      std::sqrt(static_cast<double>(early.size()));
    if (diff_out) *diff_out = mean;
    return se > 0.0 ? mean / se : (mean > 0.0 ? 1e9 : 0.0);
}

std::string coeff_list_minus_geometric(double a, int count) {
    std::string out = "list:";
    for (int k = 1; k <= count; ++k) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", a - std::pow(2.0, -k));
        out += buf;
        if (k < count) out += ",";
    }
    return out;
}

// 1. Parseval identity: l2_norm_sq of the kappa-partial equals 1.125^kappa
// to relative 1e-12 for a = 0.5, J = (1, 3, 9, ...), kappa = 1..12.
void criterion_1() {
    Criterion c{"1. Parseval identity (circle), kappa 1..12, rel err <= 1e-12, < 5 s"};
    const auto t0 = clk::now();
    const AdmissiblePair pair =
        AdmissiblePair::from_spec(lacunary_frequencies(3, 12), CoeffSpec::parse("const:0.5"));
    for (std::size_t kappa = 1; kappa <= 12; ++kappa) {
        const double got = l2_norm_sq_circle(partial_product_circle(pair, kappa));
        double want = 1.0;
        for (std::size_t k = 0; k < kappa; ++k) want *= 1.125;
        c.require(std::abs(got - want) / want <= 1e-12,
                  "kappa " + std::to_string(kappa) + " rel err " +
                      fmt(std::abs(got - want) / want));
    }
    const double secs = std::chrono::duration<double>(clk::now() - t0).count();
    c.require(secs < 5.0, "runtime " + fmt(secs) + "s over budget");
    c.finish(secs);
}

// 2. Dichotomy decay: a = 0.9, grid 2^16, pointwise products. Affinity vs
// Lebesgue strictly decreasing over kappa in {5,...,40}, final < 0.2.
void criterion_2() {
    Criterion c{"2. Dichotomy (ii) decay, a=0.9, affinity(40) < 0.2, < 60 s"};
    const auto t0 = clk::now();
    const auto rows =
        dichotomy_curve(CoeffSpec::parse("const:0.9"), lacunary_frequencies(3, 40), 40, 1u << 16);
    for (std::size_t k = 10; k <= 40; k += 5)
        c.require(rows[k].affinity < rows[k - 5].affinity,
                  "affinity rose between kappa " + std::to_string(k - 5) + " and " +
                      std::to_string(k));
    c.require(rows[40].affinity < 0.2, "affinity(40) = " + fmt(rows[40].affinity));
    const double secs = std::chrono::duration<double>(clk::now() - t0).count();
    c.require(secs < 60.0, "runtime " + fmt(secs) + "s over budget");
    c.detail = "affinity(40) = " + fmt(rows[40].affinity) + (c.detail.empty() ? "" : "; ") +
               c.detail;
    c.finish(secs);
}

// 3. Peyriere separation: a = 0.5 vs b = -0.5 rises monotonically within
// 3 stderr of quadrature noise and exceeds 1.5 by kappa = 40; the control
// a_k - b_k = 2^-k stays below 1.0 throughout.
void criterion_3() {
    Criterion c{"3. Peyriere separation, l1(40) > 1.5, l2-control < 1.0"};
    const auto t0 = clk::now();
    const std::size_t grid = 1u << 16;
    const auto freqs = lacunary_frequencies(3, 40);

    const AdmissiblePair pa = AdmissiblePair::from_spec(freqs, CoeffSpec::parse("const:0.5"));
    const AdmissiblePair pb = AdmissiblePair::from_spec(freqs, CoeffSpec::parse("const:-0.5"));
    CirclePartialEvaluator ea(pa, grid), eb(pb, grid);
    double prev_l1 = 0.0, prev_se = 0.0, final_l1 = 0.0;
    for (std::size_t kappa = 1; kappa <= 40; ++kappa) {
        ea.advance_to(kappa);
        eb.advance_to(kappa);
        double mean = 0.0, m2 = 0.0;
        for (std::size_t m = 0; m < grid; ++m) {
            const double d = std::abs(ea.values()[m] - eb.values()[m]);
            mean += d;
            m2 += d * d;
        }
        mean /= static_cast<double>(grid);
        const double var = m2 / static_cast<double>(grid) - mean * mean;
        const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(grid));
        c.require(mean >= prev_l1 - 3.0 * (se + prev_se),
                  "l1 dropped past noise at kappa " + std::to_string(kappa));
        prev_l1 = mean;
        prev_se = se;
        final_l1 = mean;
    }
    c.require(final_l1 > 1.5, "l1(40) = " + fmt(final_l1));

    const auto control = peyriere_curve(CoeffSpec::parse("const:0.5"),
                                        CoeffSpec::parse(coeff_list_minus_geometric(0.5, 40)),
                                        freqs, 40, grid);
    double control_max = 0.0;
    for (const auto& r : control) control_max = std::max(control_max, r.l1);
    c.require(control_max < 1.0, "control l1 reached " + fmt(control_max));

    c.detail = "l1(40) = " + fmt(final_l1) + ", control max = " + fmt(control_max) +
               (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 4. Slice decomposition exactness: n = 2, kappa = 3, twenty random test
// polynomials of total degree <= 2 j_3 = 18, residual <= 1e-9 in exact mode.
void criterion_4() {
    Criterion c{"4. Slice decomposition exactness, residual <= 1e-9, < 30 s"};
    const auto t0 = clk::now();
    const RWSequence rw = build_rw_sequence_for_degrees(2, {1, 3, 9}, 64, kSeed);
    const RieszTriple t = make_triple(rw, {1, 3, 9}, CoeffSpec::parse("const:0.5"));
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const SpherePoly f = random_poly(2, 18, mix_seed(kSeed, kStreamSigns, 40 + s));
        worst = std::max(worst, slice_decomposition_check(t, 3, f));
    }
    c.require(worst <= 1e-9, "worst residual " + fmt(worst));
    c.detail = "worst residual = " + fmt(worst) + (c.detail.empty() ? "" : "; ") + c.detail;
    const double secs = std::chrono::duration<double>(clk::now() - t0).count();
    c.require(secs < 30.0, "runtime " + fmt(secs) + "s over budget");
    c.finish(secs);
}

// 5. Moment stabilization: f of total degree 1, J = (2, 6, 18, 54, 162) so
// j_1 = 2 > deg f; drift over kappa in [1, 5] at most 1e-10. The metrics are
// exact, so the drift is a hard zero up to rounding.
void criterion_5() {
    Criterion c{"5. Moment stabilization exactness, drift <= 1e-10"};
    const auto t0 = clk::now();
    const std::vector<int> degrees{2, 6, 18, 54, 162};
    const RWSequence rw = build_rw_sequence_for_degrees(2, degrees, 16, kSeed);
    const RieszTriple t =
        make_triple(rw, {2, 6, 18, 54, 162}, CoeffSpec::parse("const:0.7"));
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 5; ++s) {
        const SpherePoly f = random_poly(2, 1, mix_seed(kSeed, kStreamSigns, 60 + s));
        const std::size_t kappa0 = stabilization_threshold(t, f);
        c.require(t.freqs[kappa0 - 1] > f.total_degree(), "threshold not past deg f");
        worst = std::max(worst, moment_stabilization_check(t, f, kappa0, kappa0 + 4));
    }
    c.require(worst <= 1e-10, "drift " + fmt(worst));
    c.detail = "max drift = " + fmt(worst) + (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 6. RW certification: degrees 1..16 at 64 trials, seed 2026. Frozen floor
// 0.10 from the oracle run of 2026-08-11 (observed sequence delta 0.106321).
// The z1^j family is rejected: its exact deltas 1/sqrt(j+1) fall below the
// floor (and below any fixed floor eventually).
void criterion_6() {
    Criterion c{"6. RW certification, delta >= 0.10 (frozen), monomial family rejected"};
    const auto t0 = clk::now();
    const RWSequence rw = build_rw_sequence(2, 16, 64, kSeed);
    for (const auto& m : rw.members) {
        c.require(m.sup_upper <= 1.0 + 1e-12, "certified sup above 1");
        c.require(std::abs(m.l2_norm - std::sqrt(norm_sq_sphere(m.poly))) <= 1e-10,
                  "recorded L2 norm is not the exact norm");
        c.require(m.l2_norm >= m.delta - 1e-15, "L2 norm below achieved delta");
    }
    c.require(rw.delta >= 0.10, "sequence delta " + fmt(rw.delta) + " under the frozen floor");

    bool rejected = false;
    for (int j = 1; j <= 140 && !rejected; j *= 2) {
        const SpherePoly cand = SpherePoly::monomial(2, {j, 0}, {0, 0}, {1.0, 0.0});
        const RWMember m = certify_candidate(cand, 32, 4, kSeed);
        c.require(std::abs(m.delta - 1.0 / std::sqrt(j + 1.0)) <= 1e-12,
                  "monomial delta is not 1/sqrt(j+1)");
        if (m.delta < 0.10) rejected = true;
    }
    c.require(rejected, "z1^j never fell under the floor");
    c.detail = "delta = " + fmt(rw.delta) + (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 7. Scrambling growth: a = 0.7, Haar unitaries, 100 zetas, K = 50, degree
// map constant at 16. S_K nondecreasing; median S_50 within the frozen
// bracket [0.3, 3] x (0.49 delta^2 50) around the Haar mean (oracle of
// 2026-08-11: median 0.274023, center 0.276952).
void criterion_7() {
    Criterion c{"7. Scrambling growth, median S_50 in the frozen Haar bracket"};
    const auto t0 = clk::now();
    const RWSequence rw = build_rw_sequence(2, 16, 64, kSeed);
    const std::size_t K = 50;
    const auto degrees = make_degree_map(rw, K, DegreeMap::TopConstant);
    const std::vector<Complex> coeffs(K, {0.7, 0.0});
    const auto unitaries = haar_sequence(2, K, kSeed);
    const auto zetas = sample_sphere(2, 100, mix_seed(kSeed, kStreamZeta, 0));
    const auto res = scrambling_experiment(rw, degrees, coeffs, unitaries, zetas, K);

    for (const auto& sums : res.sums)
        for (std::size_t k = 1; k < K; ++k)
            c.require(sums[k] >= sums[k - 1], "partial sum decreased");

    const double delta = rw.by_degree(16).delta;
    const double center = 0.49 * delta * delta * 50.0;
    const double median = res.median_by_k[K - 1];
    c.require(median >= 0.3 * center && median <= 3.0 * center,
              "median " + fmt(median) + " outside [0.3, 3] x " + fmt(center));
    c.detail = "median S_50 = " + fmt(median) + ", center = " + fmt(center) +
               (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 8. Sphere mutual singularity trend: a = 0.8, b = -0.8 on scrambled slices,
// 200 zetas, kappa = 30. meanL1(30) exceeds meanL1(5) by >= 3 paired stderr
// and exceeds 1.0; the l2-difference control shows no such growth (frozen:
// growth < 0.05 and meanL1(30) < 1.0; oracle 2026-08-11 saw 1.539 vs 0.161).
void criterion_8() {
    Criterion c{"8. Sphere mutual singularity trend, meanL1(30) > 1.0 with flat control"};
    const auto t0 = clk::now();
    const RWSequence rw = build_rw_sequence(2, 4, 64, kSeed);
    const auto freqs = lacunary_frequencies(3, 30);
    SingularityParams params;
    params.seed = kSeed;
    params.kappa_max = 30;
    params.zeta_count = 200;
    params.grid_size = 1u << 12;
    params.checkpoints = {5, 10, 15, 20, 25, 30};
    params.degree_map = DegreeMap::Cycle;

    const auto split = mutual_singularity_experiment(
        rw, freqs, CoeffSpec::parse("const:0.8"), CoeffSpec::parse("const:-0.8"), params);
    c.require(!split.l2_warning, "split run flagged as square-summable");
    double growth = 0.0;
    const double z = paired_growth_z(split.l1_by_checkpoint.front(),
                                     split.l1_by_checkpoint.back(), &growth);
    c.require(z >= 3.0, "growth z-score " + fmt(z));
    c.require(split.rows.back().mean_l1 > 1.0,
              "meanL1(30) = " + fmt(split.rows.back().mean_l1));
    c.require(split.rows.back().mean_affinity < split.rows.front().mean_affinity,
              "affinity did not fall from kappa 5 to 30");

    const auto control = mutual_singularity_experiment(
        rw, freqs, CoeffSpec::parse("const:0.8"),
        CoeffSpec::parse(coeff_list_minus_geometric(0.8, 30)), params);
    c.require(control.l2_warning, "control run not flagged as square-summable");
    double cgrowth = 0.0;
    paired_growth_z(control.l1_by_checkpoint.front(), control.l1_by_checkpoint.back(), &cgrowth);
    c.require(cgrowth < 0.05, "control growth " + fmt(cgrowth));
    c.require(control.rows.back().mean_l1 < 1.0,
              "control meanL1(30) = " + fmt(control.rows.back().mean_l1));

    c.detail = "meanL1(30) = " + fmt(split.rows.back().mean_l1) + " (z = " + fmt(z) +
               "), control = " + fmt(control.rows.back().mean_l1) +
               (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 9. Generalized constructor audit: circle a = 0.9, kappa = 8 with exact
// invariants; sphere n = 2, D = 3, kappa = 4 with the same invariants plus
// sampled block delta > 0; affinity vs Lebesgue decreases across kappa in
// the b = 0 regime.
void criterion_9() {
    Criterion c{"9. Generalized constructor audit, circle kappa=8 and sphere kappa=4"};
    const auto t0 = clk::now();

    GeneralizedOptions copt;
    copt.seed = kSeed;
    const auto circ = generalized_construct_circle(CoeffSpec::parse("const:0.9"), 8, copt);
    long long prev = 0;
    for (const auto& a : circ.audit) {
        c.require(a.mass == 1.0, "circle mass drifted");
        c.require(a.disjoint && a.check_mode == "exact-set", "circle disjointness not exact");
        c.require(a.min_sample >= -1e-10, "circle negativity");
        if (a.k > 1) c.require(a.L == 2 * prev + 2, "circle L != 2 deg + 2");
        prev = a.degree;
    }
    const auto ccurve = generalized_singularity_circle(CoeffSpec::parse("const:0.9"),
                                                       CoeffSpec::parse("const:0"), 8, copt);
    for (std::size_t k = 1; k < ccurve.size(); ++k)
        c.require(ccurve[k].affinity < ccurve[k - 1].affinity,
                  "circle affinity vs Lebesgue not decreasing at kappa " + std::to_string(k));

    GeneralizedOptions sopt;
    sopt.D = 3;
    sopt.seed = kSeed;
    const auto sph = generalized_construct_sphere(CoeffSpec::parse("const:0.9"), 4, 2, sopt);
    prev = 0;
    for (const auto& a : sph.audit) {
        c.require(std::abs(a.mass - 1.0) <= 1e-12, "sphere mass drifted");
        c.require(a.disjoint, "sphere disjointness failed");
        c.require(a.min_sample >= -1e-10, "sphere negativity");
        c.require(a.block_delta > 0.0, "sphere block delta not positive");
        if (a.k > 1) c.require(a.L == 2 * prev + 2, "sphere L != 2 deg + 2");
        prev = a.degree;
    }
    const auto scurve = generalized_singularity_sphere(CoeffSpec::parse("const:0.9"),
                                                       CoeffSpec::parse("const:0"), 4, 2, sopt,
                                                       64, 1u << 13);
    for (std::size_t k = 1; k < scurve.size(); ++k)
        c.require(scurve[k].mean_affinity < scurve[k - 1].mean_affinity,
                  "sphere affinity vs Lebesgue not decreasing at kappa " + std::to_string(k));

    c.detail = "circle affinity(8) = " + fmt(ccurve.back().affinity) +
               ", sphere affinity(4) = " + fmt(scurve.back().mean_affinity) +
               (c.detail.empty() ? "" : "; ") + c.detail;
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

// 10. Determinism: stochastic CLI commands repeated with the same seed and
// flags produce byte-identical output files.
void criterion_10(const std::string& cli, const std::filesystem::path& workdir) {
    Criterion c{"10. Determinism: repeated CLI runs are byte-identical"};
    const auto t0 = clk::now();
    if (cli.empty()) {
        c.require(false, "no --cli path supplied");
        c.finish(0.0);
        return;
    }
    std::filesystem::create_directories(workdir);

    auto run = [&](const std::string& args) {
        const std::string cmd = cli + " " + args + " > /dev/null 2>&1";
        return std::system(cmd.c_str()) == 0;
    };
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto same_twice = [&](const std::string& args_base, const std::string& out_flag,
                          const std::string& name) {
        const auto p1 = workdir / (name + ".1");
        const auto p2 = workdir / (name + ".2");
        c.require(run(args_base + " " + out_flag + " " + p1.string()), name + " run 1 failed");
        c.require(run(args_base + " " + out_flag + " " + p2.string()), name + " run 2 failed");
        const std::string b1 = slurp(p1), b2 = slurp(p2);
        c.require(!b1.empty() && b1 == b2, name + " runs differ");
        return p1;
    };

    const auto rw_path =
        same_twice("rw-gen --n 2 --deg-max 6 --trials 16 --seed 9", "--out", "rw.json");
    same_twice("scramble --rw " + rw_path.string() +
                   " --coeffs const:0.7 --K 20 --zeta-samples 20 --seed 5 --degree-map const",
               "--out", "scramble.csv");
    same_twice("sphere-riesz --rw " + rw_path.string() +
                   " --coeffs const:0.5 --kappa-max 2 --zeta-samples 16 --seed 8",
               "--out", "sphere.json");
    same_twice("sphere-riesz --rw " + rw_path.string() +
                   " --coeffs const:0.8 --coeffs-b const:-0.8 --kappa-max 8 "
                   "--zeta-samples 16 --grid 1024 --seed 8",
               "--out", "singularity.csv");
    same_twice("generalized --n 1 --coeffs const:0.9 --kappa-max 5 --seed 3", "--out",
               "gen_circle.json");
    same_twice("generalized --n 2 --coeffs const:0.8 --kappa-max 2 --D 2 --seed 3", "--out",
               "gen_sphere.json");
    same_twice("circle-dichotomy --coeffs const:0.9 --kappa-max 10 --grid 4096", "--out",
               "dich.csv");

    // a json config overriding a flag replays the flag-level run exactly
    {
        const auto cfg_path = workdir / "override.json";
        std::ofstream(cfg_path) << "{\"kappa-max\": 10}\n";
        const auto direct = workdir / "direct.csv";
        const auto via_cfg = workdir / "via_cfg.csv";
        c.require(run("circle-dichotomy --coeffs const:0.9 --kappa-max 10 --grid 4096 --out " +
                      direct.string()),
                  "config baseline run failed");
        c.require(run("circle-dichotomy --coeffs const:0.9 --kappa-max 5 --grid 4096 --config " +
                      cfg_path.string() + " --out " + via_cfg.string()),
                  "config override run failed");
        c.require(slurp(direct) == slurp(via_cfg), "config override diverged from flags");
    }
    c.finish(std::chrono::duration<double>(clk::now() - t0).count());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::filesystem::path workdir = std::filesystem::temp_directory_path() / "riesz_acceptance";
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") cli = argv[i + 1];
        if (std::string(argv[i]) == "--workdir") workdir = argv[i + 1];
    }

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(cli, workdir);

    if (failures == 0)
        std::printf("all acceptance criteria passed\n");
    else
        std::printf("%d acceptance criteria FAILED\n", failures);
    return failures;
}
