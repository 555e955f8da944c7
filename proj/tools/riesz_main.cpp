// Command-line harness for the Riesz product experiments. Every stochastic
// command takes --seed and embeds it in the output; replays with identical
// flags are byte-identical.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "riesz/circle_riesz.hpp"
#include "riesz/generalized.hpp"
#include "riesz/json_io.hpp"
#include "riesz/rng.hpp"
#include "riesz/rw_sequence.hpp"
#include "riesz/sphere_riesz.hpp"

namespace {

using namespace riesz;

// --config <json> overrides matching flags after parsing
json maybe_config(const std::string& path) {
    if (path.empty()) return json::object();
    return load_json(path);
}

template <typename T>
void override_from(const json& cfg, const char* key, T& value) {
    if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

std::string replay_comment(const json& cfg) { return cfg.dump(); }

int cmd_circle_dichotomy(const std::string& config, std::string coeffs, long long base,
                         long long j1, std::size_t kappa_max, std::size_t grid, std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "lacunary-base", base);
    override_from(cfg, "j1", j1);
    override_from(cfg, "kappa-max", kappa_max);
    override_from(cfg, "grid", grid);
    override_from(cfg, "out", out);

    const CoeffSpec spec = CoeffSpec::parse(coeffs);
    const auto freqs = lacunary_frequencies(base, kappa_max, j1);
    const auto rows = dichotomy_curve(spec, freqs, kappa_max, grid);
    std::vector<std::vector<std::string>> text;
    for (const auto& r : rows) text.push_back(dichotomy_csv_row(r));
    const json replay{{"command", "circle-dichotomy"}, {"coeffs", coeffs},
                      {"lacunary-base", base},         {"j1", j1},
                      {"kappa-max", kappa_max},        {"grid", grid}};
    write_csv(out, replay_comment(replay), "kappa,l2_norm_sq,affinity,l1_distance", text);
    return 0;
}

int cmd_circle_peyriere(const std::string& config, std::string coeffs, std::string coeffs_b,
                        long long base, long long j1, std::size_t kappa_max, std::size_t grid,
                        std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "coeffs-b", coeffs_b);
    override_from(cfg, "lacunary-base", base);
    override_from(cfg, "j1", j1);
    override_from(cfg, "kappa-max", kappa_max);
    override_from(cfg, "grid", grid);
    override_from(cfg, "out", out);

    const auto freqs = lacunary_frequencies(base, kappa_max, j1);
    const auto rows = peyriere_curve(CoeffSpec::parse(coeffs), CoeffSpec::parse(coeffs_b), freqs,
                                     kappa_max, grid);
    std::vector<std::vector<std::string>> text;
    for (const auto& r : rows) text.push_back(peyriere_csv_row(r));
    const json replay{{"command", "circle-peyriere"}, {"coeffs", coeffs},
                      {"coeffs-b", coeffs_b},         {"lacunary-base", base},
                      {"j1", j1},                     {"kappa-max", kappa_max},
                      {"grid", grid}};
    write_csv(out, replay_comment(replay), "kappa,l2_norm_sq,affinity,l1_distance", text);
    return 0;
}

int cmd_rw_gen(const std::string& config, int n, int deg_max, int trials, std::uint64_t seed,
               double floor, std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "n", n);
    override_from(cfg, "deg-max", deg_max);
    override_from(cfg, "trials", trials);
    override_from(cfg, "seed", seed);
    override_from(cfg, "floor", floor);
    override_from(cfg, "out", out);

    if (deg_max > default_rw_degree_cap(n))
        std::cerr << "note: deg-max " << deg_max << " exceeds the default cap "
                  << default_rw_degree_cap(n) << " for n=" << n << "\n";
    const RWSequence rw = build_rw_sequence(n, deg_max, trials, seed, floor);
    save_json(rw_sequence_to_json(rw), out);
    std::cout << "delta " << rw.delta << " over degrees 1.." << deg_max << "\n";
    return 0;
}

int cmd_sphere_riesz(const std::string& config, std::string rw_path, std::string triple_path,
                     std::string coeffs, std::string coeffs_b, long long base,
                     std::size_t kappa_max, std::size_t zeta_samples, std::size_t grid,
                     std::uint64_t seed, std::string degree_map, std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "rw", rw_path);
    override_from(cfg, "triple", triple_path);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "coeffs-b", coeffs_b);
    override_from(cfg, "lacunary-base", base);
    override_from(cfg, "kappa-max", kappa_max);
    override_from(cfg, "zeta-samples", zeta_samples);
    override_from(cfg, "grid", grid);
    override_from(cfg, "seed", seed);
    override_from(cfg, "degree-map", degree_map);
    override_from(cfg, "out", out);

    // with a second coefficient sequence this becomes the scrambled-slice
    // singularity experiment; without one it reports exact product
    // diagnostics per kappa
    if (!coeffs_b.empty()) {
        const RWSequence rw = rw_sequence_from_json(load_json(rw_path));
        SingularityParams params;
        params.seed = seed;
        params.kappa_max = kappa_max;
        params.zeta_count = zeta_samples;
        params.grid_size = grid;
        params.degree_map =
            degree_map == "const" ? DegreeMap::TopConstant : DegreeMap::Cycle;
        const auto freqs = lacunary_frequencies(base, kappa_max);
        const auto result = mutual_singularity_experiment(
            rw, freqs, CoeffSpec::parse(coeffs), CoeffSpec::parse(coeffs_b), params);
        if (result.l2_warning)
            std::cerr << "warning: a - b looks square-summable, no separation expected\n";
        std::vector<std::vector<std::string>> text;
        for (const auto& r : result.rows) text.push_back(singularity_csv_row(r));
        const json replay{{"command", "sphere-riesz"}, {"seed", seed},
                          {"coeffs", coeffs},          {"coeffs-b", coeffs_b},
                          {"kappa-max", kappa_max},    {"zeta-samples", zeta_samples},
                          {"grid", grid},              {"degree-map", degree_map},
                          {"lacunary-base", base}};
        write_csv(out, replay_comment(replay),
                  "kappa,mean_affinity,mean_l1,stderr,median_scramble_sum", text);
        return 0;
    }

    RieszTriple t;
    if (!triple_path.empty()) {
        t = load_riesz_triple(triple_path);
        kappa_max = std::min(kappa_max, t.size());
    } else {
        RWSequence rw = rw_sequence_from_json(load_json(rw_path));
        std::vector<long long> freqs;
        for (long long j = 1; j <= rw.max_degree() && freqs.size() < kappa_max; j *= base)
            freqs.push_back(j);
        kappa_max = freqs.size();
        t = make_triple(std::move(rw), std::move(freqs), CoeffSpec::parse(coeffs));
    }

    json steps = json::array();
    const auto zetas = sample_sphere(t.rw.n, zeta_samples, mix_seed(seed, kStreamZeta, 0));
    for (std::size_t kappa = 0; kappa <= kappa_max; ++kappa) {
        const SpherePoly p = partial_product_sphere(t, kappa);
        const Complex mass = integrate_sphere(p);
        double min_v = std::numeric_limits<double>::infinity();
        double coherence = 0.0;
        const PolyEvaluator eval(p);
        for (std::size_t i = 0; i < zetas.size(); ++i) {
            min_v = std::min(min_v, eval.eval(zetas[i]).real());
            const TrigPoly via_sphere = slice_restrict(p, zetas[i]);
            const TrigPoly via_circle = slice_product(t, zetas[i], kappa);
            const TrigPoly diff = subtract(via_sphere, via_circle);
            for (const auto& [f, c] : diff.coeffs) coherence = std::max(coherence, std::abs(c));
        }
        steps.push_back({{"kappa", kappa},
                         {"terms", p.term_count()},
                         {"mass_re", mass.real()},
                         {"mass_im", mass.imag()},
                         {"min_sampled_value", min_v},
                         {"slice_coherence_max_dev", coherence}});
    }
    save_json(json{{"seed", seed}, {"command", "sphere-riesz"}, {"steps", steps}}, out);
    return 0;
}

int cmd_scramble(const std::string& config, std::string rw_path, std::string coeffs, std::size_t K,
                 std::size_t zeta_samples, std::uint64_t seed, std::string degree_map,
                 std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "rw", rw_path);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "K", K);
    override_from(cfg, "zeta-samples", zeta_samples);
    override_from(cfg, "seed", seed);
    override_from(cfg, "degree-map", degree_map);
    override_from(cfg, "out", out);

    const RWSequence rw = rw_sequence_from_json(load_json(rw_path));
    const DegreeMap mode = degree_map == "cycle" ? DegreeMap::Cycle : DegreeMap::TopConstant;
    const auto degrees = make_degree_map(rw, K, mode);
    const auto c = CoeffSpec::parse(coeffs).prefix(K);
    const auto unitaries = haar_sequence(rw.n, K, seed);
    const auto zetas = sample_sphere(rw.n, zeta_samples, mix_seed(seed, kStreamZeta, 0));
    const ScramblingResult res = scrambling_experiment(rw, degrees, c, unitaries, zetas, K);

    std::vector<std::vector<std::string>> text;
    for (std::size_t z = 0; z < res.sums.size(); ++z)
        for (std::size_t k = 0; k < K; ++k)
            text.push_back({std::to_string(z), std::to_string(k + 1),
                            format_double(res.sums[z][k])});
    const json replay{{"command", "scramble"}, {"seed", seed},
                      {"coeffs", coeffs},      {"K", K},
                      {"zeta-samples", zeta_samples}, {"degree-map", degree_map}};
    write_csv(out, replay_comment(replay), "zeta_index,k,scramble_sum", text);
    return 0;
}

int cmd_generalized(const std::string& config, int n, std::string coeffs, std::string coeffs_b,
                    std::size_t kappa_max, int D, std::uint64_t seed, std::size_t zeta_samples,
                    std::size_t grid, std::string out, std::string curve_out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "n", n);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "coeffs-b", coeffs_b);
    override_from(cfg, "kappa-max", kappa_max);
    override_from(cfg, "D", D);
    override_from(cfg, "seed", seed);
    override_from(cfg, "zeta-samples", zeta_samples);
    override_from(cfg, "grid", grid);
    override_from(cfg, "out", out);
    override_from(cfg, "curve-out", curve_out);

    GeneralizedOptions opt;
    opt.D = D > 0 ? D : (n == 1 ? 1 : 3);
    opt.seed = seed;
    const CoeffSpec a = CoeffSpec::parse(coeffs);
    const CoeffSpec b = CoeffSpec::parse(coeffs_b);

    if (n == 1) {
        const GeneralizedCircleState st = generalized_construct_circle(a, kappa_max, opt);
        json audit = audit_to_json(st.audit);
        audit["seed"] = seed;
        audit["command"] = "generalized";
        save_json(audit, out);
        if (!curve_out.empty()) {
            const auto rows = generalized_singularity_circle(a, b, kappa_max, opt);
            std::vector<std::vector<std::string>> text;
            for (const auto& r : rows)
                text.push_back({std::to_string(r.kappa), format_double(r.l2_norm_sq),
                                format_double(r.affinity), format_double(r.l1)});
            const json replay{{"command", "generalized"}, {"seed", seed}, {"coeffs", coeffs},
                              {"coeffs-b", coeffs_b},     {"n", n},       {"kappa-max", kappa_max}};
            write_csv(curve_out, replay_comment(replay), "kappa,l2_norm_sq,affinity,l1_distance",
                      text);
        }
        return 0;
    }

    const GeneralizedSphereState st = generalized_construct_sphere(a, kappa_max, n, opt);
    json audit = audit_to_json(st.audit);
    audit["seed"] = seed;
    audit["command"] = "generalized";
    save_json(audit, out);
    if (!curve_out.empty()) {
        const auto rows =
            generalized_singularity_sphere(a, b, kappa_max, n, opt, zeta_samples, grid);
        std::vector<std::vector<std::string>> text;
        for (const auto& r : rows)
            text.push_back({std::to_string(r.kappa), format_double(r.mean_affinity),
                            format_double(r.mean_l1), format_double(r.stderr_l1)});
        const json replay{{"command", "generalized"}, {"seed", seed}, {"coeffs", coeffs},
                          {"coeffs-b", coeffs_b},     {"n", n},       {"kappa-max", kappa_max},
                          {"zeta-samples", zeta_samples}, {"grid", grid}};
        write_csv(curve_out, replay_comment(replay), "kappa,mean_affinity,mean_l1,stderr", text);
    }
    return 0;
}

int cmd_slice_check(const std::string& config, int n, std::size_t kappa, std::string coeffs,
                    long long base, std::size_t count, int max_degree, std::uint64_t seed,
                    std::string rw_path, std::string out) {
    const json cfg = maybe_config(config);
    override_from(cfg, "n", n);
    override_from(cfg, "kappa", kappa);
    override_from(cfg, "coeffs", coeffs);
    override_from(cfg, "lacunary-base", base);
    override_from(cfg, "count", count);
    override_from(cfg, "max-degree", max_degree);
    override_from(cfg, "seed", seed);
    override_from(cfg, "rw", rw_path);
    override_from(cfg, "out", out);

    RWSequence rw;
    if (!rw_path.empty()) {
        rw = rw_sequence_from_json(load_json(rw_path));
        n = rw.n;
    } else {
        std::vector<long long> freqs = lacunary_frequencies(base, kappa);
        rw = build_rw_sequence(n, static_cast<int>(freqs.back()), 8, seed);
    }
    std::vector<long long> freqs = lacunary_frequencies(base, kappa);
    const RieszTriple t = make_triple(rw, freqs, CoeffSpec::parse(coeffs));

    json identity = json::array(), decomposition = json::array();
    double max_res = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const SpherePoly f = random_poly(n, max_degree, mix_seed(seed, kStreamSigns, i));
        const double r1 = slice_integral_residual_exact(f);
        const double r2 = slice_decomposition_check(t, kappa, f);
        identity.push_back(r1);
        decomposition.push_back(r2);
        max_res = std::max({max_res, r1, r2});
    }
    save_json(json{{"seed", seed},
                   {"command", "slice-check"},
                   {"identity_residuals", identity},
                   {"decomposition_residuals", decomposition},
                   {"max_residual", max_res}},
              out);
    std::cout << "max residual " << max_res << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riesz products on the circle and the unit sphere of C^n"};
    app.require_subcommand(1);

    std::string config, coeffs = "const:0.5", coeffs_b = "const:0", out = "out.csv";
    std::string rw_path, triple_path, degree_map = "const", curve_out;
    long long base = 3, j1 = 1;
    std::size_t kappa_max = 18, grid = 65536, zeta_samples = 100, K = 50, count = 20;
    std::size_t kappa = 3;
    int n = 2, deg_max = 16, trials = 64, D = 0, max_degree = 6;
    std::uint64_t seed = 1;
    double floor = 0.0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config, "JSON file whose keys override flags");
    };

    auto* dich = app.add_subcommand("circle-dichotomy", "L2 norms and affinity vs Lebesgue");
    dich->add_option("--coeffs", coeffs)->required();
    dich->add_option("--lacunary-base", base);
    dich->add_option("--j1", j1);
    dich->add_option("--kappa-max", kappa_max);
    dich->add_option("--grid", grid);
    dich->add_option("--out", out)->required();
    add_common(dich);

    auto* pey = app.add_subcommand("circle-peyriere", "distance between two circle products");
    pey->add_option("--coeffs", coeffs)->required();
    pey->add_option("--coeffs-b", coeffs_b)->required();
    pey->add_option("--lacunary-base", base);
    pey->add_option("--j1", j1);
    pey->add_option("--kappa-max", kappa_max);
    pey->add_option("--grid", grid);
    pey->add_option("--out", out)->required();
    add_common(pey);

    auto* rwg = app.add_subcommand("rw-gen", "build and certify an RW sequence");
    rwg->add_option("--n", n);
    rwg->add_option("--deg-max", deg_max);
    rwg->add_option("--trials", trials);
    rwg->add_option("--seed", seed)->required();
    rwg->add_option("--floor", floor);
    rwg->add_option("--out", out)->required();
    add_common(rwg);

    std::string coeffs_b_sph, degree_map_sph = "cycle";
    auto* sph = app.add_subcommand("sphere-riesz",
                                   "partial products and slice coherence; with --coeffs-b, the "
                                   "scrambled-slice singularity experiment");
    sph->add_option("--rw", rw_path);
    sph->add_option("--triple", triple_path);
    sph->add_option("--coeffs", coeffs);
    sph->add_option("--coeffs-b", coeffs_b_sph);
    sph->add_option("--lacunary-base", base);
    sph->add_option("--kappa-max", kappa_max);
    sph->add_option("--zeta-samples", zeta_samples);
    sph->add_option("--grid", grid);
    sph->add_option("--degree-map", degree_map_sph)->check(CLI::IsMember({"const", "cycle"}));
    sph->add_option("--seed", seed)->required();
    sph->add_option("--out", out)->required();
    add_common(sph);

    auto* scr = app.add_subcommand("scramble", "scrambling partial sums S_K(zeta)");
    scr->add_option("--rw", rw_path)->required();
    scr->add_option("--coeffs", coeffs);
    scr->add_option("--K", K);
    scr->add_option("--zeta-samples", zeta_samples);
    scr->add_option("--seed", seed)->required();
    scr->add_option("--degree-map", degree_map)->check(CLI::IsMember({"const", "cycle"}));
    scr->add_option("--out", out)->required();
    add_common(scr);

    auto* gen = app.add_subcommand("generalized", "inductive generalized Riesz products");
    gen->add_option("--n", n)->description("1 selects the circle specialization");
    gen->add_option("--coeffs", coeffs)->required();
    gen->add_option("--coeffs-b", coeffs_b);
    gen->add_option("--kappa-max", kappa_max);
    gen->add_option("--D", D);
    gen->add_option("--seed", seed)->required();
    gen->add_option("--zeta-samples", zeta_samples);
    gen->add_option("--grid", grid);
    gen->add_option("--out", out)->required();
    gen->add_option("--curve-out", curve_out);
    add_common(gen);

    auto* slc = app.add_subcommand("slice-check", "slice decomposition residuals");
    slc->add_option("--n", n);
    slc->add_option("--kappa", kappa);
    slc->add_option("--coeffs", coeffs);
    slc->add_option("--lacunary-base", base);
    slc->add_option("--count", count);
    slc->add_option("--max-degree", max_degree);
    slc->add_option("--seed", seed)->required();
    slc->add_option("--rw", rw_path);
    slc->add_option("--out", out)->required();
    add_common(slc);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dich->parsed())
            return cmd_circle_dichotomy(config, coeffs, base, j1, kappa_max, grid, out);
        if (pey->parsed())
            return cmd_circle_peyriere(config, coeffs, coeffs_b, base, j1, kappa_max, grid, out);
        if (rwg->parsed()) return cmd_rw_gen(config, n, deg_max, trials, seed, floor, out);
        if (sph->parsed())
            return cmd_sphere_riesz(config, rw_path, triple_path, coeffs, coeffs_b_sph, base,
                                    kappa_max, zeta_samples, grid, seed, degree_map_sph, out);
        if (scr->parsed())
            return cmd_scramble(config, rw_path, coeffs, K, zeta_samples, seed, degree_map, out);
        if (gen->parsed())
            return cmd_generalized(config, n, coeffs, coeffs_b, kappa_max, D, seed, zeta_samples,
                                   grid, out, curve_out);
        if (slc->parsed())
            return cmd_slice_check(config, n, kappa, coeffs, base, count, max_degree, seed,
                                   rw_path, out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
