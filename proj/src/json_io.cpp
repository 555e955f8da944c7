#include "riesz/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "riesz/coeff_spec.hpp"

namespace riesz {

json trig_poly_to_json(const TrigPoly& p) {
    std::vector<std::pair<long long, Complex>> entries(p.coeffs.begin(), p.coeffs.end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json freqs = json::array();
    for (const auto& [f, c] : entries)
        freqs.push_back({{"f", f}, {"re", c.real()}, {"im", c.imag()}});
    return json{{"freqs", freqs}};
}

TrigPoly trig_poly_from_json(const json& j) {
    TrigPoly p;
    for (const auto& e : j.at("freqs"))
        p.add(e.at("f").get<long long>(), {e.at("re").get<double>(), e.at("im").get<double>()});
    return p;
}

json sphere_poly_to_json(const SpherePoly& p) {
    std::vector<std::pair<std::uint64_t, Complex>> entries(p.terms.begin(), p.terms.end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    json terms = json::array();
    int a[8], b[8];
    for (const auto& [key, c] : entries) {
        p.decode(key, a, b);
        json alpha = json::array(), beta = json::array();
        for (int i = 0; i < p.n; ++i) {
            alpha.push_back(a[i]);
            beta.push_back(b[i]);
        }
        terms.push_back({{"alpha", alpha}, {"beta", beta}, {"re", c.real()}, {"im", c.imag()}});
    }
    return json{{"n", p.n}, {"terms", terms}};
}

SpherePoly sphere_poly_from_json(const json& j) {
    SpherePoly p(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        MultiIndex alpha = t.at("alpha").get<MultiIndex>();
        MultiIndex beta = t.at("beta").get<MultiIndex>();
        p.add_term(alpha, beta, {t.at("re").get<double>(), t.at("im").get<double>()});
    }
    return p;
}

json rw_sequence_to_json(const RWSequence& rw) {
    json polys = json::array();
    json certs = json::array();
    for (const auto& m : rw.members) {
        polys.push_back(sphere_poly_to_json(m.poly));
        certs.push_back({{"degree", m.degree},
                         {"l2_norm", m.l2_norm},
                         {"sup_lower", m.sup_lower},
                         {"sup_upper", m.sup_upper},
                         {"delta", m.delta}});
    }
    return json{{"n", rw.n},
                {"delta", rw.delta},
                {"polys", polys},
                {"seed", rw.seed},
                {"certificates", certs}};
}

RWSequence rw_sequence_from_json(const json& j) {
    RWSequence rw;
    rw.n = j.at("n").get<int>();
    rw.delta = j.at("delta").get<double>();
    rw.seed = j.value("seed", 0ull);
    const json& polys = j.at("polys");
    const json* certs = j.contains("certificates") ? &j.at("certificates") : nullptr;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        RWMember m;
        m.poly = sphere_poly_from_json(polys[i]);
        Bidegree bd;
        if (!m.poly.is_homogeneous(&bd) || bd.second != 0)
            throw std::invalid_argument("rw json: member is not homogeneous holomorphic");
        m.degree = bd.first;
        if (certs && i < certs->size()) {
            const json& c = (*certs)[i];
            m.l2_norm = c.value("l2_norm", 0.0);
            m.sup_lower = c.value("sup_lower", 0.0);
            m.sup_upper = c.value("sup_upper", 1.0);
            m.delta = c.value("delta", m.l2_norm);
        }
        rw.members.push_back(std::move(m));
    }
    return rw;
}

void save_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out.good()) throw std::runtime_error("write failed for " + path);
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

RieszTriple load_riesz_triple(const std::string& path) {
    const json j = load_json(path);
    std::filesystem::path rw_path(j.at("rw").get<std::string>());
    if (rw_path.is_relative()) rw_path = std::filesystem::path(path).parent_path() / rw_path;
    RWSequence rw = rw_sequence_from_json(load_json(rw_path.string()));
    std::vector<long long> freqs = j.at("J").get<std::vector<long long>>();
    const CoeffSpec spec = CoeffSpec::parse(j.at("coeffs").get<std::string>());
    return make_triple(std::move(rw), std::move(freqs), spec);
}

json audit_to_json(const std::vector<StepAudit>& audit) {
    json steps = json::array();
    for (const auto& s : audit) {
        steps.push_back({{"k", s.k},
                         {"j", s.j},
                         {"L", s.L},
                         {"M", s.M_new},
                         {"degree", s.degree},
                         {"mass", s.mass},
                         {"disjoint", s.disjoint},
                         {"check_mode", s.check_mode},
                         {"min_sample", s.min_sample},
                         {"block_delta", s.block_delta},
                         {"retries", s.retries},
                         {"expanded", s.expanded}});
    }
    return json{{"steps", steps}};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const std::string& seed_comment,
               const std::string& header, const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (!seed_comment.empty()) out << "# " << seed_comment << "\n";
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
    if (!out.good()) throw std::runtime_error("write failed for " + path);
}

std::vector<std::string> dichotomy_csv_row(const DichotomyRow& r) {
    return {std::to_string(r.kappa), format_double(r.l2_norm_sq), format_double(r.affinity),
            format_double(r.l1)};
}

std::vector<std::string> peyriere_csv_row(const PeyriereRow& r) {
    return {std::to_string(r.kappa), format_double(r.l2_norm_sq), format_double(r.affinity),
            format_double(r.l1)};
}

std::vector<std::string> singularity_csv_row(const SingularityRow& r) {
    return {std::to_string(r.kappa), format_double(r.mean_affinity), format_double(r.mean_l1),
            format_double(r.stderr_l1), format_double(r.median_scramble_sum)};
}

}  // namespace riesz
