#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "riesz/generalized.hpp"
#include "riesz/rw_sequence.hpp"
#include "riesz/sphere_riesz.hpp"
#include "riesz/trig_poly.hpp"

namespace riesz {

using nlohmann::json;

// {"freqs":[{"f":-1,"re":0.25,"im":0.0},...]}, sorted by frequency
json trig_poly_to_json(const TrigPoly& p);
TrigPoly trig_poly_from_json(const json& j);

// {"n":2,"terms":[{"alpha":[1,0],"beta":[0,0],"re":1.0,"im":0.0},...]}
json sphere_poly_to_json(const SpherePoly& p);
SpherePoly sphere_poly_from_json(const json& j);

// {"n":2,"delta":...,"polys":[...],"seed":...,"certificates":[...]}
json rw_sequence_to_json(const RWSequence& rw);
RWSequence rw_sequence_from_json(const json& j);

void save_json(const json& j, const std::string& path);
json load_json(const std::string& path);

// {"rw":"rw.json","J":[1,3,9,...],"coeffs":"const:0.8"}; the rw path is
// resolved relative to the triple file's directory
RieszTriple load_riesz_triple(const std::string& path);

json audit_to_json(const std::vector<StepAudit>& audit);

// fixed %.12g formatting keeps replays byte-identical
std::string format_double(double v);

void write_csv(const std::string& path, const std::string& seed_comment,
               const std::string& header, const std::vector<std::vector<std::string>>& rows);

std::vector<std::string> dichotomy_csv_row(const DichotomyRow& r);
std::vector<std::string> peyriere_csv_row(const PeyriereRow& r);
std::vector<std::string> singularity_csv_row(const SingularityRow& r);

}  // namespace riesz
