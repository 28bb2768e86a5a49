#pragma once

#include <string>

#include <json.hpp>

#include "gbent/adic.hpp"
#include "gbent/charsum.hpp"
#include "gbent/crypto.hpp"
#include "gbent/gbf.hpp"

namespace gbent {

using json = nlohmann::json;

// Truth-table file: {"n": int, "k": int, "table": [int, ...]} of length 2^n.
GBF gbf_from_json(const json& j);
json gbf_to_json(const GBF& f);
GBF load_gbf(const std::string& path);

// Charsum instance: {"moduli": [...], "points": [[...]], "weights": [...]}
// with weights either {"re":, "im":} or {"cyc_k":, "coeffs": [...]}.
WeightedSupport weighted_support_from_json(const json& j);
WeightedSupport load_weighted_support(const std::string& path);

json cycint_to_json(const CycInt& v);
json mpz_to_json(const mpz_class& v);

json spectrum_report_to_json(const SpectrumReport& rep);
json decomposition_to_json(const AdicDecomposition& d, const PartitionSpectrum& ps);
json ddt_to_json(const DifferentialTable& t);
json sbox_audit_to_json(const SboxAuditReport& rep);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& body);

} // namespace gbent
