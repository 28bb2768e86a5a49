#include "gbent/json_io.hpp"

#include <fstream>
#include <sstream>

#include "gbent/errors.hpp"

namespace gbent {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write " + path);
    out << body;
}

GBF gbf_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int k = j.at("k").get<int>();
        auto table = j.at("table").get<std::vector<std::uint32_t>>();
        return GBF(n, k, std::move(table));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad truth-table JSON: ") + e.what());
    }
}

json gbf_to_json(const GBF& f) { return json{{"n", f.n}, {"k", f.k}, {"table", f.table}}; }

GBF load_gbf(const std::string& path) { return gbf_from_json(load_json_file(path)); }

WeightedSupport weighted_support_from_json(const json& j) {
    try {
        const auto moduli = j.at("moduli").get<std::vector<std::uint32_t>>();
        FinAbGroup g(moduli);
        std::vector<std::uint32_t> points;
        for (const auto& p : j.at("points")) points.push_back(g.encode(p.get<std::vector<std::uint32_t>>()));

        const auto& jw = j.at("weights");
        const bool exact = !jw.empty() && jw.front().contains("cyc_k");
        if (exact) {
            std::vector<CycInt> ws;
            for (const auto& w : jw) {
                const int k = w.at("cyc_k").get<int>();
                CycInt acc = CycInt::zero(k);
                const auto& coeffs = w.at("coeffs");
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    mpz_class c;
                    if (coeffs[i].is_string())
                        c = mpz_class(coeffs[i].get<std::string>());
                    else
                        c = mpz_class(coeffs[i].get<long>());
                    if (c != 0)
                        acc += CycInt::from_integer(k, c) * CycInt::root_power(k, static_cast<long>(i));
                }
                ws.push_back(std::move(acc));
            }
            return WeightedSupport::make_exact(std::move(g), std::move(points), std::move(ws));
        }
        std::vector<std::complex<double>> ws;
        for (const auto& w : jw) ws.emplace_back(w.at("re").get<double>(), w.at("im").get<double>());
        return WeightedSupport::make_float(std::move(g), std::move(points), std::move(ws));
    } catch (const json::exception& e) {
        throw input_error(std::string("bad charsum instance JSON: ") + e.what());
    }
}

WeightedSupport load_weighted_support(const std::string& path) {
    return weighted_support_from_json(load_json_file(path));
}

json mpz_to_json(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json cycint_to_json(const CycInt& v) {
    json coeffs = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) coeffs.push_back(mpz_to_json(v.coeff(i)));
    const auto z = v.to_complex();
    return json{{"cyc_k", v.k()}, {"coeffs", coeffs}, {"re", z.real()}, {"im", z.imag()}};
}

json spectrum_report_to_json(const SpectrumReport& rep) {
    json spectrum = json::array();
    for (std::size_t u = 0; u < rep.walsh.size(); ++u) {
        const auto z = rep.walsh[u].to_complex();
        json entry{{"u", u},
                   {"re", z.real()},
                   {"im", z.imag()},
                   {"magnitude", std::abs(z)},
                   {"sq_exact", rep.sq_integer[u] ? mpz_to_json(*rep.sq_integer[u]) : json(nullptr)},
                   {"walsh", cycint_to_json(rep.walsh[u])}};
        if (!rep.duals.empty()) {
            const auto& d = rep.duals[u];
            entry["dual"] = d.rho ? json(*d.rho) : json(nullptr);
        }
        spectrum.push_back(std::move(entry));
    }
    json levels = json::array();
    for (const auto& lvl : rep.levels) levels.push_back(json{{"m", lvl.m}, {"v", mpz_to_json(lvl.v)}});
    return json{{"n", rep.n},
                {"k", rep.k},
                {"verdict", to_string(rep.verdict)},
                {"s", rep.verdict == FunctionClass::Gbent || rep.verdict == FunctionClass::Gplateaued
                          ? json(rep.s)
                          : json(nullptr)},
                {"levels", levels},
                {"length", rep.length},
                {"zero_in_spectrum", rep.zero_in_spectrum},
                {"distinct_sq_count", rep.distinct_sq.size()},
                {"dual_defined", rep.dual_defined},
                {"parseval", true},
                {"spectrum", spectrum}};
}

json decomposition_to_json(const AdicDecomposition& d, const PartitionSpectrum& ps) {
    json components = json::array();
    for (const auto& c : d.components) components.push_back(c);
    json coefficients = json::object();
    for (std::uint32_t u = 0; u < ps.coeffs.size(); ++u) {
        json per_alpha = json::object();
        for (std::size_t c = 0; c < ps.image.size(); ++c) {
            if (ps.coeffs[u][c].is_zero()) continue;
            json arr = json::array();
            for (std::size_t i = 0; i < ps.coeffs[u][c].dim(); ++i)
                arr.push_back(mpz_to_json(ps.coeffs[u][c].coeff(i)));
            per_alpha[std::to_string(ps.image[c])] = std::move(arr);
        }
        coefficients[std::to_string(u)] = std::move(per_alpha);
    }
    json support = json::array();
    for (const auto& s : ps.support) support.push_back(s.size());
    return json{{"l", d.l},       {"r", d.r},           {"components", components},
                {"image", d.image}, {"coefficients", coefficients}, {"support_sizes", support}};
}

json ddt_to_json(const DifferentialTable& t) {
    json spectrum = json::object();
    for (const auto& [count, mult] : t.spectrum) spectrum[std::to_string(count)] = mult;
    return json{{"uniformity", t.uniformity}, {"spectrum", spectrum}};
}

json sbox_audit_to_json(const SboxAuditReport& rep) {
    json j{{"name", rep.fixture.name},
           {"n", rep.fixture.n},
           {"k", rep.fixture.k},
           {"lut", rep.fixture.lut},
           {"provenance", rep.fixture.provenance},
           {"permutation", rep.fixture.permutation},
           {"verdict", to_string(rep.spectrum.verdict)},
           {"magnitudes", rep.magnitudes},
           {"distinct_magnitude_clusters", rep.magnitude_clusters.size()},
           {"magnitude_clusters", rep.magnitude_clusters},
           {"ddt_modular", ddt_to_json(rep.differential)},
           {"ddt_xor", ddt_to_json(rep.differential_xor)},
           {"spectrum", spectrum_report_to_json(rep.spectrum)}};
    if (rep.l) {
        j["l"] = *rep.l;
        j["support_sizes"] = rep.support_sizes;
        j["beta_total"] = rep.beta_total;
        j["beta_magnitude_matches"] = rep.beta_magnitude_matches;
    }
    return j;
}

} // namespace gbent
