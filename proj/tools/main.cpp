#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gbent/adic.hpp"
#include "gbent/charsum.hpp"
#include "gbent/crypto.hpp"
#include "gbent/errors.hpp"
#include "gbent/gbf.hpp"
#include "gbent/json_io.hpp"

namespace {

constexpr const char* kVersion = "gbent 0.1.0";

struct Output {
    std::string out_path;
    std::string format = "json";

    void emit(gbent::json j, const std::string& text) const {
        std::string body = format == "json" ? j.dump(2) + "\n" : text;
        if (out_path.empty())
            std::cout << body;
        else
            gbent::write_text_file(out_path, body);
    }
};

gbent::json report_header(const std::string& command, std::uint64_t seed) {
    return gbent::json{{"version", kVersion}, {"command", command}, {"seed", seed}};
}

std::string spectrum_text(const gbent::SpectrumReport& rep) {
    std::ostringstream os;
    os << "verdict: " << gbent::to_string(rep.verdict);
    if (rep.verdict == gbent::FunctionClass::Gplateaued || rep.verdict == gbent::FunctionClass::Gbent)
        os << " (s = " << rep.s << ")";
    os << "\nlevels:";
    for (const auto& lvl : rep.levels) os << " (m=" << lvl.m << ", v=" << lvl.v.get_str() << ")";
    os << "\n|W(u)|:";
    for (const auto& w : rep.walsh) {
        os.precision(6);
        os << " " << std::abs(w.to_complex());
    }
    os << "\n";
    return os.str();
}

int cmd_analyze(const std::string& input, std::optional<int> l, const Output& out, std::uint64_t seed) {
    const gbent::GBF f = gbent::load_gbf(input);
    const gbent::SpectrumReport rep = gbent::classify(f);
    gbent::json j = report_header("analyze", seed);
    j["input"] = gbent::json{{"n", f.n}, {"k", f.k}};
    j["report"] = gbent::spectrum_report_to_json(rep);
    if (l) {
        const auto d = gbent::decompose(f, *l);
        if (d.r >= 2) j["decomposition"] = gbent::decomposition_to_json(d, gbent::partition_coefficients(d));
    }
    out.emit(j, spectrum_text(rep));
    return 0;
}

int cmd_verify(const std::string& input, const std::string& strategy, std::optional<int> l,
               std::optional<int> m, std::optional<int> s, std::uint64_t seed, std::uint64_t budget,
               bool exhaustive, const Output& out) {
    const gbent::GBF f = gbent::load_gbf(input);
    gbent::json j = report_header("verify", seed);
    j["strategy"] = strategy;
    std::string text;

    if (strategy == "binary") {
        const auto rep = gbent::binary_char_oracle(f, exhaustive ? 0 : budget, seed);
        if (exhaustive && !rep.exhaustive) throw gbent::input_error("k too large for --exhaustive");
        j["verdict"] = gbent::to_string(rep.verdict);
        j["exhaustive"] = rep.exhaustive;
        j["checks"] = rep.checks;
        j["budget"] = rep.budget;
        if (rep.witness_F) j["witness_F"] = *rep.witness_F;
        text = "binary: " + gbent::to_string(rep.verdict) + " after " + std::to_string(rep.checks) +
               " checks (budget " + std::to_string(rep.budget) + ")\n";
    } else if (strategy == "onehot") {
        if (!l || !m) throw gbent::input_error("onehot strategy requires --l and --m");
        const auto d = gbent::decompose(f, *l);
        const auto rep = gbent::verify_sufficiency_onehot(d, *m);
        j["verdict"] = gbent::to_string(rep.verdict);
        j["checks"] = rep.checks;
        j["budget"] = rep.budget;
        if (rep.witness)
            j["witness"] = gbent::json{{"alpha0", rep.witness->alpha0},
                                       {"a", rep.witness->a},
                                       {"u", rep.witness->u},
                                       {"reason", rep.witness->reason}};
        text = "onehot: " + gbent::to_string(rep.verdict) + " after " + std::to_string(rep.checks) +
               " checks (budget " + std::to_string(rep.budget) + ")\n";
    } else if (strategy == "affine") {
        if (!l || !s) throw gbent::input_error("affine strategy requires --l and --s");
        const auto d = gbent::decompose(f, *l);
        const auto rep = gbent::verify_plateaued_common_arg(d, *s);
        j["verdict"] = gbent::to_string(rep.verdict);
        j["checks"] = rep.beta_checks;
        j["budget"] = std::uint64_t{1} << (f.k - *l);
        j["reason"] = rep.reason;
        if (rep.failing_u) j["failing_u"] = *rep.failing_u;
        if (rep.failing_beta) j["failing_beta"] = *rep.failing_beta;
        text = "affine: " + gbent::to_string(rep.verdict) + " after " + std::to_string(rep.beta_checks) +
               " beta checks\n";
    } else if (strategy == "basis") {
        if (!l) throw gbent::input_error("basis strategy requires --l");
        const auto d = gbent::decompose(f, *l);
        const auto rep = gbent::verify_basis_test(d);
        j["verdict"] = gbent::to_string(rep.verdict);
        j["checks"] = rep.checks;
        j["budget"] = d.r - 1;
        j["reason"] = rep.reason;
        text = "basis: " + gbent::to_string(rep.verdict) + " after " + std::to_string(rep.checks) +
               " basis functions (budget " + std::to_string(d.r - 1) + ")\n";
    } else if (strategy == "sparsity") {
        if (!l) throw gbent::input_error("sparsity strategy requires --l");
        const auto d = gbent::decompose(f, *l);
        const auto ps = gbent::partition_coefficients(d);
        const std::vector<mpz_class> gbent_level{gbent::pow2(static_cast<unsigned long>(f.n))};
        const auto rep = gbent::sparsity_check(ps, gbent_level, true);
        j["verdict"] = gbent::to_string(rep.verdict);
        j["reason"] = rep.reason;
        if (rep.failing_u) j["failing_u"] = *rep.failing_u;
        text = "sparsity: " + gbent::to_string(rep.verdict) + "\n";
    } else {
        throw gbent::input_error("unknown strategy '" + strategy + "'");
    }
    out.emit(j, text);
    return 0;
}

int cmd_charsum(const std::string& input, const Output& out, std::uint64_t seed) {
    const gbent::WeightedSupport ws = gbent::load_weighted_support(input);
    gbent::json j = report_header("charsum", seed);
    j["group"] = gbent::json{{"moduli", ws.group.moduli}, {"order", ws.group.order}};
    j["support"] = ws.points.size();
    j["exact"] = ws.exact;

    const auto fr = gbent::fourier(ws);
    const auto prof = gbent::magnitude_levels(fr);
    j["levels"] = gbent::json{{"t", prof.t},
                              {"zero_present", prof.zero_present},
                              {"sq", prof.sq_float},
                              {"kind", prof.kind == gbent::LevelProfile::Kind::TwoLevel ? "two-level"
                                       : prof.kind == gbent::LevelProfile::Kind::MultiLevel
                                           ? "multi-level"
                                           : "degenerate"}};

    const auto unc = gbent::uncertainty_check(ws);
    j["uncertainty"] = gbent::json{{"support", unc.support_size},
                                   {"transform_support", unc.transform_support_size},
                                   {"product_bound_ok", unc.product_bound_ok},
                                   {"refined_bound_ok", unc.refined_bound_ok},
                                   {"equality", unc.equality},
                                   {"equality_structure_ok", unc.equality_structure_ok}};

    std::ostringstream text;
    text << "levels: t=" << prof.t << (prof.zero_present ? " (+0)" : "") << "\n";

    if (ws.points.size() == 2) {
        const auto tp = gbent::two_point_analysis(ws.group, ws.points[0], ws.points[1],
                                                  ws.weight_as_complex(0), ws.weight_as_complex(1));
        const char* cls = tp.cls == gbent::TwoPointClass::MultiValued          ? "multi-valued"
                          : tp.cls == gbent::TwoPointClass::ExceptionalCubeRoot ? "exceptional-cube-root"
                          : tp.cls == gbent::TwoPointClass::GenericR3           ? "generic-r3"
                                                                                : "small-order";
        j["two_point"] = gbent::json{{"r", tp.r}, {"class", cls}, {"magnitudes", tp.magnitudes}};
        text << "two-point: r=" << tp.r << " class=" << cls << "\n";
    }

    if (prof.kind == gbent::LevelProfile::Kind::TwoLevel) {
        const auto cert = gbent::certify_overconstrained(ws);
        j["two_level_certificate"] =
            gbent::json{{"hypotheses_met", cert.hypotheses_met},
                        {"failed_hypothesis", cert.failed_hypothesis},
                        {"coset_count", cert.coset_count},
                        {"stabilizer_order", cert.H.size()},
                        {"quotient_order", cert.quotient_order},
                        {"order_conclusion_applied", cert.order_conclusion_applied}};
        const auto num = gbent::numerology_check(ws);
        j["numerology"] = gbent::json{{"N", num.N},
                                      {"A_sq", num.A_sq},
                                      {"identity_ok", num.identity_ok},
                                      {"support_lower_bound", num.support_lower_bound}};
        text << "two-level certificate: " << (cert.hypotheses_met ? "certified" : "hypothesis-not-met")
             << ", |Sbar| = " << cert.coset_count << "\n";
    } else if (prof.kind == gbent::LevelProfile::Kind::MultiLevel) {
        const auto cert = gbent::certify_multilevel(ws, prof.t);
        j["multilevel_certificate"] = gbent::json{{"hypotheses_met", cert.hypotheses_met},
                                                  {"failed_hypothesis", cert.failed_hypothesis},
                                                  {"t", cert.t},
                                                  {"candidates", cert.candidates},
                                                  {"admissible_x", cert.admissible_x},
                                                  {"x_hypothesis_trivial", cert.x_hypothesis_trivial},
                                                  {"advisory_dbar_small", cert.advisory_dbar_small},
                                                  {"coset_count", cert.coset_count},
                                                  {"conclusion_ok", cert.conclusion_ok}};
        text << "multi-level certificate: "
             << (cert.hypotheses_met ? "certified" : "hypothesis-not-met: " + cert.failed_hypothesis)
             << "\n";
    }
    out.emit(j, text.str());
    return 0;
}

int cmd_sbox(const std::string& preset, const std::string& hex, std::optional<int> l, const Output& out,
             std::uint64_t seed) {
    gbent::SboxFixture fixture;
    if (!preset.empty()) {
        const auto p = gbent::sbox_preset(preset);
        if (!p) throw gbent::input_error("unknown preset '" + preset + "'");
        fixture = *p;
    } else if (!hex.empty()) {
        fixture = gbent::sbox_from_hex(hex);
    } else {
        throw gbent::input_error("sbox requires --preset or --hex");
    }
    const auto rep = gbent::sbox_audit(fixture, l);
    gbent::json j = report_header("sbox", seed);
    j["audit"] = gbent::sbox_audit_to_json(rep);

    std::ostringstream text;
    text << fixture.name << ": verdict " << gbent::to_string(rep.spectrum.verdict) << ", "
         << rep.magnitude_clusters.size() << " distinct |W| clusters, ddt uniformity "
         << rep.differential_xor.uniformity << " (xor) / " << rep.differential.uniformity
         << " (modular)\n";
    out.emit(j, text.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Walsh-Hadamard analysis of generalized Boolean functions"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Output out;
    std::uint64_t seed = 1;
    std::string input, strategy, preset, hex;
    std::optional<int> l, m, s;
    std::uint64_t budget = 256;
    bool exhaustive = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out.out_path, "write the report to a file instead of stdout");
        sub->add_option("--format", out.format, "json|text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", seed, "seed echoed into the report and used by sampling");
    };

    auto* a = app.add_subcommand("analyze", "classify a truth table");
    a->add_option("--input", input, "truth-table JSON file")->required();
    a->add_option("--l", l, "also export the 2^l-adic decomposition and coefficients");
    add_common(a);

    auto* v = app.add_subcommand("verify", "run a verification strategy");
    v->add_option("--input", input, "truth-table JSON file")->required();
    v->add_option("--strategy", strategy, "binary|onehot|affine|basis|sparsity")->required();
    v->add_option("--l", l, "divisor exponent of the 2^l-adic decomposition");
    v->add_option("--m", m, "probe modulus exponent (onehot)");
    v->add_option("--s", s, "plateau parameter (affine)");
    v->add_option("--budget", budget, "random probes when not exhaustive");
    v->add_flag("--exhaustive", exhaustive, "require the exhaustive oracle");
    add_common(v);

    auto* c = app.add_subcommand("charsum", "certify a weighted character-sum instance");
    c->add_option("--input", input, "instance JSON file")->required();
    add_common(c);

    auto* b = app.add_subcommand("sbox", "audit an S-box LUT");
    b->add_option("--preset", preset, "present|gift|prince|skinny");
    b->add_option("--hex", hex, "hex LUT, one digit per entry");
    b->add_option("--l", l, "decomposition diagnostics exponent");
    add_common(b);

    CLI11_PARSE(app, argc, argv);

    try {
        if (a->parsed()) return cmd_analyze(input, l, out, seed);
        if (v->parsed()) return cmd_verify(input, strategy, l, m, s, seed, budget, exhaustive, out);
        if (c->parsed()) return cmd_charsum(input, out, seed);
        if (b->parsed()) return cmd_sbox(preset, hex, l, out, seed);
    } catch (const gbent::invariant_violation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const gbent::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gbent::ring_mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
