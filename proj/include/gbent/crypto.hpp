#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbent/adic.hpp"
#include "gbent/gbf.hpp"

namespace gbent {

/// t-order derivative D_{a_1..a_t} f(x) = sum_{S subset [t]} (-1)^{|S|}
/// f(x + sum_{i in S} a_i) mod 2^k. Directions add in F_2^n (xor).
GBF derivative(const GBF& f, const std::vector<std::uint32_t>& dirs);

/// All first derivatives constant, i.e. algebraic degree <= 1.
bool is_affine(const GBF& f);

/// All second derivatives constant, i.e. algebraic degree <= 2.
bool is_quadratic(const GBF& f);

struct DifferentialTable {
    int n = 0, k = 0;
    std::vector<std::uint32_t> counts; // counts[a * 2^k + b], a >= 1
    std::uint32_t uniformity = 0;
    std::map<std::uint32_t, std::uint32_t> spectrum; // count -> multiplicity

    std::uint32_t at(std::uint32_t a, std::uint32_t b) const { return counts[(std::size_t{a} << k) + b]; }
};

/// Modular differences f(x+a) - f(x) = b in Z_{2^k}.
DifferentialTable ddt(const GBF& f);

/// Classical vectorial table over xor differences f(x+a) ^ f(x) = b.
DifferentialTable ddt_xor(const GBF& f);

struct GbetaDiffCheck {
    std::uint32_t direct = 0;    // count on the g_beta truth table
    std::uint32_t via_cells = 0; // cell sum over joint component differences
    bool equal = false;
};

/// Differential count of g_beta both directly and through the joint
/// distribution of component differences; the two must agree.
GbetaDiffCheck diff_gbeta_formula(const AdicDecomposition& d, std::uint32_t beta, std::uint32_t a,
                                  std::uint32_t b);

/// f(x, y) = <x, pi(y)> + g(y) on F_2^{2m} with the inner product taken as an
/// integer before reduction mod 2^k. x occupies the low m index bits.
struct MMConstruction {
    int m = 0, k = 0;
    std::vector<std::uint32_t> pi;
    std::vector<std::uint32_t> g;         // 2^m values in Z_{2^k}
    std::vector<std::uint32_t> inner;     // N(x,y), unreduced
    GBF f;
};

MMConstruction mm_construct(int m, const std::vector<std::uint32_t>& pi, const GBF& g);

struct CarryMismatch {
    std::uint32_t x = 0;
    int j = 0;
};

/// Digits of f against the one-step carry formula
/// c_j = phi_j + g_j + floor((phi_{j-1} + g_{j-1}) / 2^l) mod 2^l,
/// where phi_j are the digits of the bare inner product. Mismatches mark
/// multi-step carry chains the one-step formula cannot see.
struct CarryReport {
    int l = 0, r = 0;
    std::vector<std::vector<std::uint32_t>> phi;          // [j][x]
    std::vector<std::vector<std::uint32_t>> exact_digits; // [j][x]
    bool one_step_formula_exact = true;
    std::vector<CarryMismatch> mismatches;
};

CarryReport mm_carry_analysis(const MMConstruction& mm, int l);

struct SboxFixture {
    std::string name;
    int n = 0, k = 0;
    std::vector<std::uint32_t> lut;
    std::string provenance;
    bool permutation = false;
};

const std::vector<SboxFixture>& sbox_presets();
std::optional<SboxFixture> sbox_preset(const std::string& name);
/// One hex digit per entry, e.g. "C56B90AD3EF84712" for a 4-bit S-box.
SboxFixture sbox_from_hex(const std::string& hex, const std::string& name = "user");

struct SboxAuditReport {
    SboxFixture fixture;
    SpectrumReport spectrum;
    std::vector<double> magnitudes;         // |W(u)| per u
    std::vector<double> magnitude_clusters; // distinct at 1e-6 absolute
    DifferentialTable differential;         // modular differences
    DifferentialTable differential_xor;     // vectorial view
    // Decomposition diagnostics for a chosen l: per-u support sizes and how
    // many derived g_beta keep f's magnitude multiset.
    std::optional<int> l;
    std::vector<std::size_t> support_sizes;
    std::uint32_t beta_total = 0;
    std::uint32_t beta_magnitude_matches = 0;
};

SboxAuditReport sbox_audit(const SboxFixture& s, std::optional<int> l);

} // namespace gbent
