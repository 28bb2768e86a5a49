#include "gbent/crypto.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

#include "gbent/errors.hpp"

namespace gbent {

GBF derivative(const GBF& f, const std::vector<std::uint32_t>& dirs) {
    if (dirs.empty()) throw input_error("derivative: at least one direction required");
    for (auto a : dirs)
        if (a >= f.size()) throw input_error("derivative: direction out of range");
    const std::uint32_t mod = f.modulus();
    const std::size_t t = dirs.size();
    std::vector<std::uint32_t> table(f.size(), 0);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        std::int64_t acc = 0;
        for (std::uint32_t subset = 0; subset < (1u << t); ++subset) {
            std::uint32_t shift = 0;
            for (std::size_t i = 0; i < t; ++i)
                if (subset & (1u << i)) shift ^= dirs[i];
            const int sign = (std::popcount(subset) & 1) ? -1 : 1;
            acc += sign * static_cast<std::int64_t>(f.table[x ^ shift]);
        }
        acc %= mod;
        if (acc < 0) acc += mod;
        table[x] = static_cast<std::uint32_t>(acc);
    }
    return GBF(f.n, f.k, std::move(table));
}

namespace {

bool is_constant(const GBF& f) {
    return std::all_of(f.table.begin(), f.table.end(),
                       [&](std::uint32_t v) { return v == f.table[0]; });
}

} // namespace

bool is_affine(const GBF& f) {
    for (std::uint32_t a = 1; a < f.size(); ++a)
        if (!is_constant(derivative(f, {a}))) return false;
    return true;
}

bool is_quadratic(const GBF& f) {
    for (std::uint32_t a = 1; a < f.size(); ++a)
        for (std::uint32_t b = a; b < f.size(); ++b)
            if (!is_constant(derivative(f, {a, b}))) return false;
    return true;
}

namespace {

template <class Diff>
DifferentialTable ddt_impl(const GBF& f, Diff&& diff) {
    DifferentialTable t;
    t.n = f.n;
    t.k = f.k;
    const std::uint32_t mod = f.modulus();
    t.counts.assign(std::size_t{f.size()} << f.k, 0);
    for (std::uint32_t a = 1; a < f.size(); ++a)
        for (std::uint32_t x = 0; x < f.size(); ++x)
            ++t.counts[(std::size_t{a} << f.k) + diff(f.table[x ^ a], f.table[x])];
    for (std::uint32_t a = 1; a < f.size(); ++a)
        for (std::uint32_t b = 0; b < mod; ++b) {
            const std::uint32_t c = t.at(a, b);
            t.uniformity = std::max(t.uniformity, c);
            ++t.spectrum[c];
        }
    return t;
}

} // namespace

DifferentialTable ddt(const GBF& f) {
    const std::uint32_t mod = f.modulus();
    return ddt_impl(f, [mod](std::uint32_t fa, std::uint32_t fx) { return (fa + mod - fx) & (mod - 1); });
}

DifferentialTable ddt_xor(const GBF& f) {
    return ddt_impl(f, [](std::uint32_t fa, std::uint32_t fx) { return fa ^ fx; });
}

GbetaDiffCheck diff_gbeta_formula(const AdicDecomposition& d, std::uint32_t beta, std::uint32_t a,
                                  std::uint32_t b) {
    if (d.r < 2) throw input_error("diff_gbeta_formula: degenerate decomposition (r = 1)");
    if (a == 0 || a >= d.f.size()) throw input_error("diff_gbeta_formula: bad direction a");
    const std::uint32_t lmod = 1u << d.l;
    if (b >= lmod) throw input_error("diff_gbeta_formula: b out of Z_{2^l}");

    GbetaDiffCheck chk;
    const GBF g = derived_beta(d, beta);
    for (std::uint32_t x = 0; x < g.size(); ++x)
        if (((g.table[x ^ a] + lmod - g.table[x]) & (lmod - 1)) == b) ++chk.direct;

    // Joint distribution of component differences delta(x), then sum the
    // cells with delta_{r-1} + <beta, delta_lower> = b.
    std::map<std::vector<std::uint32_t>, std::uint32_t> cells;
    for (std::uint32_t x = 0; x < d.f.size(); ++x) {
        std::vector<std::uint32_t> delta(d.r);
        for (int j = 0; j < d.r; ++j)
            delta[j] = (d.components[j][x ^ a] + lmod - d.components[j][x]) & (lmod - 1);
        ++cells[delta];
    }
    const std::uint32_t mask = lmod - 1;
    for (const auto& [delta, count] : cells) {
        std::uint32_t lhs = delta[d.r - 1];
        for (int j = 0; j + 1 < d.r; ++j) lhs += ((beta >> (j * d.l)) & mask) * delta[j];
        if ((lhs & mask) == b) chk.via_cells += count;
    }
    chk.equal = chk.direct == chk.via_cells;
    if (!chk.equal)
        throw invariant_violation("g_beta differential cell sum disagrees with the direct count");
    return chk;
}

MMConstruction mm_construct(int m, const std::vector<std::uint32_t>& pi, const GBF& g) {
    if (m < 1 || m > 12) throw input_error("mm_construct: m out of range");
    if (g.n != m) throw input_error("mm_construct: g must have n = m inputs");
    const std::uint32_t half = 1u << m;
    if (pi.size() != half) throw input_error("mm_construct: pi must have 2^m entries");
    std::vector<char> seen(half, 0);
    for (auto v : pi) {
        if (v >= half || seen[v]) throw input_error("mm_construct: pi is not a permutation");
        seen[v] = 1;
    }

    const std::uint32_t mod = 1u << g.k;
    std::vector<std::uint32_t> table(std::size_t{1} << (2 * m));
    std::vector<std::uint32_t> inner(table.size(), 0);
    for (std::uint32_t y = 0; y < half; ++y) {
        for (std::uint32_t x = 0; x < half; ++x) {
            const std::uint32_t idx = x | (y << m);
            const std::uint32_t N = static_cast<std::uint32_t>(std::popcount(x & pi[y]));
            inner[idx] = N;
            table[idx] = (N + g.table[y]) & (mod - 1);
        }
    }
    return MMConstruction{m, g.k, pi, g.table, std::move(inner), GBF(2 * m, g.k, std::move(table))};
}

CarryReport mm_carry_analysis(const MMConstruction& mm, int l) {
    if (l < 1 || mm.k % l != 0) throw input_error("mm_carry_analysis: l must divide k");
    CarryReport rep;
    rep.l = l;
    rep.r = mm.k / l;
    const std::uint32_t mask = (1u << l) - 1;
    const std::uint32_t sz = mm.f.size();
    rep.phi.assign(rep.r, std::vector<std::uint32_t>(sz));
    rep.exact_digits.assign(rep.r, std::vector<std::uint32_t>(sz));
    for (std::uint32_t idx = 0; idx < sz; ++idx) {
        const std::uint32_t y = idx >> mm.m;
        const std::uint32_t N = mm.inner[idx];
        const std::uint32_t fx = mm.f.table[idx];
        std::uint32_t prev_sum = 0;
        for (int j = 0; j < rep.r; ++j) {
            const std::uint32_t phi_j = (N >> (j * l)) & mask;
            const std::uint32_t g_j = (mm.g[y] >> (j * l)) & mask;
            rep.phi[j][idx] = phi_j;
            rep.exact_digits[j][idx] = (fx >> (j * l)) & mask;
            std::uint32_t formula = phi_j + g_j;
            if (j > 0) formula += prev_sum >> l; // one-step carry only
            if ((formula & mask) != rep.exact_digits[j][idx]) {
                rep.one_step_formula_exact = false;
                rep.mismatches.push_back({idx, j});
            }
            prev_sum = phi_j + g_j;
        }
    }
    return rep;
}

namespace {

// LUTs from the ciphers' design documents (PRESENT: Bogdanov et al., CHES
// 2007; GIFT: Banik et al., CHES 2017; PRINCE: Borghoff et al., ASIACRYPT
// 2012; SKINNY: Beierle et al., CRYPTO 2016).
const std::vector<SboxFixture> kPresets = {
    {"present", 4, 4, {0xC, 0x5, 0x6, 0xB, 0x9, 0x0, 0xA, 0xD, 0x3, 0xE, 0xF, 0x8, 0x4, 0x7, 0x1, 0x2},
     "PRESENT cipher S-box (CHES 2007 design document)", true},
    {"gift", 4, 4, {0x1, 0xA, 0x4, 0xC, 0x6, 0xF, 0x3, 0x9, 0x2, 0xD, 0xB, 0x7, 0x5, 0x0, 0x8, 0xE},
     "GIFT cipher S-box GS (CHES 2017 design document)", true},
    {"prince", 4, 4, {0xB, 0xF, 0x3, 0x2, 0xA, 0xC, 0x9, 0x1, 0x6, 0x7, 0x8, 0x0, 0xE, 0x5, 0xD, 0x4},
     "PRINCE cipher S-box (ASIACRYPT 2012 design document)", true},
    {"skinny", 4, 4, {0xC, 0x6, 0x9, 0x0, 0x1, 0xA, 0x2, 0xB, 0x3, 0x8, 0x5, 0xD, 0x4, 0xE, 0x7, 0xF},
     "SKINNY-64 cipher S-box S4 (CRYPTO 2016 design document)", true},
};

} // namespace

const std::vector<SboxFixture>& sbox_presets() { return kPresets; }

std::optional<SboxFixture> sbox_preset(const std::string& name) {
    for (const auto& p : kPresets)
        if (p.name == name) return p;
    return std::nullopt;
}

SboxFixture sbox_from_hex(const std::string& hex, const std::string& name) {
    if (hex.empty() || !std::has_single_bit(hex.size()))
        throw input_error("sbox_from_hex: LUT length must be a power of two, got " +
                          std::to_string(hex.size()));
    SboxFixture s;
    s.name = name;
    s.n = std::bit_width(hex.size()) - 1;
    s.k = 4;
    for (char c : hex) {
        std::uint32_t v;
        if (c >= '0' && c <= '9') v = static_cast<std::uint32_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<std::uint32_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v = static_cast<std::uint32_t>(c - 'A' + 10);
        else throw input_error("sbox_from_hex: bad hex digit");
        s.lut.push_back(v);
    }
    std::set<std::uint32_t> distinct(s.lut.begin(), s.lut.end());
    s.permutation = distinct.size() == s.lut.size() && s.lut.size() == 16;
    s.provenance = "user-supplied hex LUT";
    return s;
}

SboxAuditReport sbox_audit(const SboxFixture& s, std::optional<int> l) {
    if (s.lut.size() != (std::size_t{1} << s.n)) throw input_error("sbox_audit: malformed LUT");
    SboxAuditReport rep;
    rep.fixture = s;
    const GBF f(s.n, s.k, s.lut);
    rep.spectrum = classify(f);

    rep.magnitudes.reserve(f.size());
    for (const auto& w : rep.spectrum.walsh) rep.magnitudes.push_back(std::abs(w.to_complex()));
    std::vector<double> sorted = rep.magnitudes;
    std::sort(sorted.begin(), sorted.end());
    for (double m : sorted) {
        if (!rep.magnitude_clusters.empty() && m - rep.magnitude_clusters.back() <= 1e-6) continue;
        rep.magnitude_clusters.push_back(m);
    }

    rep.differential = ddt(f);
    rep.differential_xor = ddt_xor(f);

    if (l && s.k % *l == 0 && s.k / *l >= 2) {
        rep.l = l;
        const AdicDecomposition d = decompose(f, *l);
        const PartitionSpectrum ps = partition_coefficients(d);
        for (std::uint32_t u = 0; u < f.size(); ++u)
            rep.support_sizes.push_back(ps.support[u].size());

        // How many derived g_beta retain f's magnitude multiset: a landscape
        // f would keep all of them, so shortfalls witness the failure.
        std::vector<double> base = rep.magnitudes;
        std::sort(base.begin(), base.end());
        const std::uint32_t beta_space = d.lower_mask() + 1;
        rep.beta_total = beta_space;
        for (std::uint32_t beta = 0; beta < beta_space; ++beta) {
            const std::vector<CycInt> w = wht(derived_beta(d, beta));
            std::vector<double> mags;
            mags.reserve(w.size());
            for (const auto& v : w) mags.push_back(std::abs(v.to_complex()));
            std::sort(mags.begin(), mags.end());
            bool same = true;
            for (std::size_t i = 0; i < mags.size(); ++i)
                if (std::abs(mags[i] - base[i]) > 1e-6) same = false;
            if (same) ++rep.beta_magnitude_matches;
        }
    }
    return rep;
}

} // namespace gbent
