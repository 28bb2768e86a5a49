#include "gbent/gbf.hpp"

#include <algorithm>
#include <map>

#include "gbent/errors.hpp"

namespace gbent {

GBF::GBF(int n_, int k_, std::vector<std::uint32_t> table_) : n(n_), k(k_), table(std::move(table_)) {
    if (n < 1 || n > 24) throw input_error("GBF: n must be in [1, 24], got " + std::to_string(n));
    if (k < 1 || k > 16) throw input_error("GBF: k must be in [1, 16], got " + std::to_string(k));
    if (table.size() != (std::size_t{1} << n))
        throw input_error("GBF: table length " + std::to_string(table.size()) + " != 2^n");
    const std::uint32_t mod = 1u << k;
    for (std::size_t x = 0; x < table.size(); ++x)
        if (table[x] >= mod)
            throw input_error("GBF: table[" + std::to_string(x) + "] = " + std::to_string(table[x]) +
                              " out of range for Z_" + std::to_string(mod));
}

std::vector<CycInt> wht(const GBF& f) {
    const std::uint32_t N = f.size();
    std::vector<CycInt> w;
    w.reserve(N);
    for (std::uint32_t x = 0; x < N; ++x)
        w.push_back(CycInt::root_power(f.k, static_cast<long>(f.table[x])));
    for (std::uint32_t half = 1; half < N; half <<= 1)
        for (std::uint32_t block = 0; block < N; block += half << 1)
            for (std::uint32_t i = block; i < block + half; ++i)
                CycInt::butterfly_pair(w[i], w[i + half]);
    return w;
}

CycInt wht_naive(const GBF& f, std::uint32_t u) {
    // Generic ring additions over precomputed roots: O(2^n) full-width adds.
    std::vector<CycInt> roots;
    roots.reserve(f.modulus());
    for (std::uint32_t v = 0; v < f.modulus(); ++v)
        roots.push_back(CycInt::root_power(f.k, static_cast<long>(v)));
    CycInt acc = CycInt::zero(f.k);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        if (parity(u, x))
            acc -= roots[f.table[x]];
        else
            acc += roots[f.table[x]];
    }
    return acc;
}

std::string to_string(FunctionClass c) {
    switch (c) {
        case FunctionClass::Gbent: return "gbent";
        case FunctionClass::Gplateaued: return "gplateaued";
        case FunctionClass::Landscape: return "landscape";
        case FunctionClass::NotLandscape: return "not-landscape";
    }
    return "?";
}

std::optional<std::uint32_t> match_regular_phase(const CycInt& w, int n) {
    const int k = w.k();
    CycInt scale = CycInt::zero(k);
    if (n % 2 == 0) {
        scale = CycInt::from_integer(k, pow2(static_cast<unsigned long>(n / 2)));
    } else {
        if (k < 3) return std::nullopt; // sqrt(2) is not in Z[i] or Z
        scale = CycInt::from_integer(k, pow2(static_cast<unsigned long>((n - 1) / 2))) * sqrt2_element(k);
    }
    const long order = 1L << k;
    for (long rho = 0; rho < order; ++rho) {
        if (scale * CycInt::root_power(k, rho) == w) return static_cast<std::uint32_t>(rho);
    }
    return std::nullopt;
}

SpectrumReport classify(const GBF& f) {
    SpectrumReport rep;
    rep.n = f.n;
    rep.k = f.k;
    rep.walsh = wht(f);

    const std::uint32_t N = f.size();
    rep.sq.reserve(N);
    rep.sq_integer.reserve(N);
    mpz_class parseval = 0;
    for (std::uint32_t u = 0; u < N; ++u) {
        rep.sq.push_back(abs_sq(rep.walsh[u]));
        auto as_int = rep.sq.back().as_rational_integer();
        if (as_int) parseval += *as_int;
        rep.sq_integer.push_back(std::move(as_int));
        if (rep.sq.back().is_zero()) rep.zero_in_spectrum = true;
    }

    std::map<CycInt, int> distinct;
    for (const auto& s : rep.sq) ++distinct[s];
    rep.distinct_sq.assign(distinct.begin(), distinct.end());

    const bool all_rational =
        std::all_of(rep.sq_integer.begin(), rep.sq_integer.end(), [](const auto& o) { return o.has_value(); });

    if (all_rational) {
        // Parseval: sum_u |W(u)|^2 = 2^{2n}, exactly.
        if (parseval != pow2(static_cast<unsigned long>(2 * f.n)))
            throw invariant_violation("Parseval identity failed; Walsh transform is broken");
    } else {
        // Cross-check Parseval in the ring: the sum of all abs_sq must still
        // be the rational integer 2^{2n}.
        CycInt total = CycInt::zero(f.k);
        for (const auto& s : rep.sq) total += s;
        auto as_int = total.as_rational_integer();
        if (!as_int || *as_int != pow2(static_cast<unsigned long>(2 * f.n)))
            throw invariant_violation("Parseval identity failed; Walsh transform is broken");
    }

    if (!all_rational) {
        rep.verdict = FunctionClass::NotLandscape;
        return rep;
    }

    // Distinct nonzero squared magnitudes as integers.
    std::vector<mpz_class> nonzero;
    for (const auto& [val, cnt] : rep.distinct_sq) {
        auto v = val.as_rational_integer();
        if (v && *v != 0) nonzero.push_back(*v);
    }
    std::sort(nonzero.begin(), nonzero.end());

    const mpz_class bent_sq = pow2(static_cast<unsigned long>(f.n));
    if (!rep.zero_in_spectrum && nonzero.size() == 1 && nonzero[0] == bent_sq) {
        rep.verdict = FunctionClass::Gbent;
        rep.s = 0;
        rep.levels = {Level{f.n, 1}};
        rep.length = 1;
        rep.dual_defined = !(f.n % 2 == 1 && f.k == 2);
        rep.duals.reserve(N);
        for (std::uint32_t u = 0; u < N; ++u) rep.duals.push_back(dual_exponent(f, rep, u));
        return rep;
    }

    // Landscape levels for each nonzero value; also feeds the plateau branch.
    std::vector<Level> levels;
    bool all_levels = true;
    for (const auto& v : nonzero) {
        auto lvl = is_level(v);
        if (!lvl) {
            all_levels = false;
            break;
        }
        levels.push_back(*lvl);
    }

    if (nonzero.size() == 1) {
        // Plateau candidate: the single nonzero value must be 2^{n+s}.
        const mpz_class& v = nonzero[0];
        if (mpz_popcount(v.get_mpz_t()) == 1) {
            const int e = static_cast<int>(mpz_scan1(v.get_mpz_t(), 0));
            if (e >= f.n) {
                rep.verdict = FunctionClass::Gplateaued;
                rep.s = e - f.n;
                rep.levels = levels;
                rep.length = 1 + (rep.zero_in_spectrum ? 1 : 0);
                return rep;
            }
        }
    }

    if (all_levels && !nonzero.empty()) {
        rep.verdict = FunctionClass::Landscape;
        rep.levels = std::move(levels);
        rep.length = static_cast<int>(nonzero.size()) + (rep.zero_in_spectrum ? 1 : 0);
        return rep;
    }

    rep.verdict = FunctionClass::NotLandscape;
    return rep;
}

DualStatus dual_exponent(const GBF& f, const SpectrumReport& rep, std::uint32_t u) {
    if (rep.verdict != FunctionClass::Gbent)
        throw input_error("dual_exponent: function is not gbent");
    if (f.n % 2 == 1 && f.k == 2)
        return DualStatus{DualStatus::Kind::ExcludedOddNK2, std::nullopt};
    auto rho = match_regular_phase(rep.walsh[u], f.n);
    if (!rho) return DualStatus{DualStatus::Kind::NoMatch, std::nullopt};
    return DualStatus{DualStatus::Kind::Found, rho};
}

DualStatus dual_exponent(const GBF& f, std::uint32_t u) {
    return dual_exponent(f, classify(f), u);
}

} // namespace gbent
