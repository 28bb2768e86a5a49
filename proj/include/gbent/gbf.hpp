#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbent/cyclotomic.hpp"

namespace gbent {

/// Generalized Boolean function f: F_2^n -> Z_{2^k} as a truth table.
///
/// Index convention: bit i of the table index is input coordinate i+1, so
/// <u, x> = popcount(u & x) mod 2.
struct GBF {
    int n;
    int k;
    std::vector<std::uint32_t> table; // 2^n entries in [0, 2^k)

    GBF(int n_, int k_, std::vector<std::uint32_t> table_);

    std::uint32_t size() const { return static_cast<std::uint32_t>(table.size()); }
    std::uint32_t operator()(std::uint32_t x) const { return table[x]; }
    std::uint32_t modulus() const { return 1u << k; }
};

inline int parity(std::uint32_t u, std::uint32_t x) {
    return static_cast<int>(std::popcount(u & x) & 1u);
}

/// Full exact Walsh-Hadamard spectrum, W(u) = sum_x zeta_{2^k}^{f(x)} (-1)^{<u,x>},
/// by the in-place butterfly: n stages of pairwise ring add/sub.
std::vector<CycInt> wht(const GBF& f);

/// Direct 2^n-term summation of W(u); the oracle for the butterfly.
CycInt wht_naive(const GBF& f, std::uint32_t u);

enum class FunctionClass { Gbent, Gplateaued, Landscape, NotLandscape };

std::string to_string(FunctionClass c);

struct DualStatus {
    enum class Kind { Found, ExcludedOddNK2, NoMatch } kind;
    std::optional<std::uint32_t> rho;
};

struct SpectrumReport {
    int n = 0;
    int k = 0;
    std::vector<CycInt> walsh;
    std::vector<CycInt> sq;                           // abs_sq(W(u)), exact
    std::vector<std::optional<mpz_class>> sq_integer; // present when rational
    bool zero_in_spectrum = false;
    FunctionClass verdict = FunctionClass::NotLandscape;
    int s = -1;                 // plateau parameter, verdict >= Gplateaued
    std::vector<Level> levels;  // nonzero levels (m, v), sorted
    int length = 0;             // #nonzero levels + (zero attained ? 1 : 0)
    std::vector<std::pair<CycInt, int>> distinct_sq; // exact multiset of |W|^2
    bool dual_defined = false;                        // gbent only; false for n odd, k = 2
    std::vector<DualStatus> duals;                    // per u, filled when gbent
};

/// Exact classification with verdict precedence
/// gbent > s-gplateaued > landscape > not-landscape. Floats never decide.
SpectrumReport classify(const GBF& f);

/// The unique rho in Z_{2^k} with w = 2^{n/2} zeta_{2^k}^rho, when it exists.
/// For odd n the factor 2^{n/2} is taken as 2^{(n-1)/2} * sqrt2_element(k).
std::optional<std::uint32_t> match_regular_phase(const CycInt& w, int n);

/// Dual value at u for a gbent f (precondition checked via `rep`).
DualStatus dual_exponent(const GBF& f, const SpectrumReport& rep, std::uint32_t u);
DualStatus dual_exponent(const GBF& f, std::uint32_t u);

} // namespace gbent
