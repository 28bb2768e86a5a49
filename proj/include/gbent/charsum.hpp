#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gbent/cyclotomic.hpp"

namespace gbent {

/// Finite abelian group Z_{m1} x ... x Z_{mt}. Elements are flat indices in
/// mixed radix, first modulus fastest. Characters are indexed the same way:
/// chi_y(x) = prod_c exp(2 pi i x_c y_c / m_c).
struct FinAbGroup {
    std::vector<std::uint32_t> moduli;
    std::uint32_t order = 1;

    explicit FinAbGroup(std::vector<std::uint32_t> moduli_);

    std::vector<std::uint32_t> decode(std::uint32_t x) const;
    std::uint32_t encode(const std::vector<std::uint32_t>& tuple) const;
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t scalar_mul(std::uint32_t m, std::uint32_t a) const;
    std::uint32_t element_order(std::uint32_t a) const;

    bool two_power_moduli() const;
    /// Smallest K with all characters in Z[zeta_{2^K}]; two-power moduli only.
    int char_ring_exponent() const;
    /// Exponent e with chi_y(x) = zeta_{2^K}^e, for the given ring exponent K.
    long char_pairing_exponent(std::uint32_t y, std::uint32_t x, int K) const;
    std::complex<double> character(std::uint32_t y, std::uint32_t x) const;

    bool operator==(const FinAbGroup& o) const { return moduli == o.moduli; }
};

/// Subsets of a group: sorted unique flat indices.
using ElemSet = std::vector<std::uint32_t>;

ElemSet sumset(const FinAbGroup& g, const ElemSet& A, const ElemSet& B);
ElemSet difference_set(const FinAbGroup& g, const ElemSet& A, const ElemSet& B);
ElemSet iterated_sumset(const FinAbGroup& g, const ElemSet& A, int t);
/// Stab(S) = {h : S + h = S}, computed by membership over all of G.
ElemSet stabilizer(const FinAbGroup& g, const ElemSet& S);
bool is_subgroup(const FinAbGroup& g, const ElemSet& S);
ElemSet generated_subgroup(const FinAbGroup& g, const ElemSet& gens);
/// Every subgroup of G (closure search; intended for small orders).
std::vector<ElemSet> all_subgroups(const FinAbGroup& g);

/// G/H with cosets named by their minimal element.
struct Quotient {
    const FinAbGroup* g = nullptr;
    ElemSet H;
    std::vector<std::uint32_t> rep; // per element of G
    ElemSet reps;                   // sorted distinct coset names

    std::uint32_t order() const { return static_cast<std::uint32_t>(reps.size()); }
    std::uint32_t project(std::uint32_t x) const { return rep[x]; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return rep[g->add(a, b)]; }
    std::uint32_t neg(std::uint32_t a) const { return rep[g->neg(a)]; }
    std::uint32_t element_order(std::uint32_t a) const;
    std::size_t rep_pos(std::uint32_t r) const; // index into reps
};

Quotient make_quotient(const FinAbGroup& g, const ElemSet& H);
ElemSet project_set(const Quotient& q, const ElemSet& S);
ElemSet quotient_sumset(const Quotient& q, const ElemSet& A, const ElemSet& B);
ElemSet quotient_iterated_sumset(const Quotient& q, const ElemSet& A, int t);
ElemSet quotient_stabilizer(const Quotient& q, const ElemSet& S);

/// Iterated-sumset growth through the quotient by Stab(D+D). Verified
/// claims: Stab(Dbar+Dbar) = {0}; |2 Dbar| >= min(|G/H|, 2|Dbar|-1) with
/// strict growth |2 Dbar| > |Dbar| whenever 2 <= |Dbar| < |G/H| (the step
/// the sparsity theorems consume); and for higher k the bound
/// |k Dbar| >= min(|G/H|, k(|Dbar|-1)+1) together with strict growth below
/// |G/H|, for as long as Stab(k Dbar) stays trivial. Once an iterate
/// acquires a nontrivial stabilizer the iteration saturates a subgroup and
/// the linear bound genuinely fails (e.g. D = {0, 2} in Z_8 at k = 4), so
/// `saturation_k` records where accounting stopped. Requires 0 in D.
struct GrowthReport {
    ElemSet H;
    ElemSet Dbar;
    std::uint32_t quotient_order = 0;
    bool stab_trivial = false;
    std::vector<std::uint32_t> iterated_sizes; // |k Dbar|, k = 1..kmax
    int saturation_k = 0;                      // smallest k with Stab(k Dbar) != {0}; 0 if none
    bool bound_ok = false;
    bool strict_growth_ok = false;
    bool pass = false;
};

GrowthReport sumset_growth_check(const FinAbGroup& g, const ElemSet& D, int kmax);

/// Finitely supported measure mu on G. Exact mode keeps every weight in one
/// ring Z[zeta_{2^{ring_k}}]; float mode stores complex doubles. Weights are
/// nonzero and points distinct.
struct WeightedSupport {
    FinAbGroup group;
    std::vector<std::uint32_t> points;
    bool exact = false;
    int ring_k = 1;
    std::vector<CycInt> weights_exact;
    std::vector<std::complex<double>> weights_float;

    static WeightedSupport make_exact(FinAbGroup g, std::vector<std::uint32_t> pts,
                                      std::vector<CycInt> ws);
    static WeightedSupport make_float(FinAbGroup g, std::vector<std::uint32_t> pts,
                                      std::vector<std::complex<double>> ws);

    std::size_t size() const { return points.size(); }
    std::complex<double> weight_as_complex(std::size_t i) const;
};

/// Pairwise z_i conj(z_j) real and positive (single shared phase).
bool weights_common_argument(const WeightedSupport& ws);

struct FourierResult {
    bool exact = false;
    int ring_k = 1;
    std::vector<CycInt> values_exact;               // per character y, exact mode
    std::vector<std::complex<double>> values_float; // always filled
};

/// All |G| character sums S_chi = sum_i z_i chi(alpha_i), via the transform
/// convention f_hat(chi) = sum_x f(x) conj(chi(x)). Exact only when the
/// moduli are all powers of two.
FourierResult fourier(const WeightedSupport& ws);

struct LevelProfile {
    bool exact = false;
    bool zero_present = false;
    std::vector<CycInt> sq_exact;  // distinct nonzero |S_chi|^2, exact mode
    std::vector<double> sq_float;  // distinct nonzero |S_chi|^2, clustered
    int t = 0;                     // number of distinct nonzero levels
    enum class Kind { Degenerate, TwoLevel, MultiLevel } kind = Kind::Degenerate;
};

/// Distinct squared magnitudes of a transform; exact where possible, float
/// clustering at relative 1e-7 otherwise. TwoLevel means one nonzero level.
LevelProfile magnitude_levels(const FourierResult& fr);

enum class TwoPointClass { SmallOrder, GenericR3, ExceptionalCubeRoot, MultiValued };

struct TwoPointReport {
    std::uint32_t r = 0;            // order of beta - alpha
    TwoPointClass cls = TwoPointClass::SmallOrder;
    std::vector<double> magnitudes; // distinct |z1 + z2 w|, w in mu_r, sorted
    bool two_level = false;         // at most one distinct nonzero magnitude
};

/// Magnitude pattern of the two-point sum z1 chi(alpha) + z2 chi(beta):
/// r >= 4 always multi-valued; r = 3 two-level only in the exceptional case
/// |z1| = |z2| with -z1/z2 a primitive cube root of unity.
TwoPointReport two_point_analysis(const FinAbGroup& g, std::uint32_t alpha, std::uint32_t beta,
                                  std::complex<double> z1, std::complex<double> z2);

struct TwoLevelCertificate {
    bool hypotheses_met = false;
    std::string failed_hypothesis; // "common-argument" or "two-level"
    ElemSet D, H, Dbar, Sbar;
    std::uint32_t quotient_order = 0;
    std::uint32_t coset_count = 0; // |Sbar|
    bool order_conclusion_applied = false; // |Sbar| = 2 and |Dbar| >= 3
};

/// Two-level sparsity certificate: a common-argument measure whose transform
/// magnitudes lie in {0, A} is supported on at most 2 cosets of
/// H = Stab(D + D), and in the two-coset case with |Dbar| >= 3 every nonzero
/// element of Dbar has order at most 2. Conclusion failures throw
/// invariant_violation (the theorem is unconditional); hypothesis failures
/// are reported, never thrown.
TwoLevelCertificate certify_overconstrained(const WeightedSupport& ws);

struct MultilevelCertificate {
    bool hypotheses_met = false;
    std::string failed_hypothesis; // "level-count", "common-argument",
                                   // "no-admissible-x", "second-derivative"
    int t = 0;
    ElemSet candidates;            // 2 Dbar \ Dbar, as coset reps
    ElemSet admissible_x;          // all admissible witnesses, as coset reps
    bool x_hypothesis_trivial = false; // no candidates: Dbar = {0} forces the
                                       // conclusion outright
    bool advisory_dbar_small = false;  // |Dbar| < |G/H| / 2: a sketched
                                       // sufficient condition, advisory only
                                       // (it does not imply admissibility)
    ElemSet Sbar;
    std::uint32_t coset_count = 0;
    bool conclusion_ok = false;    // |Sbar| <= t+1
};

/// Conditional multi-level extension: levels {0, A_1..A_t}, common argument,
/// an x in 2 Dbar \ Dbar avoiding every iterated sumset l * supp(nu_bar')
/// for l >= 3, and P''(a) != 0 for P(X) = X prod_j (X - A_j^2) with
/// a = nu_bar(0). All admissible x are reported.
MultilevelCertificate certify_multilevel(const WeightedSupport& ws, int t_expected);

struct AutocorrelationResult {
    WeightedSupport nu;             // mu * mu~ restricted to its support
    bool input_common_argument = false;
    bool support_equals_diffset = false; // supp(nu) == S - S
    bool strict_inclusion = false;       // supp(nu) proper subset of S - S
    bool transform_identity_ok = false;  // nu_hat(chi) = |mu_hat(chi)|^2 (exact mode)
};

/// nu = mu * mu~ with mu~(x) = conj(mu(-x)). Under common-argument weights
/// supp(nu) = S - S is asserted; otherwise cancellation may shrink the
/// support and the strict inclusion is reported instead.
AutocorrelationResult autocorrelation(const WeightedSupport& ws);

struct UncertaintyReport {
    std::uint32_t group_order = 0;
    std::uint32_t support_size = 0;
    std::uint32_t transform_support_size = 0;
    bool product_bound_ok = false; // |supp f| |supp f_hat| >= |G|
    std::uint32_t d1 = 0, d2 = 0;  // consecutive divisors around |supp f|
    bool refined_bound_ok = false; // |supp f_hat| >= |G|(d1+d2-k)/(d1 d2)
    bool equality = false;         // product == |G|
    bool equality_structure_ok = false; // support is a coset, |f| constant,
                                        // phases multiplicative on it
};

UncertaintyReport uncertainty_check(const WeightedSupport& ws);

struct NumerologyReport {
    bool hypotheses_met = false;
    std::string failed_hypothesis;
    std::uint32_t N = 0;     // |supp(f_hat)|
    double A_sq = 0.0;
    bool identity_ok = false; // N A^2 == |G| sum |f|^2
    double support_lower_bound = 0.0; // |G| / N
};

/// Parseval numerology for two-level spectra: N A^2 = |G| sum_x |f(x)|^2,
/// exact in exact mode, 1e-6 relative otherwise.
NumerologyReport numerology_check(const WeightedSupport& ws);

// Dense toolkit used by the certifiers and the harmonic-analysis tests.

using DenseC = std::vector<std::complex<double>>;
using DenseZ = std::vector<CycInt>;

DenseC fourier_dense(const FinAbGroup& g, const DenseC& f);
DenseC inverse_fourier_dense(const FinAbGroup& g, const DenseC& fh);
DenseC convolve_dense(const FinAbGroup& g, const DenseC& f, const DenseC& h);
DenseC pushforward_dense(const Quotient& q, const DenseC& f); // indexed by rep position

DenseZ fourier_exact(const FinAbGroup& g, const DenseZ& f, int ring_k);
DenseZ convolve_exact(const FinAbGroup& g, const DenseZ& f, const DenseZ& h);
DenseZ pushforward_exact(const Quotient& q, const DenseZ& f);

} // namespace gbent
