#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gbent/gbf.hpp"

namespace gbent {

/// 2^l-adic decomposition f = sum_j c_j 2^{jl}, k = l*r, with the partition of
/// inputs by the packed lower-digit vector alpha = (c_0(x), ..., c_{r-2}(x)).
///
/// alpha and beta vectors over (Z_{2^l})^{r-1} are packed into a uint32 as
/// sum_j alpha_j 2^{jl}, i.e. alpha(x) = f(x) mod 2^{k-l}.
struct AdicDecomposition {
    GBF f;
    int l = 0;
    int r = 0;
    std::vector<std::vector<std::uint32_t>> components; // r tables over Z_{2^l}
    std::vector<std::uint32_t> cell_of;                 // per x: packed alpha
    std::vector<std::uint32_t> image;                   // attained alpha, sorted

    std::uint32_t digit_mask() const { return (1u << l) - 1; }
    std::uint32_t lower_mask() const { return (r == 1) ? 0 : ((1u << (l * (r - 1))) - 1); }
};

AdicDecomposition decompose(const GBF& f, int l);

/// Per-u partition coefficients C_alpha(u) = sum_{x in P_alpha}
/// zeta_{2^l}^{c_{r-1}(x)} (-1)^{<u,x>}, exact over Z[zeta_{2^l}].
struct PartitionSpectrum {
    int n = 0, l = 0, r = 0, k = 0;
    std::vector<std::uint32_t> image;
    // coeffs[u][i] pairs with image[i].
    std::vector<std::vector<CycInt>> coeffs;
    std::vector<std::vector<std::uint32_t>> support;    // alphas with C != 0
    std::vector<std::optional<std::uint32_t>> alpha_star; // set when |support| == 1
};

/// Computes all C_alpha(u) and verifies the recombination identity
/// W_f(u) = sum_alpha C_alpha(u) zeta_{2^k}^{alpha} exactly (a hard invariant).
PartitionSpectrum partition_coefficients(const AdicDecomposition& d);

/// g_beta = c_{r-1} + sum_j beta_j c_j over Z_{2^l} (beta packed).
GBF derived_beta(const AdicDecomposition& d, std::uint32_t beta);

/// f_F = c_{r-1} + 2^{l-m} F(c_0, ..., c_{r-2}) over Z_{2^l}; F is a sparse
/// lookup over attained alpha (missing entries act as 0), values in Z_{2^m}.
GBF derived_F(const AdicDecomposition& d, int m, const std::map<std::uint32_t, std::uint32_t>& F);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct NecessityViolation {
    std::string probe; // "beta=..." or "F(...)"
    std::uint32_t u = 0;
};

/// Magnitude-invariance sweep: for a landscape f, every g_beta and every
/// sampled f_F must match f's per-u squared magnitudes exactly. Violations
/// would contradict the necessity theorem, i.e. flag an implementation bug.
struct NecessityReport {
    bool pass = true;
    std::uint64_t beta_checked = 0;
    std::uint64_t f_checked = 0;
    bool beta_exhaustive = false;
    std::uint64_t seed = 0;
    std::vector<NecessityViolation> violations;
};

NecessityReport check_necessity(const AdicDecomposition& d, int samples, std::uint64_t seed);

struct OnehotWitness {
    std::uint32_t alpha0 = 0;
    std::uint32_t a = 0;
    std::uint32_t u = 0;
    std::string reason;
};

/// One-hot sufficiency certificate: c_{r-1} landscape and every probe
/// F = a * 1_{alpha0}, a in {1, 2^{m-1}}, alpha0 in the attained image,
/// landscape with |W_{f_F}| == |W_{c_{r-1}}| pointwise. PASS certifies f
/// landscape with c_{r-1}'s levels using 1 + 2|image| checks.
struct OnehotReport {
    Verdict verdict = Verdict::Fail;
    std::uint64_t checks = 0;
    std::uint64_t budget = 0; // 2^{k-l+1} + 1
    std::vector<Level> levels; // c_{r-1}'s levels on PASS
    std::optional<OnehotWitness> witness;
};

OnehotReport verify_sufficiency_onehot(const AdicDecomposition& d, int m);

struct SparsityReport {
    Verdict verdict = Verdict::Pass;
    std::optional<std::uint32_t> failing_u;
    std::string reason;
};

/// Per-u coefficient sparsity: every u has either all C_alpha(u) = 0 or
/// exactly one nonzero with |C|^2 in `level_sqs`. With `gbent_variant` the
/// all-zero branch is rejected too (Parseval forbids it for gbent).
SparsityReport sparsity_check(const PartitionSpectrum& ps, const std::vector<mpz_class>& level_sqs,
                              bool gbent_variant);

/// All pairwise products C * conj(C') of nonzero coefficients at u are real
/// and positive. Realness is exact; the sign is read from the float value
/// with a 1e-9 guard, escalating to long double when too close to zero.
bool common_argument_check(const PartitionSpectrum& ps, std::uint32_t u);

struct PlateauedReport {
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t beta_checks = 0;
    std::optional<std::uint32_t> failing_u;
    std::optional<std::uint32_t> failing_beta;
    std::string reason;
};

/// Conditional s-plateau certificate: all g_beta s-gplateaued over Z_{2^l}
/// (a FAIL here refutes f by necessity), then per u the common-argument
/// hypothesis and Stab(D(u) + D(u)) = {0}. Hypothesis failure is
/// INCONCLUSIVE, not FAIL.
PlateauedReport verify_plateaued_common_arg(const AdicDecomposition& d, int s);

struct BasisReport {
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t checks = 0; // r - 1 on a completed run
    std::string reason;
    std::optional<std::uint32_t> failing_j;
};

/// Basis-function certificate: with affine lower components and the per-u
/// common-argument hypothesis, f is gbent iff all r-1 functions
/// c_{r-1} + c_j are gbent over Z_{2^l}. Precondition failures are
/// INCONCLUSIVE.
BasisReport verify_basis_test(const AdicDecomposition& d);

struct BinaryOracleReport {
    Verdict verdict = Verdict::Fail;
    bool exhaustive = false;
    std::uint64_t checks = 0;
    std::uint64_t budget = 0; // 2^{2^{k-1}} when exhaustive
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> witness_F; // truth table of the failing F, bit t = F(t)
};

/// Binary-component ground truth: f is gbent iff a_{k-1} + F(a_0..a_{k-2})
/// is bent for every F: F_2^{k-1} -> F_2. Exhaustive (and thus a gbent
/// decision) when 2^{2^{k-1}} <= 65536; otherwise samples `budget` random F.
BinaryOracleReport binary_char_oracle(const GBF& f, std::uint64_t budget, std::uint64_t seed = 1);

/// For gbent f: the per-u unique nonzero cell index alpha*(u); asserts it
/// equals the lower r-1 digits of the dual value (a hard invariant).
std::vector<std::uint32_t> dual_lower_digits(const AdicDecomposition& d);

} // namespace gbent
