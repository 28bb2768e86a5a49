#include "gbent/adic.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gbent/charsum.hpp"
#include "gbent/crypto.hpp"
#include "gbent/errors.hpp"

namespace gbent {

AdicDecomposition decompose(const GBF& f, int l) {
    if (l < 1 || f.k % l != 0)
        throw input_error("decompose: l = " + std::to_string(l) + " does not divide k = " +
                          std::to_string(f.k));
    AdicDecomposition d{f, l, f.k / l, {}, {}, {}};
    const std::uint32_t mask = d.digit_mask();
    d.components.assign(d.r, std::vector<std::uint32_t>(f.size()));
    d.cell_of.assign(f.size(), 0);
    std::set<std::uint32_t> image;
    const std::uint32_t lmask = d.lower_mask();
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        const std::uint32_t v = f.table[x];
        for (int j = 0; j < d.r; ++j) d.components[j][x] = (v >> (j * l)) & mask;
        d.cell_of[x] = v & lmask;
        image.insert(d.cell_of[x]);
    }
    d.image.assign(image.begin(), image.end());
    return d;
}

PartitionSpectrum partition_coefficients(const AdicDecomposition& d) {
    if (d.r < 2) throw input_error("partition_coefficients: degenerate decomposition (r = 1)");
    PartitionSpectrum ps;
    ps.n = d.f.n;
    ps.l = d.l;
    ps.r = d.r;
    ps.k = d.f.k;
    ps.image = d.image;

    const std::uint32_t N = d.f.size();
    const auto& top = d.components[d.r - 1];

    // One masked butterfly per attained cell.
    std::vector<std::vector<CycInt>> per_cell; // [cell][u]
    per_cell.reserve(d.image.size());
    for (const std::uint32_t alpha : d.image) {
        std::vector<CycInt> w;
        w.reserve(N);
        for (std::uint32_t x = 0; x < N; ++x) {
            if (d.cell_of[x] == alpha)
                w.push_back(CycInt::root_power(d.l, static_cast<long>(top[x])));
            else
                w.push_back(CycInt::zero(d.l));
        }
        for (std::uint32_t half = 1; half < N; half <<= 1)
            for (std::uint32_t block = 0; block < N; block += half << 1)
                for (std::uint32_t i = block; i < block + half; ++i)
                    CycInt::butterfly_pair(w[i], w[i + half]);
        per_cell.push_back(std::move(w));
    }

    ps.coeffs.assign(N, {});
    ps.support.assign(N, {});
    ps.alpha_star.assign(N, std::nullopt);
    const std::vector<CycInt> walsh = wht(d.f);
    for (std::uint32_t u = 0; u < N; ++u) {
        ps.coeffs[u].reserve(d.image.size());
        CycInt recombined = CycInt::zero(d.f.k);
        for (std::size_t c = 0; c < d.image.size(); ++c) {
            const CycInt& C = per_cell[c][u];
            ps.coeffs[u].push_back(C);
            if (!C.is_zero()) ps.support[u].push_back(d.image[c]);
            if (!C.is_zero())
                recombined += mul_root_power(embed(C, d.f.k), static_cast<long>(d.image[c]));
        }
        if (recombined != walsh[u])
            throw invariant_violation("partition coefficients do not recombine to the Walsh value");
        if (ps.support[u].size() == 1) ps.alpha_star[u] = ps.support[u][0];
    }
    return ps;
}

GBF derived_beta(const AdicDecomposition& d, std::uint32_t beta) {
    if (d.r < 2) throw input_error("derived_beta: degenerate decomposition (r = 1)");
    if (beta > d.lower_mask()) throw input_error("derived_beta: beta out of range");
    const std::uint32_t mask = d.digit_mask();
    std::vector<std::uint32_t> table(d.f.size());
    for (std::uint32_t x = 0; x < d.f.size(); ++x) {
        std::uint32_t acc = d.components[d.r - 1][x];
        for (int j = 0; j + 1 < d.r; ++j) {
            const std::uint32_t bj = (beta >> (j * d.l)) & mask;
            acc += bj * d.components[j][x];
        }
        table[x] = acc & mask;
    }
    return GBF(d.f.n, d.l, std::move(table));
}

GBF derived_F(const AdicDecomposition& d, int m, const std::map<std::uint32_t, std::uint32_t>& F) {
    if (d.r < 2) throw input_error("derived_F: degenerate decomposition (r = 1)");
    if (m < 1 || m > d.l) throw input_error("derived_F: m must satisfy 1 <= m <= l");
    const std::uint32_t mask = d.digit_mask();
    const std::uint32_t mmod = 1u << m;
    for (const auto& [alpha, val] : F) {
        if (alpha > d.lower_mask()) throw input_error("derived_F: alpha out of range");
        if (val >= mmod) throw input_error("derived_F: F value out of Z_{2^m}");
    }
    std::vector<std::uint32_t> table(d.f.size());
    const int shift = d.l - m;
    for (std::uint32_t x = 0; x < d.f.size(); ++x) {
        std::uint32_t acc = d.components[d.r - 1][x];
        const auto it = F.find(d.cell_of[x]);
        if (it != F.end()) acc += it->second << shift;
        table[x] = acc & mask;
    }
    return GBF(d.f.n, d.l, std::move(table));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

namespace {

// |W_g(u)|^2 == |W_f(u)|^2 with the two sides in rings Z[zeta_{2^l}] and
// Z[zeta_{2^k}]: embed into the larger ring and compare exactly.
bool same_sq_magnitudes(const std::vector<CycInt>& walsh_small, const std::vector<CycInt>& sq_big,
                        int k_big, std::uint32_t* bad_u) {
    for (std::uint32_t u = 0; u < walsh_small.size(); ++u) {
        if (embed(abs_sq(walsh_small[u]), k_big) != sq_big[u]) {
            if (bad_u) *bad_u = u;
            return false;
        }
    }
    return true;
}

bool is_landscape_class(FunctionClass c) { return c != FunctionClass::NotLandscape; }

} // namespace

NecessityReport check_necessity(const AdicDecomposition& d, int samples, std::uint64_t seed) {
    if (d.l < 2 || d.r < 2)
        throw input_error("check_necessity: requires l >= 2 and r >= 2");
    const SpectrumReport base = classify(d.f);
    if (!is_landscape_class(base.verdict))
        throw input_error("check_necessity: refused, f is not landscape");

    NecessityReport rep;
    rep.seed = seed;
    std::mt19937_64 rng(seed);

    const std::uint32_t beta_space = d.lower_mask() + 1;
    rep.beta_exhaustive = d.l * (d.r - 1) <= 8;
    std::vector<std::uint32_t> betas;
    if (rep.beta_exhaustive) {
        betas.resize(beta_space);
        for (std::uint32_t b = 0; b < beta_space; ++b) betas[b] = b;
    } else {
        for (int i = 0; i < samples; ++i)
            betas.push_back(static_cast<std::uint32_t>(rng() % beta_space));
    }
    for (const std::uint32_t beta : betas) {
        const std::vector<CycInt> w = wht(derived_beta(d, beta));
        std::uint32_t bad = 0;
        if (!same_sq_magnitudes(w, base.sq, d.f.k, &bad)) {
            rep.pass = false;
            rep.violations.push_back({"beta=" + std::to_string(beta), bad});
        }
        ++rep.beta_checked;
    }

    for (int i = 0; i < samples; ++i) {
        const int m = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(d.l - 1));
        std::map<std::uint32_t, std::uint32_t> F;
        for (const std::uint32_t alpha : d.image)
            F[alpha] = static_cast<std::uint32_t>(rng() % (1u << m));
        const std::vector<CycInt> w = wht(derived_F(d, m, F));
        std::uint32_t bad = 0;
        if (!same_sq_magnitudes(w, base.sq, d.f.k, &bad)) {
            rep.pass = false;
            rep.violations.push_back({"F(m=" + std::to_string(m) + ",#" + std::to_string(i) + ")", bad});
        }
        ++rep.f_checked;
    }
    return rep;
}

OnehotReport verify_sufficiency_onehot(const AdicDecomposition& d, int m) {
    if (d.l < 2 || d.r < 2)
        throw input_error("verify_sufficiency_onehot: requires l >= 2 and r >= 2");
    if (m < 2 || m > d.l)
        throw input_error("verify_sufficiency_onehot: m must satisfy 2 <= m <= l");

    OnehotReport rep;
    rep.budget = (std::uint64_t{1} << (d.f.k - d.l + 1)) + 1;

    const GBF top(d.f.n, d.l, d.components[d.r - 1]);
    const SpectrumReport top_rep = classify(top);
    rep.checks = 1;
    if (!is_landscape_class(top_rep.verdict)) {
        rep.verdict = Verdict::Fail;
        rep.witness = OnehotWitness{0, 0, 0, "c_{r-1} is not landscape"};
        return rep;
    }
    rep.levels = top_rep.levels;

    const std::uint32_t probes[2] = {1u, 1u << (m - 1)};
    for (const std::uint32_t alpha0 : d.image) {
        for (const std::uint32_t a : probes) {
            ++rep.checks;
            const std::vector<CycInt> w = wht(derived_F(d, m, {{alpha0, a}}));
            for (std::uint32_t u = 0; u < w.size(); ++u) {
                if (abs_sq(w[u]) != top_rep.sq[u]) {
                    rep.verdict = Verdict::Fail;
                    rep.witness = OnehotWitness{alpha0, a, u, "|W_{f_F}(u)| != |W_{c_{r-1}}(u)|"};
                    return rep;
                }
            }
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

SparsityReport sparsity_check(const PartitionSpectrum& ps, const std::vector<mpz_class>& level_sqs,
                              bool gbent_variant) {
    SparsityReport rep;
    for (std::uint32_t u = 0; u < ps.support.size(); ++u) {
        const std::size_t nz = ps.support[u].size();
        if (nz == 0) {
            if (gbent_variant) {
                rep.verdict = Verdict::Fail;
                rep.failing_u = u;
                rep.reason = "all coefficients vanish (excluded by Parseval for gbent)";
                return rep;
            }
            continue;
        }
        if (nz > 1) {
            rep.verdict = Verdict::Fail;
            rep.failing_u = u;
            rep.reason = std::to_string(nz) + " nonzero coefficients";
            return rep;
        }
        // The unique nonzero coefficient must carry an admissible magnitude.
        const std::uint32_t alpha = ps.support[u][0];
        const auto pos = std::lower_bound(ps.image.begin(), ps.image.end(), alpha) - ps.image.begin();
        const auto sq = abs_sq(ps.coeffs[u][static_cast<std::size_t>(pos)]);
        const auto as_int = sq.as_rational_integer();
        const bool ok =
            as_int && std::find(level_sqs.begin(), level_sqs.end(), *as_int) != level_sqs.end();
        if (!ok) {
            rep.verdict = Verdict::Fail;
            rep.failing_u = u;
            rep.reason = "coefficient magnitude outside the level set";
            return rep;
        }
    }
    return rep;
}

bool common_argument_check(const PartitionSpectrum& ps, std::uint32_t u) {
    const auto& sup = ps.support[u];
    if (sup.size() <= 1) return true;
    std::vector<const CycInt*> nz;
    for (const std::uint32_t alpha : sup) {
        const auto pos = std::lower_bound(ps.image.begin(), ps.image.end(), alpha) - ps.image.begin();
        nz.push_back(&ps.coeffs[u][static_cast<std::size_t>(pos)]);
    }
    for (std::size_t i = 0; i < nz.size(); ++i) {
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
            const CycInt p = *nz[i] * conj(*nz[j]);
            if (conj(p) != p) return false;
            const double v = p.to_complex().real();
            if (std::abs(v) > 1e-9) {
                if (v < 0) return false;
            } else if (p.to_real_long_double() <= 0) {
                return false;
            }
        }
    }
    return true;
}

PlateauedReport verify_plateaued_common_arg(const AdicDecomposition& d, int s) {
    if (d.l < 2 || d.r < 2)
        throw input_error("verify_plateaued_common_arg: requires l >= 2 and r >= 2");
    if (s < 0 || s > d.f.n) throw input_error("verify_plateaued_common_arg: s out of range");

    PlateauedReport rep;
    const mpz_class target = pow2(static_cast<unsigned long>(d.f.n + s));
    const std::uint32_t beta_space = d.lower_mask() + 1;
    for (std::uint32_t beta = 0; beta < beta_space; ++beta) {
        ++rep.beta_checks;
        const std::vector<CycInt> w = wht(derived_beta(d, beta));
        for (std::uint32_t u = 0; u < w.size(); ++u) {
            const auto sq = abs_sq(w[u]).as_rational_integer();
            if (!sq || (*sq != 0 && *sq != target)) {
                // Refutation, not a hypothesis failure: a plateaued f forces
                // every g_beta to the same two-valued spectrum.
                rep.verdict = Verdict::Fail;
                rep.failing_beta = beta;
                rep.failing_u = u;
                rep.reason = "g_beta is not s-gplateaued";
                return rep;
            }
        }
    }

    const PartitionSpectrum ps = partition_coefficients(d);
    const FinAbGroup G(std::vector<std::uint32_t>(static_cast<std::size_t>(d.r - 1), 1u << d.l));
    for (std::uint32_t u = 0; u < ps.support.size(); ++u) {
        if (ps.support[u].empty()) continue;
        if (!common_argument_check(ps, u)) {
            rep.verdict = Verdict::Inconclusive;
            rep.failing_u = u;
            rep.reason = "common-argument hypothesis fails";
            return rep;
        }
        const ElemSet D = difference_set(G, ps.support[u], ps.support[u]);
        const ElemSet st = stabilizer(G, sumset(G, D, D));
        if (st != ElemSet{0}) {
            rep.verdict = Verdict::Inconclusive;
            rep.failing_u = u;
            rep.reason = "Stab(D(u) + D(u)) is nontrivial";
            return rep;
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

BasisReport verify_basis_test(const AdicDecomposition& d) {
    if (d.l < 2 || d.r < 2)
        throw input_error("verify_basis_test: requires l >= 2 and r >= 2");
    BasisReport rep;

    for (int j = 0; j + 1 < d.r; ++j) {
        if (!is_affine(GBF(d.f.n, d.l, d.components[j]))) {
            rep.verdict = Verdict::Inconclusive;
            rep.reason = "lower component c_" + std::to_string(j) + " is not affine";
            return rep;
        }
    }
    const PartitionSpectrum ps = partition_coefficients(d);
    for (std::uint32_t u = 0; u < ps.support.size(); ++u) {
        if (!common_argument_check(ps, u)) {
            rep.verdict = Verdict::Inconclusive;
            rep.reason = "common-argument hypothesis fails at u = " + std::to_string(u);
            return rep;
        }
    }

    const mpz_class bent_sq = pow2(static_cast<unsigned long>(d.f.n));
    for (int j = 0; j + 1 < d.r; ++j) {
        ++rep.checks;
        const std::uint32_t ej = 1u << (j * d.l);
        const std::vector<CycInt> w = wht(derived_beta(d, ej));
        for (std::uint32_t u = 0; u < w.size(); ++u) {
            const auto sq = abs_sq(w[u]).as_rational_integer();
            if (!sq || *sq != bent_sq) {
                rep.verdict = Verdict::Fail;
                rep.failing_j = static_cast<std::uint32_t>(j);
                rep.reason = "basis function c_{r-1} + c_" + std::to_string(j) + " is not gbent";
                return rep;
            }
        }
    }
    rep.verdict = Verdict::Pass;
    return rep;
}

namespace {

// Boolean bentness via the integer Walsh transform.
bool is_bent_boolean(const std::vector<int>& table, int n) {
    std::vector<long> w(table.size());
    for (std::size_t x = 0; x < table.size(); ++x) w[x] = table[x] ? -1 : 1;
    for (std::size_t half = 1; half < w.size(); half <<= 1)
        for (std::size_t block = 0; block < w.size(); block += half << 1)
            for (std::size_t i = block; i < block + half; ++i) {
                const long lo = w[i] + w[i + half];
                const long hi = w[i] - w[i + half];
                w[i] = lo;
                w[i + half] = hi;
            }
    const long target = 1L << n;
    for (const long v : w)
        if (v * v != target) return false;
    return true;
}

} // namespace

BinaryOracleReport binary_char_oracle(const GBF& f, std::uint64_t budget, std::uint64_t seed) {
    if (f.k < 2) throw input_error("binary_char_oracle: requires k >= 2");
    BinaryOracleReport rep;
    rep.seed = seed;
    const int fin = f.k - 1;              // arity of F
    const std::uint32_t fdom = 1u << fin; // 2^{k-1} inputs of F
    rep.exhaustive = fdom <= 16;          // at most 2^16 functions F
    rep.budget = rep.exhaustive ? (std::uint64_t{1} << fdom) : budget;

    std::mt19937_64 rng(seed);
    const std::uint32_t lower_mask = fdom - 1;
    std::vector<int> g(f.size());

    const auto run_one = [&](const std::vector<std::uint8_t>& F_table) {
        for (std::uint32_t x = 0; x < f.size(); ++x) {
            const std::uint32_t v = f.table[x];
            const int a_top = static_cast<int>((v >> fin) & 1u);
            g[x] = a_top ^ F_table[v & lower_mask];
        }
        return is_bent_boolean(g, f.n);
    };

    std::vector<std::uint8_t> F_table(fdom);
    if (rep.exhaustive) {
        const std::uint64_t total = std::uint64_t{1} << fdom;
        for (std::uint64_t code = 0; code < total; ++code) {
            for (std::uint32_t t = 0; t < fdom; ++t) F_table[t] = (code >> t) & 1u;
            ++rep.checks;
            if (!run_one(F_table)) {
                rep.verdict = Verdict::Fail;
                rep.witness_F = code;
                return rep;
            }
        }
        rep.verdict = Verdict::Pass;
        return rep;
    }

    for (std::uint64_t i = 0; i < budget; ++i) {
        std::uint64_t code = 0;
        for (std::uint32_t t = 0; t < fdom; ++t) {
            const std::uint8_t bit = rng() & 1u;
            F_table[t] = bit;
            if (t < 64) code |= std::uint64_t{bit} << t;
        }
        ++rep.checks;
        if (!run_one(F_table)) {
            rep.verdict = Verdict::Fail;
            rep.witness_F = code; // truncated to 64 positions for reporting
            return rep;
        }
    }
    rep.verdict = Verdict::Pass; // sampled evidence only
    return rep;
}

std::vector<std::uint32_t> dual_lower_digits(const AdicDecomposition& d) {
    const SpectrumReport rep = classify(d.f);
    if (rep.verdict != FunctionClass::Gbent)
        throw input_error("dual_lower_digits: f is not gbent");
    if (!rep.dual_defined)
        throw input_error("dual_lower_digits: no dual in the excluded case (n odd, k = 2)");
    const PartitionSpectrum ps = partition_coefficients(d);
    std::vector<std::uint32_t> out(d.f.size());
    for (std::uint32_t u = 0; u < d.f.size(); ++u) {
        if (!ps.alpha_star[u])
            throw invariant_violation("gbent spectrum without a unique nonzero cell");
        out[u] = *ps.alpha_star[u];
        const DualStatus& ds = rep.duals[u];
        if (ds.kind != DualStatus::Kind::Found)
            throw invariant_violation("gbent value without a regular phase");
        if ((*ds.rho & d.lower_mask()) != out[u])
            throw invariant_violation("alpha*(u) disagrees with the dual's lower digits");
    }
    return out;
}

} // namespace gbent
