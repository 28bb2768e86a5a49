#include "gbent/charsum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include "gbent/errors.hpp"

namespace gbent {

namespace {

constexpr std::uint32_t kMaxGroupOrder = 4096;

std::vector<char> as_bitset(std::uint32_t order, const ElemSet& S) {
    std::vector<char> b(order, 0);
    for (auto x : S) b[x] = 1;
    return b;
}

ElemSet from_bitset(const std::vector<char>& b) {
    ElemSet out;
    for (std::uint32_t x = 0; x < b.size(); ++x)
        if (b[x]) out.push_back(x);
    return out;
}

bool sign_positive(const CycInt& real_elt) {
    // real_elt is fixed by conjugation and nonzero; read the sign of its
    // real embedding, escalating precision near zero.
    const double v = real_elt.to_complex().real();
    if (std::abs(v) > 1e-9) return v > 0;
    const long double w = real_elt.to_real_long_double();
    return w > 0;
}

} // namespace

FinAbGroup::FinAbGroup(std::vector<std::uint32_t> moduli_) : moduli(std::move(moduli_)) {
    if (moduli.empty()) throw input_error("FinAbGroup: no moduli");
    for (auto m : moduli) {
        if (m < 1) throw input_error("FinAbGroup: modulus must be >= 1");
        if (order > kMaxGroupOrder / m)
            throw input_error("FinAbGroup: order exceeds " + std::to_string(kMaxGroupOrder));
        order *= m;
    }
}

std::vector<std::uint32_t> FinAbGroup::decode(std::uint32_t x) const {
    std::vector<std::uint32_t> t(moduli.size());
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        t[c] = x % moduli[c];
        x /= moduli[c];
    }
    return t;
}

std::uint32_t FinAbGroup::encode(const std::vector<std::uint32_t>& tuple) const {
    if (tuple.size() != moduli.size()) throw input_error("FinAbGroup: tuple arity mismatch");
    std::uint32_t x = 0;
    for (std::size_t c = moduli.size(); c-- > 0;) {
        if (tuple[c] >= moduli[c]) throw input_error("FinAbGroup: tuple entry out of range");
        x = x * moduli[c] + tuple[c];
    }
    return x;
}

std::uint32_t FinAbGroup::add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t out = 0, mult = 1;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t m = moduli[c];
        out += ((a % m + b % m) % m) * mult;
        a /= m;
        b /= m;
        mult *= m;
    }
    return out;
}

std::uint32_t FinAbGroup::neg(std::uint32_t a) const {
    std::uint32_t out = 0, mult = 1;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t m = moduli[c];
        const std::uint32_t ac = a % m;
        out += (ac == 0 ? 0 : m - ac) * mult;
        a /= m;
        mult *= m;
    }
    return out;
}

std::uint32_t FinAbGroup::sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

std::uint32_t FinAbGroup::scalar_mul(std::uint32_t m, std::uint32_t a) const {
    std::uint32_t out = 0, mult = 1;
    std::uint32_t x = a;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t mod = moduli[c];
        out += static_cast<std::uint32_t>((static_cast<std::uint64_t>(x % mod) * m) % mod) * mult;
        x /= mod;
        mult *= mod;
    }
    return out;
}

std::uint32_t FinAbGroup::element_order(std::uint32_t a) const {
    std::uint32_t ord = 1;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t m = moduli[c];
        const std::uint32_t ac = a % m;
        a /= m;
        const std::uint32_t oc = m / std::gcd(ac, m);
        ord = std::lcm(ord, oc);
    }
    return ord;
}

bool FinAbGroup::two_power_moduli() const {
    return std::all_of(moduli.begin(), moduli.end(),
                       [](std::uint32_t m) { return std::has_single_bit(m); });
}

int FinAbGroup::char_ring_exponent() const {
    if (!two_power_moduli()) throw input_error("char_ring_exponent: moduli are not powers of two");
    int K = 1;
    for (auto m : moduli) K = std::max(K, static_cast<int>(std::bit_width(m)) - 1);
    return K;
}

long FinAbGroup::char_pairing_exponent(std::uint32_t y, std::uint32_t x, int K) const {
    const long ring = 1L << K;
    long e = 0;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t m = moduli[c];
        const long xc = x % m, yc = y % m;
        x /= m;
        y /= m;
        if (m == 1) continue;
        e = (e + xc * yc % m * (ring / m)) % ring;
    }
    return e;
}

std::complex<double> FinAbGroup::character(std::uint32_t y, std::uint32_t x) const {
    double angle = 0.0;
    for (std::size_t c = 0; c < moduli.size(); ++c) {
        const std::uint32_t m = moduli[c];
        const std::uint64_t xc = x % m, yc = y % m;
        x /= m;
        y /= m;
        angle += static_cast<double>(xc * yc % m) / static_cast<double>(m);
    }
    angle *= 2.0 * std::numbers::pi;
    return {std::cos(angle), std::sin(angle)};
}

ElemSet sumset(const FinAbGroup& g, const ElemSet& A, const ElemSet& B) {
    if (A.empty() || B.empty()) throw input_error("sumset: empty operand");
    std::vector<char> out(g.order, 0);
    for (auto a : A)
        for (auto b : B) out[g.add(a, b)] = 1;
    return from_bitset(out);
}

ElemSet difference_set(const FinAbGroup& g, const ElemSet& A, const ElemSet& B) {
    if (A.empty() || B.empty()) throw input_error("difference_set: empty operand");
    std::vector<char> out(g.order, 0);
    for (auto a : A)
        for (auto b : B) out[g.sub(a, b)] = 1;
    return from_bitset(out);
}

ElemSet iterated_sumset(const FinAbGroup& g, const ElemSet& A, int t) {
    if (t < 1) throw input_error("iterated_sumset: t must be >= 1");
    ElemSet acc = A;
    for (int i = 1; i < t; ++i) acc = sumset(g, acc, A);
    return acc;
}

ElemSet stabilizer(const FinAbGroup& g, const ElemSet& S) {
    if (S.empty()) throw input_error("stabilizer: empty set");
    const auto bits = as_bitset(g.order, S);
    ElemSet H;
    for (std::uint32_t h = 0; h < g.order; ++h) {
        bool ok = true;
        for (auto s : S) {
            if (!bits[g.add(s, h)]) {
                ok = false;
                break;
            }
        }
        if (ok) H.push_back(h);
    }
    return H;
}

bool is_subgroup(const FinAbGroup& g, const ElemSet& S) {
    if (S.empty() || !std::binary_search(S.begin(), S.end(), 0u)) return false;
    const auto bits = as_bitset(g.order, S);
    for (auto a : S)
        for (auto b : S)
            if (!bits[g.add(a, b)]) return false;
    return true;
}

ElemSet generated_subgroup(const FinAbGroup& g, const ElemSet& gens) {
    std::vector<char> in(g.order, 0);
    in[0] = 1;
    std::vector<std::uint32_t> work{0};
    while (!work.empty()) {
        const std::uint32_t x = work.back();
        work.pop_back();
        for (auto gen : gens) {
            const std::uint32_t y = g.add(x, gen);
            if (!in[y]) {
                in[y] = 1;
                work.push_back(y);
            }
        }
    }
    return from_bitset(in);
}

std::vector<ElemSet> all_subgroups(const FinAbGroup& g) {
    std::set<ElemSet> found;
    found.insert(ElemSet{0});
    std::vector<ElemSet> work{ElemSet{0}};
    while (!work.empty()) {
        ElemSet H = std::move(work.back());
        work.pop_back();
        const auto bits = as_bitset(g.order, H);
        for (std::uint32_t x = 0; x < g.order; ++x) {
            if (bits[x]) continue;
            ElemSet gens = H;
            gens.push_back(x);
            ElemSet bigger = generated_subgroup(g, gens);
            if (found.insert(bigger).second) work.push_back(std::move(bigger));
        }
    }
    return {found.begin(), found.end()};
}

Quotient make_quotient(const FinAbGroup& g, const ElemSet& H) {
    if (!is_subgroup(g, H)) throw input_error("make_quotient: H is not a subgroup");
    Quotient q;
    q.g = &g;
    q.H = H;
    q.rep.assign(g.order, 0);
    std::vector<char> seen(g.order, 0);
    for (std::uint32_t x = 0; x < g.order; ++x) {
        if (seen[x]) continue;
        // x is the smallest unseen element, hence the minimum of its coset.
        for (auto h : H) {
            const std::uint32_t y = g.add(x, h);
            q.rep[y] = x;
            seen[y] = 1;
        }
        q.reps.push_back(x);
    }
    return q;
}

std::uint32_t Quotient::element_order(std::uint32_t a) const {
    std::uint32_t acc = a;
    std::uint32_t m = 1;
    while (rep[acc] != rep[0]) {
        acc = g->add(acc, a);
        ++m;
    }
    return m;
}

std::size_t Quotient::rep_pos(std::uint32_t r) const {
    const auto it = std::lower_bound(reps.begin(), reps.end(), r);
    if (it == reps.end() || *it != r) throw invariant_violation("Quotient: not a coset representative");
    return static_cast<std::size_t>(it - reps.begin());
}

ElemSet project_set(const Quotient& q, const ElemSet& S) {
    std::set<std::uint32_t> out;
    for (auto x : S) out.insert(q.project(x));
    return {out.begin(), out.end()};
}

ElemSet quotient_sumset(const Quotient& q, const ElemSet& A, const ElemSet& B) {
    std::set<std::uint32_t> out;
    for (auto a : A)
        for (auto b : B) out.insert(q.add(a, b));
    return {out.begin(), out.end()};
}

ElemSet quotient_iterated_sumset(const Quotient& q, const ElemSet& A, int t) {
    ElemSet acc = A;
    for (int i = 1; i < t; ++i) acc = quotient_sumset(q, acc, A);
    return acc;
}

ElemSet quotient_stabilizer(const Quotient& q, const ElemSet& S) {
    std::set<std::uint32_t> members(S.begin(), S.end());
    ElemSet H;
    for (auto r : q.reps) {
        bool ok = true;
        for (auto s : S) {
            if (!members.count(q.add(s, r))) {
                ok = false;
                break;
            }
        }
        if (ok) H.push_back(r);
    }
    return H;
}

GrowthReport sumset_growth_check(const FinAbGroup& g, const ElemSet& D, int kmax) {
    if (!std::binary_search(D.begin(), D.end(), 0u))
        throw input_error("sumset_growth_check: 0 must belong to D");
    GrowthReport rep;
    rep.H = stabilizer(g, sumset(g, D, D));
    const Quotient q = make_quotient(g, rep.H);
    rep.quotient_order = q.order();
    rep.Dbar = project_set(q, D);

    const ElemSet dd = quotient_sumset(q, rep.Dbar, rep.Dbar);
    const ElemSet st = quotient_stabilizer(q, dd);
    rep.stab_trivial = (st == ElemSet{0});

    rep.bound_ok = true;
    rep.strict_growth_ok = true;
    ElemSet iter = rep.Dbar;
    for (int k = 1; k <= kmax; ++k) {
        if (k > 1) iter = quotient_sumset(q, iter, rep.Dbar);
        const auto size = static_cast<std::uint32_t>(iter.size());
        rep.iterated_sizes.push_back(size);
        if (rep.saturation_k == 0 && quotient_stabilizer(q, iter) != ElemSet{0})
            rep.saturation_k = k;
        // The linear bound is backed by Kneser only while the iterates keep
        // trivial stabilizers; past saturation only the sizes are reported.
        if (rep.saturation_k != 0 && k >= rep.saturation_k) continue;
        const std::uint64_t bound =
            std::min<std::uint64_t>(rep.quotient_order,
                                    std::uint64_t{1} + std::uint64_t(k) * (rep.Dbar.size() - 1));
        if (size < bound) rep.bound_ok = false;
        if (k > 1 && rep.Dbar.size() >= 2 && rep.iterated_sizes[k - 2] < rep.quotient_order &&
            size <= rep.iterated_sizes[k - 2])
            rep.strict_growth_ok = false;
    }
    // The step the structure theorems rely on, unconditionally: Kneser with
    // the trivial stabilizer of Dbar + Dbar.
    if (rep.Dbar.size() >= 2) {
        const auto two = quotient_sumset(q, rep.Dbar, rep.Dbar);
        if (two.size() < std::min<std::uint64_t>(rep.quotient_order, 2 * rep.Dbar.size() - 1))
            rep.bound_ok = false;
        if (rep.Dbar.size() < rep.quotient_order && two.size() <= rep.Dbar.size())
            rep.strict_growth_ok = false;
    }
    rep.pass = rep.stab_trivial && rep.bound_ok && rep.strict_growth_ok;
    return rep;
}

WeightedSupport WeightedSupport::make_exact(FinAbGroup g, std::vector<std::uint32_t> pts,
                                            std::vector<CycInt> ws) {
    if (pts.empty()) throw input_error("WeightedSupport: empty support");
    if (pts.size() != ws.size()) throw input_error("WeightedSupport: points/weights size mismatch");
    WeightedSupport out{std::move(g), std::move(pts), true, 1, std::move(ws), {}};
    ElemSet sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("WeightedSupport: duplicate points");
    for (auto p : out.points)
        if (p >= out.group.order) throw input_error("WeightedSupport: point out of range");
    out.ring_k = 1;
    for (const auto& w : out.weights_exact) out.ring_k = std::max(out.ring_k, w.k());
    for (auto& w : out.weights_exact) w = embed(w, out.ring_k);
    for (const auto& w : out.weights_exact)
        if (w.is_zero()) throw input_error("WeightedSupport: zero weight");
    return out;
}

WeightedSupport WeightedSupport::make_float(FinAbGroup g, std::vector<std::uint32_t> pts,
                                            std::vector<std::complex<double>> ws) {
    if (pts.empty()) throw input_error("WeightedSupport: empty support");
    if (pts.size() != ws.size()) throw input_error("WeightedSupport: points/weights size mismatch");
    WeightedSupport out{std::move(g), std::move(pts), false, 1, {}, std::move(ws)};
    ElemSet sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw input_error("WeightedSupport: duplicate points");
    for (auto p : out.points)
        if (p >= out.group.order) throw input_error("WeightedSupport: point out of range");
    for (const auto& w : out.weights_float)
        if (std::norm(w) <= 1e-18) throw input_error("WeightedSupport: zero weight");
    return out;
}

std::complex<double> WeightedSupport::weight_as_complex(std::size_t i) const {
    return exact ? weights_exact[i].to_complex() : weights_float[i];
}

bool weights_common_argument(const WeightedSupport& ws) {
    const std::size_t m = ws.size();
    if (ws.exact) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                const CycInt p = ws.weights_exact[i] * conj(ws.weights_exact[j]);
                if (conj(p) != p) return false;
                if (!sign_positive(p)) return false;
            }
        }
        return true;
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const std::complex<double> p = ws.weights_float[i] * std::conj(ws.weights_float[j]);
            if (std::abs(p.imag()) > 1e-9 * std::abs(p)) return false;
            if (p.real() <= 0) return false;
        }
    }
    return true;
}

FourierResult fourier(const WeightedSupport& ws) {
    FourierResult out;
    const auto& g = ws.group;
    if (ws.exact && g.two_power_moduli()) {
        out.exact = true;
        out.ring_k = std::max(g.char_ring_exponent(), ws.ring_k);
        std::vector<CycInt> w;
        w.reserve(ws.size());
        for (const auto& z : ws.weights_exact) w.push_back(embed(z, out.ring_k));
        out.values_exact.reserve(g.order);
        for (std::uint32_t y = 0; y < g.order; ++y) {
            CycInt acc = CycInt::zero(out.ring_k);
            for (std::size_t i = 0; i < ws.size(); ++i) {
                const long e = g.char_pairing_exponent(y, ws.points[i], out.ring_k);
                acc += mul_root_power(w[i], -e);
            }
            out.values_exact.push_back(std::move(acc));
        }
        out.values_float.reserve(g.order);
        for (const auto& v : out.values_exact) out.values_float.push_back(v.to_complex());
        return out;
    }
    out.exact = false;
    out.values_float.assign(g.order, {0.0, 0.0});
    for (std::uint32_t y = 0; y < g.order; ++y) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < ws.size(); ++i)
            acc += ws.weight_as_complex(i) * std::conj(g.character(y, ws.points[i]));
        out.values_float[y] = acc;
    }
    return out;
}

LevelProfile magnitude_levels(const FourierResult& fr) {
    LevelProfile p;
    p.exact = fr.exact;
    if (fr.exact) {
        std::map<CycInt, int> distinct;
        for (const auto& v : fr.values_exact) {
            if (v.is_zero()) {
                p.zero_present = true;
                continue;
            }
            ++distinct[abs_sq(v)];
        }
        for (const auto& [sq, cnt] : distinct) {
            p.sq_exact.push_back(sq);
            p.sq_float.push_back(sq.to_complex().real());
        }
        p.t = static_cast<int>(p.sq_exact.size());
    } else {
        std::vector<double> sqs;
        double maxsq = 0.0;
        for (const auto& v : fr.values_float) {
            sqs.push_back(std::norm(v));
            maxsq = std::max(maxsq, sqs.back());
        }
        std::sort(sqs.begin(), sqs.end());
        const double zero_tol = 1e-14 * std::max(1.0, maxsq);
        for (double s : sqs) {
            if (s <= zero_tol) {
                p.zero_present = true;
                continue;
            }
            if (!p.sq_float.empty() && s - p.sq_float.back() <= 1e-7 * s) continue;
            p.sq_float.push_back(s);
        }
        p.t = static_cast<int>(p.sq_float.size());
    }
    p.kind = p.t == 1   ? LevelProfile::Kind::TwoLevel
             : p.t >= 2 ? LevelProfile::Kind::MultiLevel
                        : LevelProfile::Kind::Degenerate;
    return p;
}

TwoPointReport two_point_analysis(const FinAbGroup& g, std::uint32_t alpha, std::uint32_t beta,
                                  std::complex<double> z1, std::complex<double> z2) {
    if (alpha == beta) throw input_error("two_point_analysis: points must differ");
    if (std::norm(z1) <= 1e-18 || std::norm(z2) <= 1e-18)
        throw input_error("two_point_analysis: zero weight");
    TwoPointReport rep;
    const std::uint32_t gamma = g.sub(beta, alpha);
    rep.r = g.element_order(gamma);

    std::vector<double> mags;
    for (std::uint32_t j = 0; j < rep.r; ++j) {
        const double ang = 2.0 * std::numbers::pi * j / rep.r;
        mags.push_back(std::abs(z1 + z2 * std::complex<double>(std::cos(ang), std::sin(ang))));
    }
    std::sort(mags.begin(), mags.end());
    const double scale = std::max(1.0, std::abs(z1) + std::abs(z2));
    for (double m : mags) {
        if (!rep.magnitudes.empty() && m - rep.magnitudes.back() <= 1e-9 * scale) continue;
        rep.magnitudes.push_back(m);
    }
    int nonzero = 0;
    for (double m : rep.magnitudes)
        if (m > 1e-9 * scale) ++nonzero;
    rep.two_level = nonzero <= 1;

    if (rep.r <= 2) {
        rep.cls = TwoPointClass::SmallOrder;
    } else if (rep.r == 3) {
        const std::complex<double> ratio = -z1 / z2;
        const bool eq_mod = std::abs(std::abs(z1) - std::abs(z2)) <= 1e-9 * scale;
        const std::complex<double> w1{-0.5, std::sqrt(3.0) / 2.0};
        const std::complex<double> w2{-0.5, -std::sqrt(3.0) / 2.0};
        const bool cube_root = std::abs(ratio - w1) <= 1e-9 || std::abs(ratio - w2) <= 1e-9;
        rep.cls = (eq_mod && cube_root) ? TwoPointClass::ExceptionalCubeRoot : TwoPointClass::GenericR3;
        if (rep.cls == TwoPointClass::ExceptionalCubeRoot && !rep.two_level)
            throw invariant_violation("two_point_analysis: exceptional r=3 case must be two-level");
    } else {
        rep.cls = TwoPointClass::MultiValued;
        if (nonzero < 2)
            throw invariant_violation("two_point_analysis: ord >= 4 must give two distinct nonzero magnitudes");
    }
    return rep;
}

namespace {

// nu = mu * mu~ as a dense function, exact variant.
DenseZ autocorr_exact(const WeightedSupport& ws) {
    DenseZ nu(ws.group.order, CycInt::zero(ws.ring_k));
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ws.size(); ++j) {
            const std::uint32_t x = ws.group.sub(ws.points[i], ws.points[j]);
            nu[x] += ws.weights_exact[i] * conj(ws.weights_exact[j]);
        }
    return nu;
}

DenseC autocorr_float(const WeightedSupport& ws) {
    DenseC nu(ws.group.order, {0.0, 0.0});
    for (std::size_t i = 0; i < ws.size(); ++i)
        for (std::size_t j = 0; j < ws.size(); ++j) {
            const std::uint32_t x = ws.group.sub(ws.points[i], ws.points[j]);
            nu[x] += ws.weight_as_complex(i) * std::conj(ws.weight_as_complex(j));
        }
    return nu;
}

// Union of l * S over all l >= 3 (finitely many distinct iterated sumsets).
ElemSet union_of_high_iterates(const Quotient& q, const ElemSet& S) {
    ElemSet uni;
    if (S.empty()) return uni;
    std::set<ElemSet> seen;
    ElemSet cur = quotient_iterated_sumset(q, S, 3);
    std::set<std::uint32_t> acc;
    while (seen.insert(cur).second) {
        acc.insert(cur.begin(), cur.end());
        cur = quotient_sumset(q, cur, S);
    }
    return {acc.begin(), acc.end()};
}

} // namespace

TwoLevelCertificate certify_overconstrained(const WeightedSupport& ws) {
    TwoLevelCertificate cert;
    if (!weights_common_argument(ws)) {
        cert.failed_hypothesis = "common-argument";
        return cert;
    }
    const LevelProfile prof = magnitude_levels(fourier(ws));
    if (prof.kind != LevelProfile::Kind::TwoLevel) {
        cert.failed_hypothesis = "two-level";
        return cert;
    }
    cert.hypotheses_met = true;

    ElemSet S = ws.points;
    std::sort(S.begin(), S.end());
    cert.D = difference_set(ws.group, S, S);
    cert.H = stabilizer(ws.group, sumset(ws.group, cert.D, cert.D));
    const Quotient q = make_quotient(ws.group, cert.H);
    cert.quotient_order = q.order();
    cert.Sbar = project_set(q, S);
    cert.Dbar = project_set(q, cert.D);
    cert.coset_count = static_cast<std::uint32_t>(cert.Sbar.size());

    if (cert.Sbar.size() > 2)
        throw invariant_violation("two-level sparsity violated: support meets " +
                                  std::to_string(cert.Sbar.size()) + " cosets of Stab(D+D)");
    if (cert.Sbar.size() == 2 && cert.Dbar.size() >= 3) {
        cert.order_conclusion_applied = true;
        for (auto d : cert.Dbar) {
            if (d == q.rep[0]) continue;
            if (q.element_order(d) > 2)
                throw invariant_violation("two-level sparsity violated: element of order > 2 in Dbar");
        }
    }
    return cert;
}

MultilevelCertificate certify_multilevel(const WeightedSupport& ws, int t_expected) {
    MultilevelCertificate cert;
    if (t_expected < 1) throw input_error("certify_multilevel: t must be >= 1");
    if (!weights_common_argument(ws)) {
        cert.failed_hypothesis = "common-argument";
        return cert;
    }
    const FourierResult fr = fourier(ws);
    const LevelProfile prof = magnitude_levels(fr);
    cert.t = prof.t;
    if (prof.t != t_expected || prof.t < 1) {
        cert.failed_hypothesis = "level-count";
        return cert;
    }

    ElemSet S = ws.points;
    std::sort(S.begin(), S.end());
    const ElemSet D = difference_set(ws.group, S, S);
    const ElemSet H = stabilizer(ws.group, sumset(ws.group, D, D));
    const Quotient q = make_quotient(ws.group, H);
    const ElemSet Dbar = project_set(q, D);
    cert.Sbar = project_set(q, S);

    // supp(nu_bar') = Dbar \ {0}: pushforwards of positive masses stay positive.
    ElemSet suppNuPrime;
    for (auto d : Dbar)
        if (d != q.rep[0]) suppNuPrime.push_back(d);

    cert.advisory_dbar_small = 2 * Dbar.size() < q.order();
    const ElemSet twoD = quotient_sumset(q, Dbar, Dbar);
    std::set_difference(twoD.begin(), twoD.end(), Dbar.begin(), Dbar.end(),
                        std::back_inserter(cert.candidates));
    if (cert.candidates.empty()) {
        // 2 Dbar = Dbar makes Dbar a subgroup; a trivial Stab(Dbar + Dbar)
        // then forces Dbar = {0}, so the support sits in one coset and the
        // conclusion holds without the avoidance hypothesis.
        cert.x_hypothesis_trivial = true;
    } else {
        const ElemSet forbidden = union_of_high_iterates(q, suppNuPrime);
        std::set_difference(cert.candidates.begin(), cert.candidates.end(), forbidden.begin(),
                            forbidden.end(), std::back_inserter(cert.admissible_x));
        if (cert.admissible_x.empty()) {
            cert.failed_hypothesis = "no-admissible-x";
            return cert;
        }
    }

    // P''(a) with P(X) = X prod_j (X - B_j), a = nu_bar(0).
    if (fr.exact) {
        const DenseZ nu = autocorr_exact(ws);
        const DenseZ nubar = pushforward_exact(q, nu);
        const int K = fr.ring_k;
        const CycInt a = embed(nubar[q.rep_pos(q.rep[0])], K);
        // poly = prod (X - B_j), coefficients low to high, in Z[zeta_{2^K}].
        std::vector<CycInt> poly{CycInt::from_integer(K, 1)};
        for (const auto& B : prof.sq_exact) {
            std::vector<CycInt> next(poly.size() + 1, CycInt::zero(K));
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * B;
            }
            poly = std::move(next);
        }
        // P(X) = X * poly(X) = sum_{m=1}^{t+1} poly[m-1] X^m, so
        // P''(a) = sum_{m=2}^{t+1} m (m-1) poly[m-1] a^{m-2}.
        CycInt ppa = CycInt::zero(K);
        CycInt apow = CycInt::from_integer(K, 1);
        for (std::size_t m = 2; m < poly.size() + 1; ++m) {
            ppa += CycInt::from_integer(K, static_cast<long>(m * (m - 1))) * poly[m - 1] * apow;
            apow = apow * a;
        }
        if (ppa.is_zero()) {
            cert.failed_hypothesis = "second-derivative";
            return cert;
        }
    } else {
        const DenseC nu = autocorr_float(ws);
        const DenseC nubar = pushforward_dense(q, nu);
        const double a = nubar[q.rep_pos(q.rep[0])].real();
        std::vector<double> poly{1.0};
        for (double B : prof.sq_float) {
            std::vector<double> next(poly.size() + 1, 0.0);
            for (std::size_t i = 0; i < poly.size(); ++i) {
                next[i + 1] += poly[i];
                next[i] -= poly[i] * B;
            }
            poly = std::move(next);
        }
        double ppa = 0.0, apow = 1.0, scale = 0.0;
        for (std::size_t m = 2; m < poly.size() + 1; ++m) {
            const double term = static_cast<double>(m * (m - 1)) * poly[m - 1] * apow;
            ppa += term;
            scale = std::max(scale, std::abs(term));
            apow *= a;
        }
        if (std::abs(ppa) <= 1e-9 * std::max(1.0, scale)) {
            cert.failed_hypothesis = "second-derivative";
            return cert;
        }
    }

    cert.hypotheses_met = true;
    cert.coset_count = static_cast<std::uint32_t>(cert.Sbar.size());
    if (cert.Sbar.size() > static_cast<std::size_t>(t_expected) + 1)
        throw invariant_violation("multi-level sparsity violated: " + std::to_string(cert.Sbar.size()) +
                                  " cosets for t = " + std::to_string(t_expected));
    cert.conclusion_ok = true;
    return cert;
}

AutocorrelationResult autocorrelation(const WeightedSupport& ws) {
    AutocorrelationResult res{WeightedSupport{ws.group, {}, false, 1, {}, {}}, false, false, false, false};
    res.input_common_argument = weights_common_argument(ws);

    ElemSet S = ws.points;
    std::sort(S.begin(), S.end());
    const ElemSet D = difference_set(ws.group, S, S);

    std::vector<std::uint32_t> pts;
    if (ws.exact) {
        const DenseZ nu = autocorr_exact(ws);
        std::vector<CycInt> wts;
        for (std::uint32_t x = 0; x < ws.group.order; ++x) {
            if (nu[x].is_zero()) continue;
            pts.push_back(x);
            wts.push_back(nu[x]);
        }
        res.nu = WeightedSupport::make_exact(ws.group, std::move(pts), std::move(wts));
    } else {
        const DenseC nu = autocorr_float(ws);
        double scale = 0.0;
        for (const auto& v : nu) scale = std::max(scale, std::abs(v));
        std::vector<std::complex<double>> wts;
        for (std::uint32_t x = 0; x < ws.group.order; ++x) {
            if (std::abs(nu[x]) <= 1e-12 * std::max(1.0, scale)) continue;
            pts.push_back(x);
            wts.push_back(nu[x]);
        }
        res.nu = WeightedSupport::make_float(ws.group, std::move(pts), std::move(wts));
    }

    ElemSet supp = res.nu.points;
    std::sort(supp.begin(), supp.end());
    res.support_equals_diffset = (supp == D);
    if (!res.support_equals_diffset) {
        if (!std::includes(D.begin(), D.end(), supp.begin(), supp.end()))
            throw invariant_violation("autocorrelation support escapes S - S");
        res.strict_inclusion = true;
        if (res.input_common_argument)
            throw invariant_violation("autocorrelation support collapsed under common-argument weights");
    }

    // Transform identity nu_hat = |mu_hat|^2.
    const FourierResult fmu = fourier(ws);
    const FourierResult fnu = fourier(res.nu);
    if (fmu.exact && fnu.exact) {
        res.transform_identity_ok = true;
        for (std::uint32_t y = 0; y < ws.group.order; ++y) {
            if (embed(abs_sq(fmu.values_exact[y]), fnu.ring_k) != fnu.values_exact[y]) {
                res.transform_identity_ok = false;
                break;
            }
        }
        if (!res.transform_identity_ok)
            throw invariant_violation("autocorrelation transform is not |mu_hat|^2");
    } else {
        res.transform_identity_ok = true;
        double scale = 1.0;
        for (std::uint32_t y = 0; y < ws.group.order; ++y)
            scale = std::max(scale, std::norm(fmu.values_float[y]));
        for (std::uint32_t y = 0; y < ws.group.order; ++y) {
            if (std::abs(std::norm(fmu.values_float[y]) - fnu.values_float[y].real()) > 1e-6 * scale ||
                std::abs(fnu.values_float[y].imag()) > 1e-6 * scale) {
                res.transform_identity_ok = false;
                break;
            }
        }
    }
    return res;
}

UncertaintyReport uncertainty_check(const WeightedSupport& ws) {
    UncertaintyReport rep;
    rep.group_order = ws.group.order;
    rep.support_size = static_cast<std::uint32_t>(ws.size());

    const FourierResult fr = fourier(ws);
    double maxmag = 0.0;
    for (const auto& v : fr.values_float) maxmag = std::max(maxmag, std::abs(v));
    for (std::uint32_t y = 0; y < ws.group.order; ++y) {
        const bool zero = fr.exact ? fr.values_exact[y].is_zero()
                                   : std::abs(fr.values_float[y]) <= 1e-9 * std::max(1.0, maxmag);
        if (!zero) ++rep.transform_support_size;
    }

    const std::uint64_t product =
        std::uint64_t{rep.support_size} * std::uint64_t{rep.transform_support_size};
    rep.product_bound_ok = product >= rep.group_order;
    rep.equality = product == rep.group_order;
    if (!rep.product_bound_ok)
        throw invariant_violation("uncertainty principle violated; Fourier support undercounted");

    // Consecutive divisors d1 <= |supp| <= d2 of |G|.
    for (std::uint32_t d = 1; d <= rep.group_order; ++d) {
        if (rep.group_order % d != 0) continue;
        if (d <= rep.support_size) rep.d1 = d;
        if (d >= rep.support_size && rep.d2 == 0) rep.d2 = d;
    }
    // |supp(f_hat)| d1 d2 >= |G| (d1 + d2 - |supp f|), in integers.
    const std::uint64_t lhs = std::uint64_t{rep.transform_support_size} * rep.d1 * rep.d2;
    const std::uint64_t rhs =
        std::uint64_t{rep.group_order} * (std::uint64_t{rep.d1} + rep.d2 - rep.support_size);
    rep.refined_bound_ok = lhs >= rhs;
    if (!rep.refined_bound_ok)
        throw invariant_violation("refined uncertainty bound violated");

    if (rep.equality) {
        // Equality holds iff f is a translated, modulated, scaled subgroup
        // indicator: support is a coset, |f| constant on it, phases
        // multiplicative relative to the base point.
        ElemSet S = ws.points;
        std::sort(S.begin(), S.end());
        const std::uint32_t s0 = S[0];
        ElemSet Hs;
        for (auto s : S) Hs.push_back(ws.group.sub(s, s0));
        std::sort(Hs.begin(), Hs.end());
        bool ok = is_subgroup(ws.group, Hs);
        if (ok) {
            std::map<std::uint32_t, std::size_t> idx;
            for (std::size_t i = 0; i < ws.size(); ++i) idx[ws.points[i]] = i;
            const auto at = [&](std::uint32_t x) { return ws.weight_as_complex(idx.at(x)); };
            const double base = std::abs(at(s0));
            for (auto s : S)
                if (std::abs(std::abs(at(s)) - base) > 1e-9 * std::max(1.0, base)) ok = false;
            if (ok) {
                for (auto h1 : Hs) {
                    for (auto h2 : Hs) {
                        const auto lhsv = at(ws.group.add(s0, ws.group.add(h1, h2))) * at(s0);
                        const auto rhsv = at(ws.group.add(s0, h1)) * at(ws.group.add(s0, h2));
                        if (std::abs(lhsv - rhsv) > 1e-9 * std::max(1.0, std::abs(lhsv))) ok = false;
                    }
                }
            }
        }
        rep.equality_structure_ok = ok;
    }
    return rep;
}

NumerologyReport numerology_check(const WeightedSupport& ws) {
    NumerologyReport rep;
    const FourierResult fr = fourier(ws);
    const LevelProfile prof = magnitude_levels(fr);
    if (prof.kind != LevelProfile::Kind::TwoLevel) {
        rep.failed_hypothesis = "two-level";
        return rep;
    }
    rep.hypotheses_met = true;
    double maxmag = 0.0;
    for (const auto& v : fr.values_float) maxmag = std::max(maxmag, std::abs(v));
    for (std::uint32_t y = 0; y < ws.group.order; ++y) {
        const bool zero = fr.exact ? fr.values_exact[y].is_zero()
                                   : std::abs(fr.values_float[y]) <= 1e-9 * std::max(1.0, maxmag);
        if (!zero) ++rep.N;
    }
    rep.A_sq = prof.sq_float[0];
    rep.support_lower_bound = static_cast<double>(ws.group.order) / rep.N;

    if (fr.exact) {
        const int K = fr.ring_k;
        CycInt lhs = CycInt::from_integer(K, static_cast<long>(rep.N)) * embed(prof.sq_exact[0], K);
        CycInt rhs = CycInt::zero(K);
        for (const auto& z : ws.weights_exact) rhs += embed(abs_sq(z), K);
        rhs = CycInt::from_integer(K, static_cast<long>(ws.group.order)) * rhs;
        rep.identity_ok = (lhs == rhs);
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < ws.size(); ++i) sum += std::norm(ws.weight_as_complex(i));
        const double lhs = rep.N * rep.A_sq;
        const double rhs = ws.group.order * sum;
        rep.identity_ok = std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs));
    }
    if (!rep.identity_ok)
        throw invariant_violation("two-level numerology identity failed");
    return rep;
}

DenseC fourier_dense(const FinAbGroup& g, const DenseC& f) {
    DenseC out(g.order, {0.0, 0.0});
    for (std::uint32_t y = 0; y < g.order; ++y)
        for (std::uint32_t x = 0; x < g.order; ++x)
            out[y] += f[x] * std::conj(g.character(y, x));
    return out;
}

DenseC inverse_fourier_dense(const FinAbGroup& g, const DenseC& fh) {
    DenseC out(g.order, {0.0, 0.0});
    for (std::uint32_t x = 0; x < g.order; ++x) {
        for (std::uint32_t y = 0; y < g.order; ++y) out[x] += fh[y] * g.character(y, x);
        out[x] /= static_cast<double>(g.order);
    }
    return out;
}

DenseC convolve_dense(const FinAbGroup& g, const DenseC& f, const DenseC& h) {
    DenseC out(g.order, {0.0, 0.0});
    for (std::uint32_t x = 0; x < g.order; ++x)
        for (std::uint32_t y = 0; y < g.order; ++y) out[x] += f[y] * h[g.sub(x, y)];
    return out;
}

DenseC pushforward_dense(const Quotient& q, const DenseC& f) {
    DenseC out(q.order(), {0.0, 0.0});
    for (std::uint32_t x = 0; x < q.g->order; ++x) out[q.rep_pos(q.rep[x])] += f[x];
    return out;
}

DenseZ fourier_exact(const FinAbGroup& g, const DenseZ& f, int ring_k) {
    DenseZ out(g.order, CycInt::zero(ring_k));
    for (std::uint32_t y = 0; y < g.order; ++y)
        for (std::uint32_t x = 0; x < g.order; ++x) {
            if (f[x].is_zero()) continue;
            out[y] += mul_root_power(embed(f[x], ring_k), -g.char_pairing_exponent(y, x, ring_k));
        }
    return out;
}

DenseZ convolve_exact(const FinAbGroup& g, const DenseZ& f, const DenseZ& h) {
    const int k = f.empty() ? 1 : f[0].k();
    DenseZ out(g.order, CycInt::zero(k));
    for (std::uint32_t x = 0; x < g.order; ++x)
        for (std::uint32_t y = 0; y < g.order; ++y) {
            if (f[y].is_zero()) continue;
            out[x] += f[y] * h[g.sub(x, y)];
        }
    return out;
}

DenseZ pushforward_exact(const Quotient& q, const DenseZ& f) {
    const int k = f.empty() ? 1 : f[0].k();
    DenseZ out(q.order(), CycInt::zero(k));
    for (std::uint32_t x = 0; x < q.g->order; ++x) out[q.rep_pos(q.rep[x])] += f[x];
    return out;
}

} // namespace gbent
