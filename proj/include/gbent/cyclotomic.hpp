#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gbent/errors.hpp"

namespace gbent {

/// Exact element of Z[zeta_{2^k}] in the power basis 1, zeta, ..., zeta^{2^{k-1}-1}.
///
/// The reduction zeta^{2^{k-1}} = -1 is applied eagerly, so coefficient index
/// i always refers to zeta_{2^k}^i with i < 2^{k-1}. For k = 1 the ring is Z
/// (a single coefficient). Values are immutable in spirit: every operation
/// returns a fresh element, so sharing across threads is safe.
class CycInt {
public:
    CycInt() : k_(1), coeffs_(1) {}

    static CycInt zero(int k);
    static CycInt from_integer(int k, mpz_class n);
    /// zeta_{2^k}^e for any integer e (reduced mod 2^k, sign folded in).
    static CycInt root_power(int k, long e);

    int k() const { return k_; }
    std::size_t dim() const { return coeffs_.size(); }
    const mpz_class& coeff(std::size_t i) const { return coeffs_[i]; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }

    bool is_zero() const;

    CycInt& operator+=(const CycInt& o);
    CycInt& operator-=(const CycInt& o);
    /// In-place (lo, hi) <- (lo + hi, lo - hi); the transform kernel.
    static void butterfly_pair(CycInt& lo, CycInt& hi);
    friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
    friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    CycInt operator-() const;
    bool operator==(const CycInt& o) const { return k_ == o.k_ && coeffs_ == o.coeffs_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    /// Lexicographic order on (k, coeffs); used for set/map keys only.
    bool operator<(const CycInt& o) const;

    /// The integer n when the element equals n * zeta^0; absent otherwise.
    std::optional<mpz_class> as_rational_integer() const;

    /// Numeric value under zeta_{2^k} -> e^{2 pi i / 2^k}. Reporting only;
    /// verdicts never depend on this.
    std::complex<double> to_complex() const;
    long double to_real_long_double() const;

    std::string to_string() const;

    friend CycInt conj(const CycInt& a);
    friend CycInt embed(const CycInt& a, int k_target);
    friend CycInt mul_root_power(const CycInt& a, long e);

private:
    CycInt(int k, std::vector<mpz_class> coeffs) : k_(k), coeffs_(std::move(coeffs)) {}
    static void check_k(int k);

    int k_;
    std::vector<mpz_class> coeffs_;
};

/// Image under zeta -> zeta^{-1}. Involution; fixes rationals.
CycInt conj(const CycInt& a);

/// a * conj(a). Lands in the real subfield (fixed by conj).
CycInt abs_sq(const CycInt& a);

/// Ring embedding zeta_{2^{a.k}} -> zeta_{2^{k_target}}^{2^{k_target - a.k}}.
CycInt embed(const CycInt& a, int k_target);

/// sqrt(2) as zeta^{2^{k-3}} - zeta^{2^{k-2}+2^{k-3}}; needs k >= 3.
CycInt sqrt2_element(int k);

/// a * zeta_{2^k}^e as an index rotation (no convolution).
CycInt mul_root_power(const CycInt& a, long e);

/// Landscape level (m, v): a magnitude 2^{m/2} * v with v odd.
struct Level {
    int m;
    mpz_class v;
    bool operator==(const Level& o) const { return m == o.m && v == o.v; }
    bool operator<(const Level& o) const { return m != o.m ? m < o.m : v < o.v; }
};

/// Decides sq = 2^m * v^2 with v odd positive; absent when the odd part is
/// not a perfect square. sq = 0 is the caller's zero level, sq < 0 throws.
std::optional<Level> is_level(const mpz_class& sq);

mpz_class pow2(unsigned long e);

} // namespace gbent
