#include "gbent/cyclotomic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gbent {

namespace {

constexpr int kMaxRingExponent = 16;

} // namespace

void CycInt::check_k(int k) {
    if (k < 1 || k > kMaxRingExponent)
        throw input_error("ring exponent k must be in [1, " + std::to_string(kMaxRingExponent) +
                          "], got " + std::to_string(k));
}

CycInt CycInt::zero(int k) {
    check_k(k);
    return CycInt(k, std::vector<mpz_class>(std::size_t{1} << (k - 1)));
}

CycInt CycInt::from_integer(int k, mpz_class n) {
    CycInt r = zero(k);
    r.coeffs_[0] = std::move(n);
    return r;
}

CycInt CycInt::root_power(int k, long e) {
    CycInt r = zero(k);
    const long order = 1L << k;
    long idx = e % order;
    if (idx < 0) idx += order;
    const long half = order / 2;
    if (idx < half)
        r.coeffs_[static_cast<std::size_t>(idx)] = 1;
    else
        r.coeffs_[static_cast<std::size_t>(idx - half)] = -1;
    return r;
}

bool CycInt::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

CycInt& CycInt::operator+=(const CycInt& o) {
    if (k_ != o.k_) throw ring_mismatch("cyc_add: elements of Z[zeta_{2^" + std::to_string(k_) +
                                        "}] and Z[zeta_{2^" + std::to_string(o.k_) + "}]");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& o) {
    if (k_ != o.k_) throw ring_mismatch("cyc_sub: ring mismatch k=" + std::to_string(k_) + " vs " +
                                        std::to_string(o.k_));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

void CycInt::butterfly_pair(CycInt& lo, CycInt& hi) {
    if (lo.k_ != hi.k_) throw ring_mismatch("butterfly_pair: ring mismatch");
    static thread_local mpz_class tmp;
    for (std::size_t i = 0; i < lo.coeffs_.size(); ++i) {
        tmp = lo.coeffs_[i];
        lo.coeffs_[i] += hi.coeffs_[i];
        mpz_sub(hi.coeffs_[i].get_mpz_t(), tmp.get_mpz_t(), hi.coeffs_[i].get_mpz_t());
    }
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    if (a.k_ != b.k_) throw ring_mismatch("cyc_mul: ring mismatch k=" + std::to_string(a.k_) +
                                          " vs " + std::to_string(b.k_));
    const std::size_t n = a.coeffs_.size();
    std::vector<mpz_class> out(n);
    mpz_class prod;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (b.coeffs_[j] == 0) continue;
            prod = a.coeffs_[i] * b.coeffs_[j];
            // zeta^{i+j} with zeta^n = -1.
            if (i + j < n)
                out[i + j] += prod;
            else
                out[i + j - n] -= prod;
        }
    }
    return CycInt(a.k_, std::move(out));
}

bool CycInt::operator<(const CycInt& o) const {
    if (k_ != o.k_) return k_ < o.k_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        int c = cmp(coeffs_[i], o.coeffs_[i]);
        if (c != 0) return c < 0;
    }
    return false;
}

std::optional<mpz_class> CycInt::as_rational_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_[0];
}

std::complex<double> CycInt::to_complex() const {
    const double step = 2.0 * std::numbers::pi / std::ldexp(1.0, k_);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        const double c = coeffs_[i].get_d();
        const double ang = step * static_cast<double>(i);
        acc += std::complex<double>(c * std::cos(ang), c * std::sin(ang));
    }
    return acc;
}

long double CycInt::to_real_long_double() const {
    const long double step = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(1UL << k_);
    long double re = 0.0L;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        re += static_cast<long double>(coeffs_[i].get_d()) *
              std::cos(step * static_cast<long double>(i));
    }
    return re;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] > 0 ? " + " : " - ");
        else if (coeffs_[i] < 0) os << "-";
        mpz_class mag = abs(coeffs_[i]);
        first = false;
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << "*";
            os << "z" << (1L << k_);
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

CycInt conj(const CycInt& a) {
    const std::size_t n = a.dim();
    std::vector<mpz_class> out(n);
    out[0] = a.coeffs_[0];
    // zeta^{-i} = -zeta^{n-i} for 0 < i < n (since zeta^n = -1).
    for (std::size_t i = 1; i < n; ++i) out[n - i] -= a.coeffs_[i];
    return CycInt(a.k_, std::move(out));
}

CycInt abs_sq(const CycInt& a) { return a * conj(a); }

CycInt embed(const CycInt& a, int k_target) {
    if (k_target < a.k())
        throw input_error("embed: Z[zeta_{2^" + std::to_string(a.k()) +
                          "}] is not a subring of Z[zeta_{2^" + std::to_string(k_target) + "}]");
    if (k_target == a.k()) return a;
    CycInt::check_k(k_target);
    std::vector<mpz_class> out(std::size_t{1} << (k_target - 1));
    const std::size_t stride = std::size_t{1} << (k_target - a.k());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i * stride] = a.coeffs_[i];
    return CycInt(k_target, std::move(out));
}

CycInt sqrt2_element(int k) {
    if (k < 3) throw input_error("sqrt2_element requires k >= 3");
    const long e1 = 1L << (k - 3);
    const long e2 = (1L << (k - 2)) + (1L << (k - 3));
    return CycInt::root_power(k, e1) - CycInt::root_power(k, e2);
}

CycInt mul_root_power(const CycInt& a, long e) {
    const long order = 1L << a.k_;
    const long n = order / 2;
    long shift = e % order;
    if (shift < 0) shift += order;
    bool flip = false;
    if (shift >= n) {
        shift -= n;
        flip = true;
    }
    std::vector<mpz_class> out(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const mpz_class& c = a.coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        long j = i + shift;
        bool neg = flip;
        if (j >= n) {
            j -= n;
            neg = !neg;
        }
        if (neg)
            out[static_cast<std::size_t>(j)] -= c;
        else
            out[static_cast<std::size_t>(j)] += c;
    }
    return CycInt(a.k_, std::move(out));
}

std::optional<Level> is_level(const mpz_class& sq) {
    if (sq < 0) throw input_error("is_level: negative input");
    if (sq == 0) throw input_error("is_level: zero is the caller's zero level");
    const auto m = mpz_scan1(sq.get_mpz_t(), 0);
    mpz_class odd = sq >> m;
    if (mpz_perfect_square_p(odd.get_mpz_t()) == 0) return std::nullopt;
    mpz_class v = sqrt(odd);
    return Level{static_cast<int>(m), std::move(v)};
}

mpz_class pow2(unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

} // namespace gbent
