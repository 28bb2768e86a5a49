#include <doctest.h>

#include <complex>
#include <random>

#include "gbent/cyclotomic.hpp"
#include "gbent/errors.hpp"

using namespace gbent;

namespace {

CycInt random_element(std::mt19937_64& rng, int k, long height) {
    CycInt acc = CycInt::zero(k);
    for (std::size_t i = 0; i < acc.dim(); ++i) {
        const long c = static_cast<long>(rng() % (2 * height + 1)) - height;
        if (c != 0) acc += CycInt::from_integer(k, c) * CycInt::root_power(k, static_cast<long>(i));
    }
    return acc;
}

} // namespace

TEST_CASE("addition with reduction") {
    // zeta_4 + zeta_4 = 2 zeta_4
    CycInt z4 = CycInt::root_power(2, 1);
    CycInt sum = z4 + z4;
    CHECK(sum.coeff(0) == 0);
    CHECK(sum.coeff(1) == 2);

    // zeta_8^2 + zeta_8^2 = 2 zeta_8^2 at k = 3
    CycInt z82 = CycInt::root_power(3, 2);
    CHECK((z82 + z82).coeff(2) == 2);

    // zeta_16^8 + 1 = 0 at k = 4
    CHECK((CycInt::root_power(4, 8) + CycInt::from_integer(4, 1)).is_zero());
}

TEST_CASE("multiplication with reduction") {
    // i * i = -1
    CHECK(CycInt::root_power(2, 1) * CycInt::root_power(2, 1) == CycInt::from_integer(2, -1));
    // zeta_16 * zeta_16^7 = zeta_16^8 = -1
    CHECK(CycInt::root_power(4, 1) * CycInt::root_power(4, 7) == CycInt::from_integer(4, -1));
    // (1 + i)(1 - i) = 2
    CycInt one = CycInt::from_integer(2, 1);
    CycInt i = CycInt::root_power(2, 1);
    CHECK((one + i) * (one - i) == CycInt::from_integer(2, 2));
}

TEST_CASE("ring mismatch is rejected") {
    CHECK_THROWS_AS(CycInt::root_power(2, 1) + CycInt::root_power(3, 1), ring_mismatch);
    CHECK_THROWS_AS(CycInt::root_power(2, 1) * CycInt::root_power(4, 1), ring_mismatch);
}

TEST_CASE("embedding") {
    // zeta_4 -> zeta_16^4
    CHECK(embed(CycInt::root_power(2, 1), 4) == CycInt::root_power(4, 4));
    // 1 -> 1
    CHECK(embed(CycInt::from_integer(2, 1), 5) == CycInt::from_integer(5, 1));
    // 1 + zeta_4 -> 1 + zeta_8^2
    CHECK(embed(CycInt::from_integer(2, 1) + CycInt::root_power(2, 1), 3) ==
          CycInt::from_integer(3, 1) + CycInt::root_power(3, 2));
    CHECK_THROWS_AS(embed(CycInt::root_power(3, 1), 2), input_error);
}

TEST_CASE("conjugation") {
    // conj(i) = -i
    CHECK(conj(CycInt::root_power(2, 1)) == -CycInt::root_power(2, 1));
    // conj(3) = 3
    CHECK(conj(CycInt::from_integer(4, 3)) == CycInt::from_integer(4, 3));
    // conj(1 + zeta_8) = 1 - zeta_8^3
    CHECK(conj(CycInt::from_integer(3, 1) + CycInt::root_power(3, 1)) ==
          CycInt::from_integer(3, 1) - CycInt::root_power(3, 3));
}

TEST_CASE("abs_sq basics") {
    // |1 + i|^2 = 2
    CHECK(abs_sq(CycInt::from_integer(2, 1) + CycInt::root_power(2, 1)) == CycInt::from_integer(2, 2));
    CHECK(abs_sq(CycInt::zero(3)).is_zero());
    // roots of unity sit on the unit circle
    for (long a = 0; a < 16; ++a)
        CHECK(abs_sq(CycInt::root_power(4, a)) == CycInt::from_integer(4, 1));
}

TEST_CASE("as_rational_integer") {
    CHECK(*CycInt::from_integer(3, 5).as_rational_integer() == 5);
    CHECK_FALSE(CycInt::root_power(2, 1).as_rational_integer().has_value());
}

TEST_CASE("is_level") {
    auto l8 = is_level(8);
    REQUIRE(l8.has_value());
    CHECK(l8->m == 3);
    CHECK(l8->v == 1);

    auto l4 = is_level(4);
    REQUIRE(l4.has_value());
    CHECK(l4->m == 2);
    CHECK(l4->v == 1);

    CHECK_FALSE(is_level(12).has_value());
    CHECK_THROWS_AS(is_level(-1), input_error);

    auto l18 = is_level(18); // 2 * 3^2
    REQUIRE(l18.has_value());
    CHECK(l18->m == 1);
    CHECK(l18->v == 3);
}

TEST_CASE("sqrt2_element") {
    CHECK(sqrt2_element(3) == CycInt::root_power(3, 1) - CycInt::root_power(3, 3));
    CHECK(sqrt2_element(4) == CycInt::root_power(4, 2) - CycInt::root_power(4, 6));
    for (int k = 3; k <= 6; ++k)
        CHECK(abs_sq(sqrt2_element(k)) == CycInt::from_integer(k, 2));
    CHECK_THROWS_AS(sqrt2_element(2), input_error);
}

TEST_CASE("abs_sq is multiplicative and conj-invariant") {
    std::mt19937_64 rng(42);
    for (int iter = 0; iter < 200; ++iter) {
        const int k = 1 + static_cast<int>(rng() % 5);
        CycInt a = random_element(rng, k, 9);
        CycInt b = random_element(rng, k, 9);
        CHECK(abs_sq(a * b) == abs_sq(a) * abs_sq(b));
        CHECK(abs_sq(conj(a)) == abs_sq(a));
        CHECK(conj(conj(a)) == a);
        // abs_sq lands in the real subfield
        CHECK(conj(abs_sq(a)) == abs_sq(a));
    }
}

TEST_CASE("embed is a ring homomorphism on random samples") {
    std::mt19937_64 rng(43);
    for (int iter = 0; iter < 200; ++iter) {
        const int k = 1 + static_cast<int>(rng() % 4);
        const int kt = k + static_cast<int>(rng() % 3);
        CycInt a = random_element(rng, k, 9);
        CycInt b = random_element(rng, k, 9);
        CHECK(embed(a + b, kt) == embed(a, kt) + embed(b, kt));
        CHECK(embed(a * b, kt) == embed(a, kt) * embed(b, kt));
        // injectivity on samples: nonzero stays nonzero
        if (!a.is_zero()) CHECK_FALSE(embed(a, kt).is_zero());
    }
}

TEST_CASE("float evaluation cross-checks abs_sq") {
    std::mt19937_64 rng(44);
    for (int iter = 0; iter < 200; ++iter) {
        const int k = 1 + static_cast<int>(rng() % 6);
        CycInt a = random_element(rng, k, 20);
        const std::complex<double> z = a.to_complex();
        const double direct = std::norm(z);
        const double exact = abs_sq(a).to_complex().real();
        CHECK(std::abs(direct - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("mul_root_power agrees with full multiplication") {
    std::mt19937_64 rng(45);
    for (int iter = 0; iter < 200; ++iter) {
        const int k = 1 + static_cast<int>(rng() % 5);
        CycInt a = random_element(rng, k, 9);
        const long e = static_cast<long>(rng() % (1u << k));
        CHECK(mul_root_power(a, e) == a * CycInt::root_power(k, e));
        CHECK(mul_root_power(a, -e) == a * CycInt::root_power(k, -e));
    }
}

TEST_CASE("power-basis elements stay independent over embedded coefficients") {
    // For k = l*r the products embed(c) * zeta_{2^k}^E with E = sum alpha_j 2^{jl}
    // hit pairwise distinct power-basis indices, so a combination vanishes only
    // if all coefficients do. Checked exhaustively at (l, r) = (2, 2) over
    // coefficient height 1, and on random samples for larger towers.
    SUBCASE("exhaustive l=2 r=2") {
        const int l = 2, k = 4;
        // coefficients c_alpha = c0 + c1 * zeta_4, entries in {-1, 0, 1}
        for (int mask = 0; mask < 6561; ++mask) { // 3^8 combinations
            int rest = mask;
            CycInt acc = CycInt::zero(k);
            bool nontrivial = false;
            for (int alpha = 0; alpha < 4; ++alpha) {
                const int c0 = rest % 3 - 1;
                rest /= 3;
                const int c1 = rest % 3 - 1;
                rest /= 3;
                if (c0 == 0 && c1 == 0) continue;
                nontrivial = true;
                CycInt c = CycInt::from_integer(l, c0) + CycInt::from_integer(l, c1) * CycInt::root_power(l, 1);
                acc += mul_root_power(embed(c, k), alpha);
            }
            if (nontrivial) CHECK_FALSE(acc.is_zero());
        }
    }
    SUBCASE("random samples for l=3 r=2, l=2 r=3, l=3 r=3") {
        std::mt19937_64 rng(46);
        const int cases[3][2] = {{3, 2}, {2, 3}, {3, 3}};
        for (const auto& lc : cases) {
            const int l = lc[0], r = lc[1], k = l * r;
            const std::uint32_t espace = 1u << (l * (r - 1));
            for (int iter = 0; iter < 300; ++iter) {
                CycInt acc = CycInt::zero(k);
                bool nontrivial = false;
                for (std::uint32_t E = 0; E < espace; ++E) {
                    CycInt c = random_element(rng, l, 1);
                    if (c.is_zero()) continue;
                    nontrivial = true;
                    acc += mul_root_power(embed(c, k), static_cast<long>(E));
                }
                if (nontrivial) CHECK_FALSE(acc.is_zero());
            }
        }
    }
}
