#include <doctest.h>

#include "sqrtmod/modmath.hpp"
#include "test_util.hpp"

using namespace sqrtmod;

TEST_CASE("mod_pow matches the worked identities") {
    CHECK(mod_pow(2, 48, 97) == 1);
    CHECK(mod_pow(5, 48, 97) == 96);
    CHECK(mod_pow(0, 0, 7) == 1);
    CHECK(mod_pow(123456, 0, 991) == 1);
    CHECK_THROWS_AS(mod_pow(2, 3, 1), std::invalid_argument);
}

TEST_CASE("mod_pow agrees with naive repeated multiplication") {
    for (unsigned long m = 2; m < 50; ++m)
        for (unsigned long b = 0; b < m; ++b) {
            unsigned long naive = 1 % m;
            for (unsigned long e = 0; e < 50; ++e) {
                CHECK(mod_pow(b, e, m) == naive);
                naive = naive * b % m;
            }
        }
}

TEST_CASE("two-adic decomposition") {
    auto s = decompose_two_adic(96);
    CHECK(s.r == 5);
    CHECK(s.d == 3);
    s = decompose_two_adic(40);
    CHECK(s.r == 3);
    CHECK(s.d == 5);
    s = decompose_two_adic(12);
    CHECK(s.r == 2);
    CHECK(s.d == 3);
    CHECK_THROWS_AS(decompose_two_adic(15), std::invalid_argument);
    CHECK_THROWS_AS(decompose_two_adic(0), std::invalid_argument);
    CHECK_THROWS_AS(decompose_two_adic(-4), std::invalid_argument);
}

TEST_CASE("two-adic round-trip over a range") {
    for (unsigned long n = 2; n < 4000; n += 2) {
        auto s = decompose_two_adic(n);
        Int back = s.d << s.r;
        CHECK(back == n);
        CHECK(mpz_odd_p(s.d.get_mpz_t()));
    }
}

TEST_CASE("field construction validates the modulus") {
    CHECK_THROWS_AS(OddPrimeField(Int(2)), std::invalid_argument);
    CHECK_THROWS_AS(OddPrimeField(Int(9)), std::invalid_argument);
    CHECK_THROWS_AS(OddPrimeField(Int(15)), std::invalid_argument);
    CHECK_THROWS_AS(OddPrimeField(Int(100)), std::invalid_argument);
    OddPrimeField f97{Int(97)};
    CHECK(f97.r() == 5);
    CHECK(f97.d() == 3);
    OddPrimeField f43{Int(43)};
    CHECK(f43.r() == 1);
    CHECK(f43.d() == 21);
}

TEST_CASE("prime-power group totient split") {
    PrimePowerGroup g{Int(41), 3};
    CHECK(g.modulus() == 68921);
    CHECK(g.phi() == 67240);
    CHECK(g.r() == g.field().r());
    CHECK(mpz_odd_p(g.d().get_mpz_t()));
    CHECK((g.d() << g.r()) == g.phi());
}

TEST_CASE("Euler classification") {
    OddPrimeField f97{Int(97)};
    OddPrimeField f43{Int(43)};
    CHECK(euler_classify(2, f97) == Residuosity::Residue);
    CHECK(euler_classify(3, f43) == Residuosity::NonResidue);
    CHECK(euler_classify(0, f97) == Residuosity::Zero);
    CHECK(euler_classify(97 * 5, f97) == Residuosity::Zero);
    CHECK(euler_classify(Int(-1), f43) == Residuosity::NonResidue);  // 43 = 3 mod 4
}

TEST_CASE("Euler classification mod p^k") {
    PrimePowerGroup g{Int(41), 3};
    CHECK(euler_classify_pk(5, g) == Residuosity::Residue);
    CHECK(euler_classify_pk(3, g) == Residuosity::NonResidue);
    CHECK_THROWS_AS(euler_classify_pk(41, g), NotAUnitError);
    CHECK_THROWS_AS(euler_classify_pk(0, g), NotAUnitError);
}

TEST_CASE("squares classify as residues and the classes split evenly") {
    for (unsigned long p : odd_primes_below(2000)) {
        OddPrimeField field{Int(p)};
        unsigned long residues = 0;
        unsigned long non_residues = 0;
        for (unsigned long x = 1; x < p; ++x) {
            switch (euler_classify(Int(x), field)) {
                case Residuosity::Residue: ++residues; break;
                case Residuosity::NonResidue: ++non_residues; break;
                case Residuosity::Zero: FAIL("unexpected zero class"); break;
            }
        }
        CHECK(residues == (p - 1) / 2);
        CHECK(non_residues == (p - 1) / 2);
        for (unsigned long x = 1; x < p; ++x)
            CHECK(euler_classify(Int(x) * Int(x), field) ==
                  Residuosity::Residue);
    }
}
