#include "sqrtmod/modmath.hpp"

namespace sqrtmod {

namespace {
constexpr int kPrimalityRounds = 40;
}

Int mod_pow(const Int& base, const Int& exponent, const Int& modulus) {
    if (modulus < 2)
        throw std::invalid_argument("mod_pow: modulus must be >= 2");
    if (exponent < 0)
        throw std::invalid_argument("mod_pow: negative exponent");
    if (exponent == 0) return Int(1);  // covers 0^0 = 1
    Int result;
    mpz_powm(result.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(),
             modulus.get_mpz_t());
    return result;
}

TwoAdic decompose_two_adic(const Int& n) {
    if (n <= 0 || mpz_odd_p(n.get_mpz_t()))
        throw std::invalid_argument("decompose_two_adic: need even n >= 2");
    unsigned long r = mpz_scan1(n.get_mpz_t(), 0);
    Int d;
    mpz_tdiv_q_2exp(d.get_mpz_t(), n.get_mpz_t(), r);
    return {r, d};
}

OddPrimeField::OddPrimeField(Int p) : p_(std::move(p)) {
    if (p_ < 3 || mpz_even_p(p_.get_mpz_t()))
        throw std::invalid_argument("OddPrimeField: p must be an odd prime >= 3");
    if (mpz_probab_prime_p(p_.get_mpz_t(), kPrimalityRounds) == 0)
        throw std::invalid_argument("OddPrimeField: p failed primality test");
    auto split = decompose_two_adic(p_ - 1);
    r_ = split.r;
    d_ = std::move(split.d);
}

Int OddPrimeField::reduce(const Int& x) const {
    Int t;
    mpz_mod(t.get_mpz_t(), x.get_mpz_t(), p_.get_mpz_t());
    return t;
}

PrimePowerGroup::PrimePowerGroup(Int p, unsigned long k)
    : field_(std::move(p)), k_(k) {
    if (k_ < 1) throw std::invalid_argument("PrimePowerGroup: k must be >= 1");
    mpz_pow_ui(modulus_.get_mpz_t(), field_.p().get_mpz_t(), k_);
    Int pk1;
    mpz_pow_ui(pk1.get_mpz_t(), field_.p().get_mpz_t(), k_ - 1);
    phi_ = pk1 * (field_.p() - 1);
    auto split = decompose_two_adic(phi_);
    r_ = split.r;
    d_ = std::move(split.d);
    // p odd makes p^(k-1) odd, so the valuation is inherited from p-1.
    if (r_ != field_.r())
        throw std::logic_error("PrimePowerGroup: valuation mismatch");
}

Int PrimePowerGroup::reduce(const Int& x) const {
    Int t;
    mpz_mod(t.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
    return t;
}

Residuosity euler_classify(const Int& alpha, const OddPrimeField& field) {
    Int a = field.reduce(alpha);
    if (a == 0) return Residuosity::Zero;
    Int pw = mod_pow(a, (field.p() - 1) / 2, field.p());
    if (pw == 1) return Residuosity::Residue;
    if (pw == field.p() - 1) return Residuosity::NonResidue;
    throw CompositeModulusError(
        "euler_classify: alpha^((p-1)/2) is neither 1 nor -1; p is composite");
}

Residuosity euler_classify_pk(const Int& alpha, const PrimePowerGroup& group) {
    Int a = group.reduce(alpha);
    if (mpz_divisible_p(a.get_mpz_t(), group.field().p().get_mpz_t()))
        throw NotAUnitError("euler_classify_pk: alpha shares a factor with p^k");
    Int pw = mod_pow(a, group.phi() / 2, group.modulus());
    if (pw == 1) return Residuosity::Residue;
    if (pw == group.modulus() - 1) return Residuosity::NonResidue;
    throw CompositeModulusError(
        "euler_classify_pk: alpha^(phi/2) is neither 1 nor -1");
}

}  // namespace sqrtmod
