#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sqrtmod {

using Int = mpz_class;

/// Raised when an intermediate value certifies that a supposed prime
/// modulus is in fact composite (e.g. a "square root of unity" that is
/// neither 1 nor -1).
struct CompositeModulusError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when an element shares a factor with a prime-power modulus.
struct NotAUnitError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when an exhaustive operation exceeds its configured size guard.
struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// base^exponent mod modulus by binary exponentiation. Convention 0^0 = 1.
Int mod_pow(const Int& base, const Int& exponent, const Int& modulus);

struct TwoAdic {
    unsigned long r;  // 2-adic valuation
    Int d;            // odd cofactor, n = 2^r * d
};

/// Splits an even positive n into 2^r * d with d odd.
TwoAdic decompose_two_adic(const Int& n);

enum class Residuosity { Zero, Residue, NonResidue };

/// An odd prime p together with the split p-1 = 2^r * d, d odd.
/// Construction verifies primality probabilistically (40 strong-pseudoprime
/// rounds); everything downstream relies on F_p* having exactly two square
/// roots of unity, which fails for composites.
class OddPrimeField {
public:
    explicit OddPrimeField(Int p);

    const Int& p() const { return p_; }
    unsigned long r() const { return r_; }
    const Int& d() const { return d_; }

    /// Canonical representative in [0, p).
    Int reduce(const Int& x) const;

private:
    Int p_;
    unsigned long r_ = 0;
    Int d_;
};

/// The unit group of Z_{p^k} with phi(p^k) = p^(k-1)(p-1) = 2^R * D.
/// Since p is odd, R equals the r of the underlying field.
class PrimePowerGroup {
public:
    PrimePowerGroup(Int p, unsigned long k);

    const OddPrimeField& field() const { return field_; }
    unsigned long k() const { return k_; }
    const Int& modulus() const { return modulus_; }
    const Int& phi() const { return phi_; }
    unsigned long r() const { return r_; }
    const Int& d() const { return d_; }

    Int reduce(const Int& x) const;

private:
    OddPrimeField field_;
    unsigned long k_;
    Int modulus_;
    Int phi_;
    unsigned long r_ = 0;
    Int d_;
};

/// Euler's criterion over F_p. Zero for alpha = 0 (mod p).
Residuosity euler_classify(const Int& alpha, const OddPrimeField& field);

/// Euler's criterion over Z_{p^k}*. Throws NotAUnitError when p | alpha.
Residuosity euler_classify_pk(const Int& alpha, const PrimePowerGroup& group);

}  // namespace sqrtmod
