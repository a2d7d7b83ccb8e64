#pragma once

#include <compare>
#include <map>
#include <optional>

#include "sqrtmod/modmath.hpp"

namespace sqrtmod {

/// f(gamma) over F_p*: -1 when gamma^d = 1, otherwise the unique i with
/// gamma^(2^i * d) = -1. Range [-1, r-1]; non-residues sit at r-1.
struct FValue {
    int value;
    friend auto operator<=>(const FValue&, const FValue&) = default;
};

FValue f_value(const Int& gamma, const OddPrimeField& field);

/// Same function over Z_{p^k}* with (R, D) in place of (r, d).
FValue f_value_pk(const Int& gamma, const PrimePowerGroup& group);

enum class WitnessKind { StrictNonResidue, RelativeNonResidue };

struct Witness {
    Int element;
    FValue f;
    WitnessKind kind;
};

/// Uniform big-integer randomness, seeded for reproducibility.
class Rng {
public:
    explicit Rng(unsigned long seed);

    /// Uniform in [0, bound).
    Int below(const Int& bound);

private:
    gmp_randclass state_;
};

/// Search knobs shared by the witness finders. No seed means the
/// deterministic fallback: a sequential scan upward from 2.
struct WitnessPolicy {
    std::optional<unsigned long> seed;
    unsigned attempt_cap = 256;
};

/// Draws candidates until one classifies as a non-residue, or the attempt
/// cap runs out (nullopt; vanishing probability for a true prime).
std::optional<Witness> find_strict_witness(const OddPrimeField& field,
                                           const WitnessPolicy& policy = {});

struct RelativeWitnessResult {
    enum class Status { Found, NotNeeded, Exhausted };
    Status status;
    std::optional<Witness> witness;  // engaged iff status == Found
};

/// Looks for gamma with f(gamma) > f(alpha). Short-circuits to NotNeeded
/// when f(alpha) = -1 (the descent finishes without any witness). Strict
/// non-residues qualify and are tagged as such.
RelativeWitnessResult find_relative_witness(const Int& alpha,
                                            const OddPrimeField& field,
                                            const WitnessPolicy& policy = {});

struct FCensus {
    std::map<int, unsigned long> counts;  // f-value -> class size
    Int total;                            // p - 1
};

/// Exhaustive f-value class sizes over F_p*. Guarded by p <= guard.
FCensus f_census(const OddPrimeField& field, unsigned long guard = 1000000);

/// Closed-form probability that a random gamma is a relative non-residue
/// to a random residue alpha: (2/3)(1 - 2^(-2r)), as an exact rational.
mpq_class relative_witness_probability(const OddPrimeField& field);

/// The same ratio counted exhaustively: favorable (alpha residue, gamma)
/// pairs over residue_count * (p-1). Guarded by p <= guard.
mpq_class relative_witness_probability_exhaustive(const OddPrimeField& field,
                                                  unsigned long guard = 10000);

}  // namespace sqrtmod
