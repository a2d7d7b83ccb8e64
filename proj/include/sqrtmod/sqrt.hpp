#pragma once

#include <optional>
#include <vector>

#include "sqrtmod/modmath.hpp"
#include "sqrtmod/residue.hpp"

namespace sqrtmod {

/// Raised when a supplied witness turns out unusable (a residue where a
/// strict non-residue is required, or f(witness) <= f(alpha)), or when a
/// witness search exhausts its attempt cap.
struct WitnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when the descent's final certificate alpha^d * beta^(2md) = 1
/// does not hold; never expected for valid inputs.
struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SqrtOutcome {
    enum class Kind { Roots, NonResidue, ZeroRoot };
    Kind kind;
    Int canonical;  // min(x, modulus - x); 0 for ZeroRoot
    Int other;      // modulus - canonical; 0 for ZeroRoot

    static SqrtOutcome roots(const Int& root, const Int& modulus);
    static SqrtOutcome non_residue() { return {Kind::NonResidue, 0, 0}; }
    static SqrtOutcome zero_root() { return {Kind::ZeroRoot, 0, 0}; }

    friend bool operator==(const SqrtOutcome&, const SqrtOutcome&) = default;
};

/// The cached chain [base^d, base^(2d), ..., base^(2^(r-1) d)] mod m.
/// One exponentiation then squarings; shared by classification and the
/// descent so nothing is computed twice.
class PowerTable {
public:
    PowerTable(const Int& base, const Int& d, unsigned long r, const Int& modulus);

    const Int& base() const { return base_; }
    unsigned long size() const { return entries_.size(); }

    /// base^(2^i * d) mod m.
    const Int& entry(unsigned long i) const { return entries_.at(i); }

    /// base^(e * d) mod m, assembled from the set bits of e (so e < 2^r).
    Int pow_times_d(const Int& e) const;

private:
    Int base_;
    Int modulus_;
    std::vector<Int> entries_;
};

struct DescentStats {
    unsigned long loop_iterations = 0;
};

/// The proposed top-down descent mod p. With no witness supplied, one is
/// acquired lazily (per policy) the first time a -1 shows up; residues
/// with f(alpha) = -1 never need one.
SqrtOutcome sqrt_proposed(const Int& alpha, const OddPrimeField& field,
                          const std::optional<Int>& witness = std::nullopt,
                          const WitnessPolicy& policy = {},
                          DescentStats* stats = nullptr);

/// Same descent over Z_{p^k}* with (phi, R, D). Throws NotAUnitError when
/// p divides alpha.
SqrtOutcome sqrt_proposed_pk(const Int& alpha, const PrimePowerGroup& group,
                             const std::optional<Int>& witness = std::nullopt,
                             const WitnessPolicy& policy = {},
                             DescentStats* stats = nullptr);

/// Root computation for a known residue, classification already done by
/// the caller. This is the timed kernel the benchmark isolates.
Int proposed_root_of_residue(const Int& alpha, const OddPrimeField& field,
                             const Int& witness, DescentStats* stats = nullptr);

struct SolutionSet {
    Int alpha;
    unsigned long k;          // minimal k with alpha^(2^k d) = 1
    std::vector<Int> elements;  // the 2^k candidates, one of which squares to alpha
};

/// Materializes the candidate set {alpha^((d+1)/2) * beta^(2^(r-1-k) i d)}
/// for i in [0, 2^k). Requires a strict non-residue witness.
SolutionSet enumerate_solution_set(const Int& alpha, const OddPrimeField& field,
                                   const Int& witness,
                                   unsigned long cap_log2 = 20);

/// Classic Tonelli-Shanks, implemented exactly as the baseline pseudocode
/// with no extra optimizations, for a faithful benchmark comparison.
SqrtOutcome sqrt_tonelli_shanks(const Int& alpha, const OddPrimeField& field,
                                const Int& witness);

Int tonelli_shanks_root_of_residue(const Int& alpha, const OddPrimeField& field,
                                   const Int& witness);

/// The direct formula +-alpha^((p+1)/4), valid only for p = 3 (mod 4).
SqrtOutcome sqrt_direct_3mod4(const Int& alpha, const OddPrimeField& field);

/// Ground-truth oracle: scans x in [0, modulus/2] for x^2 = alpha.
/// Works for any modulus >= 2; guarded against large scans.
SqrtOutcome brute_sqrt(const Int& alpha, const Int& modulus,
                       const Int& guard = Int(10000000));

}  // namespace sqrtmod
