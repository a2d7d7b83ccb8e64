#include "sqrtmod/residue.hpp"

#include <vector>

namespace sqrtmod {

namespace {

// f over an arbitrary group (modulus, r, d) with two roots of unity.
int f_value_generic(const Int& gamma, const Int& modulus, unsigned long r,
                    const Int& d) {
    Int x = mod_pow(gamma, d, modulus);
    if (x == 1) return -1;
    for (unsigned long i = 0; i < r; ++i) {
        if (x == modulus - 1) return static_cast<int>(i);
        x = x * x % modulus;
    }
    throw CompositeModulusError(
        "f_value: no power gamma^(2^i d) hit -1; modulus is not a prime power");
}

}  // namespace

FValue f_value(const Int& gamma, const OddPrimeField& field) {
    Int g = field.reduce(gamma);
    if (g == 0)
        throw std::invalid_argument("f_value: 0 is outside the domain F_p*");
    return {f_value_generic(g, field.p(), field.r(), field.d())};
}

FValue f_value_pk(const Int& gamma, const PrimePowerGroup& group) {
    Int g = group.reduce(gamma);
    if (mpz_divisible_p(g.get_mpz_t(), group.field().p().get_mpz_t()))
        throw NotAUnitError("f_value_pk: gamma shares a factor with p^k");
    return {f_value_generic(g, group.modulus(), group.r(), group.d())};
}

Rng::Rng(unsigned long seed) : state_(gmp_randinit_mt) {
    state_.seed(seed);
}

Int Rng::below(const Int& bound) {
    return state_.get_z_range(bound);
}

std::optional<Witness> find_strict_witness(const OddPrimeField& field,
                                           const WitnessPolicy& policy) {
    const Int& p = field.p();
    const int top = static_cast<int>(field.r()) - 1;
    if (p == 3) return Witness{Int(2), {top}, WitnessKind::StrictNonResidue};

    std::optional<Rng> rng;
    if (policy.seed) rng.emplace(*policy.seed);
    Int candidate = 1;  // sequential mode starts scanning at 2
    for (unsigned attempt = 0; attempt < policy.attempt_cap; ++attempt) {
        if (rng)
            candidate = 2 + rng->below(p - 3);  // uniform over [2, p-2]
        else
            candidate += 1;
        if (candidate >= p) break;
        if (euler_classify(candidate, field) == Residuosity::NonResidue)
            return Witness{candidate, {top}, WitnessKind::StrictNonResidue};
    }
    return std::nullopt;
}

RelativeWitnessResult find_relative_witness(const Int& alpha,
                                            const OddPrimeField& field,
                                            const WitnessPolicy& policy) {
    const Int& p = field.p();
    const int top = static_cast<int>(field.r()) - 1;
    FValue fa = f_value(alpha, field);
    if (fa.value >= top)
        throw std::invalid_argument(
            "find_relative_witness: alpha is not a quadratic residue");
    if (fa.value == -1)
        return {RelativeWitnessResult::Status::NotNeeded, std::nullopt};

    std::optional<Rng> rng;
    if (policy.seed) rng.emplace(*policy.seed);
    Int candidate = 1;
    for (unsigned attempt = 0; attempt < policy.attempt_cap; ++attempt) {
        if (rng)
            candidate = 2 + rng->below(p - 3);
        else
            candidate += 1;
        if (candidate >= p) break;
        FValue fg = f_value(candidate, field);
        if (fg.value > fa.value) {
            auto kind = fg.value == top ? WitnessKind::StrictNonResidue
                                        : WitnessKind::RelativeNonResidue;
            return {RelativeWitnessResult::Status::Found,
                    Witness{candidate, fg, kind}};
        }
    }
    return {RelativeWitnessResult::Status::Exhausted, std::nullopt};
}

FCensus f_census(const OddPrimeField& field, unsigned long guard) {
    if (field.p() > guard)
        throw GuardExceeded("f_census: p exceeds the enumeration guard");
    FCensus census;
    census.total = field.p() - 1;
    for (Int x = 1; x < field.p(); ++x)
        ++census.counts[f_value(x, field).value];
    return census;
}

mpq_class relative_witness_probability(const OddPrimeField& field) {
    // (2/3)(1 - 2^(-2r)) = 2(4^r - 1) / (3 * 4^r)
    Int four_r;
    mpz_ui_pow_ui(four_r.get_mpz_t(), 4, field.r());
    mpq_class q(2 * (four_r - 1), 3 * four_r);
    q.canonicalize();
    return q;
}

mpq_class relative_witness_probability_exhaustive(const OddPrimeField& field,
                                                  unsigned long guard) {
    if (field.p() > guard)
        throw GuardExceeded(
            "relative_witness_probability_exhaustive: p exceeds the guard");
    const unsigned long p = field.p().get_ui();
    std::vector<int> f(p, 0);
    for (Int x = 1; x < field.p(); ++x)
        f[x.get_ui()] = f_value(x, field).value;

    const int top = static_cast<int>(field.r()) - 1;
    unsigned long favorable = 0;
    unsigned long residues = 0;
    for (unsigned long a = 1; a < p; ++a) {
        if (f[a] >= top) continue;  // non-residue
        ++residues;
        for (unsigned long g = 1; g < p; ++g)
            if (f[g] > f[a]) ++favorable;
    }
    mpq_class q(favorable, residues * static_cast<unsigned long>(p - 1));
    q.canonicalize();
    return q;
}

}  // namespace sqrtmod
