#include "sqrtmod/sqrt.hpp"

#include <functional>
#include <utility>

namespace sqrtmod {

SqrtOutcome SqrtOutcome::roots(const Int& root, const Int& modulus) {
    Int x = root % modulus;
    if (x < 0) x += modulus;
    Int y = modulus - x;
    if (y < x) std::swap(x, y);
    return {Kind::Roots, x, y};
}

PowerTable::PowerTable(const Int& base, const Int& d, unsigned long r,
                       const Int& modulus)
    : base_(base), modulus_(modulus) {
    entries_.reserve(r);
    Int x = mod_pow(base, d, modulus);
    for (unsigned long i = 0; i < r; ++i) {
        entries_.push_back(x);
        if (i + 1 < r) x = x * x % modulus;
    }
}

Int PowerTable::pow_times_d(const Int& e) const {
    if (e < 0) throw std::invalid_argument("PowerTable: negative exponent");
    Int acc = 1;
    for (unsigned long i = 0; i < entries_.size(); ++i)
        if (mpz_tstbit(e.get_mpz_t(), i)) acc = acc * entries_[i] % modulus_;
    if (mpz_sizeinbase(e.get_mpz_t(), 2) > entries_.size() && e != 0)
        throw std::invalid_argument("PowerTable: exponent out of table range");
    return acc;
}

namespace {

struct WitState {
    Int element;
    int f;
    PowerTable table;
};

// f derived from the already-built chain: entry(i) = w^(2^i d).
int f_from_table(const PowerTable& table, const Int& modulus) {
    if (table.entry(0) == 1) return -1;
    for (unsigned long i = 0; i < table.size(); ++i)
        if (table.entry(i) == modulus - 1) return static_cast<int>(i);
    throw CompositeModulusError(
        "witness chain never reaches -1; modulus is not an odd prime power");
}

WitState make_wit_state(const Int& element, const Int& modulus, unsigned long r,
                        const Int& d) {
    if (element == 0)
        throw WitnessError("witness reduces to 0 modulo the modulus");
    PowerTable table(element, d, r, modulus);
    int f = f_from_table(table, modulus);
    return {element, f, std::move(table)};
}

using WitnessAcquirer = std::function<WitState(int f_alpha)>;

// Top-down descent. Tracks the witness exponent as e with
// beta-part = witness^(e*d); alpha exponents live in the table.
Int descent_root(const Int& alpha, const PowerTable& alpha_table,
                 const Int& modulus, unsigned long r, const Int& d,
                 std::optional<WitState> wit, const WitnessAcquirer& acquire,
                 DescentStats* stats) {
    Int e = 0;
    for (unsigned long j = r - 1; j >= 1; --j) {
        if (mpz_odd_p(e.get_mpz_t()))
            throw CertificateError("descent: witness exponent lost parity");
        e >>= 1;
        Int val = alpha_table.entry(j - 1);
        if (e != 0) val = val * wit->table.pow_times_d(e) % modulus;
        if (val == modulus - 1) {
            const int index = static_cast<int>(j) - 1;
            if (!wit) wit = acquire(index);
            if (wit->f <= index)
                throw WitnessError(
                    "witness is not a relative non-residue for this alpha");
            mpz_setbit(e.get_mpz_t(), static_cast<unsigned long>(wit->f));
        } else if (val != 1) {
            throw CompositeModulusError(
                "descent: square root of unity is neither 1 nor -1");
        }
        if (stats) ++stats->loop_iterations;
    }

    // Exit certificate: alpha^d * w^(2md) = 1 with e = 2m.
    if (mpz_odd_p(e.get_mpz_t()))
        throw CertificateError("descent: final witness exponent is odd");
    Int cert = alpha_table.entry(0);
    if (e != 0) cert = cert * wit->table.pow_times_d(e) % modulus;
    if (cert != 1)
        throw CertificateError("descent: alpha^d * beta^(2md) != 1");

    Int root = mod_pow(alpha, (d + 1) / 2, modulus);
    if (e != 0) {
        e >>= 1;
        root = root * wit->table.pow_times_d(e) % modulus;
    }
    return root;
}

WitnessAcquirer field_acquirer(const Int& alpha, const OddPrimeField& field,
                               const WitnessPolicy& policy) {
    return [&alpha, &field, policy](int) -> WitState {
        auto result = find_relative_witness(alpha, field, policy);
        if (result.status != RelativeWitnessResult::Status::Found)
            throw WitnessError("relative witness search exhausted its cap");
        return make_wit_state(result.witness->element, field.p(), field.r(),
                              field.d());
    };
}

WitnessAcquirer pk_acquirer(const PrimePowerGroup& group,
                            const WitnessPolicy& policy) {
    return [&group, policy](int f_alpha) -> WitState {
        std::optional<Rng> rng;
        if (policy.seed) rng.emplace(*policy.seed);
        Int candidate = 1;
        for (unsigned attempt = 0; attempt < policy.attempt_cap; ++attempt) {
            if (rng)
                candidate = 2 + rng->below(group.modulus() - 3);
            else
                candidate += 1;
            if (candidate >= group.modulus()) break;
            if (mpz_divisible_p(candidate.get_mpz_t(),
                                group.field().p().get_mpz_t()))
                continue;
            if (f_value_pk(candidate, group).value > f_alpha)
                return make_wit_state(candidate, group.modulus(), group.r(),
                                      group.d());
        }
        throw WitnessError("relative witness search exhausted its cap");
    };
}

}  // namespace

SqrtOutcome sqrt_proposed(const Int& alpha, const OddPrimeField& field,
                          const std::optional<Int>& witness,
                          const WitnessPolicy& policy, DescentStats* stats) {
    Int a = field.reduce(alpha);
    if (a == 0) return SqrtOutcome::zero_root();
    PowerTable table(a, field.d(), field.r(), field.p());
    const Int& top = table.entry(field.r() - 1);  // alpha^((p-1)/2)
    if (top == field.p() - 1) return SqrtOutcome::non_residue();
    if (top != 1)
        throw CompositeModulusError("sqrt_proposed: Euler power is not +-1");

    std::optional<WitState> wit;
    if (witness)
        wit = make_wit_state(field.reduce(*witness), field.p(), field.r(),
                             field.d());
    Int root = descent_root(a, table, field.p(), field.r(), field.d(),
                            std::move(wit), field_acquirer(a, field, policy),
                            stats);
    return SqrtOutcome::roots(root, field.p());
}

Int proposed_root_of_residue(const Int& alpha, const OddPrimeField& field,
                             const Int& witness, DescentStats* stats) {
    PowerTable table(alpha, field.d(), field.r(), field.p());
    WitState wit =
        make_wit_state(field.reduce(witness), field.p(), field.r(), field.d());
    return descent_root(alpha, table, field.p(), field.r(), field.d(),
                        std::move(wit), WitnessAcquirer{}, stats);
}

SqrtOutcome sqrt_proposed_pk(const Int& alpha, const PrimePowerGroup& group,
                             const std::optional<Int>& witness,
                             const WitnessPolicy& policy, DescentStats* stats) {
    Int a = group.reduce(alpha);
    if (mpz_divisible_p(a.get_mpz_t(), group.field().p().get_mpz_t()))
        throw NotAUnitError("sqrt_proposed_pk: alpha shares a factor with p^k");
    PowerTable table(a, group.d(), group.r(), group.modulus());
    const Int& top = table.entry(group.r() - 1);  // alpha^(phi/2)
    if (top == group.modulus() - 1) return SqrtOutcome::non_residue();
    if (top != 1)
        throw CompositeModulusError("sqrt_proposed_pk: Euler power is not +-1");

    std::optional<WitState> wit;
    if (witness) {
        Int w = group.reduce(*witness);
        if (mpz_divisible_p(w.get_mpz_t(), group.field().p().get_mpz_t()))
            throw WitnessError("sqrt_proposed_pk: witness is not a unit");
        wit = make_wit_state(w, group.modulus(), group.r(), group.d());
    }
    Int root = descent_root(a, table, group.modulus(), group.r(), group.d(),
                            std::move(wit), pk_acquirer(group, policy), stats);
    return SqrtOutcome::roots(root, group.modulus());
}

SolutionSet enumerate_solution_set(const Int& alpha, const OddPrimeField& field,
                                   const Int& witness, unsigned long cap_log2) {
    Int w = field.reduce(witness);
    if (euler_classify(w, field) != Residuosity::NonResidue)
        throw WitnessError(
            "enumerate_solution_set: witness must be a strict non-residue");
    FValue fa = f_value(alpha, field);  // rejects alpha = 0
    if (fa.value == static_cast<int>(field.r()) - 1)
        throw std::invalid_argument(
            "enumerate_solution_set: alpha is not a quadratic residue");
    const auto k = static_cast<unsigned long>(fa.value + 1);
    if (k > cap_log2)
        throw GuardExceeded("enumerate_solution_set: 2^k exceeds the cap");

    Int a = field.reduce(alpha);
    SolutionSet set{a, k, {}};
    set.elements.reserve(1ul << k);
    // step = beta^(2^(r-1-k) d); candidates are start * step^i.
    Int step_exp = field.d() << (field.r() - 1 - k);
    Int step = mod_pow(w, step_exp, field.p());
    Int cur = mod_pow(a, (field.d() + 1) / 2, field.p());
    for (unsigned long i = 0; i < (1ul << k); ++i) {
        set.elements.push_back(cur);
        cur = cur * step % field.p();
    }
    return set;
}

Int tonelli_shanks_root_of_residue(const Int& alpha, const OddPrimeField& field,
                                   const Int& witness) {
    const Int& p = field.p();
    unsigned long m = field.r();
    Int c = mod_pow(witness, field.d(), p);
    Int t = mod_pow(alpha, field.d(), p);
    Int root = mod_pow(alpha, (field.d() + 1) / 2, p);
    while (t != 1) {
        // repeated squaring to find the least i in (0, m) with t^(2^i) = 1
        Int sq = t * t % p;
        unsigned long i = 1;
        while (sq != 1) {
            sq = sq * sq % p;
            ++i;
            if (i >= m)
                throw WitnessError(
                    "tonelli_shanks: order search stalled; witness is not a "
                    "non-residue (or the modulus is composite)");
        }
        Int b = c;
        for (unsigned long s = 0; s + i + 1 < m; ++s) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        root = root * b % p;
    }
    return root;
}

SqrtOutcome sqrt_tonelli_shanks(const Int& alpha, const OddPrimeField& field,
                                const Int& witness) {
    Int a = field.reduce(alpha);
    if (a == 0) return SqrtOutcome::zero_root();
    switch (euler_classify(a, field)) {
        case Residuosity::NonResidue:
            return SqrtOutcome::non_residue();
        default:
            break;
    }
    return SqrtOutcome::roots(
        tonelli_shanks_root_of_residue(a, field, field.reduce(witness)),
        field.p());
}

SqrtOutcome sqrt_direct_3mod4(const Int& alpha, const OddPrimeField& field) {
    if (field.p() % 4 != 3)
        throw std::invalid_argument("sqrt_direct_3mod4: requires p = 3 (mod 4)");
    Int a = field.reduce(alpha);
    if (a == 0) return SqrtOutcome::zero_root();
    if (euler_classify(a, field) == Residuosity::NonResidue)
        return SqrtOutcome::non_residue();
    return SqrtOutcome::roots(mod_pow(a, (field.p() + 1) / 4, field.p()),
                              field.p());
}

SqrtOutcome brute_sqrt(const Int& alpha, const Int& modulus, const Int& guard) {
    if (modulus < 2)
        throw std::invalid_argument("brute_sqrt: modulus must be >= 2");
    if (modulus > guard)
        throw GuardExceeded("brute_sqrt: modulus exceeds the scan guard");
    Int a;
    mpz_mod(a.get_mpz_t(), alpha.get_mpz_t(), modulus.get_mpz_t());
    if (a == 0) return SqrtOutcome::zero_root();

    if (modulus.fits_ulong_p() && modulus.get_ui() <= (1ul << 32)) {
        const unsigned long m = modulus.get_ui();
        const unsigned long target = a.get_ui();
        for (unsigned long x = 1; x <= m / 2; ++x)
            if (x * x % m == target) return SqrtOutcome::roots(Int(x), modulus);
        return SqrtOutcome::non_residue();
    }
    for (Int x = 1; x <= modulus / 2; ++x)
        if (x * x % modulus == a) return SqrtOutcome::roots(x, modulus);
    return SqrtOutcome::non_residue();
}

}  // namespace sqrtmod
