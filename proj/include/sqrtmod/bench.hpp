#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sqrtmod/modmath.hpp"
#include "sqrtmod/sqrt.hpp"

namespace sqrtmod::bench {

/// Raised when a computed root fails the squaring check; carries the
/// offending (p, alpha, root) triple in the message.
struct VerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Algorithm { Proposed, TonelliShanks };

const char* algorithm_name(Algorithm a);

enum class WitnessMode { Provided, StrictSearch, RelativeSearch };

struct BenchConfig {
    std::vector<OddPrimeField> primes;
    /// Parallel to primes; consulted only in WitnessMode::Provided.
    std::vector<Int> provided_witnesses;
    unsigned long residue_count = 10000;
    std::vector<Algorithm> algorithms = {Algorithm::Proposed,
                                         Algorithm::TonelliShanks};
    WitnessMode witness_mode = WitnessMode::StrictSearch;
    unsigned repetitions = 3;
};

struct BenchRecord {
    unsigned long prime_digits = 0;
    std::string algorithm;
    unsigned long residues_found = 0;
    double total_time_s = 0.0;  // monotonic clock, root computation only
    bool verified = false;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// Walks alpha = 1..residue_count for each (prime, algorithm), classifies
/// (untimed), times the root computation for residues, and verifies every
/// root by squaring. Repeated `repetitions` times; the minimum time wins.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// One decimal prime per line; '#' comments and blank lines skipped.
/// Composite or unparsable lines abort with the line number.
std::vector<OddPrimeField> load_prime_corpus(const std::string& path);

void emit_csv(const std::vector<BenchRecord>& records, std::ostream& sink);
std::vector<BenchRecord> parse_csv(std::istream& source);

}  // namespace sqrtmod::bench
