#include "sqrtmod/bench.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "sqrtmod/residue.hpp"

namespace sqrtmod::bench {

namespace {

using Clock = std::chrono::steady_clock;

Int root_of(Algorithm algo, const Int& alpha, const OddPrimeField& field,
            const Int& witness) {
    return algo == Algorithm::Proposed
               ? proposed_root_of_residue(alpha, field, witness)
               : tonelli_shanks_root_of_residue(alpha, field, witness);
}

Int witness_for(const BenchConfig& config, std::size_t prime_index) {
    const OddPrimeField& field = config.primes[prime_index];
    if (config.witness_mode == WitnessMode::Provided) {
        if (prime_index >= config.provided_witnesses.size())
            throw std::invalid_argument(
                "run_bench: provided_witnesses shorter than primes");
        Int w = field.reduce(config.provided_witnesses[prime_index]);
        if (euler_classify(w, field) != Residuosity::NonResidue)
            throw std::invalid_argument(
                "run_bench: provided witness is not a non-residue");
        return w;
    }
    auto found = find_strict_witness(field);
    if (!found)
        throw WitnessError("run_bench: strict witness search exhausted");
    return found->element;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    return a == Algorithm::Proposed ? "proposed" : "tonelli_shanks";
}

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
    if (config.residue_count < 1)
        throw std::invalid_argument("run_bench: residue_count must be >= 1");
    if (config.algorithms.empty())
        throw std::invalid_argument("run_bench: no algorithm selected");
    if (config.repetitions < 1)
        throw std::invalid_argument("run_bench: repetitions must be >= 1");

    std::vector<BenchRecord> records;
    for (std::size_t pi = 0; pi < config.primes.size(); ++pi) {
        const OddPrimeField& field = config.primes[pi];
        const Int strict_witness =
            config.witness_mode == WitnessMode::RelativeSearch
                ? Int(0)
                : witness_for(config, pi);

        for (Algorithm algo : config.algorithms) {
            BenchRecord record;
            record.prime_digits = field.p().get_str().size();
            record.algorithm = algorithm_name(algo);
            record.total_time_s = std::numeric_limits<double>::infinity();
            record.verified = true;

            for (unsigned rep = 0; rep < config.repetitions; ++rep) {
                unsigned long residues = 0;
                double elapsed = 0.0;
                const Int limit(config.residue_count);
                for (Int alpha = 1; alpha <= limit; ++alpha) {
                    Int a = field.reduce(alpha);
                    if (euler_classify(a, field) != Residuosity::Residue)
                        continue;
                    ++residues;

                    // Witness acquisition stays outside the timed region;
                    // Tonelli-Shanks always needs a strict non-residue.
                    Int w = strict_witness;
                    if (config.witness_mode == WitnessMode::RelativeSearch) {
                        if (algo == Algorithm::TonelliShanks) {
                            auto s = find_strict_witness(field);
                            if (!s) throw WitnessError("witness search failed");
                            w = s->element;
                        } else {
                            auto rel = find_relative_witness(a, field);
                            if (rel.status ==
                                RelativeWitnessResult::Status::Exhausted)
                                throw WitnessError("witness search failed");
                            if (rel.witness)
                                w = rel.witness->element;
                            else
                                w = 0;  // f(alpha) = -1, descent needs none
                        }
                    }

                    Int root;
                    if (algo == Algorithm::Proposed && w == 0) {
                        auto t0 = Clock::now();
                        root = proposed_root_of_residue(a, field, Int(1));
                        elapsed += std::chrono::duration<double>(Clock::now() -
                                                                 t0)
                                       .count();
                    } else {
                        auto t0 = Clock::now();
                        root = root_of(algo, a, field, w);
                        elapsed += std::chrono::duration<double>(Clock::now() -
                                                                 t0)
                                       .count();
                    }

                    if (root * root % field.p() != a) {
                        std::ostringstream msg;
                        msg << "verification failed: p=" << field.p()
                            << " alpha=" << a << " root=" << root;
                        throw VerificationError(msg.str());
                    }
                }
                record.residues_found = residues;
                record.total_time_s = std::min(record.total_time_s, elapsed);
            }
            records.push_back(std::move(record));
        }
    }
    return records;
}

std::vector<OddPrimeField> load_prime_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_prime_corpus: cannot open " + path);
    std::vector<OddPrimeField> fields;
    std::string line;
    unsigned long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        auto end = line.find_last_not_of(" \t\r");
        std::string token = line.substr(begin, end - begin + 1);
        Int p;
        if (mpz_set_str(p.get_mpz_t(), token.c_str(), 10) != 0)
            throw std::runtime_error("load_prime_corpus: line " +
                                     std::to_string(line_no) +
                                     ": not a decimal integer");
        try {
            fields.emplace_back(p);
        } catch (const std::invalid_argument&) {
            throw std::runtime_error("load_prime_corpus: line " +
                                     std::to_string(line_no) + ": not prime");
        }
    }
    return fields;
}

void emit_csv(const std::vector<BenchRecord>& records, std::ostream& sink) {
    sink << "prime_digits,algorithm,residues_found,total_time_s,verified\n";
    for (const auto& r : records) {
        sink << r.prime_digits << ',' << r.algorithm << ',' << r.residues_found
             << ',' << std::fixed << std::setprecision(6) << r.total_time_s
             << ',' << (r.verified ? "true" : "false") << '\n';
    }
}

std::vector<BenchRecord> parse_csv(std::istream& source) {
    std::string line;
    if (!std::getline(source, line) ||
        line != "prime_digits,algorithm,residues_found,total_time_s,verified")
        throw std::runtime_error("parse_csv: bad or missing header");
    std::vector<BenchRecord> records;
    while (std::getline(source, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        BenchRecord r;
        std::getline(row, field, ',');
        r.prime_digits = std::stoul(field);
        std::getline(row, r.algorithm, ',');
        std::getline(row, field, ',');
        r.residues_found = std::stoul(field);
        std::getline(row, field, ',');
        r.total_time_s = std::stod(field);
        std::getline(row, field, ',');
        r.verified = field == "true";
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace sqrtmod::bench
