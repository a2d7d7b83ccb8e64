#include "sqrtmod/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sqrtmod/bench.hpp"
#include "sqrtmod/modmath.hpp"
#include "sqrtmod/residue.hpp"
#include "sqrtmod/sqrt.hpp"

namespace sqrtmod::cli {

namespace {

using nlohmann::json;

Int parse_int(const std::string& text) {
    Int v;
    if (mpz_set_str(v.get_mpz_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("not a decimal integer: " + text);
    return v;
}

std::string rational_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

struct Emit {
    const bool* as_json;  // read at emission time; set by the --json flag
    std::ostream& out;

    void text_line(const std::string& line) {
        if (!*as_json) out << line << '\n';
    }
    void object(const json& j) {
        if (*as_json) out << j.dump() << '\n';
    }
};

void emit_outcome(Emit& emit, const SqrtOutcome& outcome, json j) {
    switch (outcome.kind) {
        case SqrtOutcome::Kind::Roots:
            emit.text_line(outcome.canonical.get_str() + " " +
                           outcome.other.get_str());
            j["roots"] = {outcome.canonical.get_str(), outcome.other.get_str()};
            break;
        case SqrtOutcome::Kind::NonResidue:
            emit.text_line("non-residue");
            j["verdict"] = "non-residue";
            break;
        case SqrtOutcome::Kind::ZeroRoot:
            emit.text_line("0");
            j["roots"] = {"0"};
            break;
    }
    emit.object(j);
}

void self_check_roots(const SqrtOutcome& outcome, const Int& alpha,
                      const Int& modulus) {
    if (outcome.kind != SqrtOutcome::Kind::Roots) return;
    Int a;
    mpz_mod(a.get_mpz_t(), alpha.get_mpz_t(), modulus.get_mpz_t());
    if (outcome.canonical * outcome.canonical % modulus != a ||
        outcome.other * outcome.other % modulus != a)
        throw CertificateError("self-check: printed root does not square back");
}

struct SqrtArgs {
    std::string p, a, w;
    std::string algo = "proposed";
    std::string witness_mode = "strict";
    std::optional<unsigned long> seed;
};

void run_sqrt(const SqrtArgs& args, Emit& emit) {
    Int p = parse_int(args.p);
    Int alpha = parse_int(args.a);
    json j{{"command", "sqrt"}, {"p", p.get_str()}, {"alpha", alpha.get_str()}};

    if (p == 2) {  // alpha mod 2 is its own root
        Int root = ((alpha % 2) + 2) % 2;
        emit.text_line(root.get_str());
        j["roots"] = {root.get_str()};
        emit.object(j);
        return;
    }

    OddPrimeField field{p};
    WitnessPolicy policy;
    policy.seed = args.seed;
    std::optional<Int> witness;
    if (!args.w.empty()) witness = parse_int(args.w);

    SqrtOutcome outcome = SqrtOutcome::non_residue();
    if (args.algo == "proposed") {
        if (!witness && args.witness_mode == "strict") {
            auto found = find_strict_witness(field, policy);
            if (!found) throw WitnessError("strict witness search exhausted");
            witness = found->element;
        }
        outcome = sqrt_proposed(alpha, field, witness, policy);
    } else if (args.algo == "tonelli") {
        if (!witness) {
            auto found = find_strict_witness(field, policy);
            if (!found) throw WitnessError("strict witness search exhausted");
            witness = found->element;
        }
        outcome = sqrt_tonelli_shanks(alpha, field, *witness);
    } else {  // direct34
        outcome = sqrt_direct_3mod4(alpha, field);
    }
    self_check_roots(outcome, alpha, p);
    emit_outcome(emit, outcome, std::move(j));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Square roots modulo p and p^k"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit one JSON object instead of text");
    Emit emit{&as_json, out};

    SqrtArgs sqrt_args;
    auto* cmd_sqrt = app.add_subcommand("sqrt", "square root in F_p");
    cmd_sqrt->add_option("-p", sqrt_args.p, "prime modulus")->required();
    cmd_sqrt->add_option("-a", sqrt_args.a, "element")->required();
    cmd_sqrt->add_option("-w", sqrt_args.w, "witness (non-residue)");
    cmd_sqrt->add_option("--algo", sqrt_args.algo)
        ->check(CLI::IsMember({"proposed", "tonelli", "direct34"}));
    cmd_sqrt->add_option("--witness-mode", sqrt_args.witness_mode)
        ->check(CLI::IsMember({"strict", "relative"}));
    std::string sqrt_seed;
    cmd_sqrt->add_option("--seed", sqrt_seed, "witness search seed");
    cmd_sqrt->callback([&] {
        if (!sqrt_seed.empty()) sqrt_args.seed = std::stoul(sqrt_seed);
        run_sqrt(sqrt_args, emit);
    });

    std::string pk_p, pk_a, pk_w, pk_seed;
    unsigned long pk_k = 1;
    auto* cmd_pk = app.add_subcommand("sqrt-pk", "square root in Z_{p^k}*");
    cmd_pk->add_option("-p", pk_p)->required();
    cmd_pk->add_option("-k", pk_k)->required();
    cmd_pk->add_option("-a", pk_a)->required();
    cmd_pk->add_option("-w", pk_w);
    cmd_pk->add_option("--seed", pk_seed);
    cmd_pk->callback([&] {
        PrimePowerGroup group{parse_int(pk_p), pk_k};
        Int alpha = parse_int(pk_a);
        json j{{"command", "sqrt-pk"},
               {"p", pk_p},
               {"k", pk_k},
               {"alpha", alpha.get_str()}};
        WitnessPolicy policy;
        if (!pk_seed.empty()) policy.seed = std::stoul(pk_seed);
        std::optional<Int> witness;
        if (!pk_w.empty()) witness = parse_int(pk_w);
        try {
            auto outcome = sqrt_proposed_pk(alpha, group, witness, policy);
            self_check_roots(outcome, alpha, group.modulus());
            emit_outcome(emit, outcome, std::move(j));
        } catch (const NotAUnitError&) {
            emit.text_line("not-a-unit");
            j["verdict"] = "not-a-unit";
            emit.object(j);
        }
    });

    std::string cl_p, cl_a;
    auto* cmd_classify = app.add_subcommand("classify", "Euler's criterion");
    cmd_classify->add_option("-p", cl_p)->required();
    cmd_classify->add_option("-a", cl_a)->required();
    cmd_classify->callback([&] {
        OddPrimeField field{parse_int(cl_p)};
        const char* name = "zero";
        switch (euler_classify(parse_int(cl_a), field)) {
            case Residuosity::Residue: name = "residue"; break;
            case Residuosity::NonResidue: name = "non-residue"; break;
            case Residuosity::Zero: break;
        }
        emit.text_line(name);
        emit.object({{"command", "classify"}, {"p", cl_p}, {"class", name}});
    });

    std::string fv_p, fv_a;
    auto* cmd_fvalue = app.add_subcommand("fvalue", "f-value of an element");
    cmd_fvalue->add_option("-p", fv_p)->required();
    cmd_fvalue->add_option("-a", fv_a)->required();
    cmd_fvalue->callback([&] {
        OddPrimeField field{parse_int(fv_p)};
        int f = f_value(parse_int(fv_a), field).value;
        emit.text_line(std::to_string(f));
        emit.object({{"command", "fvalue"}, {"p", fv_p}, {"f", f}});
    });

    std::string wt_p, wt_a, wt_seed;
    bool wt_relative = false;
    auto* cmd_witness = app.add_subcommand("witness", "find a witness");
    cmd_witness->add_option("-p", wt_p)->required();
    cmd_witness->add_option("-a", wt_a, "target element (relative mode)");
    cmd_witness->add_flag("--relative", wt_relative);
    cmd_witness->add_option("--seed", wt_seed);
    cmd_witness->callback([&] {
        OddPrimeField field{parse_int(wt_p)};
        WitnessPolicy policy;
        if (!wt_seed.empty()) policy.seed = std::stoul(wt_seed);
        json j{{"command", "witness"}, {"p", wt_p}};
        if (wt_relative) {
            if (wt_a.empty())
                throw CLI::ValidationError("--relative requires -a");
            auto result = find_relative_witness(parse_int(wt_a), field, policy);
            if (result.status == RelativeWitnessResult::Status::Exhausted)
                throw WitnessError("relative witness search exhausted its cap");
            if (result.status == RelativeWitnessResult::Status::NotNeeded) {
                emit.text_line("not-needed");
                j["witness"] = "not-needed";
            } else {
                const Witness& w = *result.witness;
                const char* kind = w.kind == WitnessKind::StrictNonResidue
                                       ? "strict"
                                       : "relative";
                emit.text_line(w.element.get_str() + " " +
                               std::to_string(w.f.value) + " " + kind);
                j["witness"] = w.element.get_str();
                j["f"] = w.f.value;
                j["kind"] = kind;
            }
        } else {
            auto found = find_strict_witness(field, policy);
            if (!found)
                throw WitnessError("strict witness search exhausted its cap");
            emit.text_line(found->element.get_str() + " " +
                           std::to_string(found->f.value) + " strict");
            j["witness"] = found->element.get_str();
            j["f"] = found->f.value;
            j["kind"] = "strict";
        }
        emit.object(j);
    });

    std::string en_p, en_a, en_w;
    auto* cmd_enum = app.add_subcommand("enumerate", "candidate solution set");
    cmd_enum->add_option("-p", en_p)->required();
    cmd_enum->add_option("-a", en_a)->required();
    cmd_enum->add_option("-w", en_w)->required();
    cmd_enum->callback([&] {
        OddPrimeField field{parse_int(en_p)};
        auto set =
            enumerate_solution_set(parse_int(en_a), field, parse_int(en_w));
        std::string line;
        json elems = json::array();
        for (const Int& e : set.elements) {
            if (!line.empty()) line += ' ';
            line += e.get_str();
            elems.push_back(e.get_str());
        }
        emit.text_line("k=" + std::to_string(set.k));
        emit.text_line(line);
        emit.object({{"command", "enumerate"},
                     {"p", en_p},
                     {"k", set.k},
                     {"elements", elems}});
    });

    std::string cs_p;
    auto* cmd_census = app.add_subcommand("census", "f-value class sizes");
    cmd_census->add_option("-p", cs_p)->required();
    cmd_census->callback([&] {
        OddPrimeField field{parse_int(cs_p)};
        auto census = f_census(field);
        json j{{"command", "census"}, {"p", cs_p}};
        json counts = json::object();
        for (const auto& [f, count] : census.counts) {
            emit.text_line("f=" + std::to_string(f) + " " +
                           std::to_string(count));
            counts[std::to_string(f)] = count;
        }
        auto closed = relative_witness_probability(field);
        emit.text_line("closed-form " + rational_str(closed));
        j["counts"] = counts;
        j["closed_form"] = rational_str(closed);
        if (field.p() <= 10000) {
            auto exhaustive = relative_witness_probability_exhaustive(field);
            emit.text_line("exhaustive " + rational_str(exhaustive));
            j["exhaustive"] = rational_str(exhaustive);
        }
        emit.object(j);
    });

    std::string bn_primes, bn_csv, bn_algos = "proposed,tonelli_shanks";
    std::string bn_mode = "strict";
    unsigned long bn_count = 10000;
    unsigned bn_reps = 3;
    auto* cmd_bench = app.add_subcommand("bench", "timing harness");
    cmd_bench->add_option("--primes", bn_primes, "prime corpus file")
        ->required();
    cmd_bench->add_option("--count", bn_count, "elements to scan");
    cmd_bench->add_option("--algos", bn_algos, "comma-separated list");
    cmd_bench->add_option("--csv", bn_csv, "output path (default stdout)");
    cmd_bench->add_option("--reps", bn_reps, "repetitions, min time wins");
    cmd_bench->add_option("--witness-mode", bn_mode)
        ->check(CLI::IsMember({"strict", "relative"}));
    cmd_bench->callback([&] {
        bench::BenchConfig config;
        config.primes = bench::load_prime_corpus(bn_primes);
        config.residue_count = bn_count;
        config.repetitions = bn_reps;
        config.witness_mode = bn_mode == "relative"
                                  ? bench::WitnessMode::RelativeSearch
                                  : bench::WitnessMode::StrictSearch;
        config.algorithms.clear();
        std::istringstream list(bn_algos);
        std::string name;
        while (std::getline(list, name, ',')) {
            if (name == "proposed")
                config.algorithms.push_back(bench::Algorithm::Proposed);
            else if (name == "tonelli_shanks" || name == "tonelli")
                config.algorithms.push_back(bench::Algorithm::TonelliShanks);
            else
                throw CLI::ValidationError("unknown algorithm: " + name);
        }
        auto records = bench::run_bench(config);
        if (!bn_csv.empty()) {
            std::ofstream file(bn_csv);
            if (!file)
                throw std::runtime_error("cannot open for writing: " + bn_csv);
            bench::emit_csv(records, file);
        } else if (!as_json) {
            bench::emit_csv(records, out);
        }
        // measured ratio per prime when both algorithms ran; no pass/fail
        json ratios = json::array();
        if (config.algorithms.size() == 2) {
            for (std::size_t i = 0; i + 1 < records.size(); i += 2) {
                const auto& first = records[i];
                const auto& second = records[i + 1];
                double ratio = second.total_time_s > 0.0
                                   ? first.total_time_s / second.total_time_s
                                   : 0.0;
                std::ostringstream msg;
                msg << "# " << first.prime_digits << "-digit prime: "
                    << first.algorithm << "/" << second.algorithm << " time "
                    << first.total_time_s << "/" << second.total_time_s
                    << " ratio " << ratio;
                err << msg.str() << '\n';
                ratios.push_back({{"prime_digits", first.prime_digits},
                                  {"ratio", ratio}});
            }
        }
        if (as_json) {
            std::ostringstream csv;
            bench::emit_csv(records, csv);
            emit.object({{"command", "bench"},
                         {"csv", csv.str()},
                         {"ratios", ratios}});
        }
    });

    std::string or_p, or_a;
    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force square root");
    cmd_oracle->add_option("-p", or_p, "modulus (any integer >= 2)")
        ->required();
    cmd_oracle->add_option("-a", or_a)->required();
    cmd_oracle->callback([&] {
        Int modulus = parse_int(or_p);
        Int alpha = parse_int(or_a);
        auto outcome = brute_sqrt(alpha, modulus);
        self_check_roots(outcome, alpha, modulus);
        emit_outcome(emit, outcome,
                     json{{"command", "oracle"},
                          {"modulus", modulus.get_str()},
                          {"alpha", alpha.get_str()}});
    });

    std::vector<std::string> argv_copy = args;
    std::vector<const char*> argv;
    argv.push_back("sqrtmod");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace sqrtmod::cli
