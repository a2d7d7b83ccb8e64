#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "sqrtmod/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result dispatch(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = sqrtmod::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("sqrt subcommand") {
    auto r = dispatch({"sqrt", "-p", "97", "-a", "2", "-w", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "14 83\n");

    r = dispatch({"sqrt", "-p", "97", "-a", "6", "--witness-mode", "relative",
                  "--seed", "7"});
    CHECK(r.code == 0);
    CHECK(r.out == "43 54\n");

    r = dispatch({"sqrt", "-p", "13", "-a", "-1", "-w", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "5 8\n");

    r = dispatch({"sqrt", "-p", "97", "-a", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "non-residue\n");

    r = dispatch({"sqrt", "-p", "43", "-a", "6", "--algo", "direct34"});
    CHECK(r.out == "7 36\n");

    r = dispatch({"sqrt", "-p", "97", "-a", "2", "--algo", "tonelli"});
    CHECK(r.out == "14 83\n");

    r = dispatch({"sqrt", "-p", "2", "-a", "5"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    r = dispatch({"sqrt", "-p", "97", "-a", "0"});
    CHECK(r.out == "0\n");
}

TEST_CASE("deterministic output with explicit seed") {
    std::vector<std::string> cmd{"witness", "-p", "7919", "--seed", "11"};
    auto first = dispatch(cmd);
    auto second = dispatch(cmd);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("classify and fvalue") {
    auto r = dispatch({"classify", "-p", "43", "-a", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "non-residue\n");
    CHECK(dispatch({"classify", "-p", "97", "-a", "2"}).out == "residue\n");
    CHECK(dispatch({"classify", "-p", "97", "-a", "0"}).out == "zero\n");
    CHECK(dispatch({"fvalue", "-p", "97", "-a", "2"}).out == "3\n");
    CHECK(dispatch({"fvalue", "-p", "97", "-a", "22"}).out == "1\n");
}

TEST_CASE("witness subcommand") {
    auto r = dispatch({"witness", "-p", "97"});
    CHECK(r.code == 0);
    CHECK(r.out == "5 4 strict\n");  // sequential scan: 2, 3 are residues

    r = dispatch({"witness", "-p", "97", "-a", "6", "--relative"});
    CHECK(r.code == 0);
    CHECK(r.out == "2 3 relative\n");  // first element with f > f(6) = 1

    r = dispatch({"witness", "-p", "43", "-a", "6", "--relative"});
    CHECK(r.out == "not-needed\n");
}

TEST_CASE("enumerate and census") {
    auto r = dispatch({"enumerate", "-p", "41", "-a", "2", "-w", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "k=2\n8 17 31 30\n");

    r = dispatch({"census", "-p", "13"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "f=-1 3\nf=0 3\nf=1 6\nclosed-form 5/8\nexhaustive 5/8\n");
}

TEST_CASE("sqrt-pk and oracle") {
    auto r = dispatch({"sqrt-pk", "-p", "41", "-k", "3", "-a", "5", "-w", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "3226 65695\n");

    r = dispatch({"sqrt-pk", "-p", "41", "-k", "3", "-a", "41"});
    CHECK(r.code == 0);
    CHECK(r.out == "not-a-unit\n");

    r = dispatch({"oracle", "-p", "97", "-a", "2"});
    CHECK(r.out == "14 83\n");
    r = dispatch({"oracle", "-p", "7", "-a", "3"});
    CHECK(r.out == "non-residue\n");
}

TEST_CASE("json mirror") {
    auto r = dispatch({"--json", "sqrt", "-p", "97", "-a", "2", "-w", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"roots\":[\"14\",\"83\"]") != std::string::npos);
    CHECK(r.out.find("14 83\n") == std::string::npos);

    r = dispatch({"--json", "classify", "-p", "43", "-a", "3"});
    CHECK(r.out.find("\"class\":\"non-residue\"") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(dispatch({"sqrt", "--bogus-flag"}).code == 1);
    CHECK(dispatch({"no-such-command"}).code == 1);
    CHECK(dispatch({"sqrt", "-p", "15", "-a", "2"}).code == 1);  // composite p
    CHECK(dispatch({"oracle", "-p", "100000019", "-a", "2"}).code == 2);
    CHECK(dispatch({"census", "-p", "2000003"}).code == 2);
    // unsuitable witness: f(22) = f(6), computational failure
    CHECK(dispatch({"sqrt", "-p", "97", "-a", "6", "-w", "22"}).code == 2);
}

TEST_CASE("bench subcommand emits csv") {
    std::string corpus_path = std::string(std::tmpnam(nullptr)) + ".txt";
    {
        std::ofstream corpus(corpus_path);
        corpus << "# demo corpus\n97\n";
    }
    auto r = dispatch({"bench", "--primes", corpus_path, "--count", "96",
                       "--reps", "1"});
    std::remove(corpus_path.c_str());
    CHECK(r.code == 0);
    CHECK(r.out.find(
              "prime_digits,algorithm,residues_found,total_time_s,verified") ==
          0);
    CHECK(r.out.find("2,proposed,48,") != std::string::npos);
    CHECK(r.out.find("2,tonelli_shanks,48,") != std::string::npos);
    CHECK(r.err.find("ratio") != std::string::npos);
}
