// Verification-suite driver: one pass/fail line per check, nonzero exit on
// any failure. With `--only N` runs the single numbered check (that is how
// ctest registers the thirteen checks individually). The CLI binary for the
// byte-determinism check comes from EXPSUM_CLI_BIN (falls back to an
// in-process comparison).

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "expsum/selfcheck.hpp"

int main(int argc, char** argv) {
    int only = 0;
    if (argc == 3 && std::strcmp(argv[1], "--only") == 0) only = std::atoi(argv[2]);

    const char* cli = std::getenv("EXPSUM_CLI_BIN");
    const auto results = expsum::run_selfcheck(
        [](const std::string& line) {
            std::puts(line.c_str());
            std::fflush(stdout);
        },
        cli ? cli : "", only);
    return expsum::all_passed(results) ? 0 : 1;
}
