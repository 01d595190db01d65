// SPDX-License-Identifier: Apache-2.0
// Runs the acceptance checks and prints one pass/fail line per criterion.

#include <cstdio>
#include <cstdlib>
#include <string>

#include "spherehit/verify/checks.hpp"

int main(int argc, char** argv) {
    std::int64_t mc_paths = 1000000;
    if (argc > 1) mc_paths = std::atoll(argv[1]);
    bool all = true;
    for (const auto& suite : spherehit::verify::suites(mc_paths, 42)) {
        const auto res = suite.run();
        all = all && res.passed;
        std::printf("criterion %d: %s %s (%.2fs) %s\n", suite.criterion, res.passed ? "PASS" : "FAIL",
                    suite.name.c_str(), res.seconds, res.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
