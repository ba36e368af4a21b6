// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Pass -v for the individual sub-checks.
#include <cstdio>
#include <cstring>

#include "tele/acceptance.hpp"
#include "tele/parallel.hpp"

int main(int argc, char** argv) {
    bool verbose = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "-v") == 0) verbose = true;
    tele::configure_workers();

    int failed = 0;
    for (int id = 1; id <= tele::acceptance::criterion_count(); ++id) {
        const auto r = tele::acceptance::run_one(id);
        std::printf("[%s] criterion %d: %s (%.1fs)\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
        for (const auto& line : r.details)
            if (verbose || !r.passed) std::printf("    %s\n", line.c_str());
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    std::printf("%d of %d criteria passed\n", tele::acceptance::criterion_count() - failed,
                tele::acceptance::criterion_count());
    return failed == 0 ? 0 : 1;
}
