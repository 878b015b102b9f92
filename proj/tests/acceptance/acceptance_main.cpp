#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "acceptance.hpp"

// Usage: khess_acceptance [--fast] [--jobs N] [--quiet] [id ...]
int main(int argc, char** argv) {
    khess::acceptance::SuiteOptions options;
    options.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    bool quiet = false;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--fast") == 0) {
            options.fast = true;
        } else if (std::strcmp(argv[i], "--quiet") == 0) {
            quiet = true;
        } else if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
            options.jobs = std::atoi(argv[++i]);
        } else {
            char* end = nullptr;
            const long id = std::strtol(argv[i], &end, 10);
            if (end == argv[i] || *end != '\0' || id < 1 || id > 11) {
                std::fprintf(stderr, "usage: %s [--fast] [--jobs N] [--quiet] [id ...]\n", argv[0]);
                return 64;
            }
            ids.push_back(static_cast<int>(id));
        }
    }

    const auto results = khess::acceptance::run_suite(options, ids);
    for (const auto& r : results) {
        std::printf("%s\n", khess::acceptance::summary_line(r).c_str());
        if (quiet) continue;
        for (const auto& o : r.outcomes) {
            const char* tag = o.informational ? "info" : (o.passed ? "ok  " : "FAIL");
            std::printf("        %s %-22s %s\n", tag, o.label.c_str(), o.detail.c_str());
        }
        for (const auto& e : r.errors) std::printf("        error %s\n", e.c_str());
    }
    const int failed = khess::acceptance::failure_count(results);
    std::printf("%d of %zu criteria failed\n", failed, results.size());
    return failed == 0 ? 0 : 1;
}
