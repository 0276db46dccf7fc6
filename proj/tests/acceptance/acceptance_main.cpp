#include <cstdio>

#include "criteria.hpp"

int main() {
    int failed = 0;
    for (const auto& r : acceptance::run_all()) {
        std::printf("AC%-2d %s  %s: %s (%.2f s)\n", r.id, r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
