// Runs every property suite over the catalog and seeded generated descriptors.
//   invariant_suites [seed] [count]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include "support/invariants.hpp"

int main(int argc, char** argv) {
    std::uint32_t seed = argc > 1 ? static_cast<std::uint32_t>(std::stoul(argv[1])) : 7321;
    std::size_t count = argc > 2 ? std::stoul(argv[2]) : 100;
    auto start = std::chrono::steady_clock::now();
    auto instances = invariants::suite_instances(seed, count);
    auto outcomes = invariants::run_suites(instances);
    bool ok = true;
    for (const auto& o : outcomes) {
        std::cout << (o.failures.empty() ? "PASS " : "FAIL ") << o.name << " (" << o.cases << " descriptors)\n";
        for (std::size_t i = 0; i < o.failures.size() && i < 20; ++i) std::cout << "  " << o.failures[i] << "\n";
        ok = ok && o.failures.empty();
    }
    auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << instances.size() << " descriptors, seed " << seed << ", " << secs << " s\n";
    return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
