#pragma once

// The reeb-bubble command surface. Exit status 0 on success or match, 1 on
// validation failure or verification mismatch, 2 on usage errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace reeb {

struct CommandInvocation {
    std::string command; // validate, homology, ring, realize, verify, infer-manifold, catalog
    std::optional<std::string> descriptor;
    std::vector<std::string> rings; // Z, Q, Zp, or Z/p
    std::vector<std::int64_t> primes; // consumed by the Zp entries in order
    std::string tier = "auto";
    std::optional<std::string> json;
    std::optional<std::uint64_t> seed;
    std::optional<int> m;
    std::optional<std::string> output;
    std::optional<std::string> plan;
    std::vector<std::string> only;
    unsigned workers = 0;
};

enum ExitCode { exit_ok = 0, exit_failure = 1, exit_usage = 2 };

int run_command(const CommandInvocation& inv, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and runs the command.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace reeb
