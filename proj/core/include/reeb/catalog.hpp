#pragma once

// Built-in verification catalog: figure reconstructions, small named
// examples, planner instances, and seeded random schedules.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reeb/oracle.hpp"

namespace reeb {

inline constexpr std::uint64_t default_catalog_seed = 20240611;

struct CatalogInstance {
    std::string name;
    ReebDescriptor descriptor;
};

struct RandomDescriptorLimits {
    int min_n = 2;
    int max_n = 5;
    int max_handles = 3;
    int max_records = 3;
    int max_spheres = 3;
    std::int64_t max_coefficient = 3;
    bool allow_products = true;
    bool allow_connsum = false;
    bool allow_multi_target = true;
};

// Always valid.
ReebDescriptor random_descriptor(std::mt19937_64& rng, const RandomDescriptorLimits& limits = {});

std::vector<CatalogInstance> fixed_catalog();
std::vector<CatalogInstance> random_catalog(std::uint64_t seed, std::size_t count);
// Fixed instances followed by `random_count` seeded ones.
std::vector<CatalogInstance> builtin_catalog(std::uint64_t seed = default_catalog_seed, std::size_t random_count = 8);

std::vector<CoefficientRing> default_catalog_rings();

struct CatalogOptions {
    std::uint64_t seed = default_catalog_seed;
    std::size_t random_count = 8;
    std::vector<CoefficientRing> rings = default_catalog_rings();
    Tier tier = Tier::Auto;
    std::vector<std::string> only; // instance names; empty means all
    unsigned workers = 0;          // 0: hardware concurrency
};

// Reports in catalog order regardless of scheduling.
std::vector<VerificationReport> catalog_suite(const CatalogOptions& options = {});

} // namespace reeb
