#include <doctest.h>

#include <set>

#include "reeb/catalog.hpp"
#include "reeb/errors.hpp"
#include "support/printing.hpp"

using namespace reeb;

TEST_CASE("fixed catalog") {
    auto fixed = fixed_catalog();
    CHECK(fixed.size() >= 25);
    std::set<std::string> names;
    std::set<int> dims;
    for (const auto& inst : fixed) {
        CAPTURE(inst.name);
        CHECK(names.insert(inst.name).second);
        dims.insert(inst.descriptor.n);
        CHECK(validate(inst.descriptor).empty());
    }
    CHECK(dims == std::set<int>{2, 3, 4, 5});
    for (const char* expected : {"fig1", "fig2", "fig3", "fig5", "remark1-coeff1", "remark1-coeff2", "thm1-n4"})
        CHECK(names.count(expected));
}

TEST_CASE("random catalog respects its limits and the seed") {
    auto a = random_catalog(99, 30);
    auto b = random_catalog(99, 30);
    REQUIRE(a.size() == 30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == "random-" + std::to_string(i + 1));
        CHECK(a[i].descriptor == b[i].descriptor);
    }
    RandomDescriptorLimits lim;
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto d = random_descriptor(rng, lim);
        CAPTURE(summary(d));
        CHECK(validate(d).empty());
        CHECK(d.n >= lim.min_n);
        CHECK(d.n <= lim.max_n);
        CHECK(static_cast<int>(d.base.handles.size()) <= lim.max_handles);
        CHECK(static_cast<int>(d.records.size()) <= lim.max_records);
        for (const auto& r : d.records) {
            CHECK(static_cast<int>(r.spheres.size()) <= lim.max_spheres);
            for (const auto& s : r.spheres) {
                CHECK(s.coefficients.size() <= 2);
                for (const auto& [id, c] : s.coefficients) CHECK((c <= lim.max_coefficient && c >= -lim.max_coefficient));
            }
        }
        for (const auto& h : d.base.handles) CHECK(h.kind() != ManifoldExpr::Kind::ConnSum);
    }
    bool differs = false;
    auto c = random_catalog(100, 30);
    for (std::size_t i = 0; i < c.size(); ++i) differs = differs || !(c[i].descriptor == a[i].descriptor);
    CHECK(differs);
}

TEST_CASE("catalog suite matches on every instance") {
    CatalogOptions options;
    options.random_count = 4;
    auto reports = catalog_suite(options);
    auto expected = builtin_catalog(options.seed, 4);
    REQUIRE(reports.size() == expected.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CAPTURE(reports[i].name);
        CHECK(reports[i].name == expected[i].name);
        CHECK(reports[i].all_match());
        CHECK(reports[i].rings.size() == 4);
    }
}

TEST_CASE("catalog suite is independent of scheduling and seed") {
    CatalogOptions serial;
    serial.random_count = 3;
    serial.rings = {CoefficientRing::integers()};
    serial.workers = 1;
    CatalogOptions parallel = serial;
    parallel.workers = 4;
    auto a = catalog_suite(serial), b = catalog_suite(parallel);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].descriptor == b[i].descriptor);
        CHECK(a[i].rings[0].witnesses == b[i].rings[0].witnesses);
        CHECK(a[i].rings[0].pairings == b[i].rings[0].pairings);
    }
    CatalogOptions other = serial;
    other.seed = 1;
    other.random_count = 6;
    for (const auto& r : catalog_suite(other)) CHECK(r.all_match());
}

TEST_CASE("selecting instances by name") {
    CatalogOptions options;
    options.only = {"fig3", "remark1-coeff2"};
    options.rings = {CoefficientRing::integers()};
    auto reports = catalog_suite(options);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].name == "fig3");
    CHECK(reports[1].name == "remark1-coeff2");
    options.only = {"no-such-instance"};
    CHECK_THROWS_AS(catalog_suite(options), PreconditionError);
}
