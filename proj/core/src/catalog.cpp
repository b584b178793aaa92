#include "reeb/catalog.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <thread>

#include "reeb/errors.hpp"

namespace reeb {

namespace {

using E = ManifoldExpr;

SphereSpec sphere(int dim, std::map<std::string, std::int64_t> coefficients = {}) {
    return SphereSpec{dim, std::move(coefficients)};
}

BubblingRecord record(RecordKind kind, std::vector<SphereSpec> spheres = {}) {
    return BubblingRecord{kind, std::move(spheres)};
}

ReebDescriptor descriptor(int n, std::vector<ManifoldExpr> handles, std::vector<BubblingRecord> records = {}) {
    ReebDescriptor d;
    d.n = n;
    d.base.handles = std::move(handles);
    d.records = std::move(records);
    return d;
}

E torus() { return E::product(E::sphere(1), E::sphere(1)); }

} // namespace

std::vector<CatalogInstance> fixed_catalog() {
    using K = RecordKind;
    std::vector<CatalogInstance> c;
    auto add = [&](std::string name, ReebDescriptor d) { c.push_back({std::move(name), std::move(d)}); };

    add("fig1", descriptor(2, {}));
    add("fig1-n3", descriptor(3, {}));
    add("fig2-k1", descriptor(2, {E::sphere(1)}));
    add("fig2", descriptor(2, {E::sphere(1), E::sphere(1)}));
    add("fig2-k3", descriptor(2, {E::sphere(1), E::sphere(1), E::sphere(1)}));
    add("fig3-n2", descriptor(2, {}, {record(K::Point)}));
    add("fig3", descriptor(3, {}, {record(K::Point)}));
    add("fig3-n4", descriptor(4, {}, {record(K::Point)}));
    add("fig5", descriptor(2, {E::sphere(1)}, {record(K::M, {sphere(0)})}));
    add("remark1-coeff1", descriptor(3, {E::sphere(1)}, {record(K::M, {sphere(1, {{"nu1", 1}})})}));
    add("remark1-coeff2", descriptor(3, {E::sphere(1)}, {record(K::M, {sphere(1, {{"nu1", 2}})})}));
    add("remark1-coeff-3", descriptor(3, {E::sphere(1)}, {record(K::M, {sphere(1, {{"nu1", -3}})})}));
    add("thm1-n4", descriptor(4, {E::sphere(2)}, {record(K::M, {sphere(2, {{"nu1", 3}})})}));
    add("wedge-of-tori", descriptor(3, {torus(), torus()}));
    add("torus-n3", descriptor(3, {torus()}, {record(K::M, {sphere(1, {{"nu2", -1}})})}));
    add("torus-n4-s", descriptor(4, {torus()}, {record(K::S, {sphere(1, {{"nu1", 2}}), sphere(2)})}));
    add("genus2-n4",
        descriptor(4, {E::connsum(torus(), torus())}, {record(K::M, {sphere(1, {{"nu1", 1}, {"nu4", 2}})})}));
    add("multi-target-n3",
        descriptor(3, {E::sphere(1), E::sphere(1)}, {record(K::M, {sphere(1, {{"nu1", 2}, {"nu2", -3}})})}));
    add("multi-target-n4",
        descriptor(4, {E::sphere(2), E::sphere(2)}, {record(K::S, {sphere(2, {{"nu1", 1}, {"nu2", 2}})})}));
    add("two-records-n4", descriptor(4, {E::sphere(1), E::sphere(2)},
                                     {record(K::M, {sphere(1, {{"nu1", 1}}), sphere(2, {{"nu2", -2}})}),
                                      record(K::Point)}));
    add("three-records-n3",
        descriptor(3, {E::sphere(1), E::sphere(1)},
                   {record(K::M, {sphere(1, {{"nu1", 2}})}), record(K::S, {sphere(1, {{"nu2", 3}})}),
                    record(K::M, {sphere(1, {{"nu1", 1}, {"nu2", 1}}), sphere(1)})}));
    add("normal-m-n3", descriptor(3, {E::sphere(1)}, {record(K::NormalM, {sphere(1, {{"nu1", 3}})})}));
    add("normal-s-n4", descriptor(4, {E::sphere(2)}, {record(K::NormalS, {sphere(2, {{"nu1", -2}})})}));
    add("zero-coefficient-n4", descriptor(4, {E::sphere(2)}, {record(K::M, {sphere(2, {{"nu1", 0}})})}));
    add("three-torus-n4", descriptor(4, {E::product(torus(), E::sphere(1))},
                                     {record(K::S, {sphere(1, {{"nu2", 3}}), sphere(2)})}));
    add("n5-product", descriptor(5, {E::product(E::sphere(1), E::sphere(3))},
                                 {record(K::M, {sphere(1, {{"nu1", 3}}), sphere(3, {{"nu2", 2}}), sphere(2)})}));
    add("n5-three-spheres",
        descriptor(5, {E::sphere(1), E::sphere(2), E::sphere(3)},
                   {record(K::S, {sphere(1, {{"nu1", 2}}), sphere(2, {{"nu2", -1}}), sphere(3, {{"nu3", 3}})})}));
    add("n5-connsum", descriptor(5, {E::connsum(E::product(E::sphere(2), E::sphere(2)),
                                                E::product(E::sphere(1), E::sphere(3)))},
                                 {record(K::M, {sphere(2, {{"nu1", 2}})}), record(K::S, {sphere(1, {{"nu3", -1}})})}));

    auto find = [&](const std::string& name) {
        return std::find_if(c.begin(), c.end(), [&](const CatalogInstance& i) { return i.name == name; })->descriptor;
    };
    add("connected-sum-remark1", connected_sum_descriptors(find("remark1-coeff2"), find("multi-target-n3")));
    return c;
}

ReebDescriptor random_descriptor(std::mt19937_64& rng, const RandomDescriptorLimits& limits) {
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto chance = [&](double p) { return std::bernoulli_distribution(p)(rng); };

    ReebDescriptor d;
    d.n = uniform(limits.min_n, limits.max_n);
    int handles = uniform(0, limits.max_handles);
    for (int h = 0; h < handles; ++h) {
        int top = d.n - 1;
        if (limits.allow_products && top >= 2 && chance(0.3)) {
            int a = uniform(1, top - 1);
            int b = uniform(1, top - a);
            E core = E::product(E::sphere(a), E::sphere(b));
            if (limits.allow_connsum && chance(0.3)) core = E::connsum(core, E::sphere(a + b));
            d.base.handles.push_back(core);
        } else {
            d.base.handles.push_back(E::sphere(uniform(1, top)));
        }
    }

    auto classes = base_sphere_classes(d);
    int records = uniform(0, limits.max_records);
    for (int r = 0; r < records; ++r) {
        BubblingRecord rec;
        int kind = uniform(0, 4);
        rec.kind = kind == 0 ? RecordKind::M
                 : kind == 1 ? RecordKind::S
                 : kind == 2 ? RecordKind::NormalM
                 : kind == 3 ? RecordKind::NormalS
                             : RecordKind::Point;
        if (d.n < 3 && rec.kind != RecordKind::Point && chance(0.5)) rec.kind = RecordKind::Point;
        int count = 0;
        if (rec.kind == RecordKind::NormalM || rec.kind == RecordKind::NormalS) count = 1;
        else if (rec.kind != RecordKind::Point) count = uniform(0, limits.max_spheres);
        for (int s = 0; s < count; ++s) {
            SphereSpec sp;
            sp.dim = d.n < 3 ? 0 : uniform(chance(0.1) ? 0 : 1, d.n - 2);
            if (sp.dim > 0) {
                std::vector<std::string> matching;
                for (const auto& [id, deg] : classes)
                    if (deg == sp.dim) matching.push_back(id);
                std::shuffle(matching.begin(), matching.end(), rng);
                std::size_t targets = matching.empty() ? 0 : static_cast<std::size_t>(uniform(0, 2));
                if (!limits.allow_multi_target) targets = std::min<std::size_t>(targets, 1);
                targets = std::min(targets, matching.size());
                auto bound = static_cast<int>(limits.max_coefficient);
                for (std::size_t t = 0; t < targets; ++t) sp.coefficients[matching[t]] = uniform(-bound, bound);
            }
            rec.spheres.push_back(std::move(sp));
        }
        d.records.push_back(std::move(rec));
    }
    return d;
}

std::vector<CatalogInstance> random_catalog(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::vector<CatalogInstance> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({"random-" + std::to_string(i + 1), random_descriptor(rng)});
    return out;
}

std::vector<CatalogInstance> builtin_catalog(std::uint64_t seed, std::size_t random_count) {
    auto out = fixed_catalog();
    auto extra = random_catalog(seed, random_count);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
}

std::vector<CoefficientRing> default_catalog_rings() {
    return {CoefficientRing::integers(), CoefficientRing::rationals(), CoefficientRing::prime_field(2),
            CoefficientRing::prime_field(3)};
}

std::vector<VerificationReport> catalog_suite(const CatalogOptions& options) {
    auto all = builtin_catalog(options.seed, options.random_count);
    std::vector<CatalogInstance> chosen;
    if (options.only.empty()) {
        chosen = std::move(all);
    } else {
        for (const auto& name : options.only) {
            auto it = std::find_if(all.begin(), all.end(), [&](const CatalogInstance& i) { return i.name == name; });
            if (it == all.end()) throw PreconditionError("no catalog instance named '" + name + "'");
            chosen.push_back(*it);
        }
    }

    std::vector<VerificationReport> reports(chosen.size());
    unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, chosen.size())));
    std::atomic<std::size_t> next{0};
    VerifyOptions vo;
    vo.tier = options.tier;
    auto work = [&] {
        for (std::size_t i = next++; i < chosen.size(); i = next++) {
            reports[i] = verify_descriptor(chosen[i].descriptor, options.rings, vo);
            reports[i].name = chosen[i].name;
        }
    };
    std::vector<std::future<void>> pending;
    for (unsigned w = 0; w < workers; ++w) pending.push_back(std::async(std::launch::async, work));
    for (auto& f : pending) f.get();
    return reports;
}

} // namespace reeb
