#include "reeb/calculus.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "json_io.hpp"

namespace reeb {

namespace {

using Poly = std::vector<long>;

Poly poincare(const ManifoldExpr& e) {
    switch (e.kind()) {
    case ManifoldExpr::Kind::Sphere: {
        Poly p(static_cast<std::size_t>(e.sphere_dim()) + 1, 0);
        p[0] += 1;
        p.back() += 1;
        return p;
    }
    case ManifoldExpr::Kind::Product: {
        Poly a = poincare(e.left()), b = poincare(e.right());
        Poly p(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) p[i + j] += a[i] * b[j];
        return p;
    }
    case ManifoldExpr::Kind::ConnSum: {
        Poly a = poincare(e.left()), b = poincare(e.right());
        Poly p(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < a.size(); ++i) p[i] += a[i];
        for (std::size_t i = 0; i < b.size(); ++i) p[i] += b[i];
        p[0] -= 1;
        p.back() -= 1;
        return p;
    }
    }
    return {};
}

bool all_cores_spheres(const ReebDescriptor& d) {
    for (const auto& h : d.base.handles)
        if (h.kind() != ManifoldExpr::Kind::Sphere) return false;
    return true;
}

} // namespace

GradedModule homology_of_descriptor(const ReebDescriptor& d, const CoefficientRing& ring) {
    (void)ring; // every module in this family is free, so the ranks are ring independent
    require_valid(d);
    std::vector<std::size_t> ranks(static_cast<std::size_t>(d.n) + 1, 0);
    ranks[0] = 1;
    for (const auto& h : d.base.handles) {
        Poly p = poincare(h);
        for (std::size_t k = 1; k < p.size(); ++k) ranks[k] += static_cast<std::size_t>(p[k]);
    }
    for (const auto& rec : d.records) {
        for (const auto& sp : rec.spheres)
            if (sp.dim >= 1) ranks[static_cast<std::size_t>(d.n - sp.dim)] += 1;
        ranks[static_cast<std::size_t>(d.n)] += 1;
    }
    return GradedModule::free(ranks);
}

RingPresentationReport cohomology_ring_of_descriptor(const ReebDescriptor& d, const CoefficientRing& ring) {
    require_valid(d);
    PresentedGradedRing base = base_ring(d, ring);
    PresentedGradedRing out(ring, d.n);
    RingPresentationReport report{homology_of_descriptor(d, ring), PresentedGradedRing(ring, d.n), {}, {}};

    for (const auto& e : base.basis()) {
        BasisElement incl = e;
        incl.provenance = {Provenance::Kind::Inclusion, -1, -1};
        report.inclusion_classes.push_back(out.add_basis_element(incl));
    }
    for (const auto& [key, value] : base.product_table()) {
        if (key.first > key.second) continue;
        SparseVector v;
        for (const auto& [k, c] : value) v.emplace_back(report.inclusion_classes[k], c);
        out.set_product(report.inclusion_classes[key.first], report.inclusion_classes[key.second], std::move(v));
    }
    if (all_cores_spheres(d))
        for (std::size_t i = 0; i < base.size(); ++i)
            for (std::size_t j = 0; j < base.size(); ++j)
                if (!base.product(i, j).empty())
                    throw PreconditionError("products of base sphere classes must vanish");

    for (std::size_t r = 0; r < d.records.size(); ++r) {
        const auto& rec = d.records[r];
        RecordClasses classes;
        for (std::size_t s = 0; s < rec.spheres.size(); ++s) {
            if (rec.spheres[s].dim < 1) {
                classes.beta.push_back(std::nullopt);
                continue;
            }
            classes.beta.push_back(out.add_basis_element(
                {"b" + std::to_string(r + 1) + "." + std::to_string(s + 1), d.n - rec.spheres[s].dim,
                 {Provenance::Kind::Bubbled, static_cast<int>(r), static_cast<int>(s)}, false}));
        }
        classes.tau = out.add_basis_element(
            {"tau" + std::to_string(r + 1), d.n, {Provenance::Kind::Top, static_cast<int>(r), -1}, false});
        for (std::size_t s = 0; s < rec.spheres.size(); ++s) {
            if (!classes.beta[s]) continue;
            for (const auto& [id, value] : rec.spheres[s].coefficients) {
                if (value == 0) continue;
                out.set_product(out.index_of(id), *classes.beta[s], {{classes.tau, Rational(value)}});
            }
        }
        report.records.push_back(std::move(classes));
    }
    report.ring = std::move(out);
    return report;
}

std::vector<std::string> plan_violations(const Thm1Plan& p) {
    std::vector<std::string> out;
    const int n = p.n;
    if (n < 2) {
        out.push_back("n = " + std::to_string(n) + " < 2");
        return out;
    }
    bool shapes = true;
    if (static_cast<int>(p.s.size()) != n - 1) {
        out.push_back("s needs n-1 = " + std::to_string(n - 1) + " entries, has " + std::to_string(p.s.size()));
        shapes = false;
    }
    if (static_cast<int>(p.G.size()) != n) {
        out.push_back("G needs n = " + std::to_string(n) + " entries, has " + std::to_string(p.G.size()));
        shapes = false;
    }
    for (std::size_t k = 0; k < p.s.size(); ++k)
        if (p.s[k] < 0) out.push_back("s_" + std::to_string(k + 1) + " is negative");
    for (std::size_t k = 0; k < p.G.size(); ++k)
        if (p.G[k] < 0) out.push_back("rank G_" + std::to_string(k + 1) + " is negative");
    if (!shapes) return out;
    if (p.G[0] != 0) out.push_back("rank G_1 must be 0");
    const int gn = p.G[static_cast<std::size_t>(n - 1)];
    if (gn < 1) out.push_back("rank G_n must be positive");
    if (static_cast<int>(p.A.size()) != gn) {
        out.push_back("A needs rank G_n = " + std::to_string(gn) + " rows, has " + std::to_string(p.A.size()));
        return out;
    }
    for (std::size_t j = 0; j < p.A.size(); ++j) {
        if (static_cast<int>(p.A[j].size()) != n - 1) {
            out.push_back("A row " + std::to_string(j + 1) + " needs n-1 entries");
            return out;
        }
        for (int k = 1; k <= n - 1; ++k)
            if (p.A[j][static_cast<std::size_t>(k - 1)] < 0)
                out.push_back("A_{" + std::to_string(j + 1) + "," + std::to_string(k) + "} is negative");
        if (p.A[j][0] != 0)
            out.push_back("A_{" + std::to_string(j + 1) + ",1} must be 0: spheres of dimension n-1 exceed n-2");
    }
    for (int k = 1; k <= n - 1; ++k) {
        int sum = 0;
        for (const auto& row : p.A) sum += row[static_cast<std::size_t>(k - 1)];
        if (sum != p.G[static_cast<std::size_t>(k - 1)])
            out.push_back("column " + std::to_string(k) + " of A sums to " + std::to_string(sum) +
                          " but rank G_" + std::to_string(k) + " = " + std::to_string(p.G[static_cast<std::size_t>(k - 1)]));
    }
    if (p.normal) {
        int lower = 0;
        for (int k = 1; k <= n - 1; ++k) lower += p.G[static_cast<std::size_t>(k - 1)];
        if (lower > gn)
            out.push_back("normal mode needs the sum of rank G_k (k < n) = " + std::to_string(lower) +
                          " to be at most rank G_n = " + std::to_string(gn));
        for (std::size_t j = 0; j < p.A.size(); ++j) {
            int row = 0;
            for (int v : p.A[j]) row += v;
            if (row > 1) out.push_back("normal mode allows one sphere per record; record " + std::to_string(j + 1) +
                                       " has " + std::to_string(row));
        }
    }
    std::set<std::tuple<int, int, int, int>> seen;
    for (const auto& c : p.coefficients) {
        std::string at = "coefficient (" + std::to_string(c.record) + "," + std::to_string(c.k1) + "," +
                         std::to_string(c.k2) + "," + std::to_string(c.k3) + ")";
        if (!seen.insert({c.record, c.k1, c.k2, c.k3}).second) out.push_back(at + ": duplicate");
        if (c.record < 1 || c.record > gn) {
            out.push_back(at + ": record out of range");
            continue;
        }
        if (c.k1 < 2 || c.k1 > n - 1) {
            out.push_back(at + ": k1 outside [2, n-1]");
            continue;
        }
        if (c.k2 < 1 || c.k2 > p.A[static_cast<std::size_t>(c.record - 1)][static_cast<std::size_t>(c.k1 - 1)])
            out.push_back(at + ": k2 exceeds A_{j,k1}");
        if (c.k3 < 1 || c.k3 > p.s[static_cast<std::size_t>(n - c.k1 - 1)])
            out.push_back(at + ": k3 exceeds s_{n-k1}");
    }
    return out;
}

std::size_t plan_sphere_index(const Thm1Plan& p, int record, int k1, int k2) {
    const auto& row = p.A.at(static_cast<std::size_t>(record - 1));
    std::size_t idx = 0;
    for (int k = 1; k < k1; ++k) idx += static_cast<std::size_t>(row[static_cast<std::size_t>(k - 1)]);
    return idx + static_cast<std::size_t>(k2 - 1);
}

std::string plan_class_id(const Thm1Plan& p, int l, int k3) {
    int offset = 0;
    for (int k = 1; k < l; ++k) offset += p.s[static_cast<std::size_t>(k - 1)];
    return "nu" + std::to_string(offset + k3);
}

namespace {

[[noreturn]] void throw_violations(const std::string& head, const std::vector<std::string>& v) {
    std::string msg = head;
    for (const auto& s : v) msg += "\n  " + s;
    throw PreconditionError(msg);
}

} // namespace

ReebDescriptor realize_plan(const Thm1Plan& p) {
    auto bad = plan_violations(p);
    if (!bad.empty()) throw_violations("illegal plan:", bad);
    ReebDescriptor d;
    d.n = p.n;
    for (int k = 1; k <= p.n - 1; ++k)
        for (int c = 0; c < p.s[static_cast<std::size_t>(k - 1)]; ++c) d.base.handles.push_back(ManifoldExpr::sphere(k));
    for (const auto& row : p.A) {
        BubblingRecord rec;
        for (int k1 = 1; k1 <= p.n - 1; ++k1)
            for (int k2 = 0; k2 < row[static_cast<std::size_t>(k1 - 1)]; ++k2) rec.spheres.push_back({p.n - k1, {}});
        if (p.normal)
            rec.kind = rec.spheres.empty() ? RecordKind::Point : RecordKind::NormalM;
        d.records.push_back(std::move(rec));
    }
    for (const auto& c : p.coefficients) {
        if (c.value == 0) continue;
        auto& sp = d.records[static_cast<std::size_t>(c.record - 1)].spheres[plan_sphere_index(p, c.record, c.k1, c.k2)];
        sp.coefficients[plan_class_id(p, p.n - c.k1, c.k3)] = c.value;
    }
    require_valid(d);
    return d;
}

std::vector<std::string> plan_violations(const GeneralPlan& p) {
    std::vector<std::string> out;
    const int n = p.n;
    if (n < 2) {
        out.push_back("n = " + std::to_string(n) + " < 2");
        return out;
    }
    ReebDescriptor probe;
    probe.n = n;
    probe.base = p.base;
    auto base_bad = validate(probe);
    out.insert(out.end(), base_bad.begin(), base_bad.end());
    if (static_cast<int>(p.G.size()) != n) {
        out.push_back("G needs n = " + std::to_string(n) + " entries, has " + std::to_string(p.G.size()));
        return out;
    }
    if (p.G[0] != 0) out.push_back("rank G_1 must be 0");
    if (p.G.back() != 1) out.push_back("rank G_n must be 1, got " + std::to_string(p.G.back()));
    for (std::size_t k = 0; k < p.G.size(); ++k)
        if (p.G[k] < 0) out.push_back("rank G_" + std::to_string(k + 1) + " is negative");
    if (!base_bad.empty()) return out;
    auto classes = base_classes(probe);
    std::set<std::tuple<int, int, std::string>> seen;
    for (const auto& c : p.coefficients) {
        std::string at = "coefficient (" + std::to_string(c.k1) + "," + std::to_string(c.j1) + "," + c.target + ")";
        if (!seen.insert({c.k1, c.j1, c.target}).second) out.push_back(at + ": duplicate");
        if (c.k1 < 2 || c.k1 > n - 1) {
            out.push_back(at + ": k1 outside [2, n-1]");
            continue;
        }
        if (c.j1 < 1 || c.j1 > p.G[static_cast<std::size_t>(c.k1 - 1)])
            out.push_back(at + ": j1 exceeds rank G_k1");
        auto it = std::find_if(classes.begin(), classes.end(), [&](const BaseClass& b) { return b.id == c.target; });
        if (it == classes.end())
            out.push_back(at + ": unknown target");
        else if (!it->sphere_representable)
            out.push_back(at + ": non-representable target '" + c.target + "'");
        else if (it->degree != n - c.k1)
            out.push_back(at + ": target has degree " + std::to_string(it->degree) + ", sphere has dim " +
                          std::to_string(n - c.k1));
    }
    return out;
}

ReebDescriptor realize_plan_general(const GeneralPlan& p) {
    auto bad = plan_violations(p);
    if (!bad.empty()) throw_violations("illegal plan:", bad);
    ReebDescriptor d;
    d.n = p.n;
    d.base = p.base;
    BubblingRecord rec;
    std::vector<std::size_t> first(static_cast<std::size_t>(p.n) + 1, 0);
    for (int k1 = 1; k1 <= p.n - 1; ++k1) {
        first[static_cast<std::size_t>(k1)] = rec.spheres.size();
        for (int j = 0; j < p.G[static_cast<std::size_t>(k1 - 1)]; ++j) rec.spheres.push_back({p.n - k1, {}});
    }
    for (const auto& c : p.coefficients)
        if (c.value != 0)
            rec.spheres[first[static_cast<std::size_t>(c.k1)] + static_cast<std::size_t>(c.j1 - 1)]
                .coefficients[c.target] = c.value;
    d.records.push_back(std::move(rec));
    require_valid(d);
    return d;
}

ReebDescriptor realize(const Plan& plan) {
    return std::visit(
        [](const auto& p) {
            if constexpr (std::is_same_v<std::decay_t<decltype(p)>, Thm1Plan>)
                return realize_plan(p);
            else
                return realize_plan_general(p);
        },
        plan);
}

namespace {

std::vector<int> int_list(const json_io::json& j, const std::string& path) {
    const auto& arr = json_io::as_array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < arr.size(); ++i)
        out.push_back(static_cast<int>(json_io::as_int(arr[i], path + "[" + std::to_string(i) + "]")));
    return out;
}

} // namespace

Plan parse_plan(const std::string& text) {
    using namespace json_io;
    json j = parse_document(text);
    require_object(j, "$");
    if (j.contains("base")) {
        reject_unknown(j, "$", {"n", "base", "G", "coefficients"});
        GeneralPlan p;
        p.n = static_cast<int>(as_int(field(j, "$", "n"), "$.n"));
        const json& base = j["base"];
        require_object(base, "$.base");
        reject_unknown(base, "$.base", {"handles"});
        if (base.contains("handles")) {
            const auto& hs = as_array(base["handles"], "$.base.handles");
            for (std::size_t i = 0; i < hs.size(); ++i)
                p.base.handles.push_back(manifold_from_json(hs[i], "$.base.handles[" + std::to_string(i) + "]"));
        }
        p.G = int_list(field(j, "$", "G"), "$.G");
        if (j.contains("coefficients")) {
            const auto& cs = as_array(j["coefficients"], "$.coefficients");
            for (std::size_t i = 0; i < cs.size(); ++i) {
                std::string at = "$.coefficients[" + std::to_string(i) + "]";
                require_object(cs[i], at);
                reject_unknown(cs[i], at, {"k1", "j1", "target", "value"});
                GeneralPlan::Coefficient c;
                c.k1 = static_cast<int>(as_int(field(cs[i], at, "k1"), at + ".k1"));
                c.j1 = static_cast<int>(as_int(field(cs[i], at, "j1"), at + ".j1"));
                c.target = as_string(field(cs[i], at, "target"), at + ".target");
                c.value = as_int(field(cs[i], at, "value"), at + ".value");
                p.coefficients.push_back(c);
            }
        }
        return p;
    }
    reject_unknown(j, "$", {"n", "s", "G", "A", "coefficients", "mode"});
    Thm1Plan p;
    p.n = static_cast<int>(as_int(field(j, "$", "n"), "$.n"));
    p.s = int_list(field(j, "$", "s"), "$.s");
    p.G = int_list(field(j, "$", "G"), "$.G");
    const auto& rows = as_array(field(j, "$", "A"), "$.A");
    for (std::size_t r = 0; r < rows.size(); ++r) p.A.push_back(int_list(rows[r], "$.A[" + std::to_string(r) + "]"));
    if (j.contains("mode")) {
        std::string mode = as_string(j["mode"], "$.mode");
        if (mode != "M" && mode != "normal") throw SchemaError("$.mode: expected \"M\" or \"normal\"");
        p.normal = mode == "normal";
    }
    if (j.contains("coefficients")) {
        const auto& cs = as_array(j["coefficients"], "$.coefficients");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            std::string at = "$.coefficients[" + std::to_string(i) + "]";
            require_object(cs[i], at);
            reject_unknown(cs[i], at, {"record", "k1", "k2", "k3", "value"});
            Thm1Plan::Coefficient c;
            c.record = static_cast<int>(as_int(field(cs[i], at, "record"), at + ".record"));
            c.k1 = static_cast<int>(as_int(field(cs[i], at, "k1"), at + ".k1"));
            c.k2 = static_cast<int>(as_int(field(cs[i], at, "k2"), at + ".k2"));
            c.k3 = static_cast<int>(as_int(field(cs[i], at, "k3"), at + ".k3"));
            c.value = as_int(field(cs[i], at, "value"), at + ".value");
            p.coefficients.push_back(c);
        }
    }
    return p;
}

std::string serialize_plan(const Plan& plan) {
    using json_io::json;
    json j;
    if (const auto* p = std::get_if<Thm1Plan>(&plan)) {
        json coeffs = json::array();
        for (const auto& c : p->coefficients)
            coeffs.push_back(json{{"record", c.record}, {"k1", c.k1}, {"k2", c.k2}, {"k3", c.k3}, {"value", c.value}});
        j = json{{"n", p->n}, {"s", p->s}, {"G", p->G}, {"A", p->A}, {"coefficients", coeffs},
                 {"mode", p->normal ? "normal" : "M"}};
    } else {
        const auto& g = std::get<GeneralPlan>(plan);
        json handles = json::array();
        for (const auto& h : g.base.handles) handles.push_back(json_io::manifold_to_json(h));
        json coeffs = json::array();
        for (const auto& c : g.coefficients)
            coeffs.push_back(json{{"k1", c.k1}, {"j1", c.j1}, {"target", c.target}, {"value", c.value}});
        j = json{{"n", g.n}, {"base", json{{"handles", handles}}}, {"G", g.G}, {"coefficients", coeffs}};
    }
    return j.dump(2) + "\n";
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read plan file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_plan(buf.str());
}

InferenceReport manifold_inference(const ReebDescriptor& d, int m, const CoefficientRing& ring) {
    if (m <= d.n)
        throw PreconditionError("source dimension m = " + std::to_string(m) + " must exceed n = " + std::to_string(d.n));
    auto report = cohomology_ring_of_descriptor(d, ring);
    InferenceReport out{d.n, m, true, "", m - d.n - 1, truncate(report.ring, m - d.n - 1), 0, std::nullopt};
    for (const auto& rec : d.records)
        if (rec.kind != RecordKind::S && rec.kind != RecordKind::NormalS && rec.kind != RecordKind::Point)
            out.qualifies = false;
    out.assumption =
        "S-bubbling and point records are assumed to introduce only fold points of index 0 or 1; "
        "this hypothesis is taken from the construction, not verified";
    out.reeb_total_rank = report.homology.total_rank();
    if (m == 2 * d.n && report.homology.piece(d.n - 1).is_free()) out.manifold_total_rank = 2 * out.reeb_total_rank;
    return out;
}

} // namespace reeb
