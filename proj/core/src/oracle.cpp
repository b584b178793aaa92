#include "reeb/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "json_io.hpp"

namespace reeb {

namespace {

// ---------------------------------------------------------------- Tier 1

struct CellCycle {
    int degree = 0;
    ChainColumn cycle;
};

struct CoreChain {
    ChainComplexZ complex;
    std::size_t base = 0;
    std::vector<CellCycle> leaves;
    ChainColumn top; // fundamental cycle in degree dim
    int dim = 0;
};

CoreChain sphere_chain(int k) {
    CoreChain c;
    c.dim = k;
    c.complex.add_cell(0);
    c.complex.add_cell(0);
    for (int i = 1; i <= k; ++i) {
        c.complex.add_cell(i, {{0, 1}, {1, -1}});
        c.complex.add_cell(i, {{0, 1}, {1, -1}});
    }
    c.top = {{0, 1}, {1, -1}};
    if (k >= 1) c.leaves.push_back({k, c.top});
    return c;
}

ChainColumn shifted(const ChainColumn& z, std::size_t by) {
    ChainColumn out;
    for (const auto& [i, v] : z) out.emplace_back(i + by, v);
    return out;
}

ChainColumn scaled(const ChainColumn& z, std::int64_t s) {
    ChainColumn out;
    for (const auto& [i, v] : z) out.emplace_back(i, s * v);
    return out;
}

ChainColumn concat(ChainColumn a, const ChainColumn& b) {
    a.insert(a.end(), b.begin(), b.end());
    return normalized_column(std::move(a));
}

CoreChain product_chain(const CoreChain& a, const CoreChain& b) {
    TensorProduct tp = tensor_product(a.complex, b.complex);
    CoreChain out;
    out.complex = std::move(tp.complex);
    out.dim = a.dim + b.dim;
    out.base = tp.index.at({0, a.base, 0, b.base});
    for (const auto& leaf : a.leaves) {
        ChainColumn z;
        for (const auto& [i, v] : leaf.cycle) z.emplace_back(tp.index.at({leaf.degree, i, 0, b.base}), v);
        out.leaves.push_back({leaf.degree, normalized_column(z)});
    }
    for (const auto& leaf : b.leaves) {
        ChainColumn z;
        for (const auto& [j, v] : leaf.cycle) z.emplace_back(tp.index.at({0, a.base, leaf.degree, j}), v);
        out.leaves.push_back({leaf.degree, normalized_column(z)});
    }
    ChainColumn top;
    for (const auto& [i, v] : a.top)
        for (const auto& [j, w] : b.top) top.emplace_back(tp.index.at({a.dim, i, b.dim, j}), v * w);
    out.top = normalized_column(top);
    return out;
}

// Complex with top cell `e` (degree d) deleted; returns the reindexed top remainder.
ChainComplexZ without_top_cell(const ChainComplexZ& c, int d, std::size_t e) {
    ChainComplexZ out;
    for (int k = 0; k <= c.max_degree(); ++k)
        for (std::size_t i = 0; i < c.dim(k); ++i)
            if (!(k == d && i == e)) out.add_cell(k, c.boundary(k, i));
    return out;
}

ChainColumn drop_cell(const ChainColumn& z, std::size_t e) {
    ChainColumn out;
    for (const auto& [i, v] : z)
        if (i != e) out.emplace_back(i > e ? i - 1 : i, v);
    return out;
}

// Attaching map of the removed cell, as a chain map from the (d-1)-sphere.
ChainMap collar_map(const ChainComplexZ& sphere, int d, std::size_t base, const ChainColumn& boundary_e) {
    ChainMap g;
    g.images.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) g.images[static_cast<std::size_t>(k)].resize(sphere.dim(k));
    if (d == 1) {
        std::size_t va = SIZE_MAX, vb = SIZE_MAX;
        for (const auto& [i, v] : boundary_e) (v == 1 ? va : vb) = i;
        if (boundary_e.size() != 2 || va == SIZE_MAX || vb == SIZE_MAX)
            throw Error("unexpected boundary of a removed 1-cell");
        g.images[0][0] = {{va, 1}};
        g.images[0][1] = {{vb, 1}};
        return g;
    }
    g.images[0][0] = {{base, 1}};
    g.images[0][1] = {{base, 1}};
    g.images[static_cast<std::size_t>(d - 1)][0] = boundary_e;
    return g;
}

CoreChain connsum_chain(const CoreChain& a, const CoreChain& b) {
    if (a.dim != b.dim) throw PreconditionError("connected sum of cores of different dimension");
    const int d = a.dim;
    auto pick = [](const ChainColumn& top) {
        for (const auto& [i, v] : top)
            if (v == 1 || v == -1) return std::pair{i, v};
        throw Error("fundamental cycle has no unit coefficient");
    };
    const auto [ea, eps_a] = pick(a.top);
    const auto [eb, eps_b] = pick(b.top);
    ChainComplexZ x0 = without_top_cell(a.complex, d, ea);
    ChainComplexZ y0 = without_top_cell(b.complex, d, eb);
    ChainColumn rx = drop_cell(a.top, ea), ry = drop_cell(b.top, eb);

    const CoreChain s = sphere_chain(d - 1);
    ChainMap gx = collar_map(s.complex, d, a.base, a.complex.boundary(d, ea));
    ChainMap gy = collar_map(s.complex, d, b.base, b.complex.boundary(d, eb));
    ChainComplexZ sum = direct_sum(x0, y0);
    ChainMap f;
    f.images.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        for (std::size_t i = 0; i < s.complex.dim(k); ++i)
            f.images[static_cast<std::size_t>(k)].push_back(
                concat(gx.image(k, i), scaled(shifted(gy.image(k, i), x0.dim(k)), -1)));

    CoreChain out;
    out.complex = mapping_cone(f, s.complex, sum);
    out.dim = d;
    out.base = a.base;
    for (const auto& leaf : a.leaves)
        if (leaf.degree < d) out.leaves.push_back(leaf);
    for (const auto& leaf : b.leaves)
        if (leaf.degree < d) out.leaves.push_back({leaf.degree, shifted(leaf.cycle, x0.dim(leaf.degree))});
    const std::size_t cone_plus = cone_source_index(sum, d - 1, 0);
    out.top = concat(concat(rx, scaled(shifted(ry, x0.dim(d)), -eps_a * eps_b)),
                     {{cone_plus, eps_a}, {cone_plus + 1, -eps_a}});
    return out;
}

CoreChain core_chain(const ManifoldExpr& e) {
    switch (e.kind()) {
    case ManifoldExpr::Kind::Sphere: return sphere_chain(e.sphere_dim());
    case ManifoldExpr::Kind::Product: return product_chain(core_chain(e.left()), core_chain(e.right()));
    case ManifoldExpr::Kind::ConnSum: return connsum_chain(core_chain(e.left()), core_chain(e.right()));
    }
    throw Error("unknown manifold expression");
}

// Identify degree-0 cell `drop` with `keep`.
ChainComplexZ merge_points(const ChainComplexZ& c, std::size_t keep, std::size_t drop) {
    auto remap = [&](std::size_t i) {
        if (i == drop) i = keep;
        return i > drop ? i - 1 : i;
    };
    ChainComplexZ out;
    for (std::size_t i = 0; i + 1 < c.dim(0); ++i) out.add_cell(0);
    for (int k = 1; k <= c.max_degree(); ++k)
        for (std::size_t i = 0; i < c.dim(k); ++i) {
            ChainColumn col = c.boundary(k, i);
            if (k == 1)
                for (auto& e : col) e.first = remap(e.first);
            out.add_cell(k, std::move(col));
        }
    return out;
}

bool is_cycle(const ChainComplexZ& c, int k, const ChainColumn& z) {
    if (k == 0) return true;
    std::map<std::size_t, std::int64_t> acc;
    for (const auto& [i, v] : z)
        for (const auto& [r, w] : c.boundary(k, i)) acc[r] += v * w;
    return std::all_of(acc.begin(), acc.end(), [](const auto& e) { return e.second == 0; });
}

std::map<std::string, std::size_t> leaf_index(const ReebDescriptor& d) {
    std::map<std::string, std::size_t> out;
    for (const auto& c : base_classes(d))
        if (c.sphere_representable) out.emplace(c.id, out.size());
    return out;
}

} // namespace

ChainModel chain_model(const ReebDescriptor& d) {
    require_valid(d);
    ChainModel w;
    w.complex.add_cell(0);
    w.base_point = 0;
    bool first = true;
    for (const auto& h : d.base.handles) {
        CoreChain core = core_chain(h);
        if (!is_cycle(core.complex, core.dim, core.top)) throw Error("core fundamental chain is not a cycle");
        if (first) {
            w.complex = core.complex;
            w.base_point = core.base;
            for (const auto& leaf : core.leaves) w.leaf_cycles.push_back(leaf.cycle);
            first = false;
            continue;
        }
        ChainComplexZ sum = direct_sum(w.complex, core.complex);
        for (const auto& leaf : core.leaves) w.leaf_cycles.push_back(shifted(leaf.cycle, w.complex.dim(leaf.degree)));
        const std::size_t drop = w.complex.dim(0) + core.base;
        w.complex = merge_points(sum, w.base_point, drop);
    }

    const auto leaves = leaf_index(d);
    std::vector<int> leaf_degree;
    for (const auto& c : base_classes(d))
        if (c.sphere_representable) leaf_degree.push_back(c.degree);

    for (const auto& rec : d.records) {
        std::vector<const SphereSpec*> spheres;
        for (const auto& sp : rec.spheres)
            if (sp.dim >= 1) spheres.push_back(&sp);

        // Bouquet: one point and one cell per generating sphere.
        ChainComplexZ bouquet;
        bouquet.add_cell(0);
        std::vector<std::size_t> cell_of;
        for (const auto* sp : spheres) cell_of.push_back(bouquet.add_cell(sp->dim));

        CoreChain e;
        if (spheres.empty()) {
            e = sphere_chain(d.n);
            e.leaves.clear();
        } else {
            for (std::size_t j = 0; j < spheres.size(); ++j) {
                const int l = spheres[j]->dim;
                CoreChain sphere = sphere_chain(l);
                CoreChain fiber = sphere_chain(d.n - l);
                sphere.leaves = {{l, sphere.top}};
                fiber.leaves.clear();
                CoreChain piece = product_chain(sphere, fiber);
                e = j == 0 ? piece : connsum_chain(e, piece);
            }
        }

        ChainComplexZ target = direct_sum(w.complex, e.complex);
        ChainMap f;
        f.images.resize(static_cast<std::size_t>(bouquet.max_degree()) + 1);
        for (int k = 0; k <= bouquet.max_degree(); ++k) f.images[static_cast<std::size_t>(k)].resize(bouquet.dim(k));
        f.images[0][0] = normalized_column({{w.base_point, 1}, {w.complex.dim(0) + e.base, -1}});
        for (std::size_t j = 0; j < spheres.size(); ++j) {
            const int l = spheres[j]->dim;
            ChainColumn img;
            for (const auto& [id, n] : spheres[j]->coefficients) {
                const std::size_t leaf = leaves.at(id);
                for (const auto& [i, v] : w.leaf_cycles[leaf]) img.emplace_back(i, n * v);
            }
            img = concat(img, scaled(shifted(e.leaves[j].cycle, w.complex.dim(l)), -1));
            f.images[static_cast<std::size_t>(l)][cell_of[j]] = img;
        }
        w.complex = mapping_cone(f, bouquet, target);
    }
    for (std::size_t i = 0; i < w.leaf_cycles.size(); ++i)
        if (!is_cycle(w.complex, leaf_degree[i], w.leaf_cycles[i])) throw Error("leaf chain is not a cycle");
    return w;
}

GradedModule chain_model_homology(const ReebDescriptor& d, const CoefficientRing& ring) {
    GradedModule h = homology(chain_model(d).complex, ring);
    if (h.max_degree() < d.n) h.resize(d.n);
    return h;
}

// ---------------------------------------------------------------- Tier 2

namespace {

struct CoreComplex {
    SimplicialComplex complex;
    std::vector<std::map<int, int>> leaves;
    std::vector<int> leaf_dims;
    int dim = 0;
};

std::map<int, int> compose(const std::map<int, int>& first, const std::map<int, int>& second) {
    std::map<int, int> out;
    for (const auto& [k, v] : first) out[k] = second.at(v);
    return out;
}

CoreComplex core_complex(const ManifoldExpr& e) {
    CoreComplex out;
    out.dim = e.dimension();
    switch (e.kind()) {
    case ManifoldExpr::Kind::Sphere: {
        out.complex = sphere_complex(e.sphere_dim());
        std::map<int, int> id;
        for (int v : out.complex.vertices()) id[v] = v;
        out.leaves.push_back(id);
        out.leaf_dims.push_back(e.sphere_dim());
        return out;
    }
    case ManifoldExpr::Kind::Product: {
        CoreComplex a = core_complex(e.left()), b = core_complex(e.right());
        out.complex = product_complex(a.complex, b.complex);
        const int a0 = a.complex.vertices().front(), b0 = b.complex.vertices().front();
        for (std::size_t i = 0; i < a.leaves.size(); ++i) {
            std::map<int, int> m;
            for (const auto& [v, x] : a.leaves[i]) m[v] = product_vertex(a.complex, b.complex, x, b0);
            out.leaves.push_back(m);
            out.leaf_dims.push_back(a.leaf_dims[i]);
        }
        for (std::size_t i = 0; i < b.leaves.size(); ++i) {
            std::map<int, int> m;
            for (const auto& [v, y] : b.leaves[i]) m[v] = product_vertex(a.complex, b.complex, a0, y);
            out.leaves.push_back(m);
            out.leaf_dims.push_back(b.leaf_dims[i]);
        }
        return out;
    }
    case ManifoldExpr::Kind::ConnSum: {
        CoreComplex a = core_complex(e.left()), b = core_complex(e.right());
        ConnectedSum cs = connected_sum_complex(a.complex, b.complex, out.dim);
        out.complex = cs.complex;
        for (std::size_t i = 0; i < a.leaves.size(); ++i)
            if (a.leaf_dims[i] < out.dim) {
                out.leaves.push_back(compose(a.leaves[i], cs.left));
                out.leaf_dims.push_back(a.leaf_dims[i]);
            }
        for (std::size_t i = 0; i < b.leaves.size(); ++i)
            if (b.leaf_dims[i] < out.dim) {
                out.leaves.push_back(compose(b.leaves[i], cs.right));
                out.leaf_dims.push_back(b.leaf_dims[i]);
            }
        return out;
    }
    }
    throw Error("unknown manifold expression");
}

// First n-simplex containing `v0` and no other vertex of `avoid`.
Simplex collar_facet(const SimplicialComplex& k, int n, int v0, const std::set<int>& avoid) {
    for (const auto& s : k.simplices(n)) {
        if (std::find(s.begin(), s.end(), v0) == s.end()) continue;
        bool clean = true;
        for (int v : s)
            if (v != v0 && avoid.count(v)) clean = false;
        if (clean) return s;
    }
    throw Error("no facet avoiding the generating spheres");
}

struct Section {
    SimplicialComplex domain;          // subdivided l-sphere
    std::map<int, int> to_w;           // attaching map into W
};

} // namespace

std::optional<std::string> tier2_unsupported(const ReebDescriptor& d, const SimplicialModelOptions& options) {
    if (!options.multi_target)
        for (const auto& rec : d.records)
            for (const auto& sp : rec.spheres) {
                int nonzero = 0;
                for (const auto& [id, v] : sp.coefficients) nonzero += v != 0;
                if (nonzero > 1) return "tier-1 only: multi-target coefficients need the pinch map";
            }
    return std::nullopt;
}

SimplicialModel simplicial_model(const ReebDescriptor& d, const SimplicialModelOptions& options) {
    require_valid(d);
    if (auto why = tier2_unsupported(d, options)) throw UnsupportedModelError(*why);

    SimplicialModel w;
    {
        std::vector<SimplicialComplex> cores;
        std::vector<CoreComplex> built;
        for (const auto& h : d.base.handles) {
            built.push_back(core_complex(h));
            cores.push_back(built.back().complex);
        }
        Wedge wedge = wedge_complex(cores);
        w.complex = wedge.complex;
        w.base_vertex = 0;
        for (std::size_t c = 0; c < built.size(); ++c)
            for (const auto& leaf : built[c].leaves) w.leaves.push_back(compose(leaf, wedge.embeddings[c]));
    }
    const auto leaves = leaf_index(d);

    for (const auto& rec : d.records) {
        std::vector<Section> sections;
        for (const auto& sp : rec.spheres) {
            if (sp.dim < 1) continue;
            std::vector<std::pair<std::size_t, std::int64_t>> targets;
            for (const auto& [id, v] : sp.coefficients)
                if (v != 0) targets.emplace_back(leaves.at(id), v);
            Section s;
            if (targets.size() <= 1) {
                const std::int64_t deg = targets.empty() ? 0 : targets[0].second;
                DegreeMap dm = degree_map(sp.dim, deg);
                s.domain = dm.map.domain;
                for (int v : s.domain.vertices())
                    s.to_w[v] = targets.empty() ? w.base_vertex : w.leaves[targets[0].first].at(dm.map(v));
            } else {
                std::vector<std::int64_t> degrees;
                for (const auto& t : targets) degrees.push_back(t.second);
                SphereToWedge pinch = sphere_to_wedge_map(sp.dim, degrees);
                std::map<int, std::pair<std::size_t, int>> owner;
                for (std::size_t i = 0; i < pinch.embeddings.size(); ++i)
                    for (const auto& [v, x] : pinch.embeddings[i]) owner[x] = {i, v};
                s.domain = pinch.map.domain;
                for (int v : s.domain.vertices()) {
                    const int x = pinch.map(v);
                    s.to_w[v] = x == 0 ? w.base_vertex : w.leaves[targets[owner.at(x).first].first].at(owner.at(x).second);
                }
            }
            sections.push_back(std::move(s));
        }

        if (sections.empty()) {
            Wedge wedge = wedge_complex({w.complex, sphere_complex(d.n)}, {w.base_vertex, 0});
            w.complex = wedge.complex;
            w.base_vertex = 0;
            for (auto& leaf : w.leaves) leaf = compose(leaf, wedge.embeddings[0]);
            continue;
        }

        // E = #_j (S^l x S^{n-l}) with the sections D_j x {0} meeting at vertex 0.
        SimplicialComplex e;
        std::vector<std::map<int, int>> section_in_e;
        std::set<int> section_vertices;
        for (std::size_t j = 0; j < sections.size(); ++j) {
            const SimplicialComplex fiber = sphere_complex(d.n - sections[j].domain.dimension());
            SimplicialComplex piece = product_complex(sections[j].domain, fiber);
            std::map<int, int> in_piece;
            std::set<int> piece_sections;
            for (int v : sections[j].domain.vertices()) {
                in_piece[v] = product_vertex(sections[j].domain, fiber, v, 0);
                piece_sections.insert(in_piece[v]);
            }
            if (j == 0) {
                e = piece;
                section_in_e.push_back(in_piece);
            } else {
                Simplex fe = collar_facet(e, d.n, 0, section_vertices);
                Simplex fp = collar_facet(piece, d.n, 0, piece_sections);
                ConnectedSum cs = connected_sum_complex(e, piece, d.n, fe, fp);
                e = cs.complex;
                section_in_e.push_back(compose(in_piece, cs.right));
            }
            for (const auto& [v, x] : section_in_e.back()) section_vertices.insert(x);
        }

        std::vector<SimplicialComplex> domains;
        for (const auto& s : sections) domains.push_back(s.domain);
        Wedge bouquet = wedge_complex(domains, std::vector<int>(domains.size(), 0));
        std::map<int, int> f_vertices;
        std::map<int, int> bouquet_to_e;
        for (std::size_t j = 0; j < sections.size(); ++j)
            for (const auto& [v, x] : bouquet.embeddings[j]) {
                f_vertices[x] = sections[j].to_w.at(v);
                bouquet_to_e[x] = section_in_e[j].at(v);
            }
        SimplicialMap f{bouquet.complex, w.complex, f_vertices};
        MappingCylinder cyl = mapping_cylinder(f);

        SimplicialComplex d_e = e.induced(std::vector<int>(section_vertices.begin(), section_vertices.end()));
        SimplicialComplex d_m = bouquet.complex.relabeled(cyl.domain_embedding);
        std::map<int, int> iso;
        for (const auto& [x, ex] : bouquet_to_e) iso[ex] = cyl.domain_embedding.at(x);
        Gluing g = glue_along(e, d_e, cyl.complex, d_m, iso);

        const std::map<int, int> w_in_new = compose(cyl.codomain_embedding, g.right);
        w.complex = g.complex;
        w.base_vertex = w_in_new.at(w.base_vertex);
        for (auto& leaf : w.leaves) leaf = compose(leaf, w_in_new);
    }
    return w;
}

// ---------------------------------------------------------------- verification

std::string to_string(Tier t) {
    switch (t) {
    case Tier::Auto: return "auto";
    case Tier::One: return "1";
    case Tier::Two: return "2";
    }
    return "?";
}

Tier parse_tier(const std::string& text) {
    if (text == "auto") return Tier::Auto;
    if (text == "1") return Tier::One;
    if (text == "2") return Tier::Two;
    throw PreconditionError("unknown tier '" + text + "' (expected auto, 1 or 2)");
}

bool VerificationReport::all_match() const {
    return std::all_of(rings.begin(), rings.end(), [](const RingVerification& r) { return r.ok(); });
}

namespace {

std::string pairing_text(const PairingInvariant& p) {
    if (!p.ring.is_field()) {
        std::string s = "divisors [";
        for (std::size_t i = 0; i < p.divisors.size(); ++i) s += (i ? ", " : "") + p.divisors[i].str();
        return s + "]";
    }
    return "rank " + std::to_string(p.rank);
}

void compare_modules(const GradedModule& expected, const GradedModule& got, const CoefficientRing& ring,
                     const std::string& kind, std::vector<Witness>& out) {
    const int top = std::max(expected.max_degree(), got.max_degree());
    for (int k = 0; k <= top; ++k)
        if (!(expected.piece(k) == got.piece(k)))
            out.push_back({kind, k, std::nullopt, to_string(expected.piece(k), ring), to_string(got.piece(k), ring)});
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

} // namespace

VerificationReport verify_descriptor(const ReebDescriptor& d, const std::vector<CoefficientRing>& rings,
                                     const VerifyOptions& options) {
    require_valid(d);
    VerificationReport report;
    report.descriptor = d;

    const auto t_build = std::chrono::steady_clock::now();
    const ChainReduction tier1(chain_model(d).complex);

    std::optional<std::string> tier2_problem;
    std::optional<SimplicialModel> model;
    std::optional<ChainReduction> tier2;
    if (options.tier != Tier::One) {
        tier2_problem = tier2_unsupported(d, options.simplicial);
        if (!tier2_problem) {
            try {
                model = simplicial_model(d, options.simplicial);
                tier2.emplace(model->complex.chain_complex());
            } catch (const Error& e) {
                tier2_problem = std::string("tier 2 model failed: ") + e.what();
            }
        }
    }
    const double shared_ms = elapsed_ms(t_build) / static_cast<double>(std::max<std::size_t>(rings.size(), 1));

    for (const auto& ring : rings) {
        const auto t0 = std::chrono::steady_clock::now();
        RingVerification rv;
        rv.ring = ring.name();
        rv.tier = 1;

        GradedModule expected = options.expected_homology ? options.expected_homology(ring)
                                                          : homology_of_descriptor(d, ring);
        GradedModule got = homology(tier1, ring);
        rv.expected_homology = to_string(expected, ring);
        rv.oracle_homology = to_string(got, ring);
        compare_modules(expected, got, ring, "homology", rv.witnesses);

        if (model && tier2) {
            rv.tier = 2;
            compare_modules(expected, homology(*tier2, ring), ring, "tier2-homology", rv.witnesses);
            long chi = 0;
            for (int k = 0; k <= expected.max_degree(); ++k)
                chi += (k % 2 ? -1 : 1) * static_cast<long>(expected.rank(k));
            if (chi != model->complex.euler_characteristic())
                rv.witnesses.push_back({"euler", std::nullopt, std::nullopt, std::to_string(chi),
                                        std::to_string(model->complex.euler_characteristic())});

            bool ring_ok = true;
            try {
                PresentedGradedRing want = options.expected_ring ? options.expected_ring(ring)
                                                                 : cohomology_ring_of_descriptor(d, ring).ring;
                PresentedGradedRing have = cup_ring_of_complex(model->complex, *tier2, ring, d.n);
                for (int k = 1; k <= d.n; ++k)
                    if (want.rank(k) != have.rank(k)) {
                        ring_ok = false;
                        rv.witnesses.push_back({"rank", k, std::nullopt, std::to_string(want.rank(k)),
                                                std::to_string(have.rank(k))});
                    }
                for (int p = 1; p <= d.n; ++p)
                    for (int q = p; p + q <= d.n; ++q) {
                        PairingInvariant a = pairing_invariants(want, p, q);
                        PairingInvariant b = pairing_invariants(have, p, q);
                        rv.pairings.push_back({p, q, pairing_text(a), pairing_text(b)});
                        if (!a.same_as(b)) {
                            ring_ok = false;
                            rv.witnesses.push_back({"pairing", std::nullopt, std::pair{p, q}, pairing_text(a),
                                                    pairing_text(b)});
                        }
                    }
            } catch (const Error& e) {
                ring_ok = false;
                rv.witnesses.push_back({"model", std::nullopt, std::nullopt, "cup ring", e.what()});
            }
            rv.ring_match = ring_ok;
        } else if (options.tier == Tier::Two) {
            rv.ring_match = false;
            rv.witnesses.push_back({"model", std::nullopt, std::nullopt, "tier 2 model", tier2_problem.value_or("")});
        } else if (tier2_problem) {
            rv.note = *tier2_problem;
        }
        rv.homology_match = std::none_of(rv.witnesses.begin(), rv.witnesses.end(), [](const Witness& w) {
            return w.kind == "homology" || w.kind == "tier2-homology" || w.kind == "euler";
        });
        rv.millis = shared_ms + elapsed_ms(t0);
        report.rings.push_back(std::move(rv));
    }
    return report;
}

// ---------------------------------------------------------------- report I/O

namespace {

using json_io::json;

json report_json(const VerificationReport& r) {
    json rings = json::array();
    for (const auto& rv : r.rings) {
        json pairings = json::array();
        for (const auto& p : rv.pairings)
            pairings.push_back({{"p", p.p}, {"q", p.q}, {"expected", p.expected}, {"got", p.got}});
        json witnesses = json::array();
        for (const auto& w : rv.witnesses) {
            json jw{{"kind", w.kind}, {"expected", w.expected}, {"got", w.got}};
            if (w.degree) jw["degree"] = *w.degree;
            if (w.pq) {
                jw["p"] = w.pq->first;
                jw["q"] = w.pq->second;
            }
            witnesses.push_back(jw);
        }
        rings.push_back({{"ring", rv.ring},
                         {"tier", rv.tier},
                         {"homology_match", rv.homology_match},
                         {"ring_match", rv.ring_match ? json(*rv.ring_match) : json(nullptr)},
                         {"millis", rv.millis},
                         {"expected_homology", rv.expected_homology},
                         {"oracle_homology", rv.oracle_homology},
                         {"pairings", pairings},
                         {"witnesses", witnesses},
                         {"note", rv.note}});
    }
    return json{{"name", r.name},
                {"descriptor", json::parse(serialize_descriptor(r.descriptor))},
                {"all_match", r.all_match()},
                {"rings", rings}};
}

VerificationReport report_from(const json& j, const std::string& at) {
    using namespace json_io;
    require_object(j, at);
    reject_unknown(j, at, {"name", "descriptor", "all_match", "rings"});
    VerificationReport r;
    r.name = as_string(field(j, at, "name"), at + ".name");
    r.descriptor = parse_descriptor(field(j, at, "descriptor").dump());
    const auto& rings = as_array(field(j, at, "rings"), at + ".rings");
    for (std::size_t i = 0; i < rings.size(); ++i) {
        const std::string rat = at + ".rings[" + std::to_string(i) + "]";
        const json& x = rings[i];
        require_object(x, rat);
        reject_unknown(x, rat,
                       {"ring", "tier", "homology_match", "ring_match", "millis", "expected_homology",
                        "oracle_homology", "pairings", "witnesses", "note"});
        RingVerification rv;
        rv.ring = as_string(field(x, rat, "ring"), rat + ".ring");
        rv.tier = static_cast<int>(as_int(field(x, rat, "tier"), rat + ".tier"));
        const json& hm = field(x, rat, "homology_match");
        if (!hm.is_boolean()) throw SchemaError(rat + ".homology_match: expected a boolean");
        rv.homology_match = hm.get<bool>();
        const json& rm = field(x, rat, "ring_match");
        if (rm.is_boolean())
            rv.ring_match = rm.get<bool>();
        else if (!rm.is_null())
            throw SchemaError(rat + ".ring_match: expected a boolean or null");
        const json& ms = field(x, rat, "millis");
        if (!ms.is_number()) throw SchemaError(rat + ".millis: expected a number");
        rv.millis = ms.get<double>();
        rv.expected_homology = as_string(field(x, rat, "expected_homology"), rat + ".expected_homology");
        rv.oracle_homology = as_string(field(x, rat, "oracle_homology"), rat + ".oracle_homology");
        rv.note = as_string(field(x, rat, "note"), rat + ".note");
        const auto& ps = as_array(field(x, rat, "pairings"), rat + ".pairings");
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const std::string pat = rat + ".pairings[" + std::to_string(k) + "]";
            require_object(ps[k], pat);
            reject_unknown(ps[k], pat, {"p", "q", "expected", "got"});
            rv.pairings.push_back({static_cast<int>(as_int(field(ps[k], pat, "p"), pat + ".p")),
                                   static_cast<int>(as_int(field(ps[k], pat, "q"), pat + ".q")),
                                   as_string(field(ps[k], pat, "expected"), pat + ".expected"),
                                   as_string(field(ps[k], pat, "got"), pat + ".got")});
        }
        const auto& ws = as_array(field(x, rat, "witnesses"), rat + ".witnesses");
        for (std::size_t k = 0; k < ws.size(); ++k) {
            const std::string wat = rat + ".witnesses[" + std::to_string(k) + "]";
            require_object(ws[k], wat);
            reject_unknown(ws[k], wat, {"kind", "degree", "p", "q", "expected", "got"});
            Witness w;
            w.kind = as_string(field(ws[k], wat, "kind"), wat + ".kind");
            if (ws[k].contains("degree")) w.degree = static_cast<int>(as_int(ws[k]["degree"], wat + ".degree"));
            if (ws[k].contains("p") != ws[k].contains("q")) throw SchemaError(wat + ": p and q come together");
            if (ws[k].contains("p"))
                w.pq = std::pair{static_cast<int>(as_int(ws[k]["p"], wat + ".p")),
                                 static_cast<int>(as_int(ws[k]["q"], wat + ".q"))};
            w.expected = as_string(field(ws[k], wat, "expected"), wat + ".expected");
            w.got = as_string(field(ws[k], wat, "got"), wat + ".got");
            rv.witnesses.push_back(std::move(w));
        }
        r.rings.push_back(std::move(rv));
    }
    if (j.contains("all_match")) {
        const json& am = j["all_match"];
        if (!am.is_boolean() || am.get<bool>() != r.all_match())
            throw SchemaError(at + ".all_match: inconsistent with the ring verdicts");
    }
    return r;
}

} // namespace

std::string report_to_json(const VerificationReport& r) { return report_json(r).dump(2) + "\n"; }

VerificationReport report_from_json(const std::string& text) { return report_from(json_io::parse_document(text), "$"); }

std::string reports_to_json(const std::vector<VerificationReport>& reports) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : reports) {
        arr.push_back(report_json(r));
        all = all && r.all_match();
    }
    return json{{"all_match", all}, {"reports", arr}}.dump(2) + "\n";
}

std::vector<VerificationReport> reports_from_json(const std::string& text) {
    using namespace json_io;
    json j = parse_document(text);
    require_object(j, "$");
    reject_unknown(j, "$", {"all_match", "reports"});
    const auto& arr = as_array(field(j, "$", "reports"), "$.reports");
    std::vector<VerificationReport> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(report_from(arr[i], "$.reports[" + std::to_string(i) + "]"));
    return out;
}

std::string report_table(const VerificationReport& r) {
    std::ostringstream os;
    os << (r.name.empty() ? std::string("descriptor") : r.name) << ": " << summary(r.descriptor) << "\n";
    os << "  ring  tier  homology  ring      ms  H_*\n";
    for (const auto& rv : r.rings) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-5s %-5d %-9s %-8s %7.1f  ", rv.ring.c_str(), rv.tier,
                      rv.homology_match ? "match" : "MISMATCH",
                      rv.ring_match ? (*rv.ring_match ? "match" : "MISMATCH") : "-", rv.millis);
        os << line << rv.oracle_homology << "\n";
        for (const auto& p : rv.pairings)
            os << "        (" << p.p << "," << p.q << ") " << p.got
               << (p.expected == p.got ? "" : "  expected " + p.expected) << "\n";
        for (const auto& w : rv.witnesses) {
            os << "        ! " << w.kind;
            if (w.degree) os << " degree " << *w.degree;
            if (w.pq) os << " (" << w.pq->first << "," << w.pq->second << ")";
            os << ": expected " << w.expected << ", got " << w.got << "\n";
        }
        if (!rv.note.empty()) os << "        note: " << rv.note << "\n";
    }
    return os.str();
}

} // namespace reeb
