#include "reeb/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace reeb {

namespace {

Simplex without(const Simplex& s, std::size_t i) {
    Simplex out;
    out.reserve(s.size() - 1);
    for (std::size_t j = 0; j < s.size(); ++j)
        if (j != i) out.push_back(s[j]);
    return out;
}

int max_label(const SimplicialComplex& k) { return k.vertices().empty() ? -1 : k.vertices().back(); }

// Sign of the permutation sorting `v` (distinct entries).
int sort_sign(std::vector<int> v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[j] < v[i]) sign = -sign;
    return sign;
}

ChainColumn to_column(const std::map<std::size_t, std::int64_t>& m) {
    ChainColumn out;
    for (const auto& [r, v] : m)
        if (v != 0) out.emplace_back(r, v);
    return out;
}

} // namespace

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& generators) {
    std::vector<std::set<Simplex>> levels;
    for (Simplex g : generators) {
        if (g.empty()) continue;
        std::sort(g.begin(), g.end());
        if (std::adjacent_find(g.begin(), g.end()) != g.end())
            throw PreconditionError("simplex with a repeated vertex");
        if (levels.size() < g.size()) levels.resize(g.size());
        levels[g.size() - 1].insert(std::move(g));
    }
    for (std::size_t k = levels.size(); k-- > 1;)
        for (const auto& s : levels[k])
            for (std::size_t i = 0; i < s.size(); ++i) levels[k - 1].insert(without(s, i));

    SimplicialComplex c;
    c.by_dim_.resize(levels.size());
    c.index_.resize(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        c.by_dim_[k].assign(levels[k].begin(), levels[k].end());
        for (std::size_t i = 0; i < c.by_dim_[k].size(); ++i) c.index_[k].emplace(c.by_dim_[k][i], i);
    }
    if (!c.by_dim_.empty())
        for (const auto& v : c.by_dim_[0]) c.vertices_.push_back(v[0]);
    return c;
}

std::size_t SimplicialComplex::count(int k) const {
    if (k < 0 || k > dimension()) return 0;
    return by_dim_[static_cast<std::size_t>(k)].size();
}

std::size_t SimplicialComplex::size() const {
    std::size_t n = 0;
    for (const auto& l : by_dim_) n += l.size();
    return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    static const std::vector<Simplex> none;
    if (k < 0 || k > dimension()) return none;
    return by_dim_[static_cast<std::size_t>(k)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > by_dim_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

std::vector<Simplex> SimplicialComplex::facets() const {
    std::vector<Simplex> out;
    for (int k = dimension(); k >= 0; --k) {
        std::vector<char> covered(count(k), 0);
        for (const auto& s : simplices(k + 1))
            for (std::size_t i = 0; i < s.size(); ++i) covered[*index_of(without(s, i))] = 1;
        for (std::size_t i = 0; i < count(k); ++i)
            if (!covered[i]) out.push_back(simplices(k)[i]);
    }
    return out;
}

bool SimplicialComplex::is_pure() const {
    for (const auto& f : facets())
        if (static_cast<int>(f.size()) - 1 != dimension()) return false;
    return true;
}

bool SimplicialComplex::is_closed_pseudomanifold() const {
    if (dimension() < 0 || !is_pure()) return false;
    std::vector<int> incidence(count(dimension() - 1), 0);
    for (const auto& s : simplices(dimension()))
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (dimension() == 0) break;
            ++incidence[*index_of(without(s, i))];
        }
    if (dimension() == 0) return count(0) == 2;
    return std::all_of(incidence.begin(), incidence.end(), [](int c) { return c == 2; });
}

ChainComplexZ SimplicialComplex::chain_complex() const {
    ChainComplexZ c;
    for (int k = 0; k <= dimension(); ++k)
        for (const auto& s : simplices(k)) {
            ChainColumn col;
            if (k > 0)
                for (std::size_t i = 0; i < s.size(); ++i)
                    col.emplace_back(*index_of(without(s, i)), i % 2 ? -1 : 1);
            c.add_cell(k, std::move(col));
        }
    return c;
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (int k = 0; k <= dimension(); ++k) chi += (k % 2 ? -1 : 1) * static_cast<long>(count(k));
    return chi;
}

SimplicialComplex SimplicialComplex::induced(const std::vector<int>& vertex_set) const {
    std::set<int> keep(vertex_set.begin(), vertex_set.end());
    std::vector<Simplex> gens;
    for (int k = 0; k <= dimension(); ++k)
        for (const auto& s : simplices(k))
            if (std::all_of(s.begin(), s.end(), [&](int v) { return keep.count(v) > 0; })) gens.push_back(s);
    return from_simplices(gens);
}

bool SimplicialComplex::is_full_subcomplex(const SimplicialComplex& sub) const {
    for (int k = 0; k <= sub.dimension(); ++k)
        for (const auto& s : sub.simplices(k))
            if (!contains(s)) return false;
    return induced(sub.vertices()) == sub;
}

SimplicialComplex SimplicialComplex::relabeled(const std::map<int, int>& labels) const {
    std::vector<Simplex> gens;
    for (const auto& f : facets()) {
        Simplex g;
        for (int v : f) g.push_back(labels.at(v));
        gens.push_back(std::move(g));
    }
    SimplicialComplex out = from_simplices(gens);
    if (out.size() != size()) throw PreconditionError("relabeling is not injective");
    return out;
}

std::string SimplicialComplex::dump() const {
    std::ostringstream os;
    for (int k = 0; k <= dimension(); ++k)
        for (const auto& s : simplices(k)) {
            for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
            os << "\n";
        }
    return os.str();
}

Simplex SimplicialMap::image(const Simplex& s) const {
    Simplex out;
    for (int v : s) out.push_back(vertex_map.at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool SimplicialMap::is_valid() const {
    for (int v : domain.vertices())
        if (!vertex_map.count(v)) return false;
    for (const auto& f : domain.facets())
        if (!codomain.contains(image(f))) return false;
    return true;
}

ChainMap SimplicialMap::chain_map() const {
    ChainMap m;
    m.images.resize(static_cast<std::size_t>(std::max(domain.dimension(), -1) + 1));
    for (int k = 0; k <= domain.dimension(); ++k)
        for (const auto& s : domain.simplices(k)) {
            std::vector<int> raw;
            for (int v : s) raw.push_back(vertex_map.at(v));
            Simplex img = image(s);
            ChainColumn col;
            if (img.size() == s.size()) col.emplace_back(*codomain.index_of(img), sort_sign(raw));
            m.images[static_cast<std::size_t>(k)].push_back(std::move(col));
        }
    return m;
}

std::vector<Rational> push_forward(const SimplicialMap& f, int k, const std::vector<Rational>& chain) {
    std::vector<Rational> out(f.codomain.count(k), Rational(0));
    const auto& cells = f.domain.simplices(k);
    for (std::size_t i = 0; i < chain.size() && i < cells.size(); ++i) {
        if (chain[i] == 0) continue;
        std::vector<int> raw;
        for (int v : cells[i]) raw.push_back(f(v));
        Simplex img = f.image(cells[i]);
        if (img.size() != cells[i].size()) continue;
        out[*f.codomain.index_of(img)] += chain[i] * sort_sign(raw);
    }
    return out;
}

SimplicialComplex sphere_complex(int k) {
    if (k < 0) throw PreconditionError("sphere dimension must be >= 0");
    Simplex all(static_cast<std::size_t>(k) + 2);
    std::iota(all.begin(), all.end(), 0);
    std::vector<Simplex> gens;
    for (std::size_t i = 0; i < all.size(); ++i) gens.push_back(without(all, i));
    return SimplicialComplex::from_simplices(gens);
}

ChainColumn sphere_fundamental_cycle(int k) {
    SimplicialComplex s = sphere_complex(k);
    Simplex all(static_cast<std::size_t>(k) + 2);
    std::iota(all.begin(), all.end(), 0);
    ChainColumn out;
    for (std::size_t i = 0; i < all.size(); ++i) out.emplace_back(*s.index_of(without(all, i)), i % 2 ? -1 : 1);
    return normalized_column(out);
}

int product_vertex(const SimplicialComplex& k, const SimplicialComplex& l, int a, int b) {
    const auto& vk = k.vertices();
    const auto& vl = l.vertices();
    auto ia = std::lower_bound(vk.begin(), vk.end(), a) - vk.begin();
    auto ib = std::lower_bound(vl.begin(), vl.end(), b) - vl.begin();
    return static_cast<int>(ia * static_cast<long>(vl.size()) + ib);
}

SimplicialComplex product_complex(const SimplicialComplex& k, const SimplicialComplex& l) {
    std::vector<Simplex> gens;
    const auto fk = k.facets();
    const auto fl = l.facets();
    for (const auto& s : fk)
        for (const auto& t : fl) {
            const std::size_t p = s.size() - 1, q = t.size() - 1;
            // Each monotone lattice path from (0,0) to (p,q) is a simplex.
            std::vector<char> steps(p + q, 0);
            std::fill(steps.begin() + static_cast<long>(q), steps.end(), 1); // 1 = step in K
            do {
                Simplex simplex;
                std::size_t i = 0, j = 0;
                simplex.push_back(product_vertex(k, l, s[i], t[j]));
                for (char st : steps) {
                    st ? ++i : ++j;
                    simplex.push_back(product_vertex(k, l, s[i], t[j]));
                }
                gens.push_back(std::move(simplex));
            } while (std::next_permutation(steps.begin(), steps.end()));
        }
    return SimplicialComplex::from_simplices(gens);
}

Wedge wedge_complex(const std::vector<SimplicialComplex>& summands, std::vector<int> base_vertices) {
    Wedge w;
    if (base_vertices.empty())
        for (const auto& s : summands) base_vertices.push_back(s.vertices().empty() ? 0 : s.vertices().front());
    if (base_vertices.size() != summands.size()) throw PreconditionError("one base vertex per wedge summand");
    std::vector<Simplex> gens{{0}};
    int next = 1;
    for (std::size_t i = 0; i < summands.size(); ++i) {
        const auto& s = summands[i];
        if (s.vertices().empty()) throw PreconditionError("empty wedge summand");
        if (!s.contains({base_vertices[i]})) throw PreconditionError("wedge base vertex not in summand");
        std::map<int, int> emb;
        for (int v : s.vertices()) emb[v] = v == base_vertices[i] ? 0 : next++;
        for (const auto& f : s.facets()) {
            Simplex g;
            for (int v : f) g.push_back(emb.at(v));
            gens.push_back(std::move(g));
        }
        w.embeddings.push_back(std::move(emb));
    }
    w.complex = SimplicialComplex::from_simplices(gens);
    return w;
}

ConnectedSum connected_sum_complex(const SimplicialComplex& k, const SimplicialComplex& l, int dim) {
    if (k.dimension() != dim || l.dimension() != dim || dim < 1)
        throw PreconditionError("connected sum needs two closed " + std::to_string(dim) + "-manifolds");
    return connected_sum_complex(k, l, dim, k.simplices(dim).front(), l.simplices(dim).front());
}

ConnectedSum connected_sum_complex(const SimplicialComplex& k, const SimplicialComplex& l, int dim,
                                   const Simplex& facet_k, const Simplex& facet_l) {
    if (k.dimension() != dim || l.dimension() != dim || dim < 1)
        throw PreconditionError("connected sum needs two closed " + std::to_string(dim) + "-manifolds");
    if (!k.is_closed_pseudomanifold() || !l.is_closed_pseudomanifold())
        throw PreconditionError("connected sum operand is not a closed pseudomanifold");
    if (facet_k.size() != static_cast<std::size_t>(dim) + 1 || !k.contains(facet_k) ||
        facet_l.size() != static_cast<std::size_t>(dim) + 1 || !l.contains(facet_l))
        throw PreconditionError("no matching facet pair for the connected sum");

    ConnectedSum out;
    for (int v : k.vertices()) out.left[v] = v;
    int next = max_label(k) + 1;
    for (int v : l.vertices()) {
        auto it = std::find(facet_l.begin(), facet_l.end(), v);
        out.right[v] = it != facet_l.end() ? facet_k[static_cast<std::size_t>(it - facet_l.begin())] : next++;
    }
    std::vector<Simplex> gens;
    for (const auto& f : k.simplices(dim))
        if (f != facet_k) gens.push_back(f);
    for (const auto& f : l.simplices(dim)) {
        if (f == facet_l) continue;
        Simplex g;
        for (int v : f) g.push_back(out.right.at(v));
        gens.push_back(std::move(g));
    }
    out.complex = SimplicialComplex::from_simplices(gens);
    return out;
}

namespace {

struct RawDegreeMap {
    SimplicialComplex domain;
    std::map<int, int> vertex_map;
    std::map<Simplex, std::int64_t> cycle;
};

RawDegreeMap raw_degree_map(int l, std::int64_t d) {
    RawDegreeMap r;
    if (l == 1) {
        if (d == 0) {
            r.domain = sphere_complex(1);
            r.vertex_map = {{0, 0}, {1, 0}, {2, 0}};
            r.cycle = {{{0, 1}, 1}, {{1, 2}, 1}, {{0, 2}, -1}};
            return r;
        }
        const int n = static_cast<int>(3 * (d < 0 ? -d : d));
        std::vector<Simplex> edges;
        for (int i = 0; i + 1 < n; ++i) {
            edges.push_back({i, i + 1});
            r.cycle[{i, i + 1}] = 1;
        }
        edges.push_back({0, n - 1});
        r.cycle[{0, n - 1}] = -1;
        r.domain = SimplicialComplex::from_simplices(edges);
        for (int i = 0; i < n; ++i) r.vertex_map[i] = d > 0 ? i % 3 : (3 - i % 3) % 3;
        return r;
    }
    RawDegreeMap below = raw_degree_map(l - 1, d);
    const int north = max_label(below.domain) + 1, south = north + 1;
    std::vector<Simplex> gens;
    for (const auto& f : below.domain.facets()) {
        Simplex a = f, b = f;
        a.push_back(north);
        b.push_back(south);
        gens.push_back(std::move(a));
        gens.push_back(std::move(b));
    }
    r.domain = SimplicialComplex::from_simplices(gens);
    r.vertex_map = below.vertex_map;
    r.vertex_map[north] = l + 1;
    r.vertex_map[south] = 0;
    for (const auto& [s, c] : below.cycle) {
        Simplex a = s, b = s;
        a.push_back(north);
        b.push_back(south);
        r.cycle[a] = c;
        r.cycle[b] = -c;
    }
    return r;
}

// Multiplier of the raw map on the oriented cycle, checked at chain level.
std::int64_t raw_multiplier(const RawDegreeMap& r, int l) {
    SimplicialMap f{r.domain, sphere_complex(l), r.vertex_map};
    if (!f.is_valid()) throw Error("degree map construction produced a non-simplicial map");
    std::vector<Rational> chain(r.domain.count(l), Rational(0));
    for (const auto& [s, c] : r.cycle) chain[*r.domain.index_of(s)] = c;
    auto pushed = push_forward(f, l, chain);
    ChainColumn fund = sphere_fundamental_cycle(l);
    const Rational m = pushed[fund.front().first] * fund.front().second;
    std::vector<Rational> expect(pushed.size(), Rational(0));
    for (const auto& [i, v] : fund) expect[i] = m * v;
    if (pushed != expect) throw Error("degree map does not push the cycle to a multiple of the fundamental cycle");
    return static_cast<std::int64_t>(numerator(m));
}

} // namespace

DegreeMap degree_map(int l, std::int64_t d) {
    if (l < 1) throw PreconditionError("degree_map needs l >= 1");
    const std::int64_t orientation = raw_multiplier(raw_degree_map(l, 1), l);
    RawDegreeMap r = raw_degree_map(l, d);
    DegreeMap out;
    out.map = SimplicialMap{r.domain, sphere_complex(l), r.vertex_map};
    out.multiplier = orientation * raw_multiplier(r, l);
    if (out.multiplier != d) throw Error("degree map multiplier mismatch");
    std::map<std::size_t, std::int64_t> cyc;
    for (const auto& [s, c] : r.cycle) cyc[*r.domain.index_of(s)] = orientation * c;
    out.fundamental_cycle = to_column(cyc);
    return out;
}

SphereToWedge sphere_to_wedge_map(int l, const std::vector<std::int64_t>& degrees) {
    if (l < 1 || degrees.empty()) throw PreconditionError("sphere_to_wedge_map needs l >= 1 and s >= 1");
    SphereToWedge out;
    out.degrees = degrees;

    std::vector<SimplicialComplex> spheres(degrees.size(), sphere_complex(l));
    Wedge w = wedge_complex(spheres);
    out.embeddings = w.embeddings;
    const ChainColumn fund = sphere_fundamental_cycle(l);
    const SimplicialComplex base = sphere_complex(l);
    for (const auto& emb : w.embeddings) {
        std::map<std::size_t, std::int64_t> cyc;
        for (const auto& [i, v] : fund) {
            Simplex s;
            for (int x : base.simplices(l)[i]) s.push_back(emb.at(x));
            cyc[*w.complex.index_of(s)] = v;
        }
        out.wedge_cycles.push_back(to_column(cyc));
    }

    // Boundary of a stacked ball: T_t = {t, ..., t + l + 1}, t = 0 .. L-1.
    std::int64_t lobes = 0;
    for (auto d : degrees) lobes += d < 0 ? -d : d;
    const int stride = 2 * l + 3;
    const int count = stride * static_cast<int>(std::max<std::int64_t>(lobes, 1)) + 1;
    std::map<Simplex, std::int64_t> cycle;
    for (int t = 0; t < count; ++t) {
        Simplex big(static_cast<std::size_t>(l) + 2);
        std::iota(big.begin(), big.end(), t);
        const std::int64_t eps = (l % 2 == 1 && t % 2 == 1) ? -1 : 1;
        for (std::size_t i = 0; i < big.size(); ++i) cycle[without(big, i)] += eps * (i % 2 ? -1 : 1);
    }
    std::vector<Simplex> boundary;
    for (auto it = cycle.begin(); it != cycle.end();) {
        if (it->second == 0) {
            it = cycle.erase(it);
        } else {
            boundary.push_back(it->first);
            ++it;
        }
    }
    SimplicialComplex domain = SimplicialComplex::from_simplices(boundary);

    std::map<int, int> vmap;
    for (int v : domain.vertices()) vmap[v] = 0;
    int lobe = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const std::int64_t d = degrees[i];
        for (std::int64_t c = 0; c < (d < 0 ? -d : d); ++c, ++lobe) {
            const int t = 1 + stride * lobe;
            Simplex facet{t};
            for (int v = t + 2; v <= t + l + 1; ++v) facet.push_back(v);
            const std::int64_t coeff = cycle.at(facet);
            const bool flip = coeff != (d > 0 ? 1 : -1);
            for (std::size_t j = 0; j < facet.size(); ++j) vmap[facet[j]] = w.embeddings[i].at(static_cast<int>(j) + 1);
            if (flip) std::swap(vmap[facet[0]], vmap[facet[1]]);
        }
    }
    out.map = SimplicialMap{domain, w.complex, vmap};
    if (!out.map.is_valid()) throw Error("pinch map construction produced a non-simplicial map");

    std::map<std::size_t, std::int64_t> cyc;
    std::vector<Rational> chain(domain.count(l), Rational(0));
    for (const auto& [s, c] : cycle) {
        cyc[*domain.index_of(s)] = c;
        chain[*domain.index_of(s)] = c;
    }
    out.fundamental_cycle = to_column(cyc);
    auto pushed = push_forward(out.map, l, chain);
    std::vector<Rational> expect(pushed.size(), Rational(0));
    for (std::size_t i = 0; i < degrees.size(); ++i)
        for (const auto& [r, v] : out.wedge_cycles[i]) expect[r] += Rational(degrees[i] * v);
    if (pushed != expect) throw Error("pinch map does not realize the requested degrees");
    return out;
}

MappingCylinder mapping_cylinder(const SimplicialMap& f) {
    if (!f.is_valid()) throw PreconditionError("mapping cylinder of an invalid simplicial map");
    MappingCylinder out;
    int next = 0;
    for (int v : f.domain.vertices()) out.domain_embedding[v] = next++;
    for (int v : f.codomain.vertices()) out.codomain_embedding[v] = next++;
    std::vector<Simplex> gens;
    for (const auto& s : f.codomain.facets()) {
        Simplex g;
        for (int v : s) g.push_back(out.codomain_embedding.at(v));
        gens.push_back(std::move(g));
    }
    for (const auto& s : f.domain.facets())
        for (std::size_t i = 0; i < s.size(); ++i) {
            std::set<int> g;
            for (std::size_t j = 0; j <= i; ++j) g.insert(out.domain_embedding.at(s[j]));
            for (std::size_t j = i; j < s.size(); ++j) g.insert(out.codomain_embedding.at(f(s[j])));
            gens.emplace_back(g.begin(), g.end());
        }
    out.complex = SimplicialComplex::from_simplices(gens);
    return out;
}

Gluing glue_along(const SimplicialComplex& k, const SimplicialComplex& a, const SimplicialComplex& l,
                  const SimplicialComplex& b, const std::map<int, int>& iso) {
    if (!k.is_full_subcomplex(a) || !l.is_full_subcomplex(b))
        throw PreconditionError("glue_along needs full subcomplexes");
    std::set<int> targets;
    for (int v : a.vertices()) {
        auto it = iso.find(v);
        if (it == iso.end()) throw PreconditionError("gluing map undefined on a vertex");
        targets.insert(it->second);
    }
    if (targets.size() != a.vertices().size() || std::vector<int>(targets.begin(), targets.end()) != b.vertices())
        throw PreconditionError("gluing map is not a bijection of vertex sets");
    std::map<int, int> restricted;
    for (int v : a.vertices()) restricted[v] = iso.at(v);
    if (a.relabeled(restricted) != b) throw PreconditionError("subcomplexes are not isomorphic under the gluing map");

    Gluing out;
    for (int v : k.vertices()) out.left[v] = v;
    std::map<int, int> inverse;
    for (const auto& [x, y] : restricted) inverse[y] = x;
    int next = max_label(k) + 1;
    for (int v : l.vertices()) {
        auto it = inverse.find(v);
        out.right[v] = it != inverse.end() ? it->second : next++;
    }
    std::vector<Simplex> gens = k.facets();
    for (const auto& s : l.facets()) {
        Simplex g;
        for (int v : s) g.push_back(out.right.at(v));
        gens.push_back(std::move(g));
    }
    out.complex = SimplicialComplex::from_simplices(gens);
    return out;
}

Subdivision barycentric_subdivision(const SimplicialComplex& k) {
    Subdivision out;
    int next = 0;
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& s : k.simplices(d)) out.barycenter[s] = next++;
    std::vector<Simplex> gens;
    for (const auto& f : k.facets()) {
        Simplex perm = f;
        do {
            Simplex chain;
            Simplex prefix;
            for (int v : perm) {
                prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
                chain.push_back(out.barycenter.at(prefix));
            }
            gens.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out.complex = SimplicialComplex::from_simplices(gens);
    return out;
}

GradedModule homology_of_complex(const SimplicialComplex& k, const CoefficientRing& ring) {
    return homology(ChainReduction(k.chain_complex()), ring);
}

PresentedGradedRing cup_ring_of_complex(const SimplicialComplex& k, const CoefficientRing& ring, int top) {
    return cup_ring_of_complex(k, ChainReduction(k.chain_complex()), ring, top);
}

PresentedGradedRing cup_ring_of_complex(const SimplicialComplex& k, const ChainReduction& reduction,
                                        const CoefficientRing& ring, int top) {
    if (top < 0) top = k.dimension();
    auto bases = homology_bases(reduction, ring);
    if (bases.empty() || bases[0].piece.free_rank != 1)
        throw PreconditionError("cup ring needs a nonempty connected complex");
    if (!ring.is_field())
        for (const auto& b : bases)
            if (!b.piece.torsion.empty())
                throw TorsionError("integral homology has torsion in degree " + std::to_string(b.degree) +
                                   "; use field coefficients");

    std::optional<FieldOps> field;
    if (ring.is_field()) field.emplace(ring);
    auto reduce = [&](const Rational& v) { return field ? field->reduce(v) : v; };

    PresentedGradedRing out(ring, top);
    const int dim = std::min(top, k.dimension());
    std::vector<std::vector<std::size_t>> ids(static_cast<std::size_t>(std::max(dim, 0)) + 1);
    for (int d = 1; d <= dim; ++d)
        for (std::size_t i = 0; i < bases[static_cast<std::size_t>(d)].cocycles.size(); ++i)
            ids[static_cast<std::size_t>(d)].push_back(out.add_basis_element(
                {"h" + std::to_string(d) + "." + std::to_string(i + 1), d, {Provenance::Kind::Base, -1, -1}, false}));

    std::map<std::pair<std::size_t, std::size_t>, SparseVector> table;
    for (int p = 1; p <= dim; ++p)
        for (int q = 1; p + q <= dim; ++q) {
            const auto& target = bases[static_cast<std::size_t>(p + q)];
            if (target.cycles.empty()) continue;
            // Front and back faces of every simplex in the support of a target cycle.
            std::map<std::size_t, std::pair<std::size_t, std::size_t>> faces;
            for (const auto& z : target.cycles)
                for (std::size_t s = 0; s < z.size(); ++s) {
                    if (z[s] == 0 || faces.count(s)) continue;
                    const Simplex& sigma = k.simplices(p + q)[s];
                    Simplex front(sigma.begin(), sigma.begin() + p + 1);
                    Simplex back(sigma.begin() + p, sigma.end());
                    faces[s] = {*k.index_of(front), *k.index_of(back)};
                }
            const auto& phis = bases[static_cast<std::size_t>(p)].cocycles;
            const auto& psis = bases[static_cast<std::size_t>(q)].cocycles;
            for (std::size_t a = 0; a < phis.size(); ++a)
                for (std::size_t b = 0; b < psis.size(); ++b) {
                    SparseVector value;
                    for (std::size_t c = 0; c < target.cycles.size(); ++c) {
                        Rational acc = 0;
                        for (const auto& [s, fb] : faces) {
                            const Rational& zs = target.cycles[c][s];
                            if (zs == 0) continue;
                            const Rational& x = phis[a][fb.first];
                            if (x == 0) continue;
                            const Rational& y = psis[b][fb.second];
                            if (y == 0) continue;
                            acc += zs * x * y;
                        }
                        acc = reduce(acc);
                        if (acc != 0) value.emplace_back(ids[static_cast<std::size_t>(p + q)][c], acc);
                    }
                    table[{ids[static_cast<std::size_t>(p)][a], ids[static_cast<std::size_t>(q)][b]}] = value;
                }
        }

    for (const auto& [key, value] : table) {
        const auto [a, b] = key;
        const int pq = out.basis()[a].degree * out.basis()[b].degree;
        SparseVector swapped = table.at({b, a});
        SparseVector expected;
        for (const auto& [i, v] : value) expected.emplace_back(i, reduce(pq % 2 ? -v : v));
        for (auto& e : expected) e.second = reduce(e.second);
        if (swapped != expected) throw Error("cup product is not graded-commutative on cohomology");
        if (a <= b) out.set_product(a, b, value);
    }
    return out;
}

} // namespace reeb
