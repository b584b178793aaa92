#include "reeb/graded_algebra.hpp"

#include <algorithm>
#include <sstream>

namespace reeb {

GradedModule GradedModule::free(const std::vector<std::size_t>& ranks) {
    std::vector<ModulePiece> pieces;
    for (auto r : ranks) pieces.push_back(ModulePiece{r, {}});
    return GradedModule(std::move(pieces));
}

ModulePiece GradedModule::piece(int k) const {
    if (k < 0 || k > max_degree()) return {};
    return pieces_[static_cast<std::size_t>(k)];
}

std::vector<std::size_t> GradedModule::ranks() const {
    std::vector<std::size_t> out;
    for (const auto& p : pieces_) out.push_back(p.free_rank);
    return out;
}

std::size_t GradedModule::total_rank() const {
    std::size_t s = 0;
    for (const auto& p : pieces_) s += p.free_rank;
    return s;
}

bool GradedModule::is_free() const {
    return std::all_of(pieces_.begin(), pieces_.end(), [](const ModulePiece& p) { return p.is_free(); });
}

bool operator==(const GradedModule& a, const GradedModule& b) {
    int top = std::max(a.max_degree(), b.max_degree());
    for (int k = 0; k <= top; ++k)
        if (!(a.piece(k) == b.piece(k))) return false;
    return true;
}

std::string to_string(const GradedModule& m, const CoefficientRing& ring) {
    std::ostringstream os;
    os << "[";
    for (int k = 0; k <= m.max_degree(); ++k) {
        if (k) os << ", ";
        os << to_string(m.piece(k), ring);
    }
    os << "]";
    return os.str();
}

std::string to_string(const Provenance& p) {
    switch (p.kind) {
    case Provenance::Kind::Base: return "base";
    case Provenance::Kind::Inclusion: return "inclusion";
    case Provenance::Kind::Bubbled:
        return "bubbled(" + std::to_string(p.record) + "," + std::to_string(p.sphere) + ")";
    case Provenance::Kind::Top: return "top(" + std::to_string(p.record) + ")";
    }
    return "?";
}

PresentedGradedRing::PresentedGradedRing(CoefficientRing ring, int top_degree)
    : ring_(ring), top_degree_(top_degree) {
    if (top_degree < 0) throw PreconditionError("negative top degree");
}

std::size_t PresentedGradedRing::add_basis_element(BasisElement e) {
    if (e.degree < 1 || e.degree > top_degree_)
        throw PreconditionError("basis element '" + e.id + "' has degree " + std::to_string(e.degree) +
                                " outside [1, " + std::to_string(top_degree_) + "]");
    if (find(e.id)) throw PreconditionError("duplicate basis id '" + e.id + "'");
    basis_.push_back(std::move(e));
    return basis_.size() - 1;
}

std::optional<std::size_t> PresentedGradedRing::find(const std::string& id) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].id == id) return i;
    return std::nullopt;
}

std::size_t PresentedGradedRing::index_of(const std::string& id) const {
    auto i = find(id);
    if (!i) throw PreconditionError("no basis element '" + id + "'");
    return *i;
}

std::vector<std::size_t> PresentedGradedRing::degree_indices(int k) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].degree == k) out.push_back(i);
    return out;
}

Rational PresentedGradedRing::normalize(const Rational& v) const {
    if (ring_.kind() == CoefficientRing::Kind::PrimeField) return FieldOps(ring_).reduce(v);
    return v;
}

SparseVector PresentedGradedRing::normalized(SparseVector v) const {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector out;
    for (auto& [i, c] : v) {
        if (!out.empty() && out.back().first == i)
            out.back().second += c;
        else
            out.emplace_back(i, c);
    }
    SparseVector clean;
    for (auto& [i, c] : out) {
        Rational r = normalize(c);
        if (r != 0) clean.emplace_back(i, r);
    }
    return clean;
}

void PresentedGradedRing::set_product(std::size_t a, std::size_t b, SparseVector value) {
    if (a >= basis_.size() || b >= basis_.size()) throw PreconditionError("product index out of range");
    value = normalized(std::move(value));
    const int da = basis_[a].degree, db = basis_[b].degree;
    for (const auto& [i, c] : value) {
        if (i >= basis_.size()) throw PreconditionError("product coordinate out of range");
        if (basis_[i].degree != da + db)
            throw PreconditionError("product " + basis_[a].id + "*" + basis_[b].id + " leaves degree " +
                                    std::to_string(da + db));
    }
    const bool odd = (da * db) % 2 != 0;
    SparseVector swapped = value;
    if (odd)
        for (auto& e : swapped) e.second = normalize(-e.second);
    if (a == b && odd && swapped != value)
        throw PreconditionError("square of odd class " + basis_[a].id + " violates graded commutativity");
    if (value.empty()) {
        products_.erase({a, b});
        products_.erase({b, a});
        return;
    }
    products_[{a, b}] = std::move(value);
    products_[{b, a}] = std::move(swapped);
}

SparseVector PresentedGradedRing::product(std::size_t a, std::size_t b) const {
    auto it = products_.find({a, b});
    return it == products_.end() ? SparseVector{} : it->second;
}

SparseVector PresentedGradedRing::multiply(const SparseVector& x, const SparseVector& y) const {
    SparseVector acc;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            for (const auto& [k, ck] : product(i, j)) acc.emplace_back(k, ci * cj * ck);
    return normalized(std::move(acc));
}

std::size_t PresentedGradedRing::rank(int k) const {
    if (k == 0) return 1;
    return degree_indices(k).size();
}

std::vector<std::size_t> PresentedGradedRing::ranks() const {
    std::vector<std::size_t> out;
    for (int k = 0; k <= top_degree_; ++k) out.push_back(rank(k));
    return out;
}

GradedModule PresentedGradedRing::module() const { return GradedModule::free(ranks()); }

std::vector<std::string> PresentedGradedRing::axiom_violations() const {
    std::vector<std::string> out;
    const std::size_t n = basis_.size();
    for (const auto& [key, value] : products_) {
        auto [a, b] = key;
        int deg = basis_[a].degree + basis_[b].degree;
        if (deg > top_degree_ && !value.empty())
            out.push_back("product " + basis_[a].id + "*" + basis_[b].id + " nonzero above top degree");
        for (const auto& [i, c] : value)
            if (basis_[i].degree != deg)
                out.push_back("product " + basis_[a].id + "*" + basis_[b].id + " not degree-additive");
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            SparseVector ab = product(a, b);
            SparseVector ba = product(b, a);
            if ((basis_[a].degree * basis_[b].degree) % 2 != 0)
                for (auto& e : ba) e.second = normalize(-e.second);
            if (ab != ba)
                out.push_back("graded commutativity fails for " + basis_[a].id + ", " + basis_[b].id);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            SparseVector ab = product(a, b);
            for (std::size_t c = 0; c < n; ++c) {
                SparseVector left = multiply(ab, {{c, Rational(1)}});
                SparseVector right = multiply({{a, Rational(1)}}, product(b, c));
                if (left != right)
                    out.push_back("associativity fails for " + basis_[a].id + ", " + basis_[b].id + ", " +
                                  basis_[c].id);
            }
        }
    return out;
}

std::string to_string(const SparseVector& v, const PresentedGradedRing& ring) {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : v) {
        Rational a = c;
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (a < 0) a = -a;
        if (a != 1) os << a << "*";
        os << ring.basis()[i].id;
        first = false;
    }
    return os.str();
}

ManifoldExpr ManifoldExpr::sphere(int k) {
    ManifoldExpr e;
    e.kind_ = Kind::Sphere;
    e.sphere_dim_ = k;
    return e;
}

ManifoldExpr ManifoldExpr::product(ManifoldExpr a, ManifoldExpr b) {
    ManifoldExpr e;
    e.kind_ = Kind::Product;
    e.left_ = std::make_shared<const ManifoldExpr>(std::move(a));
    e.right_ = std::make_shared<const ManifoldExpr>(std::move(b));
    return e;
}

ManifoldExpr ManifoldExpr::connsum(ManifoldExpr a, ManifoldExpr b) {
    ManifoldExpr e;
    e.kind_ = Kind::ConnSum;
    e.left_ = std::make_shared<const ManifoldExpr>(std::move(a));
    e.right_ = std::make_shared<const ManifoldExpr>(std::move(b));
    return e;
}

int ManifoldExpr::dimension() const {
    switch (kind_) {
    case Kind::Sphere: return sphere_dim_;
    case Kind::Product: return left_->dimension() + right_->dimension();
    case Kind::ConnSum: return left_->dimension();
    }
    return 0;
}

std::vector<int> ManifoldExpr::leaf_dims() const {
    if (kind_ == Kind::Sphere) return {sphere_dim_};
    auto out = left_->leaf_dims();
    auto r = right_->leaf_dims();
    out.insert(out.end(), r.begin(), r.end());
    return out;
}

bool ManifoldExpr::is_sphere_or_product_of_spheres() const {
    switch (kind_) {
    case Kind::Sphere: return true;
    case Kind::Product:
        return left_->is_sphere_or_product_of_spheres() && right_->is_sphere_or_product_of_spheres();
    case Kind::ConnSum: return false;
    }
    return false;
}

std::vector<std::string> ManifoldExpr::violations() const {
    std::vector<std::string> out;
    switch (kind_) {
    case Kind::Sphere:
        if (sphere_dim_ < 1) out.push_back("sphere dimension " + std::to_string(sphere_dim_) + " < 1");
        break;
    case Kind::ConnSum:
        if (left_->dimension() != right_->dimension())
            out.push_back("connected sum of dimensions " + std::to_string(left_->dimension()) + " and " +
                          std::to_string(right_->dimension()));
        [[fallthrough]];
    case Kind::Product: {
        auto l = left_->violations();
        auto r = right_->violations();
        out.insert(out.end(), l.begin(), l.end());
        out.insert(out.end(), r.begin(), r.end());
        break;
    }
    }
    return out;
}

std::string ManifoldExpr::to_string() const {
    switch (kind_) {
    case Kind::Sphere: return "S" + std::to_string(sphere_dim_);
    case Kind::Product: return "(" + left_->to_string() + " x " + right_->to_string() + ")";
    case Kind::ConnSum: return "(" + left_->to_string() + " # " + right_->to_string() + ")";
    }
    return "?";
}

bool operator==(const ManifoldExpr& a, const ManifoldExpr& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.kind_ == ManifoldExpr::Kind::Sphere) return a.sphere_dim_ == b.sphere_dim_;
    return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

PresentedGradedRing unit_ring(const CoefficientRing& ring) { return PresentedGradedRing(ring, 0); }

PresentedGradedRing sphere_ring(int k, const CoefficientRing& ring) {
    if (k < 1) throw PreconditionError("sphere_ring needs k >= 1, got " + std::to_string(k));
    PresentedGradedRing r(ring, k);
    r.add_basis_element({"g", k, {}, true});
    return r;
}

namespace {

// Products with an adjoined unit: index 0 is the unit, index i+1 is basis i.
SparseVector extended_product(const PresentedGradedRing& a, std::size_t x, std::size_t y) {
    if (x == 0 && y == 0) return {{0, Rational(1)}};
    if (x == 0) return {{y, Rational(1)}};
    if (y == 0) return {{x, Rational(1)}};
    SparseVector out;
    for (const auto& [k, c] : a.product(x - 1, y - 1)) out.emplace_back(k + 1, c);
    return out;
}

int extended_degree(const PresentedGradedRing& a, std::size_t x) { return x == 0 ? 0 : a.basis()[x - 1].degree; }

void require_same_ring(const PresentedGradedRing& a, const PresentedGradedRing& b) {
    if (!(a.ring() == b.ring()))
        throw RingMismatchError("rings over " + a.ring().name() + " and " + b.ring().name());
}

std::string factor_id(const std::string& id) {
    return id.find_first_of("*#.") == std::string::npos ? id : "(" + id + ")";
}

} // namespace

PresentedGradedRing tensor_ring(const PresentedGradedRing& a, const PresentedGradedRing& b) {
    require_same_ring(a, b);
    PresentedGradedRing out(a.ring(), a.top_degree() + b.top_degree());
    const std::size_t na = a.size() + 1, nb = b.size() + 1;
    // index[x][y] for extended indices; the (0,0) slot is the unit.
    std::vector<std::vector<std::size_t>> index(na, std::vector<std::size_t>(nb, SIZE_MAX));
    for (std::size_t x = 1; x < na; ++x) {
        const auto& e = a.basis()[x - 1];
        index[x][0] = out.add_basis_element({factor_id(e.id) + "*1", e.degree, {}, e.sphere_representable});
    }
    for (std::size_t y = 1; y < nb; ++y) {
        const auto& e = b.basis()[y - 1];
        index[0][y] = out.add_basis_element({"1*" + factor_id(e.id), e.degree, {}, e.sphere_representable});
    }
    for (std::size_t x = 1; x < na; ++x)
        for (std::size_t y = 1; y < nb; ++y)
            index[x][y] = out.add_basis_element({factor_id(a.basis()[x - 1].id) + "*" + factor_id(b.basis()[y - 1].id),
                                                 a.basis()[x - 1].degree + b.basis()[y - 1].degree, {}, false});

    std::vector<std::pair<std::size_t, std::size_t>> coords(out.size());
    for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < nb; ++y)
            if (index[x][y] != SIZE_MAX) coords[index[x][y]] = {x, y};

    for (std::size_t u = 0; u < out.size(); ++u)
        for (std::size_t v = u; v < out.size(); ++v) {
            auto [a1, b1] = coords[u];
            auto [a2, b2] = coords[v];
            SparseVector pa = extended_product(a, a1, a2);
            SparseVector pb = extended_product(b, b1, b2);
            if (pa.empty() || pb.empty()) continue;
            int sign = (extended_degree(b, b1) * extended_degree(a, a2)) % 2 ? -1 : 1;
            SparseVector value;
            for (const auto& [i, ci] : pa)
                for (const auto& [j, cj] : pb) value.emplace_back(index[i][j], ci * cj * sign);
            out.set_product(u, v, std::move(value));
        }
    return out;
}

PresentedGradedRing connsum_ring(const PresentedGradedRing& a1, const PresentedGradedRing& a2) {
    require_same_ring(a1, a2);
    const int d = a1.top_degree();
    if (d != a2.top_degree())
        throw PreconditionError("connected sum of rings with top degrees " + std::to_string(d) + " and " +
                                std::to_string(a2.top_degree()));
    if (d < 1) throw PreconditionError("connected sum needs positive top degree");
    if (a1.rank(d) != 1 || a2.rank(d) != 1)
        throw PreconditionError("connected sum needs top pieces free of rank 1");

    PresentedGradedRing out(a1.ring(), d);
    const PresentedGradedRing* sides[2] = {&a1, &a2};
    const char* prefix[2] = {"L.", "R."};
    std::vector<std::size_t> map[2];
    for (int s = 0; s < 2; ++s) {
        map[s].assign(sides[s]->size(), SIZE_MAX);
        for (std::size_t i = 0; i < sides[s]->size(); ++i) {
            const auto& e = sides[s]->basis()[i];
            if (e.degree == d) continue;
            map[s][i] = out.add_basis_element({prefix[s] + e.id, e.degree, e.provenance, e.sphere_representable});
        }
    }
    const std::size_t top = out.add_basis_element({"top", d, {}, false});
    for (int s = 0; s < 2; ++s) {
        const auto& r = *sides[s];
        // a1 ~ -a2 in the quotient: the right-hand top class reads as -top.
        const int top_sign = s == 0 ? 1 : -1;
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t j = i; j < r.size(); ++j) {
                if (map[s][i] == SIZE_MAX || map[s][j] == SIZE_MAX) continue;
                SparseVector value;
                for (const auto& [k, c] : r.product(i, j)) {
                    if (r.basis()[k].degree == d)
                        value.emplace_back(top, c * top_sign);
                    else
                        value.emplace_back(map[s][k], c);
                }
                if (!value.empty()) out.set_product(map[s][i], map[s][j], std::move(value));
            }
    }
    return out;
}

PresentedGradedRing cps_cohomology(const ManifoldExpr& e, const CoefficientRing& ring) {
    auto bad = e.violations();
    if (!bad.empty()) throw PreconditionError("invalid manifold expression: " + bad.front());
    switch (e.kind()) {
    case ManifoldExpr::Kind::Sphere: return sphere_ring(e.sphere_dim(), ring);
    case ManifoldExpr::Kind::Product:
        return tensor_ring(cps_cohomology(e.left(), ring), cps_cohomology(e.right(), ring));
    case ManifoldExpr::Kind::ConnSum:
        return connsum_ring(cps_cohomology(e.left(), ring), cps_cohomology(e.right(), ring));
    }
    throw PreconditionError("unknown manifold expression");
}

PresentedGradedRing gcps_cohomology(const GcpsExpr& e, const CoefficientRing& ring) {
    std::vector<PresentedGradedRing> parts;
    int top = 0;
    for (const auto& s : e.summands) {
        parts.push_back(cps_cohomology(s, ring));
        top = std::max(top, parts.back().top_degree());
    }
    PresentedGradedRing out(ring, top);
    const bool prefixed = parts.size() > 1;
    for (std::size_t w = 0; w < parts.size(); ++w) {
        const auto& r = parts[w];
        std::vector<std::size_t> map(r.size());
        for (std::size_t i = 0; i < r.size(); ++i) {
            auto el = r.basis()[i];
            if (prefixed) el.id = "w" + std::to_string(w + 1) + "." + el.id;
            map[i] = out.add_basis_element(std::move(el));
        }
        for (const auto& [key, value] : r.product_table()) {
            if (key.first > key.second) continue;
            SparseVector v;
            for (const auto& [k, c] : value) v.emplace_back(map[k], c);
            out.set_product(map[key.first], map[key.second], std::move(v));
        }
    }
    return out;
}

PresentedGradedRing truncate(const PresentedGradedRing& a, int max_degree) {
    PresentedGradedRing out(a.ring(), std::max(0, std::min(a.top_degree(), max_degree)));
    std::vector<std::size_t> map(a.size(), SIZE_MAX);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.basis()[i].degree <= max_degree) map[i] = out.add_basis_element(a.basis()[i]);
    for (const auto& [key, value] : a.product_table()) {
        if (key.first > key.second || map[key.first] == SIZE_MAX || map[key.second] == SIZE_MAX) continue;
        SparseVector v;
        for (const auto& [k, c] : value)
            if (map[k] != SIZE_MAX) v.emplace_back(map[k], c);
        if (!v.empty()) out.set_product(map[key.first], map[key.second], std::move(v));
    }
    return out;
}

PresentedGradedRing rescale_basis_element(const PresentedGradedRing& a, std::size_t index, const Rational& unit) {
    if (index >= a.size()) throw PreconditionError("rescale index out of range");
    Rational u = a.normalize(unit);
    if (u == 0 || (a.ring().kind() == CoefficientRing::Kind::Integers && u != 1 && u != -1))
        throw PreconditionError("rescaling factor is not a unit of " + a.ring().name());
    Rational inv = 1 / u;
    PresentedGradedRing out(a.ring(), a.top_degree());
    for (const auto& e : a.basis()) out.add_basis_element(e);
    for (const auto& [key, value] : a.product_table()) {
        if (key.first > key.second) continue;
        Rational factor = 1;
        if (key.first == index) factor *= u;
        if (key.second == index) factor *= u;
        SparseVector v;
        for (const auto& [k, c] : value) v.emplace_back(k, c * factor * (k == index ? inv : Rational(1)));
        out.set_product(key.first, key.second, std::move(v));
    }
    return out;
}

Rational CoordinateFunctional::operator()(const std::vector<Rational>& coordinates) const {
    if (coordinates.size() != size_)
        throw PreconditionError("functional on a rank-" + std::to_string(size_) + " piece applied to " +
                                std::to_string(coordinates.size()) + " coordinates");
    return coordinates[index_];
}

CoordinateFunctional dual_basis_functional(const GradedModule& module, int degree, std::size_t generator) {
    ModulePiece piece = module.piece(degree);
    if (generator >= piece.free_rank + piece.torsion.size())
        throw PreconditionError("generator " + std::to_string(generator) + " out of range in degree " +
                                std::to_string(degree));
    if (generator >= piece.free_rank)
        throw PreconditionError("generator " + std::to_string(generator) + " in degree " + std::to_string(degree) +
                                " is a torsion element and has no dual");
    return CoordinateFunctional(degree, generator, piece.free_rank);
}

CoordinateFunctional dual_basis_functional(const PresentedGradedRing& ring, std::size_t basis_index) {
    if (basis_index >= ring.size()) throw PreconditionError("basis index out of range");
    int degree = ring.basis()[basis_index].degree;
    auto idx = ring.degree_indices(degree);
    auto pos = static_cast<std::size_t>(std::find(idx.begin(), idx.end(), basis_index) - idx.begin());
    return CoordinateFunctional(degree, pos, idx.size());
}

namespace {

PairingInvariant pairing_unchecked(const PresentedGradedRing& a, int p, int q) {
    PairingInvariant inv;
    inv.p = p;
    inv.q = q;
    inv.ring = a.ring();
    auto rows = a.degree_indices(p + q);
    auto left = a.degree_indices(p);
    auto right = a.degree_indices(q);
    std::vector<std::size_t> row_of(a.size(), SIZE_MAX);
    for (std::size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = r;
    const std::size_t ncols = left.size() * right.size();
    if (rows.empty() || ncols == 0) return inv;

    FieldMatrix m(rows.size(), ncols);
    std::size_t col = 0;
    for (auto i : left)
        for (auto j : right) {
            for (const auto& [k, c] : a.product(i, j)) m(row_of[k], col) = c;
            ++col;
        }
    if (a.ring().is_field()) {
        inv.rank = field_reduce(m, a.ring()).rank;
        return inv;
    }
    IntMatrix z(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (boost::multiprecision::denominator(m(r, c)) != 1)
                throw PreconditionError("non-integral structure constant over Z");
            z(r, c) = boost::multiprecision::numerator(m(r, c));
        }
    inv.divisors = elementary_divisors(z);
    inv.rank = inv.divisors.size();
    return inv;
}

std::string divisors_text(const std::vector<BigInt>& d) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i];
    os << "]";
    return os.str();
}

} // namespace

bool PairingInvariant::same_as(const PairingInvariant& o) const {
    return ring == o.ring && p == o.p && q == o.q && rank == o.rank && divisors == o.divisors;
}

std::string PairingInvariant::describe() const {
    std::string head = "(" + std::to_string(p) + "," + std::to_string(q) + ") ";
    if (ring.is_field()) return head + "rank " + std::to_string(rank);
    return head + "divisors " + divisors_text(divisors);
}

PairingInvariant pairing_invariants(const PresentedGradedRing& a, int p, int q) {
    if (p < 1 || q < 1 || p + q > a.top_degree())
        throw PreconditionError("pairing degrees (" + std::to_string(p) + "," + std::to_string(q) +
                                ") out of range for top degree " + std::to_string(a.top_degree()));
    return pairing_unchecked(a, p, q);
}

InvariantComparison compare_invariants(const PresentedGradedRing& a, const PresentedGradedRing& b) {
    require_same_ring(a, b);
    InvariantComparison out;
    const int top = std::max(a.top_degree(), b.top_degree());
    for (int k = 0; k <= top; ++k) {
        if (a.rank(k) != b.rank(k)) {
            out.verdict = InvariantComparison::Verdict::Distinguished;
            out.witness = "degree " + std::to_string(k) + ": rank " + std::to_string(a.rank(k)) + " vs " +
                          std::to_string(b.rank(k));
            return out;
        }
    }
    for (int p = 1; p < top; ++p)
        for (int q = p; p + q <= top; ++q) {
            auto ia = pairing_unchecked(a, p, q);
            auto ib = pairing_unchecked(b, p, q);
            if (!ia.same_as(ib)) {
                out.verdict = InvariantComparison::Verdict::Distinguished;
                out.witness = "pairing " + ia.describe() + " vs " + ib.describe();
                out.pairing_witness = std::make_pair(ia, ib);
                return out;
            }
        }
    return out;
}

} // namespace reeb
