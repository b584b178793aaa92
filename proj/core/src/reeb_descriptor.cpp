#include "reeb/reeb_descriptor.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "json_io.hpp"

namespace reeb {

std::string to_string(RecordKind kind) {
    switch (kind) {
    case RecordKind::M: return "M";
    case RecordKind::S: return "S";
    case RecordKind::NormalM: return "normal-M";
    case RecordKind::NormalS: return "normal-S";
    case RecordKind::Point: return "point";
    }
    return "?";
}

RecordKind parse_record_kind(const std::string& text) {
    for (auto k : {RecordKind::M, RecordKind::S, RecordKind::NormalM, RecordKind::NormalS, RecordKind::Point})
        if (to_string(k) == text) return k;
    throw SchemaError("unknown record kind '" + text + "'");
}

namespace {

bool handles_valid(const ReebDescriptor& d) {
    for (const auto& h : d.base.handles)
        if (!h.violations().empty()) return false;
    return true;
}

} // namespace

PresentedGradedRing base_ring(const ReebDescriptor& d, const CoefficientRing& ring) {
    PresentedGradedRing raw = gcps_cohomology(GcpsExpr{d.base.handles}, ring);
    PresentedGradedRing out(ring, raw.top_degree());
    int nu = 0, t = 0;
    for (const auto& e : raw.basis()) {
        std::string id = e.sphere_representable ? "nu" + std::to_string(++nu) : "t" + std::to_string(++t);
        out.add_basis_element({id, e.degree, {Provenance::Kind::Base, -1, -1}, e.sphere_representable});
    }
    for (const auto& [key, value] : raw.product_table())
        if (key.first <= key.second) out.set_product(key.first, key.second, value);
    return out;
}

std::vector<BaseClass> base_classes(const ReebDescriptor& d) {
    auto ring = base_ring(d, CoefficientRing::integers());
    std::vector<std::size_t> handle_of;
    for (std::size_t h = 0; h < d.base.handles.size(); ++h) {
        auto r = cps_cohomology(d.base.handles[h], CoefficientRing::integers());
        handle_of.insert(handle_of.end(), r.size(), h);
    }
    std::vector<BaseClass> out;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& e = ring.basis()[i];
        out.push_back({e.id, e.degree, e.sphere_representable, handle_of[i]});
    }
    return out;
}

std::vector<std::pair<std::string, int>> base_sphere_classes(const ReebDescriptor& d) {
    std::vector<std::pair<std::string, int>> out;
    for (const auto& c : base_classes(d))
        if (c.sphere_representable) out.emplace_back(c.id, c.degree);
    return out;
}

std::vector<std::string> validate(const ReebDescriptor& d) {
    std::vector<std::string> out;
    if (d.n < 2) out.push_back("n = " + std::to_string(d.n) + " < 2");
    for (std::size_t h = 0; h < d.base.handles.size(); ++h) {
        const auto& e = d.base.handles[h];
        std::string where = "base.handles[" + std::to_string(h) + "]";
        for (const auto& v : e.violations()) out.push_back(where + ": " + v);
        if (e.violations().empty() && (e.dimension() < 1 || e.dimension() > d.n - 1))
            out.push_back(where + ": core dimension " + std::to_string(e.dimension()) + " outside [1, n-1]");
    }
    std::vector<BaseClass> classes;
    if (handles_valid(d)) classes = base_classes(d);

    for (std::size_t r = 0; r < d.records.size(); ++r) {
        const auto& rec = d.records[r];
        std::string where = "records[" + std::to_string(r) + "]";
        if ((rec.kind == RecordKind::NormalM || rec.kind == RecordKind::NormalS) && rec.spheres.size() != 1)
            out.push_back(where + ": normal record needs exactly one sphere, has " +
                          std::to_string(rec.spheres.size()));
        if (rec.kind == RecordKind::Point && !rec.spheres.empty())
            out.push_back(where + ": point record must have no spheres");
        for (std::size_t s = 0; s < rec.spheres.size(); ++s) {
            const auto& sp = rec.spheres[s];
            std::string at = where + ".spheres[" + std::to_string(s) + "]";
            if (sp.dim < 0) {
                out.push_back(at + ": negative dimension");
                continue;
            }
            if (sp.dim == 0) {
                if (!sp.coefficients.empty()) out.push_back(at + ": a 0-dimensional sphere carries no coefficients");
                continue;
            }
            if (sp.dim > d.n - 2)
                out.push_back(at + ": dim " + std::to_string(sp.dim) + " > n-2 = " + std::to_string(d.n - 2));
            for (const auto& [id, value] : sp.coefficients) {
                auto it = std::find_if(classes.begin(), classes.end(), [&](const BaseClass& c) { return c.id == id; });
                if (it == classes.end()) {
                    out.push_back(at + ": unknown class id '" + id + "'");
                } else if (!it->sphere_representable) {
                    out.push_back(at + ": class '" + id + "' is not sphere-representable");
                } else if (it->degree != sp.dim) {
                    out.push_back(at + ": degree mismatch: class '" + id + "' has degree " +
                                  std::to_string(it->degree) + ", sphere has dim " + std::to_string(sp.dim));
                }
            }
        }
    }
    return out;
}

void require_valid(const ReebDescriptor& d) {
    auto v = validate(d);
    if (v.empty()) return;
    std::string msg = "invalid descriptor:";
    for (const auto& s : v) msg += "\n  " + s;
    throw PreconditionError(msg);
}

namespace {

const std::regex& class_id_pattern() {
    static const std::regex re("^(nu|t)([1-9][0-9]*)$");
    return re;
}

std::string shifted_id(const std::string& id, int nu_shift, int t_shift) {
    std::smatch m;
    if (!std::regex_match(id, m, class_id_pattern())) return id;
    int k = std::stoi(m[2]);
    return m[1].str() + std::to_string(k + (m[1] == "nu" ? nu_shift : t_shift));
}

} // namespace

ReebDescriptor connected_sum_descriptors(const ReebDescriptor& d1, const ReebDescriptor& d2) {
    if (d1.n != d2.n)
        throw PreconditionError("connected sum of descriptors with n = " + std::to_string(d1.n) + " and " +
                                std::to_string(d2.n));
    int nu = 0, t = 0;
    for (const auto& c : base_classes(d1)) (c.sphere_representable ? nu : t)++;
    ReebDescriptor out = d1;
    out.base.handles.insert(out.base.handles.end(), d2.base.handles.begin(), d2.base.handles.end());
    for (auto rec : d2.records) {
        for (auto& sp : rec.spheres) {
            std::map<std::string, std::int64_t> renamed;
            for (const auto& [id, v] : sp.coefficients) renamed[shifted_id(id, nu, t)] = v;
            sp.coefficients = std::move(renamed);
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

ReebDescriptor parse_descriptor(const std::string& text) {
    using namespace json_io;
    json j = parse_document(text);
    require_object(j, "$");
    reject_unknown(j, "$", {"n", "base", "records"});
    ReebDescriptor d;
    d.n = static_cast<int>(as_int(field(j, "$", "n"), "$.n"));

    const json& base = field(j, "$", "base");
    require_object(base, "$.base");
    reject_unknown(base, "$.base", {"handles"});
    if (base.contains("handles")) {
        const auto& hs = as_array(base["handles"], "$.base.handles");
        for (std::size_t i = 0; i < hs.size(); ++i)
            d.base.handles.push_back(manifold_from_json(hs[i], "$.base.handles[" + std::to_string(i) + "]"));
    }

    if (j.contains("records")) {
        const auto& rs = as_array(j["records"], "$.records");
        for (std::size_t r = 0; r < rs.size(); ++r) {
            std::string at = "$.records[" + std::to_string(r) + "]";
            require_object(rs[r], at);
            reject_unknown(rs[r], at, {"kind", "spheres"});
            BubblingRecord rec;
            std::string kind = as_string(field(rs[r], at, "kind"), at + ".kind");
            try {
                rec.kind = parse_record_kind(kind);
            } catch (const SchemaError&) {
                throw SchemaError(at + ".kind: unknown record kind '" + kind + "'");
            }
            if (rs[r].contains("spheres")) {
                const auto& ss = as_array(rs[r]["spheres"], at + ".spheres");
                for (std::size_t s = 0; s < ss.size(); ++s) {
                    std::string sat = at + ".spheres[" + std::to_string(s) + "]";
                    require_object(ss[s], sat);
                    reject_unknown(ss[s], sat, {"dim", "coefficients"});
                    SphereSpec sp;
                    sp.dim = static_cast<int>(as_int(field(ss[s], sat, "dim"), sat + ".dim"));
                    if (ss[s].contains("coefficients")) {
                        const auto& cs = ss[s]["coefficients"];
                        require_object(cs, sat + ".coefficients");
                        for (auto it = cs.begin(); it != cs.end(); ++it) {
                            std::string cat = sat + ".coefficients." + it.key();
                            if (!std::regex_match(it.key(), class_id_pattern()))
                                throw SchemaError(cat + ": malformed class id '" + it.key() + "'");
                            sp.coefficients[it.key()] = as_int(it.value(), cat);
                        }
                    }
                    rec.spheres.push_back(std::move(sp));
                }
            }
            d.records.push_back(std::move(rec));
        }
    }
    return d;
}

std::string serialize_descriptor(const ReebDescriptor& d) {
    using json_io::json;
    json handles = json::array();
    for (const auto& h : d.base.handles) handles.push_back(json_io::manifold_to_json(h));
    json records = json::array();
    for (const auto& rec : d.records) {
        json spheres = json::array();
        for (const auto& sp : rec.spheres) {
            json coeffs = json::object();
            for (const auto& [id, v] : sp.coefficients) coeffs[id] = v;
            spheres.push_back(json{{"dim", sp.dim}, {"coefficients", coeffs}});
        }
        records.push_back(json{{"kind", to_string(rec.kind)}, {"spheres", spheres}});
    }
    json j{{"n", d.n}, {"base", json{{"handles", handles}}}, {"records", records}};
    return j.dump(2) + "\n";
}

ReebDescriptor load_descriptor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read descriptor file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_descriptor(buf.str());
}

std::string summary(const ReebDescriptor& d) {
    std::ostringstream os;
    os << "n=" << d.n << " base[";
    for (std::size_t i = 0; i < d.base.handles.size(); ++i) os << (i ? "," : "") << d.base.handles[i].to_string();
    os << "]";
    for (const auto& rec : d.records) {
        os << " " << to_string(rec.kind) << "{";
        for (std::size_t s = 0; s < rec.spheres.size(); ++s) {
            const auto& sp = rec.spheres[s];
            os << (s ? ";" : "") << sp.dim;
            for (const auto& [id, v] : sp.coefficients) os << ":" << id << "*" << v;
        }
        os << "}";
    }
    return os.str();
}

} // namespace reeb
