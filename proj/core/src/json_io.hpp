#pragma once

// Shared JSON helpers for the document formats (descriptor, plans, reports).

#include <json.hpp>

#include <initializer_list>
#include <string>

#include "reeb/errors.hpp"
#include "reeb/graded_algebra.hpp"

namespace reeb::json_io {

using json = nlohmann::json;

inline json parse_document(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("$: not valid JSON: ") + e.what());
    }
}

inline void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SchemaError(path + ": expected an object");
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw SchemaError(path + "." + it.key() + ": unknown field");
    }
}

inline const json& field(const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(path + "." + key + ": missing field");
    return *it;
}

inline std::int64_t as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) throw SchemaError(path + ": expected an integer");
    return j.get<std::int64_t>();
}

inline const json& as_array(const json& j, const std::string& path) {
    if (!j.is_array()) throw SchemaError(path + ": expected an array");
    return j;
}

inline std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) throw SchemaError(path + ": expected a string");
    return j.get<std::string>();
}

inline ManifoldExpr manifold_from_json(const json& j, const std::string& path) {
    require_object(j, path);
    if (j.size() != 1) throw SchemaError(path + ": expected exactly one of sphere/product/connsum");
    if (j.contains("sphere")) return ManifoldExpr::sphere(static_cast<int>(as_int(j["sphere"], path + ".sphere")));
    const char* key = j.contains("product") ? "product" : j.contains("connsum") ? "connsum" : nullptr;
    if (!key) throw SchemaError(path + "." + j.begin().key() + ": unknown field");
    const auto& arr = as_array(j[key], path + "." + key);
    if (arr.size() != 2) throw SchemaError(path + "." + key + ": expected two operands");
    auto a = manifold_from_json(arr[0], path + "." + key + "[0]");
    auto b = manifold_from_json(arr[1], path + "." + key + "[1]");
    return std::string(key) == "product" ? ManifoldExpr::product(a, b) : ManifoldExpr::connsum(a, b);
}

inline json manifold_to_json(const ManifoldExpr& e) {
    switch (e.kind()) {
    case ManifoldExpr::Kind::Sphere: return json{{"sphere", e.sphere_dim()}};
    case ManifoldExpr::Kind::Product:
        return json{{"product", json::array({manifold_to_json(e.left()), manifold_to_json(e.right())})}};
    case ManifoldExpr::Kind::ConnSum:
        return json{{"connsum", json::array({manifold_to_json(e.left()), manifold_to_json(e.right())})}};
    }
    return json();
}

} // namespace reeb::json_io
