#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "polyround/audit.hpp"
#include "polyround/flux.hpp"
#include "polyround/roundness.hpp"
#include "polyround/types.hpp"

namespace polyround::io {

using json = nlohmann::ordered_json;

namespace detail {

inline json vector_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

inline json matrix_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
    return rows;
}

inline Eigen::VectorXd vector_from(const json& arr, const char* what) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError(std::string(what) + " must be a non-empty array");
    Eigen::VectorXd v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) throw ValidationError(std::string(what) + " must be numeric");
        v(static_cast<int>(i)) = arr[i].get<double>();
    }
    return v;
}

inline Eigen::MatrixXd matrix_from(const json& rows, const char* what) {
    if (!rows.is_array() || rows.empty())
        throw ValidationError(std::string(what) + " must be a non-empty array of rows");
    const Eigen::VectorXd first = vector_from(rows[0], what);
    Eigen::MatrixXd m(rows.size(), first.size());
    m.row(0) = first.transpose();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const Eigen::VectorXd row = vector_from(rows[i], what);
        if (row.size() != first.size())
            throw ValidationError(std::string(what) + " rows have inconsistent lengths");
        m.row(static_cast<int>(i)) = row.transpose();
    }
    return m;
}

inline void dump_number(std::string& out, double x) {
    if (!std::isfinite(x)) {
        out += "null";
        return;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

inline void dump_value(std::string& out, const json& v, int indent) {
    const std::string pad(2 * indent, ' ');
    const std::string pad_in(2 * (indent + 1), ' ');
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) { out += "{}"; return; }
            out += "{\n";
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + json(it.key()).dump() + ": ";
                dump_value(out, it.value(), indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (v.empty()) { out += "[]"; return; }
            out += "[\n";
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(out, item, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case json::value_t::number_float:
            dump_number(out, v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

}  // namespace detail

// Serialize with floating-point numbers at 17 significant digits, so values
// round-trip exactly and reruns diff byte-identically.
inline std::string dump(const json& v) {
    std::string out;
    detail::dump_value(out, v, 0);
    out += "\n";
    return out;
}

// ---- polytope ----------------------------------------------------------

// Accepts {"dim", "normals", "offsets"} (normalized on load) or
// {"dim", "simplex_vertices"} with d+1 vertices.
inline HPolytope load_polytope(const json& doc) {
    if (!doc.is_object()) throw ValidationError("polytope document must be a JSON object");
    if (!doc.contains("dim") || !doc["dim"].is_number_integer())
        throw ValidationError("polytope document needs an integer \"dim\"");
    const int d = doc["dim"].get<int>();
    if (d < 1) throw ValidationError("\"dim\" must be >= 1");

    if (doc.contains("simplex_vertices")) {
        const Eigen::MatrixXd vertices = detail::matrix_from(doc["simplex_vertices"],
                                                             "simplex_vertices");
        if (vertices.cols() != d || vertices.rows() != d + 1)
            throw ValidationError("simplex_vertices must be a (d+1) x d matrix");
        return simplex_to_hrep(vertices);
    }
    if (!doc.contains("normals") || !doc.contains("offsets"))
        throw ValidationError("polytope document needs \"normals\" and \"offsets\"");
    const Eigen::MatrixXd normals = detail::matrix_from(doc["normals"], "normals");
    const Eigen::VectorXd offsets = detail::vector_from(doc["offsets"], "offsets");
    if (normals.cols() != d) throw ValidationError("\"normals\" row length must equal dim");
    if (offsets.size() != normals.rows())
        throw ValidationError("\"offsets\" length must equal the number of normal rows");
    return normalize(normals, offsets);
}

inline json polytope_json(const HPolytope& p) {
    json doc;
    doc["dim"] = p.dim();
    doc["normals"] = detail::matrix_json(p.normals);
    doc["offsets"] = detail::vector_json(p.offsets);
    return doc;
}

// ---- roundness reports --------------------------------------------------

inline json report_json(const RoundnessReport& rep) {
    json doc;
    doc["inradius"] = rep.inradius;
    doc["center"] = detail::vector_json(rep.chebyshev_center);
    doc["diameter"] = rep.diameter;
    doc["delta"] = rep.delta;
    doc["sigma_min"] = rep.sigma_min;
    doc["bound_margin"] = rep.bound_margin;
    doc["full_dimensional"] = rep.full_dimensional;
    return doc;
}

inline RoundnessReport report_from_json(const json& doc) {
    RoundnessReport rep;
    rep.inradius = doc.at("inradius").get<double>();
    rep.chebyshev_center = detail::vector_from(doc.at("center"), "center");
    rep.diameter = doc.at("diameter").get<double>();
    rep.delta = doc.at("delta").get<double>();
    rep.sigma_min = doc.at("sigma_min").get<double>();
    rep.bound_margin = doc.at("bound_margin").get<double>();
    rep.full_dimensional = doc.at("full_dimensional").get<bool>();
    return rep;
}

inline json witness_json(const BoundWitness& w) {
    json doc;
    doc["v_d"] = detail::vector_json(w.v_d);
    doc["lambda1"] = w.lambda1;
    doc["lambda2"] = w.lambda2;
    doc["f"] = detail::vector_json(w.f);
    doc["g"] = detail::vector_json(w.g);
    doc["facet_i"] = w.facet_i;
    doc["facet_j"] = w.facet_j;
    doc["image_f"] = detail::vector_json(w.image_f);
    doc["image_g"] = detail::vector_json(w.image_g);
    doc["b_prime"] = detail::vector_json(w.b_prime);
    doc["lhs_chain"] = w.lhs_chain;
    doc["mid_chain"] = w.mid_chain;
    doc["rhs_chain"] = w.rhs_chain;
    doc["sigma_min"] = w.sigma_min;
    doc["inradius"] = w.inradius;
    doc["diameter"] = w.diameter;
    json checks = json::array();
    for (const auto& c : chain_checks(w)) {
        json entry;
        entry["name"] = c.name;
        entry["pass"] = c.pass;
        entry["lhs"] = c.lhs;
        entry["rhs"] = c.rhs;
        checks.push_back(entry);
    }
    doc["checks"] = checks;
    return doc;
}

inline BoundWitness witness_from_json(const json& doc) {
    BoundWitness w;
    w.v_d = detail::vector_from(doc.at("v_d"), "v_d");
    w.lambda1 = doc.at("lambda1").get<double>();
    w.lambda2 = doc.at("lambda2").get<double>();
    w.f = detail::vector_from(doc.at("f"), "f");
    w.g = detail::vector_from(doc.at("g"), "g");
    w.facet_i = doc.at("facet_i").get<int>();
    w.facet_j = doc.at("facet_j").get<int>();
    w.image_f = detail::vector_from(doc.at("image_f"), "image_f");
    w.image_g = detail::vector_from(doc.at("image_g"), "image_g");
    w.b_prime = detail::vector_from(doc.at("b_prime"), "b_prime");
    w.lhs_chain = doc.at("lhs_chain").get<double>();
    w.mid_chain = doc.at("mid_chain").get<double>();
    w.rhs_chain = doc.at("rhs_chain").get<double>();
    w.sigma_min = doc.at("sigma_min").get<double>();
    w.inradius = doc.at("inradius").get<double>();
    w.diameter = doc.at("diameter").get<double>();
    return w;
}

// ---- flux ----------------------------------------------------------------

// {"kind": "constant", "J0": [...]} or {"kind": "affine", "J0": [...], "M": [[...]]}
inline FieldSpec load_field(const json& doc, int dim) {
    if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
        throw ValidationError("field document needs a string \"kind\"");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "constant") {
        const Eigen::VectorXd j0 = detail::vector_from(doc.at("J0"), "J0");
        if (j0.size() != dim) throw ValidationError("\"J0\" length must equal dim");
        return ConstantField{j0};
    }
    if (kind == "affine") {
        const Eigen::VectorXd j0 = detail::vector_from(doc.at("J0"), "J0");
        const Eigen::MatrixXd m = detail::matrix_from(doc.at("M"), "M");
        if (j0.size() != dim || m.rows() != dim || m.cols() != dim)
            throw ValidationError("affine field needs d-vector \"J0\" and d x d \"M\"");
        return AffineField{j0, m};
    }
    throw ValidationError("unknown field kind \"" + kind + "\" (expected constant or affine)");
}

inline json reconstruction_json(const FluxData& data, const ReconstructionResult& res) {
    json doc;
    doc["phi"] = detail::vector_json(data.phi);
    doc["J"] = detail::vector_json(res.J_recovered);
    doc["residual"] = res.residual_norm;
    doc["gram_condition"] = res.gram_condition;
    return doc;
}

// ---- meshes ---------------------------------------------------------------

// {"dim": d, "cells": [{"simplex_vertices": ...} | {"normals": ..., "offsets": ...}, ...]}
inline std::vector<MeshCell> load_mesh(const json& doc) {
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("cells"))
        throw ValidationError("mesh document needs \"dim\" and \"cells\"");
    const int d = doc["dim"].get<int>();
    if (!doc["cells"].is_array()) throw ValidationError("\"cells\" must be an array");

    std::vector<MeshCell> cells;
    cells.reserve(doc["cells"].size());
    for (const auto& cell : doc["cells"]) {
        if (cell.contains("simplex_vertices")) {
            const Eigen::MatrixXd v = detail::matrix_from(cell["simplex_vertices"],
                                                          "simplex_vertices");
            if (v.cols() != d || v.rows() != d + 1)
                throw ValidationError("cell simplex_vertices must be a (d+1) x d matrix");
            cells.emplace_back(v);
        } else {
            json wrapped = cell;
            wrapped["dim"] = d;
            cells.emplace_back(load_polytope(wrapped));
        }
    }
    return cells;
}

inline json audit_json(const MeshAuditReport& report) {
    json doc;
    json cells = json::array();
    for (const auto& rec : report.cells) {
        json c;
        c["cell_id"] = rec.cell_id;
        c["delta"] = rec.delta;
        c["inverse_delta"] = rec.inverse_delta;
        c["sigma_min"] = rec.sigma_min;
        c["bound_margin"] = rec.bound_margin;
        c["diameter"] = rec.diameter;
        c["regular"] = rec.regular;
        if (!rec.error.empty()) c["error"] = rec.error;
        cells.push_back(c);
    }
    doc["cells"] = cells;
    json summary;
    summary["min_delta"] = report.min_delta;
    summary["max_inverse_delta"] = report.max_inverse_delta;
    summary["num_irregular"] = report.num_irregular;
    doc["summary"] = summary;
    return doc;
}

inline std::string audit_csv(const MeshAuditReport& report) {
    std::string out = "id,delta,inverse_delta,sigma_min,margin,regular\n";
    char buf[40];
    auto num = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out += buf;
    };
    for (const auto& rec : report.cells) {
        out += std::to_string(rec.cell_id);
        out += ',';
        num(rec.delta);
        out += ',';
        num(rec.inverse_delta);
        out += ',';
        num(rec.sigma_min);
        out += ',';
        num(rec.bound_margin);
        out += ',';
        out += rec.regular ? "true" : "false";
        out += '\n';
    }
    return out;
}

}  // namespace polyround::io
