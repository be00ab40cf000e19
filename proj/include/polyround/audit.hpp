#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "polyround/polytope.hpp"
#include "polyround/roundness.hpp"

namespace polyround {

// One audit input cell: either an H-representation or a (d+1) x d matrix of
// simplex vertices (converted internally).
using MeshCell = std::variant<HPolytope, Eigen::MatrixXd>;

// Inscribed-ball regularity thresholds: a cell is regular when
// diam/inrad <= sigma_bar and diam <= diameter_cap.
struct AuditConfig {
    double sigma_bar = 4.0;
    double diameter_cap = 1.0;

    void validate() const {
        if (!(sigma_bar >= 2.0))
            throw ValidationError("sigma_bar must be >= 2 (a ball already has diam/inrad = 2)");
        if (!(diameter_cap > 0.0)) throw ValidationError("diameter_cap must be positive");
    }
};

struct CellRecord {
    int cell_id = 0;
    double delta = std::numeric_limits<double>::quiet_NaN();
    double inverse_delta = std::numeric_limits<double>::quiet_NaN();  // diam / inrad
    double sigma_min = std::numeric_limits<double>::quiet_NaN();
    double bound_margin = std::numeric_limits<double>::quiet_NaN();
    double diameter = std::numeric_limits<double>::quiet_NaN();
    bool regular = false;
    std::string error;  // empty when analysis succeeded
};

struct MeshAuditReport {
    std::vector<CellRecord> cells;
    double min_delta = std::numeric_limits<double>::quiet_NaN();
    double max_inverse_delta = std::numeric_limits<double>::quiet_NaN();
    int num_irregular = 0;
};

// Per-cell roundness audit. Cell failures are recorded in the report instead
// of aborting the batch; input order is preserved.
inline MeshAuditReport audit_mesh(const std::vector<MeshCell>& cells, const AuditConfig& config) {
    config.validate();
    MeshAuditReport report;
    report.cells.reserve(cells.size());

    for (std::size_t c = 0; c < cells.size(); ++c) {
        CellRecord rec;
        rec.cell_id = static_cast<int>(c);
        try {
            HPolytope p = std::holds_alternative<HPolytope>(cells[c])
                              ? std::get<HPolytope>(cells[c])
                              : simplex_to_hrep(std::get<Eigen::MatrixXd>(cells[c]));
            p = remove_redundant(normalize(p));
            const RoundnessReport r = analyze(p);
            rec.delta = r.delta;
            rec.inverse_delta = r.delta > 0.0 ? r.diameter / r.inradius
                                              : std::numeric_limits<double>::infinity();
            rec.sigma_min = r.sigma_min;
            rec.bound_margin = r.bound_margin;
            rec.diameter = r.diameter;
            rec.regular = r.full_dimensional && rec.inverse_delta <= config.sigma_bar &&
                          rec.diameter <= config.diameter_cap;
            if (r.full_dimensional && !(r.bound_margin > 0.0))
                rec.error = "bound self-check failed: delta >= sigma_min";
        } catch (const Error& e) {
            rec.error = e.what();
            rec.regular = false;
        }
        if (!rec.regular) ++report.num_irregular;
        report.cells.push_back(std::move(rec));
    }

    for (const auto& rec : report.cells) {
        if (!rec.error.empty() && std::isnan(rec.delta)) continue;
        if (std::isnan(report.min_delta) || rec.delta < report.min_delta)
            report.min_delta = rec.delta;
        if (std::isnan(report.max_inverse_delta) || rec.inverse_delta > report.max_inverse_delta)
            report.max_inverse_delta = rec.inverse_delta;
    }
    return report;
}

}  // namespace polyround
