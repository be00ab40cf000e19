#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <variant>
#include <vector>

#include "polyround/polytope.hpp"
#include "polyround/svd.hpp"

namespace polyround {

struct ConstantField {
    Eigen::VectorXd value;  // J(y) = value
};

struct AffineField {
    Eigen::VectorXd value_at_origin;  // J(y) = value_at_origin + gradient * y
    Eigen::MatrixXd gradient;
};

struct SampledField {
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> evaluate;
};

using FieldSpec = std::variant<ConstantField, AffineField, SampledField>;

// Facet fluxes phi_i = integral over F_i of J(y).a_i, the facet measures, and
// the measure-normalized fluxes phi_hat_i = phi_i / sigma(F_i).
struct FluxData {
    Eigen::VectorXd phi;
    Eigen::VectorXd facet_measures;
    Eigen::VectorXd phi_hat;
};

struct ReconstructionResult {
    Eigen::VectorXd J_recovered;
    double residual_norm = 0.0;   // |A J - phi_hat|_2
    double gram_condition = 0.0;  // sigma_1^2 / sigma_d^2
};

namespace detail {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]; exact through degree 15.
inline constexpr std::array<double, 8> kGaussNodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
inline constexpr std::array<double, 8> kGaussWeights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// 7-point degree-5 triangle rule in barycentric coordinates.
struct TriangleNode {
    double b0, b1, b2, weight;
};
inline const std::array<TriangleNode, 7>& triangle_rule() {
    static const std::array<TriangleNode, 7> rule = [] {
        const double w0 = 9.0 / 40.0;
        const double a1 = 0.0597158717897698, b1 = 0.4701420641051151;
        const double w1 = 0.1323941527885062;  // (155 + sqrt(15)) / 1200
        const double a2 = 0.7974269853530873, b2 = 0.1012865073234563;
        const double w2 = 0.1259391805448271;  // (155 - sqrt(15)) / 1200
        return std::array<TriangleNode, 7>{{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w0},
                                            {a1, b1, b1, w1},
                                            {b1, a1, b1, w1},
                                            {b1, b1, a1, w1},
                                            {a2, b2, b2, w2},
                                            {b2, a2, b2, w2},
                                            {b2, b2, a2, w2}}};
    }();
    return rule;
}

inline double sampled_facet_flux(const FacetGeometry& fg, const Eigen::VectorXd& normal,
                                 const SampledField& field) {
    double flux = 0.0;
    if (normal.size() == 2) {
        const Eigen::VectorXd& p0 = fg.vertices.front();
        const Eigen::VectorXd& p1 = fg.vertices.back();
        const double half_len = 0.5 * (p1 - p0).norm();
        for (int q = 0; q < 8; ++q) {
            const double t = kGaussNodes[q];
            const Eigen::VectorXd y = 0.5 * (1.0 - t) * p0 + 0.5 * (1.0 + t) * p1;
            flux += kGaussWeights[q] * half_len * field.evaluate(y).dot(normal);
        }
        return flux;
    }
    // d = 3: integrate over the fan triangulation of the ordered polygon
    const Eigen::VectorXd& v0 = fg.vertices[0];
    for (std::size_t j = 1; j + 1 < fg.vertices.size(); ++j) {
        const Eigen::VectorXd& v1 = fg.vertices[j];
        const Eigen::VectorXd& v2 = fg.vertices[j + 1];
        const Eigen::Vector3d e1 = v1 - v0, e2 = v2 - v0;
        const double area = 0.5 * e1.cross(e2).norm();
        for (const auto& node : triangle_rule()) {
            const Eigen::VectorXd y = node.b0 * v0 + node.b1 * v1 + node.b2 * v2;
            flux += node.weight * area * field.evaluate(y).dot(normal);
        }
    }
    return flux;
}

}  // namespace detail

// Facet flux integrals of the field over every facet of a bounded,
// full-dimensional, irredundant polytope in d = 2 or 3. Constant and affine
// fields integrate exactly through the facet centroid; sampled fields use
// fixed quadrature (8-point Gauss-Legendre edges, degree-5 triangle rule).
inline FluxData facet_flux(const HPolytope& p, const FieldSpec& field) {
    const int d = p.dim();
    if (d != 2 && d != 3) throw UnsupportedDimension(d, "facet flux");
    const int m = p.num_constraints();

    const VertexSet vs = enumerate_vertices(p);
    FluxData data;
    data.phi.resize(m);
    data.facet_measures.resize(m);
    data.phi_hat.resize(m);

    for (int i = 0; i < m; ++i) {
        const FacetGeometry fg = facet_geometry(p, vs, i);
        const Eigen::VectorXd normal = p.normals.row(i).transpose();
        data.facet_measures(i) = fg.measure;
        if (const auto* cf = std::get_if<ConstantField>(&field)) {
            data.phi(i) = cf->value.dot(normal) * fg.measure;
        } else if (const auto* af = std::get_if<AffineField>(&field)) {
            // the integrand is affine over the facet, so the centroid value is exact
            const Eigen::VectorXd j_at_centroid = af->value_at_origin + af->gradient * fg.centroid;
            data.phi(i) = j_at_centroid.dot(normal) * fg.measure;
        } else {
            data.phi(i) = detail::sampled_facet_flux(fg, normal, std::get<SampledField>(field));
        }
        data.phi_hat(i) = data.phi(i) / data.facet_measures(i);
    }
    return data;
}

// Least-squares recovery of the constant field J from A J = phi_hat via the
// normal equations A^T A J = A^T phi_hat (Cholesky on the d x d Gram matrix).
inline ReconstructionResult reconstruct(const HPolytope& p, const FluxData& data) {
    if (data.phi_hat.size() != p.num_constraints())
        throw ValidationError("flux vector length does not match the constraint count");

    const SvdResult s = svd(p.normals);
    const double smin = s.sigma_min();
    if (smin <= 1e-10) throw SingularGram(smin);

    const Eigen::MatrixXd gram = p.normals.transpose() * p.normals;
    const Eigen::VectorXd rhs = p.normals.transpose() * data.phi_hat;
    ReconstructionResult res;
    res.J_recovered = Eigen::LLT<Eigen::MatrixXd>(gram).solve(rhs);
    res.residual_norm = (p.normals * res.J_recovered - data.phi_hat).norm();
    const double smax = s.singular_values(0);
    res.gram_condition = (smax * smax) / (smin * smin);
    return res;
}

}  // namespace polyround
