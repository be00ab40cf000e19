#pragma once

#include <stdexcept>
#include <string>

namespace polyround {

// Base class for every error this library throws on purpose.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A constraint row with (near-)zero Euclidean norm cannot be normalized.
struct NearZeroRow : Error {
    int row;
    explicit NearZeroRow(int row_index)
        : Error("constraint row " + std::to_string(row_index) + " has near-zero norm"),
          row(row_index) {}
};

// The system A x <= b has no solution.
struct InfeasibleSystem : Error {
    InfeasibleSystem() : Error("constraint system is infeasible (empty polytope)") {}
};

// Vertex enumeration refused: too many constraints for brute-force subsets.
struct TooManyConstraints : Error {
    explicit TooManyConstraints(int m, int cap)
        : Error("vertex enumeration over " + std::to_string(m) +
                " constraints exceeds the cap of " + std::to_string(cap)) {}
};

// Fewer than d+1 vertices survived enumeration.
struct DegeneratePolytope : Error {
    explicit DegeneratePolytope(int found, int dim)
        : Error("only " + std::to_string(found) + " vertices found for a " +
                std::to_string(dim) + "-polytope (need at least d+1)") {}
};

struct NotEnoughVertices : Error {
    NotEnoughVertices() : Error("diameter needs at least two vertices") {}
};

// Constraint row i does not define a facet of the polytope.
struct NotAFacet : Error {
    int row;
    explicit NotAFacet(int row_index)
        : Error("constraint row " + std::to_string(row_index) + " is not a facet"),
          row(row_index) {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(int dim, const std::string& op)
        : Error(op + " is not supported in dimension " + std::to_string(dim)) {}
};

// The simplex solver stopped making progress within its iteration budget.
struct NumericalStall : Error {
    explicit NumericalStall(int iterations)
        : Error("simplex made no progress after " + std::to_string(iterations) +
                " iterations") {}
};

// The inscribed-ball radius is unbounded, i.e. an unbounded input slipped through.
struct UnboundedRadius : Error {
    UnboundedRadius() : Error("inscribed-ball radius is unbounded") {}
};

// Jacobi SVD failed to reach its off-diagonal threshold within the sweep cap.
struct NoConvergence : Error {
    explicit NoConvergence(const std::string& what) : Error(what) {}
};

// No constraint row has a usable component along the probe direction.
struct DegenerateDirection : Error {
    DegenerateDirection()
        : Error("no constraint bounds the singular direction; numerical failure") {}
};

struct NotFullDimensional : Error {
    NotFullDimensional() : Error("polytope has empty interior (inradius ~ 0)") {}
};

// A^T A is numerically singular; the flux system has no unique solution.
struct SingularGram : Error {
    explicit SingularGram(double sigma_min)
        : Error("Gram matrix is singular (sigma_min = " + std::to_string(sigma_min) + ")") {}
};

struct GenerationFailed : Error {
    explicit GenerationFailed(int attempts)
        : Error("random polytope generation failed after " + std::to_string(attempts) +
                " attempts") {}
};

// Malformed input files or parameter values.
struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(what) {}
};

}  // namespace polyround
