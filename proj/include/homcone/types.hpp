#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcone {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base class for all domain errors raised by this library.
class ConeError : public std::runtime_error {
public:
    explicit ConeError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument is not an element of the block space Z_V.
class NotInSpace : public ConeError {
public:
    explicit NotInSpace(const std::string& what = "matrix is not in the block space")
        : ConeError(what) {}
};

/// Argument is not in the open cone P_V.
class NotInCone : public ConeError {
public:
    explicit NotInCone(const std::string& what = "matrix is not in the cone")
        : ConeError(what) {}
};

/// Argument is not in the open dual cone Q_V.
class NotInDualCone : public ConeError {
public:
    explicit NotInDualCone(const std::string& what = "matrix is not in the dual cone")
        : ConeError(what) {}
};

class NotPositiveDefinite : public ConeError {
public:
    explicit NotPositiveDefinite(const std::string& what = "matrix is not positive definite")
        : ConeError(what) {}
};

/// Shape vector violates a precondition (wrong length, nonpositive entry, ...).
class InvalidShape : public ConeError {
public:
    explicit InvalidShape(const std::string& what) : ConeError(what) {}
};

/// Graph does not generate a homogeneous cone; carries a witness subgraph.
class NotHomogeneous : public ConeError {
public:
    enum class Kind { ChordlessCycle, InducedPath };

    NotHomogeneous(Kind kind, std::vector<int> witness, const std::string& what)
        : ConeError(what), kind(kind), witness(std::move(witness)) {}

    Kind kind;
    std::vector<int> witness;  // 1-based vertex labels, in cycle/path order
};

/// Diagnostic only: the dual-realization permutation search failed.
class PermutationNotFound : public ConeError {
public:
    explicit PermutationNotFound(const std::string& what) : ConeError(what) {}
};

/// Malformed input file or string.
class ParseError : public ConeError {
public:
    explicit ParseError(const std::string& what) : ConeError(what) {}
};

class DimensionMismatch : public ConeError {
public:
    explicit DimensionMismatch(const std::string& what) : ConeError(what) {}
};

inline double relative_error(const Matrix& a, const Matrix& b) {
    double denom = std::max(a.norm(), b.norm());
    if (denom == 0.0) return 0.0;
    return (a - b).norm() / denom;
}

inline double relative_error(double a, double b) {
    double denom = std::max(std::abs(a), std::abs(b));
    if (denom == 0.0) return 0.0;
    return std::abs(a - b) / denom;
}

}  // namespace homcone
