#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <stdexcept>
#include <string>

namespace fbp {

using Vec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;  // CSR layout
using Triplet = Eigen::Triplet<double>;
using Index = Eigen::Index;

// Scalar field of position, e.g. problem data f, g, h.
using ScalarField = std::function<double(double, double)>;
// Scalar function of the x-coordinate only, e.g. an initial elevation.
using Profile = std::function<double(double)>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidParams : Error {
  using Error::Error;
};
struct NondegenerateDomainViolated : Error {
  using Error::Error;
};
struct SurfacePenetratesBed : Error {
  using Error::Error;
};
struct TooFewStations : Error {
  using Error::Error;
};
struct MeshFieldMismatch : Error {
  using Error::Error;
};
struct SingularSurfaceBlock : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonpositiveFroude : Error {
  using Error::Error;
};
struct InsufficientHistory : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};

}  // namespace fbp
