#pragma once

#include "fbp/types.hpp"

namespace fbp {

/// Direct sparse LU solve of A x = b for the nonsymmetric coupled system.
/// The accepted solution satisfies ||A x - b||_2 / ||b||_2 <= 1e-12; a failed
/// bound raises SingularMatrix rather than returning silently. Deterministic
/// for identical input; reentrant (no shared state between calls).
Vec lu_solve(const SpMat& A, const Vec& b);

}  // namespace fbp
