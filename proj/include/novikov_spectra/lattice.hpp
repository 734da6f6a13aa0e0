#pragma once

#include "novikov_spectra/exact.hpp"

#include <optional>
#include <vector>

namespace spectra::lattice {

using IntMatrix = std::vector<std::vector<Integer>>;
using IntVector = std::vector<Integer>;

/// Column-style Hermite reduction of an r x k integer matrix: H = M * U with
/// U unimodular, H lower echelon. Columns `rank..k-1` of H are zero and the
/// matching columns of U span the integer kernel of M.
struct ColumnEchelon {
    IntMatrix h;
    IntMatrix u;            // k x k
    std::vector<int> pivot_row;  // pivot_row[j] for j < rank
    int rank = 0;
};

ColumnEchelon column_echelon(const IntMatrix& m, int cols);

/// Some integer solution of M x = b, or nullopt if none exists.
std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b, int cols);

/// Basis of the integer kernel of M.
std::vector<IntVector> kernel(const IntMatrix& m, int cols);

/// Scales a row of rationals to coprime-free integers sharing one denominator.
/// Returns the common denominator; `out` receives the integer row.
Integer clear_denominators(const std::vector<Rational>& row, IntVector& out);

}  // namespace spectra::lattice
