#pragma once

#include "novikov_spectra/exact.hpp"

#include <map>
#include <optional>
#include <vector>

namespace spectra::linalg {

/// Laurent polynomial in one variable t over Q, exponent -> coefficient.
using Laurent = std::map<long, Rational>;
using LaurentVec = std::vector<Laurent>;

/// a += c * t^shift * b
void add_scaled(Laurent& a, const Laurent& b, const Rational& c, long shift);
void add_scaled(LaurentVec& a, const LaurentVec& b, const Rational& c, long shift);
Laurent multiply(const Laurent& a, const Laurent& b);
bool is_zero(const LaurentVec& v);

/// Incremental echelon basis over the fraction field Q(t), kept fraction-free
/// inside Q[t, 1/t].
class RationalFunctionSpan {
public:
    explicit RationalFunctionSpan(size_t dim) : dim_(dim) {}
    /// Adds v if it is independent of the current span; returns whether it was.
    bool insert(const LaurentVec& v);
    bool contains(const LaurentVec& v) const;
    size_t rank() const { return rows_.size(); }

private:
    LaurentVec reduce(LaurentVec v) const;
    size_t dim_;
    std::vector<std::pair<size_t, LaurentVec>> rows_;  // (pivot index, vector)
};

/// Basis of the Q(t)-kernel of the map sending e_j to cols[j], each column of
/// length `rows`. Kernel vectors have Laurent polynomial entries.
std::vector<LaurentVec> kernel(const std::vector<LaurentVec>& cols, size_t rows);

using QVector = std::vector<Rational>;

/// Coefficients x with sum_j x_j cols[j] = target, if any.
std::optional<QVector> solve(const std::vector<QVector>& cols, const QVector& target);
/// A nonzero x with sum_j x_j cols[j] = 0, if the columns are dependent.
std::optional<QVector> null_vector(const std::vector<QVector>& cols);
/// Rank of the column set.
size_t rank(const std::vector<QVector>& cols);

}  // namespace spectra::linalg
