#include "novikov_spectra/lattice.hpp"

#include <utility>

namespace spectra::lattice {

namespace {

void add_column_multiple(IntMatrix& a, int dst, int src, const Integer& factor)
{
    for (auto& row : a)
        row[dst] += factor * row[src];
}

void swap_columns(IntMatrix& a, int i, int j)
{
    for (auto& row : a)
        std::swap(row[i], row[j]);
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& m, int cols)
{
    ColumnEchelon e;
    e.h = m;
    e.u.assign(cols, IntVector(cols, 0));
    for (int i = 0; i < cols; ++i)
        e.u[i][i] = 1;
    int p = 0;
    for (size_t i = 0; i < e.h.size() && p < cols; ++i) {
        auto& row = e.h[i];
        // Euclid on the entries row[p..cols) by column operations.
        while (true) {
            int best = -1;
            for (int j = p; j < cols; ++j)
                if (row[j] != 0 && (best < 0 || abs(row[j]) < abs(row[best])))
                    best = j;
            if (best < 0)
                break;
            bool others = false;
            for (int j = p; j < cols; ++j) {
                if (j == best || row[j] == 0)
                    continue;
                others = true;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), row[j].get_mpz_t(), row[best].get_mpz_t());
                add_column_multiple(e.h, j, best, Integer(-q));
                add_column_multiple(e.u, j, best, Integer(-q));
            }
            if (!others) {
                swap_columns(e.h, p, best);
                swap_columns(e.u, p, best);
                e.pivot_row.push_back(static_cast<int>(i));
                ++p;
                break;
            }
        }
    }
    e.rank = p;
    return e;
}

std::optional<IntVector> solve(const IntMatrix& m, const IntVector& b, int cols)
{
    if (cols == 0) {
        for (const auto& v : b)
            if (v != 0)
                return std::nullopt;
        return IntVector{};
    }
    ColumnEchelon e = column_echelon(m, cols);
    IntVector y(cols, 0);
    // Forward substitution: row i involves only pivot columns whose pivot row <= i.
    for (size_t i = 0; i < e.h.size(); ++i) {
        Integer acc = b[i];
        int pivot_here = -1;
        for (int j = 0; j < e.rank; ++j) {
            if (e.pivot_row[j] == static_cast<int>(i)) {
                pivot_here = j;
                continue;
            }
            if (e.pivot_row[j] < static_cast<int>(i))
                acc -= e.h[i][j] * y[j];
        }
        if (pivot_here >= 0) {
            const Integer& d = e.h[i][pivot_here];
            if (!mpz_divisible_p(acc.get_mpz_t(), d.get_mpz_t()))
                return std::nullopt;
            y[pivot_here] = acc / d;
        } else if (acc != 0) {
            return std::nullopt;
        }
    }
    IntVector x(cols, 0);
    for (int r = 0; r < cols; ++r)
        for (int j = 0; j < cols; ++j)
            x[r] += e.u[r][j] * y[j];
    return x;
}

std::vector<IntVector> kernel(const IntMatrix& m, int cols)
{
    ColumnEchelon e = column_echelon(m, cols);
    std::vector<IntVector> out;
    for (int j = e.rank; j < cols; ++j) {
        IntVector v(cols);
        for (int r = 0; r < cols; ++r)
            v[r] = e.u[r][j];
        out.push_back(std::move(v));
    }
    return out;
}

Integer clear_denominators(const std::vector<Rational>& row, IntVector& out)
{
    Integer den = 1;
    for (const auto& q : row)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    out.clear();
    for (const auto& q : row)
        out.push_back(Integer(q.get_num() * (den / q.get_den())));
    return den;
}

}  // namespace spectra::lattice
