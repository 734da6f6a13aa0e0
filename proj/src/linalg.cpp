#include "novikov_spectra/linalg.hpp"

namespace spectra::linalg {

void add_scaled(Laurent& a, const Laurent& b, const Rational& c, long shift)
{
    if (c == 0)
        return;
    for (const auto& [e, x] : b) {
        auto& slot = a[e + shift];
        slot += c * x;
        if (slot == 0)
            a.erase(e + shift);
    }
}

void add_scaled(LaurentVec& a, const LaurentVec& b, const Rational& c, long shift)
{
    for (size_t i = 0; i < a.size(); ++i)
        add_scaled(a[i], b[i], c, shift);
}

Laurent multiply(const Laurent& a, const Laurent& b)
{
    Laurent r;
    for (const auto& [e, x] : a)
        add_scaled(r, b, x, e);
    return r;
}

bool is_zero(const LaurentVec& v)
{
    for (const auto& x : v)
        if (!x.empty())
            return false;
    return true;
}

namespace {

LaurentVec times(const LaurentVec& v, const Laurent& p)
{
    LaurentVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = multiply(v[i], p);
    return r;
}

}  // namespace

LaurentVec RationalFunctionSpan::reduce(LaurentVec v) const
{
    for (const auto& [p, row] : rows_) {
        if (v[p].empty())
            continue;
        Laurent coef = v[p];
        v = times(v, row[p]);
        LaurentVec sub = times(row, coef);
        for (size_t i = 0; i < v.size(); ++i)
            add_scaled(v[i], sub[i], -1, 0);
    }
    // Keep the entries small: divide out a monomial power of t.
    long lo = 0;
    bool any = false;
    for (const auto& x : v)
        if (!x.empty()) {
            lo = any ? std::min(lo, x.begin()->first) : x.begin()->first;
            any = true;
        }
    if (any && lo != 0)
        for (auto& x : v) {
            Laurent s;
            add_scaled(s, x, 1, -lo);
            x = std::move(s);
        }
    return v;
}

bool RationalFunctionSpan::insert(const LaurentVec& v)
{
    if (v.size() != dim_)
        throw StructuralError("dimension mismatch in span insertion");
    LaurentVec r = reduce(v);
    for (size_t p = 0; p < r.size(); ++p)
        if (!r[p].empty()) {
            rows_.emplace_back(p, std::move(r));
            return true;
        }
    return false;
}

bool RationalFunctionSpan::contains(const LaurentVec& v) const
{
    if (v.size() != dim_)
        throw StructuralError("dimension mismatch in span test");
    return is_zero(reduce(v));
}

namespace {

long lowest_exponent(const LaurentVec& a, const LaurentVec& b, bool& any)
{
    long lo = 0;
    for (const auto* v : {&a, &b})
        for (const auto& x : *v)
            if (!x.empty()) {
                lo = any ? std::min(lo, x.begin()->first) : x.begin()->first;
                any = true;
            }
    return lo;
}

void shift_down(LaurentVec& v, long lo)
{
    for (auto& x : v) {
        Laurent s;
        add_scaled(s, x, 1, -lo);
        x = std::move(s);
    }
}

}  // namespace

std::vector<LaurentVec> kernel(const std::vector<LaurentVec>& cols, size_t rows)
{
    struct Row {
        size_t pivot;
        LaurentVec image;
        LaurentVec comb;
    };
    std::vector<Row> echelon;
    std::vector<LaurentVec> out;
    for (size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw StructuralError("dimension mismatch in kernel computation");
        LaurentVec v = cols[j];
        LaurentVec comb(cols.size());
        comb[j][0] = 1;
        for (const auto& r : echelon) {
            if (v[r.pivot].empty())
                continue;
            Laurent coef = v[r.pivot];
            v = times(v, r.image[r.pivot]);
            comb = times(comb, r.image[r.pivot]);
            LaurentVec sub = times(r.image, coef), csub = times(r.comb, coef);
            for (size_t i = 0; i < v.size(); ++i)
                add_scaled(v[i], sub[i], -1, 0);
            for (size_t i = 0; i < comb.size(); ++i)
                add_scaled(comb[i], csub[i], -1, 0);
        }
        bool any = false;
        long lo = lowest_exponent(v, comb, any);
        if (any && lo != 0) {
            shift_down(v, lo);
            shift_down(comb, lo);
        }
        size_t p = 0;
        while (p < v.size() && v[p].empty())
            ++p;
        if (p == v.size())
            out.push_back(std::move(comb));
        else
            echelon.push_back({p, std::move(v), std::move(comb)});
    }
    return out;
}

namespace {

/// Row-reduces [cols | target] (columns as given) and returns the reduced
/// augmented matrix together with the pivot columns.
struct Reduced {
    std::vector<QVector> rows;
    std::vector<size_t> pivots;
};

Reduced rref(const std::vector<QVector>& cols, const QVector* target)
{
    size_t n = cols.size();
    size_t m = target ? target->size() : (cols.empty() ? 0 : cols.front().size());
    size_t width = n + (target ? 1 : 0);
    std::vector<QVector> a(m, QVector(width, 0));
    for (size_t j = 0; j < n; ++j) {
        if (cols[j].size() != m)
            throw StructuralError("dimension mismatch in rational solve");
        for (size_t i = 0; i < m; ++i)
            a[i][j] = cols[j][i];
    }
    if (target)
        for (size_t i = 0; i < m; ++i)
            a[i][n] = (*target)[i];
    Reduced r;
    size_t row = 0;
    for (size_t j = 0; j < n && row < m; ++j) {
        size_t p = row;
        while (p < m && a[p][j] == 0)
            ++p;
        if (p == m)
            continue;
        std::swap(a[p], a[row]);
        Rational inv = 1 / a[row][j];
        for (auto& x : a[row])
            x *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][j] == 0)
                continue;
            Rational f = a[i][j];
            for (size_t k = j; k < width; ++k)
                a[i][k] -= f * a[row][k];
        }
        r.pivots.push_back(j);
        ++row;
    }
    r.rows = std::move(a);
    return r;
}

}  // namespace

std::optional<QVector> solve(const std::vector<QVector>& cols, const QVector& target)
{
    Reduced r = rref(cols, &target);
    size_t n = cols.size();
    for (size_t i = r.pivots.size(); i < r.rows.size(); ++i)
        if (r.rows[i][n] != 0)
            return std::nullopt;
    QVector x(n, 0);
    for (size_t k = 0; k < r.pivots.size(); ++k)
        x[r.pivots[k]] = r.rows[k][n];
    return x;
}

std::optional<QVector> null_vector(const std::vector<QVector>& cols)
{
    if (cols.empty())
        return std::nullopt;
    Reduced r = rref(cols, nullptr);
    size_t n = cols.size();
    size_t free_col = n;
    for (size_t j = 0, k = 0; j < n; ++j) {
        if (k < r.pivots.size() && r.pivots[k] == j) {
            ++k;
            continue;
        }
        free_col = j;
        break;
    }
    if (free_col == n)
        return std::nullopt;
    QVector x(n, 0);
    x[free_col] = 1;
    for (size_t k = 0; k < r.pivots.size(); ++k)
        x[r.pivots[k]] = -r.rows[k][free_col];
    return x;
}

size_t rank(const std::vector<QVector>& cols)
{
    if (cols.empty())
        return 0;
    return rref(cols, nullptr).pivots.size();
}

}  // namespace spectra::linalg
