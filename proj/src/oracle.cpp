#include "novikov_spectra/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace spectra {

namespace {

using Key = std::pair<std::string, GammaElement>;

/// Online consistency test for a sparse linear system over Q.
class SparseSystem {
public:
    /// Adds sum row[v] x_v = rhs; returns false once the system is inconsistent.
    bool add(std::map<int, Rational> row, Rational rhs)
    {
        if (!consistent_)
            return false;
        for (const auto& [var, pivot] : pivots_) {
            auto it = row.find(var);
            if (it == row.end())
                continue;
            Rational f = it->second;
            for (const auto& [v, c] : pivot.first) {
                auto& slot = row[v];
                slot -= f * c;
                if (slot == 0)
                    row.erase(v);
            }
            rhs -= f * pivot.second;
        }
        if (row.empty()) {
            if (rhs != 0)
                consistent_ = false;
            return consistent_;
        }
        int var = row.begin()->first;
        Rational inv = 1 / row.begin()->second;
        for (auto& [v, c] : row)
            c *= inv;
        rhs *= inv;
        pivots_.emplace_back(var, std::make_pair(std::move(row), std::move(rhs)));
        return true;
    }
    bool consistent() const { return consistent_; }

private:
    std::vector<std::pair<int, std::pair<std::map<int, Rational>, Rational>>> pivots_;
    bool consistent_ = true;
};

void enumerate_caps(int rank, long box, std::vector<long>& cur, std::vector<GammaElement>& out)
{
    if (static_cast<int>(cur.size()) == rank) {
        out.emplace_back(cur);
        return;
    }
    for (long v = -box; v <= box; ++v) {
        cur.push_back(v);
        enumerate_caps(rank, box, cur, out);
        cur.pop_back();
    }
}

Rational top_action(const NovikovChain& a)
{
    Rational top = a.terms().front().gen.action;
    for (const auto& t : a.terms())
        top = std::max(top, t.gen.action);
    return top;
}

}  // namespace

std::vector<Generator> window_generators(const FilteredComplex& c, long degree, const Rational& lo,
                                         const Rational& hi, long box)
{
    std::vector<GammaElement> caps;
    std::vector<long> cur;
    enumerate_caps(c.gamma()->rank(), box, cur, caps);
    std::vector<Generator> out;
    for (size_t i = 0; i < c.orbits().size(); ++i)
        for (const auto& cap : caps) {
            Generator g = c.generator(static_cast<int>(i), cap);
            if (g.degree == degree && lo <= g.action && g.action <= hi && c.admits(g))
                out.push_back(g);
        }
    std::stable_sort(out.begin(), out.end(), [](const Generator& a, const Generator& b) { return a.action < b.action; });
    return out;
}

OracleWindow oracle_window(const FilteredComplex& c, const NovikovChain& rep, const OracleOptions& opts)
{
    Rational top = c.orbits().empty() ? Rational(0) : c.orbits().front().action;
    Rational bottom = top;
    for (const auto& o : c.orbits()) {
        top = std::max(top, o.action);
        bottom = std::min(bottom, o.action);
    }
    Rational level = rep.is_zero() ? bottom : top_action(rep);
    return {std::min(level, bottom) - opts.below, std::max(level, top) + opts.above};
}

bool oracle_reaches_below(const FilteredComplex& c, const NovikovChain& rep, long degree, const Rational& level,
                          const OracleOptions& opts)
{
    OracleWindow w = oracle_window(c, rep, opts);
    auto unknowns = window_generators(c, degree + 1, level, w.hi, opts.box);
    std::map<Key, std::pair<std::map<int, Rational>, Rational>> eqs;
    for (const auto& t : rep.terms())
        if (t.gen.action >= level)
            eqs[{t.gen.orbit, t.gen.cap}].second -= t.coef;
    for (size_t u = 0; u < unknowns.size(); ++u) {
        NovikovChain b = boundary_apply(c, NovikovChain::single(unknowns[u]));
        for (const auto& t : b.terms())
            if (t.gen.action >= level)
                eqs[{t.gen.orbit, t.gen.cap}].first[static_cast<int>(u)] += t.coef;
    }
    SparseSystem sys;
    for (auto& [key, eq] : eqs) {
        std::erase_if(eq.first, [](const auto& kv) { return kv.second == 0; });
        if (!sys.add(std::move(eq.first), std::move(eq.second)))
            return false;
    }
    return sys.consistent();
}

ExtReal oracle_rho(const FilteredComplex& c, const NovikovChain& rep, long degree, const OracleOptions& opts)
{
    if (rep.is_zero())
        return ExtReal::neg_inf();
    OracleWindow w = oracle_window(c, rep, opts);
    Rational top = top_action(rep);
    std::set<Rational> levels{top};
    for (const auto& g : window_generators(c, degree, w.lo, top, opts.box))
        levels.insert(g.action);
    std::vector<Rational> cand(levels.begin(), levels.end());
    // feasibility is monotone in the level: find the first feasible candidate
    size_t lo = 0, hi = cand.size();
    while (lo < hi) {
        size_t mid = (lo + hi) / 2;
        if (oracle_reaches_below(c, rep, degree, cand[mid], opts))
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == 0)
        return ExtReal::neg_inf();
    return cand[lo - 1];
}

bool truncated_image_contains(const FilteredComplex& c, const NovikovChain& rep, long degree, const Rational& level,
                              const OracleOptions& opts)
{
    FilteredComplex sub = truncate_below(c, level);
    OracleWindow w = oracle_window(c, rep, opts);
    Rational lo = std::min(w.lo, Rational(level - opts.below));
    auto zs = window_generators(sub, degree, lo, level, opts.box);
    auto bs = window_generators(c, degree + 1, lo, w.hi, opts.box);
    int nz = static_cast<int>(zs.size());

    // rep + d(beta) - z = 0 on every degree-d generator of the window
    std::map<Key, std::pair<std::map<int, Rational>, Rational>> eqs;
    for (const auto& t : rep.terms())
        if (t.gen.action >= lo)
            eqs[{t.gen.orbit, t.gen.cap}].second -= t.coef;
    for (int k = 0; k < nz; ++k)
        eqs[{zs[k].orbit, zs[k].cap}].first[k] -= 1;
    for (size_t u = 0; u < bs.size(); ++u) {
        NovikovChain b = boundary_apply(c, NovikovChain::single(bs[u]));
        for (const auto& t : b.terms())
            if (t.gen.action >= lo)
                eqs[{t.gen.orbit, t.gen.cap}].first[nz + static_cast<int>(u)] += t.coef;
    }
    // z is a cycle of the truncated complex
    std::map<Key, std::map<int, Rational>> cyc;
    for (int k = 0; k < nz; ++k) {
        NovikovChain b = boundary_apply(sub, NovikovChain::single(zs[k]));
        for (const auto& t : b.terms())
            if (t.gen.action >= lo)
                cyc[{t.gen.orbit, t.gen.cap}][k] += t.coef;
    }

    SparseSystem sys;
    for (auto& [key, row] : cyc) {
        std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
        if (!sys.add(std::move(row), 0))
            return false;
    }
    for (auto& [key, eq] : eqs) {
        std::erase_if(eq.first, [](const auto& kv) { return kv.second == 0; });
        if (!sys.add(std::move(eq.first), std::move(eq.second)))
            return false;
    }
    return sys.consistent();
}

}  // namespace spectra
