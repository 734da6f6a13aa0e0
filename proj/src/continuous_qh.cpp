#include "novikov_spectra/continuous_qh.hpp"

#include "novikov_spectra/engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace spectra {

using linalg::LaurentVec;

namespace {

long floor_long(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!r.fits_slong_p())
        throw DomainError("exponent out of range");
    return r.get_si();
}

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

void check_piece(const FunctionalPiece& p)
{
    if (p.step && p.step->is_zero())
        throw StructuralError("progression on " + p.orbit + " has a zero step");
    if (p.count && !p.step)
        throw StructuralError("point piece on " + p.orbit + " carries a count");
}

/// Index k with cap = start + k step inside the piece, if any.
std::optional<long> position(const FunctionalPiece& p, const GammaElement& cap)
{
    if (cap.rank() != p.start.rank())
        throw StructuralError("cap rank mismatch in functional evaluation");
    if (!p.step)
        return cap == p.start ? std::optional<long>(0) : std::nullopt;
    GammaElement diff = cap - p.start;
    const auto& s = p.step->coords;
    size_t i = 0;
    while (s[i] == 0)
        ++i;
    if (diff.coords[i] % s[i] != 0)
        return std::nullopt;
    long k = diff.coords[i] / s[i];
    if (k < 0 || (p.count && k >= *p.count) || p.step->scaled(k) != diff)
        return std::nullopt;
    return k;
}

GammaElement element(const FunctionalPiece& p, long k)
{
    return k == 0 ? p.start : p.start + p.step->scaled(k);
}

Rational action(const FilteredComplex& c, const std::string& orbit, const GammaElement& cap)
{
    return c.generator(orbit, cap).action;
}

long gcd_of(const GammaElement& a)
{
    long g = 0;
    for (long x : a.coords)
        g = std::gcd(g, x);
    return g;
}

struct Ray {
    long t;
    long n;
    Rational value;
};

using LineKey = std::tuple<std::string, GammaElement, GammaElement>;  // orbit, direction, base point

/// Largest action of a generator where some piece is nonzero.
ExtReal support_sup(const DualFunctional& mu, const FilteredComplex& c)
{
    ExtReal s = ExtReal::neg_inf();
    for (const auto& p : mu.pieces) {
        if (p.value == 0)
            continue;
        Rational a = action(c, p.orbit, p.start);
        if (!p.step) {
            s = max(s, ExtReal(a));
            continue;
        }
        Rational w = c.gamma()->omega(*p.step);
        if (p.count) {
            if (*p.count > 0)
                s = max(s, ExtReal(std::max(a, Rational(a - w * (*p.count - 1)))));
        } else if (w < 0) {
            return ExtReal::pos_inf();
        } else {
            s = max(s, ExtReal(a));
        }
    }
    return s;
}

}  // namespace

Rational DualFunctional::operator()(const std::string& orbit, const GammaElement& cap) const
{
    Rational s = 0;
    for (const auto& p : pieces) {
        if (p.orbit != orbit)
            continue;
        check_piece(p);
        if (position(p, cap))
            s += p.value;
    }
    return s;
}

Rational DualFunctional::operator()(const NovikovChain& a) const
{
    Rational s = 0;
    for (const auto& t : a.terms())
        s += t.coef * (*this)(t.gen.orbit, t.gen.cap);
    return s;
}

DualFunctional DualFunctional::scaled(const Rational& c) const
{
    DualFunctional out = *this;
    for (auto& p : out.pieces)
        p.value *= c;
    if (c == 0) {
        out.pieces.clear();
        out.threshold = ExtReal::pos_inf();
    }
    return out;
}

DualFunctional operator+(const DualFunctional& a, const DualFunctional& b)
{
    if (!(*a.gamma == *b.gamma))
        throw StructuralError("functionals over different gamma groups");
    DualFunctional out = a;
    out.pieces.insert(out.pieces.end(), b.pieces.begin(), b.pieces.end());
    out.threshold = min(a.threshold, b.threshold);
    return out;
}

ContinuityVerdict is_continuous_functional(const DualFunctional& mu, const FilteredComplex& c, size_t prefix)
{
    if (!(*mu.gamma == *c.gamma()))
        throw StructuralError("functional and complex use different gamma groups");
    const auto& gamma = *c.gamma();
    ContinuityVerdict v;
    std::map<LineKey, std::vector<Ray>> lines;
    std::vector<Rational> candidates;

    for (const auto& p : mu.pieces) {
        check_piece(p);
        if (p.value == 0)
            continue;
        Rational a = action(c, p.orbit, p.start);
        if (!p.step) {
            if (mu(p.orbit, p.start) != 0)
                candidates.push_back(a);
            continue;
        }
        Rational w = gamma.omega(*p.step);
        if (p.count) {
            if (*p.count > 0)
                candidates.push_back(std::min(a, Rational(a - w * (*p.count - 1))));
            continue;
        }
        if (w <= 0) {
            candidates.push_back(a);
            continue;
        }
        long g = gcd_of(*p.step);
        GammaElement dir = *p.step;
        for (auto& x : dir.coords)
            x /= g;
        size_t i = 0;
        while (dir.coords[i] == 0)
            ++i;
        long q = floor_div(p.start.coords[i], dir.coords[i]);
        GammaElement base = p.start - dir.scaled(q);
        lines[{p.orbit, dir, base}].push_back({q, g, p.value});
    }

    for (const auto& [key, rays] : lines) {
        const auto& [orbit, dir, base] = key;
        long lo = rays.front().t, hi = rays.front().t, period = 1;
        for (const auto& r : rays) {
            lo = std::min(lo, r.t);
            hi = std::max(hi, r.t);
            period = std::lcm(period, r.n);
            if (period > 1000000)
                throw DomainError("progressions on " + orbit + " have too long a common period");
        }
        auto tail = [&](long pos) {
            Rational s = 0;
            for (const auto& r : rays)
                if (pos >= r.t && (pos - r.t) % r.n == 0)
                    s += r.value;
            return s;
        };
        std::optional<long> residue;
        for (long pos = hi; pos < hi + period && !residue; ++pos)
            if (tail(pos) != 0)
                residue = pos;
        if (residue) {
            v.continuous = false;
            v.threshold = ExtReal::neg_inf();
            v.declared_ok = false;
            v.detail = "values along " + orbit + base.to_string() + " + k" + dir.to_string() +
                       " do not vanish as the action falls";
            for (long k = 0; v.counterexample.size() < prefix && k < static_cast<long>(prefix) * 64; ++k) {
                GammaElement cap = base + dir.scaled(*residue + k * period);
                Rational x = mu(orbit, cap);
                if (x != 0)
                    v.counterexample.push_back({1 / x, c.generator(orbit, cap)});
            }
            return v;
        }
        for (long pos = lo; pos < hi; ++pos) {
            GammaElement cap = base + dir.scaled(pos);
            if (mu(orbit, cap) != 0)
                candidates.push_back(action(c, orbit, cap));
        }
    }

    v.continuous = true;
    if (!candidates.empty())
        v.threshold = *std::min_element(candidates.begin(), candidates.end());
    v.declared_ok = mu.threshold <= v.threshold;
    v.detail = v.declared_ok ? "continuous" : "declared threshold " + mu.threshold.to_string() +
                                                  " lies above a nonzero value at " + v.threshold.to_string();
    return v;
}

DualFunctional dual_boundary(const DualFunctional& mu, const FilteredComplex& c)
{
    auto verdict = is_continuous_functional(mu, c);
    if (!verdict.continuous)
        throw DomainError("dual boundary of a discontinuous functional: " + verdict.detail);
    DualFunctional out{mu.gamma, {}, verdict.threshold};
    for (const auto& p : mu.pieces) {
        if (p.value == 0)
            continue;
        int y = c.orbit_index(p.orbit);
        for (size_t x = 0; x < c.orbits().size(); ++x)
            for (const auto& t : c.boundary_of(static_cast<int>(x)))
                if (t.to == y)
                    out.pieces.push_back({c.orbits()[x].id, p.start - t.shift, p.step, p.count, t.coef * p.value});
    }
    return out;
}

DualFunctional quantum_coboundary(const DualFunctional& phi, const MorseData& m)
{
    DualFunctional out{phi.gamma, {}, phi.threshold};
    for (const auto& p : phi.pieces) {
        m.point(p.orbit);
        for (const auto& e : m.boundary)
            if (e.from == p.orbit)
                out.pieces.push_back({e.to, p.start, p.step, p.count, e.coef * p.value});
    }
    return out;
}

DualFunctional sigma_embed(const QuantumClass& a, const ClassicalData& cd)
{
    if (a.direction() != Direction::Upward)
        throw StructuralError("sigma embeds cohomology classes");
    DualFunctional out{a.gamma(), {}, ExtReal::neg_inf()};
    for (const auto& t : a.terms())
        for (const auto& [p, r] : cd.find(t.cls).cochain)
            out.pieces.push_back({p, t.exponent, std::nullopt, std::nullopt, t.coef * r});
    return out;
}

bool agree_on_support(const DualFunctional& a, const DualFunctional& b, long terms)
{
    std::vector<std::pair<std::string, GammaElement>> gens;
    for (const auto* f : {&a, &b})
        for (const auto& p : f->pieces) {
            check_piece(p);
            long n = p.step ? (p.count ? *p.count : terms) : 1;
            for (long k = 0; k < n; ++k)
                gens.emplace_back(p.orbit, element(p, k));
        }
    for (const auto& [orbit, cap] : gens)
        if (a(orbit, cap) != b(orbit, cap))
            return false;
    return true;
}

ContinuousRho rho_continuous(const FilteredComplex& c, const DualFunctional& mu, long degree, long scan)
{
    auto verdict = is_continuous_functional(mu, c);
    if (!verdict.continuous)
        throw DomainError("spectral invariant of a discontinuous functional: " + verdict.detail);
    ContinuousRho r;
    r.certified = !c.gamma()->approximate();
    if (!verdict.threshold.is_finite()) {
        r.zero_class = true;
        return r;
    }
    const Rational theta = verdict.threshold.value();
    const ExtReal sup = support_sup(mu, c);

    DegreeFrame fd(c, degree), fu(c, degree + 1), fl(c, degree - 1);
    const Rational& step = fd.step();

    // Scans t^m for m = top, top - 1, ... while the lowest action `low - m step`
    // can still meet the support; returns false when the scan budget ran out.
    auto sweep = [&](const Rational& level, const Rational& low, auto&& visit) {
        if (step == 0) {
            if (ExtReal(level) >= ExtReal(theta))
                visit(0L);
            return true;
        }
        long top = floor_long((level - theta) / step);
        for (long m = top; m > top - scan; --m) {
            if (ExtReal(Rational(low - step * m)) > sup)
                return true;
            if (visit(m))
                return true;
        }
        return false;
    };

    for (size_t k = 0; k < fu.size(); ++k) {
        NovikovChain d = boundary_apply(c, NovikovChain::single(fu.generator(k, 0)));
        if (d.is_zero())
            continue;
        Rational low = fu.base_level(k);
        for (const auto& t : d.terms())
            low = std::min(low, t.gen.action);
        bool done = sweep(fu.base_level(k), low, [&](long m) {
            NovikovChain dm = boundary_apply(c, NovikovChain::single(fu.generator(k, m)));
            if (mu(dm) != 0)
                throw DomainError("functional is not a cocycle: it is nonzero on the boundary of " +
                                  fu.generator(k, m).to_string());
            return false;
        });
        if (!done)
            r.exhaustive = false;
    }

    std::vector<LaurentVec> cols;
    for (size_t k = 0; k < fd.size(); ++k)
        cols.push_back(fl.to_vector(boundary_apply(c, NovikovChain::single(fd.generator(k, 0)))));
    auto cycles = orthogonal_basis(fd, linalg::kernel(cols, fl.size()));

    ExtReal best = ExtReal::pos_inf();
    for (const auto& z : cycles) {
        Rational level = fd.level(z).value();
        Rational low = level;
        for (size_t k = 0; k < z.size(); ++k)
            if (!z[k].empty())
                low = std::min(low, Rational(fd.base_level(k) - step * z[k].rbegin()->first));
        bool done = sweep(level, low, [&](long m) {
            LaurentVec s(z.size());
            linalg::add_scaled(s, z, 1, m);
            NovikovChain chain = fd.to_chain(s);
            if (mu(chain) == 0)
                return false;
            ExtReal l(Rational(level - step * m));
            if (l < best) {
                best = l;
                r.witness = chain;
            }
            return true;
        });
        if (!done)
            r.exhaustive = false;
    }
    if (best.is_pos_inf()) {
        r.zero_class = true;
        return r;
    }
    r.rho = best;
    return r;
}

bool ball_membership(const NovikovChain& b, const BallSpec& ball)
{
    return level_and_peak(b - ball.center).level < ExtReal(ball.radius);
}

std::optional<Rational> basis_axiom_check(const BallSpec& b1, const BallSpec& b2, const NovikovChain& alpha)
{
    if (!ball_membership(alpha, b1) || !ball_membership(alpha, b2))
        return std::nullopt;
    return std::min(b1.radius, b2.radius);
}

bool boundary_ball_check(const FilteredComplex& c, const NovikovChain& a, const Rational& radius,
                         const NovikovChain& b)
{
    if (!ball_membership(b, {a, radius}))
        return true;
    return ball_membership(boundary_apply(c, b), {boundary_apply(c, a), radius});
}

}  // namespace spectra
