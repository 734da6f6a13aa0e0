#include "novikov_spectra/random_complex.hpp"

#include <algorithm>
#include <map>

namespace spectra {

namespace {

/// Gamma-equivariant matrix: column x lists the image of [x, 0].
using Column = std::map<std::pair<int, GammaElement>, Rational>;
using Matrix = std::vector<Column>;

Matrix compose(const Matrix& outer, const Matrix& inner)
{
    Matrix r(inner.size());
    for (size_t x = 0; x < inner.size(); ++x)
        for (const auto& [key, c] : inner[x])
            for (const auto& [key2, c2] : outer[key.first]) {
                auto& slot = r[x][{key2.first, key.second + key2.second}];
                slot += c * c2;
            }
    for (auto& col : r)
        std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
    return r;
}

Matrix identity(size_t n, const GammaGroup& g)
{
    Matrix r(n);
    for (size_t i = 0; i < n; ++i)
        r[i][{static_cast<int>(i), g.zero()}] = 1;
    return r;
}

Matrix add(const Matrix& a, const Matrix& b, const Rational& scale)
{
    Matrix r = a;
    for (size_t x = 0; x < b.size(); ++x)
        for (const auto& [k, c] : b[x])
            r[x][k] += scale * c;
    for (auto& col : r)
        std::erase_if(col, [](const auto& kv) { return kv.second == 0; });
    return r;
}

std::vector<GammaElement> box_caps(const GammaGroup& g, long bound)
{
    std::vector<GammaElement> out{g.zero()};
    for (int i = 0; i < g.rank(); ++i) {
        std::vector<GammaElement> next;
        for (const auto& e : out)
            for (long v = -bound; v <= bound; ++v) {
                GammaElement f = e;
                f.coords[i] = v;
                next.push_back(f);
            }
        out = std::move(next);
    }
    return out;
}

Rational nonzero_coef(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(1, 3);
    std::bernoulli_distribution sign(0.5);
    return Rational(sign(rng) ? d(rng) : -d(rng));
}

template <class T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& v)
{
    std::uniform_int_distribution<size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

GammaRef random_gamma(std::mt19937_64& rng, std::string& kind)
{
    std::uniform_int_distribution<int> d(0, 3);
    switch (d(rng)) {
    case 0: kind = "trivial"; return GammaGroup::trivial();
    case 1: kind = "period"; return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{0});
    case 2: kind = "chern"; return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{1});
    default:
        kind = "rank-two";
        return std::make_shared<const GammaGroup>(std::vector<Rational>{1, Rational(1, 2)}, std::vector<long>{0, 1});
    }
}

FilteredComplex from_matrix(const GammaRef& g, const std::vector<Orbit>& orbits, const Matrix& d)
{
    std::vector<BoundaryEntry> entries;
    for (size_t x = 0; x < d.size(); ++x) {
        std::map<int, std::vector<NovikovTerm>> by_target;
        for (const auto& [key, c] : d[x])
            by_target[key.first].push_back({c, key.second});
        for (auto& [to, terms] : by_target)
            entries.push_back({orbits[x].id, orbits[to].id, NovikovScalar(g, Direction::Downward, std::move(terms)), {}});
    }
    return FilteredComplex(g, orbits, std::move(entries));
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, const RandomComplexOptions& opts)
{
    for (;;) {
        RandomInstance inst;
        GammaRef g = random_gamma(rng, inst.gamma_kind);
        std::uniform_int_distribution<int> count(opts.min_orbits, opts.max_orbits), deg(0, 2), act(-8, 8);
        int n = count(rng);
        std::vector<Orbit> orbits;
        for (int i = 0; i < n; ++i)
            orbits.push_back({"o" + std::to_string(i), ratio(act(rng), 4), deg(rng)});
        auto caps = box_caps(*g, opts.max_shift);

        // elementary pairs: d y = c q^C x
        Matrix diag(n);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i)
            order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<bool> used(n, false), paired(n, false), target(n, false);
        used[order[0]] = true;  // keep one orbit out of every pair
        std::bernoulli_distribution pair_up(0.7);
        for (int yi : order) {
            if (used[yi])
                continue;
            for (int xi : order) {
                if (used[xi] || xi == yi || !pair_up(rng))
                    continue;
                std::vector<GammaElement> ok;
                for (const auto& C : caps)
                    if (orbits[xi].degree - 2 * g->c1(C) == orbits[yi].degree - 1 &&
                        orbits[xi].action - g->omega(C) < orbits[yi].action)
                        ok.push_back(C);
                if (ok.empty())
                    continue;
                diag[yi][{xi, pick(rng, ok)}] = nonzero_coef(rng);
                used[yi] = used[xi] = true;
                paired[yi] = paired[xi] = true;
                target[xi] = true;
                break;
            }
        }

        // strictly level-lowering, orbit-triangular N
        Matrix nil(n);
        std::bernoulli_distribution link(0.45);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                if (!link(rng))
                    continue;
                std::vector<GammaElement> ok;
                for (const auto& C : caps)
                    if (orbits[j].degree - 2 * g->c1(C) == orbits[i].degree &&
                        orbits[j].action - g->omega(C) < orbits[i].action)
                        ok.push_back(C);
                if (!ok.empty())
                    nil[i][{j, pick(rng, ok)}] = nonzero_coef(rng);
            }
        Matrix id = identity(n, *g);
        Matrix p = add(id, nil, 1);
        Matrix pinv = id, power = id;
        for (int k = 1; k <= n; ++k) {
            power = compose(nil, power);
            pinv = add(pinv, power, (k % 2) ? Rational(-1) : Rational(1));
        }
        Matrix d = compose(p, compose(diag, pinv));
        auto c = std::make_shared<const FilteredComplex>(from_matrix(g, orbits, d));
        if (!validate_complex(*c).ok())
            continue;  // ties between actions: draw again
        inst.complex = c;

        // cycle: P applied to a D-cycle, plus a random boundary
        std::vector<int> cycles, free_orbits;
        for (int i = 0; i < n; ++i) {
            if (!paired[i])
                free_orbits.push_back(i);
            if (!paired[i] || target[i])
                cycles.push_back(i);
        }
        std::bernoulli_distribution zero_class(0.15);
        bool only_targets = zero_class(rng);
        int anchor = only_targets ? pick(rng, cycles) : pick(rng, free_orbits);
        inst.degree = orbits[anchor].degree;
        std::vector<ChainTerm> zd;
        for (int i : cycles) {
            if (only_targets && !target[i])
                continue;
            std::vector<GammaElement> ok;
            for (const auto& C : caps)
                if (orbits[i].degree - 2 * g->c1(C) == inst.degree)
                    ok.push_back(C);
            if (ok.empty())
                continue;
            std::bernoulli_distribution take(i == anchor ? 1.0 : 0.5);
            if (!take(rng))
                continue;
            const GammaElement& A = pick(rng, ok);
            Rational ci = nonzero_coef(rng);
            for (const auto& [key, e] : p[i])
                zd.push_back({ci * e, c->generator(key.first, A + key.second)});
        }
        NovikovChain cycle(zd);
        std::vector<ChainTerm> beta;
        for (int i = 0; i < n; ++i) {
            std::vector<GammaElement> ok;
            for (const auto& C : caps)
                if (orbits[i].degree - 2 * g->c1(C) == inst.degree + 1)
                    ok.push_back(C);
            std::bernoulli_distribution take(0.5);
            if (!ok.empty() && take(rng))
                beta.push_back({nonzero_coef(rng), c->generator(i, pick(rng, ok))});
        }
        inst.cycle = cycle + boundary_apply(*c, NovikovChain(beta));
        return inst;
    }
}

const char* to_string(Mutation m)
{
    switch (m) {
    case Mutation::DSquared: return "d-squared";
    case Mutation::DegreeDrift: return "degree-drift";
    case Mutation::LevelIncrease: return "level-increase";
    case Mutation::EquivarianceBreak: return "gamma-equivariance";
    case Mutation::TiePeak: return "tie-peak";
    }
    return "?";
}

const char* violation_kind(Mutation m)
{
    switch (m) {
    case Mutation::DSquared: return "d-squared";
    case Mutation::DegreeDrift: return "degree";
    case Mutation::LevelIncrease: return "level-increase";
    case Mutation::EquivarianceBreak: return "gamma-equivariance";
    case Mutation::TiePeak: return "tie-peak";
    }
    return "?";
}

FilteredComplex mutate(const FilteredComplex& c, Mutation m, std::mt19937_64& rng)
{
    const GammaRef& g = c.gamma();
    std::vector<Orbit> orbits = c.orbits();
    std::vector<BoundaryEntry> entries = c.raw_boundary();
    auto one = NovikovScalar::one(g, Direction::Downward);
    auto fresh = [&](const std::string& stem) {
        std::string id = stem;
        while (c.has_orbit(id))
            id += "'";
        return id;
    };
    Rational top = 0;
    for (const auto& o : orbits)
        top = std::max(top, o.action);

    switch (m) {
    case Mutation::DSquared: {
        std::vector<int> sources;
        for (size_t i = 0; i < orbits.size(); ++i)
            if (!c.boundary_of(static_cast<int>(i)).empty())
                sources.push_back(static_cast<int>(i));
        if (!sources.empty()) {
            Orbit y = orbits[pick(rng, sources)];
            Orbit x{fresh("mut_x"), y.action + Rational(1, 3), y.degree + 1};
            orbits.push_back(x);
            entries.push_back({x.id, y.id, one, {}});
        } else {
            Orbit a{fresh("mut_a"), top + 3, 1}, b{fresh("mut_b"), top + 2, 0}, d{fresh("mut_c"), top + 1, -1};
            orbits.insert(orbits.end(), {a, b, d});
            entries.push_back({a.id, b.id, one, {}});
            entries.push_back({b.id, d.id, one, {}});
        }
        break;
    }
    case Mutation::DegreeDrift: {
        if (entries.empty()) {
            Orbit a{fresh("mut_a"), top + 3, 5}, b{fresh("mut_b"), top + 2, 5};
            orbits.insert(orbits.end(), {a, b});
            entries.push_back({a.id, b.id, one, {}});
        } else {
            const auto& e = pick(rng, entries);
            for (auto& o : orbits)
                if (o.id == e.from)
                    o.degree += 1;
        }
        break;
    }
    case Mutation::LevelIncrease: {
        Orbit x = pick(rng, orbits);
        Orbit z{fresh("mut_z"), x.action + Rational(5, 7), x.degree - 1};
        orbits.push_back(z);
        entries.push_back({x.id, z.id, one, {}});
        break;
    }
    case Mutation::EquivarianceBreak: {
        if (entries.empty()) {
            Orbit a{fresh("mut_a"), top + 3, 1}, b{fresh("mut_b"), top + 2, 0};
            orbits.insert(orbits.end(), {a, b});
            entries.push_back({a.id, b.id, one, {}});
        }
        BoundaryEntry e = pick(rng, entries);
        GammaElement cap = g->rank() > 0 ? g->basis(0) : g->zero();
        entries.push_back({e.from, e.to, (e.from_cap ? e.scalar.shifted(cap - *e.from_cap) : e.scalar.shifted(cap)).scaled(2),
                           cap});
        break;
    }
    case Mutation::TiePeak: {
        Orbit twin = pick(rng, orbits);
        twin.id = fresh(twin.id + "_twin");
        orbits.push_back(twin);
        break;
    }
    }
    return FilteredComplex(g, std::move(orbits), std::move(entries));
}

FilteredComplex relabel(const FilteredComplex& c, const std::vector<size_t>& perm, const std::string& prefix)
{
    std::vector<Orbit> orbits;
    for (size_t k : perm) {
        Orbit o = c.orbits().at(k);
        o.id = prefix + o.id;
        orbits.push_back(o);
    }
    std::vector<BoundaryEntry> entries = c.raw_boundary();
    for (auto& e : entries) {
        e.from = prefix + e.from;
        e.to = prefix + e.to;
    }
    std::reverse(entries.begin(), entries.end());
    return FilteredComplex(c.gamma(), std::move(orbits), std::move(entries), c.ceiling());
}

NovikovChain relabel_chain(const FilteredComplex& source, const FilteredComplex& target, const NovikovChain& a,
                           const std::vector<size_t>& perm)
{
    std::string prefix = target.orbits().at(0).id.substr(
        0, target.orbits().at(0).id.size() - source.orbits().at(perm.at(0)).id.size());
    std::vector<ChainTerm> out;
    for (const auto& t : a.terms())
        out.push_back({t.coef, target.generator(prefix + t.gen.orbit, t.gen.cap)});
    return NovikovChain(std::move(out), a.floor());
}

}  // namespace spectra
