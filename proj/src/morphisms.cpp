#include "novikov_spectra/morphisms.hpp"

#include <algorithm>
#include <set>

namespace spectra {

namespace {

void same_grid(const HamiltonianData& h, const HamiltonianData& k)
{
    if (h.times != k.times || h.points != k.points || h.weights != k.weights)
        throw StructuralError("Hamiltonians sampled on different grids");
}

void check_flow(const HamiltonianData& h, const SampledFlow& flow)
{
    if (flow.size() != h.times.size())
        throw StructuralError("flow needs one permutation per time sample");
    for (const auto& perm : flow) {
        if (perm.size() != h.points.size())
            throw StructuralError("flow permutation has the wrong size");
        std::vector<bool> seen(perm.size(), false);
        for (size_t i = 0; i < perm.size(); ++i) {
            if (perm[i] >= perm.size() || seen[perm[i]])
                throw StructuralError("flow is not a permutation");
            seen[perm[i]] = true;
            if (h.weights[perm[i]] != h.weights[i])
                throw StructuralError("flow does not preserve the measure");
        }
    }
}

const SampledFlow* resolve_flow(const SampledFlow* flow, bool commuting, const char* what)
{
    if (!flow && !commuting)
        throw Error("missing-flow", std::string(what) + " needs flow data or the commuting flag");
    return flow;
}

ExtReal ext_min(const ExtReal& a, const ExtReal& b) { return min(a, b); }

bool is_zero_class(const FilteredComplex& c, const NovikovChain& a, long degree)
{
    if (a.is_zero())
        return true;
    if (!boundary_apply(c, a).is_zero())
        return false;
    return spectral_invariant(c, a, degree).zero_class;
}

}  // namespace

void HamiltonianData::check() const
{
    if (times.empty() || times.front() != 0)
        throw StructuralError("time samples must start at 0");
    for (size_t k = 0; k < times.size(); ++k) {
        if (times[k] >= 1 || (k > 0 && times[k] <= times[k - 1]))
            throw StructuralError("time samples must increase inside [0, 1)");
    }
    if (points.empty() || weights.size() != points.size())
        throw StructuralError("every sample point needs a weight");
    for (const auto& w : weights)
        if (w <= 0)
            throw StructuralError("weights must be positive");
    if (values.size() != times.size())
        throw StructuralError("one value row per time sample");
    for (const auto& row : values)
        if (row.size() != points.size())
            throw StructuralError("value row has the wrong size");
    if (normalized)
        for (size_t k = 0; k < times.size(); ++k)
            if (mean_at(k) != 0)
                throw StructuralError("normalized Hamiltonian has nonzero mean at t = " + format_rational(times[k]));
}

Rational HamiltonianData::dt(size_t k) const { return (k + 1 < times.size() ? times[k + 1] : Rational(1)) - times[k]; }

Rational HamiltonianData::max_at(size_t k) const { return *std::max_element(values[k].begin(), values[k].end()); }

Rational HamiltonianData::min_at(size_t k) const { return *std::min_element(values[k].begin(), values[k].end()); }

Rational HamiltonianData::mean_at(size_t k) const
{
    Rational s = 0, w = 0;
    for (size_t i = 0; i < points.size(); ++i) {
        s += weights[i] * values[k][i];
        w += weights[i];
    }
    return s / w;
}

HamiltonianData zero_hamiltonian(const HamiltonianData& like)
{
    HamiltonianData z = like;
    for (auto& row : z.values)
        std::fill(row.begin(), row.end(), Rational(0));
    z.normalized = true;
    return z;
}

HamiltonianData constant_shift(const HamiltonianData& h, const std::vector<Rational>& s)
{
    if (s.size() != h.times.size())
        throw StructuralError("one shift per time sample");
    HamiltonianData out = h;
    for (size_t k = 0; k < s.size(); ++k)
        for (auto& v : out.values[k])
            v += s[k];
    out.normalized = false;
    return out;
}

HamiltonianData sum(const HamiltonianData& h, const HamiltonianData& k)
{
    same_grid(h, k);
    HamiltonianData out = h;
    for (size_t t = 0; t < h.times.size(); ++t)
        for (size_t i = 0; i < h.points.size(); ++i)
            out.values[t][i] += k.values[t][i];
    out.normalized = h.normalized && k.normalized;
    return out;
}

Rational hofer_norm(const HamiltonianData& h)
{
    h.check();
    Rational s = 0;
    for (size_t k = 0; k < h.times.size(); ++k)
        s += h.dt(k) * (h.max_at(k) - h.min_at(k));
    return s;
}

HamiltonianData compose(const HamiltonianData& h, const HamiltonianData& k, const SampledFlow* flow, bool commuting)
{
    h.check();
    k.check();
    same_grid(h, k);
    flow = resolve_flow(flow, commuting, "compose");
    if (flow)
        check_flow(h, *flow);
    HamiltonianData out = h;
    for (size_t t = 0; t < h.times.size(); ++t)
        for (size_t j = 0; j < h.points.size(); ++j) {
            // phi(j) = i, so phi^{-1}(points[i]) = points[j]
            size_t i = flow ? (*flow)[t][j] : j;
            out.values[t][i] = h.values[t][i] + k.values[t][j];
        }
    out.normalized = h.normalized && k.normalized;
    return out;
}

HamiltonianData invert(const HamiltonianData& g, const SampledFlow* flow, bool commuting)
{
    g.check();
    flow = resolve_flow(flow, commuting, "invert");
    if (flow)
        check_flow(g, *flow);
    HamiltonianData out = g;
    for (size_t t = 0; t < g.times.size(); ++t)
        for (size_t i = 0; i < g.points.size(); ++i)
            out.values[t][i] = -g.values[t][flow ? (*flow)[t][i] : i];
    return out;
}

HamiltonianData normalize(const HamiltonianData& h)
{
    HamiltonianData out = h;
    out.normalized = false;
    out.check();
    for (size_t k = 0; k < h.times.size(); ++k) {
        Rational m = h.mean_at(k);
        for (auto& v : out.values[k])
            v -= m;
    }
    out.normalized = true;
    return out;
}

std::pair<Rational, Rational> difference_bounds(const HamiltonianData& h, const HamiltonianData& f)
{
    same_grid(h, f);
    Rational lo = 0, hi = 0;
    for (size_t k = 0; k < h.times.size(); ++k) {
        Rational mn = f.values[k][0] - h.values[k][0], mx = mn;
        for (size_t i = 1; i < h.points.size(); ++i) {
            Rational d = f.values[k][i] - h.values[k][i];
            mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
        lo += h.dt(k) * mn;
        hi += h.dt(k) * mx;
    }
    return {lo, hi};
}

std::variant<HamiltonianData, Rational> hamiltonian_algebra(const HamiltonianData& h, const HamiltonianData* k,
                                                            HamiltonianOp op, const SampledFlow* flow, bool commuting)
{
    switch (op) {
    case HamiltonianOp::Norm:
        return hofer_norm(h);
    case HamiltonianOp::Compose:
        if (!k)
            throw StructuralError("compose needs a second Hamiltonian");
        return compose(h, *k, flow, commuting);
    case HamiltonianOp::Invert:
        return invert(h, flow, commuting);
    case HamiltonianOp::Normalize:
        return normalize(h);
    }
    throw StructuralError("unknown Hamiltonian operation");
}

NovikovChain apply_map(const CertifiedChainMap& h, const NovikovChain& a)
{
    std::map<std::string, std::vector<const MapEntry*>> by_from;
    for (const auto& e : h.entries)
        by_from[e.from].push_back(&e);
    check_chain(*h.source, a);
    std::vector<ChainTerm> out;
    for (const auto& t : a.terms()) {
        auto it = by_from.find(t.gen.orbit);
        if (it == by_from.end())
            continue;
        for (const MapEntry* e : it->second)
            for (const auto& s : e->scalar.terms())
                out.push_back({t.coef * s.coef, h.target->generator(e->to, t.gen.cap + s.exponent)});
    }
    return NovikovChain(std::move(out));
}

MapCertificate certify_chain_map(const CertifiedChainMap& h)
{
    MapCertificate cert;
    auto bad = [&](std::string kind, std::string detail, std::vector<std::string> w = {}) {
        cert.report.violations.push_back({std::move(kind), std::move(detail), std::move(w)});
    };
    const auto& src = *h.source;
    const auto& tgt = *h.target;
    if (!(*src.gamma() == *tgt.gamma())) {
        bad("gamma", "source and target use different gamma groups");
        return cert;
    }
    for (const auto& e : h.entries) {
        if (!src.has_orbit(e.from) || !tgt.has_orbit(e.to)) {
            bad("unknown-orbit", "map entry references an unknown orbit", {e.from, e.to});
            continue;
        }
        Generator x = src.generator(e.from, src.gamma()->zero());
        for (const auto& s : e.scalar.terms()) {
            Generator y = tgt.generator(e.to, s.exponent);
            if (y.degree != x.degree)
                bad("degree", "map entry changes the degree", {x.to_string(), y.to_string()});
            Rational slack = h.shift_bound - (y.action - x.action);
            cert.worst_slack = ext_min(cert.worst_slack, slack);
            if (slack < 0)
                bad("shift-bound", "entry raises the action by more than the bound",
                    {x.to_string(), y.to_string(), format_rational(y.action - x.action)});
        }
    }
    if (!cert.report.ok())
        return cert;
    for (const auto& o : src.orbits()) {
        auto x = NovikovChain::single(src.generator(o.id, src.gamma()->zero()));
        auto lhs = boundary_apply(tgt, apply_map(h, x));
        auto rhs = apply_map(h, boundary_apply(src, x));
        if (!(lhs == rhs))
            bad("chain-map", "d h and h d differ", {o.id, (lhs - rhs).to_string()});
    }
    return cert;
}

CertifiedChainMap compose_maps(const CertifiedChainMap& second, const CertifiedChainMap& first)
{
    if (first.target.get() != second.source.get())
        throw StructuralError("composed maps do not share a complex");
    std::map<std::pair<std::string, std::string>, NovikovScalar> acc;
    for (const auto& a : first.entries)
        for (const auto& b : second.entries) {
            if (a.to != b.from)
                continue;
            auto prod = a.scalar * b.scalar;
            auto key = std::make_pair(a.from, b.to);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, prod);
            else
                it->second = it->second + prod;
        }
    CertifiedChainMap out{first.source, second.target, {}, first.shift_bound + second.shift_bound};
    for (auto& [k, s] : acc)
        if (!s.is_zero())
            out.entries.push_back({k.first, k.second, s});
    return out;
}

CertifiedChainMap identity_map(ComplexRef source, ComplexRef target, const Rational& bound)
{
    CertifiedChainMap h{source, target, {}, bound};
    auto one = NovikovScalar::one(source->gamma(), Direction::Downward);
    for (const auto& o : source->orbits())
        h.entries.push_back({o.id, o.id, one});
    return h;
}

ContinuityReport verify_continuity(const CertifiedChainMap& h_hf, const CertifiedChainMap& h_fh,
                                   const HamiltonianData& h, const HamiltonianData& f, const NovikovChain& rep_h,
                                   const NovikovChain& rep_f, long degree)
{
    ContinuityReport r;
    auto [lo, hi] = difference_bounds(h, f);
    r.lower = -hi;
    r.upper = -lo;
    if (h_hf.source.get() != h_fh.target.get() || h_hf.target.get() != h_fh.source.get())
        throw StructuralError("continuity maps must run between the same two complexes");
    auto c1 = certify_chain_map(h_hf), c2 = certify_chain_map(h_fh);
    if (!c1.ok() || !c2.ok())
        throw DomainError("uncertified chain map: " + (c1.ok() ? c2 : c1).report.summary());
    r.maps_certified = h_hf.shift_bound <= r.upper && h_fh.shift_bound <= -r.lower;
    if (!r.maps_certified)
        r.detail = "map bounds exceed the linear homotopy estimate";
    const auto& ch = *h_hf.source;
    const auto& cf = *h_hf.target;
    r.classes_match =
        is_zero_class(cf, apply_map(h_hf, rep_h) - rep_f, degree) && is_zero_class(ch, apply_map(h_fh, rep_f) - rep_h, degree);
    if (!r.classes_match)
        r.detail = "representatives are not matched by the maps";
    r.rho_h = spectral_invariant(ch, rep_h, degree).rho;
    r.rho_f = spectral_invariant(cf, rep_f, degree).rho;
    if (r.rho_h.is_finite() && r.rho_f.is_finite()) {
        ExtReal diff = r.rho_f - r.rho_h;
        r.lower_margin = diff - ExtReal(r.lower);
        r.upper_margin = ExtReal(r.upper) - diff;
        r.holds = r.maps_certified && r.classes_match && r.lower_margin >= ExtReal(0) && r.upper_margin >= ExtReal(0);
    } else {
        r.lower_margin = r.upper_margin = ExtReal::pos_inf();
        r.holds = r.maps_certified && r.classes_match && r.rho_h == r.rho_f;
    }
    return r;
}

Rational ProductMapData::max_delta() const
{
    Rational m = 0;
    for (const auto& e : table)
        m = std::max(m, e.delta);
    return m;
}

NovikovChain pants_product(const NovikovChain& a, const NovikovChain& b, const ProductMapData& p)
{
    check_chain(*p.left, a);
    check_chain(*p.right, b);
    std::map<std::pair<std::string, std::string>, std::vector<const ProductEntry*>> idx;
    for (const auto& e : p.table)
        idx[{e.left, e.right}].push_back(&e);
    std::vector<ChainTerm> out;
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) {
            auto it = idx.find({x.gen.orbit, y.gen.orbit});
            if (it == idx.end())
                continue;
            for (const ProductEntry* e : it->second)
                for (const auto& s : e->scalar.terms()) {
                    Generator z = p.target->generator(e->to, x.gen.cap + y.gen.cap + s.exponent);
                    std::string triple = x.gen.to_string() + " * " + y.gen.to_string() + " -> " + z.to_string();
                    if (z.degree != x.gen.degree + y.gen.degree - p.n)
                        throw StructuralError("product degree bookkeeping fails at " + triple);
                    if (z.action > x.gen.action + y.gen.action + e->delta)
                        throw Error("ledger", "level ledger violated at " + triple);
                    out.push_back({x.coef * y.coef * s.coef, z});
                }
        }
    return NovikovChain(std::move(out));
}

ProductMapData morse_product_map(const MorseData& m, const ClassicalData& cd, const ProductFixture& p,
                                 const Rational& eps1, const Rational& eps2, const GammaRef& gamma)
{
    ProductMapData out;
    out.left = std::make_shared<const FilteredComplex>(build_small_floer(m, eps1, gamma));
    out.right = std::make_shared<const FilteredComplex>(build_small_floer(m, eps2, gamma));
    out.target = std::make_shared<const FilteredComplex>(build_small_floer(m, eps1 + eps2, gamma));
    out.n = m.half_dim();
    auto single = [&](const std::string& cls) {
        const auto& c = cd.find(cls);
        if (c.chain.size() != 1)
            throw StructuralError("class " + cls + " needs a single-point representative");
        return c.chain.front();
    };
    std::map<std::tuple<std::string, std::string, std::string>, NovikovScalar> acc;
    for (const auto& [key, value] : p.table) {
        auto [px, rx] = single(key.first);
        auto [py, ry] = single(key.second);
        for (const auto& t : value.terms())
            for (const auto& [pz, rz] : cd.find(t.cls).chain) {
                auto s = NovikovScalar::monomial(gamma, Direction::Downward, t.coef * rz / (rx * ry), t.exponent);
                auto k = std::make_tuple(px, py, pz);
                auto it = acc.find(k);
                if (it == acc.end())
                    acc.emplace(k, s);
                else
                    it->second = it->second + s;
            }
    }
    for (auto& [k, s] : acc) {
        if (s.is_zero())
            continue;
        const auto& [px, py, pz] = k;
        Rational need = 0;
        Rational ax = out.left->generator(px, gamma->zero()).action;
        Rational ay = out.right->generator(py, gamma->zero()).action;
        for (const auto& t : s.terms())
            need = std::max(need, Rational(out.target->generator(pz, t.exponent).action - ax - ay));
        out.table.push_back({px, py, pz, s, need});
    }
    return out;
}

TriangleReport triangle_check(const ProductMapData& p, const NovikovChain& rep_a, long deg_a, const NovikovChain& rep_b,
                              long deg_b, const NovikovChain& rep_ab)
{
    TriangleReport r;
    r.delta = p.max_delta();
    auto ra = spectral_invariant(*p.left, rep_a, deg_a);
    auto rb = spectral_invariant(*p.right, rep_b, deg_b);
    long deg = deg_a + deg_b - p.n;
    r.rho_a = ra.rho;
    r.rho_b = rb.rho;
    r.rho_ab = spectral_invariant(*p.target, rep_ab, deg).rho;
    auto prod = pants_product(ra.witness, rb.witness, p);
    r.product_level = level_and_peak(prod).level;
    r.represents = boundary_apply(*p.target, prod).is_zero() && is_zero_class(*p.target, prod - rep_ab, deg);
    ExtReal bound = r.rho_a + r.rho_b;
    r.holds = r.represents && r.product_level <= bound + ExtReal(r.delta) && r.rho_ab <= bound + ExtReal(2 * r.delta);
    return r;
}

SeidelShift deck_shift(const FilteredComplex& c, const GammaElement& a)
{
    SeidelShift s;
    for (const auto& o : c.orbits()) {
        s.bijection[o.id] = o.id;
        s.cap_shift[o.id] = a;
    }
    s.i_omega = -c.gamma()->omega(a);
    s.i_degree = -2 * c.gamma()->c1(a);
    return s;
}

SeidelShift inverse(const SeidelShift& s)
{
    SeidelShift out;
    for (const auto& [x, y] : s.bijection) {
        if (!out.bijection.emplace(y, x).second)
            throw StructuralError("Seidel orbit map is not injective at " + y);
        out.cap_shift[y] = -s.cap_shift.at(x);
    }
    out.i_omega = -s.i_omega;
    out.i_degree = -s.i_degree;
    return out;
}

SeidelShift compose_shifts(const SeidelShift& second, const SeidelShift& first)
{
    SeidelShift out;
    for (const auto& [x, y] : first.bijection) {
        auto it = second.bijection.find(y);
        if (it == second.bijection.end())
            throw StructuralError("composed Seidel shifts do not match at " + y);
        out.bijection[x] = it->second;
        out.cap_shift[x] = first.cap_shift.at(x) + second.cap_shift.at(y);
    }
    out.i_omega = first.i_omega + second.i_omega;
    out.i_degree = first.i_degree + second.i_degree;
    return out;
}

FilteredComplex seidel_complex(const FilteredComplex& c, const SeidelShift& s)
{
    const auto& g = *c.gamma();
    std::set<std::string> images;
    for (const auto& o : c.orbits()) {
        auto b = s.bijection.find(o.id);
        auto k = s.cap_shift.find(o.id);
        if (b == s.bijection.end() || k == s.cap_shift.end())
            throw StructuralError("Seidel shift does not cover orbit " + o.id);
        if (!images.insert(b->second).second)
            throw StructuralError("Seidel orbit map is not bijective at " + b->second);
        g.check(k->second);
    }
    if (s.bijection.size() != c.orbits().size())
        throw StructuralError("Seidel orbit map has entries outside the complex");
    std::vector<Orbit> orbits;
    for (const auto& o : c.orbits()) {
        const auto& a = s.cap_shift.at(o.id);
        orbits.push_back({s.bijection.at(o.id), Rational(o.action + s.i_omega + g.omega(a)),
                          o.degree + s.i_degree + 2 * g.c1(a)});
    }
    std::vector<BoundaryEntry> entries;
    for (size_t i = 0; i < c.orbits().size(); ++i) {
        const auto& x = c.orbits()[i].id;
        for (const auto& t : c.boundary_of(static_cast<int>(i))) {
            const auto& y = c.orbits()[t.to].id;
            GammaElement e = t.shift + s.cap_shift.at(y) - s.cap_shift.at(x);
            entries.push_back({s.bijection.at(x), s.bijection.at(y),
                               NovikovScalar::monomial(c.gamma(), Direction::Downward, t.coef, e), {}});
        }
    }
    return FilteredComplex(c.gamma(), std::move(orbits), std::move(entries));
}

NovikovChain seidel_transport(const FilteredComplex& target, const SeidelShift& s, const NovikovChain& a)
{
    std::vector<ChainTerm> out;
    for (const auto& t : a.terms())
        out.push_back({t.coef, target.generator(s.bijection.at(t.gen.orbit), t.gen.cap + s.cap_shift.at(t.gen.orbit))});
    return NovikovChain(std::move(out));
}

SeidelReport seidel_shift(const FilteredComplex& c, const SeidelShift& s, const NovikovChain& rep, long degree)
{
    SeidelReport r;
    r.shifted = std::make_shared<const FilteredComplex>(seidel_complex(c, s));
    r.transported = seidel_transport(*r.shifted, s, rep);
    r.rho_before = spectral_invariant(c, rep, degree).rho;
    r.rho_after = spectral_invariant(*r.shifted, r.transported, degree + s.i_degree).rho;
    r.exact = r.rho_before.is_finite() ? r.rho_after == r.rho_before + ExtReal(s.i_omega) : r.rho_after == r.rho_before;
    return r;
}

}  // namespace spectra
