#include "novikov_spectra/complex.hpp"

#include <algorithm>
#include <sstream>

namespace spectra {

bool ValidationReport::has(const std::string& kind) const
{
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string ValidationReport::summary() const
{
    std::string s;
    for (const auto& v : violations) {
        s += (s.empty() ? "" : "\n") + v.kind + ": " + v.detail;
        if (!v.witness.empty()) {
            s += " [";
            for (size_t i = 0; i < v.witness.size(); ++i)
                s += (i ? ", " : "") + v.witness[i];
            s += "]";
        }
    }
    return s;
}

FilteredComplex::FilteredComplex(GammaRef gamma, std::vector<Orbit> orbits, std::vector<BoundaryEntry> boundary,
                                 std::optional<Rational> ceiling)
    : gamma_(std::move(gamma)), orbits_(std::move(orbits)), raw_(std::move(boundary)), ceiling_(std::move(ceiling))
{
    if (!gamma_)
        throw StructuralError("complex without a Gamma group");
    for (size_t i = 0; i < orbits_.size(); ++i) {
        orbits_[i].action.canonicalize();
        if (!index_.emplace(orbits_[i].id, static_cast<int>(i)).second)
            throw StructuralError("duplicate orbit id '" + orbits_[i].id + "'");
    }
    matrix_.resize(orbits_.size());

    std::map<std::pair<int, int>, std::pair<NovikovScalar, size_t>> seen;
    for (size_t e = 0; e < raw_.size(); ++e) {
        const auto& entry = raw_[e];
        int from = orbit_index(entry.from), to = orbit_index(entry.to);
        if (entry.scalar.direction() != Direction::Downward)
            throw StructuralError("boundary entry " + entry.from + " -> " + entry.to + " is not a downward scalar");
        if (!(*entry.scalar.gamma() == *gamma_))
            throw StructuralError("boundary entry " + entry.from + " -> " + entry.to + " uses another Gamma group");
        NovikovScalar normalized = entry.from_cap ? entry.scalar.shifted(-*entry.from_cap) : entry.scalar;
        auto key = std::make_pair(from, to);
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(key, std::make_pair(normalized, e));
            continue;
        }
        if (!(it->second.first == normalized)) {
            const auto& first = raw_[it->second.second];
            conflicts_.push_back({"gamma-equivariance",
                                  "entries for the same orbit pair disagree after recapping",
                                  {entry.from + " -> " + entry.to,
                                   "cap " + (first.from_cap ? first.from_cap->to_string() : gamma_->zero().to_string()) +
                                       ": " + first.scalar.to_string(),
                                   "cap " + (entry.from_cap ? entry.from_cap->to_string() : gamma_->zero().to_string()) +
                                       ": " + entry.scalar.to_string()}});
        }
    }
    for (const auto& [key, value] : seen)
        for (const auto& t : value.first.terms())
            matrix_[key.first].push_back({key.second, t.exponent, t.coef});
    for (auto& row : matrix_)
        std::sort(row.begin(), row.end(), [](const BoundaryTerm& a, const BoundaryTerm& b) {
            return std::tie(a.to, a.shift) < std::tie(b.to, b.shift);
        });
}

int FilteredComplex::orbit_index(const std::string& id) const
{
    auto it = index_.find(id);
    if (it == index_.end())
        throw StructuralError("unknown orbit '" + id + "'");
    return it->second;
}

bool FilteredComplex::has_orbit(const std::string& id) const { return index_.count(id) > 0; }

Generator FilteredComplex::generator(int i, const GammaElement& cap) const
{
    const Orbit& o = orbits_.at(i);
    auto [w, c] = gamma_->eval(cap);
    return Generator{o.id, cap, o.action - w, o.degree - 2 * c};
}

Generator FilteredComplex::generator(const std::string& orbit, const GammaElement& cap) const
{
    return generator(orbit_index(orbit), cap);
}

bool FilteredComplex::admits(const Generator& g) const { return !ceiling_ || g.action < *ceiling_; }

ValidationReport validate_complex(const FilteredComplex& c, bool strict_levels)
{
    ValidationReport r;
    r.violations = c.equivariance_conflicts();
    const auto& orbits = c.orbits();
    const auto& gamma = *c.gamma();
    for (size_t i = 0; i < orbits.size(); ++i) {
        for (const auto& t : c.boundary_of(static_cast<int>(i))) {
            Generator x = c.generator(static_cast<int>(i), gamma.zero());
            Generator y = c.generator(t.to, t.shift);
            if (y.degree != x.degree - 1)
                r.violations.push_back({"degree",
                                        "boundary term has degree " + std::to_string(y.degree) + ", expected " +
                                            std::to_string(x.degree - 1),
                                        {x.to_string(), y.to_string()}});
            bool bad = strict_levels ? !(y.action < x.action) : (y.action > x.action);
            if (bad)
                r.violations.push_back({"level-increase",
                                        "boundary term at action " + format_rational(y.action) + " from action " +
                                            format_rational(x.action),
                                        {x.to_string(), y.to_string()}});
        }
        // d(d x) collected per target generator
        std::map<std::pair<int, GammaElement>, Rational> dd;
        for (const auto& t : c.boundary_of(static_cast<int>(i)))
            for (const auto& u : c.boundary_of(t.to))
                dd[{u.to, t.shift + u.shift}] += t.coef * u.coef;
        for (const auto& [key, coef] : dd)
            if (coef != 0)
                r.violations.push_back({"d-squared",
                                        "d(d x) has coefficient " + format_rational(coef),
                                        {orbits[i].id + gamma.zero().to_string(),
                                         orbits[key.first].id + key.second.to_string()}});
    }
    for (size_t i = 0; i < orbits.size(); ++i)
        for (size_t j = i + 1; j < orbits.size(); ++j) {
            long dd = orbits[j].degree - orbits[i].degree;
            if (dd % 2 != 0)
                continue;
            auto d = gamma.solve(orbits[j].action - orbits[i].action, dd / 2);
            if (d)
                r.violations.push_back({"tie-peak",
                                        "distinct generators share degree and action",
                                        {orbits[i].id + gamma.zero().to_string(), orbits[j].id + d->to_string()}});
        }
    return r;
}

NovikovChain::NovikovChain(std::vector<ChainTerm> terms, ExtReal floor) : floor_(std::move(floor))
{
    std::map<std::pair<std::string, GammaElement>, ChainTerm> acc;
    for (auto& t : terms) {
        auto key = std::make_pair(t.gen.orbit, t.gen.cap);
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, t);
            continue;
        }
        if (it->second.gen.action != t.gen.action || it->second.gen.degree != t.gen.degree)
            throw StructuralError("inconsistent data for generator " + t.gen.to_string());
        it->second.coef += t.coef;
    }
    std::optional<long> deg;
    for (auto& [key, t] : acc) {
        if (t.coef == 0 || !(ExtReal(t.gen.action) > floor_))
            continue;
        if (deg && *deg != t.gen.degree)
            throw StructuralError("mixed-degree chain: degrees " + std::to_string(*deg) + " and " +
                                  std::to_string(t.gen.degree));
        deg = t.gen.degree;
        terms_.push_back(std::move(t));
    }
}

std::optional<long> NovikovChain::degree() const
{
    if (terms_.empty())
        return std::nullopt;
    return terms_.front().gen.degree;
}

Rational NovikovChain::coefficient(const std::string& orbit, const GammaElement& cap) const
{
    for (const auto& t : terms_)
        if (t.gen.orbit == orbit && t.gen.cap == cap)
            return t.coef;
    return 0;
}

NovikovChain NovikovChain::scaled(const Rational& c) const
{
    std::vector<ChainTerm> t = terms_;
    for (auto& x : t)
        x.coef *= c;
    return NovikovChain(std::move(t), floor_);
}

NovikovChain operator+(const NovikovChain& a, const NovikovChain& b)
{
    std::vector<ChainTerm> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return NovikovChain(std::move(t), max(a.floor_, b.floor_));
}

bool operator==(const NovikovChain& a, const NovikovChain& b)
{
    if (a.floor_ != b.floor_ || a.terms_.size() != b.terms_.size())
        return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].coef != b.terms_[i].coef || !(a.terms_[i].gen == b.terms_[i].gen))
            return false;
    return true;
}

std::string NovikovChain::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    for (size_t i = 0; i < terms_.size(); ++i)
        s += (i ? " + " : "") + format_rational(terms_[i].coef) + "*" + terms_[i].gen.to_string();
    return s;
}

LevelPeak level_and_peak(const NovikovChain& a)
{
    LevelPeak r;
    if (a.is_zero()) {
        if (!a.floor().is_neg_inf())
            throw IndeterminateError("chain vanishes above its precision floor " + a.floor().to_string());
        return r;
    }
    Rational top = a.terms().front().gen.action;
    for (const auto& t : a.terms())
        if (t.gen.action > top)
            top = t.gen.action;
    r.level = top;
    for (const auto& t : a.terms())
        if (t.gen.action == top)
            r.top.push_back(t.gen);
    r.ambiguous = r.top.size() > 1;
    if (!r.ambiguous)
        r.peak = r.top.front();
    return r;
}

void check_chain(const FilteredComplex& c, const NovikovChain& a)
{
    for (const auto& t : a.terms()) {
        Generator g = c.generator(t.gen.orbit, t.gen.cap);
        if (g.action != t.gen.action || g.degree != t.gen.degree)
            throw StructuralError("generator " + t.gen.to_string() + " carries action/degree inconsistent with the complex");
    }
}

NovikovChain boundary_apply(const FilteredComplex& c, const NovikovChain& a)
{
    check_chain(c, a);
    std::vector<ChainTerm> out;
    for (const auto& t : a.terms()) {
        int i = c.orbit_index(t.gen.orbit);
        for (const auto& b : c.boundary_of(i)) {
            Generator y = c.generator(b.to, t.gen.cap + b.shift);
            if (y.degree != t.gen.degree - 1)
                throw StructuralError("boundary of " + t.gen.to_string() + " reaches " + y.to_string() +
                                      " of degree " + std::to_string(y.degree));
            out.push_back({t.coef * b.coef, y});
        }
    }
    return NovikovChain(std::move(out), a.floor());
}

NovikovChain gamma_shift(const FilteredComplex& c, const NovikovChain& a, const GammaElement& shift)
{
    std::vector<ChainTerm> out;
    for (const auto& t : a.terms())
        out.push_back({t.coef, c.generator(t.gen.orbit, t.gen.cap + shift)});
    ExtReal f = a.floor().is_finite() ? ExtReal(a.floor().value() - c.gamma()->omega(shift)) : a.floor();
    return NovikovChain(std::move(out), f);
}

bool in_action_spectrum(const FilteredComplex& c, const Rational& level)
{
    for (const auto& o : c.orbits())
        if (c.gamma()->solve_omega(o.action - level))
            return true;
    return false;
}

FilteredComplex truncate_below(const FilteredComplex& c, const Rational& level)
{
    if (in_action_spectrum(c, level))
        throw Error("spectral-level", "truncation level " + format_rational(level) + " lies in the action spectrum");
    Rational ceiling = c.ceiling() ? std::min(*c.ceiling(), level) : level;
    if (c.gamma()->rank() > 0)
        return FilteredComplex(c.gamma(), c.orbits(), c.raw_boundary(), ceiling);
    std::vector<Orbit> kept;
    for (const auto& o : c.orbits())
        if (o.action < ceiling)
            kept.push_back(o);
    std::vector<BoundaryEntry> entries;
    auto keeps = [&](const std::string& id) {
        return std::any_of(kept.begin(), kept.end(), [&](const Orbit& o) { return o.id == id; });
    };
    for (const auto& e : c.raw_boundary())
        if (keeps(e.from) && keeps(e.to))
            entries.push_back(e);
    return FilteredComplex(c.gamma(), std::move(kept), std::move(entries));
}

}  // namespace spectra
