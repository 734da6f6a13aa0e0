#include "novikov_spectra/morse_quantum.hpp"

#include "novikov_spectra/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace spectra {

namespace {

ExtReal half(const ExtReal& x) { return x.is_finite() ? ExtReal(Rational(x.value() / 2)) : x; }

ExtReal abs_ext(const ExtReal& x) { return x < ExtReal(0) ? -x : x; }

void require_same(const QuantumClass& a, const QuantumClass& b)
{
    if (a.direction() != b.direction())
        throw StructuralError("quantum classes of different directions");
    if (!(*a.gamma() == *b.gamma()))
        throw StructuralError("quantum classes over different gamma groups");
}

}  // namespace

const CriticalPoint& MorseData::point(const std::string& id) const
{
    for (const auto& p : points)
        if (p.id == id)
            return p;
    throw StructuralError("unknown critical point " + id);
}

Rational MorseData::max_value() const
{
    if (points.empty())
        throw StructuralError("Morse data without critical points");
    Rational m = points.front().value;
    for (const auto& p : points)
        m = std::max(m, p.value);
    return m;
}

Rational MorseData::min_value() const
{
    if (points.empty())
        throw StructuralError("Morse data without critical points");
    Rational m = points.front().value;
    for (const auto& p : points)
        m = std::min(m, p.value);
    return m;
}

ValidationReport validate_morse(const MorseData& m)
{
    ValidationReport r;
    auto bad = [&](std::string kind, std::string detail, std::vector<std::string> w = {}) {
        r.violations.push_back({std::move(kind), std::move(detail), std::move(w)});
    };
    if (m.dim < 0 || m.dim % 2 != 0)
        bad("morse-dimension", "manifold dimension must be even and nonnegative");
    if (m.points.empty())
        bad("morse-empty", "no critical points");
    std::map<std::string, const CriticalPoint*> by_id;
    for (const auto& p : m.points) {
        if (!by_id.emplace(p.id, &p).second)
            bad("morse-duplicate", "critical point listed twice", {p.id});
        if (p.index < 0 || p.index > m.dim)
            bad("morse-index", "index outside [0, dim]", {p.id});
    }
    if (!r.ok())
        return r;

    std::map<std::pair<std::string, std::string>, Rational> d;
    for (const auto& e : m.boundary) {
        auto f = by_id.find(e.from), t = by_id.find(e.to);
        if (f == by_id.end() || t == by_id.end()) {
            bad("morse-unknown", "edge references an unknown point", {e.from, e.to});
            continue;
        }
        if (f->second->index != t->second->index + 1)
            bad("degree", "Morse boundary must drop the index by one", {e.from, e.to});
        if (!(t->second->value < f->second->value))
            bad("level-increase", "gradient lines decrease f", {e.from, e.to});
        d[{e.from, e.to}] += e.coef;
    }
    if (!r.ok())
        return r;

    for (const auto& p : m.points) {
        std::map<std::string, Rational> dd;
        for (const auto& [k1, c1] : d)
            if (k1.first == p.id)
                for (const auto& [k2, c2] : d)
                    if (k2.first == k1.second)
                        dd[k2.second] += c1 * c2;
        for (const auto& [q, c] : dd)
            if (c != 0)
                bad("d-squared", "Morse boundary squares to a nonzero map", {p.id, q});
    }

    if (m.betti) {
        const auto& b = *m.betti;
        if (static_cast<long>(b.size()) != m.dim + 1) {
            bad("morse-betti", "expected dim + 1 Betti numbers");
            return r;
        }
        // rank of d_k : C_k -> C_{k-1} for every k
        std::vector<size_t> rk(m.dim + 2, 0);
        std::vector<long> count(m.dim + 1, 0);
        for (const auto& p : m.points)
            ++count[p.index];
        for (long k = 1; k <= m.dim; ++k) {
            std::vector<std::string> rows;
            for (const auto& p : m.points)
                if (p.index == k - 1)
                    rows.push_back(p.id);
            std::vector<linalg::QVector> cols;
            for (const auto& p : m.points) {
                if (p.index != k)
                    continue;
                linalg::QVector col(rows.size(), 0);
                for (size_t i = 0; i < rows.size(); ++i) {
                    auto it = d.find({p.id, rows[i]});
                    if (it != d.end())
                        col[i] = it->second;
                }
                cols.push_back(std::move(col));
            }
            rk[k] = rows.empty() ? 0 : linalg::rank(cols);
        }
        for (long k = 0; k <= m.dim; ++k) {
            long h = count[k] - static_cast<long>(rk[k]) - static_cast<long>(rk[k + 1]);
            if (count[k] < b[k])
                bad("morse-inequality", "fewer critical points than the Betti number in degree " + std::to_string(k));
            else if (h != b[k])
                bad("morse-homology", "Morse homology disagrees with the Betti number in degree " + std::to_string(k));
        }
    }
    return r;
}

FilteredComplex build_small_floer(const MorseData& m, const Rational& eps, GammaRef gamma)
{
    if (eps <= 0)
        throw DomainError("epsilon must be positive");
    auto report = validate_morse(m);
    if (!report.ok())
        throw StructuralError("invalid Morse data: " + report.summary());
    std::vector<Orbit> orbits;
    for (const auto& p : m.points)
        orbits.push_back({p.id, Rational(-eps * p.value), m.half_dim() - p.index});
    std::vector<BoundaryEntry> entries;
    for (const auto& e : m.boundary)
        entries.push_back({e.to, e.from, NovikovScalar::monomial(gamma, Direction::Downward, e.coef, gamma->zero()), {}});
    return FilteredComplex(std::move(gamma), std::move(orbits), std::move(entries));
}

long index_of(const FilteredComplex& c, const Generator& g)
{
    return c.orbits().at(c.orbit_index(g.orbit)).degree - 2 * c.gamma()->c1(g.cap);
}

long morse_index(const MorseData& m, const Generator& g) { return m.point(g.orbit).index; }

const ClassicalClass& ClassicalData::find(const std::string& id) const
{
    for (const auto& c : classes)
        if (c.id == id)
            return c;
    throw StructuralError("unknown class " + id);
}

Rational classical_pairing(const ClassicalData& cd, const std::string& a, const std::string& b)
{
    Rational s = 0;
    for (const auto& [p, x] : cd.find(a).cochain)
        for (const auto& [q, y] : cd.find(b).chain)
            if (p == q)
                s += x * y;
    return s;
}

QuantumClass::QuantumClass(GammaRef gamma, Direction dir, std::vector<QuantumTerm> terms)
    : gamma_(std::move(gamma)), dir_(dir)
{
    std::map<std::pair<std::string, GammaElement>, Rational> merged;
    for (auto& t : terms) {
        gamma_->check(t.exponent);
        merged[{t.cls, t.exponent}] += t.coef;
    }
    for (auto& [k, c] : merged)
        if (c != 0)
            terms_.push_back({c, k.first, k.second});
}

QuantumClass QuantumClass::basis(GammaRef gamma, const std::string& cls, const Rational& coef)
{
    GammaElement z = gamma->zero();
    return QuantumClass(std::move(gamma), Direction::Upward, {{coef, cls, z}});
}

long QuantumClass::degree(const ClassicalData& cd) const
{
    if (terms_.empty())
        throw DomainError("degree of the zero class");
    std::optional<long> deg;
    for (const auto& t : terms_) {
        long c1 = gamma_->c1(t.exponent);
        long base = cd.find(t.cls).degree;
        long d = dir_ == Direction::Upward ? base + 2 * c1 : (cd.dim - base) - 2 * c1;
        if (deg && *deg != d)
            throw StructuralError("quantum class is not homogeneous: " + to_string());
        deg = d;
    }
    return *deg;
}

QuantumClass QuantumClass::scaled(const Rational& c) const
{
    auto t = terms_;
    for (auto& x : t)
        x.coef *= c;
    return QuantumClass(gamma_, dir_, std::move(t));
}

QuantumClass QuantumClass::shifted(const GammaElement& a) const
{
    auto t = terms_;
    for (auto& x : t)
        x.exponent = x.exponent + a;
    return QuantumClass(gamma_, dir_, std::move(t));
}

QuantumClass operator+(const QuantumClass& a, const QuantumClass& b)
{
    require_same(a, b);
    auto t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return QuantumClass(a.gamma_, a.dir_, std::move(t));
}

bool operator==(const QuantumClass& a, const QuantumClass& b)
{
    if (a.dir_ != b.dir_ || a.terms_.size() != b.terms_.size())
        return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        const auto &x = a.terms_[i], &y = b.terms_[i];
        if (x.coef != y.coef || x.cls != y.cls || x.exponent != y.exponent)
            return false;
    }
    return true;
}

std::string QuantumClass::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    const char* q = dir_ == Direction::Upward ? "q^-" : "q^";
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            s += " + ";
        s += format_rational(terms_[i].coef) + " " + terms_[i].cls;
        if (!terms_[i].exponent.is_zero())
            s += " " + std::string(q) + terms_[i].exponent.to_string();
    }
    return s;
}

QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b, const ProductFixture& p)
{
    require_same(a, b);
    if (a.direction() != Direction::Upward)
        throw StructuralError("quantum product takes cohomology classes");
    QuantumClass out(a.gamma(), Direction::Upward);
    for (const auto& x : a.terms())
        for (const auto& y : b.terms()) {
            auto it = p.table.find({x.cls, y.cls});
            if (it == p.table.end())
                throw Error("fixture-incomplete", "fixture incomplete: no structure constant for " + x.cls + " * " + y.cls);
            out = out + it->second.shifted(x.exponent + y.exponent).scaled(x.coef * y.coef);
        }
    return out;
}

std::vector<std::string> check_product_fixture(const ProductFixture& p, const ClassicalData& cd, const GammaRef& gamma)
{
    std::vector<std::string> fails;
    std::vector<QuantumClass> basis;
    for (const auto& c : cd.classes)
        basis.push_back(QuantumClass::basis(gamma, c.id));
    try {
        cd.find(p.unit);
    } catch (const Error&) {
        fails.push_back("unit " + p.unit + " is not a class");
        return fails;
    }
    QuantumClass one = QuantumClass::basis(gamma, p.unit);
    for (const auto& [k, v] : p.table) {
        if (v.direction() != Direction::Upward)
            fails.push_back("structure constant " + k.first + "*" + k.second + " is not a cohomology class");
    }
    try {
        for (const auto& x : basis) {
            if (!(quantum_product(one, x, p) == x) || !(quantum_product(x, one, p) == x))
                fails.push_back("unit fails on " + x.terms().front().cls);
            for (const auto& y : basis) {
                auto xy = quantum_product(x, y, p);
                if (!xy.is_zero() && xy.degree(cd) != x.degree(cd) + y.degree(cd))
                    fails.push_back("grading fails on " + x.terms().front().cls + "*" + y.terms().front().cls);
                for (const auto& z : basis)
                    if (!(quantum_product(xy, z, p) == quantum_product(x, quantum_product(y, z, p), p)))
                        fails.push_back("associativity fails on " + x.terms().front().cls + "," +
                                        y.terms().front().cls + "," + z.terms().front().cls);
            }
        }
    } catch (const Error& e) {
        fails.push_back(e.what());
    }
    return fails;
}

Rational pairing(const QuantumClass& up, const QuantumClass& down, const ClassicalData& cd)
{
    if (up.direction() != Direction::Upward || down.direction() != Direction::Downward)
        throw StructuralError("pairing takes a cohomology and a homology class");
    if (!(*up.gamma() == *down.gamma()))
        throw StructuralError("pairing over different gamma groups");
    Rational s = 0;
    for (const auto& a : up.terms())
        for (const auto& b : down.terms())
            if (a.exponent == b.exponent)
                s += a.coef * b.coef * classical_pairing(cd, a.cls, b.cls);
    return s;
}

QuantumClass flat(const QuantumClass& a)
{
    if (a.direction() != Direction::Upward)
        throw StructuralError("flat takes a cohomology class");
    return QuantumClass(a.gamma(), Direction::Downward, a.terms());
}

QuantumClass sharp(const QuantumClass& b)
{
    if (b.direction() != Direction::Downward)
        throw StructuralError("sharp takes a homology class");
    return QuantumClass(b.gamma(), Direction::Upward, b.terms());
}

QhValuation qh_valuation(const QuantumClass& a)
{
    if (a.is_zero())
        throw DomainError("valuation of the zero class");
    const auto& g = *a.gamma();
    auto level = [&](const GammaElement& e) -> Rational {
        return a.direction() == Direction::Upward ? Rational(-g.omega(e)) : g.omega(e);
    };
    std::set<GammaElement> exps;
    std::set<Rational> levels;
    for (const auto& t : a.terms()) {
        exps.insert(t.exponent);
        levels.insert(level(t.exponent));
    }
    QhValuation r{*levels.rbegin(), QuantumClass(a.gamma(), a.direction()), true, ExtReal::pos_inf(), *levels.begin(),
                  true};
    std::set<GammaElement> top;
    std::vector<QuantumTerm> lead;
    for (const auto& t : a.terms())
        if (level(t.exponent) == r.v) {
            top.insert(t.exponent);
            lead.push_back(t);
        }
    r.leading = QuantumClass(a.gamma(), a.direction(), std::move(lead));
    r.leading_unique = top.size() == 1;
    if (levels.size() > 1)
        r.gap = Rational(r.v - *std::next(levels.rbegin()));
    r.readings_agree = r.min_reading == r.v;
    return r;
}

NovikovChain flat_chain(const FilteredComplex& c, const QuantumClass& a, const ClassicalData& cd)
{
    if (a.direction() != Direction::Upward)
        throw StructuralError("flat_chain takes a cohomology class");
    std::vector<ChainTerm> terms;
    for (const auto& t : a.terms())
        for (const auto& [p, x] : cd.find(t.cls).chain)
            terms.push_back({t.coef * x, c.generator(p, t.exponent)});
    NovikovChain out(std::move(terms));
    if (!boundary_apply(c, out).is_zero())
        throw StructuralError("representative of " + a.to_string() + " is not a cycle");
    return out;
}

BoundReport normalization_check(const MorseData& m, const Rational& eps, const QuantumClass& a, const GammaRef& gamma,
                          const ClassicalData& cd)
{
    FilteredComplex c = build_small_floer(m, eps, gamma);
    NovikovChain rep = flat_chain(c, a, cd);
    long degree = m.half_dim() - a.degree(cd);
    auto val = qh_valuation(a);
    BoundReport r;
    r.eps = eps;
    r.v = val.v;
    r.gap = val.gap;
    r.rho = spectral_invariant(c, rep, degree).rho;
    ExtReal v(val.v);
    Rational top = eps * m.max_value(), bottom = eps * m.min_value();
    r.hypothesis = !val.gap.is_finite() || ExtReal(Rational(eps * (m.max_value() - m.min_value()))) < half(val.gap);
    bool finite = r.rho.is_finite();
    r.gap_bound = finite && (!val.gap.is_finite() || (v - half(val.gap) <= r.rho && r.rho <= v + half(val.gap)));
    r.sandwich = finite && v - ExtReal(top) <= r.rho && r.rho <= v + ExtReal(top);
    r.sharp_sandwich = finite && v - ExtReal(top) <= r.rho && r.rho <= v - ExtReal(bottom);
    r.distance = finite ? abs_ext(r.rho - v) : ExtReal::pos_inf();
    return r;
}

}  // namespace spectra
