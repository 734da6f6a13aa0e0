#include "novikov_spectra/novikov.hpp"

#include "novikov_spectra/lattice.hpp"

#include <map>
#include <sstream>

namespace spectra {

bool GammaElement::is_zero() const
{
    for (long c : coords)
        if (c != 0)
            return false;
    return true;
}

GammaElement operator+(const GammaElement& a, const GammaElement& b)
{
    if (a.coords.size() != b.coords.size())
        throw StructuralError("Gamma element rank mismatch");
    GammaElement r = a;
    for (size_t i = 0; i < r.coords.size(); ++i)
        r.coords[i] += b.coords[i];
    return r;
}

GammaElement operator-(const GammaElement& a)
{
    GammaElement r = a;
    for (auto& c : r.coords)
        c = -c;
    return r;
}

GammaElement operator-(const GammaElement& a, const GammaElement& b) { return a + (-b); }

GammaElement GammaElement::scaled(long m) const
{
    GammaElement r = *this;
    for (auto& c : r.coords)
        c *= m;
    return r;
}

std::string GammaElement::to_string() const
{
    std::string s = "[";
    for (size_t i = 0; i < coords.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(coords[i]);
    }
    return s + "]";
}

namespace {

GammaElement from_int_vector(const lattice::IntVector& v)
{
    GammaElement a;
    for (const auto& x : v) {
        if (!x.fits_slong_p())
            throw StructuralError("Gamma coordinate overflow");
        a.coords.push_back(x.get_si());
    }
    return a;
}

}  // namespace

GammaGroup::GammaGroup(std::vector<Rational> omega, std::vector<long> c1, bool approximate)
    : omega_(std::move(omega)), c1_(std::move(c1)), approximate_(approximate)
{
    if (omega_.size() != c1_.size())
        throw StructuralError("GammaGroup: omega and c1 lists differ in length");
    for (size_t i = 0; i < omega_.size(); ++i)
        if (omega_[i] == 0 && c1_[i] == 0)
            throw StructuralError("GammaGroup: generator " + std::to_string(i) +
                                  " has omega = c1 = 0 and must be quotiented out");
    lattice::IntVector om;
    lattice::clear_denominators(omega_, om);
    lattice::IntVector cv;
    for (long c : c1_)
        cv.emplace_back(c);
    int k = rank();
    if (k > 0 && !lattice::kernel({om, cv}, k).empty())
        throw StructuralError("GammaGroup: a nonzero element has omega = c1 = 0");

    Integer den = 1;
    for (const auto& w : omega_)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), w.get_den_mpz_t());
    Integer g = 0;
    for (const auto& w : omega_) {
        Integer n = w.get_num() * (den / w.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    period_ = Rational(g, den);
    period_.canonicalize();

    if (k > 0) {
        auto ker = lattice::kernel({cv}, k);
        if (!ker.empty()) {
            GammaElement t = from_int_vector(ker.front());
            if (this->omega(t) < 0)
                t = -t;
            kernel_gen_ = t;
        }
    }
}

std::shared_ptr<const GammaGroup> GammaGroup::trivial()
{
    static const auto g = std::make_shared<const GammaGroup>(std::vector<Rational>{}, std::vector<long>{});
    return g;
}

void GammaGroup::check(const GammaElement& a) const
{
    if (a.rank() != rank())
        throw StructuralError("Gamma element has " + std::to_string(a.rank()) + " coordinates, group rank is " +
                              std::to_string(rank()));
}

Rational GammaGroup::omega(const GammaElement& a) const
{
    check(a);
    Rational r = 0;
    for (int i = 0; i < rank(); ++i)
        if (a.coords[i] != 0)
            r += omega_[i] * a.coords[i];
    return r;
}

long GammaGroup::c1(const GammaElement& a) const
{
    check(a);
    long r = 0;
    for (int i = 0; i < rank(); ++i)
        r += c1_[i] * a.coords[i];
    return r;
}

std::pair<Rational, long> GammaGroup::eval(const GammaElement& a) const { return {omega(a), c1(a)}; }

GammaElement GammaGroup::basis(int i) const
{
    GammaElement e = zero();
    e.coords.at(i) = 1;
    return e;
}

std::optional<GammaElement> GammaGroup::solve(const Rational& w, long m) const
{
    if (rank() == 0) {
        if (w == 0 && m == 0)
            return zero();
        return std::nullopt;
    }
    std::vector<Rational> row = omega_;
    row.push_back(w);
    lattice::IntVector scaled;
    lattice::clear_denominators(row, scaled);
    Integer rhs = scaled.back();
    scaled.pop_back();
    lattice::IntVector cv;
    for (long c : c1_)
        cv.emplace_back(c);
    auto x = lattice::solve({scaled, cv}, {rhs, Integer(m)}, rank());
    if (!x)
        return std::nullopt;
    return from_int_vector(*x);
}

std::optional<GammaElement> GammaGroup::solve_c1(long m) const
{
    if (rank() == 0)
        return m == 0 ? std::optional<GammaElement>(zero()) : std::nullopt;
    lattice::IntVector cv;
    for (long c : c1_)
        cv.emplace_back(c);
    auto x = lattice::solve({cv}, {Integer(m)}, rank());
    if (!x)
        return std::nullopt;
    return from_int_vector(*x);
}

std::optional<GammaElement> GammaGroup::solve_omega(const Rational& w) const
{
    if (rank() == 0)
        return w == 0 ? std::optional<GammaElement>(zero()) : std::nullopt;
    std::vector<Rational> row = omega_;
    row.push_back(w);
    lattice::IntVector scaled;
    lattice::clear_denominators(row, scaled);
    Integer rhs = scaled.back();
    scaled.pop_back();
    auto x = lattice::solve({scaled}, {rhs}, rank());
    if (!x)
        return std::nullopt;
    return from_int_vector(*x);
}

std::string GammaGroup::fingerprint() const
{
    std::ostringstream os;
    os << "gamma(" << (approximate_ ? "approx" : "exact");
    for (int i = 0; i < rank(); ++i)
        os << ";" << format_rational(omega_[i]) << "," << c1_[i];
    os << ")";
    return os.str();
}

std::pair<Rational, long> gamma_eval(const GammaGroup& g, const GammaElement& a) { return g.eval(a); }

const char* to_string(Direction d) { return d == Direction::Upward ? "upward" : "downward"; }

NovikovScalar::NovikovScalar(GammaRef gamma, Direction dir)
    : gamma_(std::move(gamma)), dir_(dir), floor_(ExtReal::neg_inf())
{
}

NovikovScalar::NovikovScalar(GammaRef gamma, Direction dir, std::vector<NovikovTerm> terms, ExtReal floor)
    : gamma_(std::move(gamma)), dir_(dir), floor_(std::move(floor))
{
    std::map<GammaElement, Rational> acc;
    for (auto& t : terms) {
        gamma_->check(t.exponent);
        acc[t.exponent] += t.coef;
    }
    for (auto& [e, c] : acc) {
        if (c == 0)
            continue;
        if (!(ExtReal(gamma_->omega(e)) > floor_))
            continue;
        terms_.push_back({c, e});
    }
}

NovikovScalar NovikovScalar::monomial(GammaRef gamma, Direction dir, const Rational& c, const GammaElement& a)
{
    return NovikovScalar(std::move(gamma), dir, {{c, a}});
}

NovikovScalar NovikovScalar::one(GammaRef gamma, Direction dir)
{
    GammaElement z = gamma->zero();
    return monomial(std::move(gamma), dir, 1, z);
}

ExtReal NovikovScalar::top_weight() const
{
    ExtReal best = ExtReal::neg_inf();
    for (const auto& t : terms_)
        best = max(best, ExtReal(weight(t.exponent)));
    return best;
}

ExtReal NovikovScalar::valuation() const
{
    if (terms_.empty()) {
        if (!floor_.is_neg_inf())
            throw IndeterminateError("valuation of a scalar that vanishes above its precision floor " +
                                     floor_.to_string());
        return dir_ == Direction::Downward ? ExtReal::neg_inf() : ExtReal::pos_inf();
    }
    ExtReal top = top_weight();
    return dir_ == Direction::Downward ? top : -top;
}

Rational NovikovScalar::coefficient(const GammaElement& a) const
{
    for (const auto& t : terms_)
        if (t.exponent == a)
            return t.coef;
    return 0;
}

NovikovScalar NovikovScalar::operator-() const { return scaled(-1); }

NovikovScalar NovikovScalar::scaled(const Rational& c) const
{
    std::vector<NovikovTerm> t;
    for (const auto& x : terms_)
        t.push_back({x.coef * c, x.exponent});
    return NovikovScalar(gamma_, dir_, std::move(t), c == 0 ? ExtReal::neg_inf() : floor_);
}

NovikovScalar NovikovScalar::shifted(const GammaElement& a) const
{
    std::vector<NovikovTerm> t;
    for (const auto& x : terms_)
        t.push_back({x.coef, x.exponent + a});
    ExtReal f = floor_.is_finite() ? ExtReal(floor_.value() + gamma_->omega(a)) : floor_;
    return NovikovScalar(gamma_, dir_, std::move(t), f);
}

void NovikovScalar::require_compatible(const NovikovScalar& other) const
{
    if (dir_ != other.dir_)
        throw StructuralError(std::string("Novikov direction mismatch: ") + spectra::to_string(dir_) + " vs " +
                              spectra::to_string(other.dir_));
    if (gamma_ != other.gamma_ && !(*gamma_ == *other.gamma_))
        throw StructuralError("Novikov scalars over different Gamma groups");
}

NovikovScalar operator+(const NovikovScalar& x, const NovikovScalar& y)
{
    x.require_compatible(y);
    std::vector<NovikovTerm> t = x.terms_;
    t.insert(t.end(), y.terms_.begin(), y.terms_.end());
    return NovikovScalar(x.gamma_, x.dir_, std::move(t), max(x.floor_, y.floor_));
}

NovikovScalar operator*(const NovikovScalar& x, const NovikovScalar& y)
{
    x.require_compatible(y);
    std::vector<NovikovTerm> t;
    for (const auto& a : x.terms_)
        for (const auto& b : y.terms_)
            t.push_back({a.coef * b.coef, a.exponent + b.exponent});
    // Unknown tail of x has weight <= floor_x; every weight of x is <= bx.
    ExtReal bx = max(x.top_weight(), x.floor_);
    ExtReal by = max(y.top_weight(), y.floor_);
    ExtReal f = max(bx + y.floor_, by + x.floor_);
    return NovikovScalar(x.gamma_, x.dir_, std::move(t), f);
}

bool operator==(const NovikovScalar& x, const NovikovScalar& y)
{
    if (x.dir_ != y.dir_ || x.floor_ != y.floor_ || x.terms_.size() != y.terms_.size())
        return false;
    for (size_t i = 0; i < x.terms_.size(); ++i)
        if (x.terms_[i].coef != y.terms_[i].coef || x.terms_[i].exponent != y.terms_[i].exponent)
            return false;
    return true;
}

std::string NovikovScalar::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string s;
    const char* q = dir_ == Direction::Upward ? "q^-" : "q^";
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (i)
            s += " + ";
        s += format_rational(terms_[i].coef) + "*" + q + terms_[i].exponent.to_string();
    }
    if (!floor_.is_neg_inf())
        s += " + O(" + floor_.to_string() + ")";
    return s;
}

NovikovScalar nov_arith(const NovikovScalar& x, const NovikovScalar& y, ArithOp op)
{
    switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Negate: return -x;
    }
    throw StructuralError("unknown arithmetic operation");
}

ExtReal valuation(const NovikovScalar& x) { return x.valuation(); }

}  // namespace spectra
