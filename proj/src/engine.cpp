#include "novikov_spectra/engine.hpp"

#include <algorithm>
#include <set>

namespace spectra {

using linalg::Laurent;
using linalg::LaurentVec;
using linalg::QVector;

namespace {

Integer floor_of(const Rational& q)
{
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q)
{
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

long to_long(const Rational& q, const char* what)
{
    if (q.get_den() != 1 || !q.get_num().fits_slong_p())
        throw StructuralError(std::string("non-integral ") + what);
    return q.get_num().get_si();
}

}  // namespace

DegreeFrame::DegreeFrame(const FilteredComplex& c, long degree) : complex_(&c), degree_(degree)
{
    const auto& gamma = *c.gamma();
    t_ = gamma.chern_kernel_generator();
    step_ = t_ ? gamma.omega(*t_) : Rational(0);
    for (size_t i = 0; i < c.orbits().size(); ++i) {
        long diff = c.orbits()[i].degree - degree;
        if (diff % 2 != 0)
            continue;
        auto cap = gamma.solve_c1(diff / 2);
        if (!cap)
            continue;
        orbit_.push_back(static_cast<int>(i));
        level_.push_back(c.orbits()[i].action - gamma.omega(*cap));
        cap_.push_back(std::move(*cap));
    }
}

int DegreeFrame::slot_of(int orbit) const
{
    auto it = std::find(orbit_.begin(), orbit_.end(), orbit);
    return it == orbit_.end() ? -1 : static_cast<int>(it - orbit_.begin());
}

long DegreeFrame::exponent_of(size_t k, const GammaElement& cap) const
{
    GammaElement diff = cap - cap_[k];
    if (diff.is_zero())
        return 0;
    if (!t_)
        throw StructuralError("cap " + cap.to_string() + " does not lie in the degree-" + std::to_string(degree_) +
                              " frame");
    for (size_t i = 0; i < diff.coords.size(); ++i) {
        if (t_->coords[i] == 0)
            continue;
        long m = diff.coords[i] / t_->coords[i];
        if (t_->scaled(m) != diff)
            break;
        return m;
    }
    throw StructuralError("cap " + cap.to_string() + " is not a kernel shift of the frame cap");
}

Generator DegreeFrame::generator(size_t k, long m) const
{
    GammaElement cap = cap_[k];
    if (m != 0)
        cap = cap + t_->scaled(m);
    return complex_->generator(orbit_[k], cap);
}

LaurentVec DegreeFrame::to_vector(const NovikovChain& a) const
{
    LaurentVec v(size());
    for (const auto& t : a.terms()) {
        if (t.gen.degree != degree_)
            throw StructuralError("chain term " + t.gen.to_string() + " has degree " + std::to_string(t.gen.degree) +
                                  ", frame degree is " + std::to_string(degree_));
        int k = slot_of(complex_->orbit_index(t.gen.orbit));
        if (k < 0)
            throw StructuralError("orbit " + t.gen.orbit + " has no generator in degree " + std::to_string(degree_));
        auto& slot = v[k][exponent_of(k, t.gen.cap)];
        slot += t.coef;
    }
    for (auto& x : v)
        for (auto it = x.begin(); it != x.end();)
            it = it->second == 0 ? x.erase(it) : std::next(it);
    return v;
}

NovikovChain DegreeFrame::to_chain(const LaurentVec& v) const
{
    std::vector<ChainTerm> terms;
    for (size_t k = 0; k < v.size(); ++k)
        for (const auto& [m, c] : v[k])
            terms.push_back({c, generator(k, m)});
    return NovikovChain(std::move(terms));
}

ExtReal DegreeFrame::level(const LaurentVec& v) const
{
    ExtReal best = ExtReal::neg_inf();
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].empty())
            continue;
        long m = v[k].begin()->first;
        best = max(best, ExtReal(Rational(level_[k] - step_ * m)));
    }
    return best;
}

QVector DegreeFrame::leading_part(const LaurentVec& v, const Rational& level) const
{
    QVector out(size(), 0);
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].empty())
            continue;
        long m = 0;
        if (step_ == 0) {
            if (level_[k] != level)
                continue;
        } else {
            Rational q = (level_[k] - level) / step_;
            if (q.get_den() != 1)
                continue;
            m = to_long(q, "frame exponent");
        }
        auto it = v[k].find(m);
        if (it != v[k].end())
            out[k] = it->second;
    }
    return out;
}

Rational DegreeFrame::level_class(const Rational& level) const
{
    if (step_ == 0)
        return level;
    return level - step_ * Rational(floor_of(level / step_));
}

long DegreeFrame::shift_between(const Rational& from, const Rational& to) const
{
    if (step_ == 0) {
        if (from != to)
            throw StructuralError("levels in different classes");
        return 0;
    }
    return to_long((from - to) / step_, "level shift");
}

namespace {

struct Basis {
    std::vector<LaurentVec> image;     // boundary vectors, degree d frame
    std::vector<LaurentVec> preimage;  // degree d+1 frame
};

std::vector<Rational> levels_of(const DegreeFrame& f, const Basis& b)
{
    std::vector<Rational> out;
    for (const auto& w : b.image)
        out.push_back(f.level(w).value());
    return out;
}

/// Replaces the basis by one whose leading parts are linearly independent,
/// so the level of any combination is the maximum of the individual levels.
void orthogonalize(const DegreeFrame& f, Basis& b, size_t max_steps)
{
    for (size_t iter = 0;; ++iter) {
        if (iter > max_steps)
            throw Error("nontermination", "orthogonalization did not terminate");
        auto levels = levels_of(f, b);
        std::map<Rational, std::vector<size_t>> groups;
        for (size_t j = 0; j < b.image.size(); ++j)
            groups[f.level_class(levels[j])].push_back(j);
        bool changed = false;
        for (const auto& [cls, members] : groups) {
            std::vector<QVector> lps;
            for (size_t j : members)
                lps.push_back(f.leading_part(b.image[j], levels[j]));
            auto x = linalg::null_vector(lps);
            if (!x)
                continue;
            size_t j0 = members.size();
            for (size_t k = 0; k < members.size(); ++k)
                if ((*x)[k] != 0 && (j0 == members.size() || levels[members[k]] > levels[members[j0]]))
                    j0 = k;
            Rational target = levels[members[j0]];
            LaurentVec w(b.image[0].size()), p(b.preimage[0].size());
            for (size_t k = 0; k < members.size(); ++k) {
                if ((*x)[k] == 0)
                    continue;
                long n = f.shift_between(levels[members[k]], target);
                linalg::add_scaled(w, b.image[members[k]], (*x)[k], n);
                linalg::add_scaled(p, b.preimage[members[k]], (*x)[k], n);
            }
            if (linalg::is_zero(w))
                throw StructuralError("boundary columns were not independent");
            b.image[members[j0]] = std::move(w);
            b.preimage[members[j0]] = std::move(p);
            changed = true;
            break;
        }
        if (!changed)
            return;
    }
}

std::string describe(const QVector& v)
{
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + format_rational(v[i]);
    return s + ")";
}

}  // namespace

std::vector<LaurentVec> orthogonal_basis(const DegreeFrame& f, std::vector<LaurentVec> vectors, size_t max_steps)
{
    Basis b;
    b.image = std::move(vectors);
    b.preimage.assign(b.image.size(), LaurentVec());
    orthogonalize(f, b, max_steps);
    return std::move(b.image);
}

SpectralResult spectral_invariant(const FilteredComplex& c, const NovikovChain& rep, long degree,
                                  const EngineOptions& opts)
{
    if (c.ceiling())
        throw StructuralError("spectral invariants are computed on untruncated complexes");
    check_chain(c, rep);
    if (rep.degree() && *rep.degree() != degree)
        throw StructuralError("representative has degree " + std::to_string(*rep.degree()) + ", expected " +
                              std::to_string(degree));
    if (!boundary_apply(c, rep).is_zero())
        throw DomainError("representative is not a cycle");

    SpectralResult r;
    r.certified = !c.gamma()->approximate();
    r.witness = rep;
    if (rep.is_zero()) {
        r.zero_class = true;
        r.certificate = "zero representative";
        return r;
    }

    DegreeFrame fd(c, degree), fu(c, degree + 1);
    LaurentVec alpha = fd.to_vector(rep);

    Basis basis;
    linalg::RationalFunctionSpan span(fd.size());
    for (size_t k = 0; k < fu.size(); ++k) {
        NovikovChain col = boundary_apply(c, NovikovChain::single(fu.generator(k, 0)));
        LaurentVec w = fd.to_vector(col);
        if (!span.insert(w))
            continue;
        LaurentVec e(fu.size());
        e[k][0] = 1;
        basis.image.push_back(std::move(w));
        basis.preimage.push_back(std::move(e));
    }
    if (span.contains(alpha)) {
        r.zero_class = true;
        r.certificate = "representative lies in the image of the boundary over the Novikov field";
        return r;
    }
    orthogonalize(fd, basis, opts.max_steps);
    auto levels = levels_of(fd, basis);

    LaurentVec accumulated(fu.size());
    for (size_t iter = 0;; ++iter) {
        if (iter > opts.max_steps)
            throw Error("nontermination", "peak reduction did not terminate");
        Rational level = fd.level(alpha).value();
        if (opts.floor.is_finite() && !(ExtReal(level) > opts.floor)) {
            if (!r.certified) {
                r.interval = std::make_pair(ExtReal::neg_inf(), ExtReal(level));
                r.rho = level;
                r.witness = fd.to_chain(alpha);
                r.preimage = fu.to_chain(accumulated);
                r.certificate = "reduction reached the precision floor";
                return r;
            }
            throw IndeterminateError("peak reduction reached the precision floor " + opts.floor.to_string());
        }
        QVector lp = fd.leading_part(alpha, level);
        std::vector<size_t> members;
        std::vector<QVector> lps;
        for (size_t j = 0; j < basis.image.size(); ++j)
            if (fd.level_class(levels[j]) == fd.level_class(level)) {
                members.push_back(j);
                lps.push_back(fd.leading_part(basis.image[j], levels[j]));
            }
        auto x = linalg::solve(lps, lp);
        if (!x) {
            r.rho = level;
            r.witness = fd.to_chain(alpha);
            r.preimage = fu.to_chain(accumulated);
            r.certificate = "leading part " + describe(lp) + " outside the span of " +
                            std::to_string(lps.size()) + " boundary leading parts";
            auto lpk = level_and_peak(r.witness);
            r.attained_at = lpk.top.front();
            return r;
        }
        LaurentVec w(fd.size()), p(fu.size());
        for (size_t k = 0; k < members.size(); ++k) {
            if ((*x)[k] == 0)
                continue;
            long n = fd.shift_between(levels[members[k]], level);
            linalg::add_scaled(w, basis.image[members[k]], -(*x)[k], n);
            linalg::add_scaled(p, basis.preimage[members[k]], -(*x)[k], n);
        }
        linalg::add_scaled(alpha, w, 1, 0);
        linalg::add_scaled(accumulated, p, 1, 0);
        r.trace.push_back({level, fu.to_chain(p), fd.to_chain(w)});
    }
}

SpectrumDescription action_spectrum(const FilteredComplex& c, const Rational& lo, const Rational& hi)
{
    SpectrumDescription s;
    const auto& gamma = *c.gamma();
    s.period = gamma.period();
    for (const auto& o : c.orbits())
        s.bases.push_back(o.action);
    if (gamma.approximate()) {
        // Approximate periods count as commensurable only with small denominators.
        for (const auto& a : gamma.omega_values())
            for (const auto& b : gamma.omega_values()) {
                if (a == 0 || b == 0)
                    continue;
                Rational ratio = a / b;
                if (ratio.get_den() > 1000 || abs(ratio.get_num()) > 1000)
                    s.rational = false;
            }
    }
    std::set<Rational> pts;
    if (!s.rational)
        return s;  // no discrete spectrum to enumerate
    for (const auto& a : s.bases) {
        if (s.period == 0) {
            if (lo <= a && a <= hi)
                pts.insert(a);
            continue;
        }
        Integer mlo = ceil_of((a - hi) / s.period), mhi = floor_of((a - lo) / s.period);
        if (mhi - mlo > 1000000)
            throw DomainError("spectrum window holds more than a million points");
        for (Integer m = mlo; m <= mhi; ++m)
            pts.insert(a - s.period * Rational(m));
    }
    s.points.assign(pts.begin(), pts.end());
    return s;
}

SpectralityVerdict spectrality_check(const SpectralResult& r, const FilteredComplex& c)
{
    SpectralityVerdict v;
    if (c.gamma()->approximate() || !r.certified) {
        v.certified = false;
        return v;
    }
    if (!r.rho.is_finite())
        return v;
    const Rational& rho = r.rho.value();
    for (size_t i = 0; i < c.orbits().size(); ++i) {
        auto cap = c.gamma()->solve_omega(c.orbits()[i].action - rho);
        if (!cap)
            continue;
        v.holds = true;
        v.witness = c.generator(static_cast<int>(i), *cap);
        return v;
    }
    return v;
}

}  // namespace spectra
