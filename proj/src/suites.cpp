#include "novikov_spectra/suites.hpp"

#include "novikov_spectra/oracle.hpp"
#include "novikov_spectra/random_complex.hpp"
#include "novikov_spectra/random_morphisms.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace spectra::suites {

using io::Json;

namespace {

std::string str(const ExtReal& x) { return x.to_string(); }

std::string eps_tag(const Rational& eps) { return "eps=" + format_rational(eps); }

long degree_of(const MorseData& m, const QuantumClass& a, const ClassicalData& cd) { return m.half_dim() - a.degree(cd); }

std::vector<Rational> descending(std::vector<Rational> v)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

/// The `count` off-spectrum levels closest to `center`.
std::vector<Rational> probe_levels(const FilteredComplex& c, const Rational& center, long count)
{
    Rational span = c.gamma()->period() == 0 ? Rational(1) : c.gamma()->period();
    Rational width = span * count;
    auto spec = action_spectrum(c, center - width, center + width);
    std::vector<Rational> cand;
    const auto& pts = spec.points;
    for (size_t k = 0; k + 1 < pts.size(); ++k)
        cand.push_back((pts[k] + pts[k + 1]) / 2);
    Rational lo = pts.empty() ? center : pts.front(), hi = pts.empty() ? center : pts.back();
    for (long k = 1; k <= count; ++k) {
        Rational below = lo - Rational(k) / 2, above = hi + Rational(k) / 2;
        if (!in_action_spectrum(c, below))
            cand.push_back(below);
        if (!in_action_spectrum(c, above))
            cand.push_back(above);
    }
    std::sort(cand.begin(), cand.end(), [&](const Rational& a, const Rational& b) {
        Rational da = abs(a - center), db = abs(b - center);
        return da != db ? da < db : a < b;
    });
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    if (static_cast<long>(cand.size()) > count)
        cand.resize(count);
    std::sort(cand.begin(), cand.end());
    return cand;
}

NovikovChain random_chain(std::mt19937_64& rng, const FilteredComplex& c, long degree, int terms)
{
    DegreeFrame f(c, degree);
    if (f.size() == 0)
        return {};
    std::uniform_int_distribution<size_t> slot(0, f.size() - 1);
    std::uniform_int_distribution<long> m(-2, 2), coef(-3, 3);
    std::vector<ChainTerm> out;
    for (int i = 0; i < terms; ++i) {
        size_t k = slot(rng);
        out.push_back({Rational(coef(rng)), f.generator(k, f.step() == 0 ? 0 : m(rng))});
    }
    return NovikovChain(std::move(out));
}

NovikovScalar random_scalar(std::mt19937_64& rng, const GammaRef& g, Direction d)
{
    std::uniform_int_distribution<long> coord(-3, 3), coef(-4, 4), count(0, 4);
    std::vector<NovikovTerm> terms;
    long n = count(rng);
    for (long i = 0; i < n; ++i) {
        GammaElement e = g->zero();
        for (auto& c : e.coords)
            c = coord(rng);
        terms.push_back({Rational(coef(rng)), e});
    }
    return NovikovScalar(g, d, terms);
}

template <class F>
void guarded(SuiteResult& r, const std::string& instance, F&& body)
{
    try {
        body();
    } catch (const Error& e) {
        r.add(instance, false, std::string("[") + e.code() + "] " + e.what());
    }
}

}  // namespace

size_t SuiteResult::failures() const
{
    return static_cast<size_t>(std::count_if(rows.begin(), rows.end(), [](const CheckRow& c) { return !c.pass; }));
}

size_t SuiteResult::verified() const
{
    return static_cast<size_t>(
        std::count_if(rows.begin(), rows.end(), [](const CheckRow& c) { return c.pass && !c.vacuous; }));
}

void SuiteResult::add(std::string instance, bool pass, std::string detail, std::optional<ExtReal> margin)
{
    rows.push_back({std::move(instance), pass, false, std::move(margin), std::move(detail)});
}

Json SuiteResult::to_json() const
{
    Json j;
    j["suite"] = name;
    j["status"] = ok() ? "PASS" : "FAIL";
    j["checks"] = rows.size();
    j["verified"] = verified();
    j["vacuous"] = std::count_if(rows.begin(), rows.end(), [](const CheckRow& c) { return c.vacuous; });
    std::optional<ExtReal> worst;
    for (const auto& c : rows)
        if (c.margin && !c.vacuous)
            worst = worst ? min(*worst, *c.margin) : *c.margin;
    j["min_margin"] = worst ? io::ext_to(*worst) : Json();
    Json fails = Json::array();
    for (const auto& c : rows)
        if (!c.pass) {
            Json f = {{"instance", c.instance}, {"detail", c.detail}};
            if (c.margin)
                f["margin"] = io::ext_to(*c.margin);
            fails.push_back(std::move(f));
        }
    j["failures"] = std::move(fails);
    if (!info.empty())
        j["info"] = info;
    return j;
}

SuiteResult normalization(const io::MorseFixture& f)
{
    SuiteResult r{"normalization:" + f.name, {}, {}};
    Rational top = f.morse.max_value();
    for (const auto& [id, a] : f.quantum) {
        ExtReal last = ExtReal::pos_inf();
        std::string inst = f.name + "/" + id;
        size_t counted = 0;
        bool monotone = true;
        ExtReal final_distance = ExtReal::pos_inf();
        Rational final_eps = 0;
        for (const auto& eps : descending(f.epsilons)) {
            guarded(r, inst + "/" + eps_tag(eps), [&] {
                auto b = normalization_check(f.morse, eps, a, f.gamma, f.classes);
                CheckRow row{inst + "/" + eps_tag(eps), b.ok(), !b.hypothesis, {}, {}};
                row.margin = ExtReal(Rational(eps * top)) - b.distance;
                row.detail = "rho=" + str(b.rho) + " v=" + format_rational(b.v) + " gap=" + str(b.gap);
                if (b.hypothesis && !(b.sharp_sandwich && b.sandwich))
                    row.pass = false;
                r.rows.push_back(row);
                if (!b.hypothesis)
                    return;
                ++counted;
                monotone = monotone && b.distance <= last;
                last = b.distance;
                final_distance = b.distance;
                final_eps = eps;
            });
        }
        if (counted == 0)
            continue;
        bool close = final_distance <= ExtReal(Rational(final_eps * top));
        r.add(inst + "/sequence", monotone && close,
              "distance non-increasing over " + std::to_string(counted) + " epsilons, final " + str(final_distance));
    }
    return r;
}

SuiteResult oracle(std::uint64_t seed, long instances, long probes, long max_orbits, const ExtReal& floor)
{
    SuiteResult r{"oracle", {}, {}};
    std::mt19937_64 rng(seed);
    RandomComplexOptions opts;
    opts.max_orbits = static_cast<int>(std::min<long>(6, std::max<long>(max_orbits, 2)));
    opts.min_orbits = std::min(opts.min_orbits, opts.max_orbits);
    EngineOptions eo;
    eo.floor = floor;
    long probed = 0;
    for (long i = 0; i < instances; ++i) {
        auto inst = random_instance(rng, opts);
        std::string id = "instance-" + std::to_string(i) + "/" + inst.gamma_kind;
        guarded(r, id, [&] {
            const auto& c = *inst.complex;
            auto e = spectral_invariant(c, inst.cycle, inst.degree, eo);
            auto o = oracle_rho(c, inst.cycle, inst.degree);
            bool agree = e.rho == o;
            Rational center = e.rho.is_finite() ? e.rho.value()
                                                : (inst.cycle.is_zero() ? Rational(0) : level_and_peak(inst.cycle).level.value());
            long bad = 0, n = 0;
            for (const auto& p : probe_levels(c, center, probes)) {
                ++n;
                if (truncated_image_contains(c, inst.cycle, inst.degree, p) != (e.rho < ExtReal(p)))
                    ++bad;
            }
            probed += n;
            r.add(id, agree && bad == 0 && n == probes,
                  "engine=" + str(e.rho) + " oracle=" + str(o) + " probes=" + std::to_string(n) +
                      " disagreeing=" + std::to_string(bad));
        });
    }
    r.info.push_back({{"instances", instances}, {"probes", probed}});
    return r;
}

SuiteResult spectrality(const io::Workspace& ws, std::uint64_t seed, long instances)
{
    SuiteResult r{"spectrality", {}, {}};
    EngineOptions eo;
    eo.floor = ws.floor;
    auto record = [&](const std::string& id, const FilteredComplex& c, const NovikovChain& rep, long degree) {
        guarded(r, id, [&] {
            auto e = spectral_invariant(c, rep, degree, eo);
            if (!e.rho.is_finite()) {
                r.rows.push_back({id, true, true, {}, "rho=" + str(e.rho)});
                return;
            }
            auto v = spectrality_check(e, c);
            if (!v.certified) {
                r.rows.push_back({id, true, true, {}, "approximate periods: not certified"});
                return;
            }
            r.add(id, v.holds, "rho=" + str(e.rho) + (v.witness ? " at " + v.witness->to_string() : ""));
        });
    };
    for (const auto& cf : ws.complexes)
        for (const auto& nc : cf.classes)
            record(cf.name + "/" + nc.id, *cf.complex, nc.chain, nc.degree);
    for (const auto& mf : ws.morse)
        for (const auto& eps : mf.epsilons) {
            auto c = build_small_floer(mf.morse, eps, mf.gamma);
            for (const auto& [id, a] : mf.quantum)
                record(mf.name + "/" + id + "/" + eps_tag(eps), c, flat_chain(c, a, mf.classes),
                       degree_of(mf.morse, a, mf.classes));
        }
    std::mt19937_64 rng(seed);
    for (long i = 0; i < instances; ++i) {
        auto inst = random_instance(rng);
        record("instance-" + std::to_string(i), *inst.complex, inst.cycle, inst.degree);
    }
    return r;
}

SuiteResult continuity(std::uint64_t seed, long pairs)
{
    SuiteResult r{"continuity", {}, {}};
    std::mt19937_64 rng(seed);
    long tight = 0;
    for (long i = 0; i < pairs; ++i) {
        bool constant = i % 3 == 0;
        std::string id = std::string(constant ? "constant-" : "pair-") + std::to_string(i);
        guarded(r, id, [&] {
            auto p = random_continuity_pair(rng, constant);
            auto c = verify_continuity(p.hf, p.fh, p.h, p.f, p.rep_h, p.rep_f, p.degree);
            bool ok = c.holds && c.maps_certified && c.classes_match;
            std::string detail = "rho_h=" + str(c.rho_h) + " rho_f=" + str(c.rho_f) + " bounds=[" +
                                 format_rational(c.lower) + ", " + format_rational(c.upper) + "]";
            if (constant && c.rho_h.is_finite()) {
                bool eq = c.lower_margin == ExtReal(0) && c.upper_margin == ExtReal(0);
                ok = ok && eq;
                tight += eq;
                detail += eq ? " tight on both sides" : " not tight";
            }
            r.add(id, ok, detail, min(c.lower_margin, c.upper_margin));
        });
    }
    r.add("constant-family", tight > 0, std::to_string(tight) + " pairs attain equality on both sides");
    return r;
}

SuiteResult triangle(const io::MorseFixture& f)
{
    SuiteResult r{"triangle:" + f.name, {}, {}};
    if (!f.products)
        return r;
    const auto& cd = f.classes;
    for (const auto& eps : descending(f.epsilons)) {
        guarded(r, f.name + "/" + eps_tag(eps), [&] {
            auto pm = morse_product_map(f.morse, cd, *f.products, eps, eps, f.gamma);
            r.add(f.name + "/" + eps_tag(eps) + "/ledger", pm.max_delta() == 0,
                  "max delta " + format_rational(pm.max_delta()));
            for (const auto& x : cd.classes)
                for (const auto& y : cd.classes) {
                    std::string id = f.name + "/" + eps_tag(eps) + "/" + x.id + "*" + y.id;
                    guarded(r, id, [&] {
                        auto a = QuantumClass::basis(f.gamma, x.id), b = QuantumClass::basis(f.gamma, y.id);
                        auto ab = quantum_product(a, b, *f.products);
                        auto fa = flat_chain(*pm.left, a, cd), fb = flat_chain(*pm.right, b, cd);
                        auto fab = flat_chain(*pm.target, ab, cd);
                        auto tr = triangle_check(pm, fa, degree_of(f.morse, a, cd), fb, degree_of(f.morse, b, cd), fab);
                        bool ok = tr.represents && tr.holds && tr.rho_ab <= tr.rho_a + tr.rho_b;
                        r.add(id, ok,
                              "rho(ab)=" + str(tr.rho_ab) + " rho(a)=" + str(tr.rho_a) + " rho(b)=" + str(tr.rho_b),
                              tr.rho_a + tr.rho_b - tr.rho_ab);
                    });
                }
        });
    }
    return r;
}

SuiteResult monodromy(const io::Workspace& ws, std::uint64_t seed, long shifts)
{
    SuiteResult r{"monodromy", {}, {}};
    auto check = [&](const std::string& id, const FilteredComplex& c, const SeidelShift& s, const NovikovChain& rep,
                     long degree) {
        guarded(r, id, [&] {
            auto fwd = seidel_shift(c, s, rep, degree);
            auto back = seidel_shift(*fwd.shifted, inverse(s), fwd.transported, degree + s.i_degree);
            bool returns = back.rho_after == fwd.rho_before;
            bool negates = !fwd.rho_before.is_finite() ||
                           back.rho_after - back.rho_before == ExtReal(Rational(-s.i_omega));
            r.add(id, fwd.exact && back.exact && returns && negates,
                  "rho " + str(fwd.rho_before) + " -> " + str(fwd.rho_after) + ", I_omega=" +
                      format_rational(s.i_omega));
        });
    };
    for (const auto& sf : ws.seidel) {
        const auto& cf = ws.complex(sf.complex);
        for (const auto& nc : cf.classes)
            if (nc.id == sf.cls)
                check(sf.name, *cf.complex, sf.shift, nc.chain, nc.degree);
    }
    std::mt19937_64 rng(seed);
    long deck = 0;
    for (long i = 0; i < shifts; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        bool use_deck = i % 4 == 0 && c.gamma()->rank() > 0;
        SeidelShift s;
        if (use_deck) {
            GammaElement a = c.gamma()->zero();
            std::uniform_int_distribution<long> coord(-2, 2);
            for (auto& x : a.coords)
                x = coord(rng);
            if (a.is_zero())
                a.coords[0] = 1;
            s = deck_shift(c, a);
            ++deck;
        } else {
            s = random_seidel_shift(rng, c);
        }
        check(std::string(use_deck ? "deck-" : "shift-") + std::to_string(i), c, s, inst.cycle, inst.degree);
    }
    r.info.push_back({{"random_shifts", shifts}, {"deck", deck}, {"fixtures", ws.seidel.size()}});
    return r;
}

SuiteResult chain_maps(const io::Workspace& ws)
{
    SuiteResult r{"chain-maps", {}, {}};
    for (const auto& m : ws.chain_maps) {
        auto cert = certify_chain_map(m.map);
        r.add(m.name + "/certificate", cert.ok(), cert.report.summary(), cert.worst_slack);
        const io::ComplexFixture* src = nullptr;
        for (const auto& cf : ws.complexes)
            if (cf.name == m.source)
                src = &cf;
        if (!src)
            continue;
        for (const auto& nc : src->classes) {
            std::string id = m.name + "/" + nc.id;
            guarded(r, id, [&] {
                auto before = spectral_invariant(*m.map.source, nc.chain, nc.degree).rho;
                auto image = apply_map(m.map, nc.chain);
                auto after = spectral_invariant(*m.map.target, image, nc.degree).rho;
                bool ok = before.is_neg_inf() ? after.is_neg_inf() : after <= before + ExtReal(m.map.shift_bound);
                r.add(id, ok, "rho " + str(before) + " -> " + str(after),
                      before.is_finite() && after.is_finite() ? std::optional<ExtReal>(before + ExtReal(m.map.shift_bound) - after)
                                                              : std::nullopt);
            });
        }
    }
    return r;
}

SuiteResult scalars(std::uint64_t seed, long pairs)
{
    SuiteResult r{"valuation", {}, {}};
    std::mt19937_64 rng(seed);
    std::vector<GammaRef> groups = {
        std::make_shared<const GammaGroup>(std::vector<Rational>{1, ratio(3, 2)}, std::vector<long>{0, 1}),
        std::make_shared<const GammaGroup>(std::vector<Rational>{ratio(1, 2)}, std::vector<long>{2}),
        std::make_shared<const GammaGroup>(std::vector<Rational>{1, ratio(1, 3)}, std::vector<long>{1, 1})};
    for (long i = 0; i < pairs; ++i) {
        const auto& g = groups[i % groups.size()];
        Direction d = (i / groups.size()) % 2 ? Direction::Upward : Direction::Downward;
        auto x = random_scalar(rng, g, d), y = random_scalar(rng, g, d);
        ExtReal vx = x.valuation(), vy = y.valuation(), vs = (x + y).valuation();
        bool ultra = d == Direction::Downward ? vs <= max(vx, vy) && (vx == vy || vs == max(vx, vy))
                                              : vs >= min(vx, vy) && (vx == vy || vs == min(vx, vy));
        std::map<std::vector<long>, Rational> prod;
        for (const auto& a : x.terms())
            for (const auto& b : y.terms())
                prod[(a.exponent + b.exponent).coords] += a.coef * b.coef;
        ExtReal top = ExtReal::neg_inf();
        for (const auto& [e, c] : prod)
            if (c != 0)
                top = max(top, ExtReal(g->omega(GammaElement(e))));
        ExtReal expect = d == Direction::Downward ? top : -top;
        ExtReal vp = (x * y).valuation();
        bool mult = vp == expect && (x.is_zero() || y.is_zero() || vp == vx + vy);
        r.add("pair-" + std::to_string(i), ultra && mult,
              "v(x)=" + str(vx) + " v(y)=" + str(vy) + " v(x+y)=" + str(vs) + " v(xy)=" + str(vp));
    }
    return r;
}

SuiteResult balls(std::uint64_t seed, long pairs)
{
    SuiteResult r{"ball-basis", {}, {}};
    std::mt19937_64 rng(seed);
    for (long i = 0; i < pairs; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        std::string id = "pair-" + std::to_string(i);
        auto a = random_chain(rng, c, inst.degree, 3), b = random_chain(rng, c, inst.degree, 3);
        auto alpha = a + random_chain(rng, c, inst.degree, 2);
        ExtReal la = level_and_peak(alpha - a).level, lb = level_and_peak(alpha - b).level;
        Rational r1 = (la.is_finite() ? la.value() : Rational(0)) + ratio(long(1 + rng() % 4), 4);
        Rational r2 = (lb.is_finite() ? lb.value() : Rational(0)) + ratio(long(1 + rng() % 4), 4);
        auto r3 = basis_axiom_check({a, r1}, {b, r2}, alpha);
        if (!r3) {
            r.add(id, false, "alpha outside a ball it was built in");
            continue;
        }
        bool ok = *r3 == std::min(r1, r2) && ball_membership(alpha, {alpha, *r3});
        long inside = 0;
        for (int j = 0; j < 6; ++j) {
            auto beta = alpha + random_chain(rng, c, inst.degree, 2);
            if (!ball_membership(beta, {alpha, *r3}))
                continue;
            ++inside;
            ok = ok && ball_membership(beta, {a, r1}) && ball_membership(beta, {b, r2});
        }
        r.add(id, ok, "R3=" + format_rational(*r3) + " sampled " + std::to_string(inside) + " points of U(alpha, R3)");
    }
    return r;
}

SuiteResult ball_images(std::uint64_t seed, long cases)
{
    SuiteResult r{"ball-images", {}, {}};
    std::mt19937_64 rng(seed);
    for (long i = 0; i < cases; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        auto x = random_chain(rng, c, inst.degree + 1, 3);
        auto y = x + random_chain(rng, c, inst.degree + 1, 2);
        ExtReal l = level_and_peak(y - x).level;
        Rational rad = (l.is_finite() ? l.value() : Rational(long(rng() % 5) - 2)) + ratio(long(1 + rng() % 4), 4);
        bool member = ball_membership(y, {x, rad});
        bool image = ball_membership(boundary_apply(c, y), {boundary_apply(c, x), rad});
        ExtReal li = level_and_peak(boundary_apply(c, y - x)).level;
        r.add("case-" + std::to_string(i), member && image && boundary_ball_check(c, x, rad, y),
              "lambda(b-a)=" + str(l) + " lambda(d(b-a))=" + str(li) + " R=" + format_rational(rad),
              ExtReal(rad) - li);
    }
    return r;
}

SuiteResult functionals(const io::Workspace& ws)
{
    SuiteResult r{"functionals", {}, {}};
    for (const auto& f : ws.functionals) {
        guarded(r, f.name, [&] {
            const auto& c = *f.on;
            auto v = is_continuous_functional(f.mu, c);
            std::string detail = v.detail;
            bool ok = !f.expect_continuous || *f.expect_continuous == v.continuous;
            Json info = {{"functional", f.name}, {"continuous", v.continuous}};
            if (v.continuous) {
                // every named generator below the threshold carries zero
                bool below_zero = true;
                for (const auto& p : f.mu.pieces) {
                    long n = p.step ? (p.count ? *p.count : 64) : 1;
                    for (long k = 0; k < n; ++k) {
                        GammaElement cap = k == 0 ? p.start : p.start + p.step->scaled(k);
                        if (ExtReal(c.generator(p.orbit, cap).action) < v.threshold && f.mu(p.orbit, cap) != 0)
                            below_zero = false;
                    }
                }
                auto d = dual_boundary(f.mu, c);
                auto dv = is_continuous_functional(d, c);
                bool square = agree_on_support(dual_boundary(d, c), DualFunctional{c.gamma(), {}});
                ok = ok && below_zero && v.declared_ok && dv.continuous && v.threshold <= dv.threshold && square;
                info["threshold"] = io::ext_to(v.threshold);
                info["declared_ok"] = v.declared_ok;
                if (f.degree) {
                    try {
                        auto rc = rho_continuous(c, f.mu, *f.degree);
                        info["rho"] = io::ext_to(rc.rho);
                        info["exhaustive"] = rc.exhaustive;
                    } catch (const DomainError& e) {
                        info["rho_error"] = e.what();
                    }
                }
            } else {
                bool cert = v.counterexample.size() >= 4;
                for (size_t j = 0; j < v.counterexample.size(); ++j) {
                    cert = cert && f.mu(NovikovChain({v.counterexample[j]})) == 1;
                    if (j > 0)
                        cert = cert && v.counterexample[j].gen.action < v.counterexample[j - 1].gen.action;
                }
                ok = ok && cert;
                Json ce = Json::array();
                for (const auto& t : v.counterexample)
                    ce.push_back(Json::array({io::rational_to(t.coef), t.gen.orbit, t.gen.to_string(),
                                              io::rational_to(t.gen.action)}));
                info["counterexample"] = std::move(ce);
            }
            r.info.push_back(std::move(info));
            r.add(f.name, ok, detail);
        });
    }
    return r;
}

SuiteResult cochain_map(const io::Workspace& ws, std::uint64_t seed)
{
    SuiteResult r{"cochain-map", {}, {}};
    std::mt19937_64 rng(seed);
    for (const auto& mf : ws.morse) {
        Rational eps = mf.epsilons.empty() ? ratio(1, 8) : descending(mf.epsilons).back();
        auto c = build_small_floer(mf.morse, eps, mf.gamma);
        DualFunctional zero{mf.gamma, {}};
        for (const auto& [id, a] : mf.quantum) {
            std::string inst = mf.name + "/" + id;
            guarded(r, inst, [&] {
                auto s = sigma_embed(a, mf.classes);
                auto lhs = dual_boundary(s, c), rhs = quantum_coboundary(s, mf.morse);
                r.add(inst, agree_on_support(lhs, rhs) && agree_on_support(lhs, zero),
                      "d* sigma(a) and sigma(delta a) agree and vanish");
            });
        }
        std::uniform_int_distribution<long> k(-2, 2), coef(-3, 3);
        for (int i = 0; i < 10; ++i) {
            DualFunctional phi{mf.gamma, {}};
            for (int j = 0; j < 3; ++j) {
                GammaElement cap = mf.gamma->zero();
                for (auto& x : cap.coords)
                    x = k(rng);
                phi.pieces.push_back({mf.morse.points[rng() % mf.morse.points.size()].id, cap, std::nullopt, std::nullopt,
                                      Rational(coef(rng))});
            }
            std::string inst = mf.name + "/cochain-" + std::to_string(i);
            guarded(r, inst, [&] {
                r.add(inst, agree_on_support(dual_boundary(phi, c), quantum_coboundary(phi, mf.morse)));
            });
        }
    }
    return r;
}

SuiteResult continuous_vs_finite(const io::Workspace& ws)
{
    SuiteResult r{"continuous-vs-finite", {}, {}};
    for (const auto& mf : ws.morse)
        for (const auto& eps : descending(mf.epsilons)) {
            auto c = build_small_floer(mf.morse, eps, mf.gamma);
            for (const auto& [id, a] : mf.quantum) {
                Json row = {{"fixture", mf.name}, {"eps", io::rational_to(eps)}, {"class", id}};
                try {
                    long degree = degree_of(mf.morse, a, mf.classes);
                    auto rc = rho_continuous(c, sigma_embed(a, mf.classes), degree);
                    auto e = spectral_invariant(c, flat_chain(c, a, mf.classes), degree);
                    row["rho_continuous"] = io::ext_to(rc.rho);
                    row["rho"] = io::ext_to(e.rho);
                    row["agree"] = rc.rho == e.rho;
                    row["exhaustive"] = rc.exhaustive;
                } catch (const Error& e) {
                    row["error"] = std::string("[") + e.code() + "] " + e.what();
                }
                r.info.push_back(std::move(row));
            }
        }
    return r;
}

SuiteResult mutations(std::uint64_t seed)
{
    SuiteResult r{"mutations", {}, {}};
    std::mt19937_64 rng(seed);
    auto inst = random_instance(rng);
    for (auto m : {Mutation::DSquared, Mutation::DegreeDrift, Mutation::LevelIncrease, Mutation::EquivarianceBreak,
                   Mutation::TiePeak}) {
        guarded(r, to_string(m), [&] {
            auto bad = mutate(*inst.complex, m, rng);
            auto report = validate_complex(bad);
            bool witnessed = false;
            for (const auto& v : report.violations)
                if (v.kind == violation_kind(m) && !v.witness.empty())
                    witnessed = true;
            r.add(to_string(m), witnessed, report.summary());
        });
    }
    return r;
}

SuiteResult relabeling(std::uint64_t seed, long permutations)
{
    SuiteResult r{"relabeling", {}, {}};
    std::mt19937_64 rng(seed);
    for (long i = 0; i < permutations; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        std::string id = "perm-" + std::to_string(i);
        guarded(r, id, [&] {
            std::vector<size_t> perm(c.orbits().size());
            for (size_t k = 0; k < perm.size(); ++k)
                perm[k] = k;
            std::shuffle(perm.begin(), perm.end(), rng);
            auto d = relabel(c, perm, "r_");
            auto before = spectral_invariant(c, inst.cycle, inst.degree).rho;
            auto after = spectral_invariant(d, relabel_chain(c, d, inst.cycle, perm), inst.degree).rho;
            r.add(id, before == after, str(before) + " vs " + str(after));
        });
    }
    return r;
}

SuiteResult projective(const io::Workspace& ws, std::uint64_t seed, long scalars)
{
    SuiteResult r{"projective", {}, {}};
    std::mt19937_64 rng(seed);
    auto run = [&](const std::string& id, const FilteredComplex& c, const NovikovChain& rep, long degree) {
        guarded(r, id, [&] {
            auto base = spectral_invariant(c, rep, degree).rho;
            bool ok = true;
            std::string seen;
            for (long k = 0; k < scalars; ++k) {
                long num = long(rng() % 19) - 9;
                if (num == 0)
                    num = 7;
                Rational lam = ratio(num, long(1 + rng() % 6));
                auto x = spectral_invariant(c, rep.scaled(lam), degree).rho;
                ok = ok && x == base;
                seen += format_rational(lam) + " ";
            }
            r.add(id, ok, "rho=" + str(base) + " for scalars " + seen);
        });
    };
    for (const auto& cf : ws.complexes)
        for (const auto& nc : cf.classes)
            run(cf.name + "/" + nc.id, *cf.complex, nc.chain, nc.degree);
    for (const auto& mf : ws.morse) {
        if (mf.epsilons.empty())
            continue;
        auto c = build_small_floer(mf.morse, descending(mf.epsilons).back(), mf.gamma);
        for (const auto& [id, a] : mf.quantum)
            run(mf.name + "/" + id, c, flat_chain(c, a, mf.classes), degree_of(mf.morse, a, mf.classes));
    }
    return r;
}

SuiteResult rho_table(const io::Workspace& ws)
{
    SuiteResult r{"rho", {}, {}};
    EngineOptions eo;
    eo.floor = ws.floor;
    auto row = [&](Json key, const std::string& id, const FilteredComplex& c, const NovikovChain& rep, long degree) {
        guarded(r, id, [&] {
            auto e = spectral_invariant(c, rep, degree, eo);
            key["degree"] = degree;
            key["rho"] = io::ext_to(e.rho);
            key["zero_class"] = e.zero_class;
            key["certified"] = e.certified;
            key["trace_len"] = e.trace.size();
            key["witness"] = io::chain_to(e.witness);
            if (e.attained_at)
                key["attained_at"] = e.attained_at->to_string();
            if (e.interval)
                key["interval"] = Json::array({io::ext_to(e.interval->first), io::ext_to(e.interval->second)});
            bool ok = true;
            if (e.rho.is_finite() && e.certified) {
                auto v = spectrality_check(e, c);
                key["spectrality"] = v.holds;
                ok = v.holds;
            }
            key["certificate"] = e.certificate;
            r.info.push_back(std::move(key));
            r.add(id, ok, "rho=" + str(e.rho));
        });
    };
    for (const auto& cf : ws.complexes)
        for (const auto& nc : cf.classes)
            row({{"fixture", cf.name}, {"class", nc.id}}, cf.name + "/" + nc.id, *cf.complex, nc.chain, nc.degree);
    for (const auto& mf : ws.morse)
        for (const auto& eps : descending(mf.epsilons)) {
            auto c = build_small_floer(mf.morse, eps, mf.gamma);
            for (const auto& [id, a] : mf.quantum) {
                Json key = {{"fixture", mf.name}, {"class", id}, {"eps", io::rational_to(eps)},
                            {"v", io::rational_to(qh_valuation(a).v)}};
                row(std::move(key), mf.name + "/" + id + "/" + eps_tag(eps), c, flat_chain(c, a, mf.classes),
                    degree_of(mf.morse, a, mf.classes));
            }
        }
    return r;
}

}  // namespace spectra::suites
