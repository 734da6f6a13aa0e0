#include "doctest.h"

#include "novikov_spectra/continuous_qh.hpp"
#include "novikov_spectra/random_complex.hpp"

#include <random>

using namespace spectra;

namespace {

GammaRef line(long c1) { return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{c1}); }

MorseData height2() { return {2, {{"max", 1, 2}, {"min", 0, 0}}, {}, std::vector<long>{1, 0, 1}}; }

MorseData sphere4()
{
    return {2,
            {{"m", 0, 0}, {"s", Rational(1, 2), 1}, {"M1", 1, 2}, {"M2", Rational(3, 4), 2}},
            {{"M1", "s", 1}, {"M2", "s", -1}},
            std::vector<long>{1, 0, 1}};
}

ClassicalData sphere_classes()
{
    return {2, {{"1", 0, {{"m", 1}}, {{"m", 1}}}, {"pt", 2, {{"M2", 1}}, {{"M1", 1}, {"M2", 1}}}}};
}

ClassicalData height_classes() { return {2, {{"1", 0, {{"min", 1}}, {{"min", 1}}}, {"pt", 2, {{"max", 1}}, {{"max", 1}}}}}; }

GammaElement g1(long k) { return GammaElement({k}); }

FunctionalPiece point(const std::string& o, long k, const Rational& v) { return {o, g1(k), std::nullopt, std::nullopt, v}; }

FunctionalPiece ray(const std::string& o, long k, long step, const Rational& v, std::optional<long> count = {})
{
    return {o, g1(k), g1(step), count, v};
}

DualFunctional fn(const GammaRef& g, std::vector<FunctionalPiece> p) { return {g, std::move(p)}; }

NovikovChain random_chain(std::mt19937_64& rng, const FilteredComplex& c, long degree, int terms)
{
    DegreeFrame f(c, degree);
    std::vector<ChainTerm> out;
    if (f.size() == 0)
        return {};
    std::uniform_int_distribution<size_t> slot(0, f.size() - 1);
    std::uniform_int_distribution<long> m(-2, 2), coef(-3, 3);
    for (int i = 0; i < terms; ++i) {
        size_t k = slot(rng);
        long e = f.step() == 0 ? 0 : m(rng);
        out.push_back({Rational(coef(rng)), f.generator(k, e)});
    }
    return NovikovChain(std::move(out));
}

/// Point pieces plus ascending and finite progressions on random orbits.
DualFunctional random_functional(std::mt19937_64& rng, const FilteredComplex& c)
{
    const auto& gamma = *c.gamma();
    std::uniform_int_distribution<size_t> orbit(0, c.orbits().size() - 1);
    std::uniform_int_distribution<long> coord(-2, 2), coef(-3, 3), kind(0, 2), count(1, 4);
    DualFunctional mu{c.gamma(), {}};
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
        GammaElement cap = gamma.zero();
        for (auto& x : cap.coords)
            x = coord(rng);
        FunctionalPiece p{c.orbits()[orbit(rng)].id, cap, std::nullopt, std::nullopt, Rational(coef(rng))};
        long k = gamma.rank() == 0 ? 0 : kind(rng);
        if (k > 0) {
            GammaElement step = gamma.zero();
            for (auto& x : step.coords)
                x = coord(rng);
            if (step.is_zero())
                step.coords[0] = 1;
            if (k == 1)
                p.count = count(rng);
            else if (gamma.omega(step) > 0)
                step = -step;
            p.step = step;
        }
        mu.pieces.push_back(std::move(p));
    }
    return mu;
}

}  // namespace

TEST_CASE("evaluating pieces")
{
    auto g = line(0);
    auto mu = fn(g, {point("x", 0, 2), ray("x", 1, 2, 3), ray("x", 1, 1, -1, 2)});
    CHECK(mu("x", g1(0)) == 2);
    CHECK(mu("x", g1(1)) == 2);
    CHECK(mu("x", g1(2)) == -1);
    CHECK(mu("x", g1(3)) == 3);
    CHECK(mu("x", g1(4)) == 0);
    CHECK(mu("x", g1(7)) == 3);
    CHECK(mu("x", g1(-1)) == 0);
    CHECK(mu("y", g1(0)) == 0);
    CHECK_THROWS_AS(fn(g, {ray("x", 0, 0, 1)})("x", g1(0)), StructuralError);
}

TEST_CASE("classifying functionals")
{
    auto g = line(0);
    auto c = build_small_floer(height2(), Rational(1, 4), g);
    Rational top = c.generator("max", g1(0)).action;

    SUBCASE("one generator")
    {
        auto v = is_continuous_functional(fn(g, {point("max", 0, 5)}), c);
        CHECK(v.continuous);
        CHECK(v.threshold == ExtReal(top));
    }
    SUBCASE("zero")
    {
        auto v = is_continuous_functional(fn(g, {}), c);
        CHECK(v.continuous);
        CHECK(v.threshold.is_pos_inf());
    }
    SUBCASE("summing down a ray")
    {
        auto mu = fn(g, {ray("max", 0, 1, 1)});
        auto v = is_continuous_functional(mu, c, 6);
        CHECK_FALSE(v.continuous);
        REQUIRE(v.counterexample.size() == 6);
        std::vector<ChainTerm> partial;
        for (size_t j = 0; j < v.counterexample.size(); ++j) {
            partial.push_back(v.counterexample[j]);
            CHECK(mu(NovikovChain(partial)) == Rational(long(j + 1)));
            if (j > 0)
                CHECK(v.counterexample[j].gen.action < v.counterexample[j - 1].gen.action);
        }
    }
    SUBCASE("telescoping rays")
    {
        auto v = is_continuous_functional(fn(g, {ray("max", 0, 1, 1), ray("max", 1, 1, -1)}), c);
        CHECK(v.continuous);
        CHECK(v.threshold == ExtReal(top));
    }
    SUBCASE("rays of different periods")
    {
        auto v = is_continuous_functional(fn(g, {ray("max", 0, 2, 1), ray("max", 1, 2, 1), ray("max", 0, 1, -1)}), c);
        CHECK(v.continuous);
        CHECK(v.threshold.is_pos_inf());
        auto w = is_continuous_functional(
            fn(g, {ray("max", 0, 2, 1), ray("max", 1, 2, 1), ray("min", 0, 1, -1), ray("max", 0, 1, -1)}), c);
        CHECK_FALSE(w.continuous);
        for (const auto& t : w.counterexample)
            CHECK(t.gen.orbit == "min");
        auto u = is_continuous_functional(fn(g, {ray("max", 0, 2, 1), ray("max", 0, 1, -1)}), c);
        CHECK_FALSE(u.continuous);
        for (const auto& t : u.counterexample)
            CHECK(t.coef * fn(g, {ray("max", 0, 2, 1), ray("max", 0, 1, -1)})(t.gen.orbit, t.gen.cap) == 1);
    }
    SUBCASE("rising rays and finite runs")
    {
        auto v = is_continuous_functional(fn(g, {ray("max", 0, -1, 1), ray("min", 0, 1, 1, 3)}), c);
        CHECK(v.continuous);
        CHECK(v.threshold == ExtReal(c.generator("min", g1(2)).action));
    }
    SUBCASE("declared thresholds")
    {
        auto mu = fn(g, {point("max", 0, 1)});
        mu.threshold = top;
        CHECK(is_continuous_functional(mu, c).declared_ok);
        mu.threshold = Rational(top + 1);
        CHECK_FALSE(is_continuous_functional(mu, c).declared_ok);
    }
}

TEST_CASE("classification is stable under changes above the threshold")
{
    std::mt19937_64 rng(41);
    auto g = line(0);
    auto c = build_small_floer(sphere4(), Rational(1, 8), g);
    std::uniform_int_distribution<long> k(-3, 3), s(1, 3), coef(1, 4);
    for (int i = 0; i < 60; ++i) {
        std::vector<FunctionalPiece> p;
        for (int j = 0; j < 3; ++j)
            p.push_back(ray(c.orbits()[rng() % 4].id, k(rng), s(rng), Rational(coef(rng)) * (rng() % 2 ? 1 : -1)));
        auto mu = fn(g, p);
        auto v = is_continuous_functional(mu, c);
        auto bumped = mu;
        bumped.pieces.push_back(point(c.orbits()[rng() % 4].id, -5, 7));
        CHECK(is_continuous_functional(bumped, c).continuous == v.continuous);
    }
}

TEST_CASE("dual boundary")
{
    std::mt19937_64 rng(7);
    SUBCASE("zero and zero-boundary cases")
    {
        auto g = line(0);
        auto c = build_small_floer(height2(), Rational(1, 4), g);
        auto mu = fn(g, {point("max", 0, 1), ray("min", 1, -1, 2)});
        auto d = dual_boundary(mu, c);
        CHECK(d.pieces.empty());
        CHECK(dual_boundary(fn(g, {}), c).pieces.empty());
        CHECK_THROWS_AS(dual_boundary(fn(g, {ray("max", 0, 1, 1)}), c), DomainError);
    }
    SUBCASE("definition, square and threshold on random complexes")
    {
        int checked = 0;
        for (int i = 0; i < 80; ++i) {
            auto inst = random_instance(rng);
            const auto& c = *inst.complex;
            auto mu = random_functional(rng, c);
            auto v = is_continuous_functional(mu, c);
            REQUIRE(v.continuous);
            auto d = dual_boundary(mu, c);
            auto dv = is_continuous_functional(d, c);
            CHECK(dv.continuous);
            CHECK(d.threshold <= dv.threshold);
            CHECK(v.threshold <= dv.threshold);
            auto dd = dual_boundary(d, c);
            CHECK(agree_on_support(dd, fn(c.gamma(), {})));
            for (int j = 0; j < 4; ++j) {
                auto a = random_chain(rng, c, inst.degree + (j % 2), 3);
                CHECK(d(a) == mu(boundary_apply(c, a)));
            }
            ++checked;
        }
        CHECK(checked == 80);
    }
}

TEST_CASE("sigma is a cochain map")
{
    std::mt19937_64 rng(11);
    for (long c1 : {0L, 2L}) {
        auto g = line(c1);
        auto m = sphere4();
        auto cd = sphere_classes();
        auto c = build_small_floer(m, Rational(1, 8), g);
        for (const auto& cls : cd.classes) {
            auto mu = sigma_embed(QuantumClass::basis(g, cls.id), cd);
            CHECK(agree_on_support(dual_boundary(mu, c), fn(g, {})));
            CHECK(agree_on_support(quantum_coboundary(mu, m), fn(g, {})));
        }
        std::uniform_int_distribution<long> k(-2, 2), coef(-3, 3);
        for (int i = 0; i < 40; ++i) {
            DualFunctional phi{g, {}};
            for (int j = 0; j < 3; ++j)
                phi.pieces.push_back(point(m.points[rng() % 4].id, k(rng), Rational(coef(rng))));
            CHECK(agree_on_support(dual_boundary(phi, c), quantum_coboundary(phi, m)));
        }
    }
}

TEST_CASE("sigma pairs classes with their flat chains")
{
    auto g = line(2);
    auto cd = sphere_classes();
    auto c = build_small_floer(sphere4(), Rational(1, 8), g);
    for (const auto& a : cd.classes)
        for (const auto& b : cd.classes) {
            auto ua = QuantumClass::basis(g, a.id), ub = QuantumClass::basis(g, b.id);
            CHECK(sigma_embed(ua, cd)(flat_chain(c, ub, cd)) == pairing(ua, flat(ub), cd));
        }
    auto h = line(1);
    auto ch = build_small_floer(sphere4(), Rational(1, 8), h);
    auto x = QuantumClass(h, Direction::Upward, {{1, "1", g1(0)}, {3, "pt", g1(-1)}});
    auto y = QuantumClass(h, Direction::Upward, {{2, "pt", g1(-1)}, {-1, "1", g1(0)}});
    CHECK(sigma_embed(x, cd)(flat_chain(ch, y, cd)) == pairing(x, flat(y), cd));
    CHECK(sigma_embed(x, cd)(flat_chain(ch, y, cd)) == 5);
}

TEST_CASE("spectral invariants of continuous classes")
{
    SUBCASE("zero-boundary complex matches the engine")
    {
        for (long c1 : {0L, 2L})
            for (Rational eps : {Rational(1, 4), Rational(1, 8)}) {
                auto g = line(c1);
                auto cd = height_classes();
                auto c = build_small_floer(height2(), eps, g);
                for (const auto& cls : cd.classes) {
                    auto a = QuantumClass::basis(g, cls.id);
                    long degree = 1 - cls.degree;
                    auto r = rho_continuous(c, sigma_embed(a, cd), degree);
                    auto e = spectral_invariant(c, flat_chain(c, a, cd), degree);
                    CHECK(r.exhaustive);
                    CHECK(r.rho == e.rho);
                }
            }
    }
    SUBCASE("zero boundary: lowest nonzero generator")
    {
        std::mt19937_64 rng(13);
        auto g = line(0);
        auto c = build_small_floer(height2(), Rational(1, 3), g);
        std::uniform_int_distribution<long> k(-3, 3), coef(-2, 2);
        for (int i = 0; i < 50; ++i) {
            DualFunctional mu{g, {}};
            for (int j = 0; j < 4; ++j)
                mu.pieces.push_back(point(rng() % 2 ? "max" : "min", k(rng), Rational(coef(rng))));
            ExtReal expect = ExtReal::pos_inf();
            for (const auto& p : mu.pieces)
                if (p.orbit == "max" && mu(p.orbit, p.start) != 0)
                    expect = min(expect, ExtReal(c.generator(p.orbit, p.start).action));
            auto r = rho_continuous(c, mu, -1);
            if (expect.is_pos_inf())
                CHECK(r.zero_class);
            else
                CHECK(r.rho == expect);
        }
    }
    SUBCASE("two maxima")
    {
        auto g = line(2);
        auto cd = sphere_classes();
        auto c = build_small_floer(sphere4(), Rational(1, 8), g);
        auto r = rho_continuous(c, sigma_embed(QuantumClass::basis(g, "pt"), cd), -1);
        CHECK(r.rho == ExtReal(Rational(-1, 8)));
        CHECK(sigma_embed(QuantumClass::basis(g, "pt"), cd)(r.witness) != 0);
        CHECK(boundary_apply(c, r.witness).is_zero());
        auto one = rho_continuous(c, sigma_embed(QuantumClass::basis(g, "1"), cd), 1);
        CHECK(one.rho == ExtReal(0));
    }
    SUBCASE("degenerate functionals")
    {
        auto g = line(2);
        auto c = build_small_floer(sphere4(), Rational(1, 8), g);
        CHECK(rho_continuous(c, fn(g, {}), -1).zero_class);
        CHECK(rho_continuous(c, fn(g, {point("M1", 1, 1)}), -1).rho.is_neg_inf());
        CHECK_THROWS_AS(rho_continuous(c, fn(g, {point("M1", 0, 1)}), -1), DomainError);
        CHECK_THROWS_AS(rho_continuous(c, fn(g, {ray("M1", 0, 1, 1)}), -1), DomainError);
    }
    SUBCASE("coboundaries vanish on cycles")
    {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 40; ++i) {
            auto inst = random_instance(rng);
            auto d = dual_boundary(random_functional(rng, *inst.complex), *inst.complex);
            for (long deg = inst.degree - 1; deg <= inst.degree + 1; ++deg)
                CHECK(rho_continuous(*inst.complex, d, deg).zero_class);
        }
    }
    SUBCASE("witnesses on random complexes")
    {
        std::mt19937_64 rng(9);
        int finite = 0;
        for (int i = 0; i < 60; ++i) {
            auto inst = random_instance(rng);
            const auto& c = *inst.complex;
            // dual of a cycle; only the cocycles among these are kept
            DualFunctional z{c.gamma(), {}};
            for (const auto& t : inst.cycle.terms())
                z.pieces.push_back({t.gen.orbit, t.gen.cap, std::nullopt, std::nullopt, t.coef});
            ContinuousRho r;
            try {
                r = rho_continuous(c, z, inst.degree);
            } catch (const DomainError&) {
                continue;
            }
            if (r.zero_class)
                continue;
            ++finite;
            CHECK(z(r.witness) != 0);
            CHECK(level_and_peak(r.witness).level == r.rho);
            CHECK(boundary_apply(c, r.witness).is_zero());
            if (z(inst.cycle) != 0)
                CHECK(r.rho <= level_and_peak(inst.cycle).level);
        }
        CHECK(finite > 0);
    }
}

TEST_CASE("balls of the action filtration")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        auto a = random_chain(rng, c, inst.degree, 3);
        auto b = random_chain(rng, c, inst.degree, 3);
        Rational r = Rational(long(rng() % 17) - 8, 4);
        CHECK(ball_membership(b, {a, r}) == (level_and_peak(b - a).level < ExtReal(r)));
        CHECK(ball_membership(a, {a, r}));

        // alpha inside two balls; the smaller radius fits inside both
        auto alpha = a + random_chain(rng, c, inst.degree, 2);
        ExtReal la = level_and_peak(alpha - a).level, lb = level_and_peak(alpha - b).level;
        Rational r1 = (la.is_finite() ? la.value() : Rational(0)) + Rational(long(1 + rng() % 4), 4);
        Rational r2 = (lb.is_finite() ? lb.value() : Rational(0)) + Rational(long(1 + rng() % 4), 4);
        auto r3 = basis_axiom_check({a, r1}, {b, r2}, alpha);
        REQUIRE(r3);
        CHECK(*r3 == std::min(r1, r2));
        for (int j = 0; j < 4; ++j) {
            auto beta = alpha + random_chain(rng, c, inst.degree, 2);
            if (!ball_membership(beta, {alpha, *r3}))
                continue;
            CHECK(ball_membership(beta, {a, r1}));
            CHECK(ball_membership(beta, {b, r2}));
        }

        auto x = random_chain(rng, c, inst.degree + 1, 3);
        auto y = x + random_chain(rng, c, inst.degree + 1, 2);
        Rational rad = Rational(long(rng() % 17) - 8, 4);
        CHECK(boundary_ball_check(c, x, rad, y));
        if (ball_membership(y, {x, rad}))
            CHECK(ball_membership(boundary_apply(c, y), {boundary_apply(c, x), rad}));
    }
}
