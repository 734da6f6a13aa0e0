#include "doctest.h"

#include "novikov_spectra/complex.hpp"
#include "novikov_spectra/random_complex.hpp"

#include <random>

using namespace spectra;

namespace {

GammaRef period_one() { return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{0}); }

NovikovScalar mono(const GammaRef& g, const Rational& c, std::vector<long> e)
{
    return NovikovScalar::monomial(g, Direction::Downward, c, GammaElement(std::move(e)));
}

}  // namespace

TEST_CASE("validate_complex on hand-made complexes")
{
    auto g = GammaGroup::trivial();
    FilteredComplex empty(g, {{"x", 1, 1}, {"y", 0, 0}}, {});
    CHECK(validate_complex(empty).ok());

    FilteredComplex up(g, {{"x", 0, 1}, {"y", 1, 0}}, {{"x", "y", NovikovScalar::one(g, Direction::Downward), {}}});
    auto r = validate_complex(up);
    REQUIRE(r.has("level-increase"));
    CHECK(r.violations.front().witness == std::vector<std::string>{"x[]", "y[]"});

    FilteredComplex sq(g, {{"a", 3, 2}, {"b", 2, 1}, {"c", 1, 0}},
                       {{"a", "b", NovikovScalar::one(g, Direction::Downward), {}},
                        {"b", "c", NovikovScalar::one(g, Direction::Downward), {}}});
    CHECK(validate_complex(sq).has("d-squared"));

    FilteredComplex tie(g, {{"a", 1, 0}, {"b", 1, 0}}, {});
    CHECK(validate_complex(tie).has("tie-peak"));
    FilteredComplex no_tie(g, {{"a", 1, 0}, {"b", 1, 2}}, {});
    CHECK(validate_complex(no_tie).ok());

    CHECK_THROWS_AS(FilteredComplex(g, {{"a", 1, 0}, {"a", 2, 0}}, {}), StructuralError);
    CHECK_THROWS_AS(FilteredComplex(g, {{"a", 1, 0}}, {{"a", "zz", NovikovScalar::one(g, Direction::Downward), {}}}),
                    StructuralError);
}

TEST_CASE("recapped entries must agree")
{
    auto g = period_one();
    std::vector<Orbit> o{{"x", 2, 1}, {"y", 0, 0}};
    FilteredComplex agree(g, o, {{"x", "y", mono(g, 1, {1}), {}}, {"x", "y", mono(g, 1, {3}), GammaElement({2})}});
    CHECK(validate_complex(agree).ok());
    FilteredComplex clash(g, o, {{"x", "y", mono(g, 1, {1}), {}}, {"x", "y", mono(g, 2, {3}), GammaElement({2})}});
    CHECK(validate_complex(clash).has("gamma-equivariance"));
}

TEST_CASE("level and peak")
{
    auto g = GammaGroup::trivial();
    FilteredComplex c(g, {{"g1", 1, 0}, {"g2", 0, 0}}, {});
    auto z = level_and_peak(NovikovChain());
    CHECK(z.level.is_neg_inf());
    CHECK_FALSE(z.peak);
    NovikovChain a({{2, c.generator("g1", g->zero())}, {3, c.generator("g2", g->zero())}});
    auto lp = level_and_peak(a);
    CHECK(lp.level == ExtReal(1));
    REQUIRE(lp.peak);
    CHECK(lp.peak->orbit == "g1");

    FilteredComplex t(g, {{"a", 1, 0}, {"b", 1, 0}}, {});
    auto amb = level_and_peak(NovikovChain({{1, t.generator("a", g->zero())}, {1, t.generator("b", g->zero())}}));
    CHECK(amb.ambiguous);
    CHECK_FALSE(amb.peak);

    NovikovChain low({{1, c.generator("g2", g->zero())}}, ExtReal(0));
    CHECK(low.is_zero());
    CHECK_THROWS_AS(level_and_peak(low), IndeterminateError);

    CHECK_THROWS_AS(NovikovChain({{1, c.generator("g1", g->zero())}, {1, Generator{"g9", g->zero(), 0, 5}}}),
                    StructuralError);
}

TEST_CASE("boundary and gamma shift")
{
    auto g = period_one();
    FilteredComplex c(g, {{"x", 3, 1}, {"y", 0, 0}}, {{"x", "y", mono(g, 5, {1}), {}}});
    REQUIRE(validate_complex(c).ok());
    CHECK(boundary_apply(c, NovikovChain()).is_zero());
    auto dx = boundary_apply(c, NovikovChain::single(c.generator("x", g->zero())));
    CHECK(level_and_peak(dx).level == ExtReal(-1));
    CHECK(dx.coefficient("y", GammaElement({1})) == 5);

    NovikovChain x = NovikovChain::single(c.generator("x", g->zero()));
    auto s = gamma_shift(c, x, GammaElement({2}));
    CHECK(level_and_peak(s).level == ExtReal(1));
    CHECK(s.degree() == x.degree());
    CHECK(gamma_shift(c, x, g->zero()) == x);
    CHECK(boundary_apply(c, s) == gamma_shift(c, dx, GammaElement({2})));

    NovikovChain stale({{1, Generator{"x", g->zero(), 7, 1}}});
    CHECK_THROWS_AS(boundary_apply(c, stale), StructuralError);
}

TEST_CASE("truncation")
{
    auto g = GammaGroup::trivial();
    FilteredComplex c(g, {{"x", 1, 1}, {"y", 0, 0}}, {{"x", "y", NovikovScalar::one(g, Direction::Downward), {}}});
    CHECK(truncate_below(c, 5).orbits().size() == 2);
    CHECK(truncate_below(c, -5).orbits().empty());
    auto mid = truncate_below(c, Rational(1, 2));
    REQUIRE(mid.orbits().size() == 1);
    CHECK(mid.orbits()[0].id == "y");
    CHECK(mid.raw_boundary().empty());
    CHECK_THROWS_AS(truncate_below(c, 1), Error);

    auto gp = period_one();
    FilteredComplex p(gp, {{"x", Rational(1, 2), 0}}, {});
    CHECK_THROWS_AS(truncate_below(p, Rational(-3, 2)), Error);
    auto tp = truncate_below(p, 0);
    CHECK(tp.admits(tp.generator("x", GammaElement({1}))));
    CHECK_FALSE(tp.admits(tp.generator("x", GammaElement({0}))));
}

TEST_CASE("random complexes are valid and shift-equivariant")
{
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 60; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        CHECK(validate_complex(c).ok());
        CHECK(boundary_apply(c, inst.cycle).is_zero());
        CHECK(boundary_apply(c, boundary_apply(c, inst.cycle)).is_zero());
        if (c.gamma()->rank() > 0 && !inst.cycle.is_zero()) {
            GammaElement a = c.gamma()->basis(0);
            auto shifted = gamma_shift(c, inst.cycle, a);
            CHECK(level_and_peak(shifted).level == level_and_peak(inst.cycle).level - ExtReal(c.gamma()->omega(a)));
            CHECK(*shifted.degree() == *inst.cycle.degree() - 2 * c.gamma()->c1(a));
        }
        // max rule for levels of sums
        auto lp = level_and_peak(inst.cycle + inst.cycle.scaled(-1) + inst.cycle);
        CHECK(lp.level <= level_and_peak(inst.cycle).level);
    }
}

TEST_CASE("every mutation is caught with a witness")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 20; ++i) {
        auto inst = random_instance(rng);
        for (auto m : {Mutation::DSquared, Mutation::DegreeDrift, Mutation::LevelIncrease, Mutation::EquivarianceBreak,
                       Mutation::TiePeak}) {
            auto bad = mutate(*inst.complex, m, rng);
            auto report = validate_complex(bad);
            CHECK_MESSAGE(report.has(violation_kind(m)), to_string(m));
        }
    }
}
