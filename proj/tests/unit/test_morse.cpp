#include "doctest.h"

#include "novikov_spectra/morse_quantum.hpp"

#include <random>

using namespace spectra;

namespace {

MorseData height2()
{
    return {2, {{"max", 1, 2}, {"min", 0, 0}}, {}, std::vector<long>{1, 0, 1}};
}

// two maxima joined through one saddle
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

GammaRef line(long c1) { return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{c1}); }

QuantumClass up(const GammaRef& g, std::vector<QuantumTerm> t) { return QuantumClass(g, Direction::Upward, std::move(t)); }

ProductFixture cp1_product(const GammaRef& g)
{
    ProductFixture p;
    p.unit = "1";
    p.table.emplace(std::make_pair("1", "1"), QuantumClass::basis(g, "1"));
    p.table.emplace(std::make_pair("1", "pt"), QuantumClass::basis(g, "pt"));
    p.table.emplace(std::make_pair("pt", "1"), QuantumClass::basis(g, "pt"));
    p.table.emplace(std::make_pair("pt", "pt"), up(g, {{1, "1", GammaElement({1})}}));
    return p;
}

ClassicalData cp2_classes()
{
    return {4,
            {{"1", 0, {{"p0", 1}}, {{"p0", 1}}}, {"u", 2, {{"p2", 1}}, {{"p2", 1}}}, {"u2", 4, {{"p4", 1}}, {{"p4", 1}}}}};
}

ProductFixture cp2_product(const GammaRef& g)
{
    ProductFixture p;
    p.unit = "1";
    for (std::string x : {"1", "u", "u2"}) {
        p.table.emplace(std::make_pair(std::string("1"), x), QuantumClass::basis(g, x));
        if (x != "1")
            p.table.emplace(std::make_pair(x, std::string("1")), QuantumClass::basis(g, x));
    }
    p.table.emplace(std::make_pair("u", "u"), QuantumClass::basis(g, "u2"));
    p.table.emplace(std::make_pair("u", "u2"), up(g, {{1, "1", GammaElement({1})}}));
    p.table.emplace(std::make_pair("u2", "u"), up(g, {{1, "1", GammaElement({1})}}));
    p.table.emplace(std::make_pair("u2", "u2"), up(g, {{1, "u", GammaElement({1})}}));
    return p;
}

}  // namespace

TEST_CASE("small Floer complex of the height function")
{
    auto g = line(2);
    auto c = build_small_floer(height2(), Rational(1, 10), g);
    REQUIRE(c.orbits().size() == 2);
    CHECK(c.orbits()[c.orbit_index("max")].action == Rational(-1, 10));
    CHECK(c.orbits()[c.orbit_index("min")].action == 0);
    CHECK(c.raw_boundary().empty());
    CHECK(validate_complex(c).ok());

    auto c2 = build_small_floer(height2(), Rational(1, 5), g);
    for (size_t i = 0; i < c.orbits().size(); ++i)
        CHECK(c2.orbits()[i].action == 2 * c.orbits()[i].action);

    CHECK_THROWS_AS(build_small_floer(height2(), 0, g), DomainError);
}

TEST_CASE("gradings of capped critical points")
{
    auto g = line(2);
    auto m = sphere4();
    auto c = build_small_floer(m, Rational(1, 8), g);
    CHECK(validate_complex(c).ok());
    auto gm = c.generator("m", g->zero());
    CHECK(index_of(c, gm) == 1);
    CHECK(morse_index(m, gm) == 0);
    CHECK(index_of(c, c.generator("M1", g->zero())) == -1);
    for (long k = -3; k <= 3; ++k)
        for (const auto& o : c.orbits()) {
            auto gen = c.generator(o.id, GammaElement({k}));
            CHECK(index_of(c, gen) == gen.degree);
            CHECK(index_of(c, gen) == index_of(c, c.generator(o.id, g->zero())) - 4 * k);
        }
}

TEST_CASE("Morse data validation")
{
    CHECK(validate_morse(sphere4()).ok());
    auto wrong = sphere4();
    wrong.betti = std::vector<long>{1, 1, 1};
    CHECK(validate_morse(wrong).has("morse-homology"));
    auto sq = sphere4();
    sq.boundary.push_back({"s", "m", 1});
    CHECK(validate_morse(sq).has("d-squared"));
    auto drift = sphere4();
    drift.boundary.push_back({"M1", "m", 1});
    CHECK(validate_morse(drift).has("degree"));
    auto odd = height2();
    odd.dim = 3;
    CHECK_FALSE(validate_morse(odd).ok());
    CHECK_THROWS_AS(build_small_floer(sq, 1, line(2)), StructuralError);
}

TEST_CASE("quantum product fixtures")
{
    auto g = line(2);
    ClassicalData cd{2, {{"1", 0, {{"min", 1}}, {{"min", 1}}}, {"pt", 2, {{"max", 1}}, {{"max", 1}}}}};
    auto p = cp1_product(g);
    CHECK(check_product_fixture(p, cd, g).empty());
    auto pt = QuantumClass::basis(g, "pt");
    auto sq = quantum_product(pt, pt, p);
    CHECK(sq == up(g, {{1, "1", GammaElement({1})}}));
    CHECK(sq.degree(cd) == 4);
    CHECK(qh_valuation(sq).v == -1);
    // quantum corrections only lower the valuation
    CHECK(qh_valuation(sq).v <= qh_valuation(pt).v + qh_valuation(pt).v);

    auto g3 = line(3);
    auto p2 = cp2_product(g3);
    auto cd2 = cp2_classes();
    CHECK(check_product_fixture(p2, cd2, g3).empty());
    auto broken = p2;
    broken.table.at({"u2", "u2"}) = QuantumClass::basis(g3, "u");
    CHECK_FALSE(check_product_fixture(broken, cd2, g3).empty());
    auto missing = p2;
    missing.table.erase({"u", "u"});
    CHECK_THROWS_AS(quantum_product(QuantumClass::basis(g3, "u"), QuantumClass::basis(g3, "u"), missing), Error);

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> pick(0, 2), coef(-3, 3), exp(-2, 2);
    const char* names[] = {"1", "u", "u2"};
    for (int i = 0; i < 50; ++i) {
        auto rnd = [&] {
            int k = pick(rng), c = coef(rng);
            return QuantumClass::basis(g3, names[k], c == 0 ? 1 : c).shifted(GammaElement({exp(rng)}));
        };
        auto a = rnd(), b = rnd();
        auto ab = quantum_product(a, b, p2);
        CHECK(ab.degree(cd2) == a.degree(cd2) + b.degree(cd2));
        CHECK(qh_valuation(ab).v <= qh_valuation(a).v + qh_valuation(b).v);
        auto s = a + b;
        if (!s.is_zero())
            CHECK(qh_valuation(s).v <= std::max(qh_valuation(a).v, qh_valuation(b).v));
    }
}

TEST_CASE("pairing, flat and sharp")
{
    auto g = line(0);
    auto cd = sphere_classes();
    auto one = QuantumClass::basis(g, "1");
    CHECK(pairing(one, flat(one), cd) == 1);
    auto pt = QuantumClass::basis(g, "pt");
    CHECK(pairing(pt, flat(pt), cd) == 1);
    CHECK(pairing(one, flat(pt), cd) == 0);
    CHECK(pairing(one.shifted(GammaElement({1})), flat(one), cd) == 0);
    CHECK_THROWS_AS(pairing(one, one, cd), StructuralError);
    CHECK_THROWS_AS(sharp(one), StructuralError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> coef(-4, 4), exp(-3, 3);
    for (int i = 0; i < 40; ++i) {
        auto a = one.scaled(coef(rng)).shifted(GammaElement({exp(rng)})) +
                 pt.scaled(coef(rng)).shifted(GammaElement({exp(rng)}));
        CHECK(sharp(flat(a)) == a);
    }
}

TEST_CASE("valuation, leading term and gap")
{
    auto g = line(0);
    auto one = QuantumClass::basis(g, "1");
    auto v1 = qh_valuation(one);
    CHECK(v1.v == 0);
    CHECK(v1.gap.is_pos_inf());
    CHECK(v1.leading == one);

    auto a = one + one.shifted(GammaElement({1}));
    auto va = qh_valuation(a);
    CHECK(va.v == 0);
    CHECK(va.gap == ExtReal(1));
    CHECK(va.leading == one);
    CHECK(va.leading_unique);
    CHECK(va.min_reading == -1);
    CHECK_FALSE(va.readings_agree);

    CHECK_THROWS_AS(qh_valuation(QuantumClass(g, Direction::Upward)), DomainError);
    CHECK_THROWS_AS((one + QuantumClass::basis(g, "pt")).degree(sphere_classes()), StructuralError);
}

TEST_CASE("flat representatives land in the expected degree")
{
    auto g = line(3);
    MorseData m{4, {{"p0", 0, 0}, {"p2", Rational(1, 2), 2}, {"p4", 1, 4}}, {}, std::vector<long>{1, 0, 1, 0, 1}};
    auto cd = cp2_classes();
    auto c = build_small_floer(m, Rational(1, 4), g);
    for (std::string x : {"1", "u", "u2"})
        for (long k = -2; k <= 2; ++k) {
            auto a = QuantumClass::basis(g, x).shifted(GammaElement({k}));
            auto chain = flat_chain(c, a, cd);
            CHECK(*chain.degree() == m.half_dim() - a.degree(cd));
        }
}

TEST_CASE("normalization bounds on Morse fixtures")
{
    auto m = sphere4();
    auto cd = sphere_classes();
    for (long c1 : {2L, 0L}) {
        auto g = line(c1);
        auto pt = QuantumClass::basis(g, "pt");
        auto r = normalization_check(m, Rational(1, 8), pt, g, cd);
        CHECK(r.ok());
        // the representative sits on M2; the lower maximum M1 carries the class
        CHECK(r.rho == ExtReal(Rational(-1, 8)));
    }

    auto g = line(0);
    auto one = QuantumClass::basis(g, "1");
    auto a = one + one.shifted(GammaElement({1})).scaled(3);
    ExtReal last = ExtReal::pos_inf();
    for (int j = 2; j <= 7; ++j) {
        Rational eps(1, 1L << j);
        auto r = normalization_check(m, eps, a, g, cd);
        CHECK(r.hypothesis);
        CHECK(r.ok());
        CHECK(r.distance <= last);
        CHECK(r.distance <= ExtReal(Rational(eps * m.max_value())));
        last = r.distance;
    }
    auto wide = normalization_check(m, 4, a, g, cd);
    CHECK_FALSE(wide.hypothesis);
}
