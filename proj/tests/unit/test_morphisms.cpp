#include "doctest.h"

#include "novikov_spectra/morphisms.hpp"
#include "novikov_spectra/random_morphisms.hpp"

#include <random>

using namespace spectra;

namespace {

GammaRef line(long c1) { return std::make_shared<const GammaGroup>(std::vector<Rational>{1}, std::vector<long>{c1}); }

QuantumClass up(const GammaRef& g, std::vector<QuantumTerm> t) { return QuantumClass(g, Direction::Upward, std::move(t)); }

HamiltonianData flat_weights(std::mt19937_64& rng, size_t n)
{
    std::vector<std::string> ids;
    for (size_t i = 0; i < n; ++i)
        ids.push_back("x" + std::to_string(i));
    auto h = random_hamiltonian(rng, ids);
    std::fill(h.weights.begin(), h.weights.end(), Rational(1));
    return normalize(h);
}

HamiltonianData resample(std::mt19937_64& rng, const HamiltonianData& like)
{
    auto k = like;
    std::uniform_int_distribution<int> v(-8, 8);
    for (auto& row : k.values)
        for (auto& x : row)
            x = ratio(v(rng), 8);
    k.normalized = false;
    return normalize(k);
}

SampledFlow random_flow(std::mt19937_64& rng, const HamiltonianData& h)
{
    SampledFlow f;
    for (size_t k = 0; k < h.times.size(); ++k) {
        std::vector<size_t> p(h.points.size());
        for (size_t i = 0; i < p.size(); ++i)
            p[i] = i;
        std::shuffle(p.begin(), p.end(), rng);
        f.push_back(p);
    }
    return f;
}

struct MorseFixture {
    MorseData m;
    ClassicalData cd;
    ProductFixture p;
    GammaRef g;
};

MorseFixture cp1()
{
    auto g = line(2);
    ProductFixture p;
    p.unit = "1";
    p.table.emplace(std::make_pair("1", "1"), QuantumClass::basis(g, "1"));
    p.table.emplace(std::make_pair("1", "pt"), QuantumClass::basis(g, "pt"));
    p.table.emplace(std::make_pair("pt", "1"), QuantumClass::basis(g, "pt"));
    p.table.emplace(std::make_pair("pt", "pt"), up(g, {{1, "1", GammaElement({1})}}));
    return {{2, {{"min", 0, 0}, {"max", 1, 2}}, {}, std::vector<long>{1, 0, 1}},
            {2, {{"1", 0, {{"min", 1}}, {{"min", 1}}}, {"pt", 2, {{"max", 1}}, {{"max", 1}}}}},
            p,
            g};
}

MorseFixture cp2()
{
    auto g = line(3);
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
    return {{4, {{"p0", 0, 0}, {"p2", Rational(1, 2), 2}, {"p4", 1, 4}}, {}, std::vector<long>{1, 0, 1, 0, 1}},
            {4, {{"1", 0, {{"p0", 1}}, {{"p0", 1}}}, {"u", 2, {{"p2", 1}}, {{"p2", 1}}}, {"u2", 4, {{"p4", 1}}, {{"p4", 1}}}}},
            p,
            g};
}

}  // namespace

TEST_CASE("Hamiltonian algebra on sampled data")
{
    std::mt19937_64 rng(11);
    auto h = flat_weights(rng, 4);
    CHECK(hofer_norm(zero_hamiltonian(h)) == 0);
    CHECK(hofer_norm(constant_shift(zero_hamiltonian(h), std::vector<Rational>(h.times.size(), 5))) == 0);

    for (int i = 0; i < 30; ++i) {
        auto f = flat_weights(rng, 5);
        auto flow = random_flow(rng, f);
        auto z = zero_hamiltonian(f);
        SampledFlow id(f.times.size(), std::vector<size_t>{0, 1, 2, 3, 4});
        CHECK(compose(f, z, &flow).values == f.values);
        CHECK(compose(z, f, &id).values == f.values);
        auto inv = invert(f, &flow);
        CHECK(hofer_norm(inv) == hofer_norm(f));
        CHECK(inv.normalized);
        auto k = resample(rng, f);
        auto fk = compose(f, k, &flow);
        CHECK(fk.normalized);
        CHECK_NOTHROW(fk.check());
        // H # bar H vanishes when the flow of H is used on both sides
        auto cancel = compose(f, inv, &flow);
        CHECK(hofer_norm(cancel) == 0);
        auto norm = std::get<Rational>(hamiltonian_algebra(f, nullptr, HamiltonianOp::Norm));
        CHECK(norm == hofer_norm(f));
    }
    CHECK_THROWS_AS(compose(h, h, nullptr), Error);
    CHECK_NOTHROW(compose(h, h, nullptr, true));
    auto bad = h;
    bad.values[0][0] += 1;
    CHECK_THROWS_AS(bad.check(), StructuralError);
    CHECK(normalize(bad).normalized);
}

TEST_CASE("certified chain maps")
{
    std::mt19937_64 rng(21);
    for (int i = 0; i < 20; ++i) {
        auto inst = random_instance(rng);
        auto c = inst.complex;
        auto id = identity_map(c, c, 0);
        auto cert = certify_chain_map(id);
        CHECK(cert.ok());
        CHECK(cert.worst_slack == ExtReal(0));

        Rational s(3, 8);
        auto orbits = c->orbits();
        for (auto& o : orbits)
            o.action += s;
        auto shifted = std::make_shared<const FilteredComplex>(c->gamma(), orbits, c->raw_boundary());
        CHECK(certify_chain_map(identity_map(c, shifted, s)).ok());
        auto tight = certify_chain_map(identity_map(c, shifted, s - 1));
        REQUIRE(tight.report.has("shift-bound"));
        CHECK_FALSE(tight.report.violations.front().witness.empty());

        auto back = identity_map(shifted, c, -s);
        auto loop = compose_maps(back, identity_map(c, shifted, s));
        CHECK(loop.shift_bound == 0);
        CHECK(certify_chain_map(loop).ok());

        if (!inst.cycle.is_zero()) {
            auto r = spectral_invariant(*c, inst.cycle, inst.degree);
            auto m = identity_map(c, shifted, s);
            auto t = spectral_invariant(*shifted, apply_map(m, inst.cycle), inst.degree);
            CHECK(t.rho <= r.rho + ExtReal(s));
        }
    }

    auto g = GammaGroup::trivial();
    auto one = NovikovScalar::one(g, Direction::Downward);
    auto c = std::make_shared<const FilteredComplex>(g, std::vector<Orbit>{{"x", 1, 1}, {"y", 0, 0}},
                                                     std::vector<BoundaryEntry>{{"x", "y", one, {}}});
    CertifiedChainMap half{c, c, {{"x", "x", one}}, 0};
    CHECK(certify_chain_map(half).report.has("chain-map"));
}

TEST_CASE("continuity of spectral invariants")
{
    std::mt19937_64 rng(31);
    auto same = random_continuity_pair(rng, true);
    auto zero = zero_hamiltonian(same.h);
    auto hh = identity_map(same.ch, same.ch, 0);
    auto r0 = verify_continuity(hh, hh, same.h, same.h, same.rep_h, same.rep_h, same.degree);
    CHECK(r0.holds);
    CHECK(r0.lower == 0);
    CHECK(r0.upper == 0);

    int tight = 0;
    for (int i = 0; i < 30; ++i) {
        bool constant = i % 3 == 0;
        auto p = random_continuity_pair(rng, constant);
        auto r = verify_continuity(p.hf, p.fh, p.h, p.f, p.rep_h, p.rep_f, p.degree);
        CHECK(r.holds);
        CHECK(r.maps_certified);
        CHECK(r.classes_match);
        if (constant && r.rho_h.is_finite()) {
            CHECK(r.lower == r.upper);
            CHECK(r.lower_margin == ExtReal(0));
            CHECK(r.upper_margin == ExtReal(0));
            ++tight;
        }
    }
    CHECK(tight > 0);

    auto p = random_continuity_pair(rng, false);
    auto loose = p.hf;
    loose.shift_bound -= 100;
    CHECK_THROWS_AS(verify_continuity(loose, p.fh, p.h, p.f, p.rep_h, p.rep_f, p.degree), DomainError);
}

TEST_CASE("pants product in the Morse regime")
{
    for (auto fx : {cp1(), cp2()}) {
        Rational eps(1, 8);
        auto pm = morse_product_map(fx.m, fx.cd, fx.p, eps, eps, fx.g);
        CHECK(pm.max_delta() == 0);
        CHECK(pants_product(NovikovChain(), NovikovChain(), pm).is_zero());
        for (const auto& x : fx.cd.classes)
            for (const auto& y : fx.cd.classes) {
                auto a = QuantumClass::basis(fx.g, x.id), b = QuantumClass::basis(fx.g, y.id);
                auto ab = quantum_product(a, b, fx.p);
                auto fa = flat_chain(*pm.left, a, fx.cd), fb = flat_chain(*pm.right, b, fx.cd);
                auto fab = flat_chain(*pm.target, ab, fx.cd);
                CHECK(pants_product(fa, fb, pm) == fab);
                long n = fx.m.half_dim();
                auto tr = triangle_check(pm, fa, n - a.degree(fx.cd), fb, n - b.degree(fx.cd), fab);
                CHECK(tr.represents);
                CHECK(tr.holds);
                CHECK(tr.rho_ab <= tr.rho_a + tr.rho_b);
            }
    }

    auto fx = cp1();
    auto pm = morse_product_map(fx.m, fx.cd, fx.p, Rational(1, 8), Rational(1, 8), fx.g);
    for (auto& e : pm.table)
        if (e.left == "min" && e.right == "max")
            e.scalar = NovikovScalar::monomial(fx.g, Direction::Downward, 1, GammaElement({-1}));
    auto fmin = NovikovChain::single(pm.left->generator("min", fx.g->zero()));
    auto fmax = NovikovChain::single(pm.right->generator("max", fx.g->zero()));
    CHECK_THROWS_AS(pants_product(fmin, fmax, pm), Error);
}

TEST_CASE("Seidel shifts move rho by I_omega")
{
    std::mt19937_64 rng(41);
    int deck = 0;
    for (int i = 0; i < 30; ++i) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        SeidelShift trivial;
        for (const auto& o : c.orbits()) {
            trivial.bijection[o.id] = o.id;
            trivial.cap_shift[o.id] = c.gamma()->zero();
        }
        auto t = seidel_shift(c, trivial, inst.cycle, inst.degree);
        CHECK(t.exact);
        CHECK(t.rho_after == t.rho_before);

        auto s = random_seidel_shift(rng, c);
        auto r = seidel_shift(c, s, inst.cycle, inst.degree);
        CHECK(validate_complex(*r.shifted).ok());
        CHECK(r.exact);
        auto inv = inverse(s);
        auto back = seidel_shift(*r.shifted, inv, r.transported, inst.degree + s.i_degree);
        CHECK(back.exact);
        CHECK(back.rho_after == r.rho_before);

        auto s2 = random_seidel_shift(rng, *r.shifted);
        auto both = compose_shifts(s2, s);
        CHECK(both.i_omega == s.i_omega + s2.i_omega);
        CHECK(seidel_shift(c, both, inst.cycle, inst.degree).exact);

        if (c.gamma()->rank() > 0) {
            auto a = c.gamma()->basis(0);
            auto d = seidel_shift(c, deck_shift(c, a), inst.cycle, inst.degree);
            CHECK(d.exact);
            if (d.rho_before.is_finite())
                CHECK(d.rho_after == d.rho_before - ExtReal(c.gamma()->omega(a)));
            ++deck;
        }
    }
    CHECK(deck > 0);

    auto inst = random_instance(rng);
    auto s = random_seidel_shift(rng, *inst.complex);
    s.bijection.begin()->second = std::next(s.bijection.begin())->second;
    CHECK_THROWS_AS(seidel_complex(*inst.complex, s), StructuralError);
}
