#include "novikov_spectra/random_morphisms.hpp"

namespace spectra {

namespace {

Rational sample_ratio(std::mt19937_64& rng, int lo, int hi, long den)
{
    return ratio(std::uniform_int_distribution<int>(lo, hi)(rng), den);
}

}  // namespace

HamiltonianData random_hamiltonian(std::mt19937_64& rng, const std::vector<std::string>& points)
{
    HamiltonianData h;
    int samples = std::uniform_int_distribution<int>(1, 3)(rng);
    h.times.push_back(0);
    for (int k = 1; k < samples; ++k)
        h.times.push_back(ratio(k, samples));
    h.points = points;
    for (size_t i = 0; i < points.size(); ++i)
        h.weights.push_back(std::uniform_int_distribution<int>(1, 3)(rng));
    for (int k = 0; k < samples; ++k) {
        std::vector<Rational> row;
        for (size_t i = 0; i < points.size(); ++i)
            row.push_back(sample_ratio(rng, -8, 8, 8));
        h.values.push_back(std::move(row));
    }
    return normalize(h);
}

ContinuityPair random_continuity_pair(std::mt19937_64& rng, bool constant)
{
    for (;;) {
        auto inst = random_instance(rng);
        const auto& c = *inst.complex;
        std::vector<std::string> ids;
        for (const auto& o : c.orbits())
            ids.push_back(o.id);
        ContinuityPair p;
        p.h = random_hamiltonian(rng, ids);
        HamiltonianData k = zero_hamiltonian(p.h);
        for (size_t t = 0; t < k.times.size(); ++t) {
            Rational s = sample_ratio(rng, -8, 8, 8);
            for (auto& v : k.values[t])
                v = constant ? s : sample_ratio(rng, -2, 2, 32);
        }
        k.normalized = false;
        p.f = sum(p.h, k);
        p.constant = constant;

        std::vector<Orbit> orbits = c.orbits();
        for (size_t i = 0; i < orbits.size(); ++i) {
            Rational integral = 0;
            for (size_t t = 0; t < k.times.size(); ++t)
                integral += k.dt(t) * k.values[t][i];
            orbits[i].action -= integral;
        }
        auto cf = std::make_shared<const FilteredComplex>(c.gamma(), orbits, c.raw_boundary());
        if (!validate_complex(*cf).ok())
            continue;
        auto [lo, hi] = difference_bounds(p.h, p.f);
        p.ch = inst.complex;
        p.cf = cf;
        p.hf = identity_map(p.ch, p.cf, -lo);
        p.fh = identity_map(p.cf, p.ch, hi);
        p.rep_h = inst.cycle;
        p.rep_f = apply_map(p.hf, inst.cycle);
        p.degree = inst.degree;
        return p;
    }
}

SeidelShift random_seidel_shift(std::mt19937_64& rng, const FilteredComplex& c)
{
    const auto& g = *c.gamma();
    std::vector<size_t> perm(c.orbits().size());
    for (size_t i = 0; i < perm.size(); ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    SeidelShift s;
    std::uniform_int_distribution<long> coord(-2, 2);
    for (size_t i = 0; i < perm.size(); ++i) {
        const auto& id = c.orbits()[i].id;
        s.bijection[id] = "h" + c.orbits()[perm[i]].id;
        std::vector<long> a(g.rank());
        for (auto& x : a)
            x = coord(rng);
        s.cap_shift[id] = GammaElement(a);
    }
    s.i_omega = sample_ratio(rng, -16, 16, 8);
    s.i_degree = std::uniform_int_distribution<long>(-2, 2)(rng);
    return s;
}

}  // namespace spectra
