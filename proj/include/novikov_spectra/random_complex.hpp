#pragma once

#include "novikov_spectra/complex.hpp"

#include <memory>
#include <random>
#include <string>

namespace spectra {

struct RandomComplexOptions {
    int min_orbits = 2;
    int max_orbits = 6;
    long max_shift = 3;  // |coordinate| bound of Gamma exponents in boundary entries
};

struct RandomInstance {
    std::shared_ptr<const FilteredComplex> complex;
    NovikovChain cycle;  // nonzero cycle unless the complex has none in `degree`
    long degree = 0;
    std::string gamma_kind;
};

/// Valid complex built as P D P^{-1}: D pairs orbits by single level-dropping
/// entries, P = 1 + N with N strictly level-lowering and nilpotent.
RandomInstance random_instance(std::mt19937_64& rng, const RandomComplexOptions& opts = {});

enum class Mutation { DSquared, DegreeDrift, LevelIncrease, EquivarianceBreak, TiePeak };

const char* to_string(Mutation m);
const char* violation_kind(Mutation m);

/// Corrupts a valid complex so that validate_complex reports the mutation's kind.
FilteredComplex mutate(const FilteredComplex& c, Mutation m, std::mt19937_64& rng);

/// Same complex with orbit ids renamed and listed in permuted order.
FilteredComplex relabel(const FilteredComplex& c, const std::vector<size_t>& perm, const std::string& prefix);

/// Chain transported along the relabeling produced by `relabel`.
NovikovChain relabel_chain(const FilteredComplex& source, const FilteredComplex& target, const NovikovChain& a,
                           const std::vector<size_t>& perm);

}  // namespace spectra
