#pragma once

#include "novikov_spectra/complex.hpp"

#include <vector>

namespace spectra {

/// Brute-force evaluation over explicit capped generators inside an action
/// window. Shares no reduction logic with the spectral engine.
struct OracleOptions {
    Rational below = 8;  // window extends this far below the representative's level
    Rational above = 8;  // and this far above the top base action
    long box = 24;       // |coordinate| bound when enumerating caps
};

/// Every generator of the given degree with action in [lo, hi], sorted by action.
std::vector<Generator> window_generators(const FilteredComplex& c, long degree, const Rational& lo,
                                         const Rational& hi, long box);

struct OracleWindow {
    Rational lo;
    Rational hi;
};

OracleWindow oracle_window(const FilteredComplex& c, const NovikovChain& rep, const OracleOptions& opts);

/// Is there a chain beta with every term of rep + d(beta) at action below `level`?
bool oracle_reaches_below(const FilteredComplex& c, const NovikovChain& rep, long degree, const Rational& level,
                          const OracleOptions& opts = {});

/// Minimum over representatives of the level, by scanning candidate levels.
ExtReal oracle_rho(const FilteredComplex& c, const NovikovChain& rep, long degree, const OracleOptions& opts = {});

/// Image formulation: does the class of rep come from a cycle of the
/// truncated complex C^{<level}? `level` must lie off the action spectrum.
bool truncated_image_contains(const FilteredComplex& c, const NovikovChain& rep, long degree, const Rational& level,
                              const OracleOptions& opts = {});

}  // namespace spectra
