#pragma once

#include "novikov_spectra/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace spectra::suites {

struct CheckRow {
    std::string instance;
    bool pass = true;
    bool vacuous = false;  // hypotheses fail, nothing to verify
    std::optional<ExtReal> margin;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<CheckRow> rows;
    std::vector<io::Json> info;  // reported values that are not checks

    size_t failures() const;
    size_t verified() const;  // passing, non-vacuous rows
    bool ok() const { return failures() == 0; }
    void add(std::string instance, bool pass, std::string detail = {}, std::optional<ExtReal> margin = {});
    io::Json to_json() const;
};

/// Sandwich bounds for every quantum class and epsilon of the fixture, plus the
/// shrinking distance to v(a) along decreasing epsilon.
SuiteResult normalization(const io::MorseFixture& f);

/// Engine against the brute-force oracle, and the truncation formulation at
/// `probes` off-spectrum levels, on seeded random complexes.
SuiteResult oracle(std::uint64_t seed, long instances, long probes, long max_orbits, const ExtReal& floor);

/// Spectrality of every rho computed on the workspace and on seeded instances.
SuiteResult spectrality(const io::Workspace& ws, std::uint64_t seed, long instances);

SuiteResult continuity(std::uint64_t seed, long pairs);

/// Triangle inequality for every pair of basis classes at each epsilon.
SuiteResult triangle(const io::MorseFixture& f);

/// Seidel fixtures, then seeded random shifts and deck transformations.
SuiteResult monodromy(const io::Workspace& ws, std::uint64_t seed, long shifts);

/// rho(h(a)) <= rho(a) + bound for the shipped chain maps.
SuiteResult chain_maps(const io::Workspace& ws);

SuiteResult scalars(std::uint64_t seed, long pairs);
SuiteResult balls(std::uint64_t seed, long pairs);
SuiteResult ball_images(std::uint64_t seed, long cases);
SuiteResult functionals(const io::Workspace& ws);
SuiteResult cochain_map(const io::Workspace& ws, std::uint64_t seed);
/// rho of sigma(a) against rho of a flat; reported, not checked.
SuiteResult continuous_vs_finite(const io::Workspace& ws);

SuiteResult mutations(std::uint64_t seed);
SuiteResult relabeling(std::uint64_t seed, long permutations);
SuiteResult projective(const io::Workspace& ws, std::uint64_t seed, long scalars);

/// rho of every shipped class, as report rows.
SuiteResult rho_table(const io::Workspace& ws);

}  // namespace spectra::suites
