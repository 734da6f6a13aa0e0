#pragma once

#include "novikov_spectra/novikov.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

/// Capped orbit [x, A]. Action and degree are derived from the orbit's base
/// values: action = base - omega(A), degree = base - 2 c1(A).
struct Generator {
    std::string orbit;
    GammaElement cap;
    Rational action;
    long degree = 0;

    friend bool operator==(const Generator& a, const Generator& b) { return a.orbit == b.orbit && a.cap == b.cap; }
    std::string to_string() const { return orbit + cap.to_string(); }
};

struct Orbit {
    std::string id;
    Rational action;
    long degree = 0;
};

/// Raw boundary data: d[from, from_cap] contains scalar * [to, from_cap + C]
/// for every term c q^C of the downward scalar.
struct BoundaryEntry {
    std::string from;
    std::string to;
    NovikovScalar scalar;
    std::optional<GammaElement> from_cap;
};

/// One term of the equivariant boundary: d[x, 0] contains coef [to, shift].
struct BoundaryTerm {
    int to;
    GammaElement shift;
    Rational coef;
};

struct Violation {
    std::string kind;
    std::string detail;
    std::vector<std::string> witness;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    bool has(const std::string& kind) const;
    std::string summary() const;
};

class FilteredComplex {
public:
    FilteredComplex(GammaRef gamma, std::vector<Orbit> orbits, std::vector<BoundaryEntry> boundary,
                    std::optional<Rational> ceiling = std::nullopt);

    const GammaRef& gamma() const { return gamma_; }
    const std::vector<Orbit>& orbits() const { return orbits_; }
    const std::vector<BoundaryEntry>& raw_boundary() const { return raw_; }
    const std::optional<Rational>& ceiling() const { return ceiling_; }

    int orbit_index(const std::string& id) const;
    bool has_orbit(const std::string& id) const;
    Generator generator(const std::string& orbit, const GammaElement& cap) const;
    Generator generator(int orbit, const GammaElement& cap) const;

    /// Equivariant boundary of orbit i, sorted by (to, shift).
    const std::vector<BoundaryTerm>& boundary_of(int i) const { return matrix_.at(i); }
    /// Pairs of raw entries that disagree after normalizing to cap 0.
    const std::vector<Violation>& equivariance_conflicts() const { return conflicts_; }

    /// True when the generator lies below the ceiling (if any).
    bool admits(const Generator& g) const;

private:
    GammaRef gamma_;
    std::vector<Orbit> orbits_;
    std::vector<BoundaryEntry> raw_;
    std::optional<Rational> ceiling_;
    std::map<std::string, int> index_;
    std::vector<std::vector<BoundaryTerm>> matrix_;
    std::vector<Violation> conflicts_;
};

struct ChainTerm {
    Rational coef;
    Generator gen;
};

/// Finite Novikov chain, homogeneous in degree; terms at or below `floor`
/// are unknown.
class NovikovChain {
public:
    NovikovChain() = default;
    explicit NovikovChain(std::vector<ChainTerm> terms, ExtReal floor = ExtReal::neg_inf());

    static NovikovChain single(const Generator& g, const Rational& c = 1) { return NovikovChain({{c, g}}); }

    const std::vector<ChainTerm>& terms() const { return terms_; }
    const ExtReal& floor() const { return floor_; }
    bool is_zero() const { return terms_.empty(); }
    /// Degree of a nonzero chain.
    std::optional<long> degree() const;
    Rational coefficient(const std::string& orbit, const GammaElement& cap) const;

    NovikovChain operator-() const { return scaled(-1); }
    NovikovChain scaled(const Rational& c) const;
    friend NovikovChain operator+(const NovikovChain& a, const NovikovChain& b);
    friend NovikovChain operator-(const NovikovChain& a, const NovikovChain& b) { return a + (-b); }
    friend bool operator==(const NovikovChain& a, const NovikovChain& b);

    std::string to_string() const;

private:
    std::vector<ChainTerm> terms_;  // sorted by (orbit, cap), nonzero coefficients
    ExtReal floor_ = ExtReal::neg_inf();
};

struct LevelPeak {
    ExtReal level = ExtReal::neg_inf();
    std::optional<Generator> peak;
    bool ambiguous = false;
    std::vector<Generator> top;  // every generator attaining the level
};

ValidationReport validate_complex(const FilteredComplex& c, bool strict_levels = false);
LevelPeak level_and_peak(const NovikovChain& a);
NovikovChain boundary_apply(const FilteredComplex& c, const NovikovChain& a);
NovikovChain gamma_shift(const FilteredComplex& c, const NovikovChain& a, const GammaElement& shift);
FilteredComplex truncate_below(const FilteredComplex& c, const Rational& level);

/// Some A with omega(A) = base action - level, i.e. the level is a critical value.
bool in_action_spectrum(const FilteredComplex& c, const Rational& level);

/// Recomputes action and degree of every term from `c`; throws StructuralError
/// on unknown orbits or stale generator data.
void check_chain(const FilteredComplex& c, const NovikovChain& a);

}  // namespace spectra
