#pragma once

#include "novikov_spectra/complex.hpp"
#include "novikov_spectra/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectra {

/// Coordinates of the degree-d part of a complex as a vector space over
/// K = Q((t)), t the positive generator of ker c1 (K = Q when that kernel is 0).
/// Orbit i contributes the generators [x_i, base_cap_i + m t], m in Z.
class DegreeFrame {
public:
    DegreeFrame(const FilteredComplex& c, long degree);

    long degree() const { return degree_; }
    size_t size() const { return orbit_.size(); }
    /// omega(t), or 0 when K = Q.
    const Rational& step() const { return step_; }
    int orbit(size_t k) const { return orbit_[k]; }
    const GammaElement& base_cap(size_t k) const { return cap_[k]; }
    const Rational& base_level(size_t k) const { return level_[k]; }
    /// Frame slot of an orbit, or -1 when no cap puts it in this degree.
    int slot_of(int orbit) const;

    linalg::LaurentVec to_vector(const NovikovChain& a) const;
    NovikovChain to_chain(const linalg::LaurentVec& v) const;
    /// Exponent m with cap = base_cap(k) + m t.
    long exponent_of(size_t k, const GammaElement& cap) const;
    Generator generator(size_t k, long m) const;

    /// Level of a frame vector; -inf for zero.
    ExtReal level(const linalg::LaurentVec& v) const;
    /// Coefficients of v on the generators at its level.
    linalg::QVector leading_part(const linalg::LaurentVec& v, const Rational& level) const;
    /// Key grouping levels that can be moved onto each other by powers of t.
    Rational level_class(const Rational& level) const;
    /// Power of t moving `from` onto `to`: from - n step = to.
    long shift_between(const Rational& from, const Rational& to) const;

private:
    const FilteredComplex* complex_;
    long degree_;
    Rational step_;
    std::optional<GammaElement> t_;
    std::vector<int> orbit_;
    std::vector<GammaElement> cap_;
    std::vector<Rational> level_;
};

/// Vectors spanning the same K-space as the (independent) input whose leading
/// parts are independent within each level class, so that the level of any
/// K-combination is the largest level of its terms.
std::vector<linalg::LaurentVec> orthogonal_basis(const DegreeFrame& f, std::vector<linalg::LaurentVec> vectors,
                                                 size_t max_steps = 100000);

struct EngineOptions {
    ExtReal floor = ExtReal::neg_inf();  // stop level for reduction
    size_t max_steps = 100000;
};

struct ReductionStep {
    Rational level_before;
    NovikovChain preimage;   // beta with the step adding d(beta) to the witness
    NovikovChain boundary;   // d(beta)
};

struct SpectralResult {
    ExtReal rho = ExtReal::neg_inf();
    NovikovChain witness;
    NovikovChain preimage;  // witness = representative + d(preimage) (finite cases)
    std::vector<ReductionStep> trace;
    std::optional<Generator> attained_at;
    bool zero_class = false;
    bool certified = true;  // false for approximate period data
    /// Set when the reduction reached the precision floor: rho lies in [lower, upper].
    std::optional<std::pair<ExtReal, ExtReal>> interval;
    /// Leading part of the witness and the leading parts it could not be cancelled by.
    std::string certificate;
};

SpectralResult spectral_invariant(const FilteredComplex& c, const NovikovChain& representative, long degree,
                                  const EngineOptions& opts = {});

struct SpectrumDescription {
    std::vector<Rational> bases;   // base actions of the orbits
    Rational period;               // generator of the period group
    bool rational = true;
    std::vector<Rational> points;  // spectrum inside the window, ascending
};

SpectrumDescription action_spectrum(const FilteredComplex& c, const Rational& lo, const Rational& hi);

struct SpectralityVerdict {
    bool holds = false;
    bool certified = true;
    std::optional<Generator> witness;  // generator whose action equals rho
};

SpectralityVerdict spectrality_check(const SpectralResult& r, const FilteredComplex& c);

}  // namespace spectra
