#pragma once

#include "novikov_spectra/complex.hpp"
#include "novikov_spectra/morse_quantum.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectra {

/// Value carried by the generators [orbit, start + k step], 0 <= k < count.
/// No step means the single generator [orbit, start]; no count means the
/// progression never ends.
struct FunctionalPiece {
    std::string orbit;
    GammaElement start;
    std::optional<GammaElement> step;
    std::optional<long> count;
    Rational value;
};

/// Linear functional on chains, given by its values on generators: the value
/// at a generator is the sum over the pieces containing it. `threshold` is the
/// declared level below which the functional vanishes; -inf declares nothing.
struct DualFunctional {
    GammaRef gamma;
    std::vector<FunctionalPiece> pieces;
    ExtReal threshold = ExtReal::neg_inf();

    Rational operator()(const std::string& orbit, const GammaElement& cap) const;
    Rational operator()(const NovikovChain& a) const;
    DualFunctional scaled(const Rational& c) const;
    friend DualFunctional operator+(const DualFunctional& a, const DualFunctional& b);
};

struct ContinuityVerdict {
    bool continuous = false;
    /// The functional vanishes on generators of action below this level;
    /// +inf when it vanishes identically.
    ExtReal threshold = ExtReal::pos_inf();
    bool declared_ok = true;
    /// Terms c_j [x_j, A_j] with c_j mu([x_j, A_j]) = 1 and actions falling to
    /// -inf: the partial sums converge while their values grow by one each.
    std::vector<ChainTerm> counterexample;
    std::string detail;
};

ContinuityVerdict is_continuous_functional(const DualFunctional& mu, const FilteredComplex& c,
                                           size_t prefix = 8);

/// (d* mu)(a) = mu(d a). Throws DomainError for a discontinuous mu.
DualFunctional dual_boundary(const DualFunctional& mu, const FilteredComplex& c);

/// Coboundary of a quantum cochain read off the Morse data: the piece on p
/// moves to every e.to with e.from = p, scaled by e.coef.
DualFunctional quantum_coboundary(const DualFunctional& phi, const MorseData& m);

/// <a, .> as a functional on CF(eps f): [p, A] carries c times the cochain of
/// the class at p, for every term c q^{-A} of a.
DualFunctional sigma_embed(const QuantumClass& a, const ClassicalData& cd);

/// Compares two functionals on every generator named by their pieces, taking
/// the first `terms` elements of unbounded progressions.
bool agree_on_support(const DualFunctional& a, const DualFunctional& b, long terms = 64);

struct ContinuousRho {
    ExtReal rho = ExtReal::neg_inf();
    bool zero_class = false;
    bool exhaustive = true;  // false when an unbounded support cut the scan short
    bool certified = true;
    NovikovChain witness;    // cycle z with mu(z) != 0 at level rho
};

/// inf of lambda(z) over cycles z of the given degree with mu(z) != 0, i.e. the
/// least level at which mu is pulled back from the truncated complex.
/// Throws DomainError when mu is discontinuous or not a cocycle in that degree.
ContinuousRho rho_continuous(const FilteredComplex& c, const DualFunctional& mu, long degree, long scan = 256);

struct BallSpec {
    NovikovChain center;
    Rational radius;
};

bool ball_membership(const NovikovChain& b, const BallSpec& ball);

/// Radius R3 with U(alpha, R3) inside both balls, or nothing when alpha is
/// outside one of them.
std::optional<Rational> basis_axiom_check(const BallSpec& b1, const BallSpec& b2, const NovikovChain& alpha);

/// For b in U(a, R): d b lies in U(d a, R). Vacuously true otherwise.
bool boundary_ball_check(const FilteredComplex& c, const NovikovChain& a, const Rational& radius,
                         const NovikovChain& b);

}  // namespace spectra
