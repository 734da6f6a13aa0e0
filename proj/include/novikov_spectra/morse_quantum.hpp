#pragma once

#include "novikov_spectra/complex.hpp"
#include "novikov_spectra/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

struct CriticalPoint {
    std::string id;
    Rational value;  // f(p)
    long index = 0;  // Morse index of f at p
};

/// d_f(from) contains coef * to; the index drops by one.
struct MorseEdge {
    std::string from;
    std::string to;
    Rational coef;
};

struct MorseData {
    long dim = 0;  // 2n
    std::vector<CriticalPoint> points;
    std::vector<MorseEdge> boundary;
    std::optional<std::vector<long>> betti;

    long half_dim() const { return dim / 2; }
    const CriticalPoint& point(const std::string& id) const;
    Rational max_value() const;
    Rational min_value() const;
};

ValidationReport validate_morse(const MorseData& m);

/// CF(eps f): orbit per critical point, base action -eps f(p), base degree
/// n - index(p); the boundary is the Morse boundary of -eps f, i.e. the
/// transpose of d_f.
FilteredComplex build_small_floer(const MorseData& m, const Rational& eps, GammaRef gamma);

/// Grading of a capped orbit of CF(eps f): base degree - 2 c1(cap).
long index_of(const FilteredComplex& c, const Generator& g);
/// Morse index of eps f at the critical point underlying g.
long morse_index(const MorseData& m, const Generator& g);

/// Singular class with Morse representatives: `chain` is a cycle of CF(eps f)
/// representing its Poincare dual, `cochain` a functional on critical points
/// vanishing on boundaries.
struct ClassicalClass {
    std::string id;
    long degree = 0;  // cohomological degree
    std::vector<std::pair<std::string, Rational>> chain;
    std::vector<std::pair<std::string, Rational>> cochain;
};

struct ClassicalData {
    long dim = 0;
    std::vector<ClassicalClass> classes;
    const ClassicalClass& find(const std::string& id) const;
};

/// (a, PD(b)): the cochain of a evaluated on the chain of b.
Rational classical_pairing(const ClassicalData& cd, const std::string& a, const std::string& b);

struct QuantumTerm {
    Rational coef;
    std::string cls;
    GammaElement exponent;  // upward: q^{-A}; downward: q^{A}
};

/// Quantum (co)homology element over the classes of a ClassicalData.
class QuantumClass {
public:
    QuantumClass(GammaRef gamma, Direction dir, std::vector<QuantumTerm> terms = {});
    static QuantumClass basis(GammaRef gamma, const std::string& cls, const Rational& coef = 1);

    const GammaRef& gamma() const { return gamma_; }
    Direction direction() const { return dir_; }
    const std::vector<QuantumTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Cohomological degree for upward classes, homological for downward ones.
    /// Throws StructuralError when the class is not homogeneous.
    long degree(const ClassicalData& cd) const;
    QuantumClass scaled(const Rational& c) const;
    QuantumClass shifted(const GammaElement& a) const;
    friend QuantumClass operator+(const QuantumClass& a, const QuantumClass& b);
    friend bool operator==(const QuantumClass& a, const QuantumClass& b);
    std::string to_string() const;

private:
    GammaRef gamma_;
    Direction dir_;
    std::vector<QuantumTerm> terms_;  // sorted by (cls, exponent), merged, nonzero
};

struct ProductFixture {
    std::map<std::pair<std::string, std::string>, QuantumClass> table;
    std::string unit;
};

QuantumClass quantum_product(const QuantumClass& a, const QuantumClass& b, const ProductFixture& p);

/// Unit, grading and associativity over basis triples; returns failures.
std::vector<std::string> check_product_fixture(const ProductFixture& p, const ClassicalData& cd, const GammaRef& gamma);

Rational pairing(const QuantumClass& up, const QuantumClass& down, const ClassicalData& cd);
QuantumClass flat(const QuantumClass& a);
QuantumClass sharp(const QuantumClass& b);

struct QhValuation {
    Rational v;                  // largest -omega(A) over the exponents
    QuantumClass leading;        // terms attaining v
    bool leading_unique = true;  // a single exponent attains v
    ExtReal gap;                 // v minus the next level, +inf for one exponent
    Rational min_reading;        // smallest -omega(A) over the exponents
    bool readings_agree = true;
};

QhValuation qh_valuation(const QuantumClass& a);

/// Cycle of CF(eps f) representing the flat of an upward class.
NovikovChain flat_chain(const FilteredComplex& c, const QuantumClass& a, const ClassicalData& cd);

struct BoundReport {
    Rational eps;
    ExtReal rho;
    Rational v;
    ExtReal gap;
    bool hypothesis = true;  // eps (max f - min f) < gap / 2
    bool gap_bound = true; // v - gap/2 <= rho <= v + gap/2
    bool sandwich = true;    // v - eps max f <= rho <= v + eps max f
    bool sharp_sandwich = true;  // v - eps max f <= rho <= v - eps min f
    ExtReal distance;        // |rho - v|
    bool ok() const { return !hypothesis || (gap_bound && sandwich && sharp_sandwich); }
};

BoundReport normalization_check(const MorseData& m, const Rational& eps, const QuantumClass& a, const GammaRef& gamma,
                          const ClassicalData& cd);

}  // namespace spectra
