#pragma once

#include "novikov_spectra/engine.hpp"
#include "novikov_spectra/morse_quantum.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace spectra {

using ComplexRef = std::shared_ptr<const FilteredComplex>;

/// Time-sampled Hamiltonian on a finite measured point set. Sample k stands
/// for the interval [times[k], times[k+1]) with times[0] = 0 and the last
/// interval ending at 1.
struct HamiltonianData {
    std::vector<Rational> times;
    std::vector<std::string> points;
    std::vector<Rational> weights;
    std::vector<std::vector<Rational>> values;  // values[k][i] = H(times[k], points[i])
    bool normalized = false;

    void check() const;
    Rational dt(size_t k) const;
    Rational max_at(size_t k) const;
    Rational min_at(size_t k) const;
    Rational mean_at(size_t k) const;
};

/// Time-k flow as a permutation: flow[k][i] is the index of phi^t(points[i]).
using SampledFlow = std::vector<std::vector<size_t>>;

HamiltonianData zero_hamiltonian(const HamiltonianData& like);
HamiltonianData constant_shift(const HamiltonianData& h, const std::vector<Rational>& s);
HamiltonianData sum(const HamiltonianData& h, const HamiltonianData& k);

/// Integral of max - min over time.
Rational hofer_norm(const HamiltonianData& h);
/// (H # K)(t, x) = H(t, x) + K(t, phi_H^t^{-1}(x)); `flow` is the flow of H.
/// Without a flow `commuting` must be set, and the flow is taken as the identity.
HamiltonianData compose(const HamiltonianData& h, const HamiltonianData& k, const SampledFlow* flow,
                        bool commuting = false);
/// bar G(t, x) = -G(t, phi_G^t(x)).
HamiltonianData invert(const HamiltonianData& g, const SampledFlow* flow, bool commuting = false);
HamiltonianData normalize(const HamiltonianData& h);
/// int_0^1 min_x (F - H) and int_0^1 max_x (F - H).
std::pair<Rational, Rational> difference_bounds(const HamiltonianData& h, const HamiltonianData& f);

enum class HamiltonianOp { Norm, Compose, Invert, Normalize };
std::variant<HamiltonianData, Rational> hamiltonian_algebra(const HamiltonianData& h, const HamiltonianData* k,
                                                            HamiltonianOp op, const SampledFlow* flow = nullptr,
                                                            bool commuting = false);

/// h[from, 0] contains the terms of `scalar` as [to, C].
struct MapEntry {
    std::string from;
    std::string to;
    NovikovScalar scalar;
};

struct CertifiedChainMap {
    ComplexRef source;
    ComplexRef target;
    std::vector<MapEntry> entries;
    Rational shift_bound;  // lambda(h(a)) <= lambda(a) + shift_bound
};

struct MapCertificate {
    ValidationReport report;
    ExtReal worst_slack = ExtReal::pos_inf();  // smallest bound - (action(to) - action(from))
    bool ok() const { return report.ok(); }
};

NovikovChain apply_map(const CertifiedChainMap& h, const NovikovChain& a);
MapCertificate certify_chain_map(const CertifiedChainMap& h);
/// second after first, with the bounds added.
CertifiedChainMap compose_maps(const CertifiedChainMap& second, const CertifiedChainMap& first);
/// Identity on orbit ids between complexes sharing their orbit list.
CertifiedChainMap identity_map(ComplexRef source, ComplexRef target, const Rational& bound);

struct ContinuityReport {
    ExtReal rho_h;
    ExtReal rho_f;
    Rational lower;  // int -max(F - H)
    Rational upper;  // int -min(F - H)
    ExtReal lower_margin;
    ExtReal upper_margin;
    bool maps_certified = false;
    bool classes_match = false;
    bool holds = false;
    std::string detail;
};

/// rep_h and rep_f represent the same class in C_H and C_F.
ContinuityReport verify_continuity(const CertifiedChainMap& h_hf, const CertifiedChainMap& h_fh,
                                   const HamiltonianData& h, const HamiltonianData& f, const NovikovChain& rep_h,
                                   const NovikovChain& rep_f, long degree);

/// [x1, 0] * [x2, 0] contains the terms of `scalar` as [to, C]; `delta` is the
/// level slack allowed for the triple.
struct ProductEntry {
    std::string left;
    std::string right;
    std::string to;
    NovikovScalar scalar;
    Rational delta;
};

struct ProductMapData {
    ComplexRef left;
    ComplexRef right;
    ComplexRef target;
    long n = 0;
    std::vector<ProductEntry> table;
    Rational max_delta() const;
};

NovikovChain pants_product(const NovikovChain& a, const NovikovChain& b, const ProductMapData& p);

/// Chain-level product CF(eps1 f) x CF(eps2 f) -> CF((eps1 + eps2) f) induced
/// by a quantum product table; classes must have single-point representatives.
ProductMapData morse_product_map(const MorseData& m, const ClassicalData& cd, const ProductFixture& p,
                                 const Rational& eps1, const Rational& eps2, const GammaRef& gamma);

struct TriangleReport {
    ExtReal rho_a;
    ExtReal rho_b;
    ExtReal rho_ab;
    ExtReal product_level;  // level of the product of the two witnesses
    Rational delta;
    bool represents = false;  // witness product is homologous to (a b) flat
    bool holds = false;
};

TriangleReport triangle_check(const ProductMapData& p, const NovikovChain& rep_a, long deg_a, const NovikovChain& rep_b,
                              long deg_b, const NovikovChain& rep_ab);

/// Orbit x goes to bijection[x] with [x, A] -> [bijection[x], A + cap_shift[x]];
/// actions move by i_omega and degrees by i_degree. Every orbit needs both entries.
struct SeidelShift {
    std::map<std::string, std::string> bijection;
    std::map<std::string, GammaElement> cap_shift;
    Rational i_omega;
    long i_degree = 0;
};

SeidelShift deck_shift(const FilteredComplex& c, const GammaElement& a);
SeidelShift inverse(const SeidelShift& s);
/// second after first.
SeidelShift compose_shifts(const SeidelShift& second, const SeidelShift& first);
FilteredComplex seidel_complex(const FilteredComplex& c, const SeidelShift& s);
NovikovChain seidel_transport(const FilteredComplex& target, const SeidelShift& s, const NovikovChain& a);

struct SeidelReport {
    std::shared_ptr<const FilteredComplex> shifted;
    NovikovChain transported;
    ExtReal rho_before;
    ExtReal rho_after;
    bool exact = false;  // rho_after - rho_before = i_omega
};

SeidelReport seidel_shift(const FilteredComplex& c, const SeidelShift& s, const NovikovChain& rep, long degree);

}  // namespace spectra
