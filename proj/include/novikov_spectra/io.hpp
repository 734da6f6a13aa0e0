#pragma once

#include "novikov_spectra/continuous_qh.hpp"
#include "novikov_spectra/morphisms.hpp"

#include "json.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spectra::io {

using Json = nlohmann::ordered_json;

enum class Mode { Rational, Float };

/// Exact rationals are "p/q" or decimal strings, or JSON integers. Float mode
/// also takes JSON floating numbers (read exactly from their binary value).
Rational rational_from(const Json& j, Mode mode, const std::string& where);
Json rational_to(const Rational& q);
Json ext_to(const ExtReal& x);

/// {"omega": [...], "c1": [...]}; float mode marks the group approximate.
GammaRef gamma_from(const Json& j, Mode mode, const std::string& where);
Json gamma_to(const GammaGroup& g);

/// [["p/q", [coords]], ...]
NovikovScalar scalar_from(const Json& j, const GammaRef& gamma, Direction dir, Mode mode, const std::string& where);
Json scalar_to(const NovikovScalar& s);

FilteredComplex complex_from(const Json& j, Mode mode, const std::string& where);
Json complex_to(const FilteredComplex& c);

/// [["p/q", "orbit", [coords]], ...]
NovikovChain chain_from(const Json& j, const FilteredComplex& c, Mode mode, const std::string& where);
Json chain_to(const NovikovChain& a);

DualFunctional functional_from(const Json& j, const GammaRef& gamma, Mode mode, const std::string& where);
Json functional_to(const DualFunctional& mu);

std::string sha256_hex(const std::string& bytes);

struct NamedClass {
    std::string id;
    long degree = 0;
    NovikovChain chain;
};

struct ComplexFixture {
    std::string name;
    std::string path;
    ComplexRef complex;
    std::vector<NamedClass> classes;
};

struct MorseFixture {
    std::string name;
    std::string path;
    MorseData morse;
    ClassicalData classes;
    GammaRef gamma;
    std::optional<ProductFixture> products;
    std::vector<Rational> epsilons;
    std::vector<std::pair<std::string, QuantumClass>> quantum;  // basis classes first, then listed extras
};

struct ChainMapFixture {
    std::string name;
    std::string path;
    std::string source;
    std::string target;
    CertifiedChainMap map;
};

struct SeidelFixture {
    std::string name;
    std::string path;
    std::string complex;
    SeidelShift shift;
    std::string cls;
};

struct FunctionalFixture {
    std::string name;
    std::string path;
    std::string complex;  // complex fixture, or "<morse fixture>@<eps>"
    ComplexRef on;
    DualFunctional mu;
    std::optional<bool> expect_continuous;
    std::optional<long> degree;
};

struct FixtureHash {
    std::string name;
    std::string kind;
    std::string path;
    std::string sha256;
};

struct RandomSettings {
    long instances = 100;
    long continuity_pairs = 50;
    long seidel_shifts = 20;
    long balls = 200;
};

struct Workspace {
    std::string manifest;
    Mode mode = Mode::Rational;
    ExtReal floor = ExtReal::neg_inf();
    std::uint64_t seed = 1;
    std::string out;
    long oracle_cap = 6;
    RandomSettings random;
    std::vector<ComplexFixture> complexes;
    std::vector<MorseFixture> morse;
    std::vector<ChainMapFixture> chain_maps;
    std::vector<SeidelFixture> seidel;
    std::vector<FunctionalFixture> functionals;
    std::vector<FixtureHash> hashes;

    const ComplexFixture& complex(const std::string& name) const;
    const MorseFixture& morse_fixture(const std::string& name) const;
};

struct Issue {
    std::string file;
    std::string code;
    std::string message;
};

/// Every problem found while loading, in file order.
class LoadError : public InputError {
public:
    explicit LoadError(std::vector<Issue> issues);
    const std::vector<Issue>& issues() const { return issues_; }

private:
    std::vector<Issue> issues_;
};

struct Overrides {
    std::optional<Mode> mode;
    std::optional<ExtReal> floor;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<long> oracle_cap;
};

Workspace load_workspace(const std::string& manifest_path, const Overrides& o = {});

}  // namespace spectra::io
