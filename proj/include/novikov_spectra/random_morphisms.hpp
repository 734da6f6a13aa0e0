#pragma once

#include "novikov_spectra/morphisms.hpp"
#include "novikov_spectra/random_complex.hpp"

namespace spectra {

/// C_H from a random instance and C_F = C_H with each orbit x moved by
/// -int K(t, x) dt, where F = H + K; identity maps carry the linear homotopy bounds.
struct ContinuityPair {
    ComplexRef ch;
    ComplexRef cf;
    HamiltonianData h;
    HamiltonianData f;
    CertifiedChainMap hf;
    CertifiedChainMap fh;
    NovikovChain rep_h;
    NovikovChain rep_f;
    long degree = 0;
    bool constant = false;  // K depends on t only
};

HamiltonianData random_hamiltonian(std::mt19937_64& rng, const std::vector<std::string>& points);
ContinuityPair random_continuity_pair(std::mt19937_64& rng, bool constant);

/// Random orbit renaming with random cap shifts and a random action shift.
SeidelShift random_seidel_shift(std::mt19937_64& rng, const FilteredComplex& c);

}  // namespace spectra
