#pragma once

// Reproducible random states, unitaries, channels and Hamiltonians for
// property checks and sampling reports.

#include <cstddef>
#include <random>

#include "malevich/channel_algebra.hpp"

namespace malevich {

using Rng = std::mt19937_64;

ProbabilityTriple random_box_triple(Rng& rng);
// Uniform in the qubit ball (rejection from the cube).
ProbabilityTriple random_admissible_triple(Rng& rng);
// Uniform on the pure-state sphere.
ProbabilityTriple random_pure_triple(Rng& rng);

// psi, phi uniform in [0, 2 pi), theta uniform in [0, pi].
EulerUnitary random_euler(Rng& rng);
Matrix2c random_unitary(Rng& rng);

// Complete Kraus set {A_k S^{-1/2}} from Gaussian A_k, S = sum A_k^dag A_k.
KrausSet random_kraus_set(Rng& rng, std::size_t count);

// Hermitian with entries of magnitude ~scale.
Hamiltonian2 random_hamiltonian(Rng& rng, double scale = 1.0);

}  // namespace malevich
