#pragma once

#include <random>

#include "simplexdecomp/linalg.hpp"

namespace simplexdecomp {

using Rng = std::mt19937_64;

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the R-diagonal phases removed.
CMatrix haar_unitary(int n, Rng& rng);

/// Haar-distributed real orthogonal matrix.
Eigen::MatrixXd random_orthogonal(int m, Rng& rng);

/// Full-rank random density matrix G G^dagger / Tr (Hilbert-Schmidt measure).
CMatrix random_density(int n, Rng& rng);

/// Random pure state |psi><psi|.
CMatrix random_pure_state(int n, Rng& rng);

}  // namespace simplexdecomp
