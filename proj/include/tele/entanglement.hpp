#pragma once

#include <cstddef>
#include <vector>

#include "tele/linalg.hpp"

namespace tele {

// max{0, -2 Σ λ} over negative eigenvalues of the partial transpose on
// `subsystem`. dims defaults to two qubits.
double negativity(const CMatrix& rho, const std::vector<std::size_t>& dims = {2, 2},
                  std::size_t subsystem = 0);
double negativity(const DensityMatrix& rho, std::size_t subsystem = 0);

}  // namespace tele
