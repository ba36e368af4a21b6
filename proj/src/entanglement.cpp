#include "tele/entanglement.hpp"

#include <algorithm>

namespace tele {

double negativity(const CMatrix& rho, const std::vector<std::size_t>& dims, std::size_t subsystem) {
    if (dims.size() != 2) throw InvalidInput("negativity: expected a bipartition");
    if (subsystem > 1) throw InvalidInput("negativity: split must be 0 or 1");
    const auto ev = hermitian_eigenvalues(partial_transpose(rho, dims, subsystem));
    double neg_sum = 0.0;
    for (double l : ev)
        if (l < 0.0) neg_sum += l;
    return std::max(0.0, -2.0 * neg_sum);
}

double negativity(const DensityMatrix& rho, std::size_t subsystem) {
    return negativity(rho.matrix(), rho.dims(), subsystem);
}

}  // namespace tele
