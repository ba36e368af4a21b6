#include "tele/bell.hpp"

#include <cmath>

namespace tele {

std::array<cplx, 4> bell_ket(int j) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (j) {
        case 0: return {r, 0.0, 0.0, r};
        case 1: return {0.0, r, r, 0.0};
        case 2: return {0.0, r, -r, 0.0};
        case 3: return {r, 0.0, 0.0, -r};
        default: throw InvalidInput("Bell index must be 0..3");
    }
}

std::array<CMatrix, 4> bell_projectors() {
    std::array<CMatrix, 4> out;
    for (int j = 0; j < 4; ++j) out[static_cast<std::size_t>(j)] = CMatrix::outer(bell_ket(j));
    return out;
}

DensityMatrix singlet() { return DensityMatrix::pure(bell_ket(2), {2, 2}); }

}  // namespace tele
