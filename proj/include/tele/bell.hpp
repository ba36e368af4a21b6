#pragma once

#include <array>

#include "tele/linalg.hpp"

namespace tele {

// |Ψ^0..3_Bell>: (|00>+|11>), (|01>+|10>), (|01>-|10>), (|00>-|11>), all /√2.
std::array<cplx, 4> bell_ket(int j);
std::array<CMatrix, 4> bell_projectors();

// The ideal shared channel, the singlet |Ψ²><Ψ²|.
DensityMatrix singlet();

// Bob's correction index for Alice's outcome j: m = j ⊕ 2 (mod 4).
constexpr int recovery_index(int j) { return (j + 2) % 4; }

}  // namespace tele
