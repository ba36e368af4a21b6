#pragma once

#include <string>

namespace tele {

// Bob's recovery regime: perfect, or run under dephasing (σ³), bit-flip (σ¹),
// bit-phase-flip (σ²) or intrinsic (σ^m) noise.
enum class RecoveryKind { perfect, dephasing, bitflip, bitphase, intrinsic };

std::string to_string(RecoveryKind k);  // "p", "d", "b", "bp", "i"
RecoveryKind parse_recovery_kind(const std::string& s);

}  // namespace tele
