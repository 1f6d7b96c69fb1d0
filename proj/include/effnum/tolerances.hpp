#pragma once

namespace effnum {

// Relative sum tolerance for counting/probability vectors (scaled by N).
inline constexpr double kTolSum = 1e-9;
// Identity checks on evaluated measures.
inline constexpr double kTolEval = 1e-9;
// Axiom verifier pass/fail threshold.
inline constexpr double kTolAxiom = 1e-8;
// Counting-function extraction agreement.
inline constexpr double kTolExtract = 1e-9;
// Quantum state normalization.
inline constexpr double kTolNorm = 1e-9;
// Pairwise inner products of orthonormal families.
inline constexpr double kTolOrtho = 1e-8;

}  // namespace effnum
