// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "cg/compiler.hpp"

namespace cg {

// CHSH-shaped provers: plaintext classes {0,1}, 1-bit answers, Bob
// questions {0,1} with 1-bit outcomes.
CompiledProverStrategy honest_chsh_compiled();
CompiledProverStrategy rotated_chsh_compiled(double phi);
CompiledProverStrategy constant_answer_chsh(int a, int b);
CompiledProverStrategy random_answer_chsh();

// Reads the plaintext out of the transparent ideal scheme (writes x into a
// note qubit in the first round) and answers b = x*y; wins every round.
CompiledProverStrategy plaintext_reading_cheat();

// Block-diagonal convex combination: a coin register selects which
// sub-prover plays. All sub-provers must share class keys, answer widths and
// Bob question keys. Value is the weighted average of the component values.
CompiledProverStrategy mixture(const std::vector<CompiledProverStrategy>& provers,
                               const std::vector<double>& weights);

// Commutation-game-shaped provers: single class 0, 2-bit answers.
CompiledProverStrategy commutation_honest_compiled();
CompiledProverStrategy commutation_zx_compiled();  // B0=Z, B1=X on |0>, success 3/4

}  // namespace cg
