// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <json.hpp>

#include "cg/block_encoding.hpp"
#include "cg/certificates.hpp"
#include "cg/provers.hpp"
#include "cg/verifier.hpp"

namespace cg {

using Json = nlohmann::json;

// Prover registry for the CLI. Known ids: honest, constant-zero, random,
// cheat, rotated:<phi>, mixture:<lambda>, commutation-honest, commutation-zx.
CompiledProverStrategy prover_by_id(const std::string& id);

// Gamma, q-forms, macroscopic diagnostics, rigidity residuals and their
// bounds, each lemma reported as a (measured, bound, slack, verdict) entry.
Json certify_report(const CompiledProverStrategy& prover);

// Noise sweeps with the lemma bound columns; kind is "anticom" or "com".
Json sweep_report(const std::string& kind, int points);
std::string sweep_csv(const Json& report);

// Protocol parameters, exact subtest values, soundness diagnostics and the
// optional Monte Carlo cross-check for the verification protocol.
Json verify_report(const XXZZHamiltonian& h, const ProtocolConfig& cfg,
                   const Mat& witness, const std::string& witness_name,
                   long trials);

// Nonlocal / classical / compiled value columns.
Json value_report(const std::string& game_id, const std::string& strategy_id);

Json isometry_report(int n, int states, uint64_t seed);
Json block_encoding_report(int trials, uint64_t seed);

// True iff every "verdict" field anywhere in the report is "PASS".
bool report_all_pass(const Json& j);

}  // namespace cg
