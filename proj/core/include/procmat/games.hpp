// Copyright 2026 The procmat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "procmat/instruments.hpp"
#include "procmat/process.hpp"

namespace procmat {

/// Two-party game with uniform input bits: a for Alice, b and b' for Bob.
/// Alice answers x, Bob answers y (both outcome indices of their instruments).
struct CausalGame {
  std::string name;
  std::function<bool(int a, int b, int b_prime, int x, int y)> success;
  /// Best value reachable by causally separable processes; a reference, not
  /// enforced anywhere.
  double classical_bound;
};

/// Causal game of the OCB fixture: with b' = 0 Alice must output b, with b' = 1 Bob
/// must output a.
CausalGame ocb_game();

/// Instruments chosen per input: alice[a] and bob[2 b + b'].
struct Strategy {
  std::string id;
  std::vector<Instrument> alice;
  std::vector<Instrument> bob;
};

struct GameResult {
  double value = 0.0;
  double p_alice_guesses_b = 0.0;  // P(x = b | b' = 0)
  double p_bob_guesses_a = 0.0;    // P(y = a | b' = 1)
  std::string strategy_id;
  std::size_t variant_index = 0;
};

/// Exact average over the 8 input combinations. Throws ShapeError for
/// instruments that do not fit W and ContractViolation for incomplete ones.
GameResult evaluate_game(const ProcessMatrix& w, const CausalGame& game, const Strategy& strategy);

/// Qubit strategy family indexed by g = (g1, g2, g3, g4), variant index
/// 8 g1 + 4 g2 + 2 g3 + g4:
///   Alice measures Z (outcome x) and prepares |a ^ g1>;
///   Bob, b' = 1: measures Z with outcome y ^ g2 and prepares 1/2;
///   Bob, b' = 0: measures X (outcome e) and prepares |b ^ (g3 e) ^ g4>.
Strategy ocb_strategy(int g1, int g2, int g3, int g4);
std::vector<Strategy> ocb_strategy_family();

/// Strategy whose outcomes are fair coins independent of everything.
Strategy random_guess_strategy(const SystemLayout& layout);

/// Random two-outcome classical-quantum instruments, measuring in random
/// bases, independently for every party input.
Strategy random_cq_strategy(const SystemLayout& layout, std::uint64_t seed);

/// Best result over the family; ties keep the lowest index.
GameResult enumerate_strategies(const ProcessMatrix& w, const CausalGame& game,
                                const std::vector<Strategy>& family);

/// 1/4 [1 + (Z_A2 Z_B1 + Z_A1 X_B1 Z_B2) / sqrt 2]
ProcessMatrix ocb_process();

}  // namespace procmat
