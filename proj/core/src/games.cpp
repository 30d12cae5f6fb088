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

#include "procmat/games.hpp"

#include <cmath>
#include <random>

#include "procmat/basis.hpp"
#include "procmat/effective.hpp"
#include "procmat/eigen.hpp"
#include "procmat/errors.hpp"
#include "procmat/tensor.hpp"

namespace procmat {

CausalGame ocb_game() {
  return {"ocb",
          [](int a, int b, int b_prime, int x, int y) { return b_prime == 0 ? x == b : y == a; },
          0.75};
}

GameResult evaluate_game(const ProcessMatrix& w, const CausalGame& game, const Strategy& strategy) {
  if (strategy.alice.size() != 2 || strategy.bob.size() != 4)
    throw ShapeError("evaluate_game: strategy needs 2 Alice and 4 Bob instruments");
  for (const auto* group : {&strategy.alice, &strategy.bob})
    for (const auto& instrument : *group)
      if (!check_instrument(instrument).passed)
        throw ContractViolation("evaluate_game: strategy " + strategy.id +
                                " uses an incomplete instrument");

  GameResult result;
  result.strategy_id = strategy.id;
  double per_condition[2] = {0.0, 0.0};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) {
        const ProbabilityTable t =
            probability_table(w, strategy.alice[a], strategy.bob[2 * b + bp]);
        double win = 0.0;
        for (std::size_t x = 0; x < t.alice_outcomes; ++x)
          for (std::size_t y = 0; y < t.bob_outcomes; ++y)
            if (game.success(a, b, bp, static_cast<int>(x), static_cast<int>(y))) win += t.at(x, y);
        per_condition[bp] += win / 4.0;
      }
  result.p_alice_guesses_b = per_condition[0];
  result.p_bob_guesses_a = per_condition[1];
  result.value = 0.5 * (per_condition[0] + per_condition[1]);
  return result;
}

namespace {

Vector basis_state(std::size_t dim, std::size_t k) {
  Vector v(dim);
  v.at(k) = 1.0;
  return v;
}

}  // namespace

Strategy ocb_strategy(int g1, int g2, int g3, int g4) {
  Strategy s;
  s.id = "ocb[g=" + std::to_string(g1) + std::to_string(g2) + std::to_string(g3) +
         std::to_string(g4) + "]";
  for (int a = 0; a < 2; ++a) {
    std::vector<CPMap> maps;
    for (int x = 0; x < 2; ++x) maps.push_back(measure_reprepare(basis_state(2, x), basis_state(2, a ^ g1)));
    s.alice.emplace_back(std::move(maps));
  }
  const MeasurementBasis xb = MeasurementBasis::qubit_x();
  const CMatrix mixed = CMatrix::identity(2) * 0.5;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      std::vector<CPMap> maps;
      if (bp == 1) {
        for (int y = 0; y < 2; ++y)
          maps.emplace_back(2, 2, kron(CMatrix::projector(basis_state(2, y ^ g2)), mixed));
      } else {
        for (int e = 0; e < 2; ++e)
          maps.push_back(measure_reprepare(xb.vector(e), basis_state(2, b ^ (g3 & e) ^ g4)));
      }
      s.bob.emplace_back(std::move(maps));
    }
  }
  return s;
}

std::vector<Strategy> ocb_strategy_family() {
  std::vector<Strategy> family;
  for (int v = 0; v < 16; ++v) family.push_back(ocb_strategy((v >> 3) & 1, (v >> 2) & 1, (v >> 1) & 1, v & 1));
  return family;
}

Strategy random_guess_strategy(const SystemLayout& layout) {
  auto coin = [](std::size_t d_in, std::size_t d_out) {
    const CMatrix cj = kron(CMatrix::identity(d_in) * 0.5,
                            CMatrix::identity(d_out) * (1.0 / static_cast<double>(d_out)));
    return Instrument({CPMap(d_in, d_out, cj), CPMap(d_in, d_out, cj)});
  };
  Strategy s;
  s.id = "random-guess";
  for (int a = 0; a < 2; ++a) s.alice.push_back(coin(layout.d_a1(), layout.d_a2()));
  for (int k = 0; k < 4; ++k) s.bob.push_back(coin(layout.d_b1(), layout.d_b2()));
  return s;
}

namespace {

MeasurementBasis random_basis(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(dim, dim);
  for (auto& e : g.entries()) e = complex(normal(rng), normal(rng));
  return MeasurementBasis(hermitian_eig(hermitian_part(g)).vectors);
}

}  // namespace

Strategy random_cq_strategy(const SystemLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Strategy s;
  s.id = "random-cq[" + std::to_string(seed) + "]";
  for (int a = 0; a < 2; ++a)
    s.alice.push_back(random_cq_instrument(rng, random_basis(rng, layout.d_a1()), layout.d_a2()));
  for (int k = 0; k < 4; ++k)
    s.bob.push_back(random_cq_instrument(rng, random_basis(rng, layout.d_b1()), layout.d_b2()));
  return s;
}

GameResult enumerate_strategies(const ProcessMatrix& w, const CausalGame& game,
                                const std::vector<Strategy>& family) {
  if (family.empty()) throw ContractViolation("enumerate_strategies: empty strategy family");
  GameResult best;
  for (std::size_t i = 0; i < family.size(); ++i) {
    GameResult r = evaluate_game(w, game, family[i]);
    r.variant_index = i;
    if (i == 0 || r.value > best.value) best = std::move(r);
  }
  return best;
}

ProcessMatrix ocb_process() {
  using namespace pauli;
  const double h = 1.0 / std::sqrt(2.0);
  CMatrix w = CMatrix::identity(16) + tensor_product({i2(), z(), z(), i2()}) * h +
              tensor_product({z(), i2(), x(), z()}) * h;
  return ProcessMatrix(SystemLayout::qubits(), w * 0.25);
}

}  // namespace procmat
