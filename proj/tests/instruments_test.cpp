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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

namespace procmat {
namespace {

using testing::max_diff;
using testing::naive_kron;
using testing::pauli_string;

const SystemLayout kQubits(2, 2, 2, 2);
const double kS = 1.0 / std::sqrt(2.0);

CMatrix ket_bra(const Vector& ket, const Vector& bra) {
  CMatrix m(ket.size(), bra.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

TEST(CjFromKraus, RankOneKrausGivesTransposedPreparation) {
  const Vector phi1{complex(0.6, 0.0), complex(0.0, 0.8)};
  const Vector phi2{kS, complex(0.0, kS)};
  const std::vector<CMatrix> k{ket_bra(phi2, phi1)};
  const CPMap m = cj_from_kraus(k, 2, 2);
  const CMatrix expected =
      naive_kron(CMatrix::projector(phi1), CMatrix::projector(phi2).transpose());
  EXPECT_LT(max_diff(m.cj(), expected), 1e-15);
}

TEST(CjFromKraus, IdentityChannelIsUnnormalizedMaxEntangled) {
  for (std::size_t d : {2u, 3u}) {
    const std::vector<CMatrix> k{CMatrix::identity(d)};
    const CPMap m = cj_from_kraus(k, d, d);
    CMatrix expected(d * d, d * d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) expected(j * d + j, l * d + l) = 1.0;
    EXPECT_EQ(m.cj(), expected);
    EXPECT_LT(max_diff(partial_trace(m.cj(), Shape{d, d}, {0}), CMatrix::identity(d)), 1e-12);
  }
}

TEST(CjFromKraus, DepolarizingIsMaximallyMixed) {
  const std::vector<CMatrix> k{pauli::i2() * 0.5, pauli::x() * 0.5, pauli::y() * 0.5,
                               pauli::z() * 0.5};
  EXPECT_LT(max_diff(cj_from_kraus(k, 2, 2).cj(), CMatrix::identity(4) * 0.5), 1e-15);
}

TEST(CjFromKraus, UnitaryKrausIsComplete) {
  std::mt19937_64 rng(41);
  const std::vector<CMatrix> k{testing::random_unitary(3, rng)};
  const Instrument single({cj_from_kraus(k, 3, 3)});
  EXPECT_LT(check_instrument(single).completeness_residual, 1e-12);
}

TEST(CjFromKraus, DimensionMismatchThrows) {
  const std::vector<CMatrix> k{CMatrix(2, 3)};
  EXPECT_THROW(cj_from_kraus(k, 2, 2), ShapeError);
  EXPECT_THROW(cj_from_kraus({}, 2, 2), ContractViolation);
}

TEST(MeasureReprepare, Examples) {
  const Vector zero{1, 0};
  const CPMap m = measure_reprepare(zero, zero);
  const std::vector<double> diag{1, 0, 0, 0};
  EXPECT_EQ(m.cj(), CMatrix::diagonal(diag));

  const Vector plus_i{kS, complex(0, kS)};
  const CPMap mi = measure_reprepare(zero, plus_i);
  // Output block on the |0> input row is the conjugated projector.
  const CMatrix expected = CMatrix::projector(plus_i).conjugate();
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c)
      EXPECT_NEAR(std::abs(mi.cj()(r, c) - expected(r, c)), 0.0, 1e-15);
}

TEST(MeasureReprepare, EqualsKrausRouteExactly) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix u = testing::random_unitary(3, rng);
    const CMatrix v = testing::random_unitary(2, rng);
    const Vector phi1 = u.column(0), phi2 = v.column(1);
    const std::vector<CMatrix> k{ket_bra(phi2, phi1)};
    EXPECT_EQ(measure_reprepare(phi1, phi2).cj(), cj_from_kraus(k, 3, 2).cj());
  }
}

TEST(MeasureReprepare, CompletedWithOrthogonalStateIsAnInstrument) {
  const Vector plus{kS, kS}, minus{kS, -kS}, zero{1, 0};
  const Instrument ins({measure_reprepare(plus, zero), measure_reprepare(minus, zero)});
  EXPECT_TRUE(check_instrument(ins).passed);
}

TEST(MeasureReprepare, RejectsUnnormalizedStates) {
  const Vector bad{1, 1}, zero{1, 0};
  EXPECT_THROW(measure_reprepare(bad, zero), ContractViolation);
  EXPECT_THROW(measure_reprepare(zero, bad), ContractViolation);
}

TEST(ClassicalInstrument, IdentityRelay) {
  // single outcome, t = l
  const ClassicalTable p{{{1, 0}, {0, 1}}};
  const auto z = MeasurementBasis::computational(2);
  const Instrument ins = classical_instrument(p, z, z);
  ASSERT_EQ(ins.size(), 1u);
  const std::vector<double> diag{1, 0, 0, 1};
  EXPECT_EQ(ins[0].cj(), CMatrix::diagonal(diag));
  EXPECT_TRUE(check_instrument(ins).passed);
}

TEST(ClassicalInstrument, UniformNoiseIsProportionalToIdentity) {
  const ClassicalTable p(2, std::vector<std::vector<double>>(3, std::vector<double>(2, 1.0 / 6)));
  const Instrument ins =
      classical_instrument(p, MeasurementBasis::computational(2), MeasurementBasis::computational(3));
  for (const CPMap& m : ins.outcomes())
    EXPECT_LT(max_diff(m.cj(), CMatrix::identity(6) * (1.0 / 6)), 1e-15);
  EXPECT_TRUE(check_instrument(ins).passed);
}

TEST(ClassicalInstrument, RandomStochasticTablePasses) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ClassicalTable p(3, std::vector<std::vector<double>>(2, std::vector<double>(2)));
  for (std::size_t l = 0; l < 2; ++l) {
    double total = 0.0;
    for (auto& by_t : p)
      for (auto& by_l : by_t) total += (by_l[l] = u(rng));
    for (auto& by_t : p)
      for (auto& by_l : by_t) by_l[l] /= total;
  }
  const Instrument ins = classical_instrument(p, MeasurementBasis::qubit_x(),
                                              MeasurementBasis::computational(2));
  EXPECT_TRUE(check_instrument(ins).passed);
}

TEST(ClassicalInstrument, NonStochasticTableThrows) {
  const ClassicalTable p{{{0.5, 0.5}, {0.0, 0.0}}};
  const auto z = MeasurementBasis::computational(2);
  EXPECT_THROW(classical_instrument(p, z, z), ContractViolation);
  const ClassicalTable neg{{{1.5, 1}, {-0.5, 0}}};
  EXPECT_THROW(classical_instrument(neg, z, z), ContractViolation);
}

TEST(CqInstrument, RelayAndSingleOutcome) {
  const auto z = MeasurementBasis::computational(2);
  const ConditionalTable delta{{1, 0}, {0, 1}};
  const std::vector<CMatrix> states{z.projector(0), z.projector(1)};
  const Instrument relay = cq_instrument(z, delta, states);
  const std::vector<double> d0{1, 0, 0, 0}, d1{0, 0, 0, 1};
  EXPECT_EQ(relay[0].cj(), CMatrix::diagonal(d0));
  EXPECT_EQ(relay[1].cj(), CMatrix::diagonal(d1));
  EXPECT_TRUE(check_instrument(relay).passed);

  std::mt19937_64 rng(44);
  const CMatrix rho = testing::random_density(3, rng);
  const std::vector<CMatrix> one{rho};
  const Instrument single = cq_instrument(z, ConditionalTable{{1, 1}}, one);
  EXPECT_LT(max_diff(single[0].cj(), naive_kron(CMatrix::identity(2), rho)), 1e-15);
  EXPECT_TRUE(check_instrument(single).passed);
}

TEST(CqInstrument, RandomInstancesArePsdAndComplete) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 10; ++trial) {
    const MeasurementBasis b(testing::random_unitary(3, rng));
    const Instrument ins = random_cq_instrument(rng, b, 2, 3);
    const auto report = check_instrument(ins);
    EXPECT_TRUE(report.passed);
    for (double e : report.outcome_min_eigenvalues) EXPECT_GE(e, -1e-12);
  }
}

TEST(CqInstrument, InvalidInputsThrow) {
  const auto z = MeasurementBasis::computational(2);
  const std::vector<CMatrix> states{z.projector(0), z.projector(1)};
  EXPECT_THROW(cq_instrument(z, ConditionalTable{{0.7, 0.5}, {0.2, 0.5}}, states),
               ContractViolation);
  const std::vector<CMatrix> unnormalized{z.projector(0) * 2.0, z.projector(1)};
  EXPECT_THROW(cq_instrument(z, ConditionalTable{{1, 0}, {0, 1}}, unnormalized),
               ContractViolation);
  const std::vector<CMatrix> not_psd{pauli::z() * 0.5 + CMatrix::identity(2) * 0.5 +
                                         pauli::x(),
                                     z.projector(1)};
  EXPECT_THROW(cq_instrument(z, ConditionalTable{{1, 0}, {0, 1}}, not_psd), ContractViolation);
}

TEST(CqInstrument, TransposedStatesMatchTheKrausRoute) {
  // Measuring |n> and preparing rho is the Kraus set sqrt(p l_j)|psi_j><n|.
  std::mt19937_64 rng(46);
  const MeasurementBasis basis(testing::random_unitary(2, rng));
  const ConditionalTable p{{0.3, 0.8}, {0.7, 0.2}};
  std::vector<CMatrix> rho{testing::random_density(2, rng), testing::random_density(2, rng)};
  std::vector<CMatrix> rho_t{rho[0].transpose(), rho[1].transpose()};
  const Instrument cq = cq_instrument(basis, p, rho_t);

  for (std::size_t i = 0; i < 2; ++i) {
    const auto eig = hermitian_eig(rho[i]);
    std::vector<CMatrix> kraus;
    for (std::size_t n = 0; n < 2; ++n) {
      for (std::size_t j = 0; j < 2; ++j) {
        const double w = p[i][n] * std::max(eig.values[j], 0.0);
        kraus.push_back(ket_bra(eig.vectors.column(j), basis.vector(n)) * std::sqrt(w));
      }
    }
    EXPECT_LT(max_diff(cq[i].cj(), cj_from_kraus(kraus, 2, 2).cj()), 1e-12) << i;
  }
}

TEST(CheckInstrument, MissingOutcomeFails) {
  const Vector zero{1, 0};
  const Instrument half({measure_reprepare(zero, zero)});
  const auto r = check_instrument(half);
  EXPECT_FALSE(r.complete);
  EXPECT_FALSE(r.passed);
  EXPECT_TRUE(r.all_psd);
  EXPECT_NEAR(r.completeness_residual, 1.0, 1e-15);
}

TEST(CheckInstrument, RandomKrausInstrumentsPass) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const auto r = check_instrument(testing::random_kraus_instrument(3, 2, 2, rng), 1e-10);
    EXPECT_TRUE(r.passed);
    EXPECT_LT(r.completeness_residual, 1e-10);
  }
}

TEST(BornProbability, MaximallyMixedGivesQuarter) {
  std::mt19937_64 rng(48);
  const ProcessMatrix w = identity_process(kQubits);
  for (int trial = 0; trial < 5; ++trial) {
    const CMatrix u = testing::random_unitary(2, rng);
    const CPMap a = measure_reprepare(u.column(0), u.column(1));
    const CPMap b = measure_reprepare(u.column(1), u.column(0));
    EXPECT_NEAR(born_probability(w, a, b), 0.25, 1e-14);
  }
}

TEST(BornProbability, IdentityChannelDelivers) {
  // Alice measures in z (outcome n) and prepares |r>; Bob projects his input
  // onto |m>. Summed over n the probability is delta_{m r}.
  const ProcessMatrix w = channel_process(kQubits);
  const auto z = MeasurementBasis::computational(2);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t m = 0; m < 2; ++m) {
      const CPMap bob = measure_reprepare(z.vector(m), z.vector(0));
      double total = 0.0, oracle = 0.0;
      for (std::size_t n = 0; n < 2; ++n) {
        const CPMap alice = measure_reprepare(z.vector(n), z.vector(r));
        total += born_probability(w, alice, bob);
        oracle += testing::naive_trace_product(w.matrix(), naive_kron(alice.cj(), bob.cj())).real();
      }
      EXPECT_NEAR(total, r == m ? 1.0 : 0.0, 1e-14);
      EXPECT_NEAR(oracle, total, 1e-14);
    }
  }
}

TEST(BornProbability, MatchesDenseTraceOracle) {
  std::mt19937_64 rng(49);
  const SystemLayout l(3, 2, 2, 3);
  const ProcessMatrix w = random_process(4, l);
  const Instrument a = testing::random_kraus_instrument(3, 2, 2, rng);
  const Instrument b = testing::random_kraus_instrument(2, 3, 2, rng);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      EXPECT_NEAR(born_probability(w, a[i], b[j]),
                  testing::naive_trace_product(w.matrix(), naive_kron(a[i].cj(), b[j].cj())).real(),
                  1e-13);
}

TEST(BornProbability, LinearInW) {
  std::mt19937_64 rng(50);
  const ProcessMatrix w1 = random_process(1, kQubits), w2 = random_process(2, kQubits);
  const double alpha = 0.37;
  const ProcessMatrix mix(kQubits, w1.matrix() * alpha + w2.matrix() * (1.0 - alpha));
  const Instrument a = testing::random_kraus_instrument(2, 2, 2, rng);
  const Instrument b = testing::random_kraus_instrument(2, 2, 2, rng);
  EXPECT_NEAR(born_probability(mix, a[0], b[1]),
              alpha * born_probability(w1, a[0], b[1]) +
                  (1 - alpha) * born_probability(w2, a[0], b[1]),
              1e-10);
}

TEST(BornProbability, ImaginaryPartIsAnIntegrityError) {
  // A CJ matrix within the 1e-9 Hermiticity tolerance, against a large W.
  CMatrix cj = CMatrix::identity(4) * 0.5;
  cj(0, 2) = 9e-10;
  const CPMap alice(2, 2, cj);
  const CPMap bob(2, 2, CMatrix::identity(4) * 0.5);
  const ProcessMatrix w(kQubits, pauli_string("YIII") * 1000.0);
  EXPECT_THROW(born_probability(w, alice, bob), NumericIntegrityError);
}

TEST(BornProbability, DimensionMismatchThrows) {
  const Vector q{1, 0, 0};
  const Vector z{1, 0};
  EXPECT_THROW(born_probability(identity_process(kQubits), measure_reprepare(q, z),
                                measure_reprepare(z, z)),
               ShapeError);
}

TEST(ProbabilityTable, MaximallyMixedWithZMeasurements) {
  const auto z = MeasurementBasis::computational(2);
  const Instrument zm({measure_reprepare(z.vector(0), z.vector(0)),
                       measure_reprepare(z.vector(1), z.vector(0))});
  const ProbabilityTable t = probability_table(identity_process(kQubits), zm, zm);
  ASSERT_EQ(t.entries.size(), 4u);
  for (double e : t.entries) EXPECT_NEAR(e, 0.25, 1e-15);
  EXPECT_NEAR(t.at(1, 0), 0.25, 1e-15);
}

TEST(ProbabilityTable, CorrelatedOutputsBreakNormalization) {
  const ProcessMatrix bad(kQubits, (pauli_string("IIII") + pauli_string("IZIZ")) * 0.25);
  const Vector zero{1, 0};
  const CMatrix prep = kron(CMatrix::identity(2), CMatrix::projector(zero));
  const Instrument a({CPMap(2, 2, prep)}), b({CPMap(2, 2, prep)});
  EXPECT_TRUE(check_instrument(a).passed);
  EXPECT_NEAR(probability_table(bad, a, b).sum(), 2.0, 1e-14);
}

}  // namespace
}  // namespace procmat
