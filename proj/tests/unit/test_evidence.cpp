/*
 * Copyright 2026 The Evigrid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <random>

#include "doctest.h"
#include "evigrid/errors.hpp"
#include "evigrid/evidence.hpp"
#include "oracles/oracle_values.hpp"
#include "test_support.hpp"

namespace evigrid {
namespace {

using testing::near;
using testing::random_mass;
using testing::valid;

constexpr int kTrials = 100000;

const MassFunction kA(0.5, 0.2, 0.3);
const MassFunction kB(0.3, 0.1, 0.6);

TEST_CASE("construction validates and normalizes") {
  CHECK(MassFunction() == MassFunction(0.0, 0.0, 1.0));
  CHECK_THROWS_AS(MassFunction(-0.1, 0.5, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(MassFunction(0.5, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(MassFunction(std::nan(""), 0.0, 1.0), std::invalid_argument);

  const MassFunction drift(0.2, 0.3, 0.5 + 5e-7);
  CHECK(drift.f() == 0.2);
  CHECK(drift.o() == 0.3);
  CHECK(std::abs(drift.f() + drift.o() + drift.u() - 1.0) <= 1e-15);

  CHECK_THROWS_AS(SubjectiveOpinion(-1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SubjectiveOpinion(1.0, INFINITY), std::invalid_argument);
}

TEST_CASE("conflict") {
  CHECK(conflict(MassFunction::vacuous(), kA) == 0.0);
  CHECK(conflict(MassFunction(1, 0, 0), MassFunction(0, 1, 0)) == 1.0);
  CHECK(conflict(kA, kB) == doctest::Approx(oracle::kConflictAB).epsilon(1e-15));
}

TEST_CASE("dempster examples") {
  CHECK(dempster_combine(kA, MassFunction::vacuous()) == kA);
  CHECK_THROWS_AS(dempster_combine(MassFunction(1, 0, 0), MassFunction(0, 1, 0)), TotalConflict);
  CHECK_FALSE(try_dempster_combine(MassFunction(1, 0, 0), MassFunction(0, 1, 0)).has_value());
  const auto& d = oracle::kDempsterAB;
  CHECK(near(dempster_combine(kA, kB), d[0], d[1], d[2], 1e-12));
}

TEST_CASE("yager examples") {
  CHECK(yager_combine(kA, MassFunction::vacuous()) == kA);
  CHECK(yager_combine(MassFunction(1, 0, 0), MassFunction(0, 1, 0)) == MassFunction::vacuous());
  const auto& y = oracle::kYagerAB;
  CHECK(near(yager_combine(kA, kB), y[0], y[1], y[2], 1e-12));
}

TEST_CASE("discount examples") {
  CHECK(discount(1.0, kA) == kA);
  CHECK(discount(0.0, kA) == MassFunction::vacuous());
  CHECK(near(discount(0.5, MassFunction(0.4, 0.4, 0.2)), 0.2, 0.2, 0.6, 1e-15));
  CHECK_THROWS_AS(discount(1.5, kA), std::invalid_argument);
  CHECK_THROWS_AS(discount(-0.1, kA), std::invalid_argument);
}

TEST_CASE("limit_unknown examples") {
  const MassFunction above(0.2, 0.3, 0.5);
  CHECK(limit_unknown(above, 0.3) == above);
  const auto& l = oracle::kLimited;
  CHECK(near(limit_unknown(MassFunction(0.6, 0.3, 0.1), 0.3), l[0], l[1], l[2], 1e-12));
  CHECK(limit_unknown(MassFunction::vacuous(), 0.3) == MassFunction::vacuous());
  CHECK_THROWS_AS(limit_unknown(kA, 1.0), std::invalid_argument);
}

TEST_CASE("opinion_to_mass examples") {
  CHECK(opinion_to_mass(SubjectiveOpinion(0, 0)) == MassFunction::vacuous());
  CHECK(near(opinion_to_mass(SubjectiveOpinion(2, 0)), 0.5, 0.0, 0.5, 1e-15));
  CHECK(near(opinion_to_mass(SubjectiveOpinion(6, 2)), 0.6, 0.2, 0.2, 1e-15));
}

TEST_CASE("pignistic examples") {
  CHECK(pignistic_occupancy(MassFunction::vacuous()) == 0.5);
  CHECK(pignistic_occupancy(MassFunction(0, 1, 0)) == 1.0);
  CHECK(pignistic_occupancy(kA) == doctest::Approx(0.35).epsilon(1e-14));
}

TEST_CASE("evidential loss examples") {
  const LossTerms vac = evidential_loss(SubjectiveOpinion(0, 0), MassFunction::vacuous());
  CHECK(vac.free == doctest::Approx(oracle::kLossVacuousClass).epsilon(1e-14));
  CHECK(vac.occupied == doctest::Approx(oracle::kLossVacuousClass).epsilon(1e-14));
  CHECK(vac.unknown == 0.0);

  const LossTerms sure = evidential_loss(SubjectiveOpinion(98, 0), MassFunction(1, 0, 0));
  CHECK(sure.free == doctest::Approx(oracle::kLossConfidentClass).epsilon(1e-12));
  CHECK(sure.occupied == doctest::Approx(oracle::kLossConfidentClass).epsilon(1e-12));
  CHECK(sure.unknown == doctest::Approx(oracle::kLossConfidentUnknown).epsilon(1e-14));

  // Target equal to the Dirichlet mean leaves no class residual.
  const SubjectiveOpinion op(3, 5);
  const MassFunction mean(op.expected_free(), op.expected_occupied(), 0.0);
  const LossTerms zero = evidential_loss(op, mean);
  CHECK(zero.free == 0.0);
  CHECK(zero.occupied == 0.0);
}

TEST_CASE("normalization closure of every operator") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction a = random_mass(rng), b = random_mass(rng);
    const double g = unit(rng), floor = 0.99 * unit(rng);
    if (auto d = try_dempster_combine(a, b); d && !valid(*d)) ++failures;
    if (!valid(yager_combine(a, b))) ++failures;
    if (!valid(discount(g, a))) ++failures;
    if (!valid(limit_unknown(a, floor))) ++failures;
    if (!valid(opinion_to_mass(SubjectiveOpinion(10 * unit(rng), 10 * unit(rng))))) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("dempster keeps unknown mass beneath both inputs") {
  std::mt19937_64 rng(12);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction a = random_mass(rng), b = random_mass(rng);
    if (auto d = try_dempster_combine(a, b); d && d->u() > std::min(a.u(), b.u()) + 1e-12) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("dempster is commutative and associative") {
  std::mt19937_64 rng(13);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction a = random_mass(rng), b = random_mass(rng), c = random_mass(rng);
    const auto ab = try_dempster_combine(a, b), ba = try_dempster_combine(b, a);
    if (!ab || !ba) continue;
    if (!near(*ab, *ba, 1e-12)) ++failures;
    const auto bc = try_dempster_combine(b, c);
    if (!bc) continue;
    const auto left = try_dempster_combine(*ab, c), right = try_dempster_combine(a, *bc);
    if (!left || !right) continue;
    if (!near(*left, *right, 1e-9)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("yager equals dempster rescaled by 1 - K") {
  std::mt19937_64 rng(14);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction a = random_mass(rng), b = random_mass(rng);
    const double k = conflict(a, b);
    const auto d = try_dempster_combine(a, b);
    if (!d) continue;
    const MassFunction y = yager_combine(a, b);
    if (!near(y, (1 - k) * d->f(), (1 - k) * d->o(), d->u() * (1 - k) + k, 1e-9)) ++failures;
    if (!near(y, yager_combine(b, a), 1e-15)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("yager is not associative") {
  const MassFunction a(0.9, 0.0, 0.1), b(0.0, 0.9, 0.1), c(0.0, 0.9, 0.1);
  const MassFunction left = yager_combine(yager_combine(a, b), c);
  const MassFunction right = yager_combine(a, yager_combine(b, c));
  CHECK_FALSE(near(left, right, 1e-3));
}

TEST_CASE("discounts compose multiplicatively") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction m = random_mass(rng);
    const double g1 = unit(rng), g2 = unit(rng);
    if (!near(discount(g1, discount(g2, m)), discount(g1 * g2, m), 1e-9)) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("limit_unknown is idempotent and keeps the ratio") {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction m = random_mass(rng);
    const double floor = 0.99 * unit(rng);
    const MassFunction once = limit_unknown(m, floor);
    if (!near(limit_unknown(once, floor), once, 1e-12)) ++failures;
    if (once.u() < std::max(m.u(), floor) - 1e-12) ++failures;
    if (m.f() > 0 && m.o() > 0 && std::abs(once.f() / once.o() - m.f() / m.o()) > 1e-9 * (m.f() / m.o())) {
      ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("pignistic occupancy is unchanged by vacuous combination") {
  std::mt19937_64 rng(17);
  int failures = 0;
  for (int i = 0; i < kTrials; ++i) {
    const MassFunction m = random_mass(rng);
    const double p = pignistic_occupancy(m);
    if (std::abs(pignistic_occupancy(dempster_combine(m, MassFunction::vacuous())) - p) > 1e-12) ++failures;
    if (std::abs(p - (m.u() / 2 + m.o())) > 1e-12) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("loss terms are non-negative") {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> unit(0.0, 50.0);
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const LossTerms l = evidential_loss(SubjectiveOpinion(unit(rng), unit(rng)), random_mass(rng));
    if (l.free < 0 || l.occupied < 0 || l.unknown < 0) ++failures;
  }
  CHECK(failures == 0);
}

}  // namespace
}  // namespace evigrid
