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

#include "evigrid/evidence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

#include "evigrid/errors.hpp"

namespace evigrid {

namespace {

bool in_unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

MassFunction::MassFunction(double f, double o, double u) {
  if (!in_unit_interval(f) || !in_unit_interval(o) || !in_unit_interval(u)) {
    throw std::invalid_argument("mass component outside [0, 1]: [" + std::to_string(f) + ", " +
                                std::to_string(o) + ", " + std::to_string(u) + "]");
  }
  const double sum = f + o + u;
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw std::invalid_argument("mass function does not sum to 1 (sum = " +
                                std::to_string(sum) + ")");
  }
  if (sum == 1.0) {
    f_ = f;
    o_ = o;
    u_ = u;
    return;
  }
  const double committed = f + o;
  if (committed <= 1.0) {
    f_ = f;
    o_ = o;
    u_ = 1.0 - committed;
  } else {
    f_ = f / committed;
    o_ = o / committed;
    u_ = 0.0;
  }
}

SubjectiveOpinion::SubjectiveOpinion(double e_f, double e_o) : e_f_(e_f), e_o_(e_o) {
  if (!(e_f >= 0.0) || !(e_o >= 0.0) || !std::isfinite(e_f) || !std::isfinite(e_o)) {
    throw std::invalid_argument("opinion evidence must be finite and non-negative");
  }
}

double conflict(const MassFunction& a, const MassFunction& b) {
  return a.f() * b.o() + a.o() * b.f();
}

std::optional<MassFunction> try_dempster_combine(const MassFunction& a, const MassFunction& b) {
  const double k = conflict(a, b);
  if (k >= 1.0 - kTotalConflictMargin) return std::nullopt;
  const double norm = 1.0 / (1.0 - k);
  const double f = (a.f() * b.f() + a.f() * b.u() + a.u() * b.f()) * norm;
  const double o = (a.o() * b.o() + a.o() * b.u() + a.u() * b.o()) * norm;
  const double u = a.u() * b.u() * norm;
  return MassFunction::unchecked(f, o, u);
}

MassFunction dempster_combine(const MassFunction& a, const MassFunction& b) {
  auto result = try_dempster_combine(a, b);
  if (!result) throw TotalConflict();
  return *result;
}

MassFunction yager_combine(const MassFunction& a, const MassFunction& b) {
  const double k = conflict(a, b);
  const double f = a.f() * b.f() + a.f() * b.u() + a.u() * b.f();
  const double o = a.o() * b.o() + a.o() * b.u() + a.u() * b.o();
  const double u = a.u() * b.u() + k;
  return MassFunction::unchecked(f, o, u);
}

MassFunction discount(double gamma, const MassFunction& m) {
  if (!in_unit_interval(gamma)) {
    throw std::invalid_argument("discount factor outside [0, 1]: " + std::to_string(gamma));
  }
  return MassFunction::unchecked(gamma * m.f(), gamma * m.o(), 1.0 - gamma + gamma * m.u());
}

MassFunction limit_unknown(const MassFunction& m, double floor) {
  if (!(floor >= 0.0 && floor < 1.0)) {
    throw std::invalid_argument("unknown floor outside [0, 1): " + std::to_string(floor));
  }
  const double delta = std::max(0.0, floor - m.u());
  if (delta == 0.0) return m;
  const double committed = m.committed();
  assert(committed > 0.0);
  const double scale = 1.0 - delta / committed;
  return MassFunction::unchecked(scale * m.f(), scale * m.o(), m.u() + delta);
}

MassFunction opinion_to_mass(const SubjectiveOpinion& opinion) {
  const double s = opinion.strength();
  return MassFunction::unchecked(opinion.e_f() / s, opinion.e_o() / s, 2.0 / s);
}

double pignistic_occupancy(const MassFunction& m) { return (1.0 - m.f() + m.o()) / 2.0; }

LossTerms evidential_loss(const SubjectiveOpinion& predicted, const MassFunction& target) {
  const double s = predicted.strength();
  const auto term = [s](double target_mass, double expected) {
    const double residual = target_mass - expected;
    return residual * residual * expected * (1.0 - expected) / (s + 1.0);
  };
  const double unknown = 1.0 - 2.0 / s;
  return {term(target.f(), predicted.expected_free()),
          term(target.o(), predicted.expected_occupied()), unknown * unknown};
}

}  // namespace evigrid
