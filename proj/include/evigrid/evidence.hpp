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

#ifndef EVIGRID_EVIDENCE_HPP_
#define EVIGRID_EVIDENCE_HPP_

#include <optional>

namespace evigrid {

// Evidence on the binary frame {free, occupied}. The empty set carries no
// mass and is not stored; the ignorance state is kept as `u`.
class MassFunction {
 public:
  // Inputs whose sum is within kSumTolerance of 1 are normalized, larger
  // deviations and components outside [0, 1] throw std::invalid_argument.
  // Normalization keeps the committed masses and recomputes `u`.
  MassFunction(double f, double o, double u);

  // Vacuous [0, 0, 1].
  constexpr MassFunction() = default;

  static constexpr MassFunction vacuous() { return {}; }

  // Bypasses validation; for operators whose algebra guarantees validity.
  static constexpr MassFunction unchecked(double f, double o, double u) {
    MassFunction m;
    m.f_ = f;
    m.o_ = o;
    m.u_ = u;
    return m;
  }

  constexpr double f() const { return f_; }
  constexpr double o() const { return o_; }
  constexpr double u() const { return u_; }
  constexpr double committed() const { return f_ + o_; }

  constexpr bool is_vacuous() const { return f_ == 0.0 && o_ == 0.0 && u_ == 1.0; }

  friend constexpr bool operator==(const MassFunction&, const MassFunction&) = default;

  static constexpr double kSumTolerance = 1e-6;

 private:
  double f_ = 0.0;
  double o_ = 0.0;
  double u_ = 1.0;
};

// Evidence counts (e_f, e_o) of a binomial subjective opinion.
class SubjectiveOpinion {
 public:
  // Throws std::invalid_argument on negative or non-finite counts.
  SubjectiveOpinion(double e_f, double e_o);

  double e_f() const { return e_f_; }
  double e_o() const { return e_o_; }
  double strength() const { return 2.0 + e_f_ + e_o_; }

  // Dirichlet mean with parameters e + 1.
  double expected_free() const { return (e_f_ + 1.0) / strength(); }
  double expected_occupied() const { return (e_o_ + 1.0) / strength(); }

 private:
  double e_f_;
  double e_o_;
};

// K >= 1 - kTotalConflictMargin is treated as total conflict.
inline constexpr double kTotalConflictMargin = 1e-12;

double conflict(const MassFunction& a, const MassFunction& b);

// Throws TotalConflict when the sources are irreconcilable.
MassFunction dempster_combine(const MassFunction& a, const MassFunction& b);

// Non-throwing variant; empty on total conflict.
std::optional<MassFunction> try_dempster_combine(const MassFunction& a, const MassFunction& b);

// Conflict is moved to the unknown state, so this is always defined.
MassFunction yager_combine(const MassFunction& a, const MassFunction& b);

// gamma in [0, 1]; gamma = 1 is the identity and gamma = 0 is vacuous.
MassFunction discount(double gamma, const MassFunction& m);

// Raises m_u to at least `floor` by scaling the committed masses down,
// preserving their ratio. floor in [0, 1).
MassFunction limit_unknown(const MassFunction& m, double floor);

MassFunction opinion_to_mass(const SubjectiveOpinion& opinion);

double pignistic_occupancy(const MassFunction& m);

struct LossTerms {
  double free = 0.0;
  double occupied = 0.0;
  double unknown = 0.0;
};

// Per-class terms of the evidential regression loss for a predicted opinion
// against a target mass function.
LossTerms evidential_loss(const SubjectiveOpinion& predicted, const MassFunction& target);

}  // namespace evigrid

#endif  // EVIGRID_EVIDENCE_HPP_
