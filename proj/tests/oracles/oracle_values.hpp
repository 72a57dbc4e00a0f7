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

#ifndef EVIGRID_TESTS_ORACLES_ORACLE_VALUES_HPP_
#define EVIGRID_TESTS_ORACLES_ORACLE_VALUES_HPP_

// Reference values produced by derive_values.py (exact rationals, 60-digit
// tanh). Frozen here; do not regenerate from the library under test.

namespace evigrid::oracle {

// a = [0.5, 0.2, 0.3], b = [0.3, 0.1, 0.6]
inline constexpr double kConflictAB = 0.11;
inline constexpr double kDempsterAB[3] = {0.60674157303370786517, 0.19101123595505617978,
                                          0.20224719101123595506};
inline constexpr double kYagerAB[3] = {0.54, 0.17, 0.29};

// [0.6, 0.3, 0.1] limited to 0.3
inline constexpr double kLimited[3] = {0.46666666666666666667, 0.23333333333333333333, 0.3};

// map [0.3, 0.2, 0.5], prediction [0.5, 0.3, 0.2], floor 0.1
inline constexpr double kGammaEx2 = 0.99505475368673045133;
inline constexpr double kConflictEx2 = 0.19;
inline constexpr double kFusedEx2[3] = {0.45920876058987687221, 0.24975273768433652257,
                                        0.29103850172578660522};

// raw [0.7, 0.2, 0.1] limited to 0.3, map [0.05, 0.05, 0.9], floor 0.3
inline constexpr double kLimitedEx3[3] = {0.54444444444444444444, 0.15555555555555555556, 0.3};
inline constexpr double kBoundEx3 = 1.0084033613445378151;
inline constexpr double kGammaEx3 = 0.99998771165079557056;
inline constexpr double kFusedEx3[3] = {0.53221629650716141958, 0.1627763919250619449,
                                        0.30500731156777663551};

// map [0, 0, 1] repeatedly integrated with [0.6, 0.2, 0.2], floor 0.3
inline constexpr double kFixpointFirst[3] = {0.52499912689557095266, 0.17499970896519031755,
                                             0.30000116413923872978};
inline constexpr double kFixpoint[3] = {0.52500203715140745318, 0.17499796284859254682, 0.3};

// Loss: e = [0, 0] vs [0, 0, 1]; e = [98, 0] vs [1, 0, 0].
inline constexpr double kLossVacuousClass = 1.0 / 48.0;
inline constexpr double kLossConfidentClass = 99.0 / 10100000000.0;
inline constexpr double kLossConfidentUnknown = 0.9604;

}  // namespace evigrid::oracle

#endif  // EVIGRID_TESTS_ORACLES_ORACLE_VALUES_HPP_
