// Copyright 2026 The QRAC-Box Simulator Authors
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

#include "qrac/harness/config.hpp"
#include "qrac/harness/metering.hpp"
#include "qrac/harness/report.hpp"
#include "qrac/qracbox.hpp"

namespace qrac::harness {

/// A QRAC round driven through the two party state machines and the metered
/// channel. Bob never emits; everything he learns from Alice arrives as
/// metered messages. Uses the same random streams as qrac_round.
QracRoundResult harnessed_qrac_round(const StateVector& psi, const StateVector& phi,
                                     const StateVector& omega, RoundSeed seed,
                                     Transport transport);

/// Runs the configured experiment and assembles its report. Throws
/// ConfigError for invalid configs and BudgetViolation if any round's traffic
/// differs from its budget.
Report run_experiment(const ExperimentConfig& config);

}  // namespace qrac::harness
