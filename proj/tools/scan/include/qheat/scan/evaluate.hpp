// Copyright 2026 The qheat Authors
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

// Everything computed for one (state, unitary) point, with each witness
// evaluated only where its assumptions hold.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qheat/fluctuations.hpp"
#include "qheat/witnesses.hpp"

namespace qheat::scan {

inline constexpr std::array<std::string_view, 7> kWitnessColumns{
    "T1", "T2", "T3", "I4", "T4-lower", "T4-upper", "strong-backflow"};

enum class SlotState { NotApplicable, Evaluated, PreconditionFailed, Error };

struct WitnessSlot {
  SlotState state = SlotState::NotApplicable;
  std::optional<WitnessVerdict> verdict;
  std::string error;

  bool violated() const { return verdict && state == SlotState::Evaluated && verdict->violated; }
  /// "1", "0", "na", "pre" or "err".
  std::string flag() const;
};

struct PointEvaluation {
  TransitionTable mh;
  TransitionTable tpm;
  HeatReport heat;
  double min_pw = 0;
  bool negativity = false;
  double min_pt_eig = 0;
  double commutator = 0;
  std::optional<double> epsilon;
  bool energy_preserving = false;
  std::optional<XftReport> xft;
  std::optional<JReport> j;
  std::optional<double> energy_mismatch;  // largest |dE_C + dE_H| on weighted entries
  std::array<WitnessSlot, kWitnessColumns.size()> witnesses;

  const WitnessSlot& slot(std::string_view id) const;
  bool any_violation() const;
};

inline constexpr double kNegativityThreshold = 1e-12;

/// `epsilon` is the distance of `u` to an energy-preserving reference when
/// known; energy-preserving unitaries get 0.
PointEvaluation evaluate_point(const BipartiteSystem& sys, const ComplexMatrix& u,
                               std::optional<double> epsilon = std::nullopt);

}  // namespace qheat::scan
