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

// Randomized invariant checks over the locally thermal ensemble.

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qheat/fluctuations.hpp"

namespace qheat::scan {

using MhFunction = std::function<TransitionTable(const BipartiteSystem&, const ComplexMatrix&)>;

/// Replaceable pieces, so a deliberately broken implementation can be fed in.
struct PropertyHooks {
  MhFunction mh = mh_distribution;
};

struct PropertyResult {
  std::string name;
  int checked = 0;
  int failed = 0;
  double worst = 0;  // largest observed deviation or violation margin
  std::string first_failure;

  bool passed() const { return failed == 0 && checked > 0; }
};

struct PropertySummary {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<PropertyResult> results;

  bool passed() const;
};

inline constexpr std::uint64_t kDefaultPropertySeed = 20260101;

/// Each property runs `trials` instances split over d = 2 and d = 3.
/// Throws std::invalid_argument for trials < 1.
PropertySummary run_property_suite(std::uint64_t seed, int trials, const PropertyHooks& hooks = {});

void print_property_summary(std::ostream& os, const PropertySummary& summary);

}  // namespace qheat::scan
