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

// Full single-point analysis as a JSON document.

#include "json.hpp"

#include "qheat/scan/config.hpp"

namespace qheat::scan {

/// Builds the configured point and reports state diagnostics, both tables,
/// heat, XFT, J, every witness verdict and a probe reconstruction of one MH
/// row (probe.target_C, probe.target_H, probe.epsilon, probe.shots,
/// probe.seed). Library errors propagate.
nlohmann::json analyze_point(const Config& cfg);

}  // namespace qheat::scan
