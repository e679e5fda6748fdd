// Copyright 2026 The lmg-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lmg::checks {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Set when every failing item is a documented defect of the published
  /// fixture and the corrected fixture passes.
  std::string known_issue;
  double seconds = 0.0;
};

/// True when the check passed or failed only on a documented fixture defect.
bool acceptable(const CheckResult& r);

/// Acceptance fixtures 1..9, in order.
std::vector<CheckResult> acceptance_checks();

/// Structural invariants: norm preservation, one-hot confinement,
/// sparse/dense agreement, Hermiticity, serialization round trips.
std::vector<CheckResult> invariant_checks();

}  // namespace lmg::checks
