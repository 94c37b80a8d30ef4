// Copyright 2026 The spinbath Authors
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

#ifndef SPINBATH_VALIDATION_HPP
#define SPINBATH_VALIDATION_HPP

#include <string>
#include <vector>

namespace spinbath {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured error or figure of merit
  double threshold = 0.0;  // pass bound for `value`
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
  /// One line per check: PASS/FAIL, name, value, threshold, detail.
  std::string to_text() const;
};

/// Runs the invariant suite across all modules. Takes a few seconds.
ValidationReport validate();

}  // namespace spinbath

#endif  // SPINBATH_VALIDATION_HPP
