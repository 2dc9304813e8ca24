/*
 Copyright 2026 The Bandgap Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/


#ifndef BANDGAP_VERIFICATION_HPP
#define BANDGAP_VERIFICATION_HPP

#include <string>
#include <vector>

namespace bandgap {

struct CheckLine {
    std::string what;
    double value;
    double tolerance;
    bool pass;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<CheckLine> checks;
    /// Diagnostic lines that do not count towards pass/fail.
    std::vector<std::string> notes;
    double seconds = 0.0;
    std::string error;

    bool pass() const;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion (1..10). Solver exceptions are caught and
/// recorded as a failing result.
CriterionResult run_criterion(int id);

/// "PASS c01 ..." style table, one block per criterion.
std::string format_result(CriterionResult const& r);

} // namespace bandgap

#endif
