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

#ifndef BANDGAP_ERRORS_HPP
#define BANDGAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bandgap {

/// A numerical routine failed to converge or to isolate a root.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(std::string const& what) : std::runtime_error(what) {}
};

} // namespace bandgap

#endif
