// Copyright 2026 The dpbandit Authors
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

#ifndef DPBANDIT_ERRORS_H_
#define DPBANDIT_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dpbandit {

// A parameter is outside the range the operation is defined on.
class InvalidParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An input violates a modelling assumption (e.g. a reward outside [0, 1]
// breaks the unit-sensitivity assumption of the mechanisms).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Query on a mechanism or statistic that has not seen any data.
class EmptyStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid experiment or CLI configuration. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace dpbandit

#endif  // DPBANDIT_ERRORS_H_
