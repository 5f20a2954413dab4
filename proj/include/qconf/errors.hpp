// Copyright 2026 The qconf Authors
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

#ifndef QCONF_ERRORS_HPP
#define QCONF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qconf {

/// A caller violated a documented precondition (dimension mismatch, bad index,
/// non-unitary matrix, reveal before verdict, ...).
class ContractError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// A request exceeds a fixed resource guard (e.g. more than 16 qubits in a joint state).
class ResourceLimitError : public std::length_error {
   public:
    using std::length_error::length_error;
};

/// Data received during a protocol run cannot have been produced by honest parties.
class ProtocolCorruption : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A run configuration failed validation. `field()` names the offending entry.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {
    }

    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

}  // namespace qconf

#endif  // QCONF_ERRORS_HPP
