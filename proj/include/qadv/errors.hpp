// Copyright 2026 The qadv Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace qadv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes disagree, or a qubit count exceeds the configured cap.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// A matrix fails the Hermitian / unit-trace / PSD contract of a state.
class InvalidStateError : public Error {
public:
  using Error::Error;
};

/// Bad qubit index, malformed bipartition, wrong gate arity and similar.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A gate slot names a parameter the binding does not provide.
class UnboundParameter : public Error {
public:
  using Error::Error;
};

/// The two-term shift rule does not hold for the requested parameter.
class ShiftRuleError : public Error {
public:
  using Error::Error;
};

/// A generator contains an operation that crosses its bipartition.
class SeparabilityViolation : public Error {
public:
  using Error::Error;
};

/// Kraus operators that do not sum to the identity.
class ChannelError : public Error {
public:
  using Error::Error;
};

/// Optimization produced NaN/Inf (usually a learning rate that is too big).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Experiment configuration or input-file problems.
class ConfigError : public Error {
public:
  using Error::Error;
};

} // namespace qadv
