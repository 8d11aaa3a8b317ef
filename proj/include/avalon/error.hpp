// Copyright 2026 The Avalon Agents Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace avalon {

/// Base of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A move or ballot that violates the game rules (malformed ballot, card
/// from a non-team seat, self-guess by the Assassin, ...).
class RuleError : public Error {
 public:
  using Error::Error;
};

/// An event offered to the engine in the wrong phase.
class TransitionError : public Error {
 public:
  using Error::Error;
};

class VisibilityViolation : public Error {
 public:
  using Error::Error;
};

class SummarizerError : public Error {
 public:
  using Error::Error;
};

class TemplateError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A metric whose denominator is empty.
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  BackendError(const std::string& what, bool retryable)
      : Error(what), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

class TransportError : public BackendError {
 public:
  TransportError(const std::string& what, int attempts)
      : BackendError(what + " (after " + std::to_string(attempts) + " attempt(s))",
                     /*retryable=*/true),
        attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// Replay diverged from the recorded exchange log at call index `turn`.
class ReplayMismatch : public BackendError {
 public:
  ReplayMismatch(const std::string& what, std::size_t turn)
      : BackendError(what, /*retryable=*/false), turn_(turn) {}
  std::size_t turn() const { return turn_; }

 private:
  std::size_t turn_;
};

class ScriptExhausted : public BackendError {
 public:
  explicit ScriptExhausted(const std::string& what)
      : BackendError(what, /*retryable=*/false) {}
};

}  // namespace avalon
