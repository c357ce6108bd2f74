// Copyright 2026 The Conf Arena Authors.
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

#ifndef CONF_ARENA_ERROR_H_
#define CONF_ARENA_ERROR_H_

#include <stdexcept>
#include <string>

namespace conf_arena {

// Bad flags, missing API key, inconsistent run configuration. CLI exit 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Network failure after the retry budget. CLI exit 2.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-success HTTP status from the chat endpoint.
class StatusError : public TransportError {
 public:
  StatusError(int status, const std::string& body_excerpt)
      : TransportError("HTTP status " + std::to_string(status) + ": " +
                       body_excerpt),
        status_(status) {}

  int status() const { return status_; }

 private:
  int status_;
};

// Malformed or inconsistent input data. CLI exit 3.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conf_arena

#endif  // CONF_ARENA_ERROR_H_
