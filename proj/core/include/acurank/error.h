// Copyright 2026 The AcuRank Authors.
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

#ifndef ACURANK_ERROR_H_
#define ACURANK_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace acurank {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game outcome that cannot be rated (too few players, duplicates, ties).
class InvalidOutcomeError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values, flags or config files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A caller broke an interface contract (e.g. a non-permutation ordering).
class ContractError : public Error {
 public:
  using Error::Error;
};

class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent input data.
class DataError : public Error {
 public:
  using Error::Error;
};

// A parse failure tied to a specific 1-based line of an input file.
class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : DataError("line " + std::to_string(line) + ": " + reason),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Failure talking to a remote reranker. `status` is the HTTP status, or 0
// when no response was received (timeout, connection refused).
class TransportError : public Error {
 public:
  TransportError(const std::string& what, int status)
      : Error(what), status_(status) {}
  int status() const { return status_; }
  bool retryable() const { return true; }

 private:
  int status_;
};

// The reranker answered but its text carries no usable ranking.
class RerankerOutputError : public Error {
 public:
  RerankerOutputError(const std::string& what, std::string raw_response)
      : Error(what), raw_response_(std::move(raw_response)) {}
  const std::string& raw_response() const { return raw_response_; }

 private:
  std::string raw_response_;
};

}  // namespace acurank

#endif  // ACURANK_ERROR_H_
