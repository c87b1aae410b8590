/*
 * Copyright 2026 The snnergy Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace snnergy {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (bad JSON, wrong field types, unknown keys).
class ParseError : public Error {
public:
  using Error::Error;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A requested metric needs hardware-spec fields that were not supplied.
class CapabilityError : public Error {
public:
  using Error::Error;
};

// Trend-store I/O failure or contract violation (duplicate version, ...).
class StoreError : public Error {
public:
  using Error::Error;
};

}  // namespace snnergy
