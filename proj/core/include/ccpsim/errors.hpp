// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The ccpsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CCPSIM_ERRORS_HPP
#define CCPSIM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccpsim {

// Invalid configuration values (exit code 2 at the CLI).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Sample window or index outside the available data.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class DegenerateGeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Base for failures that arise while measuring a realization (exit code 3).
class MeasurementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoSignalError : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

// The TOA window and the phase fraction admit no consistent integer.
class AmbiguityUnresolvableError : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

class InfeasibleMeasurementError : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

class EmptyResultError : public MeasurementError {
public:
    using MeasurementError::MeasurementError;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace ccpsim

#endif
