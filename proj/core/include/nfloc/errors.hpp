// SPDX-License-Identifier: Apache-2.0
//
// nfloc: wavenumber-domain near-field target localization
// Copyright (C) 2026 The nfloc Authors
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

#ifndef NFLOC_ERRORS_HPP
#define NFLOC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfloc
{
    // Every error raised by the library derives from Error so callers can catch
    // one type at the CLI boundary.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid SystemConfig / experiment configuration.
    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    // Argument outside the mathematical domain of a function (d <= 0, zero probe, D = 0).
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Target outside the radiating near field in strict mode.
    class RegionError : public Error
    {
    public:
        using Error::Error;
    };

    class ShapeError : public Error
    {
    public:
        using Error::Error;
    };

    // Bad scalar parameter or violated precondition.
    class ParameterError : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed, truncated or corrupted file.
    class FormatError : public Error
    {
    public:
        using Error::Error;
    };

} // namespace nfloc

#endif
