// SPDX-License-Identifier: Apache-2.0
//
// fsolink: performance analysis of a three-hop OGS-HAP-OIRS-user optical link
// Copyright (C) 2026 fsolink contributors
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

#ifndef FSOLINK_ERRORS_HPP
#define FSOLINK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fsolink
{
    // Base of every error thrown by the library. The CLI maps subclasses to exit codes.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    class PoleError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    // Numeric failures (contours that cannot be placed, quadrature that does not settle, ...)
    class NumericalError : public Error
    {
    public:
        using Error::Error;
    };

    class ContourSeparationError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class ConvergenceError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class SeriesDivergenceError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class DegenerateExponentError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class NoSolutionError : public NumericalError
    {
    public:
        using NumericalError::NumericalError;
    };

    class GeometryError : public DomainError
    {
    public:
        using DomainError::DomainError;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class EmptySampleError : public Error
    {
    public:
        using Error::Error;
    };

    class UnknownFigureError : public Error
    {
    public:
        using Error::Error;
    };
} // namespace fsolink

#endif
