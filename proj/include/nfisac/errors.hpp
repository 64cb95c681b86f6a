// SPDX-License-Identifier: Apache-2.0
//
// nfisac: near-field sensing and communication simulation library
// Copyright (C) 2026 The nfisac authors
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

#ifndef NFISAC_ERRORS_HPP
#define NFISAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nfisac
{
    // Error categories. The CLI maps each one to a distinct exit code.
    enum class ErrorCategory
    {
        invalid_argument = 2,
        not_found = 3,
        parse = 4,
        validation = 5,
        numerical = 6,
        io = 7
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCategory category, const std::string &what)
            : std::runtime_error(what), category_(category) {}

        ErrorCategory category() const noexcept { return category_; }

    private:
        ErrorCategory category_;
    };

    // Precondition violated by a caller-supplied value.
    class InvalidArgument : public Error
    {
    public:
        explicit InvalidArgument(const std::string &what)
            : Error(ErrorCategory::invalid_argument, what) {}
    };

    // Stacked channel matrix is (numerically) rank deficient.
    class SingularChannelError : public Error
    {
    public:
        SingularChannelError(const std::string &what, double worst_correlation)
            : Error(ErrorCategory::numerical, what), worst_correlation_(worst_correlation) {}

        double worst_correlation() const noexcept { return worst_correlation_; }

    private:
        double worst_correlation_;
    };

    class NotFoundError : public Error
    {
    public:
        explicit NotFoundError(const std::string &what)
            : Error(ErrorCategory::not_found, what) {}
    };

    class ParseError : public Error
    {
    public:
        explicit ParseError(const std::string &what)
            : Error(ErrorCategory::parse, what) {}
    };

    class ValidationError : public Error
    {
    public:
        ValidationError(const std::string &key, const std::string &what)
            : Error(ErrorCategory::validation, key + ": " + what), key_(key) {}

        const std::string &key() const noexcept { return key_; }

    private:
        std::string key_;
    };

    class IoError : public Error
    {
    public:
        explicit IoError(const std::string &what)
            : Error(ErrorCategory::io, what) {}
    };

    inline const char *category_name(ErrorCategory c)
    {
        switch (c)
        {
        case ErrorCategory::invalid_argument:
            return "invalid-argument";
        case ErrorCategory::not_found:
            return "not-found";
        case ErrorCategory::parse:
            return "parse";
        case ErrorCategory::validation:
            return "validation";
        case ErrorCategory::numerical:
            return "numerical";
        case ErrorCategory::io:
            return "io";
        }
        return "unknown";
    }
}

#endif
