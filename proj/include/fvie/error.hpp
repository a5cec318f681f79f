// Copyright 2026 The fvie Authors.
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

#ifndef FVIE_ERROR_HPP
#define FVIE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fvie
{

// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Invalid fuzzy number data or mismatched mu-grids.
class FuzzyError : public Error
{
public:
    using Error::Error;
};

// Bad spatial grid, bad integration limits, grid-function mismatch.
class GridError : public Error
{
public:
    using Error::Error;
};

// Expression syntax errors. offset() is the byte offset into the source.
class ParseError : public Error
{
public:
    ParseError(const std::string &msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), m_offset(offset)
    {
    }

    [[nodiscard]] std::size_t offset() const noexcept
    {
        return m_offset;
    }

private:
    std::size_t m_offset;
};

// Expression evaluation errors (unbound variable, domain error).
// offset() locates the failing node in the source text.
class EvalError : public Error
{
public:
    EvalError(const std::string &msg, std::size_t offset)
        : Error(msg + " at offset " + std::to_string(offset)), m_offset(offset)
    {
    }

    [[nodiscard]] std::size_t offset() const noexcept
    {
        return m_offset;
    }

private:
    std::size_t m_offset;
};

// Structurally invalid problem definitions, curve ordering violations.
class ProblemError : public Error
{
public:
    using Error::Error;
};

// Problem-file syntax errors; line() is 1-based.
class ProblemFileError : public Error
{
public:
    ProblemFileError(const std::string &msg, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + msg), m_line(line)
    {
    }

    [[nodiscard]] std::size_t line() const noexcept
    {
        return m_line;
    }

private:
    std::size_t m_line;
};

// Failures during the successive-approximation run.
class SolverError : public Error
{
public:
    using Error::Error;
};

} // namespace fvie

#endif // FVIE_ERROR_HPP
