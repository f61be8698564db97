/*
   Copyright 2026 The diffmon authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DIFFMON_ERRORS_HPP
#define DIFFMON_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffmon {

/// Base class for every error thrown by this library.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Division by an exact zero (constant, polynomial or rational function).
class division_by_zero : public error {
  public:
    explicit division_by_zero(const std::string& what = "division by zero")
        : error(what) {}
};

/// Operation that has no defined value on the given input
/// (gcd of two zero polynomials, 0^0, degree at infinity of the zero
/// function, squarefree decomposition of zero, target identical to the
/// monomial, ...).
class undefined_operation : public error {
  public:
    explicit undefined_operation(const std::string& what) : error(what) {}
};

/// A stated hypothesis of an analysis operation does not hold.  The kind
/// is kept machine-readable so callers can report violations distinctly.
class precondition_error : public error {
  public:
    enum class kind {
        constant_function,
        constant_denominator,
        inadmissible_spec,
        zero_shared_value,
        zero_scale_parameter,
        no_polynomial_part,
        order_exceeds_polynomial_degree,
        no_free_parameter,
        missing_parameter_value,
        invalid_rescale,
        invalid_grid,
        generator_exhausted,
    };

    precondition_error(kind which, const std::string& what)
        : error(what), which_(which) {}

    kind which() const noexcept { return which_; }

  private:
    kind which_;
};

/// Syntax or mode error while parsing an expression.  `offset` is the
/// byte offset into the input at which the problem was detected.
class parse_error : public error {
  public:
    parse_error(std::size_t offset, const std::string& what)
        : error(what + " (at offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

  private:
    std::size_t offset_;
};

} // namespace diffmon

#endif // DIFFMON_ERRORS_HPP
