// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

namespace expsamp {

class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), pos(position) {}
    std::size_t pos; // 0-based offset into the source string
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Closed-form expression in the variable t: constants, t, + - * / ^,
/// log, exp, sqrt. Immutable; shared subtrees are fine.
class Expr {
  public:
    virtual ~Expr() = default;
    virtual double eval(double t) const = 0;
    virtual ExprPtr derivative() const = 0;
    virtual void print(std::ostream& os) const = 0;
    std::string str() const;
};

// Grammar: expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)* ;
// factor := '-' factor | power ; power := atom ('^' factor)? ;
// atom := number | 't' | '(' expr ')' | ('log'|'exp'|'sqrt') '(' expr ')'.
ExprPtr parse_expression(const std::string& source);

ExprPtr make_constant(double value);
// expr - c, used when shifting signal pieces by one-sided limits.
ExprPtr subtract_constant(ExprPtr expr, double value);

} // namespace expsamp
