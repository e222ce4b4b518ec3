// Copyright Contributors to the expsamp project
// SPDX-License-Identifier: Apache-2.0
#include "expsamp/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace expsamp {
namespace {

class ConstExpr final : public Expr {
  public:
    explicit ConstExpr(double v) : value_(v) {}
    double eval(double) const override { return value_; }
    ExprPtr derivative() const override { return std::make_shared<ConstExpr>(0.0); }
    void print(std::ostream& os) const override {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value_);
        os << buf;
    }
    double value() const { return value_; }

  private:
    double value_;
};

class VarExpr final : public Expr {
  public:
    double eval(double t) const override { return t; }
    ExprPtr derivative() const override { return std::make_shared<ConstExpr>(1.0); }
    void print(std::ostream& os) const override { os << "t"; }
};

class NegExpr final : public Expr {
  public:
    explicit NegExpr(ExprPtr e) : inner_(std::move(e)) {}
    double eval(double t) const override { return -inner_->eval(t); }
    ExprPtr derivative() const override {
        return std::make_shared<NegExpr>(inner_->derivative());
    }
    void print(std::ostream& os) const override {
        os << "(-";
        inner_->print(os);
        os << ")";
    }

  private:
    ExprPtr inner_;
};

enum class BinOp { Add, Sub, Mul, Div, Pow };

class BinExpr final : public Expr {
  public:
    BinExpr(BinOp op, ExprPtr l, ExprPtr r) : op_(op), lhs_(std::move(l)), rhs_(std::move(r)) {}

    double eval(double t) const override {
        const double a = lhs_->eval(t);
        const double b = rhs_->eval(t);
        switch (op_) {
            case BinOp::Add: return a + b;
            case BinOp::Sub: return a - b;
            case BinOp::Mul: return a * b;
            case BinOp::Div: return a / b;
            case BinOp::Pow: return std::pow(a, b);
        }
        return 0.0;
    }

    ExprPtr derivative() const override;

    void print(std::ostream& os) const override {
        os << "(";
        lhs_->print(os);
        switch (op_) {
            case BinOp::Add: os << "+"; break;
            case BinOp::Sub: os << "-"; break;
            case BinOp::Mul: os << "*"; break;
            case BinOp::Div: os << "/"; break;
            case BinOp::Pow: os << "^"; break;
        }
        rhs_->print(os);
        os << ")";
    }

    BinOp op() const { return op_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

  private:
    BinOp op_;
    ExprPtr lhs_, rhs_;
};

enum class Fn { Log, Exp, Sqrt };

class CallExpr final : public Expr {
  public:
    CallExpr(Fn fn, ExprPtr arg) : fn_(fn), arg_(std::move(arg)) {}

    double eval(double t) const override {
        const double x = arg_->eval(t);
        switch (fn_) {
            case Fn::Log: return std::log(x);
            case Fn::Exp: return std::exp(x);
            case Fn::Sqrt: return std::sqrt(x);
        }
        return 0.0;
    }

    ExprPtr derivative() const override;

    void print(std::ostream& os) const override {
        switch (fn_) {
            case Fn::Log: os << "log("; break;
            case Fn::Exp: os << "exp("; break;
            case Fn::Sqrt: os << "sqrt("; break;
        }
        arg_->print(os);
        os << ")";
    }

  private:
    Fn fn_;
    ExprPtr arg_;
};

ExprPtr bin(BinOp op, ExprPtr l, ExprPtr r) {
    return std::make_shared<BinExpr>(op, std::move(l), std::move(r));
}
ExprPtr constant(double v) { return std::make_shared<ConstExpr>(v); }

ExprPtr BinExpr::derivative() const {
    switch (op_) {
        case BinOp::Add: return bin(BinOp::Add, lhs_->derivative(), rhs_->derivative());
        case BinOp::Sub: return bin(BinOp::Sub, lhs_->derivative(), rhs_->derivative());
        case BinOp::Mul:
            return bin(BinOp::Add, bin(BinOp::Mul, lhs_->derivative(), rhs_),
                       bin(BinOp::Mul, lhs_, rhs_->derivative()));
        case BinOp::Div:
            // (l'r - lr') / r^2
            return bin(BinOp::Div,
                       bin(BinOp::Sub, bin(BinOp::Mul, lhs_->derivative(), rhs_),
                           bin(BinOp::Mul, lhs_, rhs_->derivative())),
                       bin(BinOp::Mul, rhs_, rhs_));
        case BinOp::Pow: {
            if (auto c = std::dynamic_pointer_cast<const ConstExpr>(rhs_)) {
                // c l^(c-1) l'
                return bin(BinOp::Mul,
                           bin(BinOp::Mul, constant(c->value()),
                               bin(BinOp::Pow, lhs_, constant(c->value() - 1.0))),
                           lhs_->derivative());
            }
            // l^r (r' log l + r l'/l)
            ExprPtr self = bin(BinOp::Pow, lhs_, rhs_);
            ExprPtr term1 =
                bin(BinOp::Mul, rhs_->derivative(), std::make_shared<CallExpr>(Fn::Log, lhs_));
            ExprPtr term2 = bin(BinOp::Div, bin(BinOp::Mul, rhs_, lhs_->derivative()), lhs_);
            return bin(BinOp::Mul, self, bin(BinOp::Add, term1, term2));
        }
    }
    return constant(0.0);
}

ExprPtr CallExpr::derivative() const {
    switch (fn_) {
        case Fn::Log: return bin(BinOp::Div, arg_->derivative(), arg_);
        case Fn::Exp:
            return bin(BinOp::Mul, std::make_shared<CallExpr>(Fn::Exp, arg_), arg_->derivative());
        case Fn::Sqrt:
            return bin(BinOp::Div, arg_->derivative(),
                       bin(BinOp::Mul, constant(2.0), std::make_shared<CallExpr>(Fn::Sqrt, arg_)));
    }
    return constant(0.0);
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class Parser {
  public:
    explicit Parser(const std::string& src) : src_(src) {}

    ExprPtr parse() {
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != src_.size())
            throw ParseError("unexpected trailing input '" + src_.substr(pos_) + "'", pos_);
        return e;
    }

  private:
    const std::string& src_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < src_.size() ? src_[pos_] : '\0';
    }

    ExprPtr expr() {
        ExprPtr e = term();
        for (;;) {
            if (consume('+'))
                e = bin(BinOp::Add, e, term());
            else if (consume('-'))
                e = bin(BinOp::Sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (consume('*'))
                e = bin(BinOp::Mul, e, factor());
            else if (consume('/'))
                e = bin(BinOp::Div, e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (consume('-')) return std::make_shared<NegExpr>(factor());
        if (consume('+')) return factor();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (consume('^')) return bin(BinOp::Pow, base, factor()); // right-associative
        return base;
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (!consume(')')) throw ParseError("missing ')'", pos_);
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        const char* begin = src_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) throw ParseError("invalid number", pos_);
        pos_ += static_cast<std::size_t>(end - begin);
        return constant(v);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string name = src_.substr(start, pos_ - start);
        if (name == "t") return std::make_shared<VarExpr>();
        Fn fn;
        if (name == "log")
            fn = Fn::Log;
        else if (name == "exp")
            fn = Fn::Exp;
        else if (name == "sqrt")
            fn = Fn::Sqrt;
        else
            throw ParseError("unknown identifier '" + name + "'", start);
        if (!consume('(')) throw ParseError("expected '(' after '" + name + "'", pos_);
        ExprPtr arg = expr();
        if (!consume(')')) throw ParseError("missing ')'", pos_);
        return std::make_shared<CallExpr>(fn, arg);
    }
};

} // namespace

std::string Expr::str() const {
    std::ostringstream os;
    print(os);
    return os.str();
}

ExprPtr parse_expression(const std::string& source) { return Parser(source).parse(); }

ExprPtr make_constant(double value) { return constant(value); }

ExprPtr subtract_constant(ExprPtr expr, double value) {
    if (value == 0.0) return expr;
    return bin(BinOp::Sub, std::move(expr), constant(value));
}

} // namespace expsamp
