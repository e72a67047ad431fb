#include "dirac/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "dirac/errors.hpp"

namespace dirac::expr {

namespace {

enum class Op : int { push_const, push_x, add, sub, mul, div, pow, neg, sin, cos, exp, log, sqrt };

struct Instr {
    Op op;
    double value = 0.0;
};

struct Parser {
    const std::string& s;
    size_t pos = 0;
    std::vector<Instr>& out;

    void fail(const std::string& what) const {
        throw SpecError("expression error at offset " + std::to_string(pos) + ": " + what +
                        " in \"" + s + "\"");
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    void parse_expr() {
        parse_term();
        for (;;) {
            if (eat('+'))
                parse_term(), out.push_back({Op::add});
            else if (eat('-'))
                parse_term(), out.push_back({Op::sub});
            else
                break;
        }
    }
    void parse_term() {
        parse_unary();
        for (;;) {
            if (eat('*'))
                parse_unary(), out.push_back({Op::mul});
            else if (eat('/'))
                parse_unary(), out.push_back({Op::div});
            else
                break;
        }
    }
    void parse_unary() {
        int negs = 0;
        for (;;) {
            if (eat('-'))
                ++negs;
            else if (eat('+'))
                ;
            else
                break;
        }
        parse_power();
        if (negs % 2) out.push_back({Op::neg});
    }
    void parse_power() {
        parse_primary();
        if (eat('^')) {
            // right associative: a^b^c = a^(b^c); unary signs allowed in exponent
            parse_unary();
            out.push_back({Op::pow});
        }
    }
    void parse_primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s.c_str() + pos;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("bad numeric literal");
            pos += static_cast<size_t>(end - begin);
            out.push_back({Op::push_const, v});
            return;
        }
        if (c == '(') {
            ++pos;
            parse_expr();
            if (!eat(')')) fail("missing ')'");
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string name = s.substr(start, pos - start);
            if (name == "x") {
                out.push_back({Op::push_x});
                return;
            }
            Op fn;
            if (name == "sin")
                fn = Op::sin;
            else if (name == "cos")
                fn = Op::cos;
            else if (name == "exp")
                fn = Op::exp;
            else if (name == "log")
                fn = Op::log;
            else if (name == "sqrt")
                fn = Op::sqrt;
            else {
                pos = start;
                fail("unknown identifier '" + name + "'");
                return;
            }
            if (!eat('(')) fail("expected '(' after function name");
            parse_expr();
            if (!eat(')')) fail("missing ')'");
            out.push_back({fn});
            return;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

struct Program::Impl {
    std::vector<Instr> code;
};

Program::~Program() = default;

Program compile(const std::string& text) {
    auto impl = std::make_shared<Program::Impl>();
    Parser p{text, 0, impl->code};
    p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    int depth = 0, max_depth = 0;
    for (const Instr& in : impl->code) {
        if (in.op == Op::push_const || in.op == Op::push_x)
            ++depth;
        else if (in.op == Op::add || in.op == Op::sub || in.op == Op::mul || in.op == Op::div ||
                 in.op == Op::pow)
            --depth;
        max_depth = std::max(max_depth, depth);
    }
    if (max_depth > 64) throw SpecError("expression too deeply nested");
    Program prog;
    prog.impl_ = impl;
    return prog;
}

double Program::eval(double x) const {
    double stack[64];
    int top = -1;
    for (const Instr& in : impl_->code) {
        switch (in.op) {
        case Op::push_const: stack[++top] = in.value; break;
        case Op::push_x: stack[++top] = x; break;
        case Op::add: --top; stack[top] += stack[top + 1]; break;
        case Op::sub: --top; stack[top] -= stack[top + 1]; break;
        case Op::mul: --top; stack[top] *= stack[top + 1]; break;
        case Op::div: --top; stack[top] /= stack[top + 1]; break;
        case Op::pow: --top; stack[top] = std::pow(stack[top], stack[top + 1]); break;
        case Op::neg: stack[top] = -stack[top]; break;
        case Op::sin: stack[top] = std::sin(stack[top]); break;
        case Op::cos: stack[top] = std::cos(stack[top]); break;
        case Op::exp: stack[top] = std::exp(stack[top]); break;
        case Op::log:
            if (stack[top] <= 0) throw DomainError("expression: log of nonpositive value");
            stack[top] = std::log(stack[top]);
            break;
        case Op::sqrt:
            if (stack[top] < 0) throw DomainError("expression: sqrt of negative value");
            stack[top] = std::sqrt(stack[top]);
            break;
        }
    }
    return stack[0];
}

} // namespace dirac::expr
