#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stacksort/bigint.hpp"
#include "stacksort/classical.hpp"
#include "stacksort/polynomial.hpp"

namespace stacksort {

/// A small expression language for expected generating functions:
/// integer constants, n, x, A(k) and N(k) for the classical families,
/// C(a,b) binomials, and + - * / ^ with parentheses. Arguments of A, N, C
/// and exponents must evaluate to integer constants; / accepts a constant
/// divisor. Evaluation is over polynomials in x with rational coefficients;
/// eval_int() additionally asserts that everything cancels to integers.
class GfExpr {
public:
    static GfExpr parse(const std::string& text) {
        Parser p(text);
        GfExpr e;
        e.root_ = p.parse_expr();
        p.expect_end();
        e.text_ = text;
        return e;
    }

    const std::string& text() const { return text_; }

    RatPolynomial eval(int n) const { return root_->eval(n); }

    /// Evaluates and converts exactly; throws if a coefficient is fractional.
    IntPolynomial eval_int(int n) const {
        try {
            return to_int_polynomial(eval(n));
        } catch (const std::domain_error& e) {
            throw std::domain_error("gf expression '" + text_ + "' at n=" +
                                    std::to_string(n) + ": " + e.what());
        }
    }

private:
    struct Node {
        enum class Op { constant, var_n, var_x, add, sub, mul, div, pow, neg, eulerian, narayana, binom };
        Op op;
        BigInt value;  // constant
        std::vector<std::unique_ptr<Node>> kids;

        RatPolynomial eval(int n) const {
            switch (op) {
                case Op::constant: return RatPolynomial::constant(BigRat(value));
                case Op::var_n: return RatPolynomial::constant(BigRat(n));
                case Op::var_x: return RatPolynomial::x();
                case Op::add: return kids[0]->eval(n) + kids[1]->eval(n);
                case Op::sub: return kids[0]->eval(n) - kids[1]->eval(n);
                case Op::mul: return kids[0]->eval(n) * kids[1]->eval(n);
                case Op::neg: return -kids[0]->eval(n);
                case Op::div: {
                    RatPolynomial num = kids[0]->eval(n);
                    BigRat den = as_scalar(kids[1]->eval(n), "divisor");
                    if (den == 0) throw std::domain_error("gf expression: division by zero");
                    BigRat inv = BigRat(1) / den;
                    return num.scaled(inv);
                }
                case Op::pow: {
                    RatPolynomial base = kids[0]->eval(n);
                    long long e = as_int(kids[1]->eval(n), "exponent");
                    if (e < 0) throw std::domain_error("gf expression: negative exponent");
                    RatPolynomial r = RatPolynomial::constant(BigRat(1));
                    for (long long i = 0; i < e; ++i) r *= base;
                    return r;
                }
                case Op::eulerian: {
                    long long k = as_int(kids[0]->eval(n), "A index");
                    if (k < 0) throw std::domain_error("gf expression: A of negative index");
                    return to_rat(eulerian(static_cast<int>(k)));
                }
                case Op::narayana: {
                    long long k = as_int(kids[0]->eval(n), "N index");
                    if (k < 0) throw std::domain_error("gf expression: N of negative index");
                    return to_rat(stacksort::narayana(static_cast<int>(k)));
                }
                case Op::binom: {
                    long long a = as_int(kids[0]->eval(n), "C argument");
                    long long b = as_int(kids[1]->eval(n), "C argument");
                    return RatPolynomial::constant(BigRat(binomial(a, b)));
                }
            }
            throw std::logic_error("gf expression: bad node");
        }

        static BigRat as_scalar(const RatPolynomial& p, const char* what) {
            if (p.degree() > 0)
                throw std::domain_error(std::string("gf expression: ") + what +
                                        " must be a constant");
            return p.coeff(0);
        }

        static long long as_int(const RatPolynomial& p, const char* what) {
            BigRat r = as_scalar(p, what);
            if (boost::multiprecision::denominator(r) != 1)
                throw std::domain_error(std::string("gf expression: ") + what +
                                        " must be an integer");
            return boost::multiprecision::numerator(r).convert_to<long long>();
        }

        static RatPolynomial to_rat(const IntPolynomial& p) { return to_rat_polynomial(p); }
    };

    class Parser {
    public:
        explicit Parser(const std::string& s) : s_(s) {}

        std::unique_ptr<Node> parse_expr() {
            auto lhs = parse_term();
            while (true) {
                skip_ws();
                if (peek() == '+' || peek() == '-') {
                    char op = get();
                    auto rhs = parse_term();
                    lhs = make(op == '+' ? Node::Op::add : Node::Op::sub, std::move(lhs),
                               std::move(rhs));
                } else {
                    return lhs;
                }
            }
        }

        void expect_end() {
            skip_ws();
            if (pos_ != s_.size())
                throw std::invalid_argument("gf expression: trailing input at '" +
                                            s_.substr(pos_) + "'");
        }

    private:
        std::unique_ptr<Node> parse_term() {
            auto lhs = parse_power();
            while (true) {
                skip_ws();
                if (peek() == '*' || peek() == '/') {
                    char op = get();
                    auto rhs = parse_power();
                    lhs = make(op == '*' ? Node::Op::mul : Node::Op::div, std::move(lhs),
                               std::move(rhs));
                } else {
                    return lhs;
                }
            }
        }

        std::unique_ptr<Node> parse_power() {
            auto base = parse_atom();
            skip_ws();
            if (peek() == '^') {
                get();
                auto exp = parse_power();  // right associative
                return make(Node::Op::pow, std::move(base), std::move(exp));
            }
            return base;
        }

        std::unique_ptr<Node> parse_atom() {
            skip_ws();
            char c = peek();
            if (c == '(') {
                get();
                auto e = parse_expr();
                expect(')');
                return e;
            }
            if (c == '-') {
                get();
                auto e = parse_power();  // -x^2 means -(x^2)
                auto node = std::make_unique<Node>();
                node->op = Node::Op::neg;
                node->kids.push_back(std::move(e));
                return node;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string digits;
                while (pos_ < s_.size() &&
                       std::isdigit(static_cast<unsigned char>(s_[pos_])))
                    digits += get();
                auto node = std::make_unique<Node>();
                node->op = Node::Op::constant;
                node->value = BigInt(digits);
                return node;
            }
            if (c == 'n') {
                get();
                auto node = std::make_unique<Node>();
                node->op = Node::Op::var_n;
                return node;
            }
            if (c == 'x') {
                get();
                auto node = std::make_unique<Node>();
                node->op = Node::Op::var_x;
                return node;
            }
            if (c == 'A' || c == 'N') {
                char f = get();
                expect('(');
                auto arg = parse_expr();
                expect(')');
                auto node = std::make_unique<Node>();
                node->op = f == 'A' ? Node::Op::eulerian : Node::Op::narayana;
                node->kids.push_back(std::move(arg));
                return node;
            }
            if (c == 'C') {
                get();
                expect('(');
                auto a = parse_expr();
                expect(',');
                auto b = parse_expr();
                expect(')');
                return make(Node::Op::binom, std::move(a), std::move(b));
            }
            throw std::invalid_argument("gf expression: unexpected character '" +
                                        std::string(1, c) + "'");
        }

        static std::unique_ptr<Node> make(Node::Op op, std::unique_ptr<Node> a,
                                          std::unique_ptr<Node> b) {
            auto node = std::make_unique<Node>();
            node->op = op;
            node->kids.push_back(std::move(a));
            node->kids.push_back(std::move(b));
            return node;
        }

        void skip_ws() {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
        }

        char peek() {
            skip_ws();
            return pos_ < s_.size() ? s_[pos_] : '\0';
        }

        char get() { return s_[pos_++]; }

        void expect(char c) {
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != c)
                throw std::invalid_argument(std::string("gf expression: expected '") + c +
                                            "' in '" + s_ + "'");
            ++pos_;
        }

        const std::string& s_;
        std::size_t pos_ = 0;
    };

    std::shared_ptr<const Node> root_;
    std::string text_;
};

}  // namespace stacksort
