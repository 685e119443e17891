#include "feedgame/expect.hpp"

#include <cmath>
#include <istream>
#include <stdexcept>

#include "feedgame/text.hpp"

namespace feedgame {

namespace {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Token {
    enum class Kind { Number, Ident, Op, LParen, RParen, Comma, End };
    Token() = default;
    explicit Token(Kind k) : kind(k) {}
    Kind kind = Kind::End;
    double number = 0.0;
    std::string text;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
        if (pos_ >= s_.size()) return Token(Token::Kind::End);
        const char c = s_[pos_];
        if ((c >= '0' && c <= '9') || (c == '.' && pos_ + 1 < s_.size() && s_[pos_ + 1] >= '0' &&
                                       s_[pos_ + 1] <= '9')) {
            std::size_t end = pos_;
            while (end < s_.size() &&
                   ((s_[end] >= '0' && s_[end] <= '9') || s_[end] == '.' || s_[end] == 'e' ||
                    s_[end] == 'E' ||
                    ((s_[end] == '+' || s_[end] == '-') && (s_[end - 1] == 'e' || s_[end - 1] == 'E'))))
                ++end;
            // A number immediately followed by an identifier character is a
            // reference like "0.25.facts" gone wrong; references must start
            // with a letter, so this stays a number.
            Token t(Token::Kind::Number);
            t.number = parse_number(s_.substr(pos_, end - pos_), "expectation literal");
            pos_ = end;
            return t;
        }
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            std::size_t end = pos_;
            bool in_brackets = false;
            while (end < s_.size()) {
                const char d = s_[end];
                if (d == '[') {
                    in_brackets = true;
                    ++end;
                    continue;
                }
                if (d == ']') {
                    in_brackets = false;
                    ++end;
                    continue;
                }
                const bool ident_char = (d >= 'a' && d <= 'z') || (d >= 'A' && d <= 'Z') ||
                                        (d >= '0' && d <= '9') || d == '_' || d == '.';
                if (ident_char || (in_brackets && d == '-'))
                    ++end;
                else
                    break;
            }
            if (in_brackets) throw EvalError("unterminated '[' in reference");
            Token t(Token::Kind::Ident);
            t.text = std::string(s_.substr(pos_, end - pos_));
            pos_ = end;
            return t;
        }
        if (c == '(') {
            ++pos_;
            return Token(Token::Kind::LParen);
        }
        if (c == ')') {
            ++pos_;
            return Token(Token::Kind::RParen);
        }
        if (c == ',') {
            ++pos_;
            return Token(Token::Kind::Comma);
        }
        for (const char* op : {"<=", ">=", "==", "<", ">", "+", "-", "*", "/"}) {
            const std::size_t n = std::string_view(op).size();
            if (s_.substr(pos_, n) == op) {
                Token t(Token::Kind::Op);
                t.text = op;
                pos_ += n;
                return t;
            }
        }
        throw EvalError(std::string("unexpected character '") + c + "'");
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

class Parser {
public:
    Parser(std::string_view line, const SweepReport& report) : lexer_(line), report_(report) {
        advance();
    }

    // comparison := expr cmp expr
    bool evaluate_rule(std::string& detail) {
        const double lhs = expr();
        if (current_.kind != Token::Kind::Op ||
            (current_.text != "<" && current_.text != "<=" && current_.text != ">" &&
             current_.text != ">=" && current_.text != "=="))
            throw EvalError("expected a comparison operator");
        const std::string op = current_.text;
        advance();
        const double rhs = expr();
        if (current_.kind != Token::Kind::End) throw EvalError("trailing input after comparison");
        detail = format_number(lhs) + " " + op + " " + format_number(rhs);
        if (op == "<") return lhs < rhs;
        if (op == "<=") return lhs <= rhs;
        if (op == ">") return lhs > rhs;
        if (op == ">=") return lhs >= rhs;
        return lhs == rhs;
    }

private:
    void advance() { current_ = lexer_.next(); }

    double expr() {
        double v = term();
        while (current_.kind == Token::Kind::Op &&
               (current_.text == "+" || current_.text == "-")) {
            const bool add = current_.text == "+";
            advance();
            const double rhs = term();
            v = add ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (current_.kind == Token::Kind::Op &&
               (current_.text == "*" || current_.text == "/")) {
            const bool mul = current_.text == "*";
            advance();
            const double rhs = unary();
            if (!mul && rhs == 0.0) throw EvalError("division by zero");
            v = mul ? v * rhs : v / rhs;
        }
        return v;
    }

    double unary() {
        if (current_.kind == Token::Kind::Op && current_.text == "-") {
            advance();
            return -unary();
        }
        return primary();
    }

    double primary() {
        if (current_.kind == Token::Kind::Number) {
            const double v = current_.number;
            advance();
            return v;
        }
        if (current_.kind == Token::Kind::LParen) {
            advance();
            const double v = expr();
            if (current_.kind != Token::Kind::RParen) throw EvalError("expected ')'");
            advance();
            return v;
        }
        if (current_.kind == Token::Kind::Ident) {
            const std::string name = current_.text;
            advance();
            if (current_.kind == Token::Kind::LParen) return call(name);
            return resolve(name);
        }
        throw EvalError("expected a number, reference or function");
    }

    double call(const std::string& name) {
        advance();  // consume '('
        std::vector<double> args;
        if (current_.kind != Token::Kind::RParen) {
            args.push_back(expr());
            while (current_.kind == Token::Kind::Comma) {
                advance();
                args.push_back(expr());
            }
        }
        if (current_.kind != Token::Kind::RParen) throw EvalError("expected ')' after arguments");
        advance();
        if (name == "abs") {
            if (args.size() != 1) throw EvalError("abs takes one argument");
            return std::fabs(args[0]);
        }
        if (name == "max" || name == "min") {
            if (args.empty()) throw EvalError(name + " needs at least one argument");
            double v = args[0];
            for (double a : args) v = name == "max" ? std::max(v, a) : std::min(v, a);
            return v;
        }
        throw EvalError("unknown function '" + name + "'");
    }

    double resolve(const std::string& ref) const {
        // policy.metric[(cell)][.std]; policy labels may contain dots
        // (f0.25), so strip known suffixes from the right.
        std::string rest = ref;
        bool want_std = false;
        if (rest.size() > 4 && rest.substr(rest.size() - 4) == ".std") {
            want_std = true;
            rest = rest.substr(0, rest.size() - 4);
        }
        const std::size_t dot = rest.rfind('.');
        if (dot == std::string::npos)
            throw EvalError("reference '" + ref + "' needs the form policy.metric");
        const std::string policy = rest.substr(0, dot);
        const std::string metric = rest.substr(dot + 1);
        auto pit = report_.stats.find(policy);
        if (pit == report_.stats.end()) throw EvalError("unknown policy '" + policy + "'");
        const PolicyStats& stats = pit->second;

        const Aggregate* agg = nullptr;
        const std::size_t bracket = metric.find('[');
        if (bracket != std::string::npos) {
            if (metric.back() != ']') throw EvalError("bad cell reference '" + metric + "'");
            const std::string family = metric.substr(0, bracket);
            const std::string cell = metric.substr(bracket + 1, metric.size() - bracket - 2);
            if (family == "loop") {
                const auto it =
                    stats.loops.find(static_cast<int>(parse_int64(cell, "loop cell")));
                agg = it == stats.loops.end() ? nullptr : &it->second;
            } else if (family == "trans") {
                const auto parts = split(cell, '-');
                if (parts.size() != 2) throw EvalError("transition cell must be FROM-TO");
                const auto it = stats.transitions.find(
                    {static_cast<int>(parse_int64(parts[0], "transition cell")),
                     static_cast<int>(parse_int64(parts[1], "transition cell"))});
                agg = it == stats.transitions.end() ? nullptr : &it->second;
            } else if (family == "arcs") {
                const auto it = stats.arcs.find(static_cast<int>(parse_int64(cell, "arc cell")));
                agg = it == stats.arcs.end() ? nullptr : &it->second;
            } else {
                throw EvalError("unknown cell family '" + family + "'");
            }
            // An absent cell means it never occurred: mean and std are 0.
            static const Aggregate zero{};
            if (!agg) agg = &zero;
        } else {
            const auto it = stats.scalars.find(metric);
            if (it == stats.scalars.end()) throw EvalError("unknown metric '" + metric + "'");
            agg = &it->second;
        }
        return want_std ? agg->stddev : agg->mean;
    }

    Lexer lexer_;
    Token current_;
    const SweepReport& report_;
};

}  // namespace

std::vector<ExpectationResult> evaluate_expectations(const SweepReport& report,
                                                     std::istream& rules) {
    std::vector<ExpectationResult> results;
    std::string line;
    while (std::getline(rules, line)) {
        const std::string_view sv = trim(line);
        if (sv.empty() || sv.front() == '#') continue;
        ExpectationResult result;
        result.rule = std::string(sv);
        try {
            Parser parser(sv, report);
            result.passed = parser.evaluate_rule(result.detail);
        } catch (const EvalError& e) {
            result.passed = false;
            result.detail = std::string("error: ") + e.what();
        } catch (const std::invalid_argument& e) {
            result.passed = false;
            result.detail = std::string("error: ") + e.what();
        }
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace feedgame
