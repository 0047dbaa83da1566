#include "sketchplan/dl/parser.hpp"

#include "sketchplan/util/error.hpp"

#include <cctype>
#include <optional>

using namespace std;
using sketchplan::util::ParseError;

namespace sketchplan::dl {

namespace {

struct Token {
    enum Kind { Ident, Int, LParen, RParen, Comma, End } kind = End;
    string text;
    long value = 0;
    int column = 0;
};

class Lexer {
public:
    Lexer(const string &text, int line) : text_(text), line_(line) { advance(); }

    const Token &peek() const { return token_; }

    Token take() {
        Token t = token_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const string &message, int column) const {
        throw ParseError(message, line_, column);
    }

    [[noreturn]] void fail_here(const string &message) const {
        fail(message, token_.column);
    }

private:
    static bool ident_char(char c) {
        return isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    void advance() {
        while (pos_ < text_.size() && isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        token_ = Token{};
        token_.column = static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) {
            token_.kind = Token::End;
            return;
        }
        char c = text_[pos_];
        if (c == '(') {
            token_.kind = Token::LParen;
            ++pos_;
        } else if (c == ')') {
            token_.kind = Token::RParen;
            ++pos_;
        } else if (c == ',') {
            token_.kind = Token::Comma;
            ++pos_;
        } else if (ident_char(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && ident_char(text_[pos_]))
                ++pos_;
            token_.text = text_.substr(start, pos_ - start);
            bool digits = all_of(token_.text.begin(), token_.text.end(), [](char d) {
                return isdigit(static_cast<unsigned char>(d));
            });
            if (digits) {
                token_.kind = Token::Int;
                token_.value = stol(token_.text);
            } else {
                token_.kind = Token::Ident;
            }
        } else {
            fail("unexpected character '" + string(1, c) + "'",
                 static_cast<int>(pos_) + 1);
        }
    }

    const string &text_;
    int line_;
    size_t pos_ = 0;
    Token token_;
};

class ExprParser {
public:
    ExprParser(const string &text, Pool &pool, int line)
        : lexer_(text, line), pool_(pool) {}

    int parse_toplevel_expression() {
        int id = expression();
        expect_end();
        return id;
    }

    FeatureExpr parse_toplevel_feature() {
        Token head = lexer_.take();
        if (head.kind != Token::Ident)
            lexer_.fail("expected a feature constructor", head.column);
        FeatureExpr f;
        if (head.text == "empty" || head.text == "nonempty" || head.text == "count") {
            f.kind = head.text == "empty"      ? FeatureKind::Empty
                     : head.text == "nonempty" ? FeatureKind::Nonempty
                                               : FeatureKind::Count;
            expect(Token::LParen, "(");
            f.x0 = expression();
            expect(Token::RParen, ")");
        } else if (head.text == "concept_dist" || head.text == "role_dist" ||
                   head.text == "sum_role_dist") {
            f.kind = head.text == "concept_dist" ? FeatureKind::ConceptDist
                     : head.text == "role_dist"  ? FeatureKind::RoleDist
                                                 : FeatureKind::SumRoleDist;
            expect(Token::LParen, "(");
            f.x0 = expression();
            expect(Token::Comma, ",");
            f.x1 = expression();
            expect(Token::Comma, ",");
            f.x2 = expression();
            expect(Token::RParen, ")");
        } else if (head.text == "goal_count") {
            f.kind = FeatureKind::GoalCount;
            expect(Token::LParen, "(");
            expect(Token::RParen, ")");
        } else {
            lexer_.fail("unknown feature constructor '" + head.text + "'",
                        head.column);
        }
        expect_end();
        return f;
    }

private:
    Token expect(Token::Kind kind, const char *what) {
        Token t = lexer_.take();
        if (t.kind != kind)
            lexer_.fail(string("expected '") + what + "'", t.column);
        return t;
    }

    void expect_end() {
        if (lexer_.peek().kind != Token::End)
            lexer_.fail_here("unexpected trailing input");
    }

    int integer(const char *what) {
        Token t = lexer_.take();
        if (t.kind != Token::Int)
            lexer_.fail(string("expected ") + what, t.column);
        return static_cast<int>(t.value);
    }

    string identifier(const char *what) {
        Token t = lexer_.take();
        if (t.kind != Token::Ident)
            lexer_.fail(string("expected ") + what, t.column);
        return t.text;
    }

    int expression() {
        Token head = lexer_.take();
        if (head.kind != Token::Ident)
            lexer_.fail("expected an expression", head.column);
        const string &c = head.text;
        if (c == "top")
            return pool_.top();
        if (c == "bot")
            return pool_.bot();
        try {
            if (c == "primitive") {
                expect(Token::LParen, "(");
                string predicate = identifier("a predicate name");
                expect(Token::Comma, ",");
                int i = integer("a projection index");
                if (lexer_.peek().kind == Token::Comma) {
                    lexer_.take();
                    int j = integer("a projection index");
                    expect(Token::RParen, ")");
                    return pool_.role_primitive(predicate, i, j);
                }
                expect(Token::RParen, ")");
                return pool_.concept_primitive(predicate, i);
            }
            if (c == "nominal") {
                expect(Token::LParen, "(");
                string object = identifier("an object name");
                expect(Token::RParen, ")");
                return pool_.nominal(object);
            }
            if (c == "extract") {
                expect(Token::LParen, "(");
                int role = expression();
                expect(Token::Comma, ",");
                int index = integer("0 or 1");
                expect(Token::RParen, ")");
                return pool_.extract(role, index);
            }
            if (c == "not" || c == "inverse" || c == "tclosure" ||
                c == "rtclosure" || c == "goal" || c == "identity") {
                expect(Token::LParen, "(");
                int a = expression();
                expect(Token::RParen, ")");
                if (c == "not") return pool_.negation_of(a);
                if (c == "inverse") return pool_.inverse(a);
                if (c == "tclosure") return pool_.tclosure(a);
                if (c == "rtclosure") return pool_.rtclosure(a);
                if (c == "goal") return pool_.goal_of(a);
                return pool_.identity(a);
            }
            if (c == "union" || c == "intersection" || c == "diff" ||
                c == "some" || c == "all" || c == "equal" || c == "subset" ||
                c == "compose" || c == "restrict") {
                expect(Token::LParen, "(");
                int a = expression();
                expect(Token::Comma, ",");
                int b = expression();
                expect(Token::RParen, ")");
                if (c == "union") return pool_.union_of(a, b);
                if (c == "intersection") return pool_.intersection_of(a, b);
                if (c == "diff") return pool_.difference_of(a, b);
                if (c == "some") return pool_.some(a, b);
                if (c == "all") return pool_.all(a, b);
                if (c == "equal") return pool_.rvm_equal(a, b);
                if (c == "subset") return pool_.rvm_subset(a, b);
                if (c == "compose") return pool_.compose(a, b);
                return pool_.restrict_to(a, b);
            }
        } catch (const util::TypeError &e) {
            lexer_.fail(string("in '") + c + "': " + e.what(), head.column);
        }
        lexer_.fail("unknown constructor '" + c + "'", head.column);
    }

    Lexer lexer_;
    Pool &pool_;
};

} // namespace

int parse_expression(const string &text, Pool &pool, int line) {
    return ExprParser(text, pool, line).parse_toplevel_expression();
}

FeatureExpr parse_feature(const string &text, Pool &pool, int line) {
    return ExprParser(text, pool, line).parse_toplevel_feature();
}

} // namespace sketchplan::dl
