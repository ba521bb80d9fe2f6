#pragma once

#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "padicgb/f5.hpp"

namespace padicgb {

using Json = nlohmann::json;

namespace parse_detail {

struct Token {
    enum Type { Num, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } type;
    std::string text;
    size_t pos;
};

inline std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Token::Num, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            out.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
            continue;
        }
        Token::Type t;
        switch (c) {
            case '+': t = Token::Plus; break;
            case '-': t = Token::Minus; break;
            case '*': t = Token::Star; break;
            case '^': t = Token::Caret; break;
            case '/': t = Token::Slash; break;
            case '(': t = Token::LParen; break;
            case ')': t = Token::RParen; break;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "' at column " +
                                 std::to_string(i + 1));
        }
        out.push_back({t, std::string(1, c), i});
        ++i;
    }
    out.push_back({Token::End, "", s.size()});
    return out;
}

struct RawFactor {
    enum Kind { Number, Variable, Ball, BoundedNumber } kind;
    Rational number;       // Number / BoundedNumber
    int var = -1;          // Variable
    int power = 1;         // Variable
    int ball_order = 0;    // Ball / BoundedNumber
};

struct RawTerm {
    int sign = 1;
    std::vector<RawFactor> factors;
};

class TermParser {
public:
    TermParser(const std::string& text, const std::vector<std::string>& vars,
               const std::string& uniformizer)
        : toks_(lex(text)), vars_(vars), symbol_(uniformizer) {}

    std::vector<RawTerm> parse() {
        std::vector<RawTerm> terms;
        int sign = 1;
        if (peek().type == Token::Minus) {
            sign = -1;
            next();
        }
        terms.push_back(term(sign));
        while (peek().type != Token::End) {
            Token t = next();
            if (t.type == Token::Plus)
                terms.push_back(term(1));
            else if (t.type == Token::Minus)
                terms.push_back(term(-1));
            else
                fail(t, "expected '+' or '-' between terms");
        }
        return terms;
    }

private:
    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const {
        throw ParseError(msg + " at column " + std::to_string(t.pos + 1));
    }

    long long integer() {
        Token t = next();
        int sign = 1;
        if (t.type == Token::Minus) {
            sign = -1;
            t = next();
        }
        if (t.type != Token::Num) fail(t, "expected an integer");
        return sign * std::stoll(t.text);
    }

    void expect(Token::Type ty, const char* what) {
        Token t = next();
        if (t.type != ty) fail(t, std::string("expected ") + what);
    }

    RawFactor ball() {
        // 'O' already consumed
        expect(Token::LParen, "'(' after O");
        Token base = next();
        if (symbol_.empty()) fail(base, "O(...) precision forms are not allowed in exact input");
        if (base.text != symbol_)
            fail(base, "precision base must be the uniformizer " + symbol_);
        RawFactor f;
        f.kind = RawFactor::Ball;
        f.ball_order = 1;
        if (peek().type == Token::Caret) {
            next();
            f.ball_order = static_cast<int>(integer());
        }
        expect(Token::RParen, "')'");
        return f;
    }

    RawFactor factor() {
        Token t = next();
        if (t.type == Token::Num) {
            RawFactor f;
            f.kind = RawFactor::Number;
            Int num(t.text);
            Int den = 1;
            if (peek().type == Token::Slash) {
                next();
                Token d = next();
                if (d.type != Token::Num) fail(d, "expected a denominator");
                den = Int(d.text);
            }
            if (peek().type == Token::Caret) {
                next();
                long long e = integer();
                if (e >= 0) {
                    Int b = num;
                    num = 1;
                    for (long long k = 0; k < e; ++k) num *= b;
                } else {
                    Int b = num;
                    num = 1;
                    den = 1;
                    for (long long k = 0; k < -e; ++k) den *= b;
                }
            }
            f.number = Rational(num, den);
            return f;
        }
        if (t.type == Token::Ident) {
            if (t.text == "O") return ball();
            for (size_t v = 0; v < vars_.size(); ++v)
                if (vars_[v] == t.text) {
                    RawFactor f;
                    f.kind = RawFactor::Variable;
                    f.var = static_cast<int>(v);
                    if (peek().type == Token::Caret) {
                        next();
                        long long e = integer();
                        if (e < 0) fail(t, "negative variable exponents are not supported");
                        f.power = static_cast<int>(e);
                    }
                    return f;
                }
            fail(t, "unknown variable '" + t.text + "'");
        }
        if (t.type == Token::LParen) {
            // (rational [+|- O(sym^k)])  -- a coefficient with explicit precision
            int sign = 1;
            if (peek().type == Token::Minus) {
                sign = -1;
                next();
            }
            RawFactor f;
            if (peek().type == Token::Ident && peek().text == "O") {
                next();
                f = ball();
                expect(Token::RParen, "')'");
                return f;
            }
            Token num = next();
            if (num.type != Token::Num) fail(num, "expected a coefficient");
            Int n(num.text);
            Int d = 1;
            if (peek().type == Token::Slash) {
                next();
                Token dt = next();
                if (dt.type != Token::Num) fail(dt, "expected a denominator");
                d = Int(dt.text);
            }
            f.number = Rational(sign * n, d);
            if (peek().type == Token::RParen) {
                next();
                f.kind = RawFactor::Number;
                return f;
            }
            Token op = next();
            if (op.type != Token::Plus && op.type != Token::Minus)
                fail(op, "expected '+ O(...)' inside a coefficient");
            Token o = next();
            if (o.type != Token::Ident || o.text != "O") fail(o, "expected O(...)");
            RawFactor b = ball();
            expect(Token::RParen, "')'");
            f.kind = RawFactor::BoundedNumber;
            f.ball_order = b.ball_order;
            return f;
        }
        fail(t, "expected a coefficient, variable, or O(...)");
    }

    RawTerm term(int sign) {
        RawTerm t;
        t.sign = sign;
        t.factors.push_back(factor());
        while (peek().type == Token::Star) {
            next();
            t.factors.push_back(factor());
        }
        return t;
    }

    std::vector<Token> toks_;
    size_t i_ = 0;
    const std::vector<std::string>& vars_;
    std::string symbol_;
};

}  // namespace parse_detail

/// `3*x^2*y + 5*y^3`, `(1 + O(5^4))*x^2`, `O(5^4)*x`, rationals `1/2*x`.
/// Coefficients without an explicit O(...) are truncated at `default_order`.
inline Polynomial<Element> parse_polynomial(const std::string& text, const Field& field,
                                            const std::vector<std::string>& vars,
                                            const MonomialOrder& order, int default_order) {
    parse_detail::TermParser parser(text, vars, field.uniformizer());
    auto raw = parser.parse();
    std::vector<Polynomial<Element>::Term> terms;
    for (const auto& t : raw) {
        Monomial m = Monomial::one(order.nvars);
        Rational r(t.sign);
        bool have_elem = false;
        Element e = Element::exact_int(field, 1);
        for (const auto& f : t.factors) {
            switch (f.kind) {
                case parse_detail::RawFactor::Number:
                    r *= f.number;
                    break;
                case parse_detail::RawFactor::Variable:
                    m = m * Monomial::variable(order.nvars, f.var, f.power);
                    break;
                case parse_detail::RawFactor::Ball:
                    e = e.mul(Element::ball(field, f.ball_order));
                    have_elem = true;
                    break;
                case parse_detail::RawFactor::BoundedNumber:
                    e = e.mul(Element::from_rational(
                        field, boost::multiprecision::numerator(f.number),
                        boost::multiprecision::denominator(f.number), f.ball_order));
                    have_elem = true;
                    break;
            }
        }
        Element coeff = Element::exact_zero(field);
        if (!have_elem) {
            coeff = Element::from_rational(field, boost::multiprecision::numerator(r),
                                           boost::multiprecision::denominator(r), default_order);
        } else if (r == 1) {
            coeff = e;
        } else if (r == -1) {
            coeff = e.negate();
        } else {
            coeff = e.mul(Element::from_rational(field, boost::multiprecision::numerator(r),
                                                 boost::multiprecision::denominator(r),
                                                 sat_add(e.order(), 64)));
        }
        terms.push_back({std::move(m), std::move(coeff)});
    }
    return Polynomial<Element>(order, std::move(terms));
}

/// Exact-coefficient variant; O(...) forms are rejected.
inline PolyQ parse_polynomial_exact(const std::string& text, const std::vector<std::string>& vars,
                                    const MonomialOrder& order) {
    parse_detail::TermParser parser(text, vars, "");  // no uniformizer: O(...) rejected
    auto raw = parser.parse();
    std::vector<PolyQ::Term> terms;
    for (const auto& t : raw) {
        Monomial m = Monomial::one(order.nvars);
        Rational r(t.sign);
        for (const auto& f : t.factors) {
            switch (f.kind) {
                case parse_detail::RawFactor::Number:
                    r *= f.number;
                    break;
                case parse_detail::RawFactor::Variable:
                    m = m * Monomial::variable(order.nvars, f.var, f.power);
                    break;
                default:
                    throw ParseError("O(...) precision forms require a finite-precision field");
            }
        }
        terms.push_back({std::move(m), std::move(r)});
    }
    return PolyQ(order, std::move(terms));
}

/// Hand-editable system file: `field:`, optional `prec:`, `vars:`, optional
/// `order:` headers, then one polynomial per line.  '#' starts a comment.
struct SystemFile {
    FieldKind kind = FieldKind::PAdic;
    long long p = 0;
    int prec = -1;  // unset
    std::vector<std::string> vars;
    OrderKind order_kind = OrderKind::Grevlex;
    std::vector<std::string> poly_lines;

    MonomialOrder monomial_order() const {
        return MonomialOrder{order_kind, static_cast<int>(vars.size())};
    }
};

inline SystemFile parse_system_file(std::istream& is) {
    SystemFile sf;
    bool saw_field = false, saw_vars = false;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        auto rest_tokens = [&]() {
            std::vector<std::string> v;
            std::string w;
            while (ls >> w) v.push_back(w);
            return v;
        };
        if (head == "field:") {
            auto v = rest_tokens();
            if (v.size() != 2) throw ParseError("line " + std::to_string(lineno) +
                                                ": expected 'field: qp|fpt <p>'");
            if (v[0] == "qp")
                sf.kind = FieldKind::PAdic;
            else if (v[0] == "fpt")
                sf.kind = FieldKind::PowerSeries;
            else
                throw ParseError("line " + std::to_string(lineno) + ": unknown field '" + v[0] +
                                 "'");
            sf.p = std::stoll(v[1]);
            saw_field = true;
        } else if (head == "prec:") {
            auto v = rest_tokens();
            if (v.size() != 1)
                throw ParseError("line " + std::to_string(lineno) + ": expected 'prec: <n>'");
            sf.prec = std::stoi(v[0]);
        } else if (head == "vars:") {
            sf.vars = rest_tokens();
            if (sf.vars.empty())
                throw ParseError("line " + std::to_string(lineno) + ": no variables given");
            saw_vars = true;
        } else if (head == "order:") {
            auto v = rest_tokens();
            if (v.size() != 1 || (v[0] != "grevlex" && v[0] != "lex"))
                throw ParseError("line " + std::to_string(lineno) +
                                 ": expected 'order: grevlex|lex'");
            sf.order_kind = v[0] == "grevlex" ? OrderKind::Grevlex : OrderKind::Lex;
        } else {
            std::string rest;
            std::getline(ls, rest);
            sf.poly_lines.push_back(head + rest);
        }
    }
    if (!saw_field) throw ParseError("missing 'field:' header");
    if (!saw_vars) throw ParseError("missing 'vars:' header");
    if (sf.poly_lines.empty()) throw ParseError("no polynomials in input");
    return sf;
}

// ---------------------------------------------------------------------------
// JSON serialization (versioned schema; `lift` consumes the output of `gb`)
// ---------------------------------------------------------------------------

inline Json element_to_json(const Element& e) {
    Json j;
    j["v"] = e.value().str();
    j["e"] = e.shift();
    if (e.is_exact())
        j["o"] = "inf";
    else
        j["o"] = e.order();
    return j;
}

inline Element element_from_json(const Field& f, const Json& j) {
    Int v(j.at("v").get<std::string>());
    int shift = j.at("e").get<int>();
    int order = j.at("o").is_string() ? kInfPrec : j.at("o").get<int>();
    Element base = order == kInfPrec ? Element::exact_int(f, v) : Element::from_int(f, v, order - shift);
    if (shift > 0)
        return base.mul(Element::exact_int(f, f.pow(shift)));
    if (shift < 0)
        return base.div(Element::exact_int(f, f.pow(-shift)));
    return base;
}

template <class C>
Json poly_to_json(const Polynomial<C>& p);

template <>
inline Json poly_to_json(const Polynomial<Element>& p) {
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json jt;
        jt["m"] = t.first.exponents();
        jt["c"] = element_to_json(t.second);
        terms.push_back(jt);
    }
    return terms;
}

template <>
inline Json poly_to_json(const Polynomial<Rational>& p) {
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json jt;
        jt["m"] = t.first.exponents();
        jt["c"] = t.second.str();
        terms.push_back(jt);
    }
    return terms;
}

inline Polynomial<Element> poly_from_json(const Field& f, const MonomialOrder& order,
                                          const Json& j) {
    std::vector<Polynomial<Element>::Term> terms;
    for (const auto& jt : j) {
        Monomial m(jt.at("m").get<std::vector<int>>());
        terms.push_back({m, element_from_json(f, jt.at("c"))});
    }
    return Polynomial<Element>(order, std::move(terms));
}

inline Json result_to_json(const GroebnerResult& res, const SystemFile& sf) {
    Json j;
    j["schema"] = "padicgb/1";
    j["field"] = {{"kind", sf.kind == FieldKind::PAdic ? "qp" : "fpt"}, {"p", sf.p}};
    j["vars"] = sf.vars;
    j["order"] = sf.order_kind == OrderKind::Grevlex ? "grevlex" : "lex";
    j["prec"] = res.report.entry_precision == kInfPrec ? Json("inf")
                                                       : Json(res.report.entry_precision);
    j["degree_cap"] = res.degree_cap;
    j["method"] = res.method == GbMethod::WeakMF5 ? "mf5" : "matrix";
    j["input"] = sf.poly_lines;
    Json basis = Json::array();
    for (const auto& g : res.basis) basis.push_back(poly_to_json(g));
    j["basis"] = basis;
    Json coords = Json::array();
    for (const auto& row : res.coordinates) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(poly_to_json(c));
        coords.push_back(r);
    }
    j["coordinates"] = coords;
    j["bounds"] = {{"value", res.report.bound}, {"certified", res.report.bound_certified}};
    j["loss"] = {{"max", res.report.realized_max_loss},
                 {"mean", res.report.realized_mean_loss}};
    Json steps = Json::array();
    for (const auto& st : res.report.steps) {
        steps.push_back({{"d", st.degree},
                         {"i", st.index},
                         {"pivot_val_sum", st.pivot_valuation_sum},
                         {"stop_column", st.stop_column},
                         {"ambiguous", st.ambiguous_stop},
                         {"certified", st.certified},
                         {"rows", st.rows},
                         {"cols", st.cols}});
    }
    j["steps"] = steps;
    j["notes"] = res.notes;
    return j;
}

inline GroebnerResult result_from_json(const Field& f, const Json& j) {
    GroebnerResult res;
    res.field = &f;
    res.order = MonomialOrder{j.at("order").get<std::string>() == "grevlex" ? OrderKind::Grevlex
                                                                            : OrderKind::Lex,
                              static_cast<int>(j.at("vars").size())};
    res.degree_cap = j.at("degree_cap").get<int>();
    res.method = j.at("method").get<std::string>() == "mf5" ? GbMethod::WeakMF5
                                                            : GbMethod::WeakMatrix;
    for (const auto& jb : j.at("basis")) res.basis.push_back(poly_from_json(f, res.order, jb));
    for (const auto& jr : j.at("coordinates")) {
        std::vector<Polynomial<Element>> row;
        for (const auto& jc : jr) row.push_back(poly_from_json(f, res.order, jc));
        res.coordinates.push_back(std::move(row));
    }
    res.report.entry_precision =
        j.at("prec").is_string() ? kInfPrec : j.at("prec").get<int>();
    res.report.bound = j.at("bounds").at("value").get<int>();
    res.report.bound_certified = j.at("bounds").at("certified").get<bool>();
    res.report.realized_max_loss = j.at("loss").at("max").get<int>();
    return res;
}

}  // namespace padicgb
