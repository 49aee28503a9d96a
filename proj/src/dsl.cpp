#include "cubecert/dsl.hpp"

#include <cassert>
#include <cctype>
#include <sstream>

namespace cubecert::dsl {

namespace {

enum class Tok {
    End, Name, Number, String,
    LParen, RParen, LBracket, RBracket, LBrace, RBrace,
    Comma, Colon, Plus, Minus, Star, Slash, Caret, Equal, EqEq, Arrow, AtInf,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    long number = 0;
    Pos pos;
};

struct Lexer {
    const std::string& src;
    std::size_t i = 0;
    Pos pos;

    explicit Lexer(const std::string& s) : src(s) {}

    char peek() const { return i < src.size() ? src[i] : '\0'; }
    char get() {
        char ch = src[i++];
        if (ch == '\n') {
            pos.line++;
            pos.col = 1;
        } else {
            pos.col++;
        }
        return ch;
    }

    void skip_space() {
        while (i < src.size()) {
            char ch = peek();
            if (ch == '#') {
                while (i < src.size() && peek() != '\n') get();
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                get();
            } else {
                break;
            }
        }
    }

    Token next() {
        skip_space();
        Token t;
        t.pos = pos;
        if (i >= src.size()) return t;
        char ch = peek();
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            t.kind = Tok::Number;
            long v = 0;
            int digits = 0;
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(peek()))) {
                if (++digits > 12) throw SyntaxError(t.pos, "integer literal too long");
                v = v * 10 + (get() - '0');
            }
            t.number = v;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            t.kind = Tok::Name;
            std::string s;
            while (i < src.size()) {
                char c2 = peek();
                if (std::isalnum(static_cast<unsigned char>(c2)) || c2 == '_' || c2 == '\'')
                    s += get();
                else
                    break;
            }
            t.text = s;
            return t;
        }
        if (ch == '"') {
            get();
            t.kind = Tok::String;
            std::string s;
            while (i < src.size() && peek() != '"') {
                if (peek() == '\n') throw SyntaxError(t.pos, "unterminated string");
                s += get();
            }
            if (i >= src.size()) throw SyntaxError(t.pos, "unterminated string");
            get();
            t.text = s;
            return t;
        }
        get();
        switch (ch) {
            case '(': t.kind = Tok::LParen; return t;
            case ')': t.kind = Tok::RParen; return t;
            case '[': t.kind = Tok::LBracket; return t;
            case ']': t.kind = Tok::RBracket; return t;
            case '{': t.kind = Tok::LBrace; return t;
            case '}': t.kind = Tok::RBrace; return t;
            case ',': t.kind = Tok::Comma; return t;
            case ':': t.kind = Tok::Colon; return t;
            case '+': t.kind = Tok::Plus; return t;
            case '*': t.kind = Tok::Star; return t;
            case '/': t.kind = Tok::Slash; return t;
            case '^': t.kind = Tok::Caret; return t;
            case '@':
                // only @inf
                for (const char* want = "inf"; *want; ++want) {
                    if (i >= src.size() || peek() != *want)
                        throw SyntaxError(t.pos, "expected '@inf'");
                    get();
                }
                t.kind = Tok::AtInf;
                return t;
            case '-':
                if (peek() == '>') {
                    get();
                    t.kind = Tok::Arrow;
                    return t;
                }
                t.kind = Tok::Minus;
                return t;
            case '=':
                if (peek() == '=') {
                    get();
                    t.kind = Tok::EqEq;
                    return t;
                }
                t.kind = Tok::Equal;
                return t;
            default:
                throw SyntaxError(t.pos, std::string("unexpected character '") + ch + "'");
        }
    }
};

struct Parser {
    Lexer lex;
    Token tok;

    explicit Parser(const std::string& s) : lex(s) { advance(); }

    void advance() { tok = lex.next(); }

    bool at_name(const char* kw) const { return tok.kind == Tok::Name && tok.text == kw; }

    void expect(Tok k, const char* what) {
        if (tok.kind != k) throw SyntaxError(tok.pos, std::string("expected ") + what);
        advance();
    }

    std::string expect_name(const char* what) {
        if (tok.kind != Tok::Name) throw SyntaxError(tok.pos, std::string("expected ") + what);
        std::string s = tok.text;
        advance();
        return s;
    }

    long expect_number(const char* what) {
        if (tok.kind != Tok::Number)
            throw SyntaxError(tok.pos, std::string("expected ") + what);
        long v = tok.number;
        advance();
        return v;
    }

    static ExprPtr mk(Expr::Kind k, Pos p) {
        auto e = std::make_unique<Expr>();
        e->kind = k;
        e->pos = p;
        return e;
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (tok.kind == Tok::Plus || tok.kind == Tok::Minus) {
            Expr::Kind k = tok.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
            Pos p = tok.pos;
            advance();
            ExprPtr rhs = parse_term();
            ExprPtr node = mk(k, p);
            node->args.push_back(std::move(lhs));
            node->args.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_split_factor() {
        ExprPtr lhs = parse_unary();
        while (tok.kind == Tok::Slash) {
            Pos p = tok.pos;
            advance();
            ExprPtr rhs = parse_unary();
            ExprPtr node = mk(Expr::Kind::Div, p);
            node->args.push_back(std::move(lhs));
            node->args.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_unary();
        while (tok.kind == Tok::Star || tok.kind == Tok::Slash) {
            Expr::Kind k = tok.kind == Tok::Star ? Expr::Kind::Mul : Expr::Kind::Div;
            Pos p = tok.pos;
            advance();
            ExprPtr rhs = parse_unary();
            ExprPtr node = mk(k, p);
            node->args.push_back(std::move(lhs));
            node->args.push_back(std::move(rhs));
            lhs = std::move(node);
        }
        return lhs;
    }

    ExprPtr parse_unary() {
        if (tok.kind == Tok::Minus) {
            Pos p = tok.pos;
            advance();
            ExprPtr e = parse_unary();
            ExprPtr node = mk(Expr::Kind::Neg, p);
            node->args.push_back(std::move(e));
            return node;
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (tok.kind == Tok::Caret) {
            Pos p = tok.pos;
            advance();
            int sign = 1;
            if (tok.kind == Tok::Minus) {
                sign = -1;
                advance();
            }
            long n = expect_number("integer exponent");
            ExprPtr node = mk(Expr::Kind::Pow, p);
            node->exponent = static_cast<int>(sign * n);
            node->args.push_back(std::move(e));
            e = std::move(node);
        }
        return e;
    }

    ExprPtr parse_primary() {
        Pos p = tok.pos;
        if (tok.kind == Tok::Number) {
            ExprPtr e = mk(Expr::Kind::Number, p);
            e->number = tok.number;
            advance();
            return e;
        }
        if (tok.kind == Tok::LParen) {
            advance();
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (tok.kind == Tok::Name) {
            std::string name = tok.text;
            advance();
            if (name.size() == 1) {
                if (auto s = sym_from_char(name[0])) {
                    ExprPtr e = mk(Expr::Kind::Symbol, p);
                    e->symbol = *s;
                    return e;
                }
            }
            if (tok.kind == Tok::LParen) {
                advance();
                ExprPtr arg = parse_expr();
                expect(Tok::RParen, "')'");
                ExprPtr e = mk(Expr::Kind::Call, p);
                e->name = name;
                e->args.push_back(std::move(arg));
                return e;
            }
            ExprPtr e = mk(Expr::Kind::Name, p);
            e->name = name;
            return e;
        }
        throw SyntaxError(p, "expected an expression");
    }

    std::vector<ExprPtr> parse_tuple() {
        expect(Tok::LBracket, "'['");
        std::vector<ExprPtr> out;
        out.push_back(parse_expr());
        while (tok.kind == Tok::Comma) {
            advance();
            out.push_back(parse_expr());
        }
        expect(Tok::RBracket, "']'");
        return out;
    }

    SourceRef parse_source_ref() {
        SourceRef ref;
        ref.pos = tok.pos;
        if (tok.kind == Tok::LBracket) {
            ref.tuple = parse_tuple();
        } else {
            ref.named = expect_name("cycle name or tuple");
        }
        return ref;
    }

    void parse_file(SourceFile& sf) {
        while (tok.kind != Tok::End) {
            if (at_name("def")) {
                advance();
                Definition d;
                d.pos = tok.pos;
                d.name = expect_name("definition name");
                if (tok.kind == Tok::LParen) {
                    advance();
                    std::string v = expect_name("formal parameter");
                    auto s = v.size() == 1 ? sym_from_char(v[0]) : std::nullopt;
                    if (!s || (*s != Sym::x && *s != Sym::y))
                        throw SyntaxError(d.pos, "formal parameter must be x or y");
                    d.formal = *s;
                    expect(Tok::RParen, "')'");
                }
                expect(Tok::Equal, "'='");
                d.body = parse_expr();
                sf.defs.push_back(std::move(d));
            } else if (at_name("cycle")) {
                advance();
                CycleDef c;
                c.pos = tok.pos;
                c.name = expect_name("cycle name");
                expect(Tok::Equal, "'='");
                c.coords = parse_tuple();
                if (at_name("from")) {
                    advance();
                    if (tok.kind != Tok::String)
                        throw SyntaxError(tok.pos, "expected provenance string");
                    c.provenance = tok.text;
                    advance();
                }
                sf.cycles.push_back(std::move(c));
            } else if (at_name("hypotheses")) {
                Pos p = tok.pos;
                advance();
                HypothesesBlock hb;
                hb.pos = p;
                if (at_name("nondegeneracy")) {
                    advance();
                    hb.from_relation = true;
                } else if (tok.kind == Tok::LBrace) {
                    advance();
                    hb.from_relation = false;
                    hb.explicit_polys.push_back(parse_expr());
                    while (tok.kind == Tok::Comma) {
                        advance();
                        hb.explicit_polys.push_back(parse_expr());
                    }
                    expect(Tok::RBrace, "'}'");
                } else {
                    throw SyntaxError(tok.pos, "expected 'nondegeneracy' or '{'");
                }
                if (sf.hypotheses)
                    throw SyntaxError(p, "duplicate hypotheses block");
                sf.hypotheses = std::move(hb);
            } else if (at_name("note")) {
                advance();
                if (tok.kind != Tok::String) throw SyntaxError(tok.pos, "expected string");
                sf.notes.push_back(tok.text);
                advance();
            } else if (at_name("check")) {
                advance();
                parse_check(sf);
            } else {
                throw SyntaxError(tok.pos,
                                  "expected 'def', 'cycle', 'hypotheses', 'check' or 'note'");
            }
        }
    }

    void parse_check(SourceFile& sf) {
        if (at_name("cycle")) {
            advance();
            CycleCheck cc;
            cc.pos = tok.pos;
            cc.cycle = expect_name("cycle name");
            while (at_name("face")) {
                advance();
                FaceRow row;
                row.pos = tok.pos;
                row.index = static_cast<int>(expect_number("coordinate index"));
                if (tok.kind == Tok::Number && tok.number == 0) {
                    row.eps = FaceEps::Zero;
                    advance();
                } else if (at_name("inf")) {
                    row.eps = FaceEps::Infinity;
                    advance();
                } else {
                    throw SyntaxError(tok.pos, "expected '0' or 'inf'");
                }
                if (at_name("none")) {
                    advance();
                    row.expect_empty = true;
                    cc.rows.push_back(std::move(row));
                    continue;
                }
                expect(Tok::Equal, "'='");
                row.verdicts.push_back(parse_verdict());
                while (tok.kind == Tok::Comma) {
                    advance();
                    row.verdicts.push_back(parse_verdict());
                }
                cc.rows.push_back(std::move(row));
            }
            sf.cycle_checks.push_back(std::move(cc));
            return;
        }
        if (at_name("identity")) {
            advance();
            IdentityCheck ic;
            ic.pos = tok.pos;
            // Optional label: NAME ':'
            if (tok.kind == Tok::Name) {
                auto save_i = lex.i;
                Pos save_pos = lex.pos;
                Token save_tok = tok;
                std::string label = tok.text;
                advance();
                if (tok.kind == Tok::Colon) {
                    advance();
                    ic.label = label;
                } else {
                    lex.i = save_i;
                    lex.pos = save_pos;
                    tok = save_tok;
                }
            }
            ic.lhs = parse_expr();
            expect(Tok::EqEq, "'=='");
            ic.rhs = parse_expr();
            sf.identity_checks.push_back(std::move(ic));
            return;
        }
        if (at_name("decomposable")) {
            advance();
            DecompCheck dc;
            dc.pos = tok.pos;
            dc.cycle = expect_name("cycle name");
            expect(Tok::Equal, "'='");
            dc.tags.push_back(parse_ctag());
            while (tok.kind == Tok::Caret) {
                advance();
                dc.tags.push_back(parse_ctag());
            }
            sf.decomp_checks.push_back(std::move(dc));
            return;
        }
        if (at_name("not_decomposable")) {
            advance();
            DecompCheck dc;
            dc.pos = tok.pos;
            dc.expect_decomposable = false;
            dc.cycle = expect_name("cycle name");
            sf.decomp_checks.push_back(std::move(dc));
            return;
        }
        if (at_name("relation")) {
            advance();
            RelationCheck rc;
            rc.pos = tok.pos;
            if (tok.kind == Tok::Name) {
                auto save_i = lex.i;
                Pos save_pos = lex.pos;
                Token save_tok = tok;
                std::string label = tok.text;
                advance();
                if (tok.kind == Tok::Colon) {
                    advance();
                    rc.label = label;
                } else {
                    lex.i = save_i;
                    lex.pos = save_pos;
                    tok = save_tok;
                }
            }
            std::string rule = expect_name("rule name");
            if (rule == "l31i") rc.rule = RelationRule::L31i;
            else if (rule == "l31ii_a") rc.rule = RelationRule::L31iiA;
            else if (rule == "l31ii_b") rc.rule = RelationRule::L31iiB;
            else if (rule == "l31ii_c1") rc.rule = RelationRule::L31iiC1;
            else if (rule == "l31ii_c2") rc.rule = RelationRule::L31iiC2;
            else if (rule == "l32i") rc.rule = RelationRule::L32i;
            else if (rule == "l32ii") rc.rule = RelationRule::L32ii;
            else throw SyntaxError(rc.pos, "unknown rule '" + rule + "'");
            if (!at_name("on")) throw SyntaxError(tok.pos, "expected 'on'");
            advance();
            rc.first = parse_source_ref();
            if (at_name("with")) {
                advance();
                rc.second = parse_source_ref();
            }
            if (at_name("slot")) {
                advance();
                rc.slot = static_cast<int>(expect_number("slot number"));
            }
            if (!at_name("split")) throw SyntaxError(tok.pos, "expected 'split'");
            advance();
            // The first factor binds '/' but not '*'; parenthesize products.
            rc.g = parse_split_factor();
            if (tok.kind != Tok::Star)
                throw SyntaxError(tok.pos, "expected '*' between the two factors");
            advance();
            rc.h = parse_expr();
            expect(Tok::Arrow, "'->'");
            expect(Tok::LBracket, "'['");
            rc.targets.push_back(parse_source_ref());
            while (tok.kind == Tok::Comma) {
                advance();
                rc.targets.push_back(parse_source_ref());
            }
            expect(Tok::RBracket, "']'");
            sf.relation_checks.push_back(std::move(rc));
            return;
        }
        throw SyntaxError(tok.pos,
                          "expected 'cycle', 'identity', 'decomposable', "
                          "'not_decomposable' or 'relation'");
    }

    std::pair<int, int> parse_ctag() {
        // C<codim>(F,<size>)
        Pos p = tok.pos;
        std::string c = expect_name("tag like C1");
        if (c.size() < 2 || c[0] != 'C') throw SyntaxError(p, "expected tag like C1(F,2)");
        int codim = std::stoi(c.substr(1));
        expect(Tok::LParen, "'('");
        std::string f = expect_name("'F'");
        if (f != "F") throw SyntaxError(p, "expected tag like C1(F,2)");
        expect(Tok::Comma, "','");
        int size = static_cast<int>(expect_number("group size"));
        expect(Tok::RParen, "')'");
        return {codim, size};
    }

    ExpectedVerdict parse_verdict() {
        ExpectedVerdict v;
        v.pos = tok.pos;
        if (at_name("deg")) {
            advance();
            v.kind = ExpectedVerdict::Kind::Degenerate;
            if (tok.kind == Tok::AtInf) {
                advance();
                v.at_infinity = true;
            }
            std::string t = expect_name("hyperplane tag like t3");
            if (t.size() < 2 || t[0] != 't')
                throw SyntaxError(v.pos, "expected hyperplane tag like t3");
            v.hyperplane = std::stoi(t.substr(1));
            return v;
        }
        if (at_name("pt")) {
            advance();
            v.kind = ExpectedVerdict::Kind::Point;
            v.tuple = parse_tuple();
            return v;
        }
        v.kind = ExpectedVerdict::Kind::Subcycle;
        if (tok.kind == Tok::AtInf) {
            advance();
            v.at_infinity = true;
        }
        if (tok.kind == Tok::LBracket) {
            v.tuple = parse_tuple();
        } else {
            v.named = expect_name("cycle name or tuple");
        }
        return v;
    }
};

int prec_of(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

} // namespace

std::string Expr::str(int parent_prec) const {
    std::ostringstream os;
    const int my = prec_of(kind);
    switch (kind) {
        case Kind::Number: os << number; break;
        case Kind::Symbol: os << sym_name(symbol); break;
        case Kind::Name: os << name; break;
        case Kind::Call: os << name << "(" << args[0]->str() << ")"; break;
        case Kind::Add: os << args[0]->str(my) << " + " << args[1]->str(my + 1); break;
        case Kind::Sub: os << args[0]->str(my) << " - " << args[1]->str(my + 1); break;
        case Kind::Mul: os << args[0]->str(my) << "*" << args[1]->str(my + 1); break;
        case Kind::Div: os << args[0]->str(my) << "/" << args[1]->str(my + 1); break;
        case Kind::Neg: os << "-" << args[0]->str(my); break;
        case Kind::Pow:
            os << args[0]->str(my + 1) << "^" << exponent;
            break;
    }
    if (my < parent_prec) return "(" + os.str() + ")";
    return os.str();
}

SourceFile parse(const std::string& text) {
    SourceFile sf;
    Parser p(text);
    p.parse_file(sf);
    return sf;
}

SourceFile parse_files(const std::vector<std::pair<std::string, std::string>>& named_texts) {
    SourceFile merged;
    for (const auto& [name, text] : named_texts) {
        SourceFile sf;
        try {
            Parser p(text);
            p.parse_file(sf);
        } catch (SyntaxError& e) {
            throw Error(name + ": " + e.what());
        }
        for (auto& d : sf.defs) merged.defs.push_back(std::move(d));
        for (auto& c : sf.cycles) merged.cycles.push_back(std::move(c));
        for (auto& c : sf.cycle_checks) merged.cycle_checks.push_back(std::move(c));
        for (auto& c : sf.identity_checks) merged.identity_checks.push_back(std::move(c));
        for (auto& c : sf.decomp_checks) merged.decomp_checks.push_back(std::move(c));
        for (auto& c : sf.relation_checks) merged.relation_checks.push_back(std::move(c));
        for (auto& n : sf.notes) merged.notes.push_back(std::move(n));
        if (sf.hypotheses) {
            if (merged.hypotheses) throw Error(name + ": duplicate hypotheses block");
            merged.hypotheses = std::move(sf.hypotheses);
        }
    }
    return merged;
}

namespace {

std::string verdict_str(const ExpectedVerdict& v) {
    std::ostringstream os;
    switch (v.kind) {
        case ExpectedVerdict::Kind::Degenerate:
            os << "deg " << (v.at_infinity ? "@inf " : "") << "t" << v.hyperplane;
            break;
        case ExpectedVerdict::Kind::Point: {
            os << "pt [";
            for (std::size_t i = 0; i < v.tuple.size(); ++i) {
                if (i) os << ", ";
                os << v.tuple[i]->str();
            }
            os << "]";
            break;
        }
        case ExpectedVerdict::Kind::Subcycle: {
            if (v.at_infinity) os << "@inf ";
            if (!v.named.empty()) {
                os << v.named;
            } else {
                os << "[";
                for (std::size_t i = 0; i < v.tuple.size(); ++i) {
                    if (i) os << ", ";
                    os << v.tuple[i]->str();
                }
                os << "]";
            }
            break;
        }
    }
    return os.str();
}

std::string ref_str(const SourceRef& r) {
    if (!r.named.empty()) return r.named;
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r.tuple.size(); ++i) {
        if (i) os << ", ";
        os << r.tuple[i]->str();
    }
    os << "]";
    return os.str();
}

} // namespace

std::string SourceFile::pretty() const {
    std::ostringstream os;
    for (const auto& d : defs) {
        os << "def " << d.name;
        if (d.formal) os << "(" << sym_name(*d.formal) << ")";
        os << " = " << d.body->str() << "\n";
    }
    if (hypotheses) {
        if (hypotheses->from_relation) {
            os << "hypotheses nondegeneracy\n";
        } else {
            os << "hypotheses { ";
            for (std::size_t i = 0; i < hypotheses->explicit_polys.size(); ++i) {
                if (i) os << ", ";
                os << hypotheses->explicit_polys[i]->str();
            }
            os << " }\n";
        }
    }
    for (const auto& c : cycles) {
        os << "cycle " << c.name << " = [";
        for (std::size_t i = 0; i < c.coords.size(); ++i) {
            if (i) os << ", ";
            os << c.coords[i]->str();
        }
        os << "]";
        if (!c.provenance.empty()) os << " from \"" << c.provenance << "\"";
        os << "\n";
    }
    for (const auto& n : notes) os << "note \"" << n << "\"\n";
    for (const auto& cc : cycle_checks) {
        os << "check cycle " << cc.cycle << "\n";
        for (const auto& row : cc.rows) {
            os << "  face " << row.index << " " << eps_name(row.eps);
            if (row.expect_empty) {
                os << " none\n";
                continue;
            }
            os << " = ";
            for (std::size_t i = 0; i < row.verdicts.size(); ++i) {
                if (i) os << ", ";
                os << verdict_str(row.verdicts[i]);
            }
            os << "\n";
        }
    }
    for (const auto& ic : identity_checks) {
        os << "check identity ";
        if (!ic.label.empty()) os << ic.label << ": ";
        os << ic.lhs->str() << " == " << ic.rhs->str() << "\n";
    }
    for (const auto& dc : decomp_checks) {
        if (!dc.expect_decomposable) {
            os << "check not_decomposable " << dc.cycle << "\n";
            continue;
        }
        os << "check decomposable " << dc.cycle << " = ";
        for (std::size_t i = 0; i < dc.tags.size(); ++i) {
            if (i) os << " ^ ";
            os << "C" << dc.tags[i].first << "(F," << dc.tags[i].second << ")";
        }
        os << "\n";
    }
    for (const auto& rc : relation_checks) {
        os << "check relation ";
        if (!rc.label.empty()) os << rc.label << ": ";
        os << rule_name(rc.rule) << " on " << ref_str(rc.first);
        if (rc.second) os << " with " << ref_str(*rc.second);
        if (rc.slot) os << " slot " << rc.slot;
        os << " split " << rc.g->str(3) << " * " << rc.h->str(3) << " -> [";
        for (std::size_t i = 0; i < rc.targets.size(); ++i) {
            if (i) os << ", ";
            os << ref_str(rc.targets[i]);
        }
        os << "]\n";
    }
    return os.str();
}

namespace {

struct Elaborator {
    const SourceFile& sf;
    Catalog cat;

    RatFunc eval_expr(const Expr& e, const std::optional<Sym>& formal) {
        switch (e.kind) {
            case Expr::Kind::Number:
                return RatFunc::constant(make_rat(e.number));
            case Expr::Kind::Symbol:
                if (formal && (e.symbol == Sym::x || e.symbol == Sym::y) && e.symbol != *formal)
                    throw SemanticError(e.pos,
                                        "a definition with a parameter may use only its "
                                        "own variable");
                return RatFunc::sym(e.symbol);
            case Expr::Kind::Name: {
                auto it = cat.def_values.find(e.name);
                if (it != cat.def_values.end()) return it->second;
                if (cat.def_templates.count(e.name))
                    throw SemanticError(e.pos, "'" + e.name + "' needs an argument");
                throw SemanticError(e.pos, "unknown name '" + e.name + "'");
            }
            case Expr::Kind::Call: {
                auto it = cat.def_templates.find(e.name);
                if (it == cat.def_templates.end()) {
                    if (cat.def_values.count(e.name))
                        throw SemanticError(e.pos, "'" + e.name + "' takes no argument");
                    throw SemanticError(e.pos, "unknown name '" + e.name + "'");
                }
                RatFunc arg = eval_expr(*e.args[0], formal);
                return it->second.second.substituted(it->second.first, arg);
            }
            case Expr::Kind::Add:
                return eval_expr(*e.args[0], formal) + eval_expr(*e.args[1], formal);
            case Expr::Kind::Sub:
                return eval_expr(*e.args[0], formal) - eval_expr(*e.args[1], formal);
            case Expr::Kind::Mul:
                return eval_expr(*e.args[0], formal) * eval_expr(*e.args[1], formal);
            case Expr::Kind::Div: {
                RatFunc den = eval_expr(*e.args[1], formal);
                if (den.is_zero()) throw SemanticError(e.pos, "division by zero");
                return eval_expr(*e.args[0], formal) / den;
            }
            case Expr::Kind::Neg:
                return -eval_expr(*e.args[0], formal);
            case Expr::Kind::Pow: {
                RatFunc base = eval_expr(*e.args[0], formal);
                if (base.is_zero() && e.exponent < 0)
                    throw SemanticError(e.pos, "division by zero");
                return base.pow(e.exponent);
            }
        }
        throw SemanticError(e.pos, "malformed expression");
    }

    void run() {
        for (const auto& d : sf.defs) {
            if (cat.def_values.count(d.name) || cat.def_templates.count(d.name))
                throw SemanticError(d.pos, "duplicate name '" + d.name + "'");
            if (d.name.size() == 1 && sym_from_char(d.name[0]))
                throw SemanticError(d.pos, "'" + d.name + "' is a reserved symbol");
            RatFunc v = eval_expr(*d.body, d.formal);
            if (d.formal) cat.def_templates.emplace(d.name, std::make_pair(*d.formal, v));
            else cat.def_values.emplace(d.name, v);
        }
        for (const auto& c : sf.cycles) {
            if (cat.cycles.count(c.name))
                throw SemanticError(c.pos, "duplicate cycle '" + c.name + "'");
            cat.cycles.emplace(c.name,
                               build_cycle(c.coords, c.name, c.provenance, c.pos));
            cat.cycle_order.push_back(c.name);
        }
        auto check_cycle_name = [&](const std::string& n, Pos pos) {
            if (!cat.cycles.count(n))
                throw SemanticError(pos, "unknown cycle '" + n + "' in assertion");
        };
        for (const auto& cc : sf.cycle_checks) check_cycle_name(cc.cycle, cc.pos);
        for (const auto& dc : sf.decomp_checks) check_cycle_name(dc.cycle, dc.pos);
        for (const auto& rc : sf.relation_checks) {
            if (!rc.first.named.empty()) check_cycle_name(rc.first.named, rc.first.pos);
            if (rc.second && !rc.second->named.empty())
                check_cycle_name(rc.second->named, rc.second->pos);
            for (const auto& t : rc.targets)
                if (!t.named.empty()) check_cycle_name(t.named, t.pos);
        }
        for (const auto& cc : sf.cycle_checks) {
            for (const auto& row : cc.rows) {
                for (const auto& v : row.verdicts) {
                    if (v.kind == ExpectedVerdict::Kind::Subcycle && !v.named.empty())
                        check_cycle_name(v.named, v.pos);
                    if (!v.tuple.empty()) build_cycle(v.tuple, "", "", v.pos);
                }
            }
        }
    }

    Cycle build_cycle(const std::vector<ExprPtr>& coords, const std::string& name,
                      const std::string& provenance, Pos pos) {
        std::vector<CoordFunc> cs;
        for (const auto& e : coords) {
            RatFunc f = eval_expr(*e, std::nullopt);
            if (f.is_zero())
                throw SemanticError(e->pos, "coordinate is identically zero");
            try {
                cs.push_back(CoordFunc::factor(f));
            } catch (const NonBilinearIrreducible& ex) {
                throw SemanticError(e->pos, std::string("coordinate is not a product of "
                                                        "bilinear factors: ") +
                                                ex.offending.str());
            }
        }
        if (cs.size() < 1 || cs.size() > 5)
            throw SemanticError(pos, "cycle arity must be between 1 and 5");
        return Cycle::make(name, std::move(cs), provenance);
    }
};

} // namespace

RatFunc Catalog::eval(const Expr& e) const {
    Elaborator el{*source, {}};
    el.cat.def_values = def_values;
    el.cat.def_templates = def_templates;
    return el.eval_expr(e, std::nullopt);
}

Cycle Catalog::eval_tuple(const std::vector<ExprPtr>& coords, const std::string& name,
                          const std::string& provenance, Pos pos) const {
    Elaborator el{*source, {}};
    el.cat.def_values = def_values;
    el.cat.def_templates = def_templates;
    return el.build_cycle(coords, name, provenance, pos);
}

Cycle Catalog::resolve(const SourceRef& ref) const {
    if (!ref.named.empty()) {
        auto it = cycles.find(ref.named);
        if (it == cycles.end())
            throw SemanticError(ref.pos, "unknown cycle '" + ref.named + "'");
        return it->second;
    }
    return eval_tuple(ref.tuple, "", "", ref.pos);
}

Catalog elaborate(const SourceFile& sf) {
    Elaborator el{sf, {}};
    el.run();
    Catalog cat = std::move(el.cat);
    cat.source = &sf;
    return cat;
}

} // namespace cubecert::dsl
