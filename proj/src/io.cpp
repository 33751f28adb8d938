#include "apta/io.hpp"

#include <cassert>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace apta {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
    Ident,
    String,
    Number,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Arrow,
    AndAnd,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    Plus,
    Minus,
    Star,
    End
};

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

class Lexer {
public:
    Lexer(const std::string& text, std::string origin)
        : text_(text), origin_(std::move(origin)) {
        next();
    }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        next();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error("PARSE", origin_ + ":" + std::to_string(tok_.line) + ":" +
                                 std::to_string(tok_.col) + ": " + msg);
    }

    Token expect(Tok kind, const std::string& what) {
        if (tok_.kind != kind) fail("expected " + what);
        return take();
    }

    bool accept(Tok kind) {
        if (tok_.kind != kind) return false;
        next();
        return true;
    }

    bool accept_word(const std::string& w) {
        if (tok_.kind == Tok::Ident && tok_.text == w) {
            next();
            return true;
        }
        return false;
    }

private:
    const std::string& text_;
    std::string origin_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    int cur() const { return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1; }

    void bump() {
        if (cur() == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void next() {
        for (;;) {
            while (cur() == ' ' || cur() == '\t' || cur() == '\r' || cur() == '\n') bump();
            if (cur() == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
                while (cur() != -1 && cur() != '\n') bump();
                continue;
            }
            if (cur() == '#') {
                while (cur() != -1 && cur() != '\n') bump();
                continue;
            }
            break;
        }
        tok_.line = line_;
        tok_.col = col_;
        tok_.text.clear();
        int c = cur();
        if (c == -1) {
            tok_.kind = Tok::End;
            return;
        }
        auto two = [&](char a, char b) {
            return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
        };
        if (two('-', '>')) {
            bump();
            bump();
            tok_.kind = Tok::Arrow;
            return;
        }
        if (two('&', '&')) {
            bump();
            bump();
            tok_.kind = Tok::AndAnd;
            return;
        }
        if (two('<', '=')) {
            bump();
            bump();
            tok_.kind = Tok::Le;
            return;
        }
        if (two('>', '=')) {
            bump();
            bump();
            tok_.kind = Tok::Ge;
            return;
        }
        if (two('=', '=')) {
            bump();
            bump();
            tok_.kind = Tok::EqEq;
            return;
        }
        switch (c) {
            case '{': bump(); tok_.kind = Tok::LBrace; return;
            case '}': bump(); tok_.kind = Tok::RBrace; return;
            case '(': bump(); tok_.kind = Tok::LParen; return;
            case ')': bump(); tok_.kind = Tok::RParen; return;
            case '[': bump(); tok_.kind = Tok::LBracket; return;
            case ']': bump(); tok_.kind = Tok::RBracket; return;
            case ';': bump(); tok_.kind = Tok::Semi; return;
            case ',': bump(); tok_.kind = Tok::Comma; return;
            case '<': bump(); tok_.kind = Tok::Lt; return;
            case '>': bump(); tok_.kind = Tok::Gt; return;
            case '+': bump(); tok_.kind = Tok::Plus; return;
            case '-': bump(); tok_.kind = Tok::Minus; return;
            case '*': bump(); tok_.kind = Tok::Star; return;
            default: break;
        }
        if (c == '"') {
            bump();
            while (cur() != '"') {
                if (cur() == -1) fail("unterminated string");
                if (cur() == '\\') bump();
                tok_.text.push_back(static_cast<char>(cur()));
                bump();
            }
            bump();
            tok_.kind = Tok::String;
            return;
        }
        if (std::isdigit(c)) {
            while (std::isdigit(cur())) {
                tok_.text.push_back(static_cast<char>(cur()));
                bump();
            }
            if (cur() == '.') {
                tok_.text.push_back('.');
                bump();
                if (!std::isdigit(cur())) fail("malformed decimal literal");
                while (std::isdigit(cur())) {
                    tok_.text.push_back(static_cast<char>(cur()));
                    bump();
                }
            } else if (cur() == '/') {
                tok_.text.push_back('/');
                bump();
                if (!std::isdigit(cur())) fail("malformed fraction literal");
                while (std::isdigit(cur())) {
                    tok_.text.push_back(static_cast<char>(cur()));
                    bump();
                }
            }
            tok_.kind = Tok::Number;
            return;
        }
        if (std::isalpha(c) || c == '_') {
            while (std::isalnum(cur()) || cur() == '_' || cur() == '\'' || cur() == '.') {
                tok_.text.push_back(static_cast<char>(cur()));
                bump();
            }
            tok_.kind = Tok::Ident;
            return;
        }
        fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(const std::string& text, const std::string& origin) : lx_(text, origin) {}

    Model run() {
        Token kind = lx_.expect(Tok::Ident, "model kind (pta/apta/peca/apeca)");
        if (kind.text == "pta")
            m_.kind = ModelKind::Pta;
        else if (kind.text == "apta")
            m_.kind = ModelKind::Apta;
        else if (kind.text == "peca")
            m_.kind = ModelKind::Peca;
        else if (kind.text == "apeca")
            m_.kind = ModelKind::Apeca;
        else
            lx_.fail("unknown model kind '" + kind.text + "'");
        if (lx_.peek().kind == Tok::Ident || lx_.peek().kind == Tok::String)
            m_.name = lx_.take().text;
        lx_.expect(Tok::LBrace, "'{'");
        while (true) {
            if (lx_.accept_word("actions")) {
                for (const std::string& n : ident_list()) m_.add_action(n);
                lx_.expect(Tok::Semi, "';'");
            } else if (lx_.accept_word("clocks")) {
                for (const std::string& n : ident_list()) m_.add_clock(n);
                lx_.expect(Tok::Semi, "';'");
            } else if (lx_.accept_word("aps")) {
                if (lx_.peek().kind == Tok::Ident)
                    for (const std::string& n : ident_list()) m_.add_prop(n);
                lx_.expect(Tok::Semi, "';'");
            } else {
                break;
            }
        }
        while (true) {
            bool init = lx_.accept_word("init");
            if (init && lx_.peek().kind == Tok::Ident && lx_.peek().text != "location")
                lx_.fail("expected 'location' after 'init'");
            if (!init && !(lx_.peek().kind == Tok::Ident && lx_.peek().text == "location")) break;
            lx_.accept_word("location");
            parse_location(init);
        }
        while (lx_.peek().kind == Tok::Ident && lx_.peek().text == "edge") {
            lx_.take();
            parse_edge();
        }
        lx_.expect(Tok::RBrace, "'}'");
        if (m_.initial < 0 && !m_.locations.empty()) lx_.fail("no init location");
        return std::move(m_);
    }

private:
    Lexer lx_;
    Model m_;

    std::vector<std::string> ident_list() {
        std::vector<std::string> out;
        out.push_back(lx_.expect(Tok::Ident, "identifier").text);
        while (lx_.accept(Tok::Comma)) out.push_back(lx_.expect(Tok::Ident, "identifier").text);
        return out;
    }

    std::string loc_name() {
        if (lx_.peek().kind == Tok::String) return lx_.take().text;
        return lx_.expect(Tok::Ident, "location name").text;
    }

    Rational number() {
        Token t = lx_.expect(Tok::Number, "rational literal");
        return Rational::parse(t.text);
    }

    void parse_location(bool init) {
        std::string name = loc_name();
        if (m_.find_location(name) >= 0) lx_.fail("duplicate location " + name);
        std::set<std::set<PropId>> val;
        lx_.expect(Tok::LBrace, "'{'");
        if (lx_.peek().kind == Tok::LBrace) {
            val.insert(valset());
            while (lx_.accept(Tok::Comma)) val.insert(valset());
        }
        lx_.expect(Tok::RBrace, "'}'");
        LocationId l = m_.add_location(name, std::move(val));
        if (init) {
            if (m_.initial >= 0) lx_.fail("multiple init locations");
            m_.initial = l;
        }
        lx_.accept(Tok::Semi);
    }

    std::set<PropId> valset() {
        lx_.expect(Tok::LBrace, "'{'");
        std::set<PropId> out;
        if (lx_.peek().kind == Tok::Ident) {
            for (const std::string& n : ident_list()) {
                int p = m_.find_prop(n);
                if (p < 0) lx_.fail("unknown proposition " + n);
                out.insert(p);
            }
        }
        lx_.expect(Tok::RBrace, "'}'");
        return out;
    }

    Cmp cmp_token() {
        switch (lx_.peek().kind) {
            case Tok::Lt: lx_.take(); return Cmp::Lt;
            case Tok::Le: lx_.take(); return Cmp::Le;
            case Tok::Gt: lx_.take(); return Cmp::Gt;
            case Tok::Ge: lx_.take(); return Cmp::Ge;
            default: lx_.fail("expected comparison");
        }
    }

    Guard parse_guard() {
        Guard g;
        if (lx_.accept_word("true")) return g;
        for (;;) {
            if (lx_.peek().kind == Tok::Number) {
                // bound cmp clock
                Rational b = number();
                Cmp c = cmp_token();
                std::string x = lx_.expect(Tok::Ident, "clock").text;
                int clock = m_.find_clock(x);
                if (clock < 0) lx_.fail("unknown clock " + x);
                Cmp flipped;
                switch (c) {
                    case Cmp::Lt: flipped = Cmp::Gt; break;
                    case Cmp::Le: flipped = Cmp::Ge; break;
                    case Cmp::Gt: flipped = Cmp::Lt; break;
                    default: flipped = Cmp::Le; break;
                }
                add_atom(g, GuardAtom{clock, flipped, std::move(b)});
            } else {
                std::string x = lx_.expect(Tok::Ident, "clock").text;
                int clock = m_.find_clock(x);
                if (clock < 0) lx_.fail("unknown clock " + x);
                Cmp c = cmp_token();
                Rational b = number();
                add_atom(g, GuardAtom{clock, c, std::move(b)});
            }
            if (!lx_.accept(Tok::AndAnd)) break;
        }
        return g;
    }

    void add_atom(Guard& g, GuardAtom a) {
        try {
            g.add(std::move(a));
        } catch (const Error& e) {
            lx_.fail(e.what());
        }
    }

    void parse_edge() {
        Edge e;
        std::string src = loc_name();
        e.source = m_.find_location(src);
        if (e.source < 0) lx_.fail("unknown location " + src);
        if (lx_.accept_word("must"))
            e.modality = Modality::Must;
        else if (lx_.accept_word("may"))
            e.modality = Modality::May;
        else
            lx_.fail("expected 'must' or 'may'");
        std::string act = lx_.expect(Tok::Ident, "action").text;
        e.action = m_.find_action(act);
        if (e.action < 0) lx_.fail("unknown action " + act);
        if (lx_.accept_word("when")) e.guard = parse_guard();
        lx_.expect(Tok::LBrace, "'{'");
        std::vector<Rational> probs;
        bool any_prob = false, any_var = false;
        while (!lx_.accept(Tok::RBrace)) {
            std::string var;
            Rational prob;
            if (lx_.peek().kind == Tok::Number) {
                prob = number();
                any_prob = true;
            } else {
                var = lx_.expect(Tok::Ident, "branch variable or probability").text;
                any_var = true;
            }
            lx_.expect(Tok::Arrow, "'->'");
            std::string tgt = loc_name();
            int target = m_.find_location(tgt);
            if (target < 0) lx_.fail("unknown location " + tgt);
            SupportElem s;
            s.target = target;
            bool explicit_resets = false;
            if (lx_.accept_word("reset")) {
                explicit_resets = true;
                lx_.expect(Tok::LBrace, "'{'");
                if (lx_.peek().kind == Tok::Ident) {
                    for (const std::string& n : ident_list()) {
                        int c = m_.find_clock(n);
                        if (c < 0) lx_.fail("unknown clock " + n);
                        s.resets.insert(c);
                    }
                }
                lx_.expect(Tok::RBrace, "'}'");
            }
            if (!explicit_resets && kind_is_event_clock(m_.kind)) {
                int c = m_.find_clock("x_" + act);
                if (c >= 0) s.resets.insert(c);
            }
            lx_.expect(Tok::Semi, "';'");
            e.support.push_back(std::move(s));
            e.var_names.push_back(var);
            probs.push_back(std::move(prob));
        }
        if (any_prob && any_var) lx_.fail("mix of probabilities and branch variables");
        int dim = static_cast<int>(e.support.size());
        if (lx_.accept_word("where")) {
            if (any_prob) lx_.fail("'where' clause over literal probabilities");
            e.constraint = parse_constraint(dim, e.var_names);
        } else if (any_prob) {
            e.constraint = ProbConstraint::point(probs);
            e.raw_point = std::move(probs);
        } else {
            e.constraint = ProbConstraint::truth(dim);
        }
        lx_.expect(Tok::Semi, "';'");
        m_.edges.push_back(std::move(e));
    }

    ProbConstraint parse_constraint(int dim, const std::vector<std::string>& vars) {
        if (lx_.accept_word("false")) return ProbConstraint::falsity(dim);
        if (lx_.accept_word("true")) return ProbConstraint::truth(dim);
        if (lx_.accept_word("product")) {
            lx_.expect(Tok::LParen, "'('");
            Rational ml = number();
            lx_.expect(Tok::Comma, "','");
            Rational mr = number();
            lx_.expect(Tok::RParen, "')'");
            if (!ml.is_integer() || !mr.is_integer()) lx_.fail("product arity must be integral");
            int nl = static_cast<int>(ml.num().to_ll());
            int nr = static_cast<int>(mr.num().to_ll());
            if (nl * nr != dim) lx_.fail("product arity does not match branch count");
            std::vector<std::string> lv, rv;
            for (int i = 1; i <= nl; ++i) lv.push_back("a" + std::to_string(i));
            for (int i = 1; i <= nr; ++i) rv.push_back("b" + std::to_string(i));
            lx_.expect(Tok::LBracket, "'['");
            ProbConstraint left = parse_constraint(nl, lv);
            lx_.expect(Tok::RBracket, "']'");
            lx_.expect(Tok::LBracket, "'['");
            ProbConstraint right = parse_constraint(nr, rv);
            lx_.expect(Tok::RBracket, "']'");
            return ProbConstraint::product(std::move(left), std::move(right));
        }
        std::vector<Polytope> disjuncts;
        do {
            disjuncts.push_back(parse_polyblock(dim, vars));
        } while (lx_.accept_word("or"));
        return ProbConstraint::from_polytopes(dim, std::move(disjuncts));
    }

    Polytope parse_polyblock(int dim, const std::vector<std::string>& vars) {
        Polytope p;
        lx_.expect(Tok::LBrace, "'{'");
        if (!lx_.accept(Tok::RBrace)) {
            do {
                p.rows.push_back(parse_linrel(dim, vars));
            } while (lx_.accept(Tok::Comma));
            lx_.expect(Tok::RBrace, "'}'");
        }
        return p;
    }

    int var_index(const std::vector<std::string>& vars, const std::string& n) {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) return static_cast<int>(i);
        lx_.fail("unknown branch variable " + n);
    }

    // linexpr as (coefficients, constant)
    std::pair<QVector, Rational> parse_linexpr(int dim, const std::vector<std::string>& vars) {
        QVector coefs(dim, Rational(0));
        Rational constant(0);
        bool first = true;
        for (;;) {
            Rational sign(1);
            if (lx_.accept(Tok::Minus))
                sign = Rational(-1);
            else if (lx_.accept(Tok::Plus))
                sign = Rational(1);
            else if (!first)
                break;
            first = false;
            if (lx_.peek().kind == Tok::Number) {
                Rational c = number();
                if (lx_.accept(Tok::Star)) {
                    std::string v = lx_.expect(Tok::Ident, "branch variable").text;
                    coefs[var_index(vars, v)] += sign * c;
                } else {
                    constant += sign * c;
                }
            } else {
                std::string v = lx_.expect(Tok::Ident, "branch variable").text;
                coefs[var_index(vars, v)] += sign;
            }
            if (lx_.peek().kind != Tok::Plus && lx_.peek().kind != Tok::Minus) break;
        }
        return {std::move(coefs), std::move(constant)};
    }

    LinConstraint parse_linrel(int dim, const std::vector<std::string>& vars) {
        auto [lc, lk] = parse_linexpr(dim, vars);
        LinRel rel;
        bool flip = false;
        switch (lx_.peek().kind) {
            case Tok::Le: rel = LinRel::Le; break;
            case Tok::Ge:
                rel = LinRel::Le;
                flip = true;
                break;
            case Tok::EqEq: rel = LinRel::Eq; break;
            case Tok::Lt:
            case Tok::Gt:
                lx_.fail("strict probability bounds are not supported; use <= / >=");
            default: lx_.fail("expected <=, >= or ==");
        }
        lx_.take();
        auto [rc, rk] = parse_linexpr(dim, vars);
        LinConstraint row;
        row.rel = rel;
        row.coefs.assign(dim, Rational(0));
        for (int i = 0; i < dim; ++i) row.coefs[i] = flip ? rc[i] - lc[i] : lc[i] - rc[i];
        row.bound = flip ? lk - rk : rk - lk;
        return row;
    }
};

// ---------------------------------------------------------------------------
// Serializer
// ---------------------------------------------------------------------------

bool plain_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'' && c != '.')
            return false;
    // Keywords that would confuse the parser as location names.
    static const char* kw[] = {"location", "edge", "init", "must", "may", "when",
                               "where",    "true", "false", "reset", "product", "or"};
    for (const char* k : kw)
        if (s == k) return false;
    return true;
}

std::string quoted(const std::string& s) {
    if (plain_ident(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    out += "\"";
    return out;
}

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += xs[i];
    }
    return out;
}

std::string render_linexpr(const LinConstraint& row, const std::vector<std::string>& vars) {
    std::string lhs;
    bool first = true;
    for (size_t i = 0; i < row.coefs.size(); ++i) {
        const Rational& c = row.coefs[i];
        if (c.is_zero()) continue;
        Rational a = c;
        if (first) {
            if (c.is_negative()) {
                lhs += "- ";
                a = -c;
            }
        } else {
            lhs += c.is_negative() ? " - " : " + ";
            if (c.is_negative()) a = -c;
        }
        if (a == Rational(1))
            lhs += vars[i];
        else
            lhs += a.to_string() + " * " + vars[i];
        first = false;
    }
    if (first) lhs = "0 * " + vars[0];
    return lhs + (row.rel == LinRel::Eq ? " == " : " <= ") + row.bound.to_string();
}

std::string render_constraint(const ProbConstraint& c, const std::vector<std::string>& vars) {
    if (c.is_product()) {
        int nl = c.left().dim(), nr = c.right().dim();
        std::vector<std::string> lv, rv;
        for (int i = 1; i <= nl; ++i) lv.push_back("a" + std::to_string(i));
        for (int i = 1; i <= nr; ++i) rv.push_back("b" + std::to_string(i));
        return "product (" + std::to_string(nl) + ", " + std::to_string(nr) + ") [ " +
               render_constraint(c.left(), lv) + " ] [ " + render_constraint(c.right(), rv) + " ]";
    }
    if (c.syntactically_false()) return "false";
    if (c.syntactically_true()) return "true";
    std::vector<std::string> blocks;
    for (const Polytope& p : c.disjuncts()) {
        if (p.rows.empty()) {
            blocks.push_back("{ }");
            continue;
        }
        std::vector<std::string> rows;
        for (const LinConstraint& r : p.rows) rows.push_back(render_linexpr(r, vars));
        blocks.push_back("{ " + join(rows, ", ") + " }");
    }
    return join(blocks, " or ");
}

}  // namespace

Model parse_model(const std::string& text, const std::string& origin) {
    Parser p(text, origin);
    return p.run();
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("IO", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), path);
}

std::string serialize_model(const Model& m) {
    std::ostringstream out;
    out << kind_text(m.kind);
    if (!m.name.empty()) out << " " << quoted(m.name);
    out << " {\n";
    if (!m.actions.empty()) {
        std::vector<std::string> xs;
        for (const auto& a : m.actions) xs.push_back(a);
        out << "  actions " << join(xs, ", ") << ";\n";
    }
    if (!m.clocks.empty()) {
        std::vector<std::string> xs;
        for (const auto& c : m.clocks) xs.push_back(c);
        out << "  clocks " << join(xs, ", ") << ";\n";
    }
    out << "  aps";
    for (size_t i = 0; i < m.props.size(); ++i) out << (i ? ", " : " ") << m.props[i];
    out << ";\n";
    for (size_t l = 0; l < m.locations.size(); ++l) {
        out << "  ";
        if (static_cast<int>(l) == m.initial) out << "init ";
        out << "location " << quoted(m.locations[l]) << " {";
        bool first_set = true;
        for (const auto& s : m.valuation[l]) {
            out << (first_set ? " {" : ", {");
            first_set = false;
            bool first = true;
            for (PropId p : s) {
                out << (first ? "" : ", ") << m.props[p];
                first = false;
            }
            out << "}";
        }
        out << (first_set ? "};\n" : " };\n");
    }
    for (const Edge& e : m.edges) {
        out << "  edge " << quoted(m.locations[e.source]) << " "
            << (e.modality == Modality::Must ? "must" : "may") << " " << m.actions[e.action];
        if (!e.guard.is_true()) out << " when " << e.guard.text(m.clocks);
        out << " {\n";
        std::vector<std::string> vars(e.support.size());
        std::optional<QVector> point = e.raw_point;
        bool literal = static_cast<bool>(point);
        if (!literal && kind_is_implementation(m.kind)) {
            point = e.constraint.as_point();
            literal = static_cast<bool>(point);
        }
        for (size_t i = 0; i < e.support.size(); ++i) {
            if (literal) continue;
            vars[i] = i < e.var_names.size() ? e.var_names[i] : std::string();
            if (vars[i].empty()) vars[i] = "p" + std::to_string(i + 1);
        }
        // Ensure per-edge uniqueness of the synthesized names.
        for (size_t i = 0; i < vars.size() && !literal; ++i)
            for (size_t j = 0; j < i; ++j)
                if (vars[i] == vars[j]) vars[i] += "_" + std::to_string(i + 1);
        ClockId event_clock = kind_is_event_clock(m.kind) ? m.event_clock(e.action) : -1;
        for (size_t i = 0; i < e.support.size(); ++i) {
            out << "    " << (literal ? (*point)[i].to_string() : vars[i]) << " -> "
                << quoted(m.locations[e.support[i].target]);
            bool default_resets = kind_is_event_clock(m.kind)
                                      ? e.support[i].resets == std::set<ClockId>{event_clock}
                                      : e.support[i].resets.empty();
            if (!default_resets) {
                out << " reset {";
                bool first = true;
                for (ClockId c : e.support[i].resets) {
                    out << (first ? "" : ", ") << m.clocks[c];
                    first = false;
                }
                out << "}";
            }
            out << ";\n";
        }
        out << "  }";
        if (!literal && !e.constraint.syntactically_true())
            out << " where " << render_constraint(e.constraint, vars);
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

void save_model(const Model& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("IO", "cannot write " + path);
    out << serialize_model(m);
}

std::vector<std::pair<std::string, std::string>> parse_abstraction_pairs(const std::string& text) {
    std::vector<std::pair<std::string, std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        size_t arrow = line.find("->");
        if (arrow == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            return s.substr(b, e - b + 1);
        };
        std::string from = trim(line.substr(0, arrow));
        std::string to = trim(line.substr(arrow + 2));
        if (from.empty() || to.empty()) throw Error("MAP", "malformed map line: " + line);
        out.emplace_back(std::move(from), std::move(to));
    }
    return out;
}

AbstractionMap load_abstraction_map(const std::string& path, const Model& m) {
    std::ifstream in(path);
    if (!in) throw Error("IO", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return AbstractionMap::from_pairs(m, parse_abstraction_pairs(ss.str()));
}

}  // namespace apta
