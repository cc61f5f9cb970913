#include "antloop/loop_program.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include <json.hpp>

namespace antloop {

void LoopProgram::classify() {
    bool b_zero = antloop::is_zero(b);
    bool c_zero = antloop::is_zero(c);
    if (!b_zero || !c_zero)
        class_tag = LoopClass::Affine;
    else if (conditions() == 1)
        class_tag = LoopClass::Homogeneous;
    else
        class_tag = LoopClass::GeneralizedHomogeneous;
}

namespace {

struct Token {
    enum Kind { Ident, Number, Symbol, End } kind;
    std::string text;
    Rational value;
    int line, col;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }
    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        skip_space();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Token::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                id += src_[pos_];
                bump();
            }
            tok_.kind = Token::Ident;
            tok_.text = std::move(id);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.kind = Token::Number;
            tok_.value = lex_number();
            tok_.text.clear();
            return;
        }
        // Multi-character symbols first.
        static const char* two[] = {":=", "&&", ">=", "<=", "=="};
        for (const char* s : two) {
            if (src_.compare(pos_, 2, s) == 0) {
                tok_.kind = Token::Symbol;
                tok_.text = s;
                bump();
                bump();
                return;
            }
        }
        tok_.kind = Token::Symbol;
        tok_.text = std::string(1, c);
        bump();
    }

    Rational lex_number() {
        std::string digits = lex_digits();
        Rational value{BigInt(digits)};
        if (pos_ < src_.size() && src_[pos_] == '.') {
            bump();
            std::string frac = lex_digits();
            BigInt den(1);
            BigInt num(digits);
            for (char ch : frac) {
                num = num * 10 + (ch - '0');
                den *= 10;
            }
            value = Rational(num, den);
            value.canonicalize();
        }
        if (pos_ < src_.size() && src_[pos_] == '^') {
            bump();
            bool paren = pos_ < src_.size() && src_[pos_] == '(';
            if (paren) bump();
            bool neg = false;
            if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
                neg = src_[pos_] == '-';
                bump();
            }
            std::string expo = lex_digits();
            if (expo.empty()) throw ParseError(line_, col_, "expected exponent after '^'");
            if (paren) {
                if (pos_ >= src_.size() || src_[pos_] != ')')
                    throw ParseError(line_, col_, "expected ')' after exponent");
                bump();
            }
            unsigned long e = std::stoul(expo);
            Rational powed;
            mpz_pow_ui(powed.get_num_mpz_t(), value.get_num_mpz_t(), e);
            mpz_pow_ui(powed.get_den_mpz_t(), value.get_den_mpz_t(), e);
            powed.canonicalize();
            value = neg ? 1 / powed : powed;
        }
        if (pos_ < src_.size() && src_[pos_] == '/') {
            // Lookahead: a '/' directly followed by digits is a fraction.
            size_t save = pos_;
            bump();
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                std::string den = lex_digits();
                Rational d{BigInt(den)};
                if (d == 0) throw ParseError(line_, col_, "zero denominator");
                value /= d;
            } else {
                pos_ = save;  // not a fraction; leave the '/' to the parser
            }
        }
        return value;
    }

    std::string lex_digits() {
        std::string out;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            out += src_[pos_];
            bump();
        }
        return out;
    }

    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

// Linear expression: coefficient per variable name plus a constant.
struct LinExpr {
    std::map<std::string, Rational> coeffs;
    Rational constant;

    void add(const LinExpr& other, const Rational& factor) {
        for (const auto& [name, c] : other.coeffs) {
            coeffs[name] += factor * c;
            if (coeffs[name] == 0) coeffs.erase(name);
        }
        constant += factor * other.constant;
    }
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    LoopProgram parse() {
        expect_ident("while");
        expect_symbol("(");
        std::vector<LinExpr> guards;
        guards.push_back(parse_condition());
        while (peek_symbol("&&") || peek_symbol(",")) {
            lex_.next();
            guards.push_back(parse_condition());
        }
        expect_symbol(")");
        expect_symbol("{");
        std::vector<std::pair<std::string, LinExpr>> assigns;
        while (!peek_symbol("}")) {
            Token t = lex_.next();
            if (t.kind != Token::Ident) throw ParseError(t.line, t.col, "expected assignment target");
            register_var(t.text);
            expect_symbol(":=");
            LinExpr rhs = parse_expr();
            expect_symbol(";");
            assigns.emplace_back(t.text, std::move(rhs));
        }
        expect_symbol("}");
        Token end = lex_.next();
        if (end.kind != Token::End) throw ParseError(end.line, end.col, "trailing input after program");

        // Assemble matrices over the discovered variable order.
        int n = static_cast<int>(vars_.size());
        auto row_of = [&](const LinExpr& e) {
            QVector r(n, Rational(0));
            for (const auto& [name, c] : e.coeffs) r[index_.at(name)] = c;
            return r;
        };

        LoopProgram p;
        p.var_names = vars_;
        p.f = QMatrix::zero(static_cast<int>(guards.size()), n);
        p.b = QVector(guards.size(), Rational(0));
        for (size_t i = 0; i < guards.size(); ++i) {
            QVector r = row_of(guards[i]);
            for (int j = 0; j < n; ++j) p.f.at(static_cast<int>(i), j) = r[j];
            p.b[i] = -guards[i].constant;  // form + const > 0  ≡  form > -const
        }

        // Compose sequential assignments: substitution state maps each
        // variable to its expression over the initial values.
        std::vector<LinExpr> state(n);
        for (int i = 0; i < n; ++i) state[i].coeffs[vars_[i]] = 1;
        for (const auto& [target, rhs] : assigns) {
            LinExpr next;
            next.constant = rhs.constant;
            for (const auto& [name, c] : rhs.coeffs) next.add(state[index_.at(name)], c);
            state[index_.at(target)] = std::move(next);
        }
        p.a = QMatrix::zero(n, n);
        p.c = QVector(n, Rational(0));
        for (int i = 0; i < n; ++i) {
            QVector r = row_of(state[i]);
            for (int j = 0; j < n; ++j) p.a.at(i, j) = r[j];
            p.c[i] = state[i].constant;
        }
        p.classify();
        return p;
    }

  private:
    LinExpr parse_condition() {
        LinExpr lhs = parse_expr();
        Token op = lex_.next();
        if (op.kind != Token::Symbol || (op.text != ">" && op.text != "<")) {
            if (op.kind == Token::Symbol && (op.text == ">=" || op.text == "<=")) {
                throw ParseError(op.line, op.col,
                                 "non-strict comparison '" + op.text +
                                     "' is not supported; over the integers rewrite c.x >= d as "
                                     "c.x > d-1 explicitly");
            }
            throw ParseError(op.line, op.col, "expected '>' or '<' in loop condition");
        }
        LinExpr rhs = parse_expr();
        LinExpr cond;  // cond > 0
        if (op.text == ">") {
            cond = std::move(lhs);
            cond.add(rhs, Rational(-1));
        } else {
            cond = std::move(rhs);
            cond.add(lhs, Rational(-1));
        }
        return cond;
    }

    LinExpr parse_expr() {
        LinExpr e;
        bool first = true;
        while (true) {
            Rational sign(1);
            if (peek_symbol("+") || peek_symbol("-")) {
                if (lex_.next().text == "-") sign = -1;
            } else if (!first) {
                break;
            }
            LinExpr term = parse_term();
            e.add(term, sign);
            first = false;
            if (!(peek_symbol("+") || peek_symbol("-"))) break;
        }
        return e;
    }

    // term := factor ('*' factor)* with implicit multiplication between a
    // number and an identifier (e.g. 1/2y). At most one identifier per term.
    LinExpr parse_term() {
        Rational coeff(1);
        std::string var;
        bool any = false;
        while (true) {
            Token t = lex_.peek();
            if (t.kind == Token::Number) {
                lex_.next();
                coeff *= t.value;
                any = true;
                if (lex_.peek().kind == Token::Ident) continue;  // juxtaposition
            } else if (t.kind == Token::Ident) {
                lex_.next();
                if (!var.empty())
                    throw ParseError(t.line, t.col, "nonlinear term: product of variables '" + var +
                                                        "' and '" + t.text + "'");
                var = t.text;
                register_var(var);
                any = true;
            } else {
                if (!any) throw ParseError(t.line, t.col, "expected a term");
                break;
            }
            if (peek_symbol("*"))
                lex_.next();
            else
                break;
        }
        LinExpr e;
        if (var.empty())
            e.constant = coeff;
        else
            e.coeffs[var] = coeff;
        return e;
    }

    void register_var(const std::string& name) {
        if (index_.count(name)) return;
        index_[name] = static_cast<int>(vars_.size());
        vars_.push_back(name);
    }

    bool peek_symbol(const std::string& s) {
        return lex_.peek().kind == Token::Symbol && lex_.peek().text == s;
    }
    void expect_symbol(const std::string& s) {
        Token t = lex_.next();
        if (t.kind != Token::Symbol || t.text != s)
            throw ParseError(t.line, t.col, "expected '" + s + "'");
    }
    void expect_ident(const std::string& s) {
        Token t = lex_.next();
        if (t.kind != Token::Ident || t.text != s)
            throw ParseError(t.line, t.col, "expected '" + s + "'");
    }

    Lexer lex_;
    std::vector<std::string> vars_;
    std::map<std::string, int> index_;
};

std::string expr_string(const QVector& coeffs, const Rational& constant,
                        const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] == 0) continue;
        Rational a = abs(coeffs[j]);
        if (sign(coeffs[j]) < 0)
            os << (first ? "-" : " - ");
        else if (!first)
            os << " + ";
        if (a != 1) os << to_string(a) << "*";
        os << names[j];
        first = false;
    }
    if (constant != 0 || first) {
        if (sign(constant) < 0)
            os << (first ? "-" : " - ") << to_string(abs(constant));
        else
            os << (first ? "" : " + ") << to_string(constant);
    }
    return os.str();
}

}  // namespace

LoopProgram parse_program(const std::string& source) { return Parser(source).parse(); }

std::pair<QMatrix, QVector> compose_sequential(
    const std::vector<std::string>& vars,
    const std::vector<std::pair<std::string, std::string>>& assignments) {
    if (vars.empty()) return {QMatrix::zero(0, 0), QVector{}};
    std::ostringstream src;
    src << "while (" << vars[0] << " > 0) {\n";
    for (const auto& [target, expr] : assignments) src << "  " << target << " := " << expr << ";\n";
    src << "}";
    // Reuse the parser's substitution engine, then reorder to the caller's
    // variable order.
    LoopProgram p = parse_program(src.str());
    std::map<std::string, int> pos;
    for (size_t i = 0; i < p.var_names.size(); ++i) pos[p.var_names[i]] = static_cast<int>(i);
    for (const auto& name : p.var_names)
        if (std::find(vars.begin(), vars.end(), name) == vars.end())
            throw std::runtime_error("compose_sequential: unknown variable '" + name + "'");
    int n = static_cast<int>(vars.size());
    QMatrix a = QMatrix::identity(n);
    QVector c(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        auto it = pos.find(vars[i]);
        if (it == pos.end()) continue;  // variable untouched
        for (int j = 0; j < n; ++j) {
            auto jt = pos.find(vars[j]);
            a.at(i, j) = jt == pos.end() ? Rational(i == j ? 1 : 0) : p.a.at(it->second, jt->second);
        }
        c[i] = p.c[it->second];
    }
    return {a, c};
}

namespace {

// A simultaneous update prints as sequential assignments, so each row must
// be emitted before any later row that still needs its old value. When the
// read graph is acyclic a topological order suffices; otherwise the update
// is decomposed into elementary assignments (RREF rows first, then the
// recorded row operations undone in reverse), which always sequentializes
// over the same variable set.
std::vector<std::string> body_statements(const LoopProgram& p) {
    int n = p.dim();
    const auto& names = p.var_names;
    std::vector<std::string> stmts;

    // Kahn's algorithm on edges (i before j) whenever row i reads x_j.
    std::vector<int> pending(n, 0);
    std::vector<std::vector<int>> after(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && p.a.at(i, j) != 0) {
                after[i].push_back(j);
                ++pending[j];
            }
    std::vector<int> order, queue;
    for (int i = 0; i < n; ++i)
        if (pending[i] == 0) queue.push_back(i);
    while (!queue.empty()) {
        int v = queue.front();
        queue.erase(queue.begin());
        order.push_back(v);
        for (int w : after[v])
            if (--pending[w] == 0) queue.push_back(w);
    }
    if (static_cast<int>(order.size()) == n) {
        for (int i : order) {
            QVector row = p.a.row(i);
            bool identity = p.c[i] == 0 && row[i] == 1;
            for (int j = 0; j < n && identity; ++j)
                if (j != i && row[j] != 0) identity = false;
            if (!identity)
                stmts.push_back(names[i] + " := " + expr_string(row, p.c[i], names));
        }
        if (stmts.empty()) stmts.push_back(names[0] + " := " + names[0]);
        return stmts;
    }

    // Cyclic reads: record the Gauss-Jordan operations that bring A to RREF.
    struct Op {
        enum { Swap, Scale, Shear } kind;
        int i, j;
        Rational factor;
    };
    std::vector<Op> ops;
    QMatrix r = p.a;
    int pr = 0;
    for (int col = 0; col < n && pr < n; ++col) {
        int sel = -1;
        for (int i = pr; i < n; ++i)
            if (r.at(i, col) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        if (sel != pr) {
            for (int j = 0; j < n; ++j) std::swap(r.at(sel, j), r.at(pr, j));
            ops.push_back({Op::Swap, pr, sel, Rational(0)});
        }
        if (r.at(pr, col) != 1) {
            Rational inv = 1 / r.at(pr, col);
            for (int j = 0; j < n; ++j) r.at(pr, j) *= inv;
            ops.push_back({Op::Scale, pr, pr, inv});
        }
        for (int i = 0; i < n; ++i) {
            if (i == pr || r.at(i, col) == 0) continue;
            Rational f = r.at(i, col);
            for (int j = 0; j < n; ++j) r.at(i, j) -= f * r.at(pr, j);
            ops.push_back({Op::Shear, i, pr, -f});
        }
        ++pr;
    }
    // RREF rows read only coordinates at or beyond their own index, so
    // ascending emission is dependency-safe.
    for (int i = 0; i < n; ++i) {
        QVector row = r.row(i);
        bool identity = row[i] == 1;
        for (int j = 0; j < n && identity; ++j)
            if (j != i && row[j] != 0) identity = false;
        if (!identity) stmts.push_back(names[i] + " := " + expr_string(row, Rational(0), names));
    }
    // Undo the recorded operations in reverse.
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const Op& op = *it;
        if (op.kind == Op::Swap) {
            stmts.push_back(names[op.i] + " := " + names[op.i] + " + " + names[op.j]);
            stmts.push_back(names[op.j] + " := " + names[op.i] + " - " + names[op.j]);
            stmts.push_back(names[op.i] + " := " + names[op.i] + " - " + names[op.j]);
        } else if (op.kind == Op::Scale) {
            QVector row(n, Rational(0));
            row[op.i] = 1 / op.factor;
            stmts.push_back(names[op.i] + " := " + expr_string(row, Rational(0), names));
        } else {
            QVector row(n, Rational(0));
            row[op.i] = 1;
            row[op.j] = -op.factor;
            stmts.push_back(names[op.i] + " := " + expr_string(row, Rational(0), names));
        }
    }
    for (int i = 0; i < n; ++i) {
        if (p.c[i] == 0) continue;
        QVector row(n, Rational(0));
        row[i] = 1;
        stmts.push_back(names[i] + " := " + expr_string(row, p.c[i], names));
    }
    if (stmts.empty()) stmts.push_back(names[0] + " := " + names[0]);
    return stmts;
}

}  // namespace

std::string print_program(const LoopProgram& p) {
    std::ostringstream os;
    os << "while (";
    for (int i = 0; i < p.conditions(); ++i) {
        if (i) os << " && ";
        os << expr_string(p.f.row(i), Rational(0), p.var_names) << " > " << to_string(p.b[i]);
    }
    os << ") {\n";
    for (const auto& stmt : body_statements(p)) os << "  " << stmt << ";\n";
    os << "}\n";
    return os.str();
}

std::pair<LoopProgram, HomogenizeNote> homogenize(const LoopProgram& p) {
    HomogenizeNote note;
    note.original_dim = p.dim();
    if (p.class_tag != LoopClass::Affine) return {p, note};
    note.was_affine = true;
    std::string slack = "z_hom";
    while (std::find(p.var_names.begin(), p.var_names.end(), slack) != p.var_names.end())
        slack += "_";
    note.slack_name = slack;

    int n = p.dim(), m = p.conditions();
    LoopProgram h;
    h.var_names = p.var_names;
    h.var_names.push_back(slack);
    h.a = QMatrix::zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h.a.at(i, j) = p.a.at(i, j);
    for (int i = 0; i < n; ++i) h.a.at(i, n) = p.c[i];
    h.a.at(n, n) = 1;
    h.c = QVector(n + 1, Rational(0));
    h.f = QMatrix::zero(m + 1, n + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) h.f.at(i, j) = p.f.at(i, j);
        h.f.at(i, n) = -p.b[i];
    }
    h.f.at(m, n) = 1;
    h.b = QVector(m + 1, Rational(0));
    h.classify();
    return {h, note};
}

LoopProgram program_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto to_rat = [](const nlohmann::json& v) -> Rational {
        if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
        auto q = parse_rational(v.get<std::string>());
        if (!q) throw std::runtime_error("bad rational in program JSON: " + v.dump());
        return *q;
    };
    LoopProgram p;
    p.var_names = j.at("vars").get<std::vector<std::string>>();
    int n = static_cast<int>(p.var_names.size());
    const auto& ja = j.at("A");
    p.a = QMatrix::zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) p.a.at(i, k) = to_rat(ja.at(i).at(k));
    const auto& jf = j.at("F");
    int m = static_cast<int>(jf.size());
    p.f = QMatrix::zero(m, n);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < n; ++k) p.f.at(i, k) = to_rat(jf.at(i).at(k));
    p.c = QVector(n, Rational(0));
    if (j.contains("c"))
        for (int i = 0; i < n; ++i) p.c[i] = to_rat(j.at("c").at(i));
    p.b = QVector(m, Rational(0));
    if (j.contains("b"))
        for (int i = 0; i < m; ++i) p.b[i] = to_rat(j.at("b").at(i));
    if (static_cast<int>(p.var_names.size()) != p.a.rows())
        throw std::runtime_error("program JSON: vars/A size mismatch");
    p.classify();
    return p;
}

std::string program_to_json(const LoopProgram& p) {
    nlohmann::ordered_json j;
    j["vars"] = p.var_names;
    auto mat = [](const QMatrix& m) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (int i = 0; i < m.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < m.cols(); ++k) row.push_back(to_string(m.at(i, k)));
            rows.push_back(row);
        }
        return rows;
    };
    auto vec = [](const QVector& v) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& x : v) row.push_back(to_string(x));
        return row;
    };
    j["A"] = mat(p.a);
    j["c"] = vec(p.c);
    j["F"] = mat(p.f);
    j["b"] = vec(p.b);
    return j.dump(2);
}

}  // namespace antloop
