#include "ppn/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace ppn {

namespace {

using nlohmann::json;

// --- Lexical helpers -----------------------------------------------------

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Removes a '#' comment unless it appears inside a quoted string.
std::string strip_comment(const std::string& s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

// Splits on `delim` at top level: outside quotes, parentheses, and braces.
std::vector<std::string> split_top(const std::string& s, char delim) {
    std::vector<std::string> out;
    int depth = 0;
    bool quoted = false;
    std::string cur;
    for (char ch : s) {
        if (ch == '"') quoted = !quoted;
        if (!quoted) {
            if (ch == '(' || ch == '{' || ch == '[') ++depth;
            if (ch == ')' || ch == '}' || ch == ']') --depth;
            if (ch == delim && depth == 0) {
                out.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur += ch;
    }
    out.push_back(cur);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw LoadError("line " + std::to_string(line) + ": " + msg);
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

// --- Polynomial expression parser ---------------------------------------

// expr := term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := rational | parameter | '(' expr ')' | '-' factor
class PolyParser {
  public:
    PolyParser(const std::string& text, const Network& net, int line)
        : s_(text), net_(net), line_(line) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (i_ != s_.size()) fail(line_, "unexpected trailing input in expression: " + s_);
        return p;
    }

  private:
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    Polynomial expr() {
        Polynomial p = term();
        for (;;) {
            if (eat('+')) p += term();
            else if (eat('-')) p -= term();
            else return p;
        }
    }
    Polynomial term() {
        Polynomial p = factor();
        for (;;) {
            if (eat('*')) {
                p = p * factor();
                continue;
            }
            // juxtaposition also multiplies ("x y" is x*y, matching the
            // renderer); '-' never starts a juxtaposed factor
            skip_ws();
            if (i_ < s_.size() &&
                (is_ident_char(s_[i_]) || s_[i_] == '(' || s_[i_] == '.')) {
                p = p * factor();
                continue;
            }
            return p;
        }
    }
    Polynomial factor() {
        skip_ws();
        if (i_ >= s_.size()) fail(line_, "expression ended unexpectedly: " + s_);
        if (eat('-')) return -factor();
        if (eat('(')) {
            Polynomial p = expr();
            if (!eat(')')) fail(line_, "missing ')' in expression: " + s_);
            return p;
        }
        char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t b = i_;
            while (i_ < s_.size() &&
                   (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.' ||
                    s_[i_] == '/' || s_[i_] == 'e' || s_[i_] == 'E' ||
                    ((s_[i_] == '+' || s_[i_] == '-') &&
                     (s_[i_ - 1] == 'e' || s_[i_ - 1] == 'E'))))
                ++i_;
            return Polynomial(parse_rational(s_.substr(b, i_ - b)));
        }
        if (is_ident_char(c)) {
            std::size_t b = i_;
            while (i_ < s_.size() && is_ident_char(s_[i_])) ++i_;
            std::string name = s_.substr(b, i_ - b);
            if (!net_.parameters().count(name)) fail(line_, "undeclared parameter: " + name);
            return Polynomial::variable(name);
        }
        fail(line_, std::string("unexpected character '") + c + "' in expression: " + s_);
    }

    std::string s_;
    std::size_t i_ = 0;
    const Network& net_;
    int line_;
};

Polynomial parse_poly(const std::string& text, const Network& net, int line) {
    return PolyParser(text, net, line).parse();
}

// --- Event and probability-expression parsing ----------------------------

// "A=T,B=F" -> event conjunction
EventConjunction parse_event(const std::string& text, const Network& net, int line) {
    EventConjunction e;
    for (const std::string& part : split_top(text, ',')) {
        std::string p = trim(part);
        std::size_t eq = p.find('=');
        if (eq == std::string::npos) fail(line, "expected VAR=T or VAR=F, got: " + p);
        std::string var = trim(p.substr(0, eq));
        std::string state = trim(p.substr(eq + 1));
        if (!net.has_variable(var)) fail(line, "unknown variable: " + var);
        if (state != "T" && state != "F") fail(line, "state must be T or F, got: " + state);
        e.events.push_back({var, state == "T"});
    }
    return e;
}

// "P(A=T,B=F)", "P0(B=T|A=T)", or a plain parameter expression -> polynomial
Polynomial parse_prob_expr(const std::string& raw, const Network& net, int line) {
    std::string s = trim(raw);
    bool input_table = false;
    std::string inner;
    if (s.rfind("P0(", 0) == 0 && s.back() == ')') {
        input_table = true;
        inner = s.substr(3, s.size() - 4);
    } else if (s.rfind("P(", 0) == 0 && s.back() == ')') {
        inner = s.substr(2, s.size() - 3);
    } else {
        return parse_poly(s, net, line);
    }
    std::vector<std::string> sides = split_top(inner, '|');
    if (input_table) {
        if (sides.size() != 2)
            fail(line, "P0(...) requires the form P0(consequent | antecedents)");
        EventConjunction cons = parse_event(sides[0], net, line);
        if (cons.events.size() != 1) fail(line, "P0(...) takes a single consequent event");
        EventConjunction ant = parse_event(sides[1], net, line);
        return net.subjunctive_input_expr(ant, cons.events[0]);
    }
    if (sides.size() != 1)
        fail(line, "conditional probabilities are only available in `query P(...)`");
    return net.query_unconditioned(parse_event(sides[0], net, line));
}

Constraint parse_constraint(const std::string& raw, const Network& net, int line) {
    // find the relational operator at top level (outside parens/quotes)
    int depth = 0;
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        char c = raw[i];
        if (c == '"') quoted = !quoted;
        if (quoted) continue;
        if (c == '(' || c == '{' || c == '[') ++depth;
        if (c == ')' || c == '}' || c == ']') --depth;
        if (depth != 0) continue;
        Rel rel;
        std::size_t len = 1;
        if (c == '<' && i + 1 < raw.size() && raw[i + 1] == '=') { rel = Rel::Le; len = 2; }
        else if (c == '>' && i + 1 < raw.size() && raw[i + 1] == '=') { rel = Rel::Ge; len = 2; }
        else if (c == '<') rel = Rel::Lt;
        else if (c == '>') rel = Rel::Gt;
        else if (c == '=') rel = Rel::Eq;
        else continue;
        Polynomial lhs = parse_prob_expr(raw.substr(0, i), net, line);
        Polynomial rhs = parse_prob_expr(raw.substr(i + len), net, line);
        return Constraint{lhs, rel, rhs};
    }
    fail(line, "expected a constraint (lhs REL rhs), got: " + raw);
}

ConstraintSet parse_constraint_block(const std::string& block, const Network& net, int line) {
    ConstraintSet out;
    for (const std::string& part : split_top(block, ';')) {
        std::string p = trim(part);
        if (!p.empty()) out.push_back(parse_constraint(p, net, line));
    }
    return out;
}

// Contents of the first balanced {...} after position `from`; advances `rest`
// to the text that follows.
std::string take_braced(const std::string& s, std::size_t from, std::string* rest, int line) {
    std::size_t open = s.find('{', from);
    if (open == std::string::npos) fail(line, "expected '{': " + s);
    int depth = 0;
    for (std::size_t i = open; i < s.size(); ++i) {
        if (s[i] == '{') ++depth;
        if (s[i] == '}' && --depth == 0) {
            if (rest) *rest = trim(s.substr(i + 1));
            return s.substr(open + 1, i - open - 1);
        }
    }
    fail(line, "unbalanced '{': " + s);
}

std::string unquote(const std::string& raw, int line) {
    std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '"' || s.back() != '"')
        fail(line, "expected a quoted formula, got: " + s);
    return s.substr(1, s.size() - 2);
}

Term parse_literal(const std::string& raw, const Network& net, int line) {
    std::string s = trim(raw);
    Term t;
    if (!s.empty() && (s[0] == '!' || s[0] == '~')) {
        t.negated = true;
        s = trim(s.substr(1));
    }
    if (!net.has_variable(s)) fail(line, "unknown variable: " + s);
    t.variable = s;
    return t;
}

// --- Statement parsers ----------------------------------------------------

struct ParserState {
    ModelFile model;
    std::set<std::string> declared_vars;
    int next_cond = 1;
};

void parse_param(ParserState& st, const std::string& rest, int line) {
    // "x in [0,1]" or "n int in {0,1}"
    std::istringstream in(rest);
    std::string name, word;
    in >> name >> word;
    if (!valid_name(name)) fail(line, "invalid parameter name: " + name);
    Parameter p;
    p.name = name;
    bool integer = false;
    if (word == "int") {
        integer = true;
        in >> word;
    }
    if (word != "in") fail(line, "expected 'in' in param declaration");
    std::string range;
    std::getline(in, range);
    range = trim(range);
    char open = integer ? '{' : '[';
    char close = integer ? '}' : ']';
    if (range.size() < 2 || range.front() != open || range.back() != close)
        fail(line, std::string("expected bounds like ") + open + "lo," + "hi" + close);
    std::vector<std::string> parts = split_top(range.substr(1, range.size() - 2), ',');
    if (parts.size() != 2) fail(line, "bounds take exactly two endpoints");
    p.lower = parse_rational(trim(parts[0]));
    p.upper = parse_rational(trim(parts[1]));
    p.integer_restricted = integer;
    if (p.lower > p.upper) fail(line, "lower bound exceeds upper bound");
    st.model.net.add_parameter(p);
}

std::vector<bool> parse_states(const std::string& s, std::size_t expect, int line) {
    std::vector<bool> out;
    for (char c : s) {
        if (c == 'T') out.push_back(true);
        else if (c == 'F') out.push_back(false);
        else if (!std::isspace(static_cast<unsigned char>(c)))
            fail(line, std::string("state letters must be T/F, got: ") + s);
    }
    if (out.size() != expect)
        fail(line, "expected " + std::to_string(expect) + " state letters in key: " + s);
    return out;
}

void parse_table(ParserState& st, const std::string& rest, int line) {
    // "P0(A) { T: x ; F: 1-x }" or "P0(B|A) { T|T: y ; ... }"
    std::size_t open = rest.find('(');
    std::size_t close = rest.find(')');
    if (rest.rfind("P0", 0) != 0 || open == std::string::npos || close == std::string::npos)
        fail(line, "expected table P0(VAR) or table P0(VAR|PARENTS)");
    std::string header = rest.substr(open + 1, close - open - 1);
    std::vector<std::string> sides = split_top(header, '|');
    std::string target = trim(sides[0]);
    std::vector<std::string> parents;
    if (sides.size() == 2)
        for (const std::string& p : split_top(sides[1], ','))
            parents.push_back(trim(p));
    else if (sides.size() > 2)
        fail(line, "too many '|' in table header");
    if (!st.declared_vars.count(target)) fail(line, "undeclared variable: " + target);
    for (const std::string& p : parents)
        if (!st.model.net.has_variable(p)) fail(line, "unknown parent variable: " + p);

    std::string body = take_braced(rest, close, nullptr, line);
    std::map<std::vector<bool>, Polynomial> rows;
    for (const std::string& part : split_top(body, ';')) {
        std::string entry = trim(part);
        if (entry.empty()) continue;
        std::size_t colon = entry.find(':');
        if (colon == std::string::npos) fail(line, "table entry needs 'KEY: expr': " + entry);
        std::string key = trim(entry.substr(0, colon));
        std::vector<std::string> ks = split_top(key, '|');
        std::vector<bool> tstate = parse_states(ks[0], 1, line);
        std::vector<bool> kvec;
        if (ks.size() == 2) kvec = parse_states(ks[1], parents.size(), line);
        else if (ks.size() > 2 || (ks.size() == 1 && !parents.empty()))
            fail(line, "table key must be 'T|PARENTSTATES' here: " + key);
        kvec.push_back(tstate[0]);
        rows[kvec] = parse_poly(entry.substr(colon + 1), st.model.net, line);
    }
    st.model.net.add_table(target, parents, rows);
}

void parse_joint(ParserState& st, const std::string& rest, int line) {
    // "P0(A,B) { TT: x1 ; ... }"
    std::size_t open = rest.find('(');
    std::size_t close = rest.find(')');
    if (rest.rfind("P0", 0) != 0 || open == std::string::npos || close == std::string::npos)
        fail(line, "expected joint P0(V1,V2,...)");
    std::vector<std::string> vars;
    for (const std::string& v : split_top(rest.substr(open + 1, close - open - 1), ',')) {
        std::string name = trim(v);
        if (!st.declared_vars.count(name)) fail(line, "undeclared variable: " + name);
        vars.push_back(name);
    }
    std::string body = take_braced(rest, close, nullptr, line);
    std::map<std::vector<bool>, Polynomial> rows;
    for (const std::string& part : split_top(body, ';')) {
        std::string entry = trim(part);
        if (entry.empty()) continue;
        std::size_t colon = entry.find(':');
        if (colon == std::string::npos) fail(line, "joint entry needs 'KEY: expr': " + entry);
        rows[parse_states(trim(entry.substr(0, colon)), vars.size(), line)] =
            parse_poly(entry.substr(colon + 1), st.model.net, line);
    }
    st.model.net.add_joint(vars, rows);
}

void parse_cond(ParserState& st, const std::string& rest, int line) {
    // "<type> k=1 : A => B"  |  "<type> K=T : \"A & C\" => \"B\""
    std::istringstream in(rest);
    std::string type_word, sense_word;
    in >> type_word >> sense_word;
    CondType type;
    if (type_word == "su") type = CondType::Subjunctive;
    else if (type_word == "mat") type = CondType::Material;
    else if (type_word == "ex") type = CondType::Existential;
    else if (type_word == "feas") type = CondType::Feasibility;
    else if (type_word == "qf") type = CondType::QuotientFeasibility;
    else if (type_word == "tf") type = CondType::TruthFunctional;
    else if (type_word == "bf") type = CondType::BooleanFeasibility;
    else fail(line, "unknown conditional type: " + type_word);

    ConditionalStatement c;
    c.type = type;
    bool boolean_type = (type == CondType::TruthFunctional || type == CondType::BooleanFeasibility);
    if (boolean_type) {
        if (sense_word.rfind("K=", 0) != 0 ||
            (sense_word.substr(2) != "T" && sense_word.substr(2) != "F"))
            fail(line, "expected K=T or K=F, got: " + sense_word);
        c.sense = Sense::truth(sense_word.substr(2) == "T");
    } else {
        if (sense_word.rfind("k=", 0) != 0) fail(line, "expected k=<rational>, got: " + sense_word);
        c.sense = Sense::fraction(parse_rational(sense_word.substr(2)));
        if (c.sense.k < 0 || c.sense.k > 1) fail(line, "sense k must lie in [0,1]");
    }

    std::string tail;
    std::getline(in, tail);
    tail = trim(tail);
    if (tail.empty() || tail[0] != ':') fail(line, "expected ':' before the conditional body");
    tail = trim(tail.substr(1));
    std::size_t arrow = tail.find("=>");
    if (arrow == std::string::npos) fail(line, "expected '=>' in the conditional body");
    std::string ant = trim(tail.substr(0, arrow));
    std::string cons = trim(tail.substr(arrow + 2));

    if (boolean_type) {
        c.antecedent_formula = parse_formula(unquote(ant, line));
        c.consequent_formula = parse_formula(unquote(cons, line));
    } else if (type == CondType::Feasibility && !ant.empty() && ant[0] == '{') {
        c.antecedent_constraints =
            parse_constraint_block(take_braced(ant, 0, nullptr, line), st.model.net, line);
        c.consequent = parse_literal(cons, st.model.net, line);
    } else {
        for (const std::string& lit : split_top(ant, '&'))
            c.antecedent_terms.push_back(parse_literal(lit, st.model.net, line));
        c.consequent = parse_literal(cons, st.model.net, line);
        if (type == CondType::Feasibility) {
            // sugar: "A => B" stands for the premise P(A=T) = 1
            EventConjunction e = terms_event(c.antecedent_terms);
            c.antecedent_constraints = {Constraint{
                st.model.net.query_unconditioned(e), Rel::Eq, Polynomial(1)}};
            c.antecedent_terms.clear();
        }
    }
    st.model.conditionals.push_back({"c" + std::to_string(st.next_cond++), std::move(c)});
}

std::set<std::string> parse_element_set(const std::string& raw, int line) {
    std::string s = trim(raw);
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        fail(line, "expected an element set like {penny, nickel}");
    std::set<std::string> out;
    for (const std::string& e : split_top(s.substr(1, s.size() - 2), ',')) {
        std::string name = trim(e);
        if (!name.empty()) out.insert(name);
    }
    return out;
}

void parse_query(ParserState& st, const std::string& rest, int line) {
    Query q;
    q.raw = "query " + rest;
    std::string s = trim(rest);

    if (s.rfind("set ", 0) == 0) {
        q.kind = Query::Kind::Set;
        std::string body = trim(s.substr(4));
        std::size_t given = body.find(" given ");
        std::string target = body;
        if (given != std::string::npos) {
            target = trim(body.substr(0, given));
            q.given = parse_constraint_block(
                take_braced(body, given, nullptr, line), st.model.net, line);
        }
        q.objective = parse_prob_expr(target, st.model.net, line);
    } else if (s.rfind("status ", 0) == 0) {
        q.kind = Query::Kind::Status;
        std::string body = trim(s.substr(7));
        std::size_t given = body.find(" given ");
        q.cond_id = trim(given == std::string::npos ? body : body.substr(0, given));
        if (given != std::string::npos)
            q.given = parse_constraint_block(
                take_braced(body, given, nullptr, line), st.model.net, line);
        bool known = false;
        for (const auto& [id, c] : st.model.conditionals)
            if (id == q.cond_id) known = true;
        if (!known) fail(line, "unknown conditional id: " + q.cond_id);
    } else if (s.rfind("deduce", 0) == 0) {
        q.kind = Query::Kind::Deduce;
        std::string after;
        std::string block = take_braced(s, 6, &after, line);
        for (const std::string& part : split_top(block, ';')) {
            std::string p = trim(part);
            if (p.empty()) continue;
            if (!p.empty() && p.front() == '"') p = unquote(p, line);
            q.premises.push_back(parse_formula(p));
        }
        if (after.rfind("|-", 0) != 0) fail(line, "expected '|-' after the premise block");
        std::string conc = trim(after.substr(2));
        if (!conc.empty() && conc.front() == '"') conc = unquote(conc, line);
        q.conclusion = parse_formula(conc);
    } else if (s.rfind("measure ", 0) == 0) {
        q.kind = Query::Kind::Measure;
        std::istringstream in(s.substr(8));
        in >> q.measure;
        std::string tail;
        std::getline(in, tail);
        tail = trim(tail);
        if (tail.rfind("P(", 0) != 0 || tail.back() != ')')
            fail(line, "expected P({elements}) or P({elements} | {elements})");
        std::vector<std::string> sides = split_top(tail.substr(2, tail.size() - 3), '|');
        q.m_event = parse_element_set(sides[0], line);
        if (sides.size() == 2) q.m_given = parse_element_set(sides[1], line);
        else if (sides.size() > 2) fail(line, "too many '|' in measure query");
    } else if (s.rfind("P(", 0) == 0 && s.back() == ')') {
        q.kind = Query::Kind::Prob;
        std::vector<std::string> sides = split_top(s.substr(2, s.size() - 3), '|');
        q.target = parse_event(sides[0], st.model.net, line);
        if (sides.size() == 2) {
            q.conditional = true;
            q.cond = parse_event(sides[1], st.model.net, line);
        } else if (sides.size() > 2) {
            fail(line, "too many '|' in probability query");
        }
    } else {
        fail(line, "unrecognized query: " + s);
    }
    st.model.queries.push_back(std::move(q));
}

void parse_measures(ParserState& st, const std::string& rest, int line) {
    // measures { element | value:cents | lincoln!:images ; penny | 1 | 1 ; ... }
    if (st.model.measures) fail(line, "only one measures block is allowed");
    std::string body = take_braced(rest, 0, nullptr, line);
    std::vector<std::string> rows = split_top(body, ';');
    if (rows.size() < 2) fail(line, "measures block needs a header row and at least one element");

    std::vector<std::string> header = split_top(rows[0], '|');
    if (header.empty() || trim(header[0]) != "element")
        fail(line, "measures header must start with 'element'");
    struct Col {
        std::string name, unit;
        bool is_measure = true;
        std::map<std::string, Rational> values;
    };
    std::vector<Col> cols;
    for (std::size_t i = 1; i < header.size(); ++i) {
        std::string h = trim(header[i]);
        std::size_t colon = h.find(':');
        if (colon == std::string::npos) fail(line, "measure column needs 'name:unit': " + h);
        Col c;
        c.name = trim(h.substr(0, colon));
        c.unit = trim(h.substr(colon + 1));
        if (!c.name.empty() && c.name.back() == '!') {
            c.is_measure = false;
            c.name = trim(c.name.substr(0, c.name.size() - 1));
        }
        cols.push_back(std::move(c));
    }

    MeasureTable table;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        std::string row = trim(rows[r]);
        if (row.empty()) continue;
        std::vector<std::string> cells = split_top(row, '|');
        if (cells.size() != cols.size() + 1)
            fail(line, "measures row has " + std::to_string(cells.size()) + " cells, expected " +
                           std::to_string(cols.size() + 1) + ": " + row);
        std::string element = trim(cells[0]);
        table.add_element(element);
        for (std::size_t i = 0; i < cols.size(); ++i)
            cols[i].values[element] = parse_rational(trim(cells[i + 1]));
    }
    for (const Col& c : cols) table.add_measure(c.name, c.unit, c.values, c.is_measure);
    st.model.measures = std::move(table);
}

// --- Rendering helpers ----------------------------------------------------

std::string rat_str(const Rational& r) { return rational_to_string(r); }

std::string set_exact(const SolutionSet& s) {
    if (s.empty) return "{}";
    if (s.alpha_star == s.beta_star) return "{" + rat_str(s.alpha_star) + "}";
    return "[" + rat_str(s.alpha_star) + ", " + rat_str(s.beta_star) + "]";
}

std::string set_decimal(const SolutionSet& s) {
    if (s.empty) return "{}";
    return "[" + rational_to_decimal3(s.alpha_star) + ", " + rational_to_decimal3(s.beta_star) +
           "]";
}

json set_json(const SolutionSet& s) {
    json j;
    j["empty"] = s.empty;
    if (!s.empty) {
        j["alpha"] = rat_str(s.alpha_star);
        j["beta"] = rat_str(s.beta_star);
    }
    return j;
}

// Programs eligible for the sampling oracle: a plain objective over at most
// four continuous variables.
bool oracle_eligible(const PolyProgram& p) {
    if (!(p.objective_den == Polynomial(1))) return false;
    if (p.bounds.size() > 4) return false;
    for (const auto& [name, b] : p.bounds)
        if (b.integer_restricted) return false;
    return true;
}

struct OracleOutcome {
    bool ran = false;
    bool ok = true;
    double min_delta = 0, max_delta = 0, tolerance = 0;
};

OracleOutcome oracle_compare(const PolyProgram& p, const SolutionSet& s, int grid) {
    OracleOutcome out;
    if (!oracle_eligible(p) || s.empty) return out;
    GridResult g = grid_oracle(p, grid);
    if (g.empty) return out;
    out.ran = true;
    double width = to_double(s.beta_star) - to_double(s.alpha_star);
    out.tolerance = 2.0 * width / grid + 1e-6;
    out.min_delta = std::abs(to_double(s.alpha_star) - g.min_value);
    out.max_delta = std::abs(to_double(s.beta_star) - g.max_value);
    out.ok = out.min_delta <= out.tolerance && out.max_delta <= out.tolerance;
    return out;
}

const ConditionalStatement& find_conditional(const ModelFile& model, const std::string& id) {
    for (const auto& [cid, c] : model.conditionals)
        if (cid == id) return c;
    throw QueryError("unknown conditional id: " + id);
}

}  // namespace

// --- Loading ---------------------------------------------------------------

ModelFile parse_model(const std::string& text) {
    ParserState st;
    std::istringstream in(text);
    std::string physical;
    std::string logical;
    int line_no = 0;
    int logical_start = 0;
    int depth = 0;

    auto handle = [&st](const std::string& stmt, int line) {
        std::istringstream ss(stmt);
        std::string kw;
        ss >> kw;
        std::string rest;
        std::getline(ss, rest);
        rest = trim(rest);
        if (kw == "var") {
            if (!valid_name(rest)) fail(line, "invalid variable name: " + rest);
            if (!st.declared_vars.insert(rest).second)
                fail(line, "variable declared twice: " + rest);
        } else if (kw == "param") {
            parse_param(st, rest, line);
        } else if (kw == "table") {
            parse_table(st, rest, line);
        } else if (kw == "joint") {
            parse_joint(st, rest, line);
        } else if (kw == "embed") {
            std::size_t eq = rest.find('=');
            if (eq == std::string::npos) fail(line, "expected: embed NAME = \"formula\"");
            std::string name = trim(rest.substr(0, eq));
            if (!valid_name(name)) fail(line, "invalid variable name: " + name);
            FormulaPtr f = parse_formula(unquote(rest.substr(eq + 1), line));
            for (const std::string& atom : formula_atoms(f))
                if (!st.model.net.has_variable(atom))
                    fail(line, "embedded formula uses unknown variable: " + atom);
            st.model.net.embed_formula(f, name);
            st.declared_vars.insert(name);
        } else if (kw == "assert") {
            st.model.assertions.push_back(parse_constraint(rest, st.model.net, line));
        } else if (kw == "cond") {
            parse_cond(st, rest, line);
        } else if (kw == "query") {
            parse_query(st, rest, line);
        } else if (kw == "measures") {
            parse_measures(st, rest, line);
        } else {
            fail(line, "unknown statement: " + kw);
        }
    };

    while (std::getline(in, physical)) {
        ++line_no;
        std::string stripped = trim(strip_comment(physical));
        if (stripped.empty() && depth == 0) continue;
        if (logical.empty()) logical_start = line_no;
        if (!logical.empty()) logical += " ";
        logical += stripped;
        for (char c : stripped) {
            if (c == '{') ++depth;
            if (c == '}') --depth;
        }
        if (depth < 0) fail(line_no, "unbalanced '}'");
        if (depth == 0) {
            std::string stmt = trim(logical);
            logical.clear();
            if (!stmt.empty()) {
                try {
                    handle(stmt, logical_start);
                } catch (const LoadError&) {
                    throw;
                } catch (const Error& e) {
                    fail(logical_start, e.what());
                }
            }
        }
    }
    if (depth != 0) fail(line_no, "unbalanced '{' at end of file");
    return st.model;
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

// --- Execution --------------------------------------------------------------

namespace {

ModalStatus status_of(const ModelFile& model, const ConditionalStatement& c,
                      const ConstraintSet& gamma, const RunOptions& opts, StatusRecord* out) {
    switch (c.type) {
        case CondType::Subjunctive:
        case CondType::Material:
        case CondType::Existential:
        case CondType::QuotientFeasibility:
        case CondType::Feasibility: {
            StatusRecord r = conditional_status(model.net, gamma, c, opts.epsilon);
            if (out) *out = r;
            return r.status;
        }
        case CondType::TruthFunctional: {
            StatusRecord r;
            ModalStatus s = boolean_deduce({}, truth_functional_formula(c), &r);
            if (out) *out = r;
            return s;
        }
        case CondType::BooleanFeasibility: {
            FormulaPtr cons = c.sense.K ? c.consequent_formula : f_not(c.consequent_formula);
            StatusRecord r = boolean_status_probabilistic(model.net, gamma, c.antecedent_formula,
                                                          cons, opts.epsilon);
            if (out) *out = r;
            return r.status;
        }
    }
    throw QueryError("unreachable conditional type");
}

}  // namespace

Report run_model(const ModelFile& model, const RunOptions& options) {
    Report report;
    std::ostringstream text;
    json queries = json::array();

    for (const Query& q : model.queries) {
        json jq;
        jq["query"] = q.raw;
        text << q.raw << "\n";
        std::vector<std::pair<PolyProgram, SolutionSet>> produced;
        try {
            switch (q.kind) {
                case Query::Kind::Prob: {
                    jq["kind"] = "prob";
                    std::string rendered;
                    if (q.conditional)
                        rendered = model.net.query_conditional(q.target, q.cond).render();
                    else
                        rendered = model.net.query_unconditioned(q.target).render();
                    jq["result"] = rendered;
                    text << "  = " << rendered << "\n";
                    break;
                }
                case Query::Kind::Set: {
                    jq["kind"] = "set";
                    ConstraintSet gamma = model.assertions;
                    for (const auto& g : q.given) gamma.push_back(g);
                    PolyProgram p = make_program(model.net, q.objective, gamma, options.epsilon);
                    SolutionSet s = solution_set(p);
                    produced.push_back({p, s});
                    jq["set"] = set_json(s);
                    text << "  set = " << set_exact(s);
                    if (!s.empty) text << "  " << set_decimal(s);
                    text << "\n";
                    break;
                }
                case Query::Kind::Status: {
                    jq["kind"] = "status";
                    ConstraintSet gamma = model.assertions;
                    for (const auto& g : q.given) gamma.push_back(g);
                    StatusRecord rec;
                    ModalStatus s =
                        status_of(model, find_conditional(model, q.cond_id), gamma, options, &rec);
                    jq["status"] = modal_status_name(s);
                    text << "  status = " << modal_status_name(s) << "\n";
                    json jsets = json::object();
                    for (std::size_t i = 0; i < rec.sets.size(); ++i) {
                        const auto& [label, set] = rec.sets[i];
                        jsets[label] = set_json(set);
                        text << "  " << label << " = " << set_exact(set) << "\n";
                        if (i < rec.programs.size()) produced.push_back({rec.programs[i], set});
                    }
                    jq["sets"] = jsets;
                    break;
                }
                case Query::Kind::Deduce: {
                    jq["kind"] = "deduce";
                    ModalStatus s = boolean_deduce(q.premises, q.conclusion);
                    jq["status"] = modal_status_name(s);
                    text << "  status = " << modal_status_name(s) << "\n";
                    break;
                }
                case Query::Kind::Measure: {
                    jq["kind"] = "measure";
                    if (!model.measures) throw QueryError("model has no measures block");
                    auto r = measure_probability(*model.measures, q.measure, q.m_event, q.m_given);
                    if (r) {
                        jq["result"] = rat_str(*r);
                        text << "  = " << rat_str(*r) << "  (" << rational_to_decimal3(*r)
                             << ")\n";
                    } else {
                        jq["result"] = "indefinite";
                        text << "  = indefinite\n";
                    }
                    break;
                }
            }
        } catch (const Error& e) {
            ++report.errors;
            jq["error"] = e.what();
            text << "  error: " << e.what() << "\n";
        }

        if (options.oracle_check) {
            json joracle = json::array();
            for (const auto& [p, s] : produced) {
                OracleOutcome o = oracle_compare(p, s, options.grid);
                if (!o.ran) continue;
                json jo;
                jo["min_delta"] = o.min_delta;
                jo["max_delta"] = o.max_delta;
                jo["tolerance"] = o.tolerance;
                jo["ok"] = o.ok;
                joracle.push_back(jo);
                text << "  oracle: min_delta=" << o.min_delta << " max_delta=" << o.max_delta
                     << " tol=" << o.tolerance << (o.ok ? " ok" : " MISMATCH") << "\n";
                if (!o.ok) ++report.errors;
            }
            if (!joracle.empty()) jq["oracle"] = joracle;
        }
        if (options.dump_programs) {
            json jdumps = json::array();
            for (const auto& [p, s] : produced) {
                std::string d = dump_program(p);
                jdumps.push_back(d);
                std::istringstream lines(d);
                std::string l;
                while (std::getline(lines, l)) text << "    " << l << "\n";
            }
            if (!jdumps.empty()) jq["programs"] = jdumps;
        }
        queries.push_back(std::move(jq));
    }

    report.json["schema"] = 1;
    report.json["queries"] = std::move(queries);
    report.json["errors"] = report.errors;
    report.text = text.str();
    return report;
}

// --- Rendering ---------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += sep;
        out += p;
    }
    return out;
}

std::string rel_text(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Le: return "<=";
        case Rel::Ge: return ">=";
        case Rel::Lt: return "<";
        case Rel::Gt: return ">";
    }
    return "?";
}

std::string render_constraint(const Constraint& c) {
    return c.lhs.render() + " " + rel_text(c.rel) + " " + c.rhs.render();
}

std::string render_term(const Term& t) { return (t.negated ? "!" : "") + t.variable; }

std::string render_cond(const ConditionalStatement& c) {
    std::string type;
    switch (c.type) {
        case CondType::Subjunctive: type = "su"; break;
        case CondType::Material: type = "mat"; break;
        case CondType::Existential: type = "ex"; break;
        case CondType::Feasibility: type = "feas"; break;
        case CondType::QuotientFeasibility: type = "qf"; break;
        case CondType::TruthFunctional: type = "tf"; break;
        case CondType::BooleanFeasibility: type = "bf"; break;
    }
    std::string out = "cond " + type + " ";
    if (c.sense.is_boolean) out += std::string("K=") + (c.sense.K ? "T" : "F");
    else out += "k=" + rational_to_string(c.sense.k);
    out += " : ";
    if (c.sense.is_boolean) {
        out += "\"" + render_formula(c.antecedent_formula) + "\" => \"" +
               render_formula(c.consequent_formula) + "\"";
        return out;
    }
    if (c.type == CondType::Feasibility) {
        out += "{ ";
        for (std::size_t i = 0; i < c.antecedent_constraints.size(); ++i) {
            if (i) out += " ; ";
            out += render_constraint(c.antecedent_constraints[i]);
        }
        out += " }";
    } else {
        std::vector<std::string> lits;
        for (const Term& t : c.antecedent_terms) lits.push_back(render_term(t));
        out += join(lits, " & ");
    }
    out += " => " + render_term(c.consequent);
    return out;
}

std::string state_key(const std::vector<bool>& k, std::size_t parents) {
    // key layout is (parent states..., target state); the text form puts the
    // target first: "T|TF"
    std::string out(1, k.back() ? 'T' : 'F');
    if (parents > 0) {
        out += "|";
        for (std::size_t i = 0; i < parents; ++i) out += k[i] ? 'T' : 'F';
    }
    return out;
}

}  // namespace

std::string render_model(const ModelFile& model) {
    std::ostringstream out;
    const Network& net = model.net;

    for (const auto& v : net.variables()) out << "var " << v << "\n";
    for (const auto& [name, p] : net.parameters()) {
        if (p.integer_restricted)
            out << "param " << name << " int in {" << rational_to_string(p.lower) << ","
                << rational_to_string(p.upper) << "}\n";
        else
            out << "param " << name << " in [" << rational_to_string(p.lower) << ","
                << rational_to_string(p.upper) << "]\n";
    }

    for (const auto& v : net.variables()) {
        const Factor& f = net.factor_of(v);
        if (f.targets.size() > 1) {
            if (f.targets[0] != v) continue;  // each joint block renders once
            out << "joint P0(" << join(f.targets, ",") << ") { ";
            bool first = true;
            for (const auto& [k, poly] : f.rows) {
                if (!first) out << " ; ";
                first = false;
                for (bool b : k) out << (b ? 'T' : 'F');
                out << ": " << poly.render();
            }
            out << " }\n";
            continue;
        }
        out << "table P0(" << v;
        if (!f.given.empty()) out << "|" << join(f.given, ",");
        out << ") { ";
        bool first = true;
        for (const auto& [k, poly] : f.rows) {
            if (!first) out << " ; ";
            first = false;
            out << state_key(k, f.given.size()) << ": " << poly.render();
        }
        out << " }\n";
    }

    for (const auto& c : model.assertions) out << "assert " << render_constraint(c) << "\n";
    for (const auto& [id, c] : model.conditionals) out << render_cond(c) << "\n";

    if (model.measures) {
        const MeasureTable& t = *model.measures;
        out << "measures { element";
        std::vector<std::string> names = t.measure_names();
        for (const auto& n : names)
            out << " | " << n << (t.is_measure(n) ? "" : "!") << ":" << t.unit(n);
        for (const auto& e : t.elements()) {
            out << " ; " << e;
            for (const auto& n : names) out << " | " << rational_to_string(t.value(n, e));
        }
        out << " }\n";
    }

    for (const Query& q : model.queries) out << q.raw << "\n";
    return out.str();
}

}  // namespace ppn
