#include "ppn/proplogic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ppn {

static FormulaPtr make(NodeKind k, std::string atom, FormulaPtr l, FormulaPtr r) {
    auto f = std::make_shared<Formula>();
    f->kind = k;
    f->atom = std::move(atom);
    f->lhs = std::move(l);
    f->rhs = std::move(r);
    return f;
}

FormulaPtr f_truth() { return make(NodeKind::Truth, "", nullptr, nullptr); }
FormulaPtr f_falsity() { return make(NodeKind::Falsity, "", nullptr, nullptr); }
FormulaPtr f_atom(const std::string& name) { return make(NodeKind::Atom, name, nullptr, nullptr); }
FormulaPtr f_not(FormulaPtr f) { return make(NodeKind::Not, "", std::move(f), nullptr); }
FormulaPtr f_and(FormulaPtr a, FormulaPtr b) { return make(NodeKind::And, "", std::move(a), std::move(b)); }
FormulaPtr f_or(FormulaPtr a, FormulaPtr b) { return make(NodeKind::Or, "", std::move(a), std::move(b)); }
FormulaPtr f_xor(FormulaPtr a, FormulaPtr b) { return make(NodeKind::Xor, "", std::move(a), std::move(b)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return make(NodeKind::Implies, "", std::move(a), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) { return make(NodeKind::Iff, "", std::move(a), std::move(b)); }

bool formulas_equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (!a || !b) return a == b;
    if (a->kind != b->kind || a->atom != b->atom) return false;
    return formulas_equal(a->lhs, b->lhs) && formulas_equal(a->rhs, b->rhs);
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    FormulaPtr run() {
        FormulaPtr f = parse_iff();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError("unexpected input", pos_);
        return f;
    }

  private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (text_.compare(pos_, tok.size(), tok) == 0) {
            // "->" must not be mistaken for the head of "<->"; tokens given
            // here are checked longest-first by the callers.
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    bool peek(const std::string& tok) {
        skip_ws();
        return text_.compare(pos_, tok.size(), tok) == 0;
    }

    FormulaPtr parse_iff() {
        FormulaPtr f = parse_imp();
        while (eat("<->")) f = f_iff(f, parse_imp());
        return f;
    }
    FormulaPtr parse_imp() {
        FormulaPtr f = parse_disj();
        skip_ws();
        if (peek("->")) {
            eat("->");
            return f_implies(f, parse_imp());  // right-associative
        }
        return f;
    }
    FormulaPtr parse_disj() {
        FormulaPtr f = parse_conj();
        for (;;) {
            skip_ws();
            if (peek("|")) {
                eat("|");
                f = f_or(f, parse_conj());
            } else if (peek("^")) {
                eat("^");
                f = f_xor(f, parse_conj());
            } else {
                return f;
            }
        }
    }
    FormulaPtr parse_conj() {
        FormulaPtr f = parse_unary();
        while (peek("&")) {
            eat("&");
            f = f_and(f, parse_unary());
        }
        return f;
    }
    FormulaPtr parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unexpected end of formula", pos_);
        char c = text_[pos_];
        if (c == '!' || c == '~') {
            ++pos_;
            return f_not(parse_unary());
        }
        if (c == '(') {
            ++pos_;
            FormulaPtr f = parse_iff();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') throw SyntaxError("expected ')'", pos_);
            ++pos_;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name = text_.substr(start, pos_ - start);
            if (name == "T") return f_truth();
            if (name == "F") return f_falsity();
            return f_atom(name);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

int precedence_level(NodeKind k) {
    switch (k) {
        case NodeKind::Iff: return 0;
        case NodeKind::Implies: return 1;
        case NodeKind::Or:
        case NodeKind::Xor: return 2;
        case NodeKind::And: return 3;
        default: return 4;  // Not, atoms, constants
    }
}

std::string render_at(const FormulaPtr& f, int parent_level) {
    int level = precedence_level(f->kind);
    std::string body;
    switch (f->kind) {
        case NodeKind::Truth: body = "T"; break;
        case NodeKind::Falsity: body = "F"; break;
        case NodeKind::Atom: body = f->atom; break;
        case NodeKind::Not: body = "!" + render_at(f->lhs, 4); break;
        case NodeKind::And: body = render_at(f->lhs, 3) + " & " + render_at(f->rhs, 4); break;
        case NodeKind::Or: body = render_at(f->lhs, 2) + " | " + render_at(f->rhs, 3); break;
        case NodeKind::Xor: body = render_at(f->lhs, 2) + " ^ " + render_at(f->rhs, 3); break;
        // -> is right-associative: parenthesize a nested -> on the left.
        case NodeKind::Implies: body = render_at(f->lhs, 2) + " -> " + render_at(f->rhs, 1); break;
        case NodeKind::Iff: body = render_at(f->lhs, 1) + " <-> " + render_at(f->rhs, 1); break;
    }
    if (level < parent_level && f->kind != NodeKind::Not && level != 4) return "(" + body + ")";
    return body;
}

void collect_atoms(const FormulaPtr& f, std::set<std::string>& out) {
    if (!f) return;
    if (f->kind == NodeKind::Atom) out.insert(f->atom);
    collect_atoms(f->lhs, out);
    collect_atoms(f->rhs, out);
}

}  // namespace

FormulaPtr parse_formula(const std::string& text) { return Parser(text).run(); }

std::string render_formula(const FormulaPtr& f) { return render_at(f, 0); }

std::vector<std::string> formula_atoms(const FormulaPtr& f) {
    std::set<std::string> s;
    collect_atoms(f, s);
    return {s.begin(), s.end()};
}

bool eval_formula(const FormulaPtr& f, const Valuation& v) {
    switch (f->kind) {
        case NodeKind::Truth: return true;
        case NodeKind::Falsity: return false;
        case NodeKind::Atom: {
            auto it = v.find(f->atom);
            if (it == v.end()) throw Error("valuation does not bind atom " + f->atom);
            return it->second;
        }
        case NodeKind::Not: return !eval_formula(f->lhs, v);
        case NodeKind::And: return eval_formula(f->lhs, v) && eval_formula(f->rhs, v);
        case NodeKind::Or: return eval_formula(f->lhs, v) || eval_formula(f->rhs, v);
        case NodeKind::Xor: return eval_formula(f->lhs, v) != eval_formula(f->rhs, v);
        case NodeKind::Implies: return !eval_formula(f->lhs, v) || eval_formula(f->rhs, v);
        case NodeKind::Iff: return eval_formula(f->lhs, v) == eval_formula(f->rhs, v);
    }
    throw Error("unreachable");
}

std::vector<Valuation> all_valuations(const std::vector<std::string>& atoms) {
    if (atoms.size() > 20) throw Error("too many atoms for enumeration (limit 20)");
    std::size_t n = atoms.size();
    std::vector<Valuation> rows;
    rows.reserve(std::size_t(1) << n);
    for (std::size_t i = 0; i < (std::size_t(1) << n); ++i) {
        Valuation v;
        for (std::size_t j = 0; j < n; ++j) {
            // first atom most significant; bit 0 of the row index controls the
            // last atom; T (true) comes first, so bit unset => T
            bool bit = (i >> (n - 1 - j)) & 1;
            v[atoms[j]] = !bit;
        }
        rows.push_back(std::move(v));
    }
    return rows;
}

std::vector<std::pair<Valuation, bool>> truth_table(const FormulaPtr& f) {
    auto atoms = formula_atoms(f);
    std::vector<std::pair<Valuation, bool>> rows;
    for (auto& v : all_valuations(atoms)) {
        bool val = eval_formula(f, v);
        rows.emplace_back(std::move(v), val);
    }
    return rows;
}

std::string atom_variable(const std::string& atom) {
    std::string out = atom;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

static Polynomial translate_raw(const FormulaPtr& f) {
    switch (f->kind) {
        case NodeKind::Truth: return Polynomial(1);
        case NodeKind::Falsity: return Polynomial(0);
        case NodeKind::Atom: return Polynomial::variable(atom_variable(f->atom));
        case NodeKind::Not: return Polynomial(1) - translate_raw(f->lhs);
        case NodeKind::And: return translate_raw(f->lhs) * translate_raw(f->rhs);
        case NodeKind::Or: {
            Polynomial p = translate_raw(f->lhs), q = translate_raw(f->rhs);
            return p + q - p * q;
        }
        case NodeKind::Xor: {
            Polynomial p = translate_raw(f->lhs), q = translate_raw(f->rhs);
            return p + q - Polynomial(2) * p * q;
        }
        case NodeKind::Implies: {
            Polynomial p = translate_raw(f->lhs), q = translate_raw(f->rhs);
            return Polynomial(1) - p + p * q;
        }
        case NodeKind::Iff: {
            Polynomial p = translate_raw(f->lhs), q = translate_raw(f->rhs);
            return Polynomial(1) - p - q + Polynomial(2) * p * q;
        }
    }
    throw Error("unreachable");
}

Polynomial translate(const FormulaPtr& f) {
    Polynomial raw = translate_raw(f);
    return raw.idempotent_reduce(raw.variables());
}

Polynomial indicator_expansion(const std::vector<int>& coeffs,
                               const std::vector<std::string>& atoms) {
    std::size_t n = atoms.size();
    if (coeffs.size() != (std::size_t(1) << n))
        throw Error("indicator coefficient count " + std::to_string(coeffs.size()) +
                    " does not match 2^" + std::to_string(n));
    Polynomial sum;
    std::size_t i = 0;
    for (const auto& v : all_valuations(atoms)) {
        if (coeffs[i] != 0) {
            Polynomial prod(coeffs[i]);
            for (const auto& a : atoms) {
                Polynomial xa = Polynomial::variable(atom_variable(a));
                prod = prod * (v.at(a) ? xa : Polynomial(1) - xa);
            }
            sum += prod;
        }
        ++i;
    }
    return sum.idempotent_reduce(sum.variables());
}

}  // namespace ppn
