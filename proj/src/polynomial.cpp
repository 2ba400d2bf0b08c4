#include "ppn/polynomial.hpp"

#include <algorithm>

namespace ppn {

int monomial_degree(const Monomial& m) {
    int d = 0;
    for (const auto& [v, e] : m) d += e;
    return d;
}

bool GradedLex::operator()(const Monomial& a, const Monomial& b) const {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    // Lexicographic with the largest variable name most significant.  This
    // tie-break is compatible with monomial multiplication (so leading-term
    // division is sound) and renders x y before x z.
    auto ita = a.rbegin(), itb = b.rbegin();
    while (ita != a.rend() && itb != b.rend()) {
        if (ita->first != itb->first) return ita->first < itb->first;
        if (ita->second != itb->second) return ita->second < itb->second;
        ++ita;
        ++itb;
    }
    return ita == a.rend() && itb != b.rend();
}

Polynomial::Polynomial(const Rational& c) {
    if (c != 0) terms_[Monomial{}] = c;
}

Polynomial Polynomial::variable(const std::string& name) {
    Polynomial p;
    p.terms_[Monomial{{name, 1}}] = 1;
    return p;
}

Polynomial Polynomial::term(const Rational& coeff, const Monomial& m) {
    Polynomial p;
    if (coeff != 0) p.terms_[m] = coeff;
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rational Polynomial::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw Error("polynomial is not constant: " + render());
    return terms_.begin()->second;
}

int Polynomial::total_degree() const {
    return terms_.empty() ? 0 : monomial_degree(terms_.rbegin()->first);
}

std::set<std::string> Polynomial::variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m) out.insert(v);
    return out;
}

void Polynomial::insert_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) insert_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) insert_term(m, -c);
    return *this;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial r = *this;
    r += o;
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial r = *this;
    r -= o;
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r;
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
}

static Monomial monomial_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [v, e] : b) r[v] += e;
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.insert_term(monomial_mul(ma, mb), ca * cb);
    return r;
}

Polynomial Polynomial::substitute(const std::map<std::string, Polynomial>& bindings) const {
    Polynomial result;
    for (const auto& [m, c] : terms_) {
        Polynomial term(c);
        for (const auto& [v, e] : m) {
            auto it = bindings.find(v);
            Polynomial base = (it != bindings.end()) ? it->second : Polynomial::variable(v);
            for (int k = 0; k < e; ++k) term = term * base;
        }
        result += term;
    }
    return result;
}

Polynomial Polynomial::idempotent_reduce(const std::set<std::string>& vars) const {
    Polynomial result;
    for (const auto& [m, c] : terms_) {
        Monomial red;
        for (const auto& [v, e] : m) red[v] = vars.count(v) ? 1 : e;
        result.insert_term(red, c);
    }
    return result;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational term = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end()) throw UnboundVariableError("unbound variable: " + v);
            for (int k = 0; k < e; ++k) term *= it->second;
        }
        total += term;
    }
    return total;
}

static std::string render_monomial(const Monomial& m) {
    std::string out;
    for (const auto& [v, e] : m) {
        for (int k = 0; k < e; ++k) {
            if (!out.empty()) out += " ";
            out += v;
        }
    }
    return out;
}

std::string Polynomial::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = c < 0 ? Rational(-c) : c;
        std::string vars = render_monomial(m);
        std::string body;
        if (vars.empty()) {
            body = rational_to_string(mag);
        } else if (mag == 1) {
            body = vars;
        } else {
            body = rational_to_string(mag) + " " + vars;
        }
        if (first) {
            out = (c < 0 ? "-" : "") + body;
            first = false;
        } else {
            out += (c < 0 ? " - " : " + ") + body;
        }
    }
    return out;
}

std::string FractionalPolynomial::render() const {
    return "(" + numerator.render() + ")/(" + denominator.render() + ")";
}

// Leading-term multivariate division: succeeds exactly when the denominator
// divides the numerator with zero remainder.
Polynomial cancel_structural_factor(const FractionalPolynomial& q) {
    if (q.denominator.is_zero()) throw Error("zero denominator");
    Polynomial rem = q.numerator;
    Polynomial quot;
    const auto& dterms = q.denominator.terms();
    const Monomial& dlead = dterms.rbegin()->first;
    const Rational& dcoef = dterms.rbegin()->second;
    while (!rem.is_zero()) {
        const Monomial& rlead = rem.terms().rbegin()->first;
        const Rational& rcoef = rem.terms().rbegin()->second;
        // divide rlead by dlead
        Monomial m = rlead;
        bool divisible = true;
        for (const auto& [v, e] : dlead) {
            auto it = m.find(v);
            if (it == m.end() || it->second < e) {
                divisible = false;
                break;
            }
            it->second -= e;
            if (it->second == 0) m.erase(it);
        }
        if (!divisible)
            throw NotAFactorError("denominator (" + q.denominator.render() +
                                  ") is not a factor of numerator (" + q.numerator.render() + ")");
        Polynomial t = Polynomial::term(rcoef / dcoef, m);
        quot += t;
        rem -= t * q.denominator;
    }
    return quot;
}

}  // namespace ppn
