#include "ppn/probnet.hpp"

#include <algorithm>
#include <functional>

namespace ppn {

void Network::add_parameter(const Parameter& p) {
    if (params_.count(p.name)) throw Error("duplicate parameter: " + p.name);
    if (p.lower > p.upper) throw Error("parameter " + p.name + " has lower > upper");
    params_[p.name] = p;
}

void Network::add_factor(Factor f) {
    for (const auto& t : f.targets) {
        if (factor_index_.count(t)) throw Error("duplicate variable: " + t);
    }
    for (const auto& g : f.given) {
        if (!factor_index_.count(g)) throw Error("unknown parent variable: " + g);
    }
    std::size_t idx = factors_.size();
    for (const auto& t : f.targets) {
        factor_index_[t] = idx;
        order_.push_back(t);
    }
    factors_.push_back(std::move(f));
}

void Network::add_table(const std::string& target, const std::vector<std::string>& parents,
                        const std::map<std::vector<bool>, Polynomial>& rows) {
    Factor f;
    f.targets = {target};
    f.given = parents;
    f.rows = rows;
    std::size_t key_len = parents.size() + 1;
    if (f.rows.size() != (std::size_t(1) << key_len))
        throw Error("table for " + target + " must have " +
                    std::to_string(std::size_t(1) << key_len) + " rows");
    for (const auto& [k, p] : f.rows)
        if (k.size() != key_len) throw Error("bad row key length in table for " + target);
    // Each parent-state group must be complementary: entry(T) + entry(F) = 1.
    for (const auto& [k, p] : f.rows) {
        if (!k.back()) continue;
        std::vector<bool> kf = k;
        kf.back() = false;
        if (!(p + f.rows.at(kf) == Polynomial(1)))
            throw Error("table rows for " + target + " do not sum to 1");
    }
    add_factor(std::move(f));
}

void Network::add_joint(const std::vector<std::string>& vars,
                        const std::map<std::vector<bool>, Polynomial>& rows) {
    Factor f;
    f.targets = vars;
    f.rows = rows;
    if (f.rows.size() != (std::size_t(1) << vars.size()))
        throw Error("joint table must cover all states");
    add_factor(std::move(f));
}

void Network::embed_formula(const FormulaPtr& f, const std::string& name) {
    if (factor_index_.count(name)) throw Error("duplicate variable: " + name);
    auto atoms = formula_atoms(f);
    for (const auto& a : atoms)
        if (!factor_index_.count(a)) throw Error("unknown atom in embedded formula: " + a);
    std::map<std::vector<bool>, Polynomial> rows;
    // parents in sorted atom order, matching truth_table enumeration
    for (const auto& [v, val] : truth_table(f)) {
        std::vector<bool> key;
        for (const auto& a : atoms) key.push_back(v.at(a));
        std::vector<bool> kt = key, kf = key;
        kt.push_back(true);
        kf.push_back(false);
        rows[kt] = Polynomial(val ? 1 : 0);
        rows[kf] = Polynomial(val ? 0 : 1);
    }
    Factor fac;
    fac.targets = {name};
    fac.given = atoms;
    fac.rows = std::move(rows);
    add_factor(std::move(fac));
}

bool Network::has_variable(const std::string& name) const { return factor_index_.count(name) > 0; }

const Factor& Network::factor_of(const std::string& variable) const {
    auto it = factor_index_.find(variable);
    if (it == factor_index_.end()) throw Error("unknown variable: " + variable);
    return factors_[it->second];
}

std::vector<std::string> Network::ancestral_closure(const std::vector<std::string>& vars) const {
    std::set<std::string> seen;
    std::function<void(const std::string&)> visit = [&](const std::string& v) {
        if (seen.count(v)) return;
        seen.insert(v);
        const Factor& f = factor_of(v);
        for (const auto& t : f.targets) visit(t);  // joint-block members travel together
        for (const auto& g : f.given) visit(g);
    };
    for (const auto& v : vars) visit(v);
    // network declaration order
    std::vector<std::string> out;
    for (const auto& v : order_)
        if (seen.count(v)) out.push_back(v);
    return out;
}

bool Network::is_ancestor(const std::string& anc, const std::string& desc) const {
    auto closure = ancestral_closure({desc});
    return std::find(closure.begin(), closure.end(), anc) != closure.end();
}

std::map<std::vector<bool>, Polynomial> Network::full_joint(
    const std::vector<std::string>& over) const {
    auto closure = ancestral_closure(over);
    if (closure.size() != over.size())
        throw Error("variable set is not ancestrally closed");
    for (const auto& v : over)
        if (std::find(closure.begin(), closure.end(), v) == closure.end())
            throw Error("variable set is not ancestrally closed");
    if (over.size() > 16) throw Error("full joint limited to 16 variables");

    // Enumerate in T-first order with the first variable most significant.
    std::size_t n = over.size();
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[over[i]] = i;

    // Distinct factors touching these variables.
    std::vector<const Factor*> facs;
    {
        std::set<const Factor*> seen;
        for (const auto& v : over) {
            const Factor* f = &factor_of(v);
            if (seen.insert(f).second) facs.push_back(f);
        }
    }

    std::map<std::vector<bool>, Polynomial> out;
    for (std::size_t i = 0; i < (std::size_t(1) << n); ++i) {
        std::vector<bool> state(n);
        for (std::size_t j = 0; j < n; ++j) state[j] = !((i >> (n - 1 - j)) & 1);
        Polynomial prod(1);
        for (const Factor* f : facs) {
            std::vector<bool> key;
            key.reserve(f->given.size() + f->targets.size());
            for (const auto& g : f->given) key.push_back(state[pos.at(g)]);
            for (const auto& t : f->targets) key.push_back(state[pos.at(t)]);
            prod = prod * f->rows.at(key);
        }
        out[state] = prod;
    }
    return out;
}

Polynomial Network::query_unconditioned(const EventConjunction& e) const {
    if (e.events.empty()) return Polynomial(1);
    std::vector<std::string> vars;
    std::map<std::string, bool> fixed;
    for (const auto& [v, s] : e.events) {
        if (fixed.count(v)) throw Error("variable repeated in event: " + v);
        vars.push_back(v);
        fixed[v] = s;
    }
    auto closure = ancestral_closure(vars);
    auto joint = full_joint(closure);
    Polynomial sum;
    for (const auto& [state, p] : joint) {
        bool match = true;
        for (std::size_t j = 0; j < closure.size(); ++j) {
            auto it = fixed.find(closure[j]);
            if (it != fixed.end() && it->second != state[j]) {
                match = false;
                break;
            }
        }
        if (match) sum += p;
    }
    return sum;
}

FractionalPolynomial Network::query_conditional(const EventConjunction& target,
                                                const EventConjunction& cond) const {
    EventConjunction both = target;
    for (const auto& [v, s] : cond.events) {
        for (const auto& [tv, ts] : target.events)
            if (tv == v) throw Error("target and condition overlap on " + v);
        both.events.push_back({v, s});
    }
    return FractionalPolynomial{query_unconditioned(both), query_unconditioned(cond)};
}

Polynomial Network::subjunctive_input_expr(const EventConjunction& antecedents,
                                           const std::pair<std::string, bool>& consequent) const {
    const Factor& f = factor_of(consequent.first);
    // Direct input-table lookup when the antecedent variables are exactly the
    // consequent's parents.
    if (f.targets.size() == 1 && f.given.size() == antecedents.events.size()) {
        std::map<std::string, bool> want;
        for (const auto& [v, s] : antecedents.events) want[v] = s;
        bool match = true;
        std::vector<bool> key;
        for (const auto& g : f.given) {
            auto it = want.find(g);
            if (it == want.end()) {
                match = false;
                break;
            }
            key.push_back(it->second);
        }
        if (match) {
            key.push_back(consequent.second);
            return f.rows.at(key);
        }
    }
    // Otherwise every antecedent must be a graph ancestor of the consequent.
    for (const auto& [v, s] : antecedents.events) {
        if (!has_variable(v) || !is_ancestor(v, consequent.first) || v == consequent.first)
            throw SubjunctiveInexpressibleError(
                "subjunctive inexpressible in this model: " + v +
                " is not an ancestor of " + consequent.first);
    }
    FractionalPolynomial q =
        query_conditional(EventConjunction{{consequent}}, antecedents);
    try {
        return cancel_structural_factor(q);
    } catch (const NotAFactorError&) {
        throw SubjunctiveInexpressibleError(
            "subjunctive inexpressible in this model: conditional quotient " + q.render() +
            " does not contain its denominator as a factor");
    }
}

}  // namespace ppn
