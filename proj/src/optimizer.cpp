#include "ppn/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <set>

namespace ppn {

namespace {

const Rational kGap(1, 1000000);      // absolute optimality gap
const Rational kTol(1, 1000000000);   // feasibility slack 1e-9
constexpr int kNodeCap = 100000;

// ---------------------------------------------------------------- exact LP

struct LPRow {
    std::vector<Rational> a;
    Rel rel;  // Eq, Le or Ge only
    Rational b;
};

struct LPProblem {
    int n = 0;
    std::vector<Rational> lo, hi;
    std::vector<LPRow> rows;
    std::vector<Rational> obj;
    Rational obj0;
};

struct LPOut {
    SolveStatus status = SolveStatus::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

// Two-phase dense tableau simplex with Bland's rule; variables are shifted
// to nonnegative form and upper bounds become explicit rows.
LPOut lp_solve_min(const LPProblem& lp) {
    int n = lp.n;
    for (int j = 0; j < n; ++j)
        if (lp.lo[j] > lp.hi[j]) return {SolveStatus::Infeasible, 0, {}};

    // Rows over shifted variables y_j = x_j - lo_j, plus upper-bound rows.
    struct SRow {
        std::vector<Rational> a;
        Rel rel;
        Rational b;
    };
    std::vector<SRow> rows;
    for (const auto& r : lp.rows) {
        Rational b = r.b;
        for (int j = 0; j < n; ++j) b -= r.a[j] * lp.lo[j];
        rows.push_back({r.a, r.rel, b});
    }
    for (int j = 0; j < n; ++j) {
        std::vector<Rational> a(n, Rational(0));
        a[j] = 1;
        rows.push_back({a, Rel::Le, lp.hi[j] - lp.lo[j]});
    }
    int m = int(rows.size());
    for (auto& r : rows) {  // normalize to b >= 0
        if (r.b < 0) {
            for (auto& v : r.a) v = -v;
            r.b = -r.b;
            if (r.rel == Rel::Le)
                r.rel = Rel::Ge;
            else if (r.rel == Rel::Ge)
                r.rel = Rel::Le;
        }
    }

    // Column layout: structural | slack/surplus | artificial.
    int n_extra = 0, n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Rel::Eq) ++n_extra;
        if (r.rel != Rel::Le) ++n_art;
    }
    int N = n + n_extra + n_art;
    std::vector<std::vector<Rational>> T(m, std::vector<Rational>(N + 1, Rational(0)));
    std::vector<int> basis(m, -1);
    std::vector<bool> artificial(N, false);
    int col_extra = n, col_art = n + n_extra;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) T[i][j] = rows[i].a[j];
        T[i][N] = rows[i].b;
        if (rows[i].rel == Rel::Le) {
            T[i][col_extra] = 1;
            basis[i] = col_extra;
            ++col_extra;
        } else if (rows[i].rel == Rel::Ge) {
            T[i][col_extra] = -1;
            ++col_extra;
            T[i][col_art] = 1;
            artificial[col_art] = true;
            basis[i] = col_art;
            ++col_art;
        } else {
            T[i][col_art] = 1;
            artificial[col_art] = true;
            basis[i] = col_art;
            ++col_art;
        }
    }
    std::vector<bool> active(m, true);

    // Reduced-cost rows maintained by pivoting.
    std::vector<Rational> d1(N, Rational(0)), d2(N, Rational(0));
    for (int j = 0; j < N; ++j)
        if (artificial[j]) d1[j] = 1;
    for (int j = 0; j < n; ++j) d2[j] = lp.obj[j];
    for (int i = 0; i < m; ++i)
        if (artificial[basis[i]])
            for (int j = 0; j < N; ++j) d1[j] -= T[i][j];

    auto pivot = [&](int r, int c) {
        Rational piv = T[r][c];
        for (int j = 0; j <= N; ++j) T[r][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r || T[i][c] == 0) continue;
            Rational f = T[i][c];
            for (int j = 0; j <= N; ++j) T[i][j] -= f * T[r][j];
        }
        if (d1[c] != 0) {
            Rational f = d1[c];
            for (int j = 0; j < N; ++j) d1[j] -= f * T[r][j];
        }
        if (d2[c] != 0) {
            Rational f = d2[c];
            for (int j = 0; j < N; ++j) d2[j] -= f * T[r][j];
        }
        basis[r] = c;
    };

    auto iterate = [&](std::vector<Rational>& d, bool allow_art) -> bool {
        // returns false when unbounded
        for (;;) {
            int enter = -1;
            for (int j = 0; j < N; ++j) {
                if (!allow_art && artificial[j]) continue;
                if (d[j] < 0) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (!active[i] || T[i][enter] <= 0) continue;
                Rational ratio = T[i][N] / T[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    };

    // Phase 1.
    iterate(d1, true);
    Rational art_sum = 0;
    for (int i = 0; i < m; ++i)
        if (active[i] && artificial[basis[i]]) art_sum += T[i][N];
    if (art_sum > 0) return {SolveStatus::Infeasible, 0, {}};
    // Drive remaining artificials out of the basis.
    for (int i = 0; i < m; ++i) {
        if (!active[i] || !artificial[basis[i]]) continue;
        int c = -1;
        for (int j = 0; j < N; ++j) {
            if (!artificial[j] && T[i][j] != 0) {
                c = j;
                break;
            }
        }
        if (c >= 0)
            pivot(i, c);
        else
            active[i] = false;  // redundant row
    }

    // Phase 2.
    if (!iterate(d2, false)) return {SolveStatus::Unbounded, 0, {}};

    std::vector<Rational> y(N, Rational(0));
    for (int i = 0; i < m; ++i)
        if (active[i]) y[basis[i]] = T[i][N];
    LPOut out;
    out.status = SolveStatus::Optimal;
    out.x.resize(n);
    out.value = lp.obj0;
    for (int j = 0; j < n; ++j) {
        out.x[j] = lp.lo[j] + y[j];
        out.value += lp.obj[j] * out.x[j];
    }
    return out;
}

// ------------------------------------------------------- program lowering

struct NormConstraint {
    Polynomial q;
    bool is_eq;  // q = 0, else q >= 0
};

struct NormProgram {
    Polynomial obj;  // always minimized
    std::vector<NormConstraint> cons;
    std::vector<std::string> vars;  // sorted
    std::map<std::string, VarBound> bounds;
};

NormProgram lower_program(const Polynomial& objective, const std::vector<Constraint>& constraints,
                          const std::map<std::string, VarBound>& bounds, const Rational& epsilon) {
    NormProgram np;
    np.obj = objective;
    for (const auto& c : constraints) {
        Polynomial q = c.lhs - c.rhs;
        switch (c.rel) {
            case Rel::Eq: np.cons.push_back({q, true}); break;
            case Rel::Ge: np.cons.push_back({q, false}); break;
            case Rel::Le: np.cons.push_back({-q, false}); break;
            case Rel::Gt: np.cons.push_back({q - Polynomial(epsilon), false}); break;
            case Rel::Lt: np.cons.push_back({-q - Polynomial(epsilon), false}); break;
        }
    }
    std::set<std::string> vars;
    auto note = [&](const Polynomial& p) {
        for (const auto& v : p.variables()) vars.insert(v);
    };
    note(np.obj);
    for (const auto& c : np.cons) note(c.q);
    for (const auto& [v, b] : bounds) vars.insert(v);
    for (const auto& v : vars) {
        auto it = bounds.find(v);
        if (it == bounds.end()) throw Error("variable without bounds: " + v);
        np.bounds[v] = it->second;
        np.vars.push_back(v);
    }
    return np;
}

// --------------------------------------------------------- interval tools

struct IV {
    Rational lo, hi;
};

IV iv_mul(const IV& a, const IV& b) {
    Rational c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    IV r{c[0], c[0]};
    for (int i = 1; i < 4; ++i) {
        if (c[i] < r.lo) r.lo = c[i];
        if (c[i] > r.hi) r.hi = c[i];
    }
    return r;
}

using Box = std::map<std::string, std::pair<Rational, Rational>>;

IV mono_interval(const Monomial& m, const Box& box) {
    IV r{1, 1};
    for (const auto& [v, e] : m) {
        auto it = box.find(v);
        IV b{it->second.first, it->second.second};
        for (int k = 0; k < e; ++k) r = iv_mul(r, b);
    }
    return r;
}

// --------------------------------------------------------- RLT relaxation

struct Lifting {
    std::vector<std::string> vars;
    std::vector<Monomial> lifted;  // degree >= 2, sorted
    std::map<std::string, int> var_col;
    std::map<Monomial, int, GradedLex> lift_col;
    bool nonlinear = false;
    // RLT product polynomials, generated once (equality x variable).
    std::vector<Polynomial> eq_products;
    // (constraint q, variable) pairs for inequality bound-factor products.
    std::vector<std::pair<Polynomial, std::string>> ge_products;
};

void collect_monomials(const Polynomial& p, std::set<Monomial, GradedLex>& out) {
    for (const auto& [m, c] : p.terms())
        if (monomial_degree(m) >= 2) out.insert(m);
}

Lifting build_lifting(const NormProgram& np) {
    Lifting lf;
    lf.vars = np.vars;
    for (std::size_t j = 0; j < lf.vars.size(); ++j) lf.var_col[lf.vars[j]] = int(j);

    std::set<Monomial, GradedLex> uni;
    collect_monomials(np.obj, uni);
    for (const auto& c : np.cons) collect_monomials(c.q, uni);
    lf.nonlinear = !uni.empty() || np.obj.total_degree() >= 2;

    if (lf.nonlinear) {
        for (const auto& c : np.cons) {
            for (const auto& v : lf.vars) {
                Polynomial prod = c.q * Polynomial::variable(v);
                collect_monomials(prod, uni);
                if (c.is_eq)
                    lf.eq_products.push_back(prod);
                else
                    lf.ge_products.push_back({c.q, v});
            }
        }
    }
    // Closure: every sub-monomial obtained by removing one variable.
    std::vector<Monomial> work(uni.begin(), uni.end());
    while (!work.empty()) {
        Monomial m = work.back();
        work.pop_back();
        for (const auto& [v, e] : m) {
            Monomial sub = m;
            if (--sub[v] == 0) sub.erase(v);
            if (monomial_degree(sub) >= 2 && !uni.count(sub)) {
                uni.insert(sub);
                work.push_back(sub);
            }
        }
    }
    if (uni.size() > 3000) throw ResourceLimitError("relaxation too large");
    for (const auto& m : uni) {
        lf.lift_col[m] = int(lf.vars.size() + lf.lifted.size());
        lf.lifted.push_back(m);
    }
    return lf;
}

// Linear expression over the lifted columns.
struct LinExpr {
    std::vector<Rational> a;
    Rational c;
};

LinExpr linearize(const Polynomial& p, const Lifting& lf) {
    LinExpr e;
    e.a.assign(lf.vars.size() + lf.lifted.size(), Rational(0));
    e.c = 0;
    for (const auto& [m, coef] : p.terms()) {
        int d = monomial_degree(m);
        if (d == 0) {
            e.c += coef;
        } else if (d == 1) {
            e.a[lf.var_col.at(m.begin()->first)] += coef;
        } else {
            e.a[lf.lift_col.at(m)] += coef;
        }
    }
    return e;
}

LPProblem build_node_lp(const NormProgram& np, const Lifting& lf, const Box& box) {
    LPProblem lp;
    lp.n = int(lf.vars.size() + lf.lifted.size());
    lp.lo.resize(lp.n);
    lp.hi.resize(lp.n);
    for (std::size_t j = 0; j < lf.vars.size(); ++j) {
        const auto& b = box.at(lf.vars[j]);
        lp.lo[j] = b.first;
        lp.hi[j] = b.second;
    }
    for (std::size_t k = 0; k < lf.lifted.size(); ++k) {
        IV iv = mono_interval(lf.lifted[k], box);
        lp.lo[lf.vars.size() + k] = iv.lo;
        lp.hi[lf.vars.size() + k] = iv.hi;
    }

    auto add_row = [&](const LinExpr& e, Rel rel) {
        lp.rows.push_back({e.a, rel, -e.c});
    };
    for (const auto& c : np.cons) add_row(linearize(c.q, lf), c.is_eq ? Rel::Eq : Rel::Ge);

    // McCormick envelopes: one set per (monomial, variable-split) pair.
    for (const auto& m : lf.lifted) {
        int wcol = lf.lift_col.at(m);
        for (const auto& [v, e] : m) {
            Monomial sub = m;
            if (--sub[v] == 0) sub.erase(v);
            int xcol = lf.var_col.at(v);
            int ycol = monomial_degree(sub) == 1 ? lf.var_col.at(sub.begin()->first)
                                                 : lf.lift_col.at(sub);
            const auto& bx = box.at(v);
            IV by = mono_interval(sub, box);
            auto env = [&](const Rational& cx, const Rational& cy, Rel rel) {
                // w - cx*y - cy*x  rel  -cx*cy
                std::vector<Rational> a(lp.n, Rational(0));
                a[wcol] = 1;
                a[ycol] -= cx;
                a[xcol] -= cy;
                lp.rows.push_back({a, rel, -(cx * cy)});
            };
            env(bx.first, by.lo, Rel::Ge);
            env(bx.second, by.hi, Rel::Ge);
            env(bx.second, by.lo, Rel::Le);
            env(bx.first, by.hi, Rel::Le);
        }
    }

    // Constraint-product RLT rows.
    for (const auto& q : lf.eq_products) add_row(linearize(q, lf), Rel::Eq);
    for (const auto& [q, v] : lf.ge_products) {
        const auto& bv = box.at(v);
        Polynomial xv = Polynomial::variable(v);
        add_row(linearize(q * (xv - Polynomial(bv.first)), lf), Rel::Ge);
        add_row(linearize(q * (Polynomial(bv.second) - xv), lf), Rel::Ge);
    }

    LinExpr obj = linearize(np.obj, lf);
    lp.obj = obj.a;
    lp.obj0 = obj.c;
    return lp;
}

// ------------------------------------------------------------ candidates

using Point = std::map<std::string, Rational>;

Rational rat_round(const Rational& r) {
    Integer num = numerator(r), den = denominator(r);
    Integer q;
    if (num >= 0) q = Integer((2 * num + den) / (2 * den));
    else q = Integer(-Integer((2 * -num + den) / (2 * den)));
    return Rational(q);
}

Rational clamp(const Rational& v, const Rational& lo, const Rational& hi) {
    return v < lo ? lo : (v > hi ? hi : v);
}

Point snap_integers(Point p, const NormProgram& np) {
    for (auto& [v, val] : p) {
        const auto& b = np.bounds.at(v);
        if (b.integer_restricted) val = clamp(rat_round(val), b.lower, b.upper);
    }
    return p;
}

bool exact_feasible(const NormProgram& np, const Point& p) {
    for (const auto& [v, b] : np.bounds) {
        const Rational& x = p.at(v);
        if (x < b.lower - kTol || x > b.upper + kTol) return false;
        if (b.integer_restricted && x != rat_round(x)) return false;
    }
    for (const auto& c : np.cons) {
        Rational r = c.q.evaluate(p);
        if (c.is_eq) {
            if (r > kTol || r < -kTol) return false;
        } else {
            if (r < -kTol) return false;
        }
    }
    return true;
}

// Local repair of violated equalities: solve each (degree-1-in-some-variable)
// equality for one of its variables and clamp into bounds.
Point repair(Point p, const NormProgram& np) {
    for (int pass = 0; pass < 3; ++pass) {
        bool changed = false;
        for (const auto& c : np.cons) {
            if (!c.is_eq) continue;
            Rational r = c.q.evaluate(p);
            if (r <= kTol && r >= -kTol) continue;
            for (const auto& v : c.q.variables()) {
                // write q = A*v + B with A, B free of v
                Polynomial A, B;
                bool linear_in_v = true;
                for (const auto& [m, coef] : c.q.terms()) {
                    auto it = m.find(v);
                    if (it == m.end()) {
                        B += Polynomial::term(coef, m);
                    } else if (it->second == 1) {
                        Monomial rest = m;
                        rest.erase(v);
                        A += Polynomial::term(coef, rest);
                    } else {
                        linear_in_v = false;
                        break;
                    }
                }
                if (!linear_in_v) continue;
                Rational a = A.evaluate(p);
                if (a == 0) continue;
                Rational val = -B.evaluate(p) / a;
                const auto& bd = np.bounds.at(v);
                if (bd.integer_restricted) val = rat_round(val);
                p[v] = clamp(val, bd.lower, bd.upper);
                changed = true;
                break;
            }
        }
        if (!changed) break;
    }
    return p;
}

// -------------------------------------------------------- branch and bound

struct BBResult {
    bool has_incumbent = false;
    Rational value;
    Point witness;
    bool infeasible_tree = false;
};

BBResult branch_and_bound(const NormProgram& np) {
    Lifting lf = build_lifting(np);

    Box root;
    for (const auto& [v, b] : np.bounds) root[v] = {b.lower, b.upper};

    struct Node {
        Rational bound;
        bool has_bound;
        Box box;
    };
    auto cmp = [](const Node& a, const Node& b) {
        if (a.has_bound != b.has_bound) return a.has_bound < b.has_bound;  // unknown first
        return a.bound > b.bound;
    };
    std::vector<Node> heap;
    auto push = [&](Node n) {
        heap.push_back(std::move(n));
        std::push_heap(heap.begin(), heap.end(), cmp);
    };
    auto pop = [&]() {
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Node n = std::move(heap.back());
        heap.pop_back();
        return n;
    };
    push({0, false, root});

    BBResult res;
    auto try_candidate = [&](const Point& cand) {
        if (!exact_feasible(np, cand)) return;
        Rational val = np.obj.evaluate(cand);
        if (!res.has_incumbent || val < res.value) {
            res.has_incumbent = true;
            res.value = val;
            res.witness = cand;
        }
    };

    int processed = 0;
    while (!heap.empty()) {
        Node node = pop();
        if (res.has_incumbent && node.has_bound && node.bound >= res.value - kGap) break;
        if (++processed > kNodeCap) throw ResourceLimitError("branch-and-bound node cap reached");

        LPProblem lp = build_node_lp(np, lf, node.box);
        LPOut out = lp_solve_min(lp);
        if (out.status == SolveStatus::Infeasible) continue;
        if (out.status == SolveStatus::Unbounded)
            throw Error("relaxation unbounded despite finite bounds");
        Rational L = out.value;
        if (res.has_incumbent && L >= res.value - kGap) continue;

        Point p;
        for (std::size_t j = 0; j < lf.vars.size(); ++j) p[lf.vars[j]] = out.x[j];
        Point mid;
        for (const auto& [v, b] : node.box) mid[v] = (b.first + b.second) / 2;

        try_candidate(snap_integers(p, np));
        try_candidate(snap_integers(repair(p, np), np));
        try_candidate(snap_integers(repair(mid, np), np));
        if (res.has_incumbent && L >= res.value - kGap) continue;

        // Branch: fractional integers first.
        std::string branch_var;
        Rational branch_at;
        bool integer_branch = false;
        for (const auto& v : lf.vars) {
            const auto& b = np.bounds.at(v);
            if (!b.integer_restricted) continue;
            Rational x = p.at(v), r = rat_round(x);
            if (x - r > kTol || r - x > kTol) {
                branch_var = v;
                branch_at = x;
                integer_branch = true;
                break;
            }
        }
        if (!integer_branch) {
            // Largest envelope violation among lifted monomials.
            Rational best_viol = 0;
            const Monomial* best_m = nullptr;
            for (std::size_t k = 0; k < lf.lifted.size(); ++k) {
                Rational prod = 1;
                for (const auto& [v, e] : lf.lifted[k])
                    for (int t = 0; t < e; ++t) prod *= p.at(v);
                Rational viol = out.x[lf.vars.size() + k] - prod;
                if (viol < 0) viol = -viol;
                if (viol > best_viol) {
                    best_viol = viol;
                    best_m = &lf.lifted[k];
                }
            }
            // Widest variable of the most violated monomial; when the LP
            // point already honors all products (within tolerance) but was
            // not accepted as an exact candidate, fall back to the overall
            // widest variable so no region is discarded unsoundly.
            Rational widest = -1;
            if (best_m != nullptr && best_viol > kTol) {
                for (const auto& [v, e] : *best_m) {
                    const auto& b = node.box.at(v);
                    Rational w = b.second - b.first;
                    if (w > widest) {
                        widest = w;
                        branch_var = v;
                    }
                }
            } else {
                for (const auto& v : lf.vars) {
                    const auto& b = node.box.at(v);
                    Rational w = b.second - b.first;
                    if (w > widest) {
                        widest = w;
                        branch_var = v;
                    }
                }
            }
            if (widest <= Rational(1, Integer("1000000000000"))) continue;  // box exhausted
            const auto& b = node.box.at(branch_var);
            Rational w = b.second - b.first;
            branch_at = clamp(p.at(branch_var), b.first + w / 4, b.second - w / 4);
        }

        Node left{L, true, node.box}, right{L, true, node.box};
        if (integer_branch) {
            Rational fl(numerator(branch_at) >= 0
                            ? numerator(branch_at) / denominator(branch_at)
                            : -((-numerator(branch_at) + denominator(branch_at) - 1) /
                                denominator(branch_at)));
            left.box[branch_var].second = fl;
            right.box[branch_var].first = fl + 1;
        } else {
            left.box[branch_var].second = branch_at;
            right.box[branch_var].first = branch_at;
        }
        push(std::move(left));
        push(std::move(right));
    }

    res.infeasible_tree = !res.has_incumbent;
    return res;
}

SolveOutcome solve_min_poly(const Polynomial& objective,
                            const std::vector<Constraint>& constraints,
                            const std::map<std::string, VarBound>& bounds,
                            const Rational& epsilon) {
    NormProgram np = lower_program(objective, constraints, bounds, epsilon);
    BBResult bb = branch_and_bound(np);
    SolveOutcome out;
    if (!bb.has_incumbent) {
        out.status = SolveStatus::Infeasible;
        return out;
    }
    out.status = SolveStatus::Optimal;
    out.value = bb.value;
    out.witness = bb.witness;
    return out;
}

}  // namespace

SolveOutcome solve(const PolyProgram& p) {
    if (p.fractional()) throw Error("solve expects a polynomial objective");
    bool maximize = p.direction == Direction::Max;
    SolveOutcome out = solve_min_poly(maximize ? -p.objective_num : p.objective_num,
                                      p.constraints, p.bounds, p.epsilon);
    if (out.status == SolveStatus::Optimal && maximize) out.value = -out.value;
    return out;
}

bool feasible(const PolyProgram& p) {
    PolyProgram q = p;
    q.objective_num = Polynomial(0);
    q.objective_den = Polynomial(1);
    q.direction = Direction::Min;
    return solve(q).status == SolveStatus::Optimal;
}

SolveOutcome solve_fractional(const PolyProgram& p) {
    if (!p.fractional()) return solve(p);
    bool maximize = p.direction == Direction::Max;
    Polynomial num = maximize ? -p.objective_num : p.objective_num;
    const std::string t = "__cc_t";
    if (p.bounds.count(t)) throw Error("reserved variable name in use: " + t);

    const Rational caps[] = {Rational(1000), Rational(1000000), Rational(1000000000)};
    SolveOutcome last;
    for (const Rational& T : caps) {
        PolyProgram cc;
        cc.direction = Direction::Min;
        cc.epsilon = p.epsilon;
        cc.bounds = p.bounds;
        cc.bounds[t] = VarBound{0, T, false};
        cc.constraints = p.constraints;
        cc.constraints.push_back({p.objective_den * Polynomial::variable(t), Rel::Eq, Polynomial(1)});
        cc.objective_num = num * Polynomial::variable(t);
        SolveOutcome out = solve(cc);
        if (out.status == SolveStatus::Infeasible) {
            PolyProgram base = p;
            base.objective_num = Polynomial(0);
            base.objective_den = Polynomial(1);
            base.direction = Direction::Min;
            out.denominator_forced_zero = feasible(base);
            return out;
        }
        out.witness.erase(t);
        last = out;
        Rational mag = out.value < 0 ? Rational(-out.value) : out.value;
        if (mag < T / 2) {
            if (maximize) out.value = -out.value;
            return out;
        }
    }
    SolveOutcome out;
    out.status = SolveStatus::Unbounded;
    return out;
}

SolveOutcome solve_any(const PolyProgram& p) {
    return p.fractional() ? solve_fractional(p) : solve(p);
}

SolutionSet solution_set(const PolyProgram& p) {
    PolyProgram lo = p, hi = p;
    lo.direction = Direction::Min;
    hi.direction = Direction::Max;
    SolveOutcome a = solve_any(lo), b = solve_any(hi);

    SolutionSet s;
    if (a.status == SolveStatus::Infeasible && b.status == SolveStatus::Infeasible) {
        s.empty = true;
        s.denominator_may_vanish = a.denominator_forced_zero || b.denominator_forced_zero;
        return s;
    }
    s.empty = false;
    if (a.status == SolveStatus::Unbounded)
        s.alpha_unbounded = true;
    else
        s.alpha_star = a.value;
    if (b.status == SolveStatus::Unbounded)
        s.beta_unbounded = true;
    else
        s.beta_star = b.value;
    if (p.fractional()) {
        PolyProgram denzero = p;
        denzero.objective_num = Polynomial(0);
        denzero.objective_den = Polynomial(1);
        denzero.direction = Direction::Min;
        denzero.constraints.push_back({p.objective_den, Rel::Eq, Polynomial(0)});
        s.denominator_may_vanish = feasible(denzero);
    }
    return s;
}

bool set_is_singleton(const SolutionSet& s, const Rational& k) {
    return !s.empty && !s.alpha_unbounded && !s.beta_unbounded && s.alpha_star == k &&
           s.beta_star == k;
}

bool membership(const PolyProgram& p, const Rational& value) {
    PolyProgram q = p;
    q.direction = Direction::Min;
    if (p.fractional()) {
        const std::string t = "__cc_t";
        q.bounds[t] = VarBound{0, Rational(1000000000), false};
        q.constraints.push_back(
            {p.objective_den * Polynomial::variable(t), Rel::Eq, Polynomial(1)});
        q.constraints.push_back(
            {p.objective_num * Polynomial::variable(t), Rel::Eq, Polynomial(value)});
    } else {
        q.constraints.push_back({p.objective_num, Rel::Eq, Polynomial(value)});
    }
    q.objective_num = Polynomial(0);
    q.objective_den = Polynomial(1);
    return solve(q).status == SolveStatus::Optimal;
}

// ---------------------------------------------------------------- oracle

namespace {

// flat double-coefficient polynomial for the grid sweep
struct GTerm {
    double c;
    std::vector<int> e;  // exponents aligned to vars
};

struct GPoly {
    std::vector<GTerm> terms;
    int max_var = -1;  // highest variable index that appears (-1: constant)
};

GPoly to_gpoly(const Polynomial& p, const std::vector<std::string>& vars) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < vars.size(); ++i) idx[vars[i]] = i;
    GPoly out;
    for (const auto& [m, c] : p.terms()) {
        GTerm t{to_double(c), std::vector<int>(vars.size(), 0)};
        for (const auto& [v, k] : m) {
            std::size_t i = idx.at(v);
            t.e[i] = k;
            out.max_var = std::max(out.max_var, static_cast<int>(i));
        }
        out.terms.push_back(std::move(t));
    }
    return out;
}

// Coefficients in variable `var` after fixing values[0..var-1]; everything
// past `var` must already be absent (callers only fold polynomials whose
// max_var equals `var` or less).
void fold_univariate(const GPoly& p, int var, const std::vector<double>& values,
                     std::vector<double>& coef) {
    coef.assign(1, 0.0);
    for (const auto& t : p.terms) {
        double c = t.c;
        for (int i = 0; i < var; ++i)
            for (int k = 0; k < t.e[i]; ++k) c *= values[i];
        int d = var >= 0 && var < static_cast<int>(t.e.size()) ? t.e[var] : 0;
        if (static_cast<int>(coef.size()) <= d) coef.resize(d + 1, 0.0);
        coef[d] += c;
    }
}

double horner(const std::vector<double>& coef, double x) {
    double v = 0;
    for (std::size_t i = coef.size(); i-- > 0;) v = v * x + coef[i];
    return v;
}

}  // namespace

GridResult grid_oracle(const PolyProgram& p, int resolution) {
    NormProgram np = lower_program(p.objective_num, p.constraints, p.bounds, p.epsilon);
    int continuous = 0;
    for (const auto& [v, b] : np.bounds)
        if (!b.integer_restricted) ++continuous;
    if (continuous > 6) throw Error("grid oracle limited to 6 continuous variables");

    const std::vector<std::string>& vars = np.vars;
    const int n = static_cast<int>(vars.size());
    constexpr double slack = 1e-9;

    std::vector<GPoly> cons;
    std::vector<bool> is_eq;
    for (const auto& c : np.cons) {
        cons.push_back(to_gpoly(c.q, vars));
        is_eq.push_back(c.is_eq);
    }
    GPoly objnum = to_gpoly(p.objective_num, vars);
    GPoly objden = to_gpoly(p.objective_den, vars);

    GridResult res;

    // constraints with no variables at all
    for (std::size_t i = 0; i < cons.size(); ++i) {
        if (cons[i].max_var >= 0) continue;
        double v = 0;
        for (const auto& t : cons[i].terms) v += t.c;
        if (is_eq[i] ? std::fabs(v) > slack : v < -slack) return res;
    }
    if (n == 0) {
        double den = 1, num = 0;
        if (p.fractional()) {
            den = 0;
            for (const auto& t : objden.terms) den += t.c;
            if (std::fabs(den) <= 1e-12) return res;
        }
        for (const auto& t : objnum.terms) num += t.c;
        res.empty = false;
        res.min_value = res.max_value = num / den;
        return res;
    }

    // constraint indices grouped by the level at which they become checkable
    std::vector<std::vector<std::size_t>> due(n);
    for (std::size_t i = 0; i < cons.size(); ++i)
        if (cons[i].max_var >= 0) due[cons[i].max_var].push_back(i);

    std::vector<double> values(n, 0.0);
    std::vector<double> coef, root_coef;

    std::function<void(int)> rec = [&](int depth) {
        const auto& b = np.bounds.at(vars[depth]);
        double lo = to_double(b.lower), hi = to_double(b.upper);

        // candidate grid values for this variable
        std::vector<double> candidates;
        if (b.integer_restricted) {
            for (Rational r = rat_round(b.lower) < b.lower ? rat_round(b.lower) + 1
                                                           : rat_round(b.lower);
                 r <= b.upper; r += 1)
                candidates.push_back(to_double(r));
        } else {
            // a linear equality that is univariate here pins the variable to
            // (at most) the grid values adjacent to its root
            bool pinned = false;
            for (std::size_t i : due[depth]) {
                if (!is_eq[i]) continue;
                fold_univariate(cons[i], depth, values, root_coef);
                double step = hi > lo ? (hi - lo) / resolution : 1.0;
                // pin only when the slack window around the root is narrower
                // than one grid step, so the adjacent values cover it
                if (root_coef.size() == 2 && std::fabs(root_coef[1]) * step > 2 * slack) {
                    double r = -root_coef[0] / root_coef[1];
                    if (hi > lo) {
                        long idx = std::lround((r - lo) / step);
                        for (long j = idx - 1; j <= idx + 1; ++j) {
                            if (j < 0 || j > resolution) continue;
                            double v = lo + (hi - lo) * static_cast<double>(j) / resolution;
                            if (std::fabs(horner(root_coef, v)) <= slack)
                                candidates.push_back(v);
                        }
                    } else if (std::fabs(horner(root_coef, lo)) <= slack) {
                        candidates.push_back(lo);
                    }
                    pinned = true;
                    break;
                }
            }
            if (!pinned) {
                if (hi > lo)
                    for (int i = 0; i <= resolution; ++i)
                        candidates.push_back(lo + (hi - lo) * i / resolution);
                else
                    candidates.push_back(lo);
            }
        }

        for (double val : candidates) {
            values[depth] = val;
            bool ok = true;
            for (std::size_t i : due[depth]) {
                fold_univariate(cons[i], depth, values, coef);
                double v = horner(coef, val);
                if (is_eq[i] ? std::fabs(v) > slack : v < -slack) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            if (depth + 1 < n) {
                rec(depth + 1);
                continue;
            }
            fold_univariate(objnum, depth, values, coef);
            double num = horner(coef, val);
            double den = 1;
            if (p.fractional()) {
                fold_univariate(objden, depth, values, coef);
                den = horner(coef, val);
                if (std::fabs(den) <= 1e-12) continue;
            }
            double v = num / den;
            if (res.empty) {
                res.empty = false;
                res.min_value = res.max_value = v;
            } else {
                res.min_value = std::min(res.min_value, v);
                res.max_value = std::max(res.max_value, v);
            }
        }
    };

    rec(0);
    return res;
}

std::string dump_program(const PolyProgram& p) {
    std::string out = (p.direction == Direction::Min ? "Minimize: " : "Maximize: ");
    out += p.objective_num.render();
    if (p.fractional()) out += " / " + p.objective_den.render();
    out += "\n";
    const char* label = "subject to: ";
    for (const auto& c : p.constraints) {
        const char* rel = c.rel == Rel::Eq   ? " = "
                          : c.rel == Rel::Le ? " <= "
                          : c.rel == Rel::Ge ? " >= "
                          : c.rel == Rel::Lt ? " < "
                                             : " > ";
        out += std::string(label) + c.lhs.render() + rel + c.rhs.render() + "\n";
        label = "            ";
    }
    label = "and: ";
    for (const auto& [v, b] : p.bounds) {
        if (b.integer_restricted && b.lower == 0 && b.upper == 1) {
            out += std::string(label) + v + " in {0, 1}\n";
        } else {
            out += std::string(label) + rational_to_string(b.lower) + " <= " + v +
                   " <= " + rational_to_string(b.upper) +
                   (b.integer_restricted ? " (integer)" : "") + "\n";
        }
        label = "     ";
    }
    return out;
}

}  // namespace ppn
