#include "dimer/centers.hpp"

#include "dimer/matchings.hpp"

#include <algorithm>
#include <deque>

namespace dimer {

namespace {

using State = std::pair<int, Monomial>;

// Labels of cycles at i reachable within the filter.
template <class Accept>
MonomialSet bfs_labels(const Quiver &q, const GradingContext &ctx, int i, Accept accept) {
    MonomialSet out;
    std::set<State> seen;
    State start{i, one(ctx.num_vars())};
    seen.insert(start);
    std::deque<State> queue{start};
    while (!queue.empty()) {
        auto [v, m] = queue.front();
        queue.pop_front();
        for (const auto &a : q.arrows) {
            if (a.tail != v)
                continue;
            Monomial n = mul(m, ctx.arrow_labels[a.id]);
            if (!accept(n))
                continue;
            State s{a.head, n};
            if (seen.insert(s).second) {
                if (a.head == i && !is_one(n))
                    out.insert(n);
                queue.push_back(std::move(s));
            }
        }
    }
    return out;
}

}  // namespace

CycleLabels::CycleLabels(const Quiver &q, const GradingContext &ctx, int cap)
    : q_(q), ctx_(ctx), cap_(cap), nvars_(ctx.num_vars()) {
    const int probe = cap_ + 1;
    for (int i = 0; i < q_.num_vertices; ++i)
        per_vertex_.push_back(bfs_labels(q_, ctx_, i, [probe](const Monomial &m) { return degree(m) <= probe; }));

    MonomialSet uni;
    for (const auto &s : per_vertex_)
        uni.insert(s.begin(), s.end());
    s_elems_ = uni;
    for (auto it = s_elems_.begin(); it != s_elems_.end(); ++it)
        for (const auto &u : uni) {
            Monomial p = mul(*it, u);
            if (degree(p) <= probe)
                s_elems_.insert(p);
        }

    if (!per_vertex_.empty())
        for (const auto &m : per_vertex_[0]) {
            bool all = true;
            for (const auto &s : per_vertex_)
                if (!s.count(m)) {
                    all = false;
                    break;
                }
            if (all)
                r_elems_.insert(m);
        }
}

MonomialSet CycleLabels::divisor_labels(int i, const Monomial &m) const {
    return bfs_labels(q_, ctx_, i, [&m](const Monomial &n) { return divides(n, m); });
}

bool CycleLabels::cycle_at(int i, const Monomial &m) const {
    if (is_one(m))
        return true;
    if (degree(m) <= cap_ + 1)
        return per_vertex_[i].count(m) > 0;
    return divisor_labels(i, m).count(m) > 0;
}

bool CycleLabels::in_R(const Monomial &m) const {
    if (is_one(m))
        return true;
    if (degree(m) <= cap_ + 1)
        return r_elems_.count(m) > 0;
    for (int i = 0; i < q_.num_vertices; ++i)
        if (!cycle_at(i, m))
            return false;
    return true;
}

bool CycleLabels::in_S(const Monomial &m) const {
    if (is_one(m))
        return true;
    if (degree(m) <= cap_ + 1)
        return s_elems_.count(m) > 0;
    auto it = s_cache_.find(m);
    if (it != s_cache_.end())
        return it->second;
    MonomialSet labels;
    for (int i = 0; i < q_.num_vertices; ++i) {
        auto l = divisor_labels(i, m);
        labels.insert(l.begin(), l.end());
    }
    std::map<Monomial, bool> memo;
    auto rec = [&](auto &&self, const Monomial &d) -> bool {
        if (is_one(d))
            return true;
        auto f = memo.find(d);
        if (f != memo.end())
            return f->second;
        bool ok = false;
        for (const auto &u : labels)
            if (divides(u, d) && self(self, quotient(d, u))) {
                ok = true;
                break;
            }
        memo[d] = ok;
        return ok;
    };
    bool ok = rec(rec, m);
    s_cache_[m] = ok;
    return ok;
}

bool membership(const MonomialSemigroup &sg, const Monomial &m) {
    std::map<Monomial, bool> memo;
    auto rec = [&](auto &&self, const Monomial &d) -> bool {
        if (is_one(d))
            return true;
        auto f = memo.find(d);
        if (f != memo.end())
            return f->second;
        bool ok = false;
        for (const auto &g : sg.generators)
            if (!is_one(g) && divides(g, d) && self(self, quotient(d, g))) {
                ok = true;
                break;
            }
        memo[d] = ok;
        return ok;
    };
    return rec(rec, m);
}

namespace {

// Elements of `pool` that are not a product of two nonconstant elements of `closed`.
std::vector<Monomial> indecomposables(const MonomialSet &pool, const MonomialSet &closed) {
    std::vector<Monomial> out;
    for (const auto &u : pool) {
        bool dec = false;
        for (const auto &a : closed) {
            if (degree(a) >= degree(u))
                break;
            if (divides(a, u) && closed.count(quotient(u, a))) {
                dec = true;
                break;
            }
        }
        if (!dec)
            out.push_back(u);
    }
    return out;
}

}  // namespace

MonomialSemigroup cycle_algebra(const CycleLabels &cl) {
    MonomialSet uni;
    for (int i = 0; i < cl.quiver().num_vertices; ++i)
        uni.insert(cl.at(i).begin(), cl.at(i).end());
    MonomialSemigroup sg;
    sg.cap = cl.cap();
    for (auto &g : indecomposables(uni, cl.s_elements())) {
        if (degree(g) > cl.cap())
            sg.saturated = false;
        else
            sg.generators.push_back(g);
    }
    return sg;
}

std::vector<Monomial> vertex_cycle_monomials(const CycleLabels &cl, int i) {
    std::vector<Monomial> out;
    for (auto &g : indecomposables(cl.at(i), cl.at(i)))
        if (degree(g) <= cl.cap())
            out.push_back(g);
    return out;
}

HomotopyCenter homotopy_center(const CycleLabels &cl, const MonomialSemigroup &s) {
    HomotopyCenter r;
    r.cap = cl.cap();
    const auto &R = cl.r_elements();
    const auto &S = cl.s_elements();
    std::vector<Monomial> J;
    for (const auto &m : R) {
        bool covered = false;
        for (const auto &j : J)
            if (divides(j, m) && S.count(quotient(m, j))) {
                covered = true;
                break;
            }
        if (!covered)
            J.push_back(m);
    }
    for (auto &j : J) {
        if (degree(j) > cl.cap())
            r.saturated = false;
        else
            r.module_generators.push_back(j);
    }
    for (auto &g : indecomposables(R, R))
        if (degree(g) <= cl.cap())
            r.algebra_generators.push_back(g);
    for (const auto &j : r.module_generators) {
        if (!R.count(j))
            r.module_form_exact = false;
        for (const auto &m : S) {
            Monomial p = mul(j, m);
            if (degree(p) <= cl.cap() + 1 && !R.count(p))
                r.module_form_exact = false;
        }
    }
    r.equals_s = true;
    for (const auto &g : s.generators)
        if (!cl.in_R(g)) {
            r.equals_s = false;
            break;
        }
    return r;
}

bool is_normal(const CycleLabels &cl, const HomotopyCenter &r, const MonomialSemigroup &s) {
    for (const auto &a : r.algebra_generators)
        for (const auto &g : s.generators) {
            Monomial p = mul(a, g);
            if (degree(p) <= cl.cap() + 1 && !cl.in_R(p))
                return false;
        }
    return true;
}

std::optional<Monomial> sigma_s_in_r_counterexample(const CycleLabels &cl) {
    Monomial sig = sigma(cl.context());
    if (!cl.in_R(sig))
        return one(cl.num_vars());
    for (const auto &m : cl.s_elements()) {
        Monomial p = mul(sig, m);
        if (degree(p) > cl.cap() + 1)
            break;
        if (!cl.in_R(p))
            return m;
    }
    return std::nullopt;
}

bool in_ideal(const CycleLabels &cl, const std::vector<Monomial> &gens, const Monomial &m) {
    for (const auto &g : gens)
        if (divides(g, m) && cl.in_R(quotient(m, g)))
            return true;
    return false;
}

std::optional<NonnoetherianWitness> nonnoetherian_witness(const CycleLabels &cl, const Bounds &b) {
    Monomial sig = sigma(cl.context());
    for (const auto &s : cl.s_elements()) {
        if (degree(s) > cl.cap())
            break;
        if (cl.in_R(s) || divides(sig, s))
            continue;
        NonnoetherianWitness w;
        w.s = s;
        Monomial s2 = power(s, 2), s3 = power(s, 3);
        w.powers_outside_r = !cl.in_R(s2) && !cl.in_R(s3);
        for (int N = 0; N <= b.witness_max_power; ++N) {
            Monomial sn = power(sig, N);
            Monomial c1 = mul(s, sn), c2 = mul(s2, sn), c3 = mul(s3, sn);
            if (cl.in_R(c1) && cl.in_R(c2) && cl.in_R(c3)) {
                w.N = N;
                w.chain = {c1, c2, c3};
                w.chain_strict = !in_ideal(cl, {c1}, c2) && !in_ideal(cl, {c1, c2}, c3);
                return w;
            }
        }
        w.N = -1;
        return w;
    }
    return std::nullopt;
}

namespace {

// Reduced row echelon form over the rationals; returns the rank.
int row_reduce(std::vector<std::vector<Rational>> &m, int ncols) {
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(m.size()); ++c) {
        int piv = -1;
        for (int k = r; k < static_cast<int>(m.size()); ++k)
            if (m[k][c].numerator() != 0) {
                piv = k;
                break;
            }
        if (piv < 0)
            continue;
        std::swap(m[r], m[piv]);
        Rational inv = m[r][c];
        for (auto &x : m[r])
            x /= inv;
        for (int k = 0; k < static_cast<int>(m.size()); ++k) {
            if (k == r || m[k][c].numerator() == 0)
                continue;
            Rational f = m[k][c];
            for (size_t j = 0; j < m[k].size(); ++j)
                m[k][j] -= f * m[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

int krull_dimension(const MonomialSemigroup &s) {
    if (s.generators.empty())
        return 0;
    std::vector<std::vector<Rational>> m;
    for (const auto &g : s.generators) {
        std::vector<Rational> row;
        for (int e : g)
            row.emplace_back(e);
        m.push_back(std::move(row));
    }
    return row_reduce(m, static_cast<int>(s.generators.front().size()));
}

std::string lift_kind_name(LiftKind k) {
    switch (k) {
    case LiftKind::Central: return "Central";
    case LiftKind::NotCentralizable: return "NotCentralizable";
    default: return "Unknown";
    }
}

std::optional<std::vector<Word>> cycles_with_label(const Quiver &q, const GradingContext &ctx, int i,
                                                   const Monomial &g, const Bounds &b) {
    std::vector<Word> out;
    Word path;
    std::size_t visited = 0;
    bool overflow = false;
    auto rec = [&](auto &&self, int v, const Monomial &m) -> void {
        if (overflow)
            return;
        if (v == i && !path.empty() && m == g)
            out.push_back(path);
        if (static_cast<int>(path.size()) >= b.lift_length_cap || ++visited > b.lift_path_budget) {
            overflow = true;
            return;
        }
        for (const auto &a : q.arrows) {
            if (a.tail != v)
                continue;
            Monomial n = mul(m, ctx.arrow_labels[a.id]);
            if (!divides(n, g))
                continue;
            path.push_back(a.id);
            self(self, a.head, n);
            path.pop_back();
        }
    };
    rec(rec, i, one(ctx.num_vars()));
    if (overflow)
        return std::nullopt;
    return out;
}

LiftResult central_lift(PathOracle &oracle, const GradingContext &ctx, const Monomial &g, const Bounds &b,
                        bool allow_fast_path) {
    const Quiver &q = oracle.quiver();
    LiftResult res;
    if (allow_fast_path && !divides(sigma(ctx), g)) {
        res.kind = LiftKind::Central;
        res.fast_path = true;
        res.reason = "sigma does not divide g";
        return res;
    }

    // unknowns: one per (vertex, class of label-g cycles)
    std::vector<std::vector<int>> classes(q.num_vertices);
    std::vector<std::vector<int>> var_of(q.num_vertices);
    int nvars = 0;
    for (int i = 0; i < q.num_vertices; ++i) {
        auto cyc = cycles_with_label(q, ctx, i, g, b);
        if (!cyc) {
            res.kind = LiftKind::Unknown;
            res.reason = "cycle enumeration limit at vertex " + std::to_string(i);
            return res;
        }
        std::set<int> ids;
        for (const auto &w : *cyc) {
            auto c = oracle.class_of(Path{i, w});
            if (!c) {
                res.kind = LiftKind::Unknown;
                res.reason = "rewrite budget exhausted";
                return res;
            }
            ids.insert(*c);
        }
        classes[i].assign(ids.begin(), ids.end());
        for (size_t k = 0; k < classes[i].size(); ++k)
            var_of[i].push_back(nvars++);
        res.class_counts.push_back(static_cast<int>(classes[i].size()));
    }
    for (int i = 0; i < q.num_vertices; ++i)
        if (classes[i].empty()) {
            res.kind = LiftKind::NotCentralizable;
            res.reason = "no cycle at vertex " + std::to_string(i) + " has label g";
            return res;
        }

    std::map<std::pair<int, int>, std::map<int, Rational>> eqs;
    for (const auto &a : q.arrows) {
        for (size_t k = 0; k < classes[a.tail].size(); ++k) {
            Word w = oracle.representative(classes[a.tail][k]);
            w.push_back(a.id);
            auto c = oracle.class_of(Path{a.tail, w});
            if (!c) {
                res.kind = LiftKind::Unknown;
                res.reason = "rewrite budget exhausted";
                return res;
            }
            eqs[{a.id, *c}][var_of[a.tail][k]] += 1;
        }
        for (size_t k = 0; k < classes[a.head].size(); ++k) {
            Word w{a.id};
            const Word &rep = oracle.representative(classes[a.head][k]);
            w.insert(w.end(), rep.begin(), rep.end());
            auto c = oracle.class_of(Path{a.tail, w});
            if (!c) {
                res.kind = LiftKind::Unknown;
                res.reason = "rewrite budget exhausted";
                return res;
            }
            eqs[{a.id, *c}][var_of[a.head][k]] -= 1;
        }
    }
    std::vector<std::vector<Rational>> m;
    for (const auto &[key, coeffs] : eqs) {
        std::vector<Rational> row(nvars + 1, Rational(0));
        bool any = false;
        for (const auto &[v, c] : coeffs) {
            row[v] += c;
            any = any || row[v].numerator() != 0;
        }
        if (any)
            m.push_back(std::move(row));
    }
    for (int i = 0; i < q.num_vertices; ++i) {
        std::vector<Rational> row(nvars + 1, Rational(0));
        for (int v : var_of[i])
            row[v] = 1;
        row[nvars] = 1;
        m.push_back(std::move(row));
    }
    int rank = row_reduce(m, nvars);
    for (int k = rank; k < static_cast<int>(m.size()); ++k)
        if (m[k][nvars].numerator() != 0) {
            res.kind = LiftKind::NotCentralizable;
            res.reason = "commutation equations are inconsistent";
            return res;
        }
    std::vector<Rational> sol(nvars, Rational(0));
    for (int k = 0; k < rank; ++k) {
        int lead = 0;
        while (m[k][lead].numerator() == 0)
            ++lead;
        sol[lead] = m[k][nvars];
    }
    res.witness.terms.resize(q.num_vertices);
    for (int i = 0; i < q.num_vertices; ++i)
        for (size_t k = 0; k < classes[i].size(); ++k)
            if (sol[var_of[i][k]].numerator() != 0)
                res.witness.terms[i].emplace_back(oracle.representative(classes[i][k]), sol[var_of[i][k]]);
    auto check = is_central(oracle, res.witness);
    if (check.kind != CentralKind::Central) {
        res.kind = LiftKind::Unknown;
        res.reason = "solution failed re-verification: " + check.reason;
        return res;
    }
    res.kind = LiftKind::Central;
    res.reason = "solved commutation equations";
    return res;
}

CenterReport depiction_report(const Quiver &q, const GradingContext &ctx, const Bounds &b) {
    CenterReport rep;
    rep.num_vars = ctx.num_vars();
    rep.cancellative = is_cancellative(q).cancellative;
    CycleLabels cl(q, ctx, b.degree_cap);
    rep.s = cycle_algebra(cl);
    if (!rep.s.saturated)
        rep.caveats.push_back("SaturationFailure: S has generators past degree " + std::to_string(b.degree_cap));
    rep.r = homotopy_center(cl, rep.s);
    if (!rep.r.saturated)
        rep.caveats.push_back("SaturationFailure: R module generators continue past degree " +
                              std::to_string(b.degree_cap));
    rep.normal = is_normal(cl, rep.r, rep.s);
    rep.dimension = krull_dimension(rep.s);
    if (!rep.r.equals_s) {
        rep.witness = nonnoetherian_witness(cl, b);
        if (!rep.witness)
            rep.caveats.push_back("no witness found although R differs from S");
        else if (!rep.witness->powers_outside_r || !rep.witness->chain_strict || rep.witness->N < 0)
            rep.caveats.push_back("witness failed verification");
    }
    if (rep.cancellative != rep.r.equals_s)
        rep.caveats.push_back("cancellativity and R = S disagree");

    PathOracle oracle(q, {0, b.node_budget});
    Monomial sig = sigma(ctx);
    rep.lift_degree = degree(sig) + b.lift_degree_extra;
    std::vector<Monomial> todo{sig};
    for (const auto &g : rep.r.algebra_generators)
        if (degree(g) <= rep.lift_degree && g != sig)
            todo.push_back(g);
    for (const auto &g : todo) {
        auto lr = central_lift(oracle, ctx, g, b);
        rep.lifts.push_back({g, lr.kind, lr.fast_path});
        if (lr.kind == LiftKind::NotCentralizable && !rep.zhat_proper)
            rep.zhat_proper = g;
        if (lr.kind == LiftKind::Unknown)
            rep.caveats.push_back("Unknown: central lift of a degree " + std::to_string(degree(g)) +
                                  " generator (" + lr.reason + ")");
    }
    return rep;
}

}  // namespace dimer
