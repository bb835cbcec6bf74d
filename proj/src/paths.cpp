#include "dimer/paths.hpp"

#include "dimer/matchings.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace dimer {

namespace {

struct WordHash {
    size_t operator()(const Word &w) const {
        size_t h = w.size();
        for (int a : w)
            h = h * 1000003u ^ static_cast<size_t>(a + 1);
        return h;
    }
};

constexpr int kTruncatedCacheLength = 16;

bool word_less(const Word &a, const Word &b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

}  // namespace

std::vector<RelationPair> face_relations(const Quiver &q) {
    std::vector<std::vector<Word>> occ(q.num_arrows());
    for (const auto &f : q.faces) {
        const auto &b = f.boundary;
        for (size_t k = 0; k < b.size(); ++k) {
            Word rest;
            for (size_t j = 1; j < b.size(); ++j)
                rest.push_back(b[(k + j) % b.size()]);
            occ[b[k]].push_back(std::move(rest));
        }
    }
    std::vector<RelationPair> out;
    for (int a = 0; a < q.num_arrows(); ++a) {
        if (occ[a].size() != 2)
            throw std::invalid_argument("arrow " + std::to_string(a) + " is not in exactly two faces");
        out.push_back({a, occ[a][0], occ[a][1]});
    }
    return out;
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    default: return "Unknown";
    }
}

PathOracle::PathOracle(const Quiver &q, OracleBudget budget) : q_(q), budget_(budget) {
    relations_ = face_relations(q_);
    rules_.resize(q_.num_arrows());
    for (const auto &r : relations_) {
        if (r.p == r.q)
            continue;
        for (const auto &[lhs, rhs] : {std::pair{r.p, r.q}, std::pair{r.q, r.p}}) {
            auto &bucket = rules_[lhs.front()];
            if (std::find(bucket.begin(), bucket.end(), std::pair{lhs, rhs}) == bucket.end())
                bucket.emplace_back(lhs, rhs);
        }
    }
    for (const auto &f : q_.faces)
        longest_face_ = std::max<int>(longest_face_, static_cast<int>(f.boundary.size()));
    auto pm = perfect_matchings(q_);
    if (!pm.empty())
        eta_ = eta_context(q_);
    auto cert = is_cancellative(q_);
    cancellative_ = cert.cancellative && !pm.empty();
    if (cancellative_)
        tau_ = tau_context(q_);
}

int PathOracle::cap_for(std::size_t len) const {
    if (budget_.length_cap > 0)
        return budget_.length_cap;
    return 3 * (longest_face_ + static_cast<int>(len));
}

std::vector<Word> PathOracle::neighbours(const Word &w) const {
    std::vector<Word> out;
    for (size_t s = 0; s < w.size(); ++s) {
        for (const auto &[lhs, rhs] : rules_[w[s]]) {
            if (s + lhs.size() > w.size())
                continue;
            if (!std::equal(lhs.begin(), lhs.end(), w.begin() + static_cast<long>(s)))
                continue;
            Word n(w.begin(), w.begin() + static_cast<long>(s));
            n.insert(n.end(), rhs.begin(), rhs.end());
            n.insert(n.end(), w.begin() + static_cast<long>(s + lhs.size()), w.end());
            out.push_back(std::move(n));
        }
    }
    return out;
}

std::optional<int> PathOracle::class_of(const Path &p) {
    if (p.arrows.empty()) {
        auto it = vertex_classes_.find(p.base);
        if (it != vertex_classes_.end())
            return it->second;
        int id = static_cast<int>(reps_.size());
        reps_.push_back({});
        vertex_classes_[p.base] = id;
        return id;
    }
    auto it = class_ids_.find(p.arrows);
    if (it != class_ids_.end())
        return it->second;
    if (truncated_.count(p.arrows))
        return std::nullopt;

    const int cap = cap_for(p.arrows.size());
    std::unordered_set<Word, WordHash> seen{p.arrows};
    std::deque<Word> queue{p.arrows};
    // everything reached so far shares the unbounded class
    auto give_up = [&]() -> std::optional<int> {
        for (const auto &w : seen)
            if (static_cast<int>(w.size()) <= kTruncatedCacheLength)
                truncated_.insert(w);
        return std::nullopt;
    };
    while (!queue.empty()) {
        Word w = std::move(queue.front());
        queue.pop_front();
        for (auto &n : neighbours(w)) {
            if (static_cast<int>(n.size()) > cap)
                return give_up();
            if (seen.insert(n).second) {
                if (seen.size() > budget_.node_budget)
                    return give_up();
                queue.push_back(std::move(n));
            }
        }
    }
    int id = static_cast<int>(reps_.size());
    Word rep = p.arrows;
    for (const auto &w : seen) {
        class_ids_[w] = id;
        if (word_less(w, rep))
            rep = w;
    }
    reps_.push_back(rep);
    return id;
}

EquivalenceVerdict PathOracle::paths_equal(const Path &p, const Path &q) {
    if (!is_composable(q_, p) || !is_composable(q_, q))
        throw std::invalid_argument("paths_equal: non-composable input");
    EquivalenceVerdict v;
    if (p.base != q.base || path_head(q_, p) != path_head(q_, q)) {
        v.verdict = Verdict::NotEqual;
        v.reason = "endpoints differ";
        return v;
    }
    if (p.arrows == q.arrows) {
        v.verdict = Verdict::Equal;
        v.trace = {p.arrows};
        v.reason = "identical";
        return v;
    }
    if (lift_displacement(q_, p) != lift_displacement(q_, q)) {
        v.verdict = Verdict::NotEqual;
        v.reason = "lift displacements differ";
        return v;
    }
    if (eta_ && label(*eta_, p) != label(*eta_, q)) {
        v.verdict = Verdict::NotEqual;
        v.reason = "eta labels differ";
        return v;
    }
    if (p.arrows.empty() || q.arrows.empty()) {
        // a vertex is only related to itself
        v.verdict = Verdict::NotEqual;
        v.reason = "vertex against non-vertex path";
        return v;
    }
    if (cancellative_ && budget_.label_shortcut && label(*tau_, p) == label(*tau_, q)) {
        v.verdict = Verdict::Equal;
        v.reason = "cancellative: tau labels and lifts agree";
        return v;
    }

    // Bidirectional breadth-first closure.
    const int cap = cap_for(std::max(p.arrows.size(), q.arrows.size()));
    using Parents = std::unordered_map<Word, Word, WordHash>;
    Parents par[2];
    std::vector<Word> frontier[2];
    bool truncated[2] = {false, false};
    par[0][p.arrows] = {};
    par[1][q.arrows] = {};
    frontier[0] = {p.arrows};
    frontier[1] = {q.arrows};

    auto chain = [](const Parents &pm, Word w) {
        std::vector<Word> out{w};
        while (true) {
            const Word &parent = pm.at(w);
            if (parent.empty())
                break;
            out.push_back(parent);
            w = parent;
        }
        return out;
    };

    while (true) {
        for (int side = 0; side < 2; ++side) {
            if (frontier[side].empty() && !truncated[side]) {
                v.verdict = Verdict::NotEqual;
                v.reason = "rewrite closure saturated without meeting";
                return v;
            }
        }
        if (frontier[0].empty() && frontier[1].empty()) {
            v.verdict = Verdict::Unknown;
            v.reason = "length cap reached";
            return v;
        }
        int side = frontier[0].empty() ? 1
                   : frontier[1].empty() ? 0
                   : (frontier[0].size() <= frontier[1].size() ? 0 : 1);
        std::vector<Word> next;
        for (const auto &w : frontier[side]) {
            for (auto &n : neighbours(w)) {
                if (static_cast<int>(n.size()) > cap) {
                    truncated[side] = true;
                    continue;
                }
                if (par[side].count(n))
                    continue;
                par[side][n] = w;
                if (par[1 - side].count(n)) {
                    auto a = chain(par[0], n);
                    auto b = chain(par[1], n);
                    std::reverse(a.begin(), a.end());
                    a.insert(a.end(), b.begin() + 1, b.end());
                    v.verdict = Verdict::Equal;
                    v.trace = std::move(a);
                    v.reason = "rewrite closures met";
                    return v;
                }
                if (par[0].size() + par[1].size() > budget_.node_budget) {
                    v.verdict = Verdict::Unknown;
                    v.reason = "node budget exhausted";
                    return v;
                }
                next.push_back(n);
            }
        }
        frontier[side] = std::move(next);
    }
}

namespace {

void paths_of_length(const Quiver &q, int base, int len, std::vector<Word> &out) {
    Word w;
    auto rec = [&](auto &&self, int v) -> void {
        if (static_cast<int>(w.size()) == len) {
            out.push_back(w);
            return;
        }
        for (const auto &a : q.arrows)
            if (a.tail == v) {
                w.push_back(a.id);
                self(self, a.head);
                w.pop_back();
            }
    };
    rec(rec, base);
}

}  // namespace

constexpr int kWitnessLength = 3;

PairSearch find_noncancellative_pair(PathOracle &oracle, int bound, int from, int to, std::size_t closure_budget) {
    const Quiver &q = oracle.quiver();
    std::optional<GradingContext> eta;
    if (!perfect_matchings(q).empty())
        eta = eta_context(q);

    using Key = std::tuple<int, int, Vec2, Monomial>;
    std::map<Key, std::vector<std::pair<Word, int>>> groups;
    PairSearch out;
    std::size_t classified = 0;
    for (int len = 0; len <= bound; ++len) {
        for (int v = 0; v < q.num_vertices; ++v) {
            if (from >= 0 && v != from)
                continue;
            std::vector<Word> ws;
            paths_of_length(q, v, len, ws);
            for (auto &w : ws) {
                Path p{v, w};
                int h = path_head(q, p);
                if (to >= 0 && h != to)
                    continue;
                if (++classified > closure_budget) {
                    out.budget_exhausted = true;
                    return out;
                }
                auto cls = oracle.class_of(p);
                if (!cls) {
                    ++out.skipped;
                    continue;
                }
                Key key{v, h, lift_displacement(q, p), eta ? label(*eta, p) : Monomial{}};
                auto &g = groups[key];
                for (const auto &[other, other_cls] : g) {
                    if (other_cls == *cls)
                        continue;
                    NonCancellativePair pair;
                    pair.p = Path{v, other};
                    pair.q = p;
                    // composing witness r, shortest first
                    for (int rl = 1; rl <= std::min(bound, kWitnessLength) && !pair.witness; ++rl) {
                        std::vector<Word> rs;
                        paths_of_length(q, h, rl, rs);
                        for (auto &r : rs) {
                            Path pr = concat(q, pair.p, Path{h, r});
                            Path qr = concat(q, pair.q, Path{h, r});
                            if (oracle.paths_equal(pr, qr).verdict == Verdict::Equal) {
                                pair.witness = Path{h, r};
                                pair.witness_on_right = true;
                                break;
                            }
                        }
                        if (pair.witness)
                            break;
                        for (int u = 0; u < q.num_vertices && !pair.witness; ++u) {
                            rs.clear();
                            paths_of_length(q, u, rl, rs);
                            for (auto &r : rs) {
                                Path rp{u, r};
                                if (path_head(q, rp) != v)
                                    continue;
                                if (oracle.paths_equal(concat(q, rp, pair.p), concat(q, rp, pair.q)).verdict ==
                                    Verdict::Equal) {
                                    pair.witness = rp;
                                    pair.witness_on_right = false;
                                    break;
                                }
                            }
                        }
                    }
                    out.pair = std::move(pair);
                    return out;
                }
                g.emplace_back(w, *cls);
            }
        }
        out.complete_length = len;
    }
    return out;
}

std::string two_cycle_kind_name(TwoCycleKind k) {
    switch (k) {
    case TwoCycleKind::Removable: return "removable";
    case TwoCycleKind::PermanentAdjacent: return "permanent (ii)";
    default: return "permanent (iii)";
    }
}

std::vector<TwoCycle> permanent_two_cycles(const Quiver &q) {
    std::vector<TwoCycle> out;
    for (const auto &f : q.faces) {
        if (f.boundary.size() != 2)
            continue;
        TwoCycle c;
        c.face = f.id;
        c.a = f.boundary[0];
        c.b = f.boundary[1];
        // the other face through a
        const Face *other = nullptr;
        for (const auto &g : q.faces)
            if (g.id != f.id && std::find(g.boundary.begin(), g.boundary.end(), c.a) != g.boundary.end())
                other = &g;
        if (other) {
            const auto &b = other->boundary;
            auto ia = std::find(b.begin(), b.end(), c.a) - b.begin();
            auto ib = std::find(b.begin(), b.end(), c.b) - b.begin();
            if (ib < static_cast<long>(b.size())) {
                long n = static_cast<long>(b.size());
                bool adjacent = (ia + 1) % n == ib || (ib + 1) % n == ia;
                c.kind = adjacent ? TwoCycleKind::PermanentAdjacent : TwoCycleKind::PermanentSplit;
            }
        }
        out.push_back(c);
    }
    return out;
}

CentralVerdict is_central(PathOracle &oracle, const CentralCandidate &c) {
    const Quiver &q = oracle.quiver();
    CentralVerdict v;
    if (static_cast<int>(c.terms.size()) != q.num_vertices)
        throw std::invalid_argument("candidate needs one component per vertex");
    for (const auto &b : q.arrows) {
        std::map<int, Rational> acc;
        for (const auto &[w, coeff] : c.terms[b.tail]) {
            Word x = w;
            x.push_back(b.id);
            auto cls = oracle.class_of(Path{b.tail, x});
            if (!cls) {
                v.kind = CentralKind::Unknown;
                v.violating_arrow = b.id;
                v.reason = "rewrite budget exhausted";
                return v;
            }
            acc[*cls] += coeff;
        }
        for (const auto &[w, coeff] : c.terms[b.head]) {
            Word x{b.id};
            x.insert(x.end(), w.begin(), w.end());
            auto cls = oracle.class_of(Path{b.tail, x});
            if (!cls) {
                v.kind = CentralKind::Unknown;
                v.violating_arrow = b.id;
                v.reason = "rewrite budget exhausted";
                return v;
            }
            acc[*cls] -= coeff;
        }
        for (const auto &[cls, coeff] : acc)
            if (coeff.numerator() != 0) {
                v.kind = CentralKind::NotCentral;
                v.violating_arrow = b.id;
                v.reason = "does not commute with arrow " + std::to_string(b.id);
                return v;
            }
    }
    v.kind = CentralKind::Central;
    return v;
}

}  // namespace dimer
