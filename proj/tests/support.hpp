#pragma once

// Fixture loading and brute-force oracles shared by the unit tests and the
// acceptance runner. The oracles deliberately avoid the library's own search
// code so they can be used to check it.

#include "dimer/centers.hpp"
#include "dimer/contraction.hpp"
#include "dimer/grading.hpp"
#include "dimer/matchings.hpp"
#include "dimer/paths.hpp"
#include "dimer/quiver.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef DIMER_FIXTURE_DIR
#error "DIMER_FIXTURE_DIR must be defined"
#endif

namespace support {

using namespace dimer;

inline std::string fixture_path(const std::string &name) { return std::string(DIMER_FIXTURE_DIR) + "/" + name; }

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Quiver load(const std::string &name) { return parse_quiver(read_file(fixture_path(name + ".dimer"))); }

// Arrow ids tagged "# contracted" in the fixture (the green arrows of the drawings).
inline std::vector<int> green_arrows(const std::string &name) {
    std::istringstream in(read_file(fixture_path(name + ".dimer")));
    std::string line;
    std::vector<int> out;
    while (std::getline(in, line)) {
        if (line.rfind("arrow ", 0) != 0 || line.find("# contracted") == std::string::npos)
            continue;
        std::istringstream ls(line.substr(6));
        int id;
        ls >> id;
        out.push_back(id);
    }
    return out;
}

inline Letters letters_for(const std::string &name, const GradingContext &ctx) {
    return resolve_letters(parse_letters(read_file(fixture_path(name + ".letters"))), ctx);
}

inline std::set<std::string> named(const std::vector<Monomial> &ms, const Letters &l) {
    std::set<std::string> out;
    for (const auto &m : ms)
        out.insert(format_monomial(m, l));
    return out;
}

// Every fixture in the corpus (valid ones only).
inline const std::vector<std::string> &all_fixtures() {
    static const std::vector<std::string> names = {
        "c3",    "conif2", "conif2_target", "ex1",  "ex1_target", "ex2",     "ex2_b",   "ex2_c",
        "ex3",   "ex3_b",  "ex3_c",         "isor", "nested1",    "nested2", "perm2",   "sigall"};
    return names;
}

// Sources drawn with green arrows; contracting them gives a cyclic contraction.
inline const std::vector<std::string> &contracted_sources() {
    static const std::vector<std::string> names = {"conif2", "ex1",     "ex2",     "ex3",
                                                   "isor",   "nested1", "nested2", "sigall"};
    return names;
}

// The contraction used for the center computations: green arrows when drawn,
// the identity for cancellative quivers, nothing otherwise.
inline std::optional<Contraction> reference_contraction(const std::string &name) {
    Quiver q = load(name);
    auto green = green_arrows(name);
    if (!green.empty())
        return contract(q, green);
    if (uncovered_arrows(q).empty())
        return identity_contraction(q);
    return std::nullopt;
}

namespace oracle {

// All arrow subsets meeting every face exactly once. Only for small quivers.
inline std::vector<std::vector<int>> perfect_matchings(const Quiver &q) {
    const int E = q.num_arrows();
    if (E > 22)
        throw std::runtime_error("brute force matchings: too many arrows");
    std::vector<unsigned> face_mask;
    for (const auto &f : q.faces) {
        unsigned m = 0;
        for (int a : f.boundary)
            m |= 1u << a;
        face_mask.push_back(m);
    }
    std::vector<std::vector<int>> out;
    for (unsigned s = 0; s < (1u << E); ++s) {
        bool ok = true;
        for (unsigned m : face_mask)
            if (__builtin_popcount(s & m) != 1) {
                ok = false;
                break;
            }
        if (!ok)
            continue;
        std::vector<int> arrows;
        for (int a = 0; a < E; ++a)
            if (s >> a & 1)
                arrows.push_back(a);
        out.push_back(arrows);
    }
    return out;
}

// Transitive closure by Floyd-Warshall on the arrows not in `removed`.
inline bool strongly_connected_without(const Quiver &q, const std::vector<int> &removed) {
    const int V = q.num_vertices;
    std::vector<std::vector<char>> reach(V, std::vector<char>(V, 0));
    for (int v = 0; v < V; ++v)
        reach[v][v] = 1;
    for (const auto &a : q.arrows)
        if (std::find(removed.begin(), removed.end(), a.id) == removed.end())
            reach[a.tail][a.head] = 1;
    for (int k = 0; k < V; ++k)
        for (int i = 0; i < V; ++i)
            for (int j = 0; j < V; ++j)
                if (reach[i][k] && reach[k][j])
                    reach[i][j] = 1;
    for (int i = 0; i < V; ++i)
        for (int j = 0; j < V; ++j)
            if (!reach[i][j])
                return false;
    return true;
}

inline Monomial word_label(const GradingContext &ctx, const std::vector<int> &w) {
    Monomial m(ctx.num_vars(), 0);
    for (int a : w)
        for (int k = 0; k < ctx.num_vars(); ++k)
            m[k] += ctx.arrow_labels[a][k];
    return m;
}

// Labels of nontrivial cycles at each vertex with degree <= d, by a fixpoint over
// (vertex, monomial) states.
inline std::vector<std::set<Monomial>> cycle_labels(const Quiver &q, const GradingContext &ctx, int d) {
    const int n = ctx.num_vars();
    std::vector<std::set<Monomial>> out(q.num_vertices);
    for (int i = 0; i < q.num_vertices; ++i) {
        std::set<std::pair<int, Monomial>> seen;
        std::vector<std::pair<int, Monomial>> stack;
        for (const auto &a : q.arrows)
            if (a.tail == i) {
                auto m = ctx.arrow_labels[a.id];
                int deg = 0;
                for (int e : m)
                    deg += e;
                if (deg <= d && seen.insert({a.head, m}).second)
                    stack.push_back({a.head, m});
            }
        while (!stack.empty()) {
            auto [v, m] = stack.back();
            stack.pop_back();
            if (v == i) {
                bool nonconstant = std::any_of(m.begin(), m.end(), [](int e) { return e != 0; });
                if (nonconstant)
                    out[i].insert(m);
            }
            for (const auto &a : q.arrows) {
                if (a.tail != v)
                    continue;
                Monomial next(n);
                int deg = 0;
                for (int k = 0; k < n; ++k) {
                    next[k] = m[k] + ctx.arrow_labels[a.id][k];
                    deg += next[k];
                }
                if (deg <= d && seen.insert({a.head, next}).second)
                    stack.push_back({a.head, next});
            }
        }
    }
    return out;
}

inline int deg(const Monomial &m) {
    int s = 0;
    for (int e : m)
        s += e;
    return s;
}

// Degree-truncated S: products of cycle labels with degree <= d.
inline std::set<Monomial> s_elements(const std::vector<std::set<Monomial>> &labels, int d) {
    std::set<Monomial> gens;
    for (const auto &at : labels)
        gens.insert(at.begin(), at.end());
    std::set<Monomial> out = gens;
    std::vector<Monomial> frontier(gens.begin(), gens.end());
    while (!frontier.empty()) {
        std::vector<Monomial> next;
        for (const auto &a : frontier)
            for (const auto &g : gens) {
                Monomial m(a.size());
                for (size_t k = 0; k < a.size(); ++k)
                    m[k] = a[k] + g[k];
                if (deg(m) <= d && out.insert(m).second)
                    next.push_back(m);
            }
        frontier = std::move(next);
    }
    return out;
}

// Degree-truncated R: labels present at every vertex.
inline std::set<Monomial> r_elements(const std::vector<std::set<Monomial>> &labels) {
    std::set<Monomial> out = labels.front();
    for (const auto &at : labels) {
        std::set<Monomial> keep;
        for (const auto &m : out)
            if (at.count(m))
                keep.insert(m);
        out = std::move(keep);
    }
    return out;
}

// Rank of integer row vectors over the rationals, by fraction-free elimination.
inline int rank(std::vector<std::vector<long long>> rows) {
    int r = 0;
    const int cols = rows.empty() ? 0 : static_cast<int>(rows.front().size());
    for (int c = 0; c < cols && r < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        std::swap(rows[r], rows[pivot]);
        for (int i = r + 1; i < static_cast<int>(rows.size()); ++i) {
            long long f = rows[i][c], g = rows[r][c];
            for (int k = 0; k < cols; ++k)
                rows[i][k] = rows[i][k] * g - rows[r][k] * f;
            long long h = 0;
            for (long long x : rows[i])
                h = std::gcd(h, x);
            if (h > 1)
                for (auto &x : rows[i])
                    x /= h;
        }
        ++r;
    }
    return r;
}

// One random application of a face relation: a subword equal to one arc of an
// arrow's faces is swapped for the complementary arc. Returns false if no rule applies.
inline bool random_rewrite(const Quiver &q, std::vector<int> &w, std::mt19937 &rng) {
    struct Site {
        size_t pos;
        std::vector<int> from, to;
    };
    std::vector<std::vector<std::vector<int>>> arcs(q.num_arrows());
    for (const auto &f : q.faces) {
        const auto &b = f.boundary;
        for (size_t k = 0; k < b.size(); ++k) {
            std::vector<int> rest;
            for (size_t j = 1; j < b.size(); ++j)
                rest.push_back(b[(k + j) % b.size()]);
            arcs[b[k]].push_back(rest);
        }
    }
    std::vector<Site> sites;
    for (int a = 0; a < q.num_arrows(); ++a) {
        const auto &p = arcs[a][0], &r = arcs[a][1];
        for (const auto &[from, to] : {std::pair{p, r}, std::pair{r, p}}) {
            if (from == to || from.size() > w.size())
                continue;
            for (size_t s = 0; s + from.size() <= w.size(); ++s)
                if (std::equal(from.begin(), from.end(), w.begin() + static_cast<long>(s)))
                    sites.push_back({s, from, to});
        }
    }
    if (sites.empty())
        return false;
    const Site &s = sites[std::uniform_int_distribution<size_t>(0, sites.size() - 1)(rng)];
    std::vector<int> out(w.begin(), w.begin() + static_cast<long>(s.pos));
    out.insert(out.end(), s.to.begin(), s.to.end());
    out.insert(out.end(), w.begin() + static_cast<long>(s.pos + s.from.size()), w.end());
    w = std::move(out);
    return true;
}

inline Path random_path(const Quiver &q, int base, int len, std::mt19937 &rng) {
    Path p{base, {}};
    int v = base;
    for (int k = 0; k < len; ++k) {
        std::vector<int> out;
        for (const auto &a : q.arrows)
            if (a.tail == v)
                out.push_back(a.id);
        int a = out[std::uniform_int_distribution<size_t>(0, out.size() - 1)(rng)];
        p.arrows.push_back(a);
        v = q.arrows[a].head;
    }
    return p;
}

}  // namespace oracle

}  // namespace support
