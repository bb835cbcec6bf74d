#include "dimer/matchings.hpp"

#include <algorithm>

namespace dimer {

bool Matching::contains(int a) const {
    return std::binary_search(arrows.begin(), arrows.end(), a);
}

bool strongly_connected(const Quiver &q, const std::vector<bool> &removed) {
    const int V = q.num_vertices;
    if (V == 0)
        return true;
    std::vector<std::vector<int>> fwd(V), back(V);
    for (const auto &a : q.arrows) {
        if (!removed.empty() && removed[a.id])
            continue;
        fwd[a.tail].push_back(a.head);
        back[a.head].push_back(a.tail);
    }
    auto reaches_all = [V](const std::vector<std::vector<int>> &g) {
        std::vector<char> seen(V, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int n = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++n;
                    stack.push_back(u);
                }
        }
        return n == V;
    };
    return reaches_all(fwd) && reaches_all(back);
}

namespace {

struct Cover {
    const Quiver &q;
    std::vector<std::vector<int>> faces_of;
    std::vector<char> covered;
    std::vector<int> chosen;
    std::vector<Matching> out;

    explicit Cover(const Quiver &quiver) : q(quiver), faces_of(quiver.num_arrows()), covered(quiver.num_faces(), 0) {
        for (const auto &f : q.faces)
            for (int a : f.boundary)
                faces_of[a].push_back(f.id);
    }

    bool available(int a) const {
        for (int f : faces_of[a])
            if (covered[f])
                return false;
        return true;
    }

    void run() {
        int best = -1;
        std::vector<int> best_cands;
        for (const auto &f : q.faces) {
            if (covered[f.id])
                continue;
            std::vector<int> cands;
            for (int a : f.boundary)
                if (available(a) && std::find(cands.begin(), cands.end(), a) == cands.end())
                    cands.push_back(a);
            if (best < 0 || cands.size() < best_cands.size()) {
                best = f.id;
                best_cands = std::move(cands);
                if (best_cands.empty())
                    return;
            }
        }
        if (best < 0) {
            Matching m;
            m.arrows = chosen;
            std::sort(m.arrows.begin(), m.arrows.end());
            out.push_back(std::move(m));
            return;
        }
        for (int a : best_cands) {
            for (int f : faces_of[a])
                covered[f] = 1;
            chosen.push_back(a);
            run();
            chosen.pop_back();
            for (int f : faces_of[a])
                covered[f] = 0;
        }
    }
};

}  // namespace

std::vector<Matching> perfect_matchings(const Quiver &q) {
    Cover c(q);
    // an arrow listed twice in one face can never be in a perfect matching
    for (const auto &f : q.faces)
        for (size_t k = 0; k < f.boundary.size(); ++k)
            for (size_t j = k + 1; j < f.boundary.size(); ++j)
                if (f.boundary[k] == f.boundary[j])
                    return {};
    c.run();
    std::sort(c.out.begin(), c.out.end(), [](const Matching &a, const Matching &b) { return a.arrows < b.arrows; });
    for (auto &m : c.out) {
        std::vector<bool> removed(q.num_arrows(), false);
        for (int a : m.arrows)
            removed[a] = true;
        m.simple = strongly_connected(q, removed);
    }
    return c.out;
}

std::vector<Matching> simple_matchings(const Quiver &q) {
    std::vector<Matching> out;
    for (auto &m : perfect_matchings(q))
        if (m.simple)
            out.push_back(std::move(m));
    return out;
}

std::vector<int> uncovered_arrows(const Quiver &q, const std::vector<Matching> &simple) {
    std::vector<int> out;
    for (int a = 0; a < q.num_arrows(); ++a) {
        bool hit = false;
        for (const auto &m : simple)
            if (m.contains(a)) {
                hit = true;
                break;
            }
        if (!hit)
            out.push_back(a);
    }
    return out;
}

std::vector<int> uncovered_arrows(const Quiver &q) {
    return uncovered_arrows(q, simple_matchings(q));
}

CancellativityCertificate is_cancellative(const Quiver &q) {
    CancellativityCertificate c;
    auto simple = simple_matchings(q);
    c.uncovered = uncovered_arrows(q, simple);
    c.cancellative = c.uncovered.empty();
    if (c.cancellative) {
        c.cover.assign(q.num_arrows(), -1);
        for (int a = 0; a < q.num_arrows(); ++a)
            for (size_t k = 0; k < simple.size(); ++k)
                if (simple[k].contains(a)) {
                    c.cover[a] = static_cast<int>(k);
                    break;
                }
    }
    return c;
}

}  // namespace dimer
