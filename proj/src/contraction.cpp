#include "dimer/contraction.hpp"

#include "dimer/matchings.hpp"
#include "dimer/paths.hpp"

#include <algorithm>
#include <numeric>

namespace dimer {

ContractionError::ContractionError(ContractionErrorKind kind, const std::string &cell)
    : std::runtime_error(contraction_error_name(kind) + ": " + cell), kind(kind), cell(cell) {}

std::string contraction_error_name(ContractionErrorKind k) {
    switch (k) {
    case ContractionErrorKind::BadArrow: return "BadArrow";
    case ContractionErrorKind::ContractedFace: return "ContractedFace";
    case ContractionErrorKind::ContractedCycle: return "ContractedCycle";
    case ContractionErrorKind::TargetNotDimer: return "TargetNotDimer";
    default: return "RelationNotPreserved";
    }
}

Contraction identity_contraction(const Quiver &q) {
    Contraction c;
    c.source = q;
    c.target = q;
    c.vertex_map.resize(q.num_vertices);
    std::iota(c.vertex_map.begin(), c.vertex_map.end(), 0);
    c.arrow_map.resize(q.num_arrows());
    std::iota(c.arrow_map.begin(), c.arrow_map.end(), 0);
    return c;
}

Contraction contract(const Quiver &q, std::vector<int> arrows) {
    std::sort(arrows.begin(), arrows.end());
    arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
    std::vector<char> gone(q.num_arrows(), 0);
    for (int a : arrows) {
        if (a < 0 || a >= q.num_arrows())
            throw ContractionError(ContractionErrorKind::BadArrow, "arrow " + std::to_string(a));
        gone[a] = 1;
    }
    for (const auto &f : q.faces)
        if (std::all_of(f.boundary.begin(), f.boundary.end(), [&](int a) { return gone[a]; }))
            throw ContractionError(ContractionErrorKind::ContractedFace, "face " + std::to_string(f.id));

    std::vector<int> parent(q.num_vertices);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<std::vector<std::pair<int, int>>> forest(q.num_vertices);  // (neighbour, arrow)
    for (int a : arrows) {
        int t = q.arrows[a].tail, h = q.arrows[a].head;
        int rt = find(t), rh = find(h);
        if (rt == rh)
            throw ContractionError(ContractionErrorKind::ContractedCycle, "arrow " + std::to_string(a));
        parent[std::max(rt, rh)] = std::min(rt, rh);
        forest[t].emplace_back(h, a);
        forest[h].emplace_back(t, a);
    }

    Contraction c;
    c.source = q;
    c.contracted = arrows;
    c.vertex_map.assign(q.num_vertices, -1);
    std::vector<int> root_id(q.num_vertices, -1);
    int nv = 0;
    for (int v = 0; v < q.num_vertices; ++v) {
        int r = find(v);
        if (root_id[r] < 0)
            root_id[r] = nv++;
        c.vertex_map[v] = root_id[r];
    }

    // potentials so contracted arrows get wind zero: phi(h) = phi(t) + wind(a)
    std::vector<Vec2> phi(q.num_vertices, Vec2{0, 0});
    std::vector<char> done(q.num_vertices, 0);
    for (int v = 0; v < q.num_vertices; ++v) {
        if (done[v] || find(v) != v)
            continue;
        std::vector<int> stack{v};
        done[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, a] : forest[x]) {
                if (done[y])
                    continue;
                const Arrow &ar = q.arrows[a];
                int sign = ar.tail == x ? 1 : -1;
                phi[y] = {phi[x][0] + sign * ar.wind[0], phi[x][1] + sign * ar.wind[1]};
                done[y] = 1;
                stack.push_back(y);
            }
        }
    }

    c.target.num_vertices = nv;
    c.arrow_map.assign(q.num_arrows(), -1);
    for (const auto &a : q.arrows) {
        if (gone[a.id])
            continue;
        Arrow n;
        n.id = c.target.num_arrows();
        n.tail = c.vertex_map[a.tail];
        n.head = c.vertex_map[a.head];
        n.wind = {a.wind[0] + phi[a.tail][0] - phi[a.head][0], a.wind[1] + phi[a.tail][1] - phi[a.head][1]};
        c.arrow_map[a.id] = n.id;
        c.target.arrows.push_back(n);
    }
    for (const auto &f : q.faces) {
        Face n;
        n.id = c.target.num_faces();
        for (int a : f.boundary)
            if (!gone[a])
                n.boundary.push_back(c.arrow_map[a]);
        c.target.faces.push_back(std::move(n));
    }

    auto report = validate(c.target);
    for (const auto &chk : report.checks)
        if (!chk.ok)
            throw ContractionError(ContractionErrorKind::TargetNotDimer, chk.name + ": " + chk.detail);

    // psi(I) in I'
    PathOracle oracle(c.target);
    for (const auto &r : face_relations(q)) {
        int base = c.vertex_map[q.arrows[r.arrow].head];
        Path p{base, push_forward(c, r.p)}, pq{base, push_forward(c, r.q)};
        auto v = oracle.paths_equal(p, pq);
        if (v.verdict != Verdict::Equal)
            throw ContractionError(ContractionErrorKind::RelationNotPreserved,
                                   "arrow " + std::to_string(r.arrow) + " (" + verdict_name(v.verdict) + ")");
    }
    return c;
}

Word push_forward(const Contraction &c, const Word &w) {
    Word out;
    for (int a : w)
        if (c.arrow_map[a] >= 0)
            out.push_back(c.arrow_map[a]);
    return out;
}

GradingContext tau_context(const Contraction &c) {
    GradingContext target = tau_context(c.target);
    GradingContext ctx;
    ctx.kind = Family::Simple;
    ctx.family = target.family;
    for (int a = 0; a < c.source.num_arrows(); ++a)
        ctx.arrow_labels.push_back(c.arrow_map[a] >= 0 ? target.arrow_labels[c.arrow_map[a]]
                                                       : one(ctx.num_vars()));
    return ctx;
}

CyclicityReport is_cyclic(const Contraction &c, const Bounds &b) {
    if (!is_cancellative(c.target).cancellative)
        throw ContractionCheckError("TargetNotCancellative");
    CyclicityReport rep;
    CycleLabels src(c.source, tau_context(c), b.degree_cap);
    CycleLabels tgt(c.target, tau_context(c.target), b.degree_cap);
    rep.s = cycle_algebra(src);
    rep.s_target = cycle_algebra(tgt);
    if (!rep.s.saturated || !rep.s_target.saturated)
        throw ContractionCheckError("InconclusiveBounds");
    rep.cyclic = rep.s.generators == rep.s_target.generators;
    return rep;
}

std::optional<Contraction> find_cyclic_contraction(const Quiver &q, const Bounds &b) {
    auto unc = uncovered_arrows(q);
    const int n = static_cast<int>(unc.size());
    if (n > b.max_uncovered)
        throw ContractionCheckError("too many uncovered arrows (" + std::to_string(n) + ") for subset search");
    for (int k = 0; k <= n; ++k) {
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<int> arrows;
            for (int i : pick)
                arrows.push_back(unc[i]);
            try {
                Contraction c = arrows.empty() ? identity_contraction(q) : contract(q, arrows);
                if (is_cancellative(c.target).cancellative && is_cyclic(c, b).cyclic)
                    return c;
            } catch (const ContractionError &) {
            } catch (const ContractionCheckError &) {
            } catch (const std::runtime_error &) {
            }
            // next k-subset in lexicographic order
            int i = k - 1;
            while (i >= 0 && pick[i] == n - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    return std::nullopt;
}

Quiver simplify_two_cycles(const Quiver &input) {
    Quiver q = input;
    while (true) {
        const TwoCycle *hit = nullptr;
        auto cycles = permanent_two_cycles(q);
        for (const auto &c : cycles)
            if (c.kind == TwoCycleKind::Removable) {
                hit = &c;
                break;
            }
        if (!hit)
            return q;
        const int a = hit->a, b = hit->b;
        int fa = -1, fb = -1;
        for (const auto &f : q.faces) {
            if (f.id == hit->face)
                continue;
            if (std::find(f.boundary.begin(), f.boundary.end(), a) != f.boundary.end())
                fa = f.id;
            if (std::find(f.boundary.begin(), f.boundary.end(), b) != f.boundary.end())
                fb = f.id;
        }
        // rest of each face after a (resp. b): p runs h(a) -> t(a), r runs h(b) -> t(b)
        auto after = [&](int face, int arrow) {
            const auto &bd = q.faces[face].boundary;
            auto k = std::find(bd.begin(), bd.end(), arrow) - bd.begin();
            Word rest;
            for (size_t j = 1; j < bd.size(); ++j)
                rest.push_back(bd[(k + j) % bd.size()]);
            return rest;
        };
        Word merged = after(fa, a);
        Word r = after(fb, b);
        merged.insert(merged.end(), r.begin(), r.end());

        Quiver n;
        n.num_vertices = q.num_vertices;
        std::vector<int> amap(q.num_arrows(), -1);
        for (const auto &ar : q.arrows) {
            if (ar.id == a || ar.id == b)
                continue;
            Arrow x = ar;
            x.id = n.num_arrows();
            amap[ar.id] = x.id;
            n.arrows.push_back(x);
        }
        for (const auto &f : q.faces) {
            if (f.id == hit->face || f.id == fb)
                continue;
            Face x;
            x.id = n.num_faces();
            for (int ar : (f.id == fa ? merged : f.boundary))
                x.boundary.push_back(amap[ar]);
            n.faces.push_back(std::move(x));
        }
        q = std::move(n);
    }
}

}  // namespace dimer
