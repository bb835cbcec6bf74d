#include "support.hpp"

#include <doctest.h>

using namespace dimer;
using namespace support;

namespace {

MonomialSemigroup s_of(const Quiver &q, const GradingContext &ctx, int cap = 12) {
    CycleLabels cl(q, ctx, cap);
    return cycle_algebra(cl);
}

// Equal generator sets after some renaming of the variables.
bool same_up_to_permutation(const std::vector<Monomial> &a, const std::vector<Monomial> &b) {
    if (a.size() != b.size())
        return false;
    if (a.empty())
        return true;
    const size_t n = a.front().size();
    if (b.front().size() != n)
        return false;
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Monomial> want(b.begin(), b.end());
    do {
        std::set<Monomial> got;
        for (const auto &m : a) {
            Monomial r(n);
            for (size_t k = 0; k < n; ++k)
                r[perm[k]] = m[k];
            got.insert(r);
        }
        if (got == want)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

ContractionErrorKind error_kind(const Quiver &q, std::vector<int> arrows) {
    try {
        contract(q, arrows);
    } catch (const ContractionError &e) {
        return e.kind;
    }
    FAIL("contraction unexpectedly succeeded");
    return ContractionErrorKind::BadArrow;
}

}  // namespace

TEST_SUITE("contraction") {

TEST_CASE("conif2 contracts onto the drawn target") {
    Quiver q = load("conif2");
    Contraction c = contract(q, {6});
    Quiver t = load("conif2_target");
    CHECK(c.target.num_vertices == 2);
    CHECK(c.target.num_arrows() == t.num_arrows());
    CHECK(c.target.num_faces() == t.num_faces());
    CHECK(validate(c.target).valid());
    CHECK(c.arrow_map[6] == -1);
    CHECK(c.vertex_map[q.arrows[6].tail] == c.vertex_map[q.arrows[6].head]);
    CHECK(same_up_to_permutation(s_of(c.target, tau_context(c.target)).generators,
                                 s_of(t, tau_context(t)).generators));
}

TEST_CASE("drawn targets") {
    struct Case {
        std::string source, target;
    };
    for (const auto &[source, target] : {Case{"ex1", "ex1_target"}, Case{"ex2", "ex2_b"}, Case{"ex3", "ex3_b"}}) {
        CAPTURE(source);
        Contraction c = contract(load(source), green_arrows(source));
        Quiver t = load(target);
        CHECK(c.target.num_vertices == t.num_vertices);
        CHECK(c.target.num_arrows() == t.num_arrows());
        CHECK(c.target.num_faces() == t.num_faces());
        CHECK(same_up_to_permutation(s_of(c.target, tau_context(c.target)).generators,
                                     s_of(t, tau_context(t)).generators));
    }
}

TEST_CASE("errors") {
    CHECK(error_kind(load("c3"), {0}) == ContractionErrorKind::ContractedCycle);
    CHECK(error_kind(load("c3"), {7}) == ContractionErrorKind::BadArrow);
    CHECK(error_kind(load("conif2"), {0, 1, 2}) == ContractionErrorKind::ContractedFace);
    CHECK(error_kind(load("conif2"), {1, 2}) == ContractionErrorKind::TargetNotDimer);
    CHECK(contraction_error_name(ContractionErrorKind::RelationNotPreserved) == "RelationNotPreserved");
}

TEST_CASE("identity") {
    Quiver q = load("c3");
    Contraction c = identity_contraction(q);
    CHECK(c.contracted.empty());
    CHECK(write_quiver(c.target) == write_quiver(q));
    auto r = is_cyclic(c, Bounds{});
    CHECK(r.cyclic);
    CHECK(r.s.generators == r.s_target.generators);
}

TEST_CASE("push_forward drops contracted arrows") {
    Quiver q = load("conif2");
    Contraction c = contract(q, {6});
    Word w = push_forward(c, {0, 1, 6, 3});
    CHECK(w == Word{c.arrow_map[0], c.arrow_map[1], c.arrow_map[3]});
}

TEST_CASE("cycles keep their displacement") {
    std::mt19937 rng(3);
    for (const auto &name : contracted_sources()) {
        CAPTURE(name);
        Contraction c = *reference_contraction(name);
        const Quiver &q = c.source;
        int seen = 0;
        for (int k = 0; k < 4000 && seen < 30; ++k) {
            int v = std::uniform_int_distribution<int>(0, q.num_vertices - 1)(rng);
            Path p = oracle::random_path(q, v, std::uniform_int_distribution<int>(2, 10)(rng), rng);
            if (path_head(q, p) != v || lift_displacement(q, p) == Vec2{0, 0})
                continue;
            ++seen;
            Path image{c.vertex_map[v], push_forward(c, p.arrows)};
            REQUIRE(is_composable(c.target, image));
            CHECK(path_head(c.target, image) == image.base);
            CHECK(lift_displacement(c.target, image) == lift_displacement(q, p));
        }
        CHECK(seen > 0);
    }
}

TEST_CASE("labels through the contraction match the target") {
    for (const auto &name : contracted_sources()) {
        CAPTURE(name);
        Contraction c = *reference_contraction(name);
        auto src = tau_context(c);
        auto tgt = tau_context(c.target);
        for (int a = 0; a < c.source.num_arrows(); ++a) {
            int b = c.arrow_map[a];
            if (b >= 0)
                CHECK(src.arrow_labels[a] == tgt.arrow_labels[b]);
        }
    }
}

TEST_CASE("cyclic contractions") {
    Bounds b;
    auto conif = is_cyclic(contract(load("conif2"), {6}), b);
    CHECK(conif.cyclic);
    auto ctx = tau_context(*reference_contraction("conif2"));
    Letters l = letters_for("conif2", ctx);
    CHECK(named(conif.s.generators, l) == std::set<std::string>{"x^2", "y^2", "xy", "z"});

    auto ex3 = is_cyclic(*reference_contraction("ex3"), b);
    CHECK(ex3.cyclic);
    Letters l3 = letters_for("ex3", tau_context(*reference_contraction("ex3")));
    CHECK(named(ex3.s.generators, l3) == std::set<std::string>{"xz", "yw", "x^2w^2", "y^2z^2"});

    for (const auto &name : contracted_sources()) {
        CAPTURE(name);
        CHECK(is_cyclic(*reference_contraction(name), b).cyclic);
    }

    // contracting onto a non-cancellative quiver
    Contraction none = identity_contraction(load("conif2"));
    CHECK_THROWS_AS(is_cyclic(none, b), ContractionCheckError);
}

TEST_CASE("find_cyclic_contraction") {
    Bounds b;
    auto conif = find_cyclic_contraction(load("conif2"), b);
    REQUIRE(conif);
    CHECK(conif->contracted == green_arrows("conif2"));

    auto c3 = find_cyclic_contraction(load("c3"), b);
    REQUIRE(c3);
    CHECK(c3->contracted.empty());

    CHECK_FALSE(find_cyclic_contraction(load("perm2"), b));
    CHECK_THROWS_AS(find_cyclic_contraction(load("isor"), b), ContractionCheckError);
}

TEST_CASE("discovered contractions use uncovered arrows and agree on S") {
    Bounds b;
    for (const auto &name : {"conif2", "ex1", "ex2", "ex3", "sigall"}) {
        CAPTURE(name);
        Quiver q = load(name);
        auto found = find_cyclic_contraction(q, b);
        REQUIRE(found);
        auto unc = uncovered_arrows(q);
        for (int a : found->contracted)
            CHECK(std::find(unc.begin(), unc.end(), a) != unc.end());
        auto drawn = *reference_contraction(name);
        CHECK(same_up_to_permutation(s_of(q, tau_context(*found)).generators,
                                     s_of(q, tau_context(drawn)).generators));
    }
}

TEST_CASE("removing 2-cycles") {
    Quiver b = load("ex2_b");
    Quiver s = simplify_two_cycles(b);
    Quiver c = load("ex2_c");
    CHECK(validate(s).valid());
    CHECK(s.num_vertices == c.num_vertices);
    CHECK(s.num_arrows() == c.num_arrows());
    CHECK(s.num_faces() == c.num_faces());
    CHECK(permanent_two_cycles(s).empty());
    CHECK(same_up_to_permutation(s_of(s, tau_context(s)).generators, s_of(c, tau_context(c)).generators));
    CHECK(same_up_to_permutation(s_of(s, tau_context(s)).generators, s_of(b, tau_context(b)).generators));

    Quiver e3 = simplify_two_cycles(load("ex3_b"));
    Quiver e3c = load("ex3_c");
    CHECK(e3.num_arrows() == e3c.num_arrows());
    CHECK(e3.num_faces() == e3c.num_faces());

    // permanent ones stay
    Quiver p = load("perm2");
    CHECK(write_quiver(simplify_two_cycles(p)) == write_quiver(p));
}

}
