#pragma once

#include "dimer/grading.hpp"
#include "dimer/paths.hpp"
#include "dimer/quiver.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dimer {

struct Bounds {
    int degree_cap = 12;
    int lift_degree_extra = 2;      // central lifts are tried up to deg(sigma) + this
    int lift_length_cap = 64;
    std::size_t lift_path_budget = 200000;
    int witness_max_power = 16;
    int pair_bound = 8;
    std::size_t node_budget = 100000;
    int max_uncovered = 12;
};

struct MonomialLess {
    bool operator()(const Monomial &a, const Monomial &b) const { return monomial_less(a, b); }
};
using MonomialSet = std::set<Monomial, MonomialLess>;

// Cycle labels at each vertex. Below the degree cap they are enumerated once;
// above it, membership is decided by a search restricted to divisors.
class CycleLabels {
public:
    CycleLabels(const Quiver &q, const GradingContext &ctx, int cap);

    int cap() const { return cap_; }
    int num_vars() const { return nvars_; }
    const Quiver &quiver() const { return q_; }
    const GradingContext &context() const { return ctx_; }

    // Nonconstant labels of cycles at i with degree <= cap.
    const MonomialSet &at(int i) const { return per_vertex_[i]; }

    // Exact tests, no cap.
    bool cycle_at(int i, const Monomial &m) const;
    bool in_R(const Monomial &m) const;
    bool in_S(const Monomial &m) const;

    // Products of cycle labels with degree <= cap (the degree-truncated S), without 1.
    const MonomialSet &s_elements() const { return s_elems_; }
    // Labels present at every vertex with degree <= cap, without 1.
    const MonomialSet &r_elements() const { return r_elems_; }

private:
    MonomialSet divisor_labels(int i, const Monomial &m) const;

    Quiver q_;
    GradingContext ctx_;
    int cap_;
    int nvars_;
    std::vector<MonomialSet> per_vertex_;
    MonomialSet s_elems_;
    MonomialSet r_elems_;
    mutable std::map<Monomial, bool> s_cache_;
};

struct MonomialSemigroup {
    std::vector<Monomial> generators;  // minimal, sorted by monomial_less
    int cap = 0;
    bool saturated = true;             // no new generators one degree past the cap
};

bool membership(const MonomialSemigroup &sg, const Monomial &m);

// Semigroup generated by the labels of all cycles.
MonomialSemigroup cycle_algebra(const CycleLabels &cl);

// The homotopy center R. In general R = k + (J)S with J below; `algebra_generators`
// lists minimal algebra generators of R up to the degree cap.
struct HomotopyCenter {
    std::vector<Monomial> module_generators;   // J
    std::vector<Monomial> algebra_generators;  // truncated at cap
    int cap = 0;
    bool saturated = true;                     // J stable one degree past the cap
    bool module_form_exact = true;             // every j*s below the cap lies in R
    bool equals_s = false;
};

HomotopyCenter homotopy_center(const CycleLabels &cl, const MonomialSemigroup &s);

// Vertex semigroup generators (minimal generators of the labels at i).
std::vector<Monomial> vertex_cycle_monomials(const CycleLabels &cl, int i);

bool is_normal(const CycleLabels &cl, const HomotopyCenter &r, const MonomialSemigroup &s);
// sigma * m in R for every m in the truncated S; returns the first failure.
std::optional<Monomial> sigma_s_in_r_counterexample(const CycleLabels &cl);

// m in (gens)R.
bool in_ideal(const CycleLabels &cl, const std::vector<Monomial> &gens, const Monomial &m);

struct NonnoetherianWitness {
    Monomial s;
    int N = 0;
    std::vector<Monomial> chain;   // s sigma^N, s^2 sigma^N, s^3 sigma^N
    bool powers_outside_r = false; // s, s^2, s^3 not in R
    bool chain_strict = false;
};

std::optional<NonnoetherianWitness> nonnoetherian_witness(const CycleLabels &cl, const Bounds &b);

int krull_dimension(const MonomialSemigroup &s);

enum class LiftKind { Central, NotCentralizable, Unknown };
std::string lift_kind_name(LiftKind k);

struct LiftResult {
    LiftKind kind = LiftKind::Unknown;
    bool fast_path = false;
    CentralCandidate witness;
    std::vector<int> class_counts;  // per vertex
    std::string reason;
};

// All cycles at i whose label is exactly g; nullopt when limits are hit.
std::optional<std::vector<Word>> cycles_with_label(const Quiver &q, const GradingContext &ctx, int i,
                                                   const Monomial &g, const Bounds &b);

// Looks for rational combinations of label-g cycles, one per vertex, that commute with
// every arrow. `allow_fast_path` returns Central immediately when sigma does not divide g.
LiftResult central_lift(PathOracle &oracle, const GradingContext &ctx, const Monomial &g, const Bounds &b,
                        bool allow_fast_path = true);

struct LiftEntry {
    Monomial g;
    LiftKind kind = LiftKind::Unknown;
    bool fast_path = false;
};

struct CenterReport {
    int num_vars = 0;
    bool cancellative = false;
    MonomialSemigroup s;
    HomotopyCenter r;
    bool normal = false;
    std::vector<LiftEntry> lifts;
    int lift_degree = 0;                   // lifts tried up to this degree
    std::optional<Monomial> zhat_proper;   // g in R outside the central image
    std::optional<NonnoetherianWitness> witness;
    int dimension = 0;
    std::vector<std::string> caveats;
};

// Q with labels through a contraction (or its own simple matchings).
CenterReport depiction_report(const Quiver &q, const GradingContext &ctx, const Bounds &b);

}  // namespace dimer
