#pragma once

#include "dimer/grading.hpp"
#include "dimer/quiver.hpp"

#include <boost/rational.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dimer {

using Word = std::vector<int>;
using Rational = boost::rational<long long>;

// For arrow a with faces a.p and a.q (temporal order, starting at a),
// p and q both run from h(a) to t(a).
struct RelationPair {
    int arrow = 0;
    Word p;
    Word q;
};

std::vector<RelationPair> face_relations(const Quiver &q);

enum class Verdict { Equal, NotEqual, Unknown };

struct EquivalenceVerdict {
    Verdict verdict = Verdict::Unknown;
    std::vector<Word> trace;  // rewrite steps for Equal, when recorded
    std::string reason;
};

struct OracleBudget {
    int length_cap = 0;             // 0: 3 * (longest face + word length)
    std::size_t node_budget = 100000;
    bool label_shortcut = true;     // cancellative quivers: equal tau labels and lifts decide Equal
};

// Decides equality of paths modulo the face relations by bounded rewriting.
// Caches equivalence classes; not safe for concurrent use.
class PathOracle {
public:
    explicit PathOracle(const Quiver &q, OracleBudget budget = {});

    const Quiver &quiver() const { return q_; }
    const std::vector<RelationPair> &relations() const { return relations_; }

    // One rewrite step p_a <-> q_a applied anywhere in w.
    std::vector<Word> neighbours(const Word &w) const;

    // Class id of the path, or nullopt when the closure hit a bound.
    std::optional<int> class_of(const Path &p);
    // Shortest, then lexicographically least, member of a known class.
    const Word &representative(int class_id) const { return reps_[class_id]; }

    EquivalenceVerdict paths_equal(const Path &p, const Path &q);

    bool cancellative() const { return cancellative_; }

private:
    int cap_for(std::size_t len) const;

    Quiver q_;
    OracleBudget budget_;
    std::vector<RelationPair> relations_;
    std::vector<std::vector<std::pair<Word, Word>>> rules_;  // by first arrow of lhs
    int longest_face_ = 0;
    bool cancellative_ = false;
    std::optional<GradingContext> eta_;
    std::optional<GradingContext> tau_;
    std::map<Word, int> class_ids_;
    std::set<Word> truncated_;  // short words of classes whose closure hit a bound
    std::map<int, int> vertex_classes_;
    std::vector<Word> reps_;
};

std::string verdict_name(Verdict v);

struct NonCancellativePair {
    Path p;
    Path q;
    // p then r equals q then r (right), or r then p equals r then q (left)
    std::optional<Path> witness;
    bool witness_on_right = true;
};

struct PairSearch {
    std::optional<NonCancellativePair> pair;
    int complete_length = -1;  // every path up to this length was compared
    std::size_t skipped = 0;   // paths whose class closure hit an oracle bound
    bool budget_exhausted = false;
};

// Paths from `from` to `to` (any endpoints when negative) of length <= bound with equal
// lift and eta-label that the oracle certifies unequal. Shortest pairs first.
// Stops once `closure_budget` paths have been classified.
PairSearch find_noncancellative_pair(PathOracle &oracle, int bound, int from = -1, int to = -1,
                                     std::size_t closure_budget = 50000);

enum class TwoCycleKind { Removable, PermanentAdjacent, PermanentSplit };

struct TwoCycle {
    int face = 0;
    int a = 0;
    int b = 0;
    TwoCycleKind kind = TwoCycleKind::Removable;
};

std::string two_cycle_kind_name(TwoCycleKind k);
std::vector<TwoCycle> permanent_two_cycles(const Quiver &q);  // every length-2 face, classified

// Per-vertex formal sums of cycles at that vertex.
struct CentralCandidate {
    std::vector<std::vector<std::pair<Word, Rational>>> terms;
};

enum class CentralKind { Central, NotCentral, Unknown };

struct CentralVerdict {
    CentralKind kind = CentralKind::Unknown;
    int violating_arrow = -1;
    std::string reason;
};

CentralVerdict is_central(PathOracle &oracle, const CentralCandidate &c);

}  // namespace dimer
