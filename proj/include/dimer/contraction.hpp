#pragma once

#include "dimer/centers.hpp"
#include "dimer/grading.hpp"
#include "dimer/quiver.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimer {

struct Contraction {
    Quiver source;
    std::vector<int> contracted;  // sorted arrow ids of the source
    Quiver target;
    std::vector<int> vertex_map;  // source vertex -> target vertex
    std::vector<int> arrow_map;   // source arrow -> target arrow, -1 if contracted
};

enum class ContractionErrorKind { BadArrow, ContractedFace, ContractedCycle, TargetNotDimer, RelationNotPreserved };

class ContractionError : public std::runtime_error {
public:
    ContractionError(ContractionErrorKind kind, const std::string &cell);
    ContractionErrorKind kind;
    std::string cell;
};

std::string contraction_error_name(ContractionErrorKind k);

Contraction identity_contraction(const Quiver &q);
Contraction contract(const Quiver &q, std::vector<int> arrows);

Word push_forward(const Contraction &c, const Word &w);

// Labels of source arrows by simple matchings of the target.
GradingContext tau_context(const Contraction &c);

struct CyclicityReport {
    bool cyclic = false;
    MonomialSemigroup s;        // through the contraction
    MonomialSemigroup s_target; // of the target
};

class ContractionCheckError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Throws ContractionCheckError when the target is not cancellative or bounds do not saturate.
CyclicityReport is_cyclic(const Contraction &c, const Bounds &b);

// Smallest subset of uncovered arrows (then lexicographic) giving a cyclic contraction
// onto a cancellative target. Throws ContractionCheckError past b.max_uncovered.
std::optional<Contraction> find_cyclic_contraction(const Quiver &q, const Bounds &b);

// Deletes removable 2-cycles one at a time, merging their neighbouring faces.
Quiver simplify_two_cycles(const Quiver &q);

}  // namespace dimer
