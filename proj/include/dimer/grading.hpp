#pragma once

#include "dimer/matchings.hpp"
#include "dimer/quiver.hpp"

#include <map>
#include <string>
#include <vector>

namespace dimer {

// Exponent vector over an indexed matching family.
using Monomial = std::vector<int>;

Monomial one(int nvars);
Monomial mul(const Monomial &a, const Monomial &b);
Monomial power(const Monomial &a, int n);
bool divides(const Monomial &d, const Monomial &m);
Monomial quotient(const Monomial &m, const Monomial &d);  // requires divides(d, m)
int degree(const Monomial &m);
bool is_one(const Monomial &m);

// Ascending degree, then lexicographic on exponents (larger first).
bool monomial_less(const Monomial &a, const Monomial &b);

enum class Family { Perfect, Simple };

struct GradingContext {
    Family kind = Family::Simple;
    std::vector<Matching> family;
    std::vector<Monomial> arrow_labels;  // contracted arrows carry 1
    int num_vars() const { return static_cast<int>(family.size()); }
};

// eta: perfect matchings of q.  tau: simple matchings of q.
GradingContext eta_context(const Quiver &q);
GradingContext tau_context(const Quiver &q);

Monomial label(const GradingContext &ctx, const std::vector<int> &arrows);
Monomial label(const GradingContext &ctx, const Path &p);
Monomial sigma(const GradingContext &ctx);

// Anchor table read from a .letters file:
//   letters x y z w
//   arrow <id> <word>
struct LetterAnchors {
    std::vector<char> letters;
    std::vector<std::pair<int, std::string>> anchors;
};

LetterAnchors parse_letters(const std::string &text);

// Variable names; empty means the default x<id> naming.
struct Letters {
    std::vector<std::string> names;        // per variable
    std::vector<int> order;                // variable indices in display order
    bool empty() const { return names.empty(); }
};

// Assigns each letter to the unique family member whose membership pattern on the
// anchored arrows matches the words. Throws if no or several assignments fit.
Letters resolve_letters(const LetterAnchors &anchors, const GradingContext &ctx);

std::string format_monomial(const Monomial &m, const Letters &letters);
Monomial parse_monomial(const std::string &s, const Letters &letters, int nvars);

}  // namespace dimer
