#pragma once

#include "dimer/quiver.hpp"

#include <vector>

namespace dimer {

struct Matching {
    std::vector<int> arrows;  // sorted
    bool simple = false;

    bool contains(int a) const;
};

// `removed` marks arrows to drop; empty means keep everything.
bool strongly_connected(const Quiver &q, const std::vector<bool> &removed);

// Exact cover of faces by arrows, sorted lexicographically by arrow set.
std::vector<Matching> perfect_matchings(const Quiver &q);
std::vector<Matching> simple_matchings(const Quiver &q);

std::vector<int> uncovered_arrows(const Quiver &q, const std::vector<Matching> &simple);
std::vector<int> uncovered_arrows(const Quiver &q);

struct CancellativityCertificate {
    bool cancellative = false;
    std::vector<int> cover;      // arrow -> index into the simple matching list
    std::vector<int> uncovered;
};

CancellativityCertificate is_cancellative(const Quiver &q);

}  // namespace dimer
