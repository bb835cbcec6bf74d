#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace dimer {

using Vec2 = std::array<int, 2>;

struct Arrow {
    int id = 0;
    int tail = 0;
    int head = 0;
    Vec2 wind{0, 0};
};

struct Face {
    int id = 0;
    std::vector<int> boundary;  // arrow ids, traversal order
};

// A quiver embedded in the torus, given by arrow winds and face boundaries.
struct Quiver {
    int num_vertices = 0;
    std::vector<Arrow> arrows;
    std::vector<Face> faces;

    int num_arrows() const { return static_cast<int>(arrows.size()); }
    int num_faces() const { return static_cast<int>(faces.size()); }
};

// Paths are stored in temporal order: arrows[0] is traversed first.
// An empty arrow list is the idempotent at `base`.
struct Path {
    int base = 0;
    std::vector<int> arrows;

    bool operator==(const Path &) const = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string &msg);
    int line;
    int column;
};

Quiver parse_quiver(const std::string &text);
std::string write_quiver(const Quiver &q);

struct ValidationCheck {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool valid() const;
    const ValidationCheck *find(const std::string &name) const;
};

// Check names used in ValidationReport.
inline constexpr const char *kCheckTwoFaces = "arrow in exactly two faces";
inline constexpr const char *kCheckClosed = "faces closed";
inline constexpr const char *kCheckLength = "face length at least 2";
inline constexpr const char *kCheckWind = "face wind zero";
inline constexpr const char *kCheckEuler = "euler characteristic zero";
inline constexpr const char *kCheckConnected = "strongly connected";
inline constexpr const char *kCheckMatching = "perfect matching exists";

ValidationReport validate(const Quiver &q);

int path_head(const Quiver &q, const Path &p);
bool is_composable(const Quiver &q, const Path &p);
Vec2 lift_displacement(const Quiver &q, const Path &p);
Path concat(const Quiver &q, const Path &first, const Path &second);

// Boundary of face f rotated so it starts at an arrow with tail i.
Path face_cycle_at(const Quiver &q, int face, int i);
Path unit_cycle_at(const Quiver &q, int i);

}  // namespace dimer
