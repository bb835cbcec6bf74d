#include "dimer/quiver.hpp"

#include "dimer/matchings.hpp"

#include <map>
#include <sstream>

namespace dimer {

ParseError::ParseError(int line, int column, const std::string &msg)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line(line), column(column) {}

namespace {

struct Token {
    std::string text;
    int column;
};

std::vector<Token> tokenize(const std::string &line) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#')
            break;
        if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
            ++i;
            continue;
        }
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#')
            ++j;
        out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
        i = j;
    }
    return out;
}

long long to_int(const Token &t, int line, bool allow_negative) {
    const std::string &s = t.text;
    size_t start = (allow_negative && !s.empty() && s[0] == '-') ? 1 : 0;
    if (start == s.size())
        throw ParseError(line, t.column, "expected an integer, got '" + s + "'");
    for (size_t k = start; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            throw ParseError(line, t.column, "expected an integer, got '" + s + "'");
    if (s.size() - start > 9)
        throw ParseError(line, t.column, "integer out of range");
    return std::stoll(s);
}

}  // namespace

Quiver parse_quiver(const std::string &text) {
    Quiver q;
    bool have_vertices = false;
    std::map<int, std::pair<Arrow, int>> arrows;  // id -> (arrow, line)
    std::map<int, std::pair<Face, int>> faces;
    std::map<int, std::vector<int>> face_columns;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto toks = tokenize(raw);
        if (toks.empty())
            continue;
        const std::string &kw = toks[0].text;
        if (kw == "vertices") {
            if (toks.size() != 2)
                throw ParseError(line_no, toks[0].column, "expected 'vertices N'");
            if (have_vertices)
                throw ParseError(line_no, toks[0].column, "duplicate 'vertices' line");
            q.num_vertices = static_cast<int>(to_int(toks[1], line_no, false));
            have_vertices = true;
        } else if (kw == "arrow") {
            if (toks.size() != 6)
                throw ParseError(line_no, toks[0].column, "expected 'arrow <id> <tail> <head> <wx> <wy>'");
            Arrow a;
            a.id = static_cast<int>(to_int(toks[1], line_no, false));
            a.tail = static_cast<int>(to_int(toks[2], line_no, false));
            a.head = static_cast<int>(to_int(toks[3], line_no, false));
            a.wind = {static_cast<int>(to_int(toks[4], line_no, true)),
                      static_cast<int>(to_int(toks[5], line_no, true))};
            if (arrows.count(a.id))
                throw ParseError(line_no, toks[1].column, "duplicate arrow id " + std::to_string(a.id));
            arrows[a.id] = {a, line_no};
            if (have_vertices) {
                if (a.tail >= q.num_vertices)
                    throw ParseError(line_no, toks[2].column, "tail vertex out of range");
                if (a.head >= q.num_vertices)
                    throw ParseError(line_no, toks[3].column, "head vertex out of range");
            }
        } else if (kw == "face") {
            if (toks.size() < 2)
                throw ParseError(line_no, toks[0].column, "expected 'face <id> <arrow ids...>'");
            Face f;
            f.id = static_cast<int>(to_int(toks[1], line_no, false));
            if (faces.count(f.id))
                throw ParseError(line_no, toks[1].column, "duplicate face id " + std::to_string(f.id));
            std::vector<int> cols;
            for (size_t k = 2; k < toks.size(); ++k) {
                f.boundary.push_back(static_cast<int>(to_int(toks[k], line_no, false)));
                cols.push_back(toks[k].column);
            }
            if (f.boundary.empty())
                throw ParseError(line_no, toks[0].column, "face has no arrows");
            face_columns[f.id] = cols;
            faces[f.id] = {f, line_no};
        } else {
            throw ParseError(line_no, toks[0].column, "unknown keyword '" + kw + "'");
        }
    }
    if (!have_vertices)
        throw ParseError(line_no == 0 ? 1 : line_no, 1, "missing 'vertices' line");

    int expect = 0;
    for (auto &[id, entry] : arrows) {
        if (id != expect)
            throw ParseError(entry.second, 1, "arrow ids not contiguous: missing " + std::to_string(expect));
        const Arrow &a = entry.first;
        if (a.tail >= q.num_vertices || a.head >= q.num_vertices)
            throw ParseError(entry.second, 1, "arrow " + std::to_string(id) + " references a missing vertex");
        q.arrows.push_back(a);
        ++expect;
    }
    expect = 0;
    for (auto &[id, entry] : faces) {
        if (id != expect)
            throw ParseError(entry.second, 1, "face ids not contiguous: missing " + std::to_string(expect));
        const auto &cols = face_columns[id];
        for (size_t k = 0; k < entry.first.boundary.size(); ++k)
            if (entry.first.boundary[k] >= q.num_arrows())
                throw ParseError(entry.second, cols[k],
                                 "face " + std::to_string(id) + " references missing arrow " +
                                     std::to_string(entry.first.boundary[k]));
        q.faces.push_back(entry.first);
        ++expect;
    }
    return q;
}

std::string write_quiver(const Quiver &q) {
    std::ostringstream out;
    out << "vertices " << q.num_vertices << "\n";
    for (const auto &a : q.arrows)
        out << "arrow " << a.id << " " << a.tail << " " << a.head << " " << a.wind[0] << " " << a.wind[1] << "\n";
    for (const auto &f : q.faces) {
        out << "face " << f.id;
        for (int a : f.boundary)
            out << " " << a;
        out << "\n";
    }
    return out.str();
}

bool ValidationReport::valid() const {
    for (const auto &c : checks)
        if (!c.ok)
            return false;
    return true;
}

const ValidationCheck *ValidationReport::find(const std::string &name) const {
    for (const auto &c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

ValidationReport validate(const Quiver &q) {
    ValidationReport r;
    const int E = q.num_arrows();

    ValidationCheck two{kCheckTwoFaces, true, ""};
    std::vector<int> count(E, 0);
    std::vector<std::vector<int>> in_faces(E);
    for (const auto &f : q.faces)
        for (int a : f.boundary) {
            ++count[a];
            in_faces[a].push_back(f.id);
        }
    for (int a = 0; a < E && two.ok; ++a) {
        bool distinct = count[a] == 2 && in_faces[a][0] != in_faces[a][1];
        if (!distinct) {
            two.ok = false;
            two.detail = "arrow " + std::to_string(a) + " lies in " + std::to_string(count[a]) + " face slot(s)";
        }
    }
    r.checks.push_back(two);

    ValidationCheck closed{kCheckClosed, true, ""}, length{kCheckLength, true, ""}, wind{kCheckWind, true, ""};
    for (const auto &f : q.faces) {
        const auto &b = f.boundary;
        if (length.ok && b.size() < 2) {
            length.ok = false;
            length.detail = "face " + std::to_string(f.id) + " has length " + std::to_string(b.size());
        }
        for (size_t k = 0; k < b.size() && closed.ok; ++k) {
            const Arrow &a = q.arrows[b[k]];
            const Arrow &n = q.arrows[b[(k + 1) % b.size()]];
            if (a.head != n.tail) {
                closed.ok = false;
                closed.detail = "face " + std::to_string(f.id) + ": arrow " + std::to_string(a.id) +
                                " does not compose with arrow " + std::to_string(n.id);
            }
        }
        Vec2 w{0, 0};
        for (int a : b) {
            w[0] += q.arrows[a].wind[0];
            w[1] += q.arrows[a].wind[1];
        }
        if (wind.ok && (w[0] != 0 || w[1] != 0)) {
            wind.ok = false;
            wind.detail = "face " + std::to_string(f.id) + " winds (" + std::to_string(w[0]) + "," +
                          std::to_string(w[1]) + ")";
        }
    }
    r.checks.push_back(closed);
    r.checks.push_back(length);
    r.checks.push_back(wind);

    ValidationCheck euler{kCheckEuler, true, ""};
    int chi = q.num_vertices - E + q.num_faces();
    if (chi != 0) {
        euler.ok = false;
        euler.detail = "V - E + F = " + std::to_string(chi);
    }
    r.checks.push_back(euler);

    ValidationCheck conn{kCheckConnected, true, ""};
    if (!strongly_connected(q, {})) {
        conn.ok = false;
        conn.detail = "quiver is not strongly connected";
    }
    r.checks.push_back(conn);

    ValidationCheck pm{kCheckMatching, true, ""};
    if (!two.ok || !length.ok) {
        pm.ok = false;
        pm.detail = "skipped: face structure invalid";
    } else if (perfect_matchings(q).empty()) {
        pm.ok = false;
        pm.detail = "no arrow set meets every face exactly once";
    }
    r.checks.push_back(pm);
    return r;
}

int path_head(const Quiver &q, const Path &p) {
    return p.arrows.empty() ? p.base : q.arrows[p.arrows.back()].head;
}

bool is_composable(const Quiver &q, const Path &p) {
    int v = p.base;
    for (int a : p.arrows) {
        if (a < 0 || a >= q.num_arrows() || q.arrows[a].tail != v)
            return false;
        v = q.arrows[a].head;
    }
    return true;
}

Vec2 lift_displacement(const Quiver &q, const Path &p) {
    Vec2 u{0, 0};
    for (int a : p.arrows) {
        u[0] += q.arrows[a].wind[0];
        u[1] += q.arrows[a].wind[1];
    }
    return u;
}

Path concat(const Quiver &q, const Path &first, const Path &second) {
    if (path_head(q, first) != second.base)
        throw std::invalid_argument("paths do not compose");
    Path r = first;
    r.arrows.insert(r.arrows.end(), second.arrows.begin(), second.arrows.end());
    return r;
}

Path face_cycle_at(const Quiver &q, int face, int i) {
    const auto &b = q.faces.at(face).boundary;
    for (size_t k = 0; k < b.size(); ++k) {
        if (q.arrows[b[k]].tail == i) {
            Path p{i, {}};
            for (size_t j = 0; j < b.size(); ++j)
                p.arrows.push_back(b[(k + j) % b.size()]);
            return p;
        }
    }
    throw std::invalid_argument("vertex " + std::to_string(i) + " is not on face " + std::to_string(face));
}

Path unit_cycle_at(const Quiver &q, int i) {
    for (const auto &f : q.faces)
        for (int a : f.boundary)
            if (q.arrows[a].tail == i)
                return face_cycle_at(q, f.id, i);
    throw std::invalid_argument("vertex " + std::to_string(i) + " lies on no face");
}

}  // namespace dimer
