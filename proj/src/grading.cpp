#include "dimer/grading.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dimer {

Monomial one(int nvars) { return Monomial(nvars, 0); }

Monomial mul(const Monomial &a, const Monomial &b) {
    Monomial r(a.size());
    for (size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] + b[k];
    return r;
}

Monomial power(const Monomial &a, int n) {
    Monomial r(a.size());
    for (size_t k = 0; k < a.size(); ++k)
        r[k] = a[k] * n;
    return r;
}

bool divides(const Monomial &d, const Monomial &m) {
    for (size_t k = 0; k < m.size(); ++k)
        if (d[k] > m[k])
            return false;
    return true;
}

Monomial quotient(const Monomial &m, const Monomial &d) {
    Monomial r(m.size());
    for (size_t k = 0; k < m.size(); ++k)
        r[k] = m[k] - d[k];
    return r;
}

int degree(const Monomial &m) { return std::accumulate(m.begin(), m.end(), 0); }

bool is_one(const Monomial &m) {
    return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
}

bool monomial_less(const Monomial &a, const Monomial &b) {
    int da = degree(a), db = degree(b);
    if (da != db)
        return da < db;
    return a > b;
}

namespace {

GradingContext from_family(const Quiver &q, Family kind, std::vector<Matching> family) {
    GradingContext ctx;
    ctx.kind = kind;
    ctx.family = std::move(family);
    if (ctx.family.empty())
        throw std::runtime_error(kind == Family::Simple ? "quiver has no simple matchings"
                                                        : "quiver has no perfect matchings");
    for (int a = 0; a < q.num_arrows(); ++a) {
        Monomial m = one(ctx.num_vars());
        for (int k = 0; k < ctx.num_vars(); ++k)
            m[k] = ctx.family[k].contains(a) ? 1 : 0;
        ctx.arrow_labels.push_back(std::move(m));
    }
    return ctx;
}

}  // namespace

GradingContext eta_context(const Quiver &q) { return from_family(q, Family::Perfect, perfect_matchings(q)); }

GradingContext tau_context(const Quiver &q) { return from_family(q, Family::Simple, simple_matchings(q)); }

Monomial label(const GradingContext &ctx, const std::vector<int> &arrows) {
    Monomial m = one(ctx.num_vars());
    for (int a : arrows)
        for (int k = 0; k < ctx.num_vars(); ++k)
            m[k] += ctx.arrow_labels[a][k];
    return m;
}

Monomial label(const GradingContext &ctx, const Path &p) { return label(ctx, p.arrows); }

Monomial sigma(const GradingContext &ctx) { return Monomial(ctx.num_vars(), 1); }

LetterAnchors parse_letters(const std::string &text) {
    LetterAnchors out;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw))
            continue;
        const std::string where = "letters line " + std::to_string(line_no) + ": ";
        if (kw == "letters") {
            if (!out.letters.empty())
                throw std::runtime_error(where + "duplicate 'letters' line");
            std::string tok;
            while (ls >> tok) {
                if (tok.size() != 1 || !std::isalpha(static_cast<unsigned char>(tok[0])))
                    throw std::runtime_error(where + "letters are single alphabetic characters");
                if (std::find(out.letters.begin(), out.letters.end(), tok[0]) != out.letters.end())
                    throw std::runtime_error(where + "letter '" + tok + "' declared twice");
                out.letters.push_back(tok[0]);
            }
            if (out.letters.empty())
                throw std::runtime_error(where + "no letters declared");
        } else if (kw == "arrow") {
            if (out.letters.empty())
                throw std::runtime_error(where + "'arrow' before the 'letters' line");
            int id;
            std::string word;
            if (!(ls >> id >> word) || id < 0)
                throw std::runtime_error(where + "expected 'arrow <id> <word>'");
            for (char c : word)
                if (std::find(out.letters.begin(), out.letters.end(), c) == out.letters.end())
                    throw std::runtime_error(where + "letter '" + std::string(1, c) + "' is not declared");
            out.anchors.emplace_back(id, word);
        } else {
            throw std::runtime_error("letters line " + std::to_string(line_no) + ": unknown keyword '" + kw + "'");
        }
    }
    return out;
}

Letters resolve_letters(const LetterAnchors &anchors, const GradingContext &ctx) {
    const int n = ctx.num_vars();
    const int L = static_cast<int>(anchors.letters.size());
    if (L != n)
        throw std::runtime_error("letters table names " + std::to_string(L) + " variables but the family has " +
                                 std::to_string(n));
    for (const auto &[id, word] : anchors.anchors) {
        if (id < 0 || id >= static_cast<int>(ctx.arrow_labels.size()))
            throw std::runtime_error("letters table anchors missing arrow " + std::to_string(id));
        for (char c : word)
            if (std::find(anchors.letters.begin(), anchors.letters.end(), c) == anchors.letters.end())
                throw std::runtime_error(std::string("letter '") + c + "' is not declared");
    }
    // candidates[l] = family members consistent with letter l on every anchor
    std::vector<std::vector<int>> candidates(L);
    for (int l = 0; l < L; ++l) {
        char c = anchors.letters[l];
        for (int k = 0; k < n; ++k) {
            bool ok = true;
            for (const auto &[id, word] : anchors.anchors) {
                bool in_word = word.find(c) != std::string::npos;
                bool in_match = ctx.arrow_labels[id][k] > 0;
                if (in_word != in_match) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                candidates[l].push_back(k);
        }
    }
    std::vector<int> assign(L, -1), best;
    std::vector<char> used(n, 0);
    int found = 0;
    auto rec = [&](auto &&self, int l) -> void {
        if (found > 1)
            return;
        if (l == L) {
            ++found;
            best = assign;
            return;
        }
        for (int k : candidates[l]) {
            if (used[k])
                continue;
            used[k] = 1;
            assign[l] = k;
            self(self, l + 1);
            used[k] = 0;
        }
    };
    rec(rec, 0);
    if (found == 0)
        throw std::runtime_error("letters table matches no assignment of matchings");
    if (found > 1)
        throw std::runtime_error("letters table is ambiguous");
    Letters out;
    out.names.assign(n, "");
    for (int l = 0; l < L; ++l) {
        out.names[best[l]] = std::string(1, anchors.letters[l]);
        out.order.push_back(best[l]);
    }
    return out;
}

std::string format_monomial(const Monomial &m, const Letters &letters) {
    std::string s;
    if (letters.empty()) {
        for (size_t k = 0; k < m.size(); ++k) {
            if (m[k] == 0)
                continue;
            if (!s.empty())
                s += "*";
            s += "x" + std::to_string(k);
            if (m[k] > 1)
                s += "^" + std::to_string(m[k]);
        }
    } else {
        for (int k : letters.order) {
            if (m[k] == 0)
                continue;
            s += letters.names[k];
            if (m[k] > 1)
                s += "^" + std::to_string(m[k]);
        }
    }
    return s.empty() ? "1" : s;
}

Monomial parse_monomial(const std::string &s, const Letters &letters, int nvars) {
    Monomial m = one(nvars);
    if (s == "1")
        return m;
    size_t i = 0;
    auto read_exp = [&]() {
        if (i < s.size() && s[i] == '^') {
            ++i;
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            if (j == i)
                throw std::runtime_error("bad exponent in '" + s + "'");
            int e = std::stoi(s.substr(i, j - i));
            i = j;
            return e;
        }
        return 1;
    };
    while (i < s.size()) {
        if (s[i] == '*') {
            ++i;
            continue;
        }
        int var = -1;
        if (letters.empty()) {
            if (s[i] != 'x')
                throw std::runtime_error("bad monomial '" + s + "'");
            ++i;
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            if (j == i)
                throw std::runtime_error("bad monomial '" + s + "'");
            var = std::stoi(s.substr(i, j - i));
            i = j;
        } else {
            for (int k = 0; k < nvars; ++k)
                if (letters.names[k] == std::string(1, s[i]))
                    var = k;
            ++i;
        }
        if (var < 0 || var >= nvars)
            throw std::runtime_error("unknown variable in '" + s + "'");
        m[var] += read_exp();
    }
    return m;
}

}  // namespace dimer
