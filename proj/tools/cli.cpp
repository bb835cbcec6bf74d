#include "cli.hpp"

#include "dimer/centers.hpp"
#include "dimer/contraction.hpp"
#include "dimer/grading.hpp"
#include "dimer/matchings.hpp"
#include "dimer/paths.hpp"
#include "dimer/quiver.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dimer::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct FileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FileError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Quiver load_quiver(const std::string &path) {
    std::string text = read_file(path);
    try {
        return parse_quiver(text);
    } catch (const ParseError &e) {
        throw FileError(path + ": " + e.what());
    }
}

std::string letters_path(const std::string &path) {
    fs::path p(path);
    p.replace_extension(".letters");
    return p.string();
}

std::string word_string(const Word &w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k)
        s += (k ? " " : "") + std::to_string(w[k]);
    return s;
}

std::string set_string(const std::vector<int> &v) {
    std::string s = "{";
    for (size_t k = 0; k < v.size(); ++k)
        s += (k ? ", " : "") + std::to_string(v[k]);
    return s + "}";
}

// Compares the exponent of the last display variable first.
// Display order: by highest letter present, then degree, then a higher power of
// that letter first, then the same comparison on the remaining letters.
bool display_less(Monomial a, Monomial b, const std::vector<int> &order) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        auto top = [&](const Monomial &m) {
            for (auto jt = it; jt != order.rend(); ++jt)
                if (m[*jt] != 0)
                    return static_cast<int>(order.rend() - jt);
            return 0;
        };
        int ta = top(a), tb = top(b);
        if (ta != tb)
            return ta < tb;
        if (degree(a) != degree(b))
            return degree(a) < degree(b);
        if (a[*it] != b[*it])
            return a[*it] > b[*it];
        a[*it] = b[*it] = 0;
    }
    return false;
}

std::vector<Monomial> display_sorted(std::vector<Monomial> ms, const Letters &letters) {
    std::vector<int> order = letters.order;
    if (order.empty() && !ms.empty())
        for (size_t k = 0; k < ms.front().size(); ++k)
            order.push_back(static_cast<int>(k));
    std::sort(ms.begin(), ms.end(),
              [&](const Monomial &a, const Monomial &b) { return display_less(a, b, order); });
    return ms;
}

std::string mono_list(const std::vector<Monomial> &ms, const Letters &letters) {
    std::string s;
    for (const auto &m : display_sorted(ms, letters))
        s += (s.empty() ? "" : ", ") + format_monomial(m, letters);
    return s;
}

json mono_json(const std::vector<Monomial> &ms, const Letters &letters) {
    json a = json::array();
    for (const auto &m : display_sorted(ms, letters))
        a.push_back(format_monomial(m, letters));
    return a;
}

json quiver_json(const Quiver &q) {
    json j;
    j["vertices"] = q.num_vertices;
    json arrows = json::array();
    for (const auto &a : q.arrows)
        arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}, {"wind", {a.wind[0], a.wind[1]}}});
    j["arrows"] = arrows;
    json faces = json::array();
    for (const auto &f : q.faces)
        faces.push_back({{"id", f.id}, {"boundary", f.boundary}});
    j["faces"] = faces;
    return j;
}

json header(const std::string &command, const std::string &file) {
    return {{"schema", kSchema}, {"command", command}, {"file", fs::path(file).filename().string()}};
}

void emit(std::ostream &out, const json &j) { out << j.dump(2) << "\n"; }

struct Options {
    std::string file;
    bool json = false;
    bool letters = false;
    int bound = 8;
    std::string arrows;
    std::string contract = "auto";
    int degree_cap = 12;
};

// Rejects invalid quivers before any computation.
bool require_valid(const Quiver &q, std::ostream &err) {
    auto rep = validate(q);
    if (rep.valid())
        return true;
    for (const auto &c : rep.checks)
        if (!c.ok)
            err << "invalid quiver: " << c.name << ": " << c.detail << "\n";
    return false;
}

int cmd_validate(const Options &o, std::ostream &out) {
    Quiver q = load_quiver(o.file);
    auto rep = validate(q);
    if (o.json) {
        json j = header("validate", o.file);
        j["valid"] = rep.valid();
        json checks = json::array();
        for (const auto &c : rep.checks)
            checks.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
        j["checks"] = checks;
        j["counts"] = {{"vertices", q.num_vertices}, {"arrows", q.num_arrows()}, {"faces", q.num_faces()}};
        emit(out, j);
    } else {
        for (const auto &c : rep.checks)
            if (!c.ok)
                out << "FAIL " << c.name << ": " << c.detail << "\n";
        out << (rep.valid() ? "OK" : "INVALID") << "\n";
    }
    return rep.valid() ? kExitOk : kExitFailure;
}

int cmd_matchings(const Options &o, std::ostream &out, std::ostream &err) {
    Quiver q = load_quiver(o.file);
    if (!require_valid(q, err))
        return kExitFailure;
    auto pm = perfect_matchings(q);
    auto sm = simple_matchings(q);
    auto unc = uncovered_arrows(q, sm);
    if (o.json) {
        json j = header("matchings", o.file);
        json p = json::array(), s = json::array();
        for (const auto &m : pm)
            p.push_back(m.arrows);
        for (const auto &m : sm)
            s.push_back(m.arrows);
        j["perfect"] = p;
        j["simple"] = s;
        j["uncovered"] = unc;
        j["cancellative"] = unc.empty();
        emit(out, j);
        return kExitOk;
    }
    out << "perfect matchings: " << pm.size() << "\n";
    for (size_t k = 0; k < pm.size(); ++k)
        out << "  P" << k << " " << set_string(pm[k].arrows) << "\n";
    out << "simple matchings: " << sm.size() << "\n";
    for (size_t k = 0; k < sm.size(); ++k)
        out << "  S" << k << " " << set_string(sm[k].arrows) << "\n";
    out << "uncovered arrows: " << set_string(unc) << "\n";
    out << "cancellative: " << (unc.empty() ? "yes" : "no") << "\n";
    return kExitOk;
}

int cmd_pairs(const Options &o, std::ostream &out, std::ostream &err) {
    Quiver q = load_quiver(o.file);
    if (!require_valid(q, err))
        return kExitFailure;
    PathOracle oracle(q);
    auto search = find_noncancellative_pair(oracle, o.bound);
    const auto &pair = search.pair;
    if (o.json) {
        json j = header("pairs", o.file);
        j["bound"] = o.bound;
        j["complete_length"] = search.complete_length;
        j["skipped"] = search.skipped;
        j["budget_exhausted"] = search.budget_exhausted;
        if (pair) {
            json pj = {{"base", pair->p.base},
                       {"p", pair->p.arrows},
                       {"q", pair->q.arrows},
                       {"head", path_head(q, pair->p)}};
            if (pair->witness)
                pj["witness"] = {{"base", pair->witness->base},
                                 {"arrows", pair->witness->arrows},
                                 {"side", pair->witness_on_right ? "right" : "left"}};
            else
                pj["witness"] = nullptr;
            j["pair"] = pj;
        } else {
            j["pair"] = nullptr;
        }
        emit(out, j);
        return pair || (search.complete_length == o.bound && search.skipped == 0) ? kExitOk : kExitCaveat;
    }
    if (!pair) {
        out << "no non-cancellative pair up to length " << search.complete_length << "\n";
        if (search.budget_exhausted)
            out << "caveat: search budget exhausted at length " << search.complete_length + 1 << "\n";
        if (search.skipped > 0)
            out << "caveat: " << search.skipped << " paths skipped, their classes hit the oracle bounds\n";
        return search.complete_length == o.bound && search.skipped == 0 ? kExitOk : kExitCaveat;
    }
    out << "pair from vertex " << pair->p.base << " to vertex " << path_head(q, pair->p) << "\n";
    out << "  p = [" << word_string(pair->p.arrows) << "]\n";
    out << "  q = [" << word_string(pair->q.arrows) << "]\n";
    if (pair->witness)
        out << "  r = [" << word_string(pair->witness->arrows) << "] with "
            << (pair->witness_on_right ? "p r = q r" : "r p = r q") << " (temporal order)\n";
    else
        out << "  no composing witness up to length " << o.bound << "\n";
    return kExitOk;
}

void print_contraction(const Contraction &c, const Options &o, std::ostream &out, const std::string &command) {
    if (o.json) {
        json j = header(command, o.file);
        j["contracted"] = c.contracted;
        j["vertex_map"] = c.vertex_map;
        j["arrow_map"] = c.arrow_map;
        j["target"] = quiver_json(c.target);
        emit(out, j);
        return;
    }
    out << "# contracted arrows " << set_string(c.contracted) << "\n";
    out << "# vertex map";
    for (size_t v = 0; v < c.vertex_map.size(); ++v)
        out << " " << v << "->" << c.vertex_map[v];
    out << "\n";
    out << write_quiver(c.target);
}

std::vector<int> parse_ids(const std::string &s, const std::string &option) {
    std::vector<int> ids;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        size_t pos = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &pos);
        } catch (const std::logic_error &) {
            pos = 0;
        }
        if (pos != tok.size() || v < 0)
            throw CLI::ValidationError(option, "bad arrow id '" + tok + "'");
        ids.push_back(v);
    }
    return ids;
}

int cmd_contract(const Options &o, std::ostream &out, std::ostream &err) {
    Quiver q = load_quiver(o.file);
    if (!require_valid(q, err))
        return kExitFailure;
    try {
        Contraction c = contract(q, parse_ids(o.arrows, "--arrows"));
        print_contraction(c, o, out, "contract");
    } catch (const ContractionError &e) {
        err << "contraction failed: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_find_contraction(const Options &o, std::ostream &out, std::ostream &err) {
    Quiver q = load_quiver(o.file);
    if (!require_valid(q, err))
        return kExitFailure;
    Bounds b;
    b.degree_cap = o.degree_cap;
    std::optional<Contraction> c;
    try {
        c = find_cyclic_contraction(q, b);
    } catch (const ContractionCheckError &e) {
        err << "search incomplete: " << e.what() << "\n";
        return kExitCaveat;
    }
    if (!c) {
        if (o.json) {
            json j = header("find-contraction", o.file);
            j["contracted"] = nullptr;
            emit(out, j);
        } else {
            out << "no contraction to a cancellative dimer algebra exists\n";
        }
        return kExitOk;
    }
    print_contraction(*c, o, out, "find-contraction");
    return kExitOk;
}

int cmd_analyze(const Options &o, std::ostream &out, std::ostream &err) {
    Quiver q = load_quiver(o.file);
    if (!require_valid(q, err))
        return kExitFailure;
    Bounds b;
    b.degree_cap = o.degree_cap;

    Contraction c;
    if (o.contract == "auto") {
        std::optional<Contraction> found;
        try {
            found = find_cyclic_contraction(q, b);
        } catch (const ContractionCheckError &e) {
            err << "search incomplete: " << e.what() << "\n";
            return kExitCaveat;
        }
        if (!found) {
            err << "no contraction to a cancellative dimer algebra exists\n";
            return kExitCaveat;
        }
        c = *found;
    } else if (o.contract == "none") {
        c = identity_contraction(q);
    } else {
        try {
            c = contract(q, parse_ids(o.contract, "--contract"));
        } catch (const ContractionError &e) {
            err << "contraction failed: " << e.what() << "\n";
            return kExitFailure;
        }
    }

    GradingContext ctx;
    try {
        ctx = tau_context(c);
    } catch (const std::runtime_error &e) {
        err << "target: " << e.what() << "\n";
        return kExitFailure;
    }
    Letters letters;
    if (o.letters) {
        std::string lp = letters_path(o.file);
        LetterAnchors anchors;
        try {
            anchors = parse_letters(read_file(lp));
        } catch (const FileError &) {
            throw;
        } catch (const std::runtime_error &e) {
            throw FileError(lp + ": " + e.what());
        }
        try {
            letters = resolve_letters(anchors, ctx);
        } catch (const std::runtime_error &e) {
            throw FileError(lp + ": " + e.what());
        }
    }

    CenterReport rep = depiction_report(q, ctx, b);
    std::optional<CyclicityReport> cyc;
    std::string cyc_note;
    try {
        cyc = is_cyclic(c, b);
    } catch (const ContractionCheckError &e) {
        cyc_note = e.what();
        rep.caveats.push_back(std::string("cyclicity undecided: ") + e.what());
    }

    std::vector<std::string> vars;
    for (int k = 0; k < rep.num_vars; ++k) {
        Monomial m = one(rep.num_vars);
        m[k] = 1;
        vars.push_back(format_monomial(m, letters));
    }
    if (!letters.empty()) {
        vars.clear();
        for (int k : letters.order)
            vars.push_back(letters.names[k]);
    }
    auto fmt = [&](const Monomial &m) { return format_monomial(m, letters); };

    if (o.json) {
        json j = header("analyze", o.file);
        j["quiver"] = {{"vertices", q.num_vertices}, {"arrows", q.num_arrows()}, {"faces", q.num_faces()}};
        j["contraction"] = {{"arrows", c.contracted},
                            {"target",
                             {{"vertices", c.target.num_vertices},
                              {"arrows", c.target.num_arrows()},
                              {"faces", c.target.num_faces()}}},
                            {"cyclic", cyc ? json(cyc->cyclic) : json(nullptr)}};
        j["variables"] = vars;
        j["degree_cap"] = b.degree_cap;
        j["cancellative"] = rep.cancellative;
        j["S"] = {{"generators", mono_json(rep.s.generators, letters)}, {"saturated", rep.s.saturated}};
        j["R"] = {{"module_generators", mono_json(rep.r.module_generators, letters)},
                  {"algebra_generators", mono_json(rep.r.algebra_generators, letters)},
                  {"saturated", rep.r.saturated},
                  {"module_form_exact", rep.r.module_form_exact},
                  {"equals_S", rep.r.equals_s}};
        j["normal"] = rep.normal;
        json lifts = json::array();
        for (const auto &l : rep.lifts)
            lifts.push_back({{"g", fmt(l.g)}, {"result", lift_kind_name(l.kind)}, {"fast_path", l.fast_path}});
        j["central_image"] = {{"lift_degree", rep.lift_degree},
                              {"lifts", lifts},
                              {"proper_certificate", rep.zhat_proper ? json(fmt(*rep.zhat_proper)) : json(nullptr)}};
        if (rep.witness) {
            json chain = json::array();
            for (const auto &m : rep.witness->chain)
                chain.push_back(fmt(m));
            j["witness"] = {{"s", fmt(rep.witness->s)},
                            {"N", rep.witness->N},
                            {"chain", chain},
                            {"powers_outside_R", rep.witness->powers_outside_r},
                            {"chain_strict", rep.witness->chain_strict}};
        } else {
            j["witness"] = nullptr;
        }
        j["krull_dimension"] = rep.dimension;
        j["m0S_generators"] = mono_json(rep.r.module_generators, letters);
        j["caveats"] = rep.caveats;
        emit(out, j);
        return rep.caveats.empty() ? kExitOk : kExitCaveat;
    }

    out << "quiver: " << q.num_vertices << " vertices, " << q.num_arrows() << " arrows, " << q.num_faces()
        << " faces\n";
    out << "contraction: " << set_string(c.contracted) << " -> " << c.target.num_vertices << " vertices, "
        << c.target.num_arrows() << " arrows, " << c.target.num_faces() << " faces";
    if (cyc)
        out << (cyc->cyclic ? " (cyclic)" : " (not cyclic)");
    out << "\n";
    out << "variables:";
    for (const auto &v : vars)
        out << " " << v;
    out << "\n";
    out << "cancellative: " << (rep.cancellative ? "yes" : "no") << "\n";
    out << "S = k[" << mono_list(rep.s.generators, letters) << "]\n";
    if (rep.r.module_form_exact)
        out << "R = k + (" << mono_list(rep.r.module_generators, letters) << ")S\n";
    else
        out << "R is strictly inside k + (" << mono_list(rep.r.module_generators, letters) << ")S\n";
    out << "R = S: " << (rep.r.equals_s ? "yes" : "no") << "\n";
    out << "R algebra generators up to degree " << b.degree_cap << ": "
        << rep.r.algebra_generators.size() << "\n";
    out << "normal: " << (rep.normal ? "yes" : "no") << "\n";
    out << "central lifts up to degree " << rep.lift_degree << ":\n";
    for (const auto &l : rep.lifts)
        out << "  " << fmt(l.g) << ": " << lift_kind_name(l.kind) << (l.fast_path ? " (sigma does not divide)" : "")
            << "\n";
    if (rep.zhat_proper)
        out << "reduced center image is proper in R: " << fmt(*rep.zhat_proper) << " does not lift\n";
    else
        out << "reduced center image: no missing generator up to degree " << rep.lift_degree << "\n";
    if (rep.witness) {
        const auto &w = *rep.witness;
        out << "nonnoetherian witness: s = " << fmt(w.s) << ", N = " << w.N;
        if (w.chain.size() == 3)
            out << ", chain (" << fmt(w.chain[0]) << ") < (" << fmt(w.chain[0]) << ", " << fmt(w.chain[1])
                << ") < (" << fmt(w.chain[0]) << ", " << fmt(w.chain[1]) << ", " << fmt(w.chain[2]) << ")";
        out << "\n";
    } else {
        out << "nonnoetherian witness: none\n";
    }
    out << "krull dimension: " << rep.dimension << "\n";
    out << "m0 S = (" << mono_list(rep.r.module_generators, letters) << ")S\n";
    if (rep.caveats.empty()) {
        out << "caveats: none\n";
    } else {
        out << "caveats:\n";
        for (const auto &cv : rep.caveats)
            out << "  " << cv << "\n";
    }
    return rep.caveats.empty() ? kExitOk : kExitCaveat;
}

int seed_fixtures(const std::string &dir, std::ostream &out) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto &[name, text] : embedded_fixtures()) {
        fs::path p = fs::path(dir) / name;
        fs::create_directories(p.parent_path(), ec);
        std::ofstream f(p, std::ios::binary);
        if (!f)
            throw FileError("cannot write " + p.string());
        f << text;
        out << p.string() << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Invariants of dimer quivers on the torus"};
    app.require_subcommand(0, 1);
    Options o;
    std::string seed_dir;
    app.add_option("--seed-fixtures", seed_dir, "Write the bundled fixture corpus into DIR");

    auto add_file = [&](CLI::App *sub) {
        sub->add_option("file", o.file, "Quiver file")->required();
        sub->add_flag("--json", o.json, "Machine-readable output");
    };
    auto *v = app.add_subcommand("validate", "Check the dimer quiver invariants");
    add_file(v);
    auto *m = app.add_subcommand("matchings", "Perfect and simple matchings");
    add_file(m);
    auto *p = app.add_subcommand("pairs", "Search for a non-cancellative pair");
    add_file(p);
    p->add_option("--bound", o.bound, "Maximum path length")->check(CLI::Range(1, 16));
    auto *c = app.add_subcommand("contract", "Contract a set of arrows");
    add_file(c);
    c->add_option("--arrows", o.arrows, "Comma separated arrow ids")->required();
    auto *f = app.add_subcommand("find-contraction", "Search for a cyclic contraction");
    add_file(f);
    f->add_option("--degree-cap", o.degree_cap, "Degree cap for cycle labels")->check(CLI::Range(2, 40));
    auto *a = app.add_subcommand("analyze", "Cycle algebra, homotopy center and related invariants");
    add_file(a);
    a->add_option("--contract", o.contract, "auto, none, or comma separated arrow ids");
    a->add_flag("--letters", o.letters, "Name variables using the .letters file beside the quiver");
    a->add_option("--degree-cap", o.degree_cap, "Degree cap for cycle labels")->check(CLI::Range(2, 40));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (!seed_dir.empty())
            return seed_fixtures(seed_dir, out);
        if (v->parsed())
            return cmd_validate(o, out);
        if (m->parsed())
            return cmd_matchings(o, out, err);
        if (p->parsed())
            return cmd_pairs(o, out, err);
        if (c->parsed())
            return cmd_contract(o, out, err);
        if (f->parsed())
            return cmd_find_contraction(o, out, err);
        if (a->parsed())
            return cmd_analyze(o, out, err);
    } catch (const FileError &e) {
        err << e.what() << "\n";
        return kExitFile;
    } catch (const CLI::ValidationError &e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "bad argument: " << e.what() << "\n";
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace dimer::cli
