#include "qgkm/session.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qgkm {

namespace {

using ordered_json = nlohmann::ordered_json;

// --- tiny expression parsing for the canonical renderings -----------------

std::vector<std::string> split_terms(const std::string& s) {
    // split on top-level + and -, keeping the sign with the term
    std::vector<std::string> terms;
    std::string cur;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (depth == 0 && (c == '+' || c == '-') && !cur.empty() && i > 0) {
            terms.push_back(cur);
            cur.clear();
            if (c == '-') cur += '-';
            continue;
        }
        if (!isspace((unsigned char)c)) cur += c;
    }
    if (!cur.empty()) terms.push_back(cur);
    return terms;
}

void parse_term_into(const std::string& term, int d, Polynomial& p) {
    // term = [sign][coef*]factor*factor*...; factors are d or eK
    Rational coef(1);
    Monomial mono(d + 1, 0);
    std::string t = term;
    if (!t.empty() && t[0] == '-') { coef = Rational(-1); t = t.substr(1); }
    else if (!t.empty() && t[0] == '+') t = t.substr(1);
    if (t.empty()) throw std::invalid_argument("parse: empty term");
    std::istringstream is(t);
    std::string factor;
    while (std::getline(is, factor, '*')) {
        if (factor.empty()) throw std::invalid_argument("parse: empty factor in " + term);
        // a factor may be a rational, a variable, or coefficient+variable
        // glued as in "3d" or "2e3"
        size_t pos = 0;
        std::string digits;
        while (pos < factor.size() && (isdigit((unsigned char)factor[pos]) || factor[pos] == '/'))
            digits += factor[pos++];
        if (!digits.empty()) {
            auto slash = digits.find('/');
            if (slash == std::string::npos) coef *= Rational(Int(digits));
            else coef *= Rational(Int(digits.substr(0, slash)), Int(digits.substr(slash + 1)));
        }
        while (pos < factor.size()) {
            if (factor[pos] == 'd') { mono[0] += 1; ++pos; continue; }
            if (factor[pos] == 'e') {
                size_t q = pos + 1;
                std::string idx;
                while (q < factor.size() && isdigit((unsigned char)factor[q])) idx += factor[q++];
                int v = std::stoi(idx);
                if (v < 1 || v > d) throw std::invalid_argument("parse: variable out of range in " + term);
                mono[v] += 1;
                pos = q;
                continue;
            }
            throw std::invalid_argument("parse: bad factor " + factor + " in " + term);
        }
    }
    p.add_term(mono, coef);
}

} // namespace

Polynomial parse_polynomial(const std::string& text, int d) {
    Polynomial p(d);
    std::string s;
    for (char c : text) if (!isspace((unsigned char)c)) s += c;
    if (s == "0" || s.empty()) return p;
    // optional scalar prefix on a parenthesized group: "(...)", "-(...)",
    // "3/2*(...)"
    auto paren = s.find('(');
    if (paren != std::string::npos && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (size_t i = paren; i + 1 < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            if (s[i] == ')') --depth;
            if (depth == 0 && i > paren) { wraps = false; break; }
        }
        std::string prefix = s.substr(0, paren);
        bool prefix_ok = prefix.empty() || prefix == "-" || prefix == "+";
        if (!prefix_ok && (prefix.back() == '*')) {
            prefix_ok = true;
            for (char c : prefix.substr(0, prefix.size() - 1))
                if (!isdigit((unsigned char)c) && c != '/' && c != '-' && c != '+') prefix_ok = false;
        }
        if (wraps && prefix_ok) {
            Rational coef(1);
            if (prefix == "-") coef = Rational(-1);
            else if (!prefix.empty() && prefix != "+") {
                std::string num = prefix.substr(0, prefix.size() - 1);
                bool neg = !num.empty() && num[0] == '-';
                if (neg || (!num.empty() && num[0] == '+')) num = num.substr(1);
                auto slash = num.find('/');
                coef = slash == std::string::npos
                           ? Rational(Int(num))
                           : Rational(Int(num.substr(0, slash)), Int(num.substr(slash + 1)));
                if (neg) coef = -coef;
            }
            return parse_polynomial(s.substr(paren + 1, s.size() - paren - 2), d) * coef;
        }
    }
    for (const auto& t : split_terms(s)) parse_term_into(t, d, p);
    return p;
}

Character parse_character(const std::string& text, int d) {
    Polynomial p = parse_polynomial(text, d);
    auto a = p.as_character();
    if (!a) throw std::invalid_argument("parse_character: not a linear integral form: " + text);
    return *a;
}

RationalFunction parse_ratfunc(const std::string& text, int d) {
    std::string s;
    for (char c : text) if (!isspace((unsigned char)c)) s += c;
    if (s == "0" || s.empty()) return RationalFunction::zero(d);
    std::string numpart = s, denpart;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == '/' && depth == 0 && i + 1 < s.size() && s[i + 1] == '(') {
            numpart = s.substr(0, i);
            denpart = s.substr(i + 1);
            break;
        }
    }
    Polynomial num = parse_polynomial(numpart, d);
    RationalFunction f = RationalFunction::from_poly(num);
    if (!denpart.empty()) {
        // denpart = ((c1)*(c2)*...) — strip outer parens, then each factor
        if (denpart.front() != '(' || denpart.back() != ')')
            throw std::invalid_argument("parse_ratfunc: malformed denominator " + denpart);
        std::string inner = denpart.substr(1, denpart.size() - 2);
        std::vector<Character> chars;
        size_t i = 0;
        while (i < inner.size()) {
            if (inner[i] == '*') { ++i; continue; }
            if (inner[i] != '(') throw std::invalid_argument("parse_ratfunc: malformed factor list " + inner);
            int dep = 1;
            size_t j = i + 1;
            while (j < inner.size() && dep > 0) {
                if (inner[j] == '(') ++dep;
                if (inner[j] == ')') --dep;
                ++j;
            }
            chars.push_back(parse_character(inner.substr(i + 1, j - i - 2), d));
            i = j;
        }
        RationalFunction dd = RationalFunction::reciprocal_product(Rational(1), chars);
        f = f * dd;
    }
    return f;
}

// --- config ----------------------------------------------------------------

SessionConfig SessionConfig::from_json_text(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    SessionConfig c;
    auto fail = [](const std::string& path, const std::string& why) {
        throw std::invalid_argument("config." + path + ": " + why);
    };
    if (!j.contains("n")) fail("n", "missing");
    c.n = j["n"].get<int>();
    if (c.n < 1) fail("n", "must be positive");
    if (!j.contains("summands")) fail("summands", "missing");
    for (const auto& s : j["summands"]) {
        if (!s.is_array() || s.size() != 2) fail("summands", "entries must be [start, len]");
        c.summands.push_back({s[0].get<int>(), s[1].get<int>()});
    }
    c.bound = j.value("N", 0);
    if (!j.contains("e")) fail("e", "missing");
    for (const auto& v : j["e"]) c.e.push_back(v.get<int>());
    if ((int)c.e.size() != c.n) fail("e", "length must be n");
    c.gsub_mode = j.value("gsub_mode", std::string("heuristic"));
    if (j.contains("explicit_classes"))
        for (const auto& s : j["explicit_classes"]) c.explicit_classes.push_back(s.get<std::string>());
    if (j.contains("commands"))
        for (const auto& s : j["commands"]) c.commands.push_back(s.get<std::string>());
    if (j.contains("formats")) {
        c.formats.clear();
        for (const auto& s : j["formats"]) c.formats.push_back(s.get<std::string>());
    }
    c.seed = j.value("seed", (std::uint64_t)20240915ULL);
    c.out_dir = j.value("out", std::string());
    if (j.contains("euler_table")) c.user_euler_json = j["euler_table"].dump();
    if (j.contains("basis")) c.user_basis_json = j["basis"].dump();
    if (j.contains("filtration")) {
        std::vector<int> f;
        for (const auto& v : j["filtration"]) f.push_back(v.get<int>());
        c.filtration = f;
    }
    return c;
}

SessionConfig SessionConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

SessionConfig SessionConfig::from_inline(const std::string& text) {
    SessionConfig c;
    NilpotentRep m = parse_nilpotent_rep(text);
    c.n = m.quiver.n;
    c.bound = m.bound;
    c.summands = m.summands;
    // the e=… clause
    std::istringstream is(text);
    std::string token;
    while (std::getline(is, token, ';')) {
        std::string t;
        for (char ch : token) if (!isspace((unsigned char)ch)) t += ch;
        if (t.rfind("e=", 0) == 0) {
            std::istringstream es(t.substr(2));
            std::string v;
            while (std::getline(es, v, ',')) c.e.push_back(std::stoi(v));
        }
    }
    if ((int)c.e.size() != c.n)
        throw std::invalid_argument("inline config: e=… clause missing or of wrong length");
    return c;
}

// --- pipeline ---------------------------------------------------------------

Pipeline::Pipeline(const NilpotentRep& m_, const DimVector& e_, std::uint64_t seed)
    : m(m_), e(e_) {
    quiver = coefficient_quiver(m);
    rep = graded_rep(quiver);
    chi = choose_cocharacter(m.num_summands(), lengths_of(m), rep.candidate_labels());
    graph = moment_graph(rep, e, chi, seed);
}

std::vector<NilpotentRep> Pipeline::point_types() const {
    std::vector<NilpotentRep> types;
    for (const auto& p : graph.points) types.push_back(iso_type(p.labels, quiver));
    return types;
}

// --- run --------------------------------------------------------------------

namespace {

std::string point_id(const MomentGraph& g, int p) {
    for (size_t i = 0; i < g.order.size(); ++i)
        if (g.order[i] == p) return "p" + std::to_string(i + 1);
    return "p?";
}

std::string poincare_str(const std::vector<long long>& p) {
    std::string s;
    for (size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (!s.empty()) s += " + ";
        std::string coef = (p[i] == 1 && i > 0) ? "" : std::to_string(p[i]);
        if (i == 0) s += std::to_string(p[i]);
        else if (i == 1) s += coef + (coef.empty() ? "q" : "*q");
        else s += coef + (coef.empty() ? "q^" : "*q^") + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

} // namespace

Report run(const SessionConfig& config) {
    ordered_json out;
    std::vector<std::string> problems;

    NilpotentRep m(config.n, config.summands, config.bound);
    DimVector mdim = dimension_vector(m);
    for (int i = 0; i < config.n; ++i)
        if (config.e[i] < 0 || config.e[i] > mdim[i])
            throw std::invalid_argument("config.e[" + std::to_string(i) + "]: exceeds dim M");

    std::set<std::string> want(config.commands.begin(), config.commands.end());
    bool all = want.empty();
    auto wanted = [&](const std::string& c) { return all || want.count(c) > 0; };

    out["config"] = ordered_json::object();
    out["config"]["rep"] = m.str();
    out["config"]["e"] = config.e;
    out["config"]["seed"] = config.seed;

    Pipeline pl(m, config.e, config.seed);
    const MomentGraph& g = pl.graph;
    auto types = pl.point_types();
    auto od = g.outdeg();

    out["cocharacter"] = ordered_json::object();
    out["cocharacter"]["delta"] = pl.chi.delta;
    out["cocharacter"]["eps"] = pl.chi.eps;

    if (g.points.empty()) {
        out["status"] = "empty";
        Report rep;
        rep.json = out.dump(2) + "\n";
        rep.status = 0;
        return rep;
    }

    if (wanted("fixed-points")) {
        ordered_json fps = ordered_json::array();
        for (int p : g.order) {
            ordered_json fp;
            fp["id"] = point_id(g, p);
            ordered_json labels = ordered_json::array();
            for (int l : g.points[p].labels) labels.push_back(g.rep.names[l]);
            fp["labels"] = labels;
            fp["type"] = types[p].str();
            fp["cell_dim"] = od[p];
            fps.push_back(fp);
        }
        out["fixed_points"] = fps;
        out["fixed_point_count"] = g.points.size();
    }

    if (wanted("moment-graph")) {
        ordered_json mg;
        mg["edge_count"] = g.edges.size();
        ordered_json edges = ordered_json::array();
        for (const auto& e : g.edges) {
            ordered_json ej;
            ej["src"] = point_id(g, e.source);
            ej["dst"] = point_id(g, e.target);
            ej["label"] = e.label.str();
            ej["display_label"] = e.label.str();
            edges.push_back(ej);
        }
        mg["edges"] = edges;
        mg["poincare"] = poincare_str(poincare_polynomial(g));
        ordered_json sm = ordered_json::array();
        for (const auto& row : smoothness_report(g, g.ambient_dim())) {
            ordered_json rj;
            rj["id"] = point_id(g, row.point);
            rj["degree"] = row.degree;
            rj["cell_dim"] = row.cell_dim;
            rj["singular_candidate"] = row.singular_candidate;
            rj["gkm_regular"] = row.gkm_regular;
            sm.push_back(rj);
        }
        mg["smoothness"] = sm;
        out["moment_graph"] = mg;
        if (!config.out_dir.empty()) {
            for (const auto& fmt : config.formats) {
                std::ofstream f(config.out_dir + "/momentgraph" +
                                (fmt == "tikz" ? ".tex" : "." + fmt));
                if (fmt == "json") {
                    // the graph schema enriched with the iso types
                    ordered_json j = ordered_json::parse(export_graph(g, GraphFormat::json));
                    for (auto& v : j["vertices"]) {
                        int p = g.order.at(std::stoul(v["id"].get<std::string>().substr(1)) - 1);
                        auto it = v.find("labels");
                        v.erase(it);
                        ordered_json nv;
                        nv["id"] = v["id"];
                        ordered_json labels = ordered_json::array();
                        for (int l : g.points[p].labels) labels.push_back(g.rep.names[l]);
                        nv["labels"] = labels;
                        nv["type"] = types[p].str();
                        nv["cell_dim"] = v["cell_dim"];
                        v = nv;
                    }
                    f << j.dump(2) << "\n";
                } else {
                    f << export_graph(g, fmt == "dot" ? GraphFormat::dot : GraphFormat::tikz);
                }
            }
        }
    }

    if (wanted("strata")) {
        ordered_json st = ordered_json::array();
        std::vector<std::vector<std::pair<int, int>>> seen;
        for (size_t p = 0; p < g.points.size(); ++p) {
            auto key = types[p].iso_key();
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            ordered_json sj;
            sj["type"] = types[p].str();
            sj["stratum_dim"] = stratum_dim(types[p], m);
            ordered_json pts = ordered_json::array();
            for (size_t p2 = 0; p2 < g.points.size(); ++p2)
                if (types[p2].iso_key() == key) pts.push_back(point_id(g, (int)p2));
            sj["fixed_points"] = pts;
            st.push_back(sj);
        }
        out["strata"] = st;
    }

    GsubResult gres;
    std::vector<UpstairsData> updata;
    bool have_desing = false;
    if (wanted("desing") || wanted("euler") || wanted("basis") || wanted("verify-basis")) {
        GsubMode mode = config.gsub_mode == "lemma410" ? GsubMode::lemma410
                      : config.gsub_mode == "explicit" ? GsubMode::explicit_list
                                                        : GsubMode::heuristic;
        std::vector<NilpotentRep> expl;
        for (const auto& s : config.explicit_classes) expl.push_back(parse_nilpotent_rep(s));
        try {
            gres = gsub(m, config.e, mode, expl);
            auto comps = desing_components(m, config.e, gres);
            for (const auto& c : comps) updata.push_back(build_upstairs(m, c, g));
            have_desing = true;
        } catch (const std::exception& ex) {
            problems.push_back(std::string("desing: ") + ex.what());
        }
    }

    if (wanted("desing") && have_desing) {
        ordered_json ds = ordered_json::array();
        int ci = 0;
        for (const auto& up : updata) {
            ordered_json cj;
            cj["generic_type"] = up.comp.generic_type.str();
            cj["confidence"] = gres.heuristic ? "heuristic" : "proven";
            ordered_json grid = ordered_json::array();
            for (int v : up.comp.target) grid.push_back(v);
            cj["dim_vector_grid"] = grid;
            cj["fixed_point_count"] = up.members.size();
            cj["dimension"] = up.dim;
            cj["smooth_certified"] = up.smooth_certified;
            TowerProfile tp = tower_profile(m, up.comp);
            ordered_json tower = ordered_json::array();
            for (const auto& f : tp.factors) {
                ordered_json fj;
                fj["i"] = f.i;
                fj["k"] = f.k;
                fj["sub"] = f.sub;
                fj["amb"] = f.amb;
                tower.push_back(fj);
            }
            cj["tower"] = tower;
            cj["tower_dim"] = tp.total_dim;
            cj["poincare"] = poincare_str(tp.poincare);
            if (tp.total_dim != up.dim || !tp.consistent) {
                cj["consistent"] = false;
                problems.push_back("desing: tower dimension differs from component dimension for " +
                                   up.comp.generic_type.str());
            } else {
                cj["consistent"] = true;
            }
            ds.push_back(cj);
            if (!config.out_dir.empty()) {
                std::ofstream f(config.out_dir + "/component_" + std::to_string(++ci) + ".dot");
                f << export_graph(up.graph, GraphFormat::dot);
            }
        }
        out["desing"] = ds;
    }

    Filtration filt = pl.filtration();
    if (config.filtration) {
        filt.order.clear();
        for (int v : *config.filtration) filt.order.push_back(g.order.at(v - 1));
    }

    EulerTable table;
    bool have_euler = false;
    if (wanted("euler") || wanted("basis") || wanted("verify-basis")) {
        try {
            EulerBuildLog log;
            table = build_euler_table(g, filt, m, config.e, &log);
            have_euler = true;
            if (config.user_euler_json) {
                ordered_json uj = ordered_json::parse(*config.user_euler_json);
                for (const auto& entry : uj["entries"]) {
                    int p = g.order.at(entry["point"].get<int>() - 1);
                    std::string id = entry["subvariety"].get<std::string>();
                    table.inv[{p, id}] =
                        parse_ratfunc(entry["inverse"].get<std::string>(), m.num_summands());
                    std::erase(table.undetermined, std::make_pair(p, id));
                }
            }
        } catch (const std::exception& ex) {
            problems.push_back(std::string("euler: ") + ex.what());
        }
    }

    if (wanted("euler") && have_euler) {
        ordered_json ej;
        ordered_json entries = ordered_json::array();
        for (const auto& [key, val] : table.inv) {
            ordered_json kv;
            kv["point"] = point_id(g, key.first);
            kv["subvariety"] = key.second;
            kv["inverse"] = val.str(&pl.chi);
            entries.push_back(kv);
        }
        ej["entries"] = entries;
        if (!table.undetermined.empty()) {
            ordered_json und = ordered_json::array();
            for (const auto& [p, id] : table.undetermined) {
                ordered_json kv;
                kv["point"] = point_id(g, p);
                kv["subvariety"] = id;
                und.push_back(kv);
            }
            ej["undetermined"] = und;
            problems.push_back("euler: undetermined Euler data");
        }
        out["euler"] = ej;
    }

    if ((wanted("basis") || wanted("verify-basis")) && have_euler) {
        try {
            std::vector<EquivariantClass> classes;
            bool user_supplied = false;
            if (config.user_basis_json) {
                // user basis: array of {point: id, entries: {id: polynomial}}
                ordered_json uj = ordered_json::parse(*config.user_basis_json);
                std::map<std::string, int> byid;
                for (int p : g.order) byid[point_id(g, p)] = p;
                for (const auto& cj : uj) {
                    EquivariantClass cls;
                    cls.entries.assign(g.points.size(), Polynomial(m.num_summands()));
                    for (auto it = cj["entries"].begin(); it != cj["entries"].end(); ++it)
                        cls.entries.at(byid.at(it.key())) =
                            parse_polynomial(it.value().get<std::string>(), m.num_summands());
                    classes.push_back(std::move(cls));
                }
                user_supplied = true;
            } else {
                classes = basis_solve(g, filt, table);
            }
            (void)user_supplied;
            ordered_json bj = ordered_json::array();
            for (size_t i = 0; i < classes.size(); ++i) {
                ordered_json cj;
                cj["index"] = i + 1;
                if (i < filt.order.size()) cj["point"] = point_id(g, filt.order[i]);
                ordered_json vals = ordered_json::object();
                for (int p : g.order) vals[point_id(g, p)] = classes[i].entries[p].str();
                cj["entries"] = vals;
                bj.push_back(cj);
            }
            out["basis"] = bj;
            if (wanted("verify-basis")) {
                BasisReport rep = basis_verify(classes, g, filt, user_supplied ? nullptr : &table);
                ordered_json vj;
                vj["all_ok"] = rep.all_ok;
                vj["free_basis_certificate"] = rep.free_basis_certificate;
                ordered_json rows = ordered_json::array();
                for (size_t i = 0; i < rep.classes.size(); ++i) {
                    const auto& cr = rep.classes[i];
                    ordered_json rj;
                    rj["index"] = i + 1;
                    rj["gkm_ok"] = cr.gkm_ok;
                    rj["triangular"] = cr.triangular;
                    rj["diagonal_ok"] = cr.diagonal_ok;
                    rj["homogeneous"] = cr.homogeneous;
                    rj["diagonal_degree"] = cr.diagonal_degree;
                    rj["cell_dim"] = cr.cell_dim;
                    rows.push_back(rj);
                }
                vj["classes"] = rows;
                vj["notes"] = rep.notes;
                out["verify_basis"] = vj;
                if (!rep.all_ok) problems.push_back("verify-basis: checks failed");
            }
        } catch (const std::exception& ex) {
            problems.push_back(std::string("basis: ") + ex.what());
        }
    }

    out["problems"] = problems;
    out["status"] = problems.empty() ? "ok" : "failed";
    Report rep;
    rep.json = out.dump(2) + "\n";
    rep.status = problems.empty() ? 0 : 1;
    return rep;
}

} // namespace qgkm
