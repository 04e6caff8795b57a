#pragma once

#include <string>
#include <vector>

#include "ampcalc.hpp"
#include "bggkit.hpp"
#include "charring.hpp"
#include "euler_check.hpp"
#include "groth.hpp"
#include "json.hpp"
#include "rootdata.hpp"
#include "verify.hpp"

namespace modbgg::io {

using nlohmann::json;

inline GroupDatum parse_group(const std::string& name) {
    if (name == "gl3" || name == "GL3") return gl3();
    if (name == "gsp4" || name == "GSp4") return gsp4();
    throw std::invalid_argument("unknown group '" + name + "' (expected gl3 or gsp4)");
}

inline std::string group_key(const GroupDatum& d) { return is_gl3(d) ? "gl3" : "gsp4"; }

/// "a,b[,c]" with the group's lattice rank.
inline Weight parse_weight(const GroupDatum& d, const std::string& text) {
    std::vector<Int> xs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("weight '" + text + "' must be comma-separated integers");
        }
        if (used != tok.size()) throw std::invalid_argument("weight '" + text + "' must be comma-separated integers");
        xs.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (static_cast<int>(xs.size()) != d.rank)
        throw std::invalid_argument("weight '" + text + "' needs " + std::to_string(d.rank) + " coordinates for " +
                                    d.name());
    return Weight(xs);
}

inline json to_json(const Weight& w) { return w.coords(); }

inline json datum_json(const GroupDatum& d) {
    return {{"family", family_name(d.family)}, {"n", d.n}, {"parabolic", d.parabolic.str()}};
}

inline json to_json(const FormalCharacter& ch) {
    json terms = json::array();
    for (const auto& [w, m] : ch.terms()) terms.push_back({to_json(w), m});
    json out{{"terms", terms}};
    if (ch.window()) out["window"] = {{"lo", to_json(ch.window()->lo)}, {"hi", to_json(ch.window()->hi)}};
    return out;
}

inline std::string kind_key(VermaKind k) { return k == VermaKind::DualWeylLevi ? "W" : "L_M"; }

inline json to_json(const VermaClass& c) { return {{"kind", kind_key(c.kind)}, {"weight", to_json(c.weight)}}; }

inline json to_json(const KElement& k) {
    json out = json::array();
    for (const auto& [c, m] : k.terms())
        out.push_back({{"kind", kind_key(c.kind)}, {"weight", to_json(c.weight)}, {"coeff", m}});
    return out;
}

inline json to_json(const OrbitFamily& f) {
    json out = json::object();
    for (const auto& [n, w] : f.members) out[n] = to_json(w);
    return out;
}

inline json to_json(const FilteredComplex& c) {
    json degrees = json::array();
    for (const auto& t : c.terms) {
        json layers = json::array();
        for (const auto& l : t.layers) {
            json layer = json::array();
            for (const auto& cls : l) layer.push_back(to_json(cls));
            layers.push_back(layer);
        }
        degrees.push_back(layers);
    }
    json diffs = json::array();
    for (const auto& df : c.differentials) {
        json j{{"from_degree", df.from_degree}, {"kind", diff_kind_name(df.kind)}, {"note", df.note}};
        j["source"] = df.source ? to_json(*df.source) : json(nullptr);
        j["target"] = df.target ? to_json(*df.target) : json(nullptr);
        diffs.push_back(j);
    }
    return {{"top_degree", c.top_degree}, {"degrees", degrees}, {"differentials", diffs}};
}

inline json to_json(const FiltrationSpec& s) {
    json pieces = json::array();
    json names = json::array();
    for (const auto& [n, c] : s.pieces) {
        names.push_back(n);
        json p = to_json(c);
        p["name"] = n;
        pieces.push_back(p);
    }
    return {{"group", s.group}, {"filtration_names", names}, {"pieces", pieces}};
}

inline json to_json(const ValidationReport& r) {
    json issues = json::array();
    for (const auto& i : r.issues) issues.push_back({{"degree", i.degree}, {"message", i.message}});
    return {{"clean", r.clean()}, {"issues", issues}};
}

inline json to_json(const FloorReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"case", row.label}, {"expression", row.expression}, {"brute_force", row.brute_force},
                        {"pass", row.pass()}});
    return {{"branch", branch_name(r.branch)}, {"pass", r.pass()}, {"rows", rows}};
}

inline json to_json(const verify::CriterionResult& r) {
    return {{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"detail", r.detail}};
}

inline json degrees_json(const amp::Degrees& d) { return json(std::vector<int>(d.begin(), d.end())); }

inline json to_json(const amp::Verdict& v) {
    json supports = json::object(), nonzero = json::object();
    for (const auto& [o, d] : v.supports) supports[o] = degrees_json(d);
    for (const auto& [o, d] : v.nonzero)
        if (!d.empty()) nonzero[o] = degrees_json(d);
    json out{{"outcome", amp::outcome_name(v.outcome)}, {"updates", v.updates}, {"hypotheses", v.hypotheses},
             {"supports", supports},           {"nonzero", nonzero},     {"trace", v.trace}};
    out["first_failure"] = v.first_failure ? json(*v.first_failure) : json(nullptr);
    return out;
}

}  // namespace modbgg::io
