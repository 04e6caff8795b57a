#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace modbgg::amp {

using Degrees = std::set<int>;

inline std::string show(const Degrees& s) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int x : s) {
        os << (first ? "" : ",") << x;
        first = false;
    }
    os << "}";
    return os.str();
}

enum class FactStatus { Cited, Structural, Hypothesis };
enum class FactKind { Support, Nonzero, Triangle, Filtration, Map, SerreDual };
enum class MapProperty { Injective, Surjective };

inline std::string status_name(FactStatus s) {
    switch (s) {
        case FactStatus::Cited: return "cited";
        case FactStatus::Structural: return "structural";
        case FactStatus::Hypothesis: return "hypothesis";
    }
    return "?";
}

struct Fact {
    std::string id;
    FactKind kind = FactKind::Support;
    FactStatus status = FactStatus::Structural;
    std::string source;

    std::string object;                               // Support, Nonzero, Filtration/Map total, SerreDual first
    Degrees degrees;                                  // Support
    int degree = 0;                                   // Nonzero, Map
    std::vector<std::string> triangle;                // A -> B -> C -> A[1]
    std::vector<std::pair<std::string, int>> terms;   // Filtration: (object, shift)
    int from_term = 0;                                // Map: index of the source term
    MapProperty property = MapProperty::Injective;    // Map
    std::string partner;                              // SerreDual second
    int dimension = 0;                                // SerreDual
};

struct Expectation {
    enum class Kind { Within, Equals, Nonzero, Zero };
    Kind kind = Kind::Within;
    std::string object;
    Degrees degrees;
    int degree = 0;
    std::string label;

    std::string describe() const {
        std::string base = label.empty() ? "" : label + ": ";
        switch (kind) {
            case Kind::Within: return base + "supp " + object + " within " + show(degrees);
            case Kind::Equals: return base + "supp " + object + " = " + show(degrees);
            case Kind::Nonzero: return base + "H^" + std::to_string(degree) + "(" + object + ") != 0";
            case Kind::Zero: return base + "H^" + std::to_string(degree) + "(" + object + ") = 0";
        }
        return base;
    }
};

struct Script {
    std::string name, description;
    int lo = 0, hi = 0;  // global degree range
    std::vector<Fact> facts;
    std::vector<Expectation> expects;

    Script without(const std::string& id) const {
        Script s = *this;
        auto it = std::remove_if(s.facts.begin(), s.facts.end(), [&](const Fact& f) { return f.id == id; });
        if (it == s.facts.end()) throw std::invalid_argument("no fact with id " + id);
        s.facts.erase(it, s.facts.end());
        return s;
    }
    const Fact& fact(const std::string& id) const {
        for (const auto& f : facts)
            if (f.id == id) return f;
        throw std::invalid_argument("no fact with id " + id);
    }
};

namespace detail {

inline FactStatus parse_status(const nlohmann::json& j, FactStatus fallback) {
    if (!j.contains("status")) return fallback;
    const auto s = j.at("status").get<std::string>();
    if (s == "cited") return FactStatus::Cited;
    if (s == "structural") return FactStatus::Structural;
    if (s == "hypothesis") return FactStatus::Hypothesis;
    throw std::invalid_argument("unknown fact status '" + s + "'");
}

inline Degrees parse_degrees(const nlohmann::json& j) {
    Degrees d;
    for (const auto& x : j) d.insert(x.get<int>());
    return d;
}

}  // namespace detail

/// Parses the JSON scenario format: {name, description, range: [lo, hi], facts: [...], expect: [...]}.
inline Script parse_script(const nlohmann::json& j) {
    Script s;
    s.name = j.value("name", "");
    s.description = j.value("description", "");
    s.lo = j.at("range").at(0).get<int>();
    s.hi = j.at("range").at(1).get<int>();
    if (s.lo > s.hi) throw std::invalid_argument("empty degree range");
    int auto_id = 0;
    auto next_id = [&](const nlohmann::json& f) {
        return f.contains("id") ? f.at("id").get<std::string>() : "fact" + std::to_string(auto_id++);
    };
    for (const auto& f : j.at("facts")) {
        if (f.contains("dimension_bounds")) {
            const auto& b = f.at("dimension_bounds");
            Degrees range = detail::parse_degrees(b.at("degrees"));
            for (const auto& o : b.at("objects")) {
                Fact x;
                x.id = "bound:" + o.get<std::string>();
                x.kind = FactKind::Support;
                x.status = FactStatus::Structural;
                x.source = f.value("source", "dimension bound");
                x.object = o.get<std::string>();
                x.degrees = range;
                s.facts.push_back(std::move(x));
            }
            continue;
        }
        Fact x;
        x.id = next_id(f);
        x.source = f.value("source", "");
        if (f.contains("assert_support")) {
            x.kind = FactKind::Support;
            x.object = f.at("assert_support").get<std::string>();
            x.degrees = detail::parse_degrees(f.at("degrees"));
            x.status = detail::parse_status(f, FactStatus::Cited);
        } else if (f.contains("assert_nonzero")) {
            x.kind = FactKind::Nonzero;
            x.object = f.at("assert_nonzero").get<std::string>();
            x.degree = f.at("degree").get<int>();
            x.status = detail::parse_status(f, FactStatus::Cited);
        } else if (f.contains("triangle")) {
            x.kind = FactKind::Triangle;
            x.triangle = f.at("triangle").get<std::vector<std::string>>();
            if (x.triangle.size() != 3) throw std::invalid_argument("triangle needs three objects");
            x.status = detail::parse_status(f, FactStatus::Structural);
        } else if (f.contains("filtration")) {
            x.kind = FactKind::Filtration;
            x.object = f.at("filtration").get<std::string>();
            int pos = 0;
            for (const auto& t : f.at("terms")) {
                if (t.is_string())
                    x.terms.emplace_back(t.get<std::string>(), pos);
                else
                    x.terms.emplace_back(t.at(0).get<std::string>(), t.at(1).get<int>());
                ++pos;
            }
            if (x.terms.empty()) throw std::invalid_argument("filtration " + x.object + " has no terms");
            x.status = detail::parse_status(f, FactStatus::Structural);
        } else if (f.contains("map_fact")) {
            x.kind = FactKind::Map;
            x.object = f.at("map_fact").get<std::string>();
            x.from_term = f.value("from", 0);
            x.degree = f.at("degree").get<int>();
            const auto prop = f.at("property").get<std::string>();
            if (prop == "injective")
                x.property = MapProperty::Injective;
            else if (prop == "surjective")
                x.property = MapProperty::Surjective;
            else
                throw std::invalid_argument("map property must be injective or surjective, got " + prop);
            x.status = detail::parse_status(f, FactStatus::Cited);
        } else if (f.contains("serre_dual")) {
            x.kind = FactKind::SerreDual;
            auto pr = f.at("serre_dual").get<std::vector<std::string>>();
            if (pr.size() != 2) throw std::invalid_argument("serre_dual needs two objects");
            x.object = pr[0];
            x.partner = pr[1];
            x.dimension = f.at("dimension").get<int>();
            x.status = detail::parse_status(f, FactStatus::Structural);
        } else {
            throw std::invalid_argument("unrecognised fact: " + f.dump());
        }
        s.facts.push_back(std::move(x));
    }
    for (const auto& e : j.value("expect", nlohmann::json::array())) {
        Expectation x;
        x.object = e.at("object").get<std::string>();
        x.label = e.value("label", "");
        if (e.contains("within")) {
            x.kind = Expectation::Kind::Within;
            x.degrees = detail::parse_degrees(e.at("within"));
        } else if (e.contains("support")) {
            x.kind = Expectation::Kind::Equals;
            x.degrees = detail::parse_degrees(e.at("support"));
        } else if (e.contains("nonzero")) {
            x.kind = Expectation::Kind::Nonzero;
            x.degree = e.at("nonzero").get<int>();
        } else if (e.contains("zero")) {
            x.kind = Expectation::Kind::Zero;
            x.degree = e.at("zero").get<int>();
        } else {
            throw std::invalid_argument("unrecognised expectation: " + e.dump());
        }
        s.expects.push_back(std::move(x));
    }
    return s;
}

inline Script parse_script(const std::string& text) { return parse_script(nlohmann::json::parse(text)); }

/// Possible-nonvanishing supports (over-approximations) and known-nonzero degrees, refined to a
/// fixpoint by long exact sequences, stupid filtrations, map facts and Serre duality.
class Session {
public:
    Session(int lo, int hi) : lo_(lo), hi_(hi) {
        if (lo > hi) throw std::invalid_argument("empty degree range");
    }

    int lo() const { return lo_; }
    int hi() const { return hi_; }

    void add(const Fact& f) {
        auto touch = [&](const std::string& o) { state(o); };
        switch (f.kind) {
            case FactKind::Support:
                for (int x : f.degrees)
                    if (x < lo_ || x > hi_)
                        throw std::invalid_argument("support of " + f.object + " leaves the degree range");
                restrict_to(f.object, f.degrees, "asserted [" + f.id + "]");
                break;
            case FactKind::Nonzero: mark_nonzero(f.object, f.degree, "asserted [" + f.id + "]"); break;
            case FactKind::Triangle:
                for (const auto& o : f.triangle) touch(o);
                break;
            case FactKind::Filtration:
                touch(f.object);
                for (const auto& t : f.terms) touch(t.first);
                break;
            case FactKind::Map: break;
            case FactKind::SerreDual:
                touch(f.object);
                touch(f.partner);
                break;
        }
        if (f.status == FactStatus::Hypothesis) hypotheses_.push_back(f.id);
        facts_.push_back(f);
    }

    /// Runs all rules to the least fixpoint; returns the number of effective updates made.
    int propagate() {
        for (const auto& f : facts_)
            if (f.kind == FactKind::Map) check_map_target(f);
        const int before = updates_;
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& f : facts_) {
                switch (f.kind) {
                    case FactKind::Triangle: changed |= apply_triangle(f); break;
                    case FactKind::Filtration: changed |= apply_filtration(f); break;
                    case FactKind::SerreDual: changed |= apply_dual(f); break;
                    default: break;
                }
            }
        }
        return updates_ - before;
    }

    bool known(const std::string& o) const { return objects_.count(o) > 0; }
    const Degrees& support(const std::string& o) const { return at(o).support; }
    const Degrees& nonzero(const std::string& o) const { return at(o).nonzero; }
    const std::vector<std::string>& trace() const { return trace_; }
    const std::vector<std::string>& contradictions() const { return contradictions_; }
    const std::vector<std::string>& hypotheses() const { return hypotheses_; }
    int updates() const { return updates_; }
    std::vector<std::string> objects() const {
        std::vector<std::string> v;
        for (const auto& [k, s] : objects_) v.push_back(k);
        return v;
    }

private:
    struct State {
        Degrees support, nonzero;
    };

    State& state(const std::string& o) {
        auto it = objects_.find(o);
        if (it != objects_.end()) return it->second;
        State s;
        for (int x = lo_; x <= hi_; ++x) s.support.insert(x);
        return objects_.emplace(o, std::move(s)).first->second;
    }
    const State& at(const std::string& o) const {
        auto it = objects_.find(o);
        if (it == objects_.end()) throw std::out_of_range("unknown object " + o);
        return it->second;
    }

    bool restrict_to(const std::string& o, const Degrees& allowed, const std::string& why) {
        State& s = state(o);
        Degrees next;
        for (int x : s.support)
            if (allowed.count(x)) next.insert(x);
        if (next == s.support) return false;
        s.support = std::move(next);
        ++updates_;
        trace_.push_back("supp " + o + " <= " + show(s.support) + "  by " + why);
        check(o);
        return true;
    }
    bool remove_degree(const std::string& o, int n, const std::string& why) {
        State& s = state(o);
        if (!s.support.count(n)) return false;
        Degrees allowed = s.support;
        allowed.erase(n);
        return restrict_to(o, allowed, why);
    }
    bool mark_nonzero(const std::string& o, int n, const std::string& why) {
        State& s = state(o);
        if (n < lo_ || n > hi_) return false;
        if (!s.nonzero.insert(n).second) return false;
        ++updates_;
        trace_.push_back("H^" + std::to_string(n) + "(" + o + ") != 0  by " + why);
        check(o);
        return true;
    }
    void check(const std::string& o) {
        const State& s = state(o);
        for (int n : s.nonzero)
            if (!s.support.count(n)) {
                std::string msg = "contradiction: H^" + std::to_string(n) + "(" + o + ") != 0 but supp " + o + " = " +
                                  show(s.support);
                if (std::find(contradictions_.begin(), contradictions_.end(), msg) == contradictions_.end())
                    contradictions_.push_back(msg);
            }
    }
    bool in(const std::string& o, int n) { return state(o).support.count(n) > 0; }
    bool nz(const std::string& o, int n) { return state(o).nonzero.count(n) > 0; }

    // Long exact sequence ... H^n(A) -> H^n(B) -> H^n(C) -> H^{n+1}(A) ...
    bool apply_triangle(const Fact& f) {
        const std::string &A = f.triangle[0], &B = f.triangle[1], &C = f.triangle[2];
        const std::string why = "triangle [" + f.id + "]";
        bool ch = false;
        for (int n = lo_; n <= hi_; ++n) {
            if (in(B, n) && !in(A, n) && !in(C, n)) ch |= remove_degree(B, n, why);
            if (in(C, n) && !in(B, n) && !in(A, n + 1)) ch |= remove_degree(C, n, why);
            if (in(A, n) && !in(B, n) && !in(C, n - 1)) ch |= remove_degree(A, n, why);
        }
        for (int n = lo_; n <= hi_; ++n) {
            if (nz(C, n) && !in(A, n + 1)) ch |= mark_nonzero(B, n, why + ", surjection onto H^n(C)");
            if (nz(A, n) && !in(C, n - 1)) ch |= mark_nonzero(B, n, why + ", injection from H^n(A)");
            if (nz(B, n) && !in(A, n)) ch |= mark_nonzero(C, n, why + ", injection into H^n(C)");
            if (nz(B, n) && !in(C, n)) ch |= mark_nonzero(A, n, why + ", surjection from H^n(A)");
            if (nz(C, n) && !in(B, n)) ch |= mark_nonzero(A, n + 1, why + ", connecting injection");
            if (nz(A, n) && !in(B, n)) ch |= mark_nonzero(C, n - 1, why + ", connecting surjection");
        }
        return ch;
    }

    bool map_known(const std::string& total, int from, int t, MapProperty p) const {
        for (const auto& f : facts_)
            if (f.kind == FactKind::Map && f.object == total && f.from_term == from && f.degree == t && f.property == p)
                return true;
        return false;
    }
    void check_map_target(const Fact& f) const {
        for (const auto& g : facts_)
            if (g.kind == FactKind::Filtration && g.object == f.object) {
                if (f.from_term < 0 || f.from_term + 1 >= static_cast<int>(g.terms.size()) ||
                    g.terms[f.from_term + 1].second != g.terms[f.from_term].second + 1)
                    throw std::invalid_argument("map fact [" + f.id + "] needs consecutive terms of " + f.object);
                return;
            }
        throw std::invalid_argument("map fact [" + f.id + "] refers to unknown complex " + f.object);
    }

    bool apply_filtration(const Fact& f) {
        const std::string why = "filtration [" + f.id + "]";
        const std::string& T = f.object;
        bool ch = false;
        if (f.terms.size() == 1) {
            const auto& [X, s] = f.terms.front();
            Degrees shifted, unshifted;
            for (int n : state(X).support) shifted.insert(n + s);
            for (int n : state(T).support) unshifted.insert(n - s);
            ch |= restrict_to(T, shifted, why);
            ch |= restrict_to(X, unshifted, why);
            for (int n : Degrees(state(X).nonzero)) ch |= mark_nonzero(T, n + s, why);
            for (int n : Degrees(state(T).nonzero)) ch |= mark_nonzero(X, n - s, why);
            return ch;
        }
        Degrees allowed;
        const bool two_step = f.terms.size() == 2 && f.terms[1].second == f.terms[0].second + 1;
        if (two_step) {
            // E1 page with two columns: kernel of H^t(X) -> H^t(Y) at i+t, cokernel at i+1+t
            const auto& [X, i] = f.terms[0];
            const auto& Y = f.terms[1].first;
            for (int t : state(X).support)
                if (!map_known(T, 0, t, MapProperty::Injective)) allowed.insert(i + t);
            for (int t : state(Y).support)
                if (!map_known(T, 0, t, MapProperty::Surjective)) allowed.insert(i + 1 + t);
        } else {
            for (const auto& [X, s] : f.terms)
                for (int n : state(X).support) allowed.insert(n + s);
        }
        ch |= restrict_to(T, allowed, why);
        return ch;
    }

    bool apply_dual(const Fact& f) {
        const std::string why = "Serre duality [" + f.id + "]";
        bool ch = false;
        auto mirror = [&](const Degrees& s) {
            Degrees m;
            for (int n : s) m.insert(f.dimension - n);
            return m;
        };
        ch |= restrict_to(f.partner, mirror(state(f.object).support), why);
        ch |= restrict_to(f.object, mirror(state(f.partner).support), why);
        for (int n : Degrees(state(f.object).nonzero)) ch |= mark_nonzero(f.partner, f.dimension - n, why);
        for (int n : Degrees(state(f.partner).nonzero)) ch |= mark_nonzero(f.object, f.dimension - n, why);
        return ch;
    }

    int lo_, hi_;
    std::map<std::string, State> objects_;
    std::vector<Fact> facts_;
    std::vector<std::string> trace_, contradictions_, hypotheses_;
    int updates_ = 0;
};

enum class Outcome { Pass, ConditionalPass, Fail };

inline std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "PASS";
        case Outcome::ConditionalPass: return "CONDITIONAL PASS";
        case Outcome::Fail: return "FAIL";
    }
    return "?";
}

struct Verdict {
    Outcome outcome = Outcome::Fail;
    std::optional<std::string> first_failure;
    std::vector<std::string> trace;
    std::vector<std::string> hypotheses;
    int updates = 0;
    std::map<std::string, Degrees> supports;
    std::map<std::string, Degrees> nonzero;

    bool passed() const { return outcome != Outcome::Fail; }
};

inline bool expectation_holds(const Session& s, const Expectation& e) {
    if (!s.known(e.object)) return false;
    const Degrees& sup = s.support(e.object);
    switch (e.kind) {
        case Expectation::Kind::Within:
            return std::includes(e.degrees.begin(), e.degrees.end(), sup.begin(), sup.end());
        case Expectation::Kind::Equals: return sup == e.degrees;
        case Expectation::Kind::Nonzero: return s.nonzero(e.object).count(e.degree) > 0;
        case Expectation::Kind::Zero: return sup.count(e.degree) == 0;
    }
    return false;
}

inline Session build_session(const Script& script) {
    Session s(script.lo, script.hi);
    for (const auto& f : script.facts) s.add(f);
    s.propagate();
    return s;
}

inline Verdict run_script(const Script& script) {
    Session s = build_session(script);
    Verdict v;
    v.trace = s.trace();
    v.hypotheses = s.hypotheses();
    v.updates = s.updates();
    for (const auto& o : s.objects()) {
        v.supports[o] = s.support(o);
        v.nonzero[o] = s.nonzero(o);
    }
    if (!s.contradictions().empty()) {
        v.first_failure = s.contradictions().front();
    } else {
        for (const auto& e : script.expects)
            if (!expectation_holds(s, e)) {
                v.first_failure = "underivable: " + e.describe();
                break;
            }
    }
    if (v.first_failure)
        v.outcome = Outcome::Fail;
    else
        v.outcome = v.hypotheses.empty() ? Outcome::Pass : Outcome::ConditionalPass;
    return v;
}

struct MinimalityReport {
    std::vector<std::pair<std::string, std::optional<std::string>>> deletions;  // id, failure caused (if any)
    bool minimal() const {
        for (const auto& [id, why] : deletions)
            if (!why) return false;
        return true;
    }
};

/// Deletes each non-structural fact in turn; the script is minimal if every deletion fails it.
inline MinimalityReport check_minimality(const Script& script) {
    MinimalityReport r;
    for (const auto& f : script.facts) {
        if (f.status == FactStatus::Structural) continue;
        auto v = run_script(script.without(f.id));
        r.deletions.emplace_back(f.id, v.passed() ? std::nullopt : v.first_failure);
    }
    return r;
}

}  // namespace modbgg::amp
