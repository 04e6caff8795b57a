#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "amprandom.hpp"
#include "bggkit.hpp"
#include "charring.hpp"
#include "euler_check.hpp"
#include "groth.hpp"
#include "rootdata.hpp"
#include "scenarios.hpp"

namespace modbgg::verify {

struct Budget {
    static constexpr double kostant_seconds = 1.0;
    static constexpr double sweep_seconds = 30.0;
    static constexpr double soundness_seconds = 10.0;
    static constexpr double scenario_seconds = 1.0;  // per scenario, including minimality
};

struct Config {
    std::vector<Int> primes{11, 13, 17};
    std::vector<Int> boundary_moduli{12, 14, 16, 18, 20};  // even p reach 2a = p-4
    Int kostant_bound = 40;
    int soundness_cases = 500;
    std::uint64_t seed = 0x5eed2024ULL;
    Int window_margin = 4;
    std::size_t min_cells_per_group = 20;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
    return s;
}

template <class T, std::size_t N>
std::string tuple_str(const std::array<T, N>& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < N; ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
}

inline std::vector<Weight> family_weights(const OrbitFamily& f) {
    std::vector<Weight> ws;
    for (const auto& [n, w] : f.members) ws.push_back(w);
    return ws;
}

/// Classes of every piece, degree by degree, sorted.
inline std::vector<VermaClass> sorted_classes(const Term& t) {
    auto c = t.classes();
    std::sort(c.begin(), c.end());
    return c;
}

}  // namespace detail

/// Generic-cell sweep shared by criteria 2-4.
class SweepCache {
public:
    explicit SweepCache(const Config& cfg) : cfg_(cfg) {}
    const SweepReport& get() {
        if (!report_) {
            detail::Stopwatch sw;
            report_ = generic_sweep(gsp4(), cfg_.primes);
            seconds_ = sw.seconds();
        }
        return *report_;
    }
    double seconds() const { return seconds_; }

private:
    Config cfg_;
    std::optional<SweepReport> report_;
    double seconds_ = 0;
};

inline CriterionResult kostant_oracle(const Config& cfg) {
    detail::Stopwatch sw;
    const auto d = gsp4();
    const Weight alpha = d.root(d.simple[0]), beta = d.root(d.simple[1]);
    KostantCounter borel(d, borel_roots(d));
    int cases = 0, bad = 0;
    std::string first;
    for (Int N = 0; N <= cfg.kostant_bound; ++N)
        for (Int M = 0; M <= cfg.kostant_bound; ++M) {
            ++cases;
            const Int brute = borel(N * alpha + M * beta);
            const Int closed = closed_form_C2(N, M);
            if (brute != closed && bad++ == 0)
                first = "N=" + std::to_string(N) + " M=" + std::to_string(M) + ": " + std::to_string(closed) +
                        " vs " + std::to_string(brute);
        }
    CriterionResult r{1, "closed-form C2 partition count equals brute-force Kostant count", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0 && r.seconds < Budget::kostant_seconds;
    r.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " cases agree" +
               (first.empty() ? "" : ", first mismatch " + first);
    return r;
}

inline CriterionResult top_multiplicity_is_one(SweepCache& cache) {
    const auto& rep = cache.get();
    int bad = 0;
    std::string first;
    for (const auto& c : rep.cells)
        if (c.n != 1 && bad++ == 0)
            first = "p=" + std::to_string(c.p) + " " + c.lambda0.str() + " n=" + std::to_string(c.n);
    CriterionResult r{2, "n = 1 in the Euler-characteristic equation on the generic sweep", false, {}, 0};
    r.seconds = cache.seconds();
    r.passed = bad == 0 && !rep.cells.empty() && r.seconds < Budget::sweep_seconds;
    r.detail = std::to_string(rep.cells.size() - bad) + "/" + std::to_string(rep.cells.size()) +
               " cells with n = 1, minimal epsilon " + std::to_string(rep.minimal_epsilon) +
               (first.empty() ? "" : ", first failure " + first);
    return r;
}

inline CriterionResult multiplicity_brackets(SweepCache& cache) {
    detail::Stopwatch sw;
    const auto& rep = cache.get();
    const std::array<Int, 4> expected{1, 1, 1, 0};
    int bad = 0;
    std::map<std::array<Int, 4>, int> observed;
    std::string first;
    for (const auto& c : rep.cells) {
        observed[c.differences]++;
        if (c.differences != expected && bad++ == 0)
            first = "p=" + std::to_string(c.p) + " " + c.lambda0.str() + " gives " + detail::tuple_str(c.differences);
    }
    CriterionResult r{3, "multiplicity differences equal (1,1,1,0) on the sweep", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0 && !rep.cells.empty();
    std::vector<std::string> seen;
    for (const auto& [v, k] : observed) seen.push_back(detail::tuple_str(v) + " x" + std::to_string(k));
    r.detail = std::to_string(rep.cells.size() - bad) + "/" + std::to_string(rep.cells.size()) +
               " cells match" + (first.empty() ? "" : ", first mismatch " + first) + "; observed " +
               detail::join(seen, ", ");
    return r;
}

inline CriterionResult floor_cases(SweepCache& cache, const Config& cfg) {
    detail::Stopwatch sw;
    const auto d = gsp4();
    const auto& rep = cache.get();
    int cells = 0, bad = 0;
    std::map<FloorBranch, int> branches;
    std::string first;
    auto record = [&](Int p, const Weight& l0) {
        auto fr = floor_case_analysis(d, p, l0);
        ++cells;
        branches[fr.branch]++;
        if (!fr.pass() && bad++ == 0) {
            for (const auto& row : fr.rows)
                if (!row.pass()) {
                    first = "p=" + std::to_string(p) + " " + l0.str() + " " + row.label + ": " +
                            std::to_string(row.expression) + " vs " + std::to_string(row.brute_force);
                    break;
                }
        }
    };
    int sweep_fail = 0;
    for (const auto& c : rep.cells)
        if (!c.floors) ++sweep_fail;
    for (Int p : cfg.primes)
        for (const auto& l0 : lowest_alcove_cells(d, p)) record(p, l0);
    for (Int q : cfg.boundary_moduli)
        for (const auto& l0 : lowest_alcove_cells(d, q))
            if (2 * l0[0] == q - 4) record(q, l0);
    CriterionResult r{4, "floor expressions (a)-(d) match brute-force weight-space differences", false, {}, 0};
    r.seconds = sw.seconds();
    const bool all_branches = branches[FloorBranch::Lower] > 0 && branches[FloorBranch::Upper] > 0 &&
                              branches[FloorBranch::Boundary] > 0;
    r.passed = bad == 0 && sweep_fail == 0 && all_branches;
    r.detail = std::to_string(cells - bad) + "/" + std::to_string(cells) + " cells pass; branches " +
               branch_name(FloorBranch::Lower) + "=" + std::to_string(branches[FloorBranch::Lower]) + " " +
               branch_name(FloorBranch::Upper) + "=" + std::to_string(branches[FloorBranch::Upper]) + " " +
               branch_name(FloorBranch::Boundary) + "=" + std::to_string(branches[FloorBranch::Boundary]) +
               (first.empty() ? "" : ", first failure " + first);
    return r;
}

/// char_of_K of the Verma-class expression of L(lambda_i) against the alternating Weyl computation.
inline bool character_identity(const GroupDatum& d, Int p, const OrbitFamily& f, const std::string& member,
                               Int margin, std::string* why = nullptr) {
    const Window win = Window::around(detail::family_weights(f), margin);
    const Weight& lam = f[member];
    const KElement k = simple_char_in_vermas(d, p, lam);
    const FormalCharacter lhs = char_of_K(d, p, k, win);
    const FormalCharacter rhs = simple_char_mod_p(d, p, lam);
    if (lhs.agrees_on(rhs, win) && rhs.restricted(win).agrees_on(lhs, win)) return true;
    if (why) *why = "p=" + std::to_string(p) + " " + member + "=" + lam.str() + ": " + k.str(d);
    return false;
}

inline CriterionResult character_identities(const Config& cfg) {
    detail::Stopwatch sw;
    std::vector<std::string> notes;
    int checks = 0, bad = 0;
    bool enough = true;
    std::string first;
    struct Case {
        GroupDatum d;
        std::vector<std::string> members;
    };
    std::vector<Case> cases{{gl3(), {"lambda0", "lambda1"}}, {gsp4(), {"lambda0", "lambda1", "lambda2"}}};
    for (const auto& [d, members] : cases)
        for (Int p : cfg.primes) {
            auto cells = lowest_alcove_cells(d, p);
            if (cells.size() < cfg.min_cells_per_group) enough = false;
            for (const auto& l0 : cells) {
                auto f = orbit_family(d, p, l0);
                for (const auto& m : members) {
                    ++checks;
                    std::string why;
                    if (!character_identity(d, p, f, m, cfg.window_margin, &why) && bad++ == 0) first = why;
                }
            }
            notes.push_back(d.name() + " p=" + std::to_string(p) + ": " + std::to_string(cells.size()) + " cells");
        }
    CriterionResult r{5, "Verma-class expressions reproduce char L(lambda_i) on the family window", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0 && enough;
    r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " identities hold (" +
               detail::join(notes) + ")" + (first.empty() ? "" : ", first failure " + first);
    return r;
}

inline std::string euler_mismatch(const GroupDatum& d, Int p, const FiltrationSpec& s, const Weight& target) {
    const KElement chi = canonicalize(d, p, euler_characteristic(s));
    const KElement expected = simple_char_in_vermas(d, p, target);
    if (chi != expected) return "chi " + chi.str(d) + " vs [L] " + expected.str(d);
    for (const auto& [name, c] : s.pieces) {
        auto v = validate_filtration(d, p, c);
        if (!v.clean()) return name + ": " + v.issues.front().message;
    }
    return {};
}

inline CriterionResult bgg_euler(const Config& cfg) {
    detail::Stopwatch sw;
    const auto g3 = gl3(), g4 = gsp4();
    int checks = 0, bad = 0, c2_cells = 0;
    std::string first;
    auto check = [&](const std::string& tag, Int p, const Weight& l0, const std::function<std::string()>& run) {
        ++checks;
        std::string m = run();
        if (!m.empty() && bad++ == 0) first = tag + " p=" + std::to_string(p) + " " + l0.str() + ": " + m;
    };
    for (Int p : cfg.primes) {
        for (const auto& l0 : lowest_alcove_cells(g3, p))
            check("GL3", p, l0, [&] {
                return euler_mismatch(g3, p, build_bgg_gl3(g3, p, l0), orbit_family(g3, p, l0)["lambda1"]);
            });
        for (const auto& l0 : lowest_alcove_cells(g4, p)) {
            const auto f = orbit_family(g4, p, l0);
            check("GSp4 C1", p, l0, [&] { return euler_mismatch(g4, p, build_bgg_gsp4_c1(g4, p, l0), f["lambda1"]); });
            if (named_alcove(g4, p, f["lambda2"]) == 2) {
                ++c2_cells;
                check("GSp4 C2", p, l0,
                      [&] { return euler_mismatch(g4, p, build_bgg_gsp4_c2(g4, p, l0), f["lambda2"]); });
            }
        }
    }
    CriterionResult r{6, "BGG filtrations: Euler characteristic equals [L], filtrations validate", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0 && c2_cells > 0;
    r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " complexes (" +
               std::to_string(c2_cells) + " for C2)" + (first.empty() ? "" : ", first failure " + first);
    return r;
}

/// gr^i of the family of lambda0 against the Serre dual of gr^{3-i} of the dual family, class by class.
inline std::string graded_pairing_mismatch(const GroupDatum& d, const Weight& twist, const FiltrationSpec& s,
                                           const FiltrationSpec& dual) {
    static const std::array<const char*, 4> names{"gr0", "gr1", "gr2", "F3"};
    for (int i = 0; i < 4; ++i) {
        const auto& a = s.piece(names[i]);
        const auto& b = dual.piece(names[3 - i]);
        for (int k = 0; k <= a.top_degree; ++k) {
            auto lhs = detail::sorted_classes(a.terms[k]);
            std::vector<VermaClass> rhs;
            for (const auto& c : b.terms[a.top_degree - k].classes()) rhs.push_back(dual_class(d, twist, c));
            std::sort(rhs.begin(), rhs.end());
            if (lhs != rhs) return std::string(names[i]) + " degree " + std::to_string(k);
        }
    }
    return {};
}

inline CriterionResult serre_duality(const Config& cfg) {
    detail::Stopwatch sw;
    const auto g3 = gl3(), g4 = gsp4();
    int checks = 0, bad = 0;
    std::set<Weight> twists3, twists4;
    std::string first;
    auto fail = [&](const std::string& m) {
        if (bad++ == 0) first = m;
    };
    auto involution = [&](const GroupDatum& d, const Weight& t, const OrbitFamily& f) {
        for (const auto& [n, w] : f.members)
            for (const auto& c : {ver_w(w), ver_l(w)})
                if (dual_class(d, t, dual_class(d, t, c)) != c) return false;
        return true;
    };
    for (Int p : cfg.primes) {
        for (const auto& l0 : lowest_alcove_cells(g3, p)) {
            ++checks;
            const Weight t = duality_twist(g3, p, l0);
            twists3.insert(t);
            const auto f = orbit_family(g3, p, l0), fd = orbit_family(g3, p, negate_w0(g3, l0));
            if (!involution(g3, t, f)) fail("GL3 involution at " + l0.str());
            if (dual_class(g3, t, ver_w(fd["lambda1"])) != ver_w(f["nu1"])) fail("GL3 exchange at " + l0.str());
        }
        for (const auto& l0 : lowest_alcove_cells(g4, p)) {
            ++checks;
            const Weight t = duality_twist(g4, p, l0);
            twists4.insert(t);
            const Weight l0d = negate_w0(g4, l0);
            const auto f = orbit_family(g4, p, l0);
            if (!involution(g4, t, f)) fail("GSp4 involution at " + l0.str());
            std::string m = graded_pairing_mismatch(g4, t, build_bgg_gsp4_c1(g4, p, l0), build_bgg_gsp4_c1(g4, p, l0d));
            if (!m.empty()) fail("GSp4 C1 pairing at " + l0.str() + ": " + m);
            if (named_alcove(g4, p, f["lambda2"]) == 2) {
                m = graded_pairing_mismatch(g4, t, build_bgg_gsp4_c2(g4, p, l0), build_bgg_gsp4_c2(g4, p, l0d));
                if (!m.empty()) fail("GSp4 C2 pairing at " + l0.str() + ": " + m);
            }
        }
    }
    if (twists3.size() != 1) fail("GL3 twist varies across the sweep");
    if (twists4.size() != 1) fail("GSp4 twist varies across the sweep");
    CriterionResult r{7, "Serre duality: involution, GL3 exchange, GSp4 graded pairing", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0;
    r.detail = std::to_string(checks) + " cells";
    if (twists3.size() == 1) r.detail += ", GL3 twist " + twists3.begin()->str();
    if (twists4.size() == 1) r.detail += ", GSp4 twist " + twists4.begin()->str();
    if (!first.empty()) r.detail += ", first failure " + first;
    return r;
}

/// Every consecutive pair is joined by a linkage chain that rises stepwise.
inline std::string chain_mismatch(const GroupDatum& d, Int p, const OrbitFamily& f, const std::vector<std::string>& names) {
    for (std::size_t i = 0; i + 1 < names.size(); ++i) {
        auto chain = linkage_up(d, p, f[names[i]], f[names[i + 1]]);
        if (!chain) return "no chain " + names[i] + " up " + names[i + 1];
        Weight cur = f[names[i]];
        for (const auto& st : *chain) {
            if (!leq_order(d, cur, st.to) || cur == st.to) return "non-rising step at " + cur.str();
            cur = st.to;
        }
        if (cur != f[names[i + 1]]) return "chain ends at " + cur.str();
    }
    return {};
}

inline CriterionResult linkage_chains(const Config& cfg) {
    detail::Stopwatch sw;
    const auto g3 = gl3(), g4 = gsp4();
    int checks = 0, bad = 0;
    std::string first;
    for (Int p : cfg.primes) {
        for (const auto& [d, names] : {std::pair{g3, std::vector<std::string>{"lambda0", "lambda1"}},
                                       std::pair{g4, std::vector<std::string>{"lambda0", "lambda1", "lambda2", "lambda3"}}})
            for (const auto& l0 : lowest_alcove_cells(d, p)) {
                ++checks;
                std::string m = chain_mismatch(d, p, orbit_family(d, p, l0), names);
                if (!m.empty() && bad++ == 0) first = d.name() + " p=" + std::to_string(p) + " " + l0.str() + ": " + m;
            }
    }
    CriterionResult r{8, "linkage chains lambda0 up lambda1 (up lambda2 up lambda3)", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0;
    r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " families linked" +
               (first.empty() ? "" : ", first failure " + first);
    return r;
}

inline CriterionResult amplitude_soundness(const Config& cfg) {
    detail::Stopwatch sw;
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    std::string first;
    for (int i = 0; i < cfg.soundness_cases; ++i) {
        auto c = amp::random_complex(rng);
        auto s = amp::check_soundness(c);
        if (!s.sound && bad++ == 0) first = "case " + std::to_string(i) + ": " + s.detail;
    }
    CriterionResult r{9, "amplitude engine soundness on random integer complexes", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = bad == 0 && r.seconds < Budget::soundness_seconds;
    r.detail = std::to_string(cfg.soundness_cases - bad) + "/" + std::to_string(cfg.soundness_cases) +
               " complexes sound" + (first.empty() ? "" : ", first failure " + first);
    return r;
}

inline CriterionResult scenario_replays() {
    detail::Stopwatch sw;
    std::vector<std::string> notes, fails;
    double slowest = 0;
    auto timed = [&](const std::function<void()>& f) {
        detail::Stopwatch t;
        f();
        slowest = std::max(slowest, t.seconds());
    };
    timed([&] {
        auto s = amp::load_scenario("gl3_concentration");
        auto v = amp::run_script(s);
        if (v.outcome != amp::Outcome::Pass) fails.push_back("gl3_concentration " + amp::outcome_name(v.outcome));
        if (v.supports["bgg"] != amp::Degrees{2}) fails.push_back("gl3 bgg support " + amp::show(v.supports["bgg"]));
        auto w = amp::run_script(s.without("inject_theta"));
        if (w.supports["bgg"] != amp::Degrees{1, 2})
            fails.push_back("gl3 without injectivity gives " + amp::show(w.supports["bgg"]));
        auto m = amp::check_minimality(s);
        if (!m.minimal()) fails.push_back("gl3_concentration fact base not minimal");
        notes.push_back("gl3 bgg " + amp::show(v.supports["bgg"]) + ", without injectivity " +
                        amp::show(w.supports["bgg"]) + ", " + std::to_string(m.deletions.size()) + " deletions fail");
    });
    timed([&] {
        auto s = amp::load_scenario("gsp4_entailment");
        auto v = amp::run_script(s);
        if (v.outcome != amp::Outcome::Pass) fails.push_back("gsp4_entailment " + amp::outcome_name(v.outcome));
        if (!v.nonzero["bgg"].count(3)) fails.push_back("gsp4 H^3(bgg) nonvanishing not derived");
        auto m = amp::check_minimality(s);
        if (!m.minimal()) fails.push_back("gsp4_entailment fact base not minimal");
        notes.push_back("gsp4 H^3 nonzero derived, " + std::to_string(m.deletions.size()) + " deletions fail");
    });
    timed([&] {
        auto s = amp::load_scenario("gsp4_c1");
        auto v = amp::run_script(s);
        if (v.outcome != amp::Outcome::ConditionalPass) fails.push_back("gsp4_c1 " + amp::outcome_name(v.outcome));
        auto m = amp::check_minimality(s);
        if (!m.minimal()) fails.push_back("gsp4_c1 fact base not minimal");
        notes.push_back("gsp4_c1 " + amp::outcome_name(v.outcome));
    });
    CriterionResult r{10, "scenario replays and fact-base minimality", false, {}, 0};
    r.seconds = sw.seconds();
    r.passed = fails.empty() && slowest < Budget::scenario_seconds;
    r.detail = detail::join(notes) + (fails.empty() ? "" : "; failures: " + detail::join(fails));
    return r;
}

inline std::vector<CriterionResult> run_all(const Config& cfg = {}) {
    SweepCache cache(cfg);
    return {kostant_oracle(cfg),       top_multiplicity_is_one(cache), multiplicity_brackets(cache),
            floor_cases(cache, cfg),   character_identities(cfg), bgg_euler(cfg),
            serre_duality(cfg),        linkage_chains(cfg),       amplitude_soundness(cfg),
            scenario_replays()};
}

inline std::string format_line(const CriterionResult& r) {
    std::ostringstream os;
    os << "[" << (r.passed ? "PASS" : "FAIL") << "] " << r.id << ". " << r.title << " -- " << r.detail;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << " (" << r.seconds << " s)";
    return os.str();
}

}  // namespace modbgg::verify
