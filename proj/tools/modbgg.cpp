#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "modbgg/alcove.hpp"
#include "modbgg/ampcalc.hpp"
#include "modbgg/bggkit.hpp"
#include "modbgg/charring.hpp"
#include "modbgg/euler_check.hpp"
#include "modbgg/groth.hpp"
#include "modbgg/rootdata.hpp"
#include "modbgg/scenarios.hpp"
#include "modbgg/serialize.hpp"
#include "modbgg/svg.hpp"
#include "modbgg/verify.hpp"

namespace {

using namespace modbgg;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr const char* kVersion = "1.0.0";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string group = "gsp4";
    Int p = 13;
    std::vector<Int> p_list{11, 13, 17};
    std::string lambda, lambda0, mu;
    std::string verma_class = "W";
    Int margin = 4;
    Int epsilon = 0;
    int alcove = 1;
    bool levi = false;
    bool all_generic = false;
    std::string format = "json";
    std::string output;
    std::string config;
    std::string script;
    std::string without;
    bool minimality = false;
};

bool is_prime(Int n) {
    if (n < 2) return false;
    for (Int q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

Int checked_prime(Int p) {
    if (p < 7 || !is_prime(p)) throw UsageError("p must be a prime >= 7, got " + std::to_string(p));
    return p;
}

/// Options set on the command line win; otherwise values come from the --config file.
class ConfigBinder {
public:
    void bind(const std::string& key, CLI::Option* opt, std::function<void(const json&)> set) {
        bindings_.push_back({key, opt, std::move(set)});
    }
    void apply(const std::string& path) {
        if (path.empty()) return;
        std::ifstream in(path);
        if (!in) throw UsageError("cannot read config file " + path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError("config file " + path + ": " + e.what());
        }
        if (!j.is_object()) throw UsageError("config file must hold a JSON object");
        for (const auto& [key, value] : j.items()) {
            bool known = false, given = false;
            for (auto& b : bindings_)
                if (b.key == key) {
                    known = true;
                    given = given || b.opt->count() > 0;
                }
            if (!known) throw UsageError("unknown config key '" + key + "'");
            if (given) continue;
            for (auto& b : bindings_)
                if (b.key == key) {
                    try {
                        b.set(value);
                    } catch (const json::exception& e) {
                        throw UsageError("config key '" + key + "': " + e.what());
                    }
                }
        }
    }

private:
    struct Binding {
        std::string key;
        CLI::Option* opt;
        std::function<void(const json&)> set;
    };
    std::vector<Binding> bindings_;
};

std::string weight_str(const json& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + w[i].dump();
    return s + ")";
}

void print_text(std::ostream& os, const json& j, const std::string& indent = "") {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) {
            if (v.is_structured() && !(v.is_array() && !v.empty() && v[0].is_number())) {
                os << indent << k << ":\n";
                print_text(os, v, indent + "  ");
            } else {
                os << indent << k << ": " << (v.is_array() ? weight_str(v) : v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) {
            if (v.is_structured() && !(v.is_array() && !v.empty() && v[0].is_number())) {
                os << indent << "-\n";
                print_text(os, v, indent + "  ");
            } else {
                os << indent << "- " << (v.is_array() ? weight_str(v) : v.is_string() ? v.get<std::string>() : v.dump())
                   << "\n";
            }
        }
    } else {
        os << indent << j.dump() << "\n";
    }
}

class Emitter {
public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {}

    void result(const std::string& command, const json& payload) const {
        std::ostringstream os;
        if (cfg_.format == "json") {
            json env{{"meta", {{"tool", "modbgg"}, {"version", kVersion}, {"command", command}}}, {"result", payload}};
            os << env.dump(2) << "\n";
        } else {
            print_text(os, payload);
        }
        write(os.str());
    }
    void raw(const std::string& text) const { write(text); }

private:
    void write(const std::string& text) const {
        if (cfg_.output.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(cfg_.output);
        if (!out) throw UsageError("cannot write " + cfg_.output);
        out << text;
    }
    const RunConfig& cfg_;
};

Weight require_weight(const GroupDatum& d, const std::string& text, const char* flag) {
    if (text.empty()) throw UsageError(std::string("missing ") + flag);
    return io::parse_weight(d, text);
}

// ---- subcommand bodies ----

int cmd_alcove_classify(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    auto sig = classify(d, p, lam);
    json q = json::array(), walls = json::array();
    for (int i = 0; i < d.num_roots(); ++i) {
        q.push_back({{"root", io::to_json(d.root(i))}, {"floor", sig.quotient[i]}});
        if (sig.on_wall[i]) walls.push_back(io::to_json(d.root(i)));
    }
    auto named = named_alcove(d, p, lam);
    json r{{"group", io::datum_json(d)},
           {"p", p},
           {"lambda", io::to_json(lam)},
           {"quotients", q},
           {"walls", walls},
           {"lowest_alcove", sig.lowest()},
           {"named_alcove", named ? json("C" + std::to_string(*named)) : json(nullptr)},
           {"dominant", is_dominant(d, lam)},
           {"p_restricted", is_p_restricted(d, p, lam)},
           {"p_small", is_p_small(d, p, lam)},
           {"epsilon", c.epsilon},
           {"epsilon_generic", is_epsilon_generic(d, p, c.epsilon, lam)},
           {"genericity_level", genericity_level(d, p, lam)}};
    out.result("alcove classify", r);
    return kPass;
}

int cmd_orbit(const RunConfig& c, const Emitter& out, const std::string& name) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight l0 = require_weight(d, c.lambda0, "--lambda0");
    auto f = orbit_family(d, p, l0);
    json alcoves = json::object();
    for (const auto& [n, w] : f.members) {
        auto a = named_alcove(d, p, w);
        alcoves[n] = a ? json("C" + std::to_string(*a)) : json(nullptr);
    }
    out.result(name, {{"group", io::datum_json(d)},
                      {"p", p},
                      {"lambda0", io::to_json(l0)},
                      {"family", io::to_json(f)},
                      {"alcoves", alcoves}});
    return kPass;
}

Window window_for(const RunConfig& c, const std::vector<Weight>& ws) {
    if (c.margin < 0) throw UsageError("--margin must be non-negative");
    return Window::around(ws, c.margin);
}

int cmd_char_weyl(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    auto ch = weyl_character(d, lam, c.levi);
    out.result("char weyl", {{"group", io::datum_json(d)},
                             {"lambda", io::to_json(lam)},
                             {"levi", c.levi},
                             {"dimension", weyl_dimension(d, lam, c.levi)},
                             {"character", io::to_json(ch)}});
    return kPass;
}

VermaClass parse_class(const RunConfig& c, const Weight& w) {
    if (c.verma_class == "W") return ver_w(w);
    if (c.verma_class == "L" || c.verma_class == "L_M") return ver_l(w);
    throw UsageError("--class must be W or L");
}

int cmd_char_verma(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    const VermaClass cls = parse_class(c, lam);
    const Window win = window_for(c, {lam});
    auto ch = verma_character(d, p, cls, win);
    out.result("char verma", {{"group", io::datum_json(d)}, {"p", p}, {"class", io::to_json(cls)}, {"character", io::to_json(ch)}});
    return kPass;
}

int cmd_char_mult(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    const Weight mu = require_weight(d, c.mu, "--mu");
    KostantCounter borel(d, borel_roots(d));
    const Int verma = leq_order(d, mu, lam) ? borel(lam - mu) : 0;
    auto weyl = weyl_character(d, lam);
    out.result("char mult", {{"group", io::datum_json(d)},
                             {"lambda", io::to_json(lam)},
                             {"mu", io::to_json(mu)},
                             {"borel_verma_multiplicity", verma},
                             {"weyl_multiplicity", weyl.at(mu)}});
    return kPass;
}

int cmd_char_simple(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    auto k = simple_char_in_vermas(d, p, lam);
    auto ch = simple_char_mod_p(d, p, lam);
    out.result("char simple", {{"group", io::datum_json(d)},
                               {"p", p},
                               {"lambda", io::to_json(lam)},
                               {"verma_classes", io::to_json(k)},
                               {"expression", k.str(d)},
                               {"dimension", ch.dimension()},
                               {"character", io::to_json(ch)}});
    return kPass;
}

int cmd_decompose(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight lam = require_weight(d, c.lambda, "--lambda");
    json factors = json::array(), basis = json::array();
    for (const auto& [w, m] : decompose_weyl_mod_p(d, p, lam)) factors.push_back({{"simple", io::to_json(w)}, {"mult", m}});
    for (const auto& [w, m] : simple_in_weyl_basis(d, p, lam)) basis.push_back({{"weyl", io::to_json(w)}, {"coeff", m}});
    out.result("decompose", {{"group", io::datum_json(d)},
                             {"p", p},
                             {"lambda", io::to_json(lam)},
                             {"composition_factors", factors},
                             {"simple_in_weyl_basis", basis}});
    return kPass;
}

FiltrationSpec build_spec(const GroupDatum& d, Int p, const Weight& l0, int alcove) {
    if (is_gl3(d)) {
        if (alcove != 1) throw UsageError("GL3 has only the alcove C1 construction");
        return build_bgg_gl3(d, p, l0);
    }
    if (alcove == 1) return build_bgg_gsp4_c1(d, p, l0);
    if (alcove == 2) return build_bgg_gsp4_c2(d, p, l0);
    throw UsageError("--alcove must be 1 or 2");
}

const char* resolved_member(const GroupDatum& d, int alcove) {
    return is_gl3(d) || alcove == 1 ? "lambda1" : "lambda2";
}

int cmd_bgg_build(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight l0 = require_weight(d, c.lambda0, "--lambda0");
    auto spec = build_spec(d, p, l0, c.alcove);
    const Weight target = orbit_family(d, p, l0)[resolved_member(d, c.alcove)];
    auto chi = canonicalize(d, p, euler_characteristic(spec));
    json validation = json::object();
    bool clean = true;
    for (const auto& [n, piece] : spec.pieces) {
        auto v = validate_filtration(d, p, piece);
        clean = clean && v.clean();
        validation[n] = io::to_json(v);
    }
    const bool euler_ok = chi == simple_char_in_vermas(d, p, target);
    out.result("bgg build", {{"p", p},
                             {"lambda0", io::to_json(l0)},
                             {"resolves", io::to_json(target)},
                             {"filtration", io::to_json(spec)},
                             {"euler_characteristic", io::to_json(chi)},
                             {"euler_matches_simple", euler_ok},
                             {"validation", validation}});
    return euler_ok && clean ? kPass : kFail;
}

int cmd_bgg_verify(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    json cells = json::array();
    int bad = 0;
    for (Int p : c.p_list) {
        checked_prime(p);
        for (const auto& l0 : lowest_alcove_cells(d, p)) {
            const auto f = orbit_family(d, p, l0);
            std::vector<int> alcoves{1};
            if (is_gsp4(d) && named_alcove(d, p, f["lambda2"]) == 2) alcoves.push_back(2);
            for (int a : alcoves) {
                std::string m = verify::euler_mismatch(d, p, build_spec(d, p, l0, a), f[resolved_member(d, a)]);
                if (!m.empty()) ++bad;
                cells.push_back({{"p", p}, {"lambda0", io::to_json(l0)}, {"alcove", a}, {"ok", m.empty()}, {"issue", m}});
            }
        }
    }
    out.result("bgg verify", {{"group", io::datum_json(d)}, {"failures", bad}, {"cells", cells}});
    return bad == 0 ? kPass : kFail;
}

int cmd_dual(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight l0 = require_weight(d, c.lambda0, "--lambda0");
    const Weight twist = duality_twist(d, p, l0);
    const Weight l0d = negate_w0(d, l0);
    auto f = orbit_family(d, p, l0), fd = orbit_family(d, p, l0d);
    json pairs = json::object();
    for (const auto& [n, w] : fd.members) {
        const Weight img = dual_class(d, twist, ver_w(w)).weight;
        const std::string hit = f.name_of(img);
        pairs[n] = {{"dual_weight", io::to_json(img)}, {"family_member", hit.empty() ? json(nullptr) : json(hit)}};
    }
    const std::string exchange_target = is_gl3(d) ? "nu1" : "epsilon1";
    out.result("dual", {{"group", io::datum_json(d)},
                        {"p", p},
                        {"lambda0", io::to_json(l0)},
                        {"twist", io::to_json(twist)},
                        {"dual_lambda0", io::to_json(l0d)},
                        {"exchange", "W(lambda1^vee) -> W(" + exchange_target + ")"},
                        {"images_of_dual_family", pairs}});
    return kPass;
}

json multiplicity_cell(const GroupDatum& d, Int p, const Weight& l0) {
    auto led = build_ledger(d, p, l0);
    const Int n = big_computation_n(d, p, l0, &led);
    const auto diffs = multiplicity_differences(d, p, l0, &led);
    const auto floors = floor_case_analysis(d, p, l0);
    return {{"p", p},
            {"lambda0", io::to_json(l0)},
            {"n", n},
            {"differences", diffs},
            {"bracket_identity", bracket_identity_holds(d, led)},
            {"floors", io::to_json(floors)},
            {"genericity_level", genericity_level(d, p, l0)}};
}

int cmd_verify_multiplicities(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    if (!is_gsp4(d)) throw UsageError("verify lemma39 is defined for --group gsp4");
    if (c.lambda0.empty() && !c.all_generic) throw UsageError("verify lemma39 needs --lambda0 a,b or --all-generic");
    if (!c.lambda0.empty() && c.all_generic) throw UsageError("--lambda0 and --all-generic are exclusive");
    json cells = json::array();
    int bad_n = 0, bad_diff = 0, bad_floor = 0;
    const std::array<Int, 4> expected{1, 1, 1, 0};
    auto run = [&](Int p, const Weight& l0) {
        json cell = multiplicity_cell(d, p, l0);
        if (cell["n"] != 1) ++bad_n;
        if (cell["differences"].get<std::array<Int, 4>>() != expected) ++bad_diff;
        if (!cell["floors"]["pass"].get<bool>()) ++bad_floor;
        cells.push_back(cell);
    };
    if (c.all_generic) {
        for (Int p : c.p_list)
            for (const auto& l0 : lowest_alcove_cells(d, checked_prime(p))) run(p, l0);
    } else {
        const Weight l0 = require_weight(d, c.lambda0, "--lambda0");
        for (Int p : c.p_list) run(checked_prime(p), l0);
    }
    out.result("verify lemma39", {{"cells", cells},
                                  {"summary",
                                   {{"cells", cells.size()},
                                    {"n_not_one", bad_n},
                                    {"differences_not_1110", bad_diff},
                                    {"floor_failures", bad_floor}}}});
    return bad_n + bad_diff + bad_floor == 0 ? kPass : kFail;
}

int cmd_verify_all(const RunConfig& c, const Emitter& out) {
    verify::Config vc;
    if (!c.p_list.empty()) vc.primes = c.p_list;
    auto results = verify::run_all(vc);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.passed;
    if (c.format == "json") {
        json rows = json::array();
        for (const auto& r : results) rows.push_back(io::to_json(r));
        out.result("verify all", {{"criteria", rows}, {"all_passed", ok}});
    } else {
        std::string text;
        for (const auto& r : results) text += verify::format_line(r) + "\n";
        out.raw(text);
    }
    return ok ? kPass : kFail;
}

int cmd_amplitude_run(const RunConfig& c, const Emitter& out) {
    if (c.script.empty()) throw UsageError("amplitude run needs a script name or path");
    amp::Script s = amp::load_script(c.script);
    if (!c.without.empty()) s = s.without(c.without);
    auto v = amp::run_script(s);
    json r = io::to_json(v);
    r["script"] = s.name;
    if (c.minimality) {
        auto m = amp::check_minimality(s);
        json dels = json::array();
        for (const auto& [id, why] : m.deletions)
            dels.push_back({{"fact", id}, {"breaks", why.has_value()}, {"failure", why ? json(*why) : json(nullptr)}});
        r["minimality"] = {{"minimal", m.minimal()}, {"deletions", dels}};
    }
    if (c.format == "json") {
        out.result("amplitude run", r);
    } else {
        std::ostringstream os;
        os << "scenario " << s.name << ": " << amp::outcome_name(v.outcome) << "\n";
        for (const auto& line : v.trace) os << "  " << line << "\n";
        if (v.first_failure) os << "first failure: " << *v.first_failure << "\n";
        if (!v.hypotheses.empty()) {
            os << "hypotheses:";
            for (const auto& h : v.hypotheses) os << " " << h;
            os << "\n";
        }
        out.raw(os.str());
    }
    return v.passed() ? kPass : kFail;
}

int cmd_amplitude_list(const Emitter& out) {
    out.result("amplitude list", {{"scenarios", amp::scenario_names()}});
    return kPass;
}

int cmd_diagram(const RunConfig& c, const Emitter& out) {
    auto d = io::parse_group(c.group);
    const Int p = checked_prime(c.p);
    const Weight l0 = require_weight(d, c.lambda0, "--lambda0");
    out.raw(svg::alcove_diagram(d, p, l0));
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    ConfigBinder binder;
    CLI::App app{"Modular BGG complexes, alcove combinatorics and amplitude bookkeeping"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    auto* fmt = app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    auto* outp = app.add_option("--output,-o", cfg.output, "Write output to this file");
    app.add_option("--config", cfg.config, "JSON config file with RunConfig fields");
    binder.bind("format", fmt, [&](const json& j) {
        cfg.format = j.get<std::string>();
        if (cfg.format != "json" && cfg.format != "text") throw UsageError("config format must be json or text");
    });
    binder.bind("output", outp, [&](const json& j) { cfg.output = j.get<std::string>(); });

    // Shared option helpers; each subcommand gets its own Option objects bound to the same fields.
    auto add_group = [&](CLI::App* sc) {
        binder.bind("group", sc->add_option("--group,-g", cfg.group, "gl3 or gsp4"), [&](const json& j) {
            cfg.group = j.get<std::string>();
        });
    };
    auto add_p = [&](CLI::App* sc) {
        binder.bind("p", sc->add_option("--p,-p", cfg.p, "Prime p >= 7"), [&](const json& j) { cfg.p = j.get<Int>(); });
    };
    auto add_plist = [&](CLI::App* sc) {
        auto* o = sc->add_option("--p-list", cfg.p_list, "Primes, comma separated")->delimiter(',');
        auto* single = sc->add_option_function<Int>("--p", [&](const Int& p) { cfg.p_list = {p}; }, "Single prime");
        binder.bind("p_list", o, [&](const json& j) { cfg.p_list = j.get<std::vector<Int>>(); });
        binder.bind("p", single, [&](const json& j) { cfg.p_list = {j.get<Int>()}; });
    };
    auto add_lambda = [&](CLI::App* sc) {
        binder.bind("lambda", sc->add_option("--lambda,-l", cfg.lambda, "Weight a,b[,c]"),
                    [&](const json& j) { cfg.lambda = j.get<std::string>(); });
    };
    auto add_lambda0 = [&](CLI::App* sc) {
        binder.bind("lambda0", sc->add_option("--lambda0", cfg.lambda0, "Lowest-alcove weight a,b[,c]"),
                    [&](const json& j) { cfg.lambda0 = j.get<std::string>(); });
    };
    auto add_margin = [&](CLI::App* sc) {
        binder.bind("window", sc->add_option("--margin,--window", cfg.margin, "Window half-width around the weights"),
                    [&](const json& j) { cfg.margin = j.get<Int>(); });
    };

    std::vector<std::pair<CLI::App*, std::function<int(const Emitter&)>>> handlers;
    auto on = [&](CLI::App* sc, std::function<int(const Emitter&)> f) { handlers.emplace_back(sc, std::move(f)); };

    auto* alcove = app.add_subcommand("alcove", "Alcove classification and orbit families");
    alcove->require_subcommand(1);
    auto* classify_cmd = alcove->add_subcommand("classify", "Classify a weight against the p-alcove walls");
    add_group(classify_cmd);
    add_p(classify_cmd);
    add_lambda(classify_cmd);
    binder.bind("epsilon", classify_cmd->add_option("--epsilon", cfg.epsilon, "Genericity margin"),
                [&](const json& j) { cfg.epsilon = j.get<Int>(); });
    on(classify_cmd, [&](const Emitter& e) { return cmd_alcove_classify(cfg, e); });
    auto* alcove_orbit = alcove->add_subcommand("orbit", "Orbit family of a lowest-alcove weight");
    add_group(alcove_orbit);
    add_p(alcove_orbit);
    add_lambda0(alcove_orbit);
    on(alcove_orbit, [&](const Emitter& e) { return cmd_orbit(cfg, e, "alcove orbit"); });

    auto* orbit = app.add_subcommand("orbit", "Orbit family of a lowest-alcove weight");
    add_group(orbit);
    add_p(orbit);
    add_lambda0(orbit);
    on(orbit, [&](const Emitter& e) { return cmd_orbit(cfg, e, "orbit"); });

    auto* chr = app.add_subcommand("char", "Characters");
    chr->require_subcommand(1);
    auto* weyl = chr->add_subcommand("weyl", "Characteristic-zero Weyl character");
    add_group(weyl);
    add_lambda(weyl);
    weyl->add_flag("--levi", cfg.levi, "Use the Levi subgroup");
    on(weyl, [&](const Emitter& e) { return cmd_char_weyl(cfg, e); });
    auto* verma = chr->add_subcommand("verma", "Parabolic Verma character on a window");
    add_group(verma);
    add_p(verma);
    add_lambda(verma);
    add_margin(verma);
    verma->add_option("--class", cfg.verma_class, "W (dual Weyl Levi module) or L (simple Levi module)");
    on(verma, [&](const Emitter& e) { return cmd_char_verma(cfg, e); });
    auto* mult = chr->add_subcommand("mult", "Weight multiplicity of mu in the Borel Verma and Weyl modules of lambda");
    add_group(mult);
    add_lambda(mult);
    mult->add_option("--mu", cfg.mu, "Weight a,b[,c]");
    on(mult, [&](const Emitter& e) { return cmd_char_mult(cfg, e); });
    auto* simple = chr->add_subcommand("simple", "Simple module in Verma classes and as a character");
    add_group(simple);
    add_p(simple);
    add_lambda(simple);
    on(simple, [&](const Emitter& e) { return cmd_char_simple(cfg, e); });

    auto* decompose = app.add_subcommand("decompose", "Composition factors of a dual Weyl module mod p");
    add_group(decompose);
    add_p(decompose);
    add_lambda(decompose);
    on(decompose, [&](const Emitter& e) { return cmd_decompose(cfg, e); });

    auto* bgg = app.add_subcommand("bgg", "Filtered BGG complexes");
    bgg->require_subcommand(1);
    auto* build = bgg->add_subcommand("build", "Build the filtered complex resolving L(lambda1) or L(lambda2)");
    add_group(build);
    add_p(build);
    add_lambda0(build);
    binder.bind("alcove", build->add_option("--alcove", cfg.alcove, "1 for L(lambda1), 2 for L(lambda2) (GSp4)"),
                [&](const json& j) { cfg.alcove = j.get<int>(); });
    on(build, [&](const Emitter& e) { return cmd_bgg_build(cfg, e); });
    auto* bverify = bgg->add_subcommand("verify", "Euler characteristic and validation over all lowest-alcove cells");
    add_group(bverify);
    add_plist(bverify);
    on(bverify, [&](const Emitter& e) { return cmd_bgg_verify(cfg, e); });

    auto* dual = app.add_subcommand("dual", "Serre duality twist and exchange of orbit families");
    add_group(dual);
    add_p(dual);
    add_lambda0(dual);
    on(dual, [&](const Emitter& e) { return cmd_dual(cfg, e); });

    auto* ver = app.add_subcommand("verify", "Verification battery");
    ver->require_subcommand(1);
    auto* vall = ver->add_subcommand("all", "Run every acceptance check");
    binder.bind("p_list", vall->add_option("--p-list", cfg.p_list, "Primes for the sweeps")->delimiter(','),
                [&](const json& j) { cfg.p_list = j.get<std::vector<Int>>(); });
    on(vall, [&](const Emitter& e) { return cmd_verify_all(cfg, e); });
    auto* multcheck = ver->add_subcommand("lemma39", "Euler-characteristic multiplicity lemma on cells");
    add_group(multcheck);
    add_plist(multcheck);
    add_lambda0(multcheck);
    binder.bind("all_generic", multcheck->add_flag("--all-generic", cfg.all_generic, "Sweep every lowest-alcove cell"),
                [&](const json& j) { cfg.all_generic = j.get<bool>(); });
    on(multcheck, [&](const Emitter& e) { return cmd_verify_multiplicities(cfg, e); });

    auto* ampl = app.add_subcommand("amplitude", "Cohomological amplitude engine");
    ampl->require_subcommand(1);
    auto* arun = ampl->add_subcommand("run", "Run a scenario script");
    arun->add_option("script", cfg.script, "Shipped scenario name or path to a JSON script")->required();
    arun->add_option("--without", cfg.without, "Delete one fact by id before running");
    arun->add_flag("--minimality", cfg.minimality, "Also delete each non-structural fact in turn");
    on(arun, [&](const Emitter& e) { return cmd_amplitude_run(cfg, e); });
    auto* alist = ampl->add_subcommand("list", "List shipped scenarios");
    on(alist, [&](const Emitter& e) { return cmd_amplitude_list(e); });

    auto* diagram = app.add_subcommand("diagram", "SVG alcove diagram with the orbit family labeled");
    add_group(diagram);
    add_p(diagram);
    add_lambda0(diagram);
    on(diagram, [&](const Emitter& e) { return cmd_diagram(cfg, e); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        binder.apply(cfg.config);
        Emitter emitter(cfg);
        for (const auto& [sc, f] : handlers)
            if (sc->parsed()) return f(emitter);
        throw UsageError("no command selected");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
