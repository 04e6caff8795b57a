#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "charring.hpp"
#include "groth.hpp"
#include "rootdata.hpp"

namespace modbgg {

/// Levi multiplicities of the k-th exterior power of g/p tensored with L(lambda2), k = 0..3.
struct MultiplicityLedger {
    Int p = 0;
    Weight lambda0;
    OrbitFamily family;
    FormalCharacter simple_top;                       // char L(lambda2)
    std::vector<FormalCharacter> twisted;             // k -> char of wedge^k (g/p) (x) L(lambda2)
    std::vector<std::map<Weight, Int>> levi_factors;  // k -> Levi JH decomposition

    LeviMultiplicity bracket(const GroupDatum& d, int k, const Weight& mu) const {
        const int a = levi_root(d);
        LeviMultiplicity r;
        auto it = levi_factors.at(k).find(mu);
        r.simple = it == levi_factors[k].end() ? 0 : it->second;
        r.weyl_coefficient = twisted[k].at(mu) - twisted[k].at(mu + d.root(a));
        r.weyl = pair_index(d, mu, a) < p ? r.simple : r.weyl_coefficient;
        return r;
    }
    Int weyl_mult(const GroupDatum& d, int k, const std::string& name) const {
        return bracket(d, k, family[name]).weyl;
    }
    Int simple_mult(const GroupDatum& d, int k, const std::string& name) const {
        return bracket(d, k, family[name]).simple;
    }
};

namespace detail {

inline void require_gsp4(const GroupDatum& d) {
    if (!is_gsp4(d)) throw std::invalid_argument("multiplicity checks are defined for GSp4 only");
}

inline OrbitFamily generic_family(const GroupDatum& d, Int p, const Weight& lambda0) {
    if (!in_lowest_alcove(d, p, lambda0))
        throw std::invalid_argument("lambda0 " + lambda0.str() + " is not in the open lowest alcove");
    return orbit_family(d, p, lambda0);
}

}  // namespace detail

inline MultiplicityLedger build_ledger(const GroupDatum& d, Int p, const Weight& lambda0) {
    detail::require_gsp4(d);
    MultiplicityLedger led;
    led.p = p;
    led.lambda0 = lambda0;
    led.family = detail::generic_family(d, p, lambda0);
    led.simple_top = simple_char_mod_p(d, p, led.family["lambda2"]);
    for (int k = 0; k <= static_cast<int>(d.unipotent.size()); ++k) {
        led.twisted.push_back(exterior_power_character(d, k) * led.simple_top);
        led.levi_factors.push_back(levi_jh_decomposition(d, p, led.twisted.back()));
    }
    return led;
}

/// Weight multiplicity of mu in Ver_P W(lambda).
inline Int parabolic_weight_mult(const GroupDatum& d, Int p, const Weight& lambda, const Weight& mu) {
    return verma_character(d, p, ver_w(lambda), Window{mu, mu}).at(mu);
}

/// Solves the Euler-characteristic equation for the multiplicity n of Ver W(lambda0) in the top
/// term of F3, reading every bracket off the Levi decomposition.
inline Int big_computation_n(const GroupDatum& d, Int p, const Weight& lambda0, const MultiplicityLedger* cached = nullptr) {
    MultiplicityLedger local;
    if (!cached) local = build_ledger(d, p, lambda0);
    const MultiplicityLedger& led = cached ? *cached : local;
    const auto& f = led.family;
    auto w = [&](const char* name) { return parabolic_weight_mult(d, p, f[name], lambda0); };
    const Int w0 = w("lambda0"), w1 = w("lambda1"), w2 = w("lambda2");
    Int rhs = led.weyl_mult(d, 0, "lambda0") * w0 + led.weyl_mult(d, 0, "lambda1") * w1 +
              led.weyl_mult(d, 0, "lambda2") * w2;
    rhs += (-led.weyl_mult(d, 1, "lambda1") + led.weyl_mult(d, 2, "lambda1") - led.weyl_mult(d, 3, "lambda1")) * w1;
    return rhs - w2 + w1;
}

/// The four differences: wedge2 - wedge3 at W(mu0) and L_M(mu1), then g/p - trivial at W(mu0) and L_M(mu1).
inline std::array<Int, 4> multiplicity_differences(const GroupDatum& d, Int p, const Weight& lambda0,
                                                   const MultiplicityLedger* cached = nullptr) {
    MultiplicityLedger local;
    if (!cached) local = build_ledger(d, p, lambda0);
    const MultiplicityLedger& led = cached ? *cached : local;
    return {led.weyl_mult(d, 2, "mu0") - led.weyl_mult(d, 3, "mu0"),
            led.simple_mult(d, 2, "mu1") - led.simple_mult(d, 3, "mu1"),
            led.weyl_mult(d, 1, "mu0") - led.weyl_mult(d, 0, "mu0"),
            led.simple_mult(d, 1, "mu1") - led.simple_mult(d, 0, "mu1")};
}

/// Checks [V:W(mu)] - [V:L_M(s.mu)] = w_mu V - w_{mu+alpha} V for every family weight below the
/// Levi wall, with s the reflection across <x+rho, alpha^vee> = p.
inline bool bracket_identity_holds(const GroupDatum& d, const MultiplicityLedger& led) {
    const int a = levi_root(d);
    for (std::size_t k = 0; k < led.twisted.size(); ++k)
        for (const auto& [name, mu] : led.family.members) {
            const Int m = pair_index(d, mu, a);
            if (m < 0 || m >= led.p) continue;
            Weight tilde = affine_reflect(d, led.p, AffineReflection{a, 1}, mu);
            auto jh = [&](const Weight& x) {
                auto it = led.levi_factors[k].find(x);
                return it == led.levi_factors[k].end() ? Int{0} : it->second;
            };
            if (jh(mu) - jh(tilde) != led.twisted[k].at(mu) - led.twisted[k].at(mu + d.root(a))) return false;
        }
    return true;
}

enum class FloorBranch { Lower, Upper, Boundary };  // 2a < p-4, 2a > p-4, 2a = p-4

inline std::string branch_name(FloorBranch b) {
    switch (b) {
        case FloorBranch::Lower: return "C0'";
        case FloorBranch::Upper: return "C0''";
        case FloorBranch::Boundary: return "boundary";
    }
    return "?";
}

struct FloorRow {
    std::string label;
    Int expression = 0;   // closed form
    Int brute_force = 0;  // Borel weight-space difference
    bool pass() const { return expression == brute_force; }
};

struct FloorReport {
    Int p = 0;
    Weight lambda0;
    FloorBranch branch = FloorBranch::Lower;
    std::vector<FloorRow> rows;
    bool pass() const {
        for (const auto& r : rows)
            if (!r.pass()) return false;
        return true;
    }
};

/// Cases (a)-(d) of the Borel weight-space computation, against brute-force Kostant counts.
/// p need not be prime here, so the even-p boundary 2a = p-4 is reachable.
inline FloorReport floor_case_analysis(const GroupDatum& d, Int p, const Weight& lambda0) {
    detail::require_gsp4(d);
    const auto f = detail::generic_family(d, p, lambda0);
    const Int a = lambda0[0], b = lambda0[1];
    const Weight alpha = d.root(d.simple[0]);
    KostantCounter borel(d, borel_roots(d));
    auto w = [&](const Weight& mu, const Weight& lam) { return leq_order(d, mu, lam) ? borel(lam - mu) : 0; };
    auto diff = [&](const Weight& lam) { return w(lambda0, lam) - w(lambda0 + alpha, lam); };
    auto s_alpha = [&](const Weight& x) { return affine_reflect(d, p, AffineReflection{d.simple[0], 0}, x); };

    FloorReport rep;
    rep.p = p;
    rep.lambda0 = lambda0;
    const Int N = p - 2 * a - 4;
    rep.branch = N > 0 ? FloorBranch::Lower : N < 0 ? FloorBranch::Upper : FloorBranch::Boundary;
    const Int reflected = N > 0 ? floor_div(N, 2) + 1 : N < 0 ? 0 : 1;

    const Weight l1 = f["lambda1"], l2 = f["lambda2"];
    const Weight l1p = s_alpha(l1), l2p = s_alpha(l2);
    const Int case_a = floor_div(p + b - a - 1, 2) - b;
    const Int case_b = floor_div(p - a - b - 3, 2) + 1;
    rep.rows.push_back({"(a) lambda2", case_a, diff(l2)});
    rep.rows.push_back({"(b) lambda1", case_b, diff(l1)});
    rep.rows.push_back({"(c) s_alpha.lambda1 [" + branch_name(rep.branch) + "]", reflected, diff(l1p)});
    rep.rows.push_back({"(d) s_alpha.lambda2 [" + branch_name(rep.branch) + "]", reflected, diff(l2p)});
    rep.rows.push_back({"(d) reflected differences agree", diff(l1p), diff(l2p)});

    FormalCharacter top = simple_char_mod_p(d, p, l2);
    const Int simple_diff = top.at(lambda0) - top.at(lambda0 + alpha);
    rep.rows.push_back({"L(lambda2) weight-space difference", floor_div(p + b - a - 1, 2) - b - floor_div(p - a - b - 3, 2),
                        simple_diff});
    rep.rows.push_back({"L(lambda2) difference equals 1", 1, simple_diff});
    return rep;
}

struct SweepCell {
    Int p = 0;
    Weight lambda0;
    Int n = 0;
    std::array<Int, 4> differences{};
    bool bracket_identity = false;
    bool floors = false;
    int genericity = -1;  // largest eps with lambda0 eps-generic, -1 if none
};

struct SweepReport {
    std::vector<SweepCell> cells;
    int minimal_epsilon = 0;  // smallest eps such that all eps-generic cells satisfy n = 1
};

inline int genericity_level(const GroupDatum& d, Int p, const Weight& lambda) {
    int e = -1;
    while (e + 1 < p && is_epsilon_generic(d, p, e + 1, lambda)) ++e;
    return e;
}

inline SweepReport generic_sweep(const GroupDatum& d, const std::vector<Int>& primes) {
    SweepReport rep;
    for (Int p : primes)
        for (const auto& l0 : lowest_alcove_cells(d, p)) {
            auto led = build_ledger(d, p, l0);
            SweepCell c;
            c.p = p;
            c.lambda0 = l0;
            c.n = big_computation_n(d, p, l0, &led);
            c.differences = multiplicity_differences(d, p, l0, &led);
            c.bracket_identity = bracket_identity_holds(d, led);
            c.floors = floor_case_analysis(d, p, l0).pass();
            c.genericity = genericity_level(d, p, l0);
            if (c.n != 1) rep.minimal_epsilon = std::max(rep.minimal_epsilon, c.genericity + 1);
            rep.cells.push_back(c);
        }
    return rep;
}

}  // namespace modbgg
