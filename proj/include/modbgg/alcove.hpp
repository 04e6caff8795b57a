#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootdata.hpp"

namespace modbgg {

struct AffineReflection {
    int root;  // index of a positive root
    Int n;
};

inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Int pos_mod(Int a, Int b) { return a - b * floor_div(a, b); }

/// s_{gamma,n} . lambda = lambda + (p n - <lambda+rho, gamma^vee>) gamma
inline Weight affine_reflect(const GroupDatum& d, Int p, const AffineReflection& s, const Weight& lambda) {
    Int k = p * s.n - pair_index(d, lambda + d.rho, s.root);
    return lambda + k * d.root(s.root);
}

inline Weight affine_reflect(const GroupDatum& d, Int p, const Weight& gamma, Int n, const Weight& lambda) {
    auto i = root_index(d, gamma);
    if (!i) throw std::invalid_argument("affine reflection needs a positive root: " + gamma.str());
    return affine_reflect(d, p, AffineReflection{*i, n}, lambda);
}

struct AlcoveSignature {
    Int p = 0;
    std::vector<Int> quotient;  // floor(<lambda+rho, gamma^vee> / p), per positive root
    std::vector<bool> on_wall;

    bool regular() const {
        for (bool w : on_wall)
            if (w) return false;
        return true;
    }
    bool lowest() const {
        if (!regular()) return false;
        for (Int q : quotient)
            if (q != 0) return false;
        return true;
    }
    friend bool operator==(const AlcoveSignature&, const AlcoveSignature&) = default;
};

inline AlcoveSignature classify(const GroupDatum& d, Int p, const Weight& lambda) {
    if (p < 2) throw std::invalid_argument("p must be at least 2");
    AlcoveSignature sig;
    sig.p = p;
    for (int i = 0; i < d.num_roots(); ++i) {
        Int x = pair_index(d, lambda + d.rho, i);
        sig.quotient.push_back(floor_div(x, p));
        sig.on_wall.push_back(pos_mod(x, p) == 0);
    }
    return sig;
}

inline bool in_lowest_alcove(const GroupDatum& d, Int p, const Weight& lambda) {
    return classify(d, p, lambda).lowest();
}

inline bool is_p_restricted(const GroupDatum& d, Int p, const Weight& lambda) {
    for (int i : d.simple) {
        Int x = pair_index(d, lambda, i);
        if (x < 0 || x >= p) return false;
    }
    return true;
}

inline bool is_p_small(const GroupDatum& d, Int p, const Weight& lambda) {
    for (int i = 0; i < d.num_roots(); ++i) {
        Int x = pair_index(d, lambda + d.rho, i);
        if (x <= -p || x >= p) return false;
    }
    return true;
}

/// Every root pairing of lambda (not lambda+rho) stays more than eps away from pZ.
/// Checking positive roots suffices since the condition is symmetric under gamma -> -gamma.
inline bool is_epsilon_generic(const GroupDatum& d, Int p, Int eps, const Weight& lambda) {
    if (eps < 0) throw std::invalid_argument("epsilon must be non-negative");
    for (int i = 0; i < d.num_roots(); ++i) {
        Int r = pos_mod(pair_index(d, lambda, i), p);
        if (!(eps < r && r < p - eps)) return false;
    }
    return true;
}

/// lambda <= mu iff mu - lambda is a non-negative integer combination of positive roots.
inline bool leq_order(const GroupDatum& d, const Weight& lambda, const Weight& mu) {
    auto c = simple_coordinates(d, mu - lambda);
    if (!c) return false;
    for (Int x : *c)
        if (x < 0) return false;
    return true;
}

struct LinkStep {
    int root;
    Int n;
    Weight to;
};

/// Unique upward step along gamma: the smallest n with lambda <= s_{gamma,n}.lambda.
inline std::optional<LinkStep> link_step(const GroupDatum& d, Int p, const Weight& lambda, int root) {
    Int n = ceil_div(pair_index(d, lambda + d.rho, root), p);
    Weight to = affine_reflect(d, p, AffineReflection{root, n}, lambda);
    if (to == lambda) return std::nullopt;
    return LinkStep{root, n, to};
}

/// Breadth-first search for lambda = x0 up x1 up ... up mu, restricted to the interval [lambda, mu].
inline std::optional<std::vector<LinkStep>> linkage_up(const GroupDatum& d, Int p, const Weight& lambda,
                                                       const Weight& mu) {
    if (lambda == mu) return std::vector<LinkStep>{};
    if (!leq_order(d, lambda, mu)) return std::nullopt;
    std::map<Weight, std::pair<Weight, LinkStep>> parent;
    std::deque<Weight> queue{lambda};
    while (!queue.empty()) {
        Weight x = queue.front();
        queue.pop_front();
        for (int r = 0; r < d.num_roots(); ++r) {
            auto step = link_step(d, p, x, r);
            if (!step || !leq_order(d, step->to, mu) || step->to == lambda || parent.count(step->to)) continue;
            parent.emplace(step->to, std::make_pair(x, *step));
            if (step->to == mu) {
                std::vector<LinkStep> chain;
                Weight cur = mu;
                while (cur != lambda) {
                    const auto& [prev, st] = parent.at(cur);
                    chain.push_back(st);
                    cur = prev;
                }
                std::reverse(chain.begin(), chain.end());
                return chain;
            }
            queue.push_back(step->to);
        }
    }
    return std::nullopt;
}

/// Named reflection family generated from a weight in the lowest alcove.
struct OrbitFamily {
    Int p = 0;
    std::vector<std::pair<std::string, Weight>> members;

    const Weight& operator[](const std::string& name) const {
        for (const auto& [k, v] : members)
            if (k == name) return v;
        throw std::out_of_range("no orbit member named " + name);
    }
    bool has(const std::string& name) const {
        for (const auto& [k, v] : members)
            if (k == name) return true;
        return false;
    }
    std::string name_of(const Weight& w) const {
        for (const auto& [k, v] : members)
            if (v == w) return k;
        return {};
    }
};

inline bool is_gl3(const GroupDatum& d) { return d.family == Family::GL && d.n == 3 && !d.experimental; }
inline bool is_gsp4(const GroupDatum& d) { return d.family == Family::GSp && d.n == 4; }

inline OrbitFamily orbit_family(const GroupDatum& d, Int p, const Weight& lambda0) {
    if (!in_lowest_alcove(d, p, lambda0))
        throw std::invalid_argument("orbit family needs a weight in the open lowest alcove, got " + lambda0.str());
    OrbitFamily f;
    f.p = p;
    auto add = [&](std::string name, Weight w) { f.members.emplace_back(std::move(name), w); };
    if (is_gl3(d)) {
        const Weight a1{1, -1, 0}, a2{0, 1, -1}, a12{1, 0, -1};
        Weight l1 = affine_reflect(d, p, a12, 1, lambda0);
        Weight m0 = affine_reflect(d, p, a2, 0, lambda0);
        Weight m1 = affine_reflect(d, p, a1, 1, m0);
        Weight n0 = affine_reflect(d, p, a12, 0, m0);
        Weight n1 = affine_reflect(d, p, a2, -1, n0);
        add("lambda0", lambda0);
        add("lambda1", l1);
        add("mu0", m0);
        add("mu1", m1);
        add("nu0", n0);
        add("nu1", n1);
    } else if (is_gsp4(d)) {
        const Weight be{0, 2}, ab{1, 1}, aab{2, 0};
        Weight l[4];
        l[0] = lambda0;
        l[1] = affine_reflect(d, p, ab, 1, l[0]);
        l[2] = affine_reflect(d, p, aab, 1, l[1]);
        l[3] = affine_reflect(d, p, ab, 2, l[2]);
        for (int i = 0; i < 4; ++i) add("lambda" + std::to_string(i), l[i]);
        for (int i = 0; i < 4; ++i) add("mu" + std::to_string(i), affine_reflect(d, p, be, 0, l[i]));
        for (int i = 0; i < 4; ++i) add("nu" + std::to_string(i), affine_reflect(d, p, ab, 0, f["mu" + std::to_string(i)]));
        for (int i = 0; i < 4; ++i)
            add("epsilon" + std::to_string(i), affine_reflect(d, p, aab, 0, f["nu" + std::to_string(i)]));
    } else {
        throw std::invalid_argument("orbit families exist only for GL3/(2,1) and GSp4/Siegel");
    }
    return f;
}

/// All weights of the open lowest alcove (GL3 normalised to last coordinate 0), in a fixed order.
inline std::vector<Weight> lowest_alcove_cells(const GroupDatum& d, Int p) {
    std::vector<Weight> out;
    if (is_gl3(d)) {
        for (Int a = 0; a < p; ++a)
            for (Int b = 0; b <= a; ++b) {
                Weight w{a, b, 0};
                if (in_lowest_alcove(d, p, w)) out.push_back(w);
            }
    } else if (is_gsp4(d)) {
        for (Int a = 0; a < p; ++a)
            for (Int b = 0; b <= a; ++b) {
                Weight w{a, b};
                if (in_lowest_alcove(d, p, w)) out.push_back(w);
            }
    } else {
        throw std::invalid_argument("lowest alcove enumeration needs GL3 or GSp4");
    }
    return out;
}

/// Index of the restricted alcove containing lambda, for the alcoves named in the orbit
/// families: GL3 C0,C1; GSp4 C0..C3. nullopt otherwise or on a wall.
inline std::optional<int> named_alcove(const GroupDatum& d, Int p, const Weight& lambda) {
    auto sig = classify(d, p, lambda);
    if (!sig.regular()) return std::nullopt;
    auto q = [&](const Weight& g) { return sig.quotient[*root_index(d, g)]; };
    if (is_gl3(d)) {
        if (q({1, -1, 0}) != 0 || q({0, 1, -1}) != 0) return std::nullopt;
        Int t = q({1, 0, -1});
        if (t == 0 || t == 1) return static_cast<int>(t);
        return std::nullopt;
    }
    if (is_gsp4(d)) {
        if (q({1, -1}) != 0 || q({0, 2}) != 0) return std::nullopt;
        Int x = q({1, 1}), y = q({2, 0});
        if (x == 0 && y == 0) return 0;
        if (x == 1 && y == 0) return 1;
        if (x == 1 && y == 1) return 2;
        if (x == 2 && y == 1) return 3;
        return std::nullopt;
    }
    return std::nullopt;
}

/// Walks lambda back to the lowest alcove along the family's reflections.
inline Weight lowest_alcove_partner(const GroupDatum& d, Int p, const Weight& lambda) {
    auto c = named_alcove(d, p, lambda);
    if (!c) throw std::invalid_argument("weight is not in a supported alcove: " + lambda.str());
    Weight w = lambda;
    if (is_gl3(d)) {
        if (*c == 1) w = affine_reflect(d, p, Weight{1, 0, -1}, 1, w);
        return w;
    }
    if (*c == 3) w = affine_reflect(d, p, Weight{1, 1}, 2, w);
    if (*c >= 2) w = affine_reflect(d, p, Weight{2, 0}, 1, w);
    if (*c >= 1) w = affine_reflect(d, p, Weight{1, 1}, 1, w);
    return w;
}

}  // namespace modbgg
