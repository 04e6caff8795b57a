#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove.hpp"
#include "charring.hpp"
#include "rootdata.hpp"

namespace modbgg {

/// Finite Z-combination of parabolic Verma classes.
class KElement {
public:
    using Terms = std::map<VermaClass, Int>;

    KElement() = default;
    explicit KElement(Terms t) : terms_(std::move(t)) { normalize(); }
    KElement(const VermaClass& c, Int k = 1) { add(c, k); }

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Int coeff(const VermaClass& c) const {
        auto it = terms_.find(c);
        return it == terms_.end() ? 0 : it->second;
    }

    KElement& add(const VermaClass& c, Int k) {
        if ((terms_[c] += k) == 0) terms_.erase(c);
        return *this;
    }
    KElement& operator+=(const KElement& o) {
        for (const auto& [c, k] : o.terms_) add(c, k);
        return *this;
    }
    KElement& operator-=(const KElement& o) {
        for (const auto& [c, k] : o.terms_) add(c, -k);
        return *this;
    }
    friend KElement operator+(KElement a, const KElement& b) { return a += b; }
    friend KElement operator-(KElement a, const KElement& b) { return a -= b; }
    friend KElement operator*(Int k, KElement a) {
        for (auto& [c, m] : a.terms_) m *= k;
        a.normalize();
        return a;
    }
    friend bool operator==(const KElement&, const KElement&) = default;

    /// Printed with highest weights in decreasing height, optional naming of weights.
    template <class Namer>
    std::string str(const GroupDatum& d, Namer&& name) const {
        std::vector<std::pair<VermaClass, Int>> v(terms_.begin(), terms_.end());
        std::stable_sort(v.begin(), v.end(), [&](const auto& x, const auto& y) {
            Int hx = height(d, x.first.weight), hy = height(d, y.first.weight);
            if (hx != hy) return hx > hy;
            return x.first > y.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [c, k] : v) {
            if (first)
                os << (k < 0 ? "-" : "");
            else
                os << (k < 0 ? " - " : " + ");
            Int a = k < 0 ? -k : k;
            if (a != 1) os << a << "*";
            os << "Ver " << (c.kind == VermaKind::DualWeylLevi ? "W" : "L_M") << "(" << name(c.weight) << ")";
            first = false;
        }
        return first ? "0" : os.str();
    }
    std::string str(const GroupDatum& d) const {
        return str(d, [](const Weight& w) { return w.str(); });
    }

private:
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = it->second == 0 ? terms_.erase(it) : std::next(it);
    }
    Terms terms_;
};

namespace detail {

/// One step from alcove C_k to C_{k-1} along the family's reflections.
inline Weight alcove_step_down(const GroupDatum& d, Int p, const Weight& lambda, int alcove) {
    if (is_gl3(d)) return affine_reflect(d, p, Weight{1, 0, -1}, 1, lambda);
    if (alcove == 1) return affine_reflect(d, p, Weight{1, 1}, 1, lambda);
    if (alcove == 2) return affine_reflect(d, p, Weight{2, 0}, 1, lambda);
    throw std::invalid_argument("no step down from alcove C" + std::to_string(alcove));
}

inline int supported_alcove(const GroupDatum& d, Int p, const Weight& lambda) {
    auto c = named_alcove(d, p, lambda);
    if (!c) throw std::invalid_argument("weight " + lambda.str() + " is not in a supported alcove");
    if (is_gsp4(d) && *c == 3) throw std::invalid_argument("GSp4 alcove C3 is not supported");
    return *c;
}

}  // namespace detail

/// Composition factors of V(lambda) mod p: V(lambda) = L(lambda) + L(lambda') with lambda'
/// the linked weight one alcove down, or simple in C0.
inline std::vector<std::pair<Weight, Int>> decompose_weyl_mod_p(const GroupDatum& d, Int p, const Weight& lambda) {
    int c = detail::supported_alcove(d, p, lambda);
    std::vector<std::pair<Weight, Int>> out{{lambda, 1}};
    if (c > 0) out.emplace_back(detail::alcove_step_down(d, p, lambda, c), 1);
    return out;
}

/// [L(lambda)] as a Z-combination of dual Weyl modules V(mu), by inverting the triangular table.
inline std::map<Weight, Int> simple_in_weyl_basis(const GroupDatum& d, Int p, const Weight& lambda) {
    std::map<Weight, Int> out{{lambda, 1}};
    auto parts = decompose_weyl_mod_p(d, p, lambda);
    for (std::size_t i = 1; i < parts.size(); ++i)
        for (const auto& [mu, c] : simple_in_weyl_basis(d, p, parts[i].first)) {
            if ((out[mu] -= parts[i].second * c) == 0) out.erase(mu);
        }
    return out;
}

/// Character of L(lambda) as the alternating sum of characteristic-zero Weyl characters.
inline FormalCharacter simple_char_mod_p(const GroupDatum& d, Int p, const Weight& lambda) {
    FormalCharacter ch;
    for (const auto& [mu, c] : simple_in_weyl_basis(d, p, lambda)) ch.add(weyl_character(d, mu), c);
    if (!ch.nonnegative())
        throw std::logic_error("decomposition table produced a negative multiplicity for L" + lambda.str());
    return ch;
}

/// Rewrites Weyl-type classes past the Levi wall (p <= m <= 2p-2) as L_M(x) + W(s_{alpha,1}.x) and
/// Levi-simple classes below the wall as W(x), so each class sits in the canonical basis.
inline KElement canonicalize(const GroupDatum& d, Int p, const KElement& k) {
    const int a = levi_root(d);
    KElement out;
    std::vector<std::pair<VermaClass, Int>> stack(k.terms().begin(), k.terms().end());
    while (!stack.empty()) {
        auto [cls, c] = stack.back();
        stack.pop_back();
        const Int m = pair_index(d, cls.weight, a);
        if (m < 0 || m > 2 * p - 2)
            throw std::out_of_range("Levi pairing of " + cls.str() + " outside [0, 2p-2]");
        if (cls.kind == VermaKind::DualWeylLevi && m >= p) {
            stack.emplace_back(ver_l(cls.weight), c);
            stack.emplace_back(ver_w(affine_reflect(d, p, AffineReflection{a, 1}, cls.weight)), c);
        } else if (cls.kind == VermaKind::SimpleLevi && m < p) {
            stack.emplace_back(ver_w(cls.weight), c);
        } else {
            out.add(cls, c);
        }
    }
    return out;
}

/// Characteristic-zero parabolic BGG resolution of V(mu): sum over W^M of (-1)^l(w) Ver W(w.mu).
inline KElement weyl_module_in_vermas(const GroupDatum& d, const Weight& mu) {
    KElement k;
    for (const auto& rep : d.coset_reps)
        k.add(ver_w(dot_action(d, d.weyl[rep.element], mu)), rep.length % 2 ? -1 : 1);
    return k;
}

/// [L(lambda)] in Verma classes: mod-p decomposition, char-0 BGG, then canonical Levi basis.
inline KElement simple_char_in_vermas(const GroupDatum& d, Int p, const Weight& lambda) {
    KElement k;
    for (const auto& [mu, c] : simple_in_weyl_basis(d, p, lambda)) k += c * weyl_module_in_vermas(d, mu);
    return canonicalize(d, p, k);
}

inline FormalCharacter char_of_K(const GroupDatum& d, Int p, const KElement& k, const Window& window) {
    FormalCharacter ch = FormalCharacter({}, window);
    for (const auto& [cls, c] : k.terms()) ch.add(verma_character(d, p, cls, window), c);
    return ch;
}

enum class ClassBasis { Weyl, Simple };

/// Triangular inverse of char_of_K: strip the weight of largest height (hence <=-maximal),
/// ties broken lexicographically.
inline KElement K_from_character(const GroupDatum& d, Int p, const FormalCharacter& chi, ClassBasis basis) {
    if (!chi.window()) throw std::invalid_argument("K_from_character needs a windowed character");
    const Window& window = *chi.window();
    const int a = levi_root(d);
    FormalCharacter rem = chi;
    KElement out;
    while (!rem.empty()) {
        auto top = rem.terms().begin();
        for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
            Int h = height(d, it->first), ht = height(d, top->first);
            if (h > ht || (h == ht && it->first > top->first)) top = it;
        }
        const Weight mu = top->first;
        const Int c = top->second;
        if (window.on_boundary(mu))
            throw std::runtime_error("residue " + std::to_string(c) + " at window boundary weight " + mu.str());
        if (!is_M_dominant(d, mu))
            throw std::runtime_error("residue at non-M-dominant weight " + mu.str() + ": not expressible");
        VermaClass cls = ver_w(mu);
        if (basis == ClassBasis::Simple && pair_index(d, mu, a) >= p) cls = ver_l(mu);
        out.add(cls, c);
        rem.add(verma_character(d, p, cls, window), -c);
    }
    return out;
}

}  // namespace modbgg
