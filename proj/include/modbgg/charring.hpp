#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove.hpp"
#include "rootdata.hpp"

namespace modbgg {

/// Coordinate box [lo, hi] in the weight lattice. Characters restricted to a window are
/// exact on every weight inside it.
struct Window {
    Weight lo, hi;

    bool contains(const Weight& w) const {
        for (int i = 0; i < lo.rank(); ++i)
            if (w[i] < lo[i] || w[i] > hi[i]) return false;
        return true;
    }
    bool empty() const {
        for (int i = 0; i < lo.rank(); ++i)
            if (lo[i] > hi[i]) return true;
        return false;
    }
    bool on_boundary(const Weight& w) const {
        for (int i = 0; i < lo.rank(); ++i)
            if (w[i] == lo[i] || w[i] == hi[i]) return true;
        return false;
    }
    Window intersect(const Window& o) const {
        Window r = *this;
        for (int i = 0; i < lo.rank(); ++i) {
            r.lo[i] = std::max(lo[i], o.lo[i]);
            r.hi[i] = std::min(hi[i], o.hi[i]);
        }
        return r;
    }
    /// Smallest box around the given weights, widened by margin on every side.
    static Window around(const std::vector<Weight>& ws, Int margin) {
        if (ws.empty()) throw std::invalid_argument("window around an empty set");
        Window w{ws.front(), ws.front()};
        for (const auto& x : ws)
            for (int i = 0; i < x.rank(); ++i) {
                w.lo[i] = std::min(w.lo[i], x[i]);
                w.hi[i] = std::max(w.hi[i], x[i]);
            }
        for (int i = 0; i < w.lo.rank(); ++i) {
            w.lo[i] -= margin;
            w.hi[i] += margin;
        }
        return w;
    }
    friend bool operator==(const Window&, const Window&) = default;
};

class FormalCharacter {
public:
    using Terms = std::map<Weight, Int>;

    FormalCharacter() = default;
    explicit FormalCharacter(Terms terms, std::optional<Window> window = std::nullopt)
        : terms_(std::move(terms)), window_(std::move(window)) {
        normalize();
    }

    const Terms& terms() const { return terms_; }
    const std::optional<Window>& window() const { return window_; }
    bool complete() const { return !window_.has_value(); }
    bool empty() const { return terms_.empty(); }

    bool complete_at(const Weight& w) const { return !window_ || window_->contains(w); }

    Int at(const Weight& w) const {
        if (!complete_at(w)) throw std::out_of_range("weight " + w.str() + " lies outside the complete window");
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }

    Int dimension() const {
        if (window_) throw std::logic_error("dimension of a truncated character");
        Int s = 0;
        for (const auto& [w, m] : terms_) s += m;
        return s;
    }

    bool nonnegative() const {
        for (const auto& [w, m] : terms_)
            if (m < 0) return false;
        return true;
    }

    FormalCharacter restricted(const Window& w) const {
        Window target = window_ ? window_->intersect(w) : w;
        Terms t;
        for (const auto& [x, m] : terms_)
            if (target.contains(x)) t.emplace(x, m);
        return FormalCharacter(std::move(t), target);
    }

    FormalCharacter& add(const FormalCharacter& o, Int k = 1) {
        if (o.window_) window_ = window_ ? window_->intersect(*o.window_) : *o.window_;
        for (const auto& [x, m] : o.terms_) terms_[x] += k * m;
        normalize();
        return *this;
    }
    FormalCharacter& operator+=(const FormalCharacter& o) { return add(o, 1); }
    FormalCharacter& operator-=(const FormalCharacter& o) { return add(o, -1); }
    friend FormalCharacter operator+(FormalCharacter a, const FormalCharacter& b) { return a += b; }
    friend FormalCharacter operator-(FormalCharacter a, const FormalCharacter& b) { return a -= b; }
    friend FormalCharacter operator*(Int k, FormalCharacter a) {
        for (auto& [x, m] : a.terms_) m *= k;
        a.normalize();
        return a;
    }

    /// Product. At most one factor may be truncated; the complete region of the product is
    /// the truncated factor's window shifted by the other factor's coordinatewise extremes.
    friend FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b) {
        if (a.window_ && b.window_) throw std::invalid_argument("product of two truncated characters");
        const FormalCharacter& fin = a.window_ ? b : a;
        const FormalCharacter& other = a.window_ ? a : b;
        std::optional<Window> win;
        if (other.window_ && !fin.terms_.empty()) {
            Window w = *other.window_;
            const int r = w.lo.rank();
            for (int i = 0; i < r; ++i) {
                Int mn = fin.terms_.begin()->first[i], mx = mn;
                for (const auto& [x, m] : fin.terms_) {
                    mn = std::min(mn, x[i]);
                    mx = std::max(mx, x[i]);
                }
                w.lo[i] += mx;
                w.hi[i] += mn;
            }
            win = w;
        } else if (other.window_) {
            win = other.window_;
        }
        Terms t;
        for (const auto& [x, m] : fin.terms_)
            for (const auto& [y, n] : other.terms_) {
                Weight z = x + y;
                if (!win || win->contains(z)) t[z] += m * n;
            }
        return FormalCharacter(std::move(t), win);
    }

    /// Equality of multiplicities at every weight of the window (both sides must be complete there).
    bool agrees_on(const FormalCharacter& o, const Window& w) const {
        if (!complete_at(w.lo) || !complete_at(w.hi) || !o.complete_at(w.lo) || !o.complete_at(w.hi))
            throw std::out_of_range("comparison window exceeds a complete region");
        for (const auto& [x, m] : terms_)
            if (w.contains(x) && o.at(x) != m) return false;
        for (const auto& [x, m] : o.terms_)
            if (w.contains(x) && at(x) != m) return false;
        return true;
    }

    friend bool operator==(const FormalCharacter&, const FormalCharacter&) = default;

private:
    void normalize() {
        for (auto it = terms_.begin(); it != terms_.end();) {
            if (it->second == 0 || (window_ && !window_->contains(it->first)))
                it = terms_.erase(it);
            else
                ++it;
        }
    }

    Terms terms_;
    std::optional<Window> window_;
};

inline FormalCharacter monomial(const Weight& w, Int m = 1) { return FormalCharacter({{w, m}}); }

enum class VermaKind { DualWeylLevi, SimpleLevi };

/// Parabolic Verma class Ver_P W(mu) or Ver_P L_M(mu).
struct VermaClass {
    VermaKind kind = VermaKind::DualWeylLevi;
    Weight weight;

    friend auto operator<=>(const VermaClass&, const VermaClass&) = default;
    friend bool operator==(const VermaClass&, const VermaClass&) = default;

    std::string str() const { return (kind == VermaKind::DualWeylLevi ? "W" : "L") + weight.str(); }
};

inline VermaClass ver_w(const Weight& w) { return {VermaKind::DualWeylLevi, w}; }
inline VermaClass ver_l(const Weight& w) { return {VermaKind::SimpleLevi, w}; }

namespace detail {

struct Subsystem {
    std::vector<int> positive;
    std::vector<int> simple;
    Weight two_rho;
};

inline Subsystem subsystem(const GroupDatum& d, bool levi) {
    if (levi) return {d.levi_positive, d.levi_simple, d.two_rho_levi_gen};
    std::vector<int> all;
    for (int i = 0; i < d.num_roots(); ++i) all.push_back(i);
    return {all, d.simple, d.two_rho_gen};
}

}  // namespace detail

/// Weyl dimension product over the group or its Levi.
inline Int weyl_dimension(const GroupDatum& d, const Weight& lambda, bool for_levi = false) {
    auto sub = detail::subsystem(d, for_levi);
    __int128 num = 1, den = 1;
    for (int i : sub.positive) {
        Int shift = inner(sub.two_rho, d.coroots[i]);
        num *= 2 * pair_index(d, lambda, i) + shift;
        den *= shift;
    }
    return static_cast<Int>(num / den);
}

/// Characteristic-zero character of V(lambda) (or W(lambda) for the Levi) by Freudenthal's
/// recursion, layered by depth below the highest weight.
inline FormalCharacter weyl_character(const GroupDatum& d, const Weight& lambda, bool for_levi = false) {
    if (for_levi ? !is_M_dominant(d, lambda) : !is_dominant(d, lambda))
        throw std::invalid_argument("weyl_character needs a dominant weight, got " + lambda.str());
    auto sub = detail::subsystem(d, for_levi);
    FormalCharacter::Terms mult{{lambda, 1}};

    if (sub.positive.size() == 1) {
        int r = sub.positive.front();
        Int m = pair_index(d, lambda, r);
        for (Int k = 1; k <= m; ++k) mult[lambda - k * d.root(r)] = 1;
        return FormalCharacter(std::move(mult));
    }

    const Int top = inner(lambda, d.two_rho_gen);
    std::vector<Weight> layer{lambda};
    while (!layer.empty()) {
        std::set<Weight> next;
        for (const auto& w : layer)
            for (int s : sub.simple) next.insert(w - d.root(s));
        layer.clear();
        for (const auto& mu : next) {
            Int num = 0;
            for (int g : sub.positive) {
                const Weight& gamma = d.root(g);
                for (Int j = 1;; ++j) {
                    Weight up = mu + j * gamma;
                    if (inner(up, d.two_rho_gen) > top) break;
                    auto it = mult.find(up);
                    if (it != mult.end()) num += inner(up, gamma) * it->second;
                }
            }
            num *= 2;
            Int den = inner(lambda - mu, lambda + mu + sub.two_rho);
            // candidates that are not weights can sit on the sphere of lambda+rho
            if (den == 0 && num == 0) continue;
            if (den <= 0 || num % den != 0)
                throw std::logic_error("Freudenthal recursion broke at " + mu.str());
            Int m = num / den;
            if (m > 0) {
                mult[mu] = m;
                layer.push_back(mu);
            }
        }
    }
    return FormalCharacter(std::move(mult));
}

struct PartitionQuery {
    Weight target;
    std::vector<int> roots;  // indices of allowed positive roots
};

inline std::vector<int> borel_roots(const GroupDatum& d) {
    std::vector<int> r;
    for (int i = 0; i < d.num_roots(); ++i) r.push_back(i);
    return r;
}

/// Number of ways to write the target as a non-negative integer combination of the allowed roots.
class KostantCounter {
public:
    KostantCounter(const GroupDatum& d, std::vector<int> roots) : d_(&d), roots_(std::move(roots)) {}

    Int operator()(const Weight& target) { return count(0, target); }

private:
    bool nonnegative(const Weight& t) const {
        auto c = simple_coordinates(*d_, t);
        if (!c) return false;
        for (Int x : *c)
            if (x < 0) return false;
        return true;
    }
    Int count(std::size_t i, const Weight& t) {
        if (i == roots_.size()) return t == Weight::zero(t.rank()) ? 1 : 0;
        auto key = std::make_pair(i, t);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Int total = 0;
        Weight cur = t;
        while (nonnegative(cur)) {
            total += count(i + 1, cur);
            cur -= d_->root(roots_[i]);
        }
        memo_.emplace(key, total);
        return total;
    }

    const GroupDatum* d_;
    std::vector<int> roots_;
    std::map<std::pair<std::size_t, Weight>, Int> memo_;
};

inline Int kostant_count(const GroupDatum& d, const PartitionQuery& q) {
    KostantCounter k(d, q.roots);
    return k(q.target);
}

/// Lattice-point count for C2 Borel partitions of N alpha + M beta, "+1" inside the sum.
inline Int closed_form_C2(Int N, Int M) {
    if (N < 0 || M < 0) throw std::invalid_argument("closed_form_C2 needs N, M >= 0");
    Int s = 0;
    if (N >= M) {
        for (Int i = 0; i <= M; ++i) s += std::min((N - i) / 2, M - i) + 1;
    } else {
        for (Int i = 0; i <= N; ++i) s += (N - i) / 2 + 1;
    }
    return s;
}

/// Character of the simple Levi module L_M(mu). Supported up to one wall crossing:
/// m = <mu, alpha^vee> <= 2p-2, where L_M(mu) = W(mu) - W(s_{alpha,1}.mu) for m >= p.
inline FormalCharacter levi_simple_character(const GroupDatum& d, Int p, const Weight& mu) {
    const int a = levi_root(d);
    const Int m = pair_index(d, mu, a);
    if (m < 0) throw std::invalid_argument("L_M needs an M-dominant weight, got " + mu.str());
    if (m > 2 * p - 2)
        throw std::out_of_range("Levi pairing " + std::to_string(m) + " of " + mu.str() +
                                " exceeds one wall crossing (2p-2)");
    FormalCharacter ch = weyl_character(d, mu, true);
    if (m >= p) ch -= weyl_character(d, affine_reflect(d, p, AffineReflection{a, 1}, mu), true);
    return ch;
}

inline FormalCharacter verma_base_character(const GroupDatum& d, Int p, const VermaClass& cls) {
    return cls.kind == VermaKind::DualWeylLevi ? weyl_character(d, cls.weight, true)
                                               : levi_simple_character(d, p, cls.weight);
}

/// Parabolic Verma character truncated to a window: each multiplicity is the sum over base
/// weights of unipotent partition counts.
inline FormalCharacter verma_character(const GroupDatum& d, Int p, const VermaClass& cls, const Window& window) {
    if (window.empty()) throw std::invalid_argument("verma_character needs a non-empty window");
    FormalCharacter base = verma_base_character(d, p, cls);
    Int min_height = 0;
    for (int i = 0; i < d.rank; ++i)
        min_height += std::min(window.lo[i] * d.two_rho_gen[i], window.hi[i] * d.two_rho_gen[i]);

    FormalCharacter::Terms out;
    const auto& roots = d.unipotent;
    // depth-first over exponents of the unipotent roots, pruned by height
    auto rec = [&](auto&& self, std::size_t i, const Weight& x, Int m) -> void {
        if (height(d, x) < min_height) return;
        if (i == roots.size()) {
            if (window.contains(x)) out[x] += m;
            return;
        }
        Weight cur = x;
        while (height(d, cur) >= min_height) {
            self(self, i + 1, cur, m);
            cur -= d.root(roots[i]);
        }
    };
    for (const auto& [w, m] : base.terms()) rec(rec, 0, w, m);
    return FormalCharacter(std::move(out), window);
}

/// Highest weights w.0 of the Levi constituents of the k-th exterior power of g/p.
inline std::vector<std::vector<Weight>> exterior_powers_gp(const GroupDatum& d) {
    std::vector<std::vector<Weight>> out(d.unipotent.size() + 1);
    for (const auto& rep : d.coset_reps)
        out[rep.length].push_back(dot_action(d, d.weyl[rep.element], Weight::zero(d.rank)));
    for (auto& v : out) std::sort(v.rbegin(), v.rend());
    return out;
}

/// Torus character of the k-th exterior power of g/p (weights: negatives of unipotent roots).
inline FormalCharacter exterior_power_character(const GroupDatum& d, int k) {
    const int u = static_cast<int>(d.unipotent.size());
    FormalCharacter::Terms t;
    for (int mask = 0; mask < (1 << u); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        Weight w = Weight::zero(d.rank);
        for (int i = 0; i < u; ++i)
            if (mask & (1 << i)) w -= d.root(d.unipotent[i]);
        t[w] += 1;
    }
    return FormalCharacter(std::move(t));
}

/// Composition factors of a P-representation as Levi simples, by peeling the weight of largest
/// Levi pairing.
inline std::map<Weight, Int> levi_jh_decomposition(const GroupDatum& d, Int p, const FormalCharacter& v) {
    if (!v.complete()) throw std::invalid_argument("Levi decomposition needs a complete character");
    const int a = levi_root(d);
    FormalCharacter rem = v;
    std::map<Weight, Int> out;
    while (!rem.empty()) {
        auto best = rem.terms().begin();
        for (auto it = rem.terms().begin(); it != rem.terms().end(); ++it) {
            Int pa = pair_index(d, it->first, a), pb = pair_index(d, best->first, a);
            if (pa > pb || (pa == pb && it->first > best->first)) best = it;
        }
        const Weight mu = best->first;
        const Int c = best->second;
        if (c < 0) throw std::invalid_argument("not the character of a representation near " + mu.str());
        out[mu] += c;
        rem.add(levi_simple_character(d, p, mu), -c);
    }
    return out;
}

struct LeviMultiplicity {
    Int weyl = 0;              // [V : W(mu)]; equals the simple count when W(mu) is simple
    Int simple = 0;            // [V : L_M(mu)]
    Int weyl_coefficient = 0;  // dim V_mu - dim V_{mu+alpha}
};

inline LeviMultiplicity levi_jh_multiplicity(const GroupDatum& d, Int p, const FormalCharacter& v, const Weight& mu) {
    if (!is_M_dominant(d, mu)) throw std::invalid_argument("levi_jh_multiplicity needs M-dominant weight");
    const int a = levi_root(d);
    const Int m = pair_index(d, mu, a);
    if (m > 2 * p - 2) throw std::out_of_range("Levi pairing out of supported range at " + mu.str());
    auto jh = levi_jh_decomposition(d, p, v);
    LeviMultiplicity r;
    r.simple = jh.count(mu) ? jh.at(mu) : 0;
    r.weyl_coefficient = v.at(mu) - v.at(mu + d.root(a));
    r.weyl = m < p ? r.simple : r.weyl_coefficient;
    return r;
}

}  // namespace modbgg
