#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace modbgg {

using Int = long long;

/// Integer vector in the character lattice. Rank is at most kMaxRank.
class Weight {
public:
    static constexpr int kMaxRank = 4;

    Weight() = default;
    Weight(std::initializer_list<Int> xs) {
        if (xs.size() > kMaxRank) throw std::invalid_argument("weight rank too large");
        for (Int x : xs) c_[n_++] = x;
    }
    explicit Weight(const std::vector<Int>& xs) {
        if (xs.size() > kMaxRank) throw std::invalid_argument("weight rank too large");
        for (Int x : xs) c_[n_++] = x;
    }
    static Weight zero(int rank) {
        Weight w;
        w.n_ = rank;
        return w;
    }

    int rank() const { return n_; }
    Int operator[](int i) const { return c_[i]; }
    Int& operator[](int i) { return c_[i]; }

    std::vector<Int> coords() const { return {c_.begin(), c_.begin() + n_}; }

    Weight& operator+=(const Weight& o) {
        for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator-(Weight a) {
        for (int i = 0; i < a.n_; ++i) a.c_[i] = -a.c_[i];
        return a;
    }
    friend Weight operator*(Int k, Weight a) {
        for (int i = 0; i < a.n_; ++i) a.c_[i] *= k;
        return a;
    }

    friend auto operator<=>(const Weight&, const Weight&) = default;
    friend bool operator==(const Weight&, const Weight&) = default;

    std::string str() const {
        std::ostringstream os;
        os << '(';
        for (int i = 0; i < n_; ++i) os << (i ? "," : "") << c_[i];
        os << ')';
        return os.str();
    }

private:
    std::array<Int, kMaxRank> c_{};
    int n_ = 0;
};

inline Int inner(const Weight& a, const Weight& b) {
    Int s = 0;
    for (int i = 0; i < a.rank(); ++i) s += a[i] * b[i];
    return s;
}

/// Orthogonal integer matrix acting on the weight lattice.
class WeylElement {
public:
    using Matrix = std::array<std::array<int, Weight::kMaxRank>, Weight::kMaxRank>;

    WeylElement() = default;
    explicit WeylElement(int rank) : n_(rank) {
        for (int i = 0; i < n_; ++i) m_[i][i] = 1;
    }
    WeylElement(int rank, const Matrix& m) : m_(m), n_(rank) {}

    int rank() const { return n_; }
    const Matrix& matrix() const { return m_; }

    Weight operator()(const Weight& x) const {
        Weight y = Weight::zero(n_);
        for (int i = 0; i < n_; ++i) {
            Int s = 0;
            for (int j = 0; j < n_; ++j) s += m_[i][j] * x[j];
            y[i] = s;
        }
        return y;
    }
    friend WeylElement operator*(const WeylElement& a, const WeylElement& b) {
        WeylElement r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                int s = 0;
                for (int k = 0; k < a.n_; ++k) s += a.m_[i][k] * b.m_[k][j];
                r.m_[i][j] = s;
            }
        return r;
    }
    WeylElement inverse() const {
        WeylElement r(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.m_[i][j] = m_[j][i];
        return r;
    }

    friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
    friend bool operator==(const WeylElement&, const WeylElement&) = default;

private:
    Matrix m_{};
    int n_ = 0;
};

enum class Family { GL, GSp };

inline std::string family_name(Family f) { return f == Family::GL ? "GL" : "GSp"; }

/// Parabolic choice. GL uses block sizes (upper block-triangular); GSp only
/// supports the Siegel parabolic.
struct Parabolic {
    std::vector<int> blocks;
    bool siegel = false;

    static Parabolic block(std::vector<int> sizes) { return {std::move(sizes), false}; }
    static Parabolic siegel_type() { return {{}, true}; }

    std::string str() const {
        if (siegel) return "siegel";
        std::string s = "block(";
        for (std::size_t i = 0; i < blocks.size(); ++i) s += (i ? "," : "") + std::to_string(blocks[i]);
        return s + ")";
    }
};

struct CosetRep {
    int element;  // index into GroupDatum::weyl
    int length;
};

struct GroupDatum {
    Family family = Family::GL;
    int n = 0;     // GL_n or GSp_n
    int rank = 0;  // rank of the weight lattice used here
    Parabolic parabolic;
    bool experimental = false;

    std::vector<Weight> positive_roots;
    std::vector<Weight> coroots;  // coroots[i] belongs to positive_roots[i]
    std::vector<int> simple;      // indices into positive_roots
    std::vector<int> levi_simple;
    std::vector<int> levi_positive;
    std::vector<int> unipotent;  // positive roots outside the Levi

    Weight rho;  // dot-action shift
    Weight two_rho_gen;
    Weight two_rho_levi_gen;

    std::vector<WeylElement> weyl;  // sorted by (length, matrix)
    std::vector<int> lengths;
    int w0 = 0;
    int w0_levi = 0;
    std::vector<CosetRep> coset_reps;  // minimal representatives of W_M \ W

    // c_i = inner(v, simple_dual[i]) / simple_det for v in the root span
    std::vector<Weight> simple_dual;
    Int simple_det = 1;

    std::string name() const {
        return family_name(family) + std::to_string(n) + "/" + parabolic.str();
    }
    const Weight& root(int i) const { return positive_roots.at(i); }
    int num_roots() const { return static_cast<int>(positive_roots.size()); }
};

namespace detail {

inline Int det(std::vector<std::vector<Int>> a) {
    // Bareiss elimination, exact for integer input
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int s = k + 1;
            while (s < n && a[s][k] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[k], a[s]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline bool is_positive_root(const GroupDatum& d, const Weight& v) {
    return std::find(d.positive_roots.begin(), d.positive_roots.end(), v) != d.positive_roots.end();
}

inline WeylElement reflection(const Weight& root, const Weight& coroot) {
    const int n = root.rank();
    WeylElement::Matrix m{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = (i == j ? 1 : 0) - static_cast<int>(root[i] * coroot[j]);
    return WeylElement(n, m);
}

inline Weight unit(int rank, int i, Int k = 1) {
    Weight w = Weight::zero(rank);
    w[i] = k;
    return w;
}

inline std::vector<WeylElement> closure(int rank, const std::vector<WeylElement>& gens) {
    std::set<WeylElement> seen{WeylElement(rank)};
    std::vector<WeylElement> frontier{WeylElement(rank)};
    while (!frontier.empty()) {
        std::vector<WeylElement> next;
        for (const auto& w : frontier)
            for (const auto& s : gens) {
                WeylElement x = s * w;
                if (seen.insert(x).second) next.push_back(x);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace detail

/// Number of positive roots sent to negative roots.
inline int weyl_length(const GroupDatum& d, const WeylElement& w) {
    int len = 0;
    for (const auto& g : d.positive_roots)
        if (!detail::is_positive_root(d, w(g))) ++len;
    return len;
}

inline std::optional<int> root_index(const GroupDatum& d, const Weight& g) {
    for (int i = 0; i < d.num_roots(); ++i)
        if (d.positive_roots[i] == g) return i;
    return std::nullopt;
}

/// Coefficients of v in the simple roots, or nullopt outside the root lattice.
inline std::optional<std::vector<Int>> simple_coordinates(const GroupDatum& d, const Weight& v) {
    std::vector<Int> c(d.simple.size());
    Weight back = Weight::zero(d.rank);
    for (std::size_t i = 0; i < d.simple.size(); ++i) {
        Int num = inner(v, d.simple_dual[i]);
        if (num % d.simple_det != 0) return std::nullopt;
        c[i] = num / d.simple_det;
        back += c[i] * d.root(d.simple[i]);
    }
    if (back != v) return std::nullopt;
    return c;
}

inline Int height(const GroupDatum& d, const Weight& v) { return inner(v, d.two_rho_gen); }

inline GroupDatum build_datum(Family family, int n, const Parabolic& par) {
    GroupDatum d;
    d.family = family;
    d.n = n;
    d.parabolic = par;

    std::vector<Weight> roots;
    std::vector<Weight> simples;
    std::vector<Weight> levi_simples;

    if (family == Family::GL) {
        if (n < 2 || n > Weight::kMaxRank) throw std::invalid_argument("GL_n supported for 2 <= n <= 4");
        if (par.siegel) throw std::invalid_argument("GL needs a block parabolic");
        int total = 0;
        for (int b : par.blocks) {
            if (b <= 0) throw std::invalid_argument("block sizes must be positive");
            total += b;
        }
        if (total != n) throw std::invalid_argument("block sizes must sum to n");
        d.rank = n;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) roots.push_back(detail::unit(n, i) - detail::unit(n, j));
        for (int i = 0; i + 1 < n; ++i) simples.push_back(detail::unit(n, i) - detail::unit(n, i + 1));
        std::vector<int> block_of(n);
        for (int b = 0, pos = 0; b < static_cast<int>(par.blocks.size()); ++b)
            for (int k = 0; k < par.blocks[b]; ++k) block_of[pos++] = b;
        for (int i = 0; i + 1 < n; ++i)
            if (block_of[i] == block_of[i + 1]) levi_simples.push_back(simples[i]);
        d.rho = Weight::zero(n);
        for (int i = 0; i < n; ++i) d.rho[i] = n - 1 - i;
        d.experimental = !(n == 3 && par.blocks == std::vector<int>{2, 1});
    } else {
        if (n % 2 != 0 || n < 4 || n / 2 > Weight::kMaxRank)
            throw std::invalid_argument("GSp_n supported for even 4 <= n <= 8");
        if (!par.siegel) throw std::invalid_argument("GSp supports only the Siegel parabolic");
        const int m = n / 2;
        d.rank = m;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) {
                roots.push_back(detail::unit(m, i) - detail::unit(m, j));
                roots.push_back(detail::unit(m, i) + detail::unit(m, j));
            }
        for (int i = 0; i < m; ++i) roots.push_back(detail::unit(m, i, 2));
        for (int i = 0; i + 1 < m; ++i) simples.push_back(detail::unit(m, i) - detail::unit(m, i + 1));
        simples.push_back(detail::unit(m, m - 1, 2));
        for (int i = 0; i + 1 < m; ++i) levi_simples.push_back(simples[i]);
        d.rho = Weight::zero(m);
        for (int i = 0; i < m; ++i) d.rho[i] = m - i;
        d.experimental = (n != 4);
    }

    // simple-root coordinates through the adjugate of the Gram matrix
    const int r = static_cast<int>(simples.size());
    std::vector<std::vector<Int>> gram(r, std::vector<Int>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) gram[i][j] = inner(simples[i], simples[j]);
    d.simple_det = detail::det(gram);
    for (int i = 0; i < r; ++i) {
        Weight row = Weight::zero(d.rank);
        for (int j = 0; j < r; ++j) {
            std::vector<std::vector<Int>> minor;
            for (int a = 0; a < r; ++a) {
                if (a == j) continue;
                std::vector<Int> line;
                for (int b = 0; b < r; ++b)
                    if (b != i) line.push_back(gram[a][b]);
                minor.push_back(line);
            }
            Int cof = (((i + j) % 2) ? -1 : 1) * detail::det(minor);
            row += cof * simples[j];
        }
        d.simple_dual.push_back(row);
    }
    if (d.simple_det < 0) {
        d.simple_det = -d.simple_det;
        for (auto& row : d.simple_dual) row = -row;
    }

    // temporary ordering key needs simple coordinates
    d.positive_roots = simples;
    for (int i = 0; i < r; ++i) d.simple.push_back(i);
    auto root_height = [&](const Weight& g) {
        auto c = simple_coordinates(d, g);
        Int h = 0;
        for (Int x : *c) h += x;
        return h;
    };
    std::sort(roots.begin(), roots.end(), [&](const Weight& a, const Weight& b) {
        Int ha = root_height(a), hb = root_height(b);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    d.positive_roots = roots;
    d.simple.clear();
    for (const auto& s : simples) d.simple.push_back(*root_index(d, s));
    for (const auto& s : levi_simples) d.levi_simple.push_back(*root_index(d, s));

    for (const auto& g : roots) {
        Int nn = inner(g, g);
        Weight co = Weight::zero(d.rank);
        for (int i = 0; i < d.rank; ++i) co[i] = 2 * g[i] / nn;
        d.coroots.push_back(co);
    }

    d.two_rho_gen = Weight::zero(d.rank);
    for (const auto& g : roots) d.two_rho_gen += g;

    for (int i = 0; i < d.num_roots(); ++i) {
        auto c = *simple_coordinates(d, d.root(i));
        bool in_levi = true;
        for (int k = 0; k < r; ++k)
            if (c[k] != 0 &&
                std::find(d.levi_simple.begin(), d.levi_simple.end(), d.simple[k]) == d.levi_simple.end())
                in_levi = false;
        (in_levi ? d.levi_positive : d.unipotent).push_back(i);
    }
    d.two_rho_levi_gen = Weight::zero(d.rank);
    for (int i : d.levi_positive) d.two_rho_levi_gen += d.root(i);

    std::vector<WeylElement> gens, levi_gens;
    for (int i : d.simple) gens.push_back(detail::reflection(d.root(i), d.coroots[i]));
    for (int i : d.levi_simple) levi_gens.push_back(detail::reflection(d.root(i), d.coroots[i]));
    auto all = detail::closure(d.rank, gens);
    std::vector<std::pair<int, WeylElement>> keyed;
    for (const auto& w : all) keyed.emplace_back(weyl_length(d, w), w);
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [len, w] : keyed) {
        d.weyl.push_back(w);
        d.lengths.push_back(len);
    }
    d.w0 = static_cast<int>(d.weyl.size()) - 1;

    auto levi = detail::closure(d.rank, levi_gens);
    int best = -1;
    for (const auto& w : levi) {
        int idx = static_cast<int>(std::find(d.weyl.begin(), d.weyl.end(), w) - d.weyl.begin());
        if (best < 0 || d.lengths[idx] > d.lengths[best]) best = idx;
    }
    d.w0_levi = best;

    for (int idx = 0; idx < static_cast<int>(d.weyl.size()); ++idx) {
        WeylElement inv = d.weyl[idx].inverse();
        bool minimal = true;
        for (int i : d.levi_simple)
            if (!detail::is_positive_root(d, inv(d.root(i)))) minimal = false;
        if (minimal) d.coset_reps.push_back({idx, d.lengths[idx]});
    }
    return d;
}

inline GroupDatum gl3() { return build_datum(Family::GL, 3, Parabolic::block({2, 1})); }
inline GroupDatum gsp4() { return build_datum(Family::GSp, 4, Parabolic::siegel_type()); }

/// <lambda, gamma^vee> for a root gamma (positive or negative).
inline Int pair(const GroupDatum& d, const Weight& lambda, const Weight& gamma) {
    if (auto i = root_index(d, gamma)) return inner(lambda, d.coroots[*i]);
    if (auto i = root_index(d, -gamma)) return -inner(lambda, d.coroots[*i]);
    throw std::invalid_argument("not a root: " + gamma.str());
}

inline Int pair_index(const GroupDatum& d, const Weight& lambda, int root) {
    return inner(lambda, d.coroots[root]);
}

inline Weight dot_action(const GroupDatum& d, const WeylElement& w, const Weight& lambda) {
    return w(lambda + d.rho) - d.rho;
}

inline bool is_dominant(const GroupDatum& d, const Weight& lambda) {
    for (int i : d.simple)
        if (pair_index(d, lambda, i) < 0) return false;
    return true;
}

inline bool is_M_dominant(const GroupDatum& d, const Weight& lambda) {
    for (int i : d.levi_simple)
        if (pair_index(d, lambda, i) < 0) return false;
    return true;
}

inline const std::vector<CosetRep>& minimal_coset_reps(const GroupDatum& d) { return d.coset_reps; }

/// Candidates for the Serre-duality twist; bggkit picks one by the exchange check.
inline std::array<Weight, 2> duality_twist_candidates(const GroupDatum& d) {
    Weight base = d.two_rho_gen - d.two_rho_levi_gen;
    return {base, -base};
}

/// Simple reflection of the Levi when its derived group has rank one.
inline int levi_root(const GroupDatum& d) {
    if (d.levi_simple.size() != 1) throw std::invalid_argument("Levi of semisimple rank one required");
    return d.levi_simple.front();
}

}  // namespace modbgg
