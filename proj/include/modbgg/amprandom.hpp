#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ampcalc.hpp"

namespace modbgg::amp {

using Matrix = std::vector<std::vector<long long>>;  // rows x cols

inline Matrix zeros(int rows, int cols) { return Matrix(rows, std::vector<long long>(cols, 0)); }

inline Matrix multiply(const Matrix& a, const Matrix& b, int rows, int inner, int cols) {
    Matrix c = zeros(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < inner; ++k)
            if (a[i][k])
                for (int j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// Rank over Q by fraction-free (Bareiss) elimination.
inline int rank(Matrix m, int rows, int cols) {
    std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
    int r = 0;
    __int128 prev = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Cochain complex of free Z-modules in degrees 0..len-1; diff[i] maps degree i to i+1.
struct IntComplex {
    std::vector<int> ranks;
    std::vector<Matrix> diff;  // diff[i] is ranks[i+1] x ranks[i]
    std::vector<int> planted;  // Betti numbers of the elementary pieces before scrambling

    int length() const { return static_cast<int>(ranks.size()); }
    int diff_rank(int i) const {
        if (i < 0 || i + 1 >= length()) return 0;
        return rank(diff[i], ranks[i + 1], ranks[i]);
    }
    int betti(int i) const { return ranks[i] - diff_rank(i) - diff_rank(i - 1); }
};

namespace detail {

/// Random unimodular matrix (product of elementary row operations) together with its inverse.
inline std::pair<Matrix, Matrix> unimodular(int n, std::mt19937_64& rng) {
    Matrix u = zeros(n, n), inv = zeros(n, n);
    for (int i = 0; i < n; ++i) u[i][i] = inv[i][i] = 1;
    if (n < 2) return {u, inv};
    std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2), steps(1, 2 * n);
    const int k = steps(rng);
    for (int s = 0; s < k; ++s) {
        int i = pick(rng), j = pick(rng);
        if (i == j) continue;
        long long c = coef(rng);
        // u <- E u with E = I + c e_ij; inv <- inv E^{-1}
        for (int col = 0; col < n; ++col) u[i][col] += c * u[j][col];
        for (int row = 0; row < n; ++row) inv[row][j] -= c * inv[row][i];
    }
    return {u, inv};
}

}  // namespace detail

/// Direct sum of elementary complexes (Z[-i], Z --1--> Z, Z --k--> Z) with ranks at most max_rank,
/// each term then conjugated by a random unimodular change of basis.
inline IntComplex random_complex(std::mt19937_64& rng, int max_length = 6, int max_rank = 5) {
    std::uniform_int_distribution<int> len_dist(1, max_length), kind(0, 3), mult(2, 3);
    const int len = len_dist(rng);
    IntComplex c;
    c.ranks.assign(len, 0);
    c.planted.assign(len, 0);
    struct Piece {
        int degree, kind;
        long long factor;
    };
    std::vector<Piece> pieces;
    for (int attempt = 0; attempt < 4 * len; ++attempt) {
        int deg = std::uniform_int_distribution<int>(0, len - 1)(rng);
        int k = kind(rng);
        if (k == 0) {
            if (c.ranks[deg] + 1 > max_rank) continue;
            c.ranks[deg] += 1;
            c.planted[deg] += 1;
            pieces.push_back({deg, 0, 0});
        } else if (k <= 3 && deg + 1 < len) {
            if (k == 3) continue;  // leave room: about one in four draws adds nothing
            if (c.ranks[deg] + 1 > max_rank || c.ranks[deg + 1] + 1 > max_rank) continue;
            c.ranks[deg] += 1;
            c.ranks[deg + 1] += 1;
            pieces.push_back({deg, k, k == 1 ? 1 : static_cast<long long>(mult(rng))});
        }
    }
    // place basis vectors
    std::vector<int> fill(len, 0);
    c.diff.clear();
    for (int i = 0; i + 1 < len; ++i) c.diff.push_back(zeros(c.ranks[i + 1], c.ranks[i]));
    for (const auto& p : pieces) {
        if (p.kind == 0) {
            fill[p.degree]++;
        } else {
            int src = fill[p.degree]++, dst = fill[p.degree + 1]++;
            c.diff[p.degree][dst][src] = p.factor;
        }
    }
    std::vector<std::pair<Matrix, Matrix>> change;
    for (int i = 0; i < len; ++i) change.push_back(detail::unimodular(c.ranks[i], rng));
    for (int i = 0; i + 1 < len; ++i) {
        Matrix t = multiply(change[i + 1].first, c.diff[i], c.ranks[i + 1], c.ranks[i + 1], c.ranks[i]);
        c.diff[i] = multiply(t, change[i].second, c.ranks[i + 1], c.ranks[i], c.ranks[i]);
    }
    return c;
}

struct SoundnessCase {
    bool sound = true;
    std::string detail;
};

/// Feeds term supports, stupid-truncation triangles, two-term pieces and true map facts to a
/// session, then checks derived supports contain the true ones and derived nonvanishing is real.
inline SoundnessCase check_soundness(const IntComplex& k) {
    const int len = k.length();
    Script s;
    s.name = "random";
    s.lo = -2;
    s.hi = len + 2;
    int id = 0;
    auto fact = [&](Fact f) {
        f.id = "r" + std::to_string(id++);
        s.facts.push_back(std::move(f));
    };
    auto X = [](int i) { return "X" + std::to_string(i); };
    auto Q = [](int i) { return "Q" + std::to_string(i); };
    auto S = [](int i) { return i == 0 ? std::string("K") : "S" + std::to_string(i); };
    auto P = [](int i) { return "P" + std::to_string(i); };
    std::map<std::string, Degrees> truth;

    for (int i = 0; i < len; ++i) {
        Fact sup;
        sup.kind = FactKind::Support;
        sup.object = X(i);
        if (k.ranks[i] > 0) sup.degrees = {0};
        fact(sup);
        if (k.ranks[i] > 0) {
            Fact nz;
            nz.kind = FactKind::Nonzero;
            nz.object = X(i);
            nz.degree = 0;
            fact(nz);
        }
        truth[X(i)] = k.ranks[i] > 0 ? Degrees{0} : Degrees{};
        Fact q;
        q.kind = FactKind::Filtration;
        q.object = Q(i);
        q.terms = {{X(i), i}};
        fact(q);
        truth[Q(i)] = k.ranks[i] > 0 ? Degrees{i} : Degrees{};
    }
    // sigma_{>=j} K for each j, with its cohomology
    for (int j = 0; j < len; ++j) {
        Fact f;
        f.kind = FactKind::Filtration;
        f.object = S(j);
        for (int i = j; i < len; ++i) f.terms.emplace_back(X(i), i);
        fact(f);
        Degrees t;
        for (int i = j; i < len; ++i) {
            int h = i == j ? k.ranks[i] - k.diff_rank(i) : k.betti(i);
            if (h > 0) t.insert(i);
        }
        truth[S(j)] = t;
        if (j + 1 < len) {
            Fact tri;
            tri.kind = FactKind::Triangle;
            tri.triangle = {S(j + 1), S(j), Q(j)};
            fact(tri);
        }
    }
    for (int i = 0; i + 1 < len; ++i) {
        Fact f;
        f.kind = FactKind::Filtration;
        f.object = P(i);
        f.terms = {{X(i), i}, {X(i + 1), i + 1}};
        fact(f);
        const int r = k.diff_rank(i);
        if (r == k.ranks[i]) {
            Fact m;
            m.kind = FactKind::Map;
            m.object = P(i);
            m.degree = 0;
            m.property = MapProperty::Injective;
            fact(m);
        }
        if (r == k.ranks[i + 1]) {
            Fact m;
            m.kind = FactKind::Map;
            m.object = P(i);
            m.degree = 0;
            m.property = MapProperty::Surjective;
            fact(m);
        }
        Degrees t;
        if (k.ranks[i] - r > 0) t.insert(i);
        if (k.ranks[i + 1] - r > 0) t.insert(i + 1);
        truth[P(i)] = t;
    }

    Session session = build_session(s);
    SoundnessCase out;
    if (!session.contradictions().empty()) {
        out.sound = false;
        out.detail = session.contradictions().front();
        return out;
    }
    for (const auto& [obj, t] : truth) {
        const Degrees& d = session.support(obj);
        if (!std::includes(d.begin(), d.end(), t.begin(), t.end())) {
            out.sound = false;
            out.detail = "derived supp " + obj + " = " + show(d) + " misses true " + show(t);
            return out;
        }
        const Degrees& nz = session.nonzero(obj);
        if (!std::includes(t.begin(), t.end(), nz.begin(), nz.end())) {
            out.sound = false;
            out.detail = "derived nonzero " + show(nz) + " of " + obj + " exceeds true " + show(t);
            return out;
        }
    }
    return out;
}

}  // namespace modbgg::amp
