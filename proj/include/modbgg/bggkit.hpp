#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "alcove.hpp"
#include "groth.hpp"
#include "rootdata.hpp"

namespace modbgg {

enum class DiffKind { Zero, UniqueNonzero, Theta, Unspecified };

inline std::string diff_kind_name(DiffKind k) {
    switch (k) {
        case DiffKind::Zero: return "zero";
        case DiffKind::UniqueNonzero: return "unique_nonzero";
        case DiffKind::Theta: return "theta";
        case DiffKind::Unspecified: return "unspecified";
    }
    return "?";
}

/// Annotation on the map from degree from_degree to from_degree+1 (or on a composite through it).
struct Differential {
    int from_degree = 0;
    DiffKind kind = DiffKind::Unspecified;
    std::optional<VermaClass> source, target;
    std::string note;
};

/// Classes sharing a layer are filtration pieces whose relative order is left open.
using Layer = std::vector<VermaClass>;

struct Term {
    std::vector<Layer> layers;  // earlier (sub) layers first

    std::vector<VermaClass> classes() const {
        std::vector<VermaClass> out;
        for (const auto& l : layers) out.insert(out.end(), l.begin(), l.end());
        return out;
    }
    bool empty() const {
        for (const auto& l : layers)
            if (!l.empty()) return false;
        return true;
    }
};

/// Complex of filtered Verma-class terms in degrees 0..top_degree.
struct FilteredComplex {
    int top_degree = 0;
    std::vector<Term> terms;
    std::vector<Differential> differentials;

    static FilteredComplex empty_of(int d) {
        FilteredComplex c;
        c.top_degree = d;
        c.terms.resize(d + 1);
        return c;
    }
    FilteredComplex& put(int degree, std::vector<Layer> layers) {
        terms.at(degree).layers = std::move(layers);
        return *this;
    }
};

struct FiltrationSpec {
    std::string group;
    std::vector<std::pair<std::string, FilteredComplex>> pieces;  // from the deepest piece outward

    const FilteredComplex& piece(const std::string& name) const {
        for (const auto& [n, c] : pieces)
            if (n == name) return c;
        throw std::out_of_range("no filtration piece named " + name);
    }
    /// The whole complex: per degree, the pieces' layers concatenated in filtration order.
    FilteredComplex total() const {
        if (pieces.empty()) return {};
        FilteredComplex t = FilteredComplex::empty_of(pieces.front().second.top_degree);
        for (const auto& [n, c] : pieces) {
            for (int i = 0; i <= t.top_degree; ++i)
                for (const auto& l : c.terms[i].layers)
                    if (!l.empty()) t.terms[i].layers.push_back(l);
            t.differentials.insert(t.differentials.end(), c.differentials.begin(), c.differentials.end());
        }
        return t;
    }
};

/// Alternating sum of classes; the top degree (the one surjecting onto the resolved module) counts +.
inline KElement euler_characteristic(const FilteredComplex& c) {
    KElement k;
    for (int i = 0; i <= c.top_degree; ++i)
        for (const auto& cls : c.terms[i].classes()) k.add(cls, (c.top_degree - i) % 2 ? -1 : 1);
    return k;
}

inline KElement euler_characteristic(const FiltrationSpec& f) {
    KElement k;
    for (const auto& [n, c] : f.pieces) k += euler_characteristic(c);
    return k;
}

inline VermaClass dual_class(const GroupDatum& d, const Weight& twist, const VermaClass& c) {
    return {c.kind, twist - d.weyl[d.w0_levi](c.weight)};
}

/// Degrees reversed, filtration order reversed, classes sent to -w_{0,M} x + twist.
inline FilteredComplex serre_dual(const GroupDatum& d, const Weight& twist, const FilteredComplex& c) {
    FilteredComplex out = FilteredComplex::empty_of(c.top_degree);
    for (int i = 0; i <= c.top_degree; ++i) {
        auto& layers = out.terms[c.top_degree - i].layers;
        for (auto it = c.terms[i].layers.rbegin(); it != c.terms[i].layers.rend(); ++it) {
            Layer l;
            for (const auto& cls : *it) l.push_back(dual_class(d, twist, cls));
            layers.push_back(std::move(l));
        }
    }
    for (const auto& df : c.differentials) {
        Differential r{c.top_degree - df.from_degree - 1, df.kind, std::nullopt, std::nullopt, df.note};
        if (df.target) r.source = dual_class(d, twist, *df.target);
        if (df.source) r.target = dual_class(d, twist, *df.source);
        if (!r.note.empty()) r.note = "dual of " + r.note;
        out.differentials.push_back(std::move(r));
    }
    return out;
}

inline Weight negate_w0(const GroupDatum& d, const Weight& x) { return -d.weyl[d.w0](x); }

/// The twist among +-(2rho - 2rho_M) sending W(lambda1^vee) to the last member of the family
/// (nu1 for GL3, epsilon1 for GSp4).
inline Weight duality_twist(const GroupDatum& d, Int p, const Weight& lambda0) {
    auto fam = orbit_family(d, p, lambda0);
    auto dual_fam = orbit_family(d, p, negate_w0(d, lambda0));
    const Weight target = is_gl3(d) ? fam["nu1"] : fam["epsilon1"];
    if (dual_fam["lambda1"] != negate_w0(d, fam["lambda1"]))
        throw std::logic_error("-w0 does not carry the family of lambda0 to its dual family");
    for (const auto& t : duality_twist_candidates(d))
        if (dual_class(d, t, ver_w(dual_fam["lambda1"])).weight == target) return t;
    throw std::logic_error("no duality twist passes the exchange check");
}

struct ValidationIssue {
    int degree;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool clean() const { return issues.empty(); }
};

/// Ordering: no class in an earlier layer lies strictly below a class in a later layer.
/// Linkage: theta and unique_nonzero maps connect classes with source linked up to target.
inline ValidationReport validate_filtration(const GroupDatum& d, Int p, const FilteredComplex& c) {
    ValidationReport r;
    for (int deg = 0; deg <= c.top_degree; ++deg) {
        const auto& ls = c.terms[deg].layers;
        for (std::size_t i = 0; i < ls.size(); ++i)
            for (std::size_t j = i + 1; j < ls.size(); ++j)
                for (const auto& x : ls[i])
                    for (const auto& y : ls[j])
                        if (x.weight != y.weight && leq_order(d, x.weight, y.weight))
                            r.issues.push_back({deg, "ordering: " + x.str() + " precedes higher " + y.str()});
    }
    for (const auto& df : c.differentials) {
        if (df.kind != DiffKind::Theta && df.kind != DiffKind::UniqueNonzero) continue;
        if (!df.source || !df.target) {
            r.issues.push_back({df.from_degree, "linkage: " + diff_kind_name(df.kind) + " map without endpoints"});
            continue;
        }
        if (!linkage_up(d, p, df.source->weight, df.target->weight))
            r.issues.push_back({df.from_degree, "linkage: no chain " + df.source->str() + " up to " + df.target->str()});
    }
    return r;
}

namespace detail {

inline Differential theta(int from, const VermaClass& s, const VermaClass& t, std::string note) {
    return {from, DiffKind::Theta, s, t, std::move(note)};
}

inline void require_family(const GroupDatum& d, bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string(what) + " is not available for " + d.name());
}

inline FilteredComplex gl3_top(const OrbitFamily& f) {
    auto c = FilteredComplex::empty_of(2);
    c.put(1, {{ver_w(f["lambda0"])}}).put(2, {{ver_w(f["lambda1"])}});
    c.differentials.push_back(theta(1, ver_w(f["lambda0"]), ver_w(f["lambda1"]), "theta(lambda0 up lambda1)"));
    return c;
}

inline FilteredComplex gsp4_c1_top(const OrbitFamily& f) {
    auto c = FilteredComplex::empty_of(3);
    c.put(2, {{ver_w(f["lambda0"])}}).put(3, {{ver_w(f["lambda1"])}});
    c.differentials.push_back(theta(2, ver_w(f["lambda0"]), ver_w(f["lambda1"]), "theta(lambda0 up lambda1)"));
    return c;
}

inline FilteredComplex gsp4_c1_gr2(const OrbitFamily& f) {
    auto c = FilteredComplex::empty_of(3);
    c.put(2, {{ver_l(f["mu1"])}});
    return c;
}

inline FilteredComplex gsp4_c2_top(const OrbitFamily& f) {
    auto c = FilteredComplex::empty_of(3);
    c.put(2, {{ver_w(f["lambda1"])}}).put(3, {{ver_w(f["lambda2"])}, {ver_w(f["lambda0"])}});
    c.differentials.push_back(theta(2, ver_w(f["lambda1"]), ver_w(f["lambda2"]), "theta(lambda1 up lambda2)"));
    return c;
}

inline FilteredComplex gsp4_c2_gr2(const OrbitFamily& f) {
    auto c = FilteredComplex::empty_of(3);
    c.put(1, {{ver_l(f["mu1"]), ver_w(f["mu0"])}});
    c.put(2, {{ver_l(f["mu2"]), ver_w(f["lambda0"])}, {ver_w(f["mu0"])}});
    c.differentials.push_back({1, DiffKind::Unspecified, std::nullopt, std::nullopt, "V1 -> V2"});
    c.differentials.push_back({1, DiffKind::Zero, std::nullopt, ver_w(f["mu0"]), "composite V1 -> V2 -> W(mu0) quotient"});
    return c;
}

inline OrbitFamily checked_family(const GroupDatum& d, Int p, const Weight& lambda0) {
    auto sig = classify(d, p, lambda0);
    if (!sig.regular()) throw std::invalid_argument("wall weight " + lambda0.str());
    return orbit_family(d, p, lambda0);
}

}  // namespace detail

/// Filtration F2 subset F1 subset F0 of the resolution of L(lambda1), GL3 with (2,1) parabolic.
inline FiltrationSpec build_bgg_gl3(const GroupDatum& d, Int p, const Weight& lambda0) {
    detail::require_family(d, is_gl3(d), "the GL3 construction");
    auto f = detail::checked_family(d, p, lambda0);
    auto fd = orbit_family(d, p, negate_w0(d, lambda0));
    const Weight twist = duality_twist(d, p, lambda0);
    auto gr1 = FilteredComplex::empty_of(2);
    gr1.put(1, {{ver_l(f["mu1"])}});
    return {d.name(),
            {{"F2", detail::gl3_top(f)}, {"gr1", gr1}, {"gr0", serre_dual(d, twist, detail::gl3_top(fd))}}};
}

inline FiltrationSpec build_bgg_gsp4_c1(const GroupDatum& d, Int p, const Weight& lambda0) {
    detail::require_family(d, is_gsp4(d), "the GSp4 construction");
    auto f = detail::checked_family(d, p, lambda0);
    auto fd = orbit_family(d, p, negate_w0(d, lambda0));
    const Weight twist = duality_twist(d, p, lambda0);
    return {d.name(),
            {{"F3", detail::gsp4_c1_top(f)},
             {"gr2", detail::gsp4_c1_gr2(f)},
             {"gr1", serre_dual(d, twist, detail::gsp4_c1_gr2(fd))},
             {"gr0", serre_dual(d, twist, detail::gsp4_c1_top(fd))}}};
}

inline FiltrationSpec build_bgg_gsp4_c2(const GroupDatum& d, Int p, const Weight& lambda0) {
    detail::require_family(d, is_gsp4(d), "the GSp4 construction");
    auto f = detail::checked_family(d, p, lambda0);
    if (named_alcove(d, p, f["lambda2"]) != 2)
        throw std::invalid_argument("lambda2 of " + lambda0.str() + " is not in the open alcove C2");
    auto fd = orbit_family(d, p, negate_w0(d, lambda0));
    const Weight twist = duality_twist(d, p, lambda0);
    return {d.name(),
            {{"F3", detail::gsp4_c2_top(f)},
             {"gr2", detail::gsp4_c2_gr2(f)},
             {"gr1", serre_dual(d, twist, detail::gsp4_c2_gr2(fd))},
             {"gr0", serre_dual(d, twist, detail::gsp4_c2_top(fd))}}};
}

}  // namespace modbgg
