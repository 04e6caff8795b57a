#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "alcove.hpp"
#include "rootdata.hpp"

namespace modbgg::svg {

namespace detail {

using Vec = std::array<double, 2>;

inline std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(x) < 0.005 ? 0.0 : x);
    return buf;
}

/// Coefficients (a, b) of a positive coroot in the simple coroots, so <x, gamma^vee> = a u + b v
/// for u, v the simple-coroot pairings of x.
inline std::pair<Int, Int> coroot_coefficients(const GroupDatum& d, int root) {
    const Weight& c1 = d.coroots[d.simple[0]];
    const Weight& c2 = d.coroots[d.simple[1]];
    for (Int a = 0; a <= 4; ++a)
        for (Int b = 0; b <= 4; ++b)
            if (a * c1 + b * c2 == d.coroots[root]) return {a, b};
    throw std::logic_error("coroot outside the simple-coroot cone");
}

inline std::string pretty(const std::string& name) {
    static const std::array<std::pair<const char*, const char*>, 4> greek{
        {{"lambda", "λ"}, {"epsilon", "ε"}, {"mu", "μ"}, {"nu", "ν"}}};
    for (const auto& [latin, g] : greek) {
        std::string l(latin);
        if (name.rfind(l, 0) == 0) return g + name.substr(l.size());
    }
    return name;
}

}  // namespace detail

/// Alcove picture with axes the simple-coroot pairings of x+rho: walls <x+rho, gamma^vee> = np as
/// lines, the lowest alcove shaded, and the orbit family of lambda0 marked and labeled.
inline std::string alcove_diagram(const GroupDatum& d, Int p, const Weight& lambda0) {
    using detail::num;
    const OrbitFamily fam = orbit_family(d, p, lambda0);
    const int s0 = d.simple[0], s1 = d.simple[1];

    Int lo_u = 0, hi_u = p, lo_v = 0, hi_v = p;
    std::vector<std::pair<std::string, detail::Vec>> points;
    for (const auto& [name, w] : fam.members) {
        const Int u = pair_index(d, w + d.rho, s0), v = pair_index(d, w + d.rho, s1);
        points.emplace_back(name, detail::Vec{static_cast<double>(u), static_cast<double>(v)});
        lo_u = std::min(lo_u, u), hi_u = std::max(hi_u, u), lo_v = std::min(lo_v, v), hi_v = std::max(hi_v, v);
    }
    const double pad = 0.15 * static_cast<double>(p);
    const double x0 = static_cast<double>(lo_u) - pad, x1 = static_cast<double>(hi_u) + pad;
    const double y0 = static_cast<double>(lo_v) - pad, y1 = static_cast<double>(hi_v) + pad;
    const double size = 640, scale = size / std::max(x1 - x0, y1 - y0);
    const double width = (x1 - x0) * scale, heightpx = (y1 - y0) * scale;
    auto sx = [&](double x) { return (x - x0) * scale; };
    auto sy = [&](double y) { return heightpx - (y - y0) * scale; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(heightpx)
       << "\" viewBox=\"0 0 " << num(width) << " " << num(heightpx) << "\">\n";
    os << "<title>" << d.name() << " p=" << p << " lambda0=" << lambda0.str()
       << " (axes: pairings of x+rho with the simple coroots)</title>\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    int highest = 0;
    for (int r = 0; r < d.num_roots(); ++r)
        if (height(d, d.coroots[r]) > height(d, d.coroots[highest])) highest = r;
    const auto [ha, hb] = detail::coroot_coefficients(d, highest);
    const double pd = static_cast<double>(p);
    os << "<polygon fill=\"#f3e6b3\" stroke=\"none\" points=\"" << num(sx(0)) << "," << num(sy(0)) << " "
       << num(sx(pd / static_cast<double>(ha))) << "," << num(sy(0)) << " " << num(sx(0)) << ","
       << num(sy(pd / static_cast<double>(hb))) << "\"/>\n";

    // walls a u + b v = n p, clipped to the viewing box
    for (int r = 0; r < d.num_roots(); ++r) {
        const auto [a, b] = detail::coroot_coefficients(d, r);
        const double fa = static_cast<double>(a), fb = static_cast<double>(b);
        const Int nmin = floor_div(std::min({a * lo_u + b * lo_v, a * lo_u + b * hi_v, a * hi_u + b * lo_v}) - p, p);
        const Int nmax = ceil_div(a * hi_u + b * hi_v + p, p);
        for (Int n = nmin; n <= nmax; ++n) {
            const double c = static_cast<double>(n * p);
            double ux0, vx0, ux1, vx1;
            if (b == 0) {
                ux0 = ux1 = c / fa, vx0 = y0, vx1 = y1;
            } else {
                ux0 = x0, ux1 = x1, vx0 = (c - fa * x0) / fb, vx1 = (c - fa * x1) / fb;
            }
            os << "<line x1=\"" << num(sx(ux0)) << "\" y1=\"" << num(sy(vx0)) << "\" x2=\"" << num(sx(ux1))
               << "\" y2=\"" << num(sy(vx1)) << "\" stroke=\"" << (n == 0 ? "#333" : "#aaa")
               << "\" stroke-width=\"" << (n == 0 ? "1.5" : "0.7") << "\"/>\n";
        }
    }
    for (const auto& [name, v] : points) {
        os << "<circle cx=\"" << num(sx(v[0])) << "\" cy=\"" << num(sy(v[1])) << "\" r=\"4\" fill=\"#b22\"/>\n";
        os << "<text x=\"" << num(sx(v[0]) + 6) << "\" y=\"" << num(sy(v[1]) - 6)
           << "\" font-family=\"serif\" font-size=\"14\">" << detail::pretty(name) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace modbgg::svg
