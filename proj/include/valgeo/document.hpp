#pragma once

#include <array>
#include <functional>

#include <json.hpp>

#include "valgeo/endpoint.hpp"
#include "valgeo/grid.hpp"

namespace valgeo {

using Json = nlohmann::json;

namespace detail {

inline Rat rat_from_json(const Json& j, const char* what) {
    try {
        if (j.is_string()) return rat_parse(j.get<std::string>());
        if (j.is_number_integer()) return Rat(j.get<long long>());
    } catch (const Error& e) {
        throw MalformedDocument(std::string(what) + ": " + e.what());
    }
    throw MalformedDocument(std::string(what) + ": rationals must be \"p/q\" strings or integers");
}

inline double number_from_json(const Json& j, const char* what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) return to_double(rat_from_json(j, what));
    throw MalformedDocument(std::string(what) + ": expected a number");
}

inline std::string subset_key(const std::vector<int>& axes) {
    std::string s = "{";
    for (std::size_t i = 0; i < axes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(axes[i] + 1);
    }
    return s + "}";
}

inline std::vector<int> parse_subset_key(const std::string& key, int n) {
    if (key.size() < 2 || key.front() != '{' || key.back() != '}')
        throw MalformedDocument("bad subset key: " + key);
    std::vector<int> axes;
    std::string inner = key.substr(1, key.size() - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
        std::size_t comma = inner.find(',', pos);
        if (comma == std::string::npos) comma = inner.size();
        const std::string tok = inner.substr(pos, comma - pos);
        try {
            const int axis = std::stoi(tok) - 1;
            if (axis < 0 || axis >= n) throw MalformedDocument("subset axis out of range: " + tok);
            axes.push_back(axis);
        } catch (const std::invalid_argument&) {
            throw MalformedDocument("bad subset element: " + tok);
        }
        pos = comma + 1;
    }
    std::sort(axes.begin(), axes.end());
    return axes;
}

/// "3/2*a1*a2" -> coefficient 3/2 for the monomial over the given axes.
inline Rat parse_certified(const std::string& s, const std::vector<int>& axes) {
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t star = s.find('*', pos);
        if (star == std::string::npos) star = s.size();
        parts.push_back(s.substr(pos, star - pos));
        pos = star + 1;
    }
    if (parts.empty()) throw MalformedDocument("empty certified form");
    Rat c;
    try {
        c = rat_parse(parts[0]);
    } catch (const Error& e) {
        throw MalformedDocument(std::string("certified coefficient: ") + e.what());
    }
    if (parts.size() - 1 != axes.size())
        throw MalformedDocument("certified form arity does not match the subset");
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i] != "a" + std::to_string(axes[i - 1] + 1))
            throw MalformedDocument("certified factor mismatch: " + parts[i]);
    return c;
}

inline std::string certified_string(const Rat& c, const std::vector<int>& axes) {
    std::string s = rat_str(c);
    for (int a : axes) s += "*a" + std::to_string(a + 1);
    return s;
}

} // namespace detail

// ---------------------------------------------------------------------------
// boxes and planar bodies

inline Box box_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("box") || !doc["box"].is_array())
        throw MalformedDocument("box document needs a \"box\" array");
    std::vector<std::pair<Rat, Rat>> ivals;
    for (const Json& pair : doc["box"]) {
        if (!pair.is_array() || pair.size() != 2)
            throw MalformedDocument("box intervals are [lo, hi] pairs");
        ivals.emplace_back(detail::rat_from_json(pair[0], "box lo"),
                           detail::rat_from_json(pair[1], "box hi"));
    }
    try {
        return Box(std::move(ivals));
    } catch (const Error& e) {
        throw MalformedDocument(std::string("bad box: ") + e.what());
    }
}

inline Json box_to_json(const Box& b) {
    Json arr = Json::array();
    for (const auto& [lo, hi] : b.intervals()) arr.push_back({rat_str(lo), rat_str(hi)});
    return Json{{"box", arr}};
}

/// Composable body tree: polygon, disk, box, Minkowski sum, half-plane clip.
inline ArcGon body_from_json(const Json& doc) {
    if (!doc.is_object() || doc.size() != 1)
        throw MalformedDocument("body document must be a single-key object");
    try {
        if (doc.contains("polygon")) {
            std::vector<Vec2> pts;
            for (const Json& p : doc["polygon"]) {
                if (!p.is_array() || p.size() != 2) throw MalformedDocument("polygon points are [x,y]");
                pts.push_back({detail::number_from_json(p[0], "x"), detail::number_from_json(p[1], "y")});
            }
            return ArcGon::from_polygon(pts);
        }
        if (doc.contains("disk")) {
            const Json& d = doc["disk"];
            if (!d.contains("c") || !d.contains("r")) throw MalformedDocument("disk needs c and r");
            return ArcGon::disk({detail::number_from_json(d["c"][0], "cx"),
                                 detail::number_from_json(d["c"][1], "cy")},
                                detail::number_from_json(d["r"], "r"));
        }
        if (doc.contains("box")) return box_to_arcgon(box_from_json(doc));
        if (doc.contains("sum")) {
            const Json& s = doc["sum"];
            if (!s.is_array() || s.size() < 2) throw MalformedDocument("sum needs two bodies");
            ArcGon acc = body_from_json(s[0]);
            for (std::size_t i = 1; i < s.size(); ++i) acc = minkowski_sum(acc, body_from_json(s[i]));
            return acc;
        }
        if (doc.contains("clip")) {
            const Json& c = doc["clip"];
            if (!c.contains("body") || !c.contains("u") || !c.contains("t"))
                throw MalformedDocument("clip needs body, u, t");
            return clip_halfplane(body_from_json(c["body"]),
                                  {detail::number_from_json(c["u"][0], "ux"),
                                   detail::number_from_json(c["u"][1], "uy")},
                                  detail::number_from_json(c["t"], "t"));
        }
    } catch (const MalformedDocument&) {
        throw;
    } catch (const Error& e) {
        throw MalformedDocument(std::string("bad body: ") + e.what());
    }
    throw MalformedDocument("unknown body kind: " + doc.begin().key());
}

// ---------------------------------------------------------------------------
// component families

inline Json family_to_json(const ComponentFamily& fam) {
    Json comps = Json::object();
    for (unsigned mask = 0; mask < fam.subset_count(); ++mask) {
        const Component& g = fam.comp(mask);
        Json entry = Json::object();
        if (g.certified) entry["certified"] = detail::certified_string(*g.certified, g.axes);
        Json samples = Json::array();
        for (const auto& [pt, val] : g.samples) {
            Json point = Json::array();
            for (const Rat& x : pt) point.push_back(rat_str(x));
            samples.push_back(Json::array({point, rat_str(val)}));
        }
        if (!samples.empty() || !g.certified) entry["samples"] = samples;
        comps[detail::subset_key(g.axes)] = entry;
    }
    return Json{{"n", fam.n()}, {"components", comps}};
}

inline ComponentFamily family_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("components"))
        throw MalformedDocument("component family needs n and components");
    const int n = doc["n"].get<int>();
    if (n < 1 || n > 16) throw MalformedDocument("family dimension out of range");
    ComponentFamily fam(n);
    for (const auto& [key, entry] : doc["components"].items()) {
        const std::vector<int> axes = detail::parse_subset_key(key, n);
        unsigned mask = 0;
        for (int a : axes) mask |= 1u << a;
        Component& g = fam.comp(mask);
        if (g.axes != axes) throw MalformedDocument("inconsistent subset key: " + key);
        if (entry.contains("certified"))
            g.certified = detail::parse_certified(entry["certified"].get<std::string>(), axes);
        if (entry.contains("samples")) {
            for (const Json& s : entry["samples"]) {
                if (!s.is_array() || s.size() != 2) throw MalformedDocument("samples are [point, value]");
                std::vector<Rat> pt;
                for (const Json& x : s[0]) pt.push_back(detail::rat_from_json(x, "sample point"));
                if (pt.size() != axes.size()) throw MalformedDocument("sample arity mismatch in " + key);
                g.samples[pt] = detail::rat_from_json(s[1], "sample value");
            }
        }
    }
    if (!fam.comp(0).certified && fam.comp(0).samples.empty()) fam.set_constant(Rat(0));
    return fam;
}

// ---------------------------------------------------------------------------
// valuations

inline SphereFunction sphere_function_from_json(const Json& doc) {
    if (doc.contains("piecewise")) {
        // triples [theta0, theta1, value] tiling the circle
        std::vector<std::array<double, 3>> triples;
        for (const Json& t : doc["piecewise"]) {
            if (!t.is_array() || t.size() != 3)
                throw MalformedDocument("piecewise pieces are [theta0, theta1, value]");
            triples.push_back({detail::number_from_json(t[0], "theta0"),
                               detail::number_from_json(t[1], "theta1"),
                               detail::number_from_json(t[2], "value")});
        }
        if (triples.empty()) throw MalformedDocument("piecewise needs pieces");
        std::sort(triples.begin(), triples.end(),
                  [](const auto& a, const auto& b) { return a[0] < b[0]; });
        std::vector<std::pair<double, double>> pieces;
        for (std::size_t i = 0; i < triples.size(); ++i) {
            const double expected_end =
                (i + 1 < triples.size()) ? triples[i + 1][0] : triples.front()[0] + kTwoPi;
            if (std::abs(triples[i][1] - expected_end) > 1e-9)
                throw MalformedDocument("piecewise pieces must tile [0, 2pi)");
            pieces.emplace_back(triples[i][0], triples[i][2]);
        }
        try {
            return SphereFunction::piecewise(std::move(pieces));
        } catch (const Error& e) {
            throw MalformedDocument(std::string("bad piecewise function: ") + e.what());
        }
    }
    if (doc.contains("trig")) {
        const Json& t = doc["trig"];
        std::vector<double> a, b;
        if (t.contains("a"))
            for (const Json& x : t["a"]) a.push_back(detail::number_from_json(x, "a"));
        if (t.contains("b"))
            for (const Json& x : t["b"]) b.push_back(detail::number_from_json(x, "b"));
        return SphereFunction::trig(std::move(a), std::move(b));
    }
    throw MalformedDocument("sphere function needs piecewise or trig");
}

inline Json sphere_function_to_json(const SphereFunction& f) {
    if (f.is_trig()) return Json{{"trig", {{"a", f.cos_coeffs()}, {"b", f.sin_coeffs()}}}};
    Json arr = Json::array();
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const double end = (i + 1 < pieces.size()) ? pieces[i + 1].first : pieces.front().first + kTwoPi;
        arr.push_back({pieces[i].first, end, pieces[i].second});
    }
    return Json{{"piecewise", arr}};
}

inline ValuationSpec valuation_from_json(const Json& doc) {
    if (!doc.is_object() || doc.size() != 1)
        throw MalformedDocument("valuation document must be a single-key object");
    const std::string kind = doc.begin().key();
    if (kind == "vol") return ValuationSpec::vol();
    if (kind == "euler") return ValuationSpec::euler();
    if (kind == "perimeter") return ValuationSpec::perimeter();
    if (kind == "phi_sing") return ValuationSpec::phi_sing();
    if (kind == "phi_l") return ValuationSpec::phi_l(detail::number_from_json(doc["phi_l"], "phi_l"));
    if (kind == "phi_f") return ValuationSpec::phi_f(sphere_function_from_json(doc["phi_f"]));
    if (kind == "composite") return ValuationSpec::composite(family_from_json(doc["composite"]));
    if (kind == "lincomb") {
        std::vector<std::pair<Rat, ValuationSpec>> terms;
        for (const Json& t : doc["lincomb"]) {
            if (!t.is_array() || t.size() != 2)
                throw MalformedDocument("lincomb terms are [coef, valuation]");
            terms.emplace_back(detail::rat_from_json(t[0], "lincomb coef"), valuation_from_json(t[1]));
        }
        if (terms.empty()) throw MalformedDocument("lincomb needs terms");
        return ValuationSpec::lincomb(std::move(terms));
    }
    throw MalformedDocument("unknown valuation kind: " + kind);
}

// ---------------------------------------------------------------------------
// box-valuation oracles (polynomials in the side lengths, named builtins,
// or reconstructed component families)

struct BoxOracleDoc {
    BoxValuation oracle;
    int n = 0;
};

inline BoxOracleDoc box_oracle_from_json(const Json& doc) {
    if (!doc.is_object()) throw MalformedDocument("box valuation document must be an object");
    if (doc.contains("box_poly")) {
        const Json& p = doc["box_poly"];
        if (!p.contains("n") || !p.contains("monomials"))
            throw MalformedDocument("box_poly needs n and monomials");
        const int n = p["n"].get<int>();
        if (n < 1 || n > 16) throw MalformedDocument("box_poly dimension out of range");
        struct Monomial {
            Rat coef;
            std::vector<int> powers;
        };
        auto monomials = std::make_shared<std::vector<Monomial>>();
        for (const Json& m : p["monomials"]) {
            if (!m.contains("c") || !m.contains("powers"))
                throw MalformedDocument("monomials need c and powers");
            Monomial mono;
            mono.coef = detail::rat_from_json(m["c"], "monomial coefficient");
            for (const Json& e : m["powers"]) mono.powers.push_back(e.get<int>());
            if (static_cast<int>(mono.powers.size()) != n)
                throw MalformedDocument("monomial powers arity mismatch");
            monomials->push_back(std::move(mono));
        }
        BoxValuation v{[monomials, n](const Box& b) {
                           Rat total(0);
                           for (const auto& m : *monomials) {
                               Rat term = m.coef;
                               for (int i = 0; i < n; ++i)
                                   term *= rat_pow(b.side(i), static_cast<unsigned>(m.powers[i]));
                               total += term;
                           }
                           return total;
                       },
                       true};
        return {std::move(v), n};
    }
    if (doc.contains("box_builtin")) {
        const std::string name = doc["box_builtin"].get<std::string>();
        const int n = doc.value("n", 2);
        if (name == "vol") return {volume_valuation(), n};
        if (name == "euler") return {euler_valuation(), n};
        throw MalformedDocument("unknown box builtin: " + name);
    }
    if (doc.contains("components") || doc.contains("n")) {
        ComponentFamily fam = family_from_json(doc);
        const int n = fam.n();
        return {reconstruct(fam), n};
    }
    throw MalformedDocument("unknown box valuation document");
}

// ---------------------------------------------------------------------------
// endpoint families (sampled export)

/// Endpoint family loaded back from its sampled document form: members are
/// lookup tables, so reconstruction is available exactly at sampled points.
class SampledEndpointFamily {
  public:
    int n = 0;
    Rat bound{0};
    std::map<std::vector<int>, std::map<std::vector<Rat>, Rat>> members;

    Rat member(const std::vector<int>& idx, const std::vector<Rat>& x) const {
        auto mit = members.find(idx);
        if (mit == members.end()) throw ComponentUndefinedAt("unknown endpoint member");
        auto it = mit->second.find(x);
        if (it == mit->second.end())
            throw ComponentUndefinedAt("endpoint member not sampled at requested point");
        return it->second;
    }

    Rat reconstruct(const Box& b) const {
        if (b.ambient_dim() != n) throw DimensionMismatch("endpoint family dimension differs");
        Rat total(0);
        std::vector<int> idx(n);
        std::vector<Rat> x(n);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            for (int i = 0; i < n; ++i) {
                const bool upper = (mask >> i & 1u) != 0;
                idx[i] = upper ? 2 : 1;
                x[i] = upper ? b.hi(i) : b.lo(i);
            }
            total += member(idx, x);
        }
        return total;
    }
};

inline SampledEndpointFamily endpoint_family_from_json(const Json& doc) {
    if (!doc.is_object() || !doc.contains("endpoints"))
        throw MalformedDocument("endpoint family document needs an \"endpoints\" object");
    const Json& e = doc["endpoints"];
    if (!e.contains("n") || !e.contains("M") || !e.contains("members"))
        throw MalformedDocument("endpoints need n, M and members");
    SampledEndpointFamily fam;
    fam.n = e["n"].get<int>();
    if (fam.n < 1 || fam.n > 16) throw MalformedDocument("endpoint dimension out of range");
    fam.bound = detail::rat_from_json(e["M"], "M");
    for (const auto& [key, samples] : e["members"].items()) {
        if (key.size() != static_cast<std::size_t>(2 * fam.n + 1) || key.front() != '(' ||
            key.back() != ')')
            throw MalformedDocument("bad endpoint member key: " + key);
        std::vector<int> idx;
        for (int i = 0; i < fam.n; ++i) {
            const char c = key[1 + 2 * i];
            if (c != '1' && c != '2') throw MalformedDocument("bad endpoint member key: " + key);
            idx.push_back(c - '0');
        }
        auto& table = fam.members[idx];
        for (const Json& s : samples) {
            if (!s.is_array() || s.size() != 2)
                throw MalformedDocument("endpoint samples are [point, value]");
            std::vector<Rat> pt;
            for (const Json& x : s[0]) pt.push_back(detail::rat_from_json(x, "endpoint point"));
            if (static_cast<int>(pt.size()) != fam.n)
                throw MalformedDocument("endpoint sample arity mismatch");
            table[pt] = detail::rat_from_json(s[1], "endpoint value");
        }
    }
    return fam;
}

inline Json endpoint_family_to_json(const EndpointFamily& fam, const std::vector<Rat>& axis_grid) {
    Json members = Json::object();
    const int n = fam.n();
    std::vector<int> idx(n, 1);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        for (int i = 0; i < n; ++i) idx[i] = (mask >> i & 1u) ? 2 : 1;
        std::string key = "(";
        for (int i = 0; i < n; ++i) key += (i ? "," : "") + std::to_string(idx[i]);
        key += ")";
        Json samples = Json::array();
        std::vector<Rat> point(n);
        std::function<void(int)> rec = [&](int depth) {
            if (depth == n) {
                Json pt = Json::array();
                for (const Rat& x : point) pt.push_back(rat_str(x));
                samples.push_back(Json::array({pt, rat_str(fam.member(idx, point))}));
                return;
            }
            for (const Rat& x : axis_grid) {
                if (rat_abs(x) > fam.coordinate_bound()) continue;
                point[depth] = x;
                rec(depth + 1);
            }
        };
        rec(0);
        members[key] = samples;
    }
    return Json{{"endpoints",
                 {{"n", n}, {"M", rat_str(fam.coordinate_bound())}, {"members", members}}}};
}

} // namespace valgeo
