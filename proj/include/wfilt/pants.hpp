// Pants-decomposition graphs: one black vertex per pair of pants, one white
// vertex per curve (internal) or boundary component, with homology classes on
// the internal whites. Provides structural validation, A-move rewriting,
// homology-neutral edits of curve systems, the handlebody invariant
// (Lagrangian span plus monodromy filtration), and bounded A-move
// reachability up to labeled isomorphism.
//
// Graphs carry homology classes, not embedded curves: the class of the curve
// created by an A-move is supplied by the caller (or enumerated from the leg
// classes during reachability search) and checked against the span
// conditions. Boundary whites may serve as legs of a move.
#pragma once

#include "surface.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace wfilt {

struct invalid_graph : error {
    using error::error;
};
struct invalid_move : error {
    using error::error;
};

enum class WhiteKind { internal, boundary };

struct White {
    std::string id;
    WhiteKind kind;
    Vec cls;  // class in H_1(S), empty for boundary whites
};

struct PantsGraph {
    std::size_t genus = 0;
    std::size_t boundary = 0;  // number of boundary components / punctures
    std::vector<std::string> blacks;
    std::vector<White> whites;
    std::vector<std::pair<std::string, std::string>> edges;  // (black id, white id)

    const White& white(const std::string& id) const {
        for (const White& w : whites)
            if (w.id == id) return w;
        throw invalid_graph("no white vertex '" + id + "'");
    }
};

struct ValidationReport {
    bool ok = true;
    std::string diagnostic;
};

namespace detail {

inline std::size_t white_index(const PantsGraph& pg, const std::string& id) {
    for (std::size_t i = 0; i < pg.whites.size(); ++i)
        if (pg.whites[i].id == id) return i;
    throw invalid_graph("no white vertex '" + id + "'");
}

inline std::size_t black_index(const PantsGraph& pg, const std::string& id) {
    for (std::size_t i = 0; i < pg.blacks.size(); ++i)
        if (pg.blacks[i] == id) return i;
    throw invalid_graph("no black vertex '" + id + "'");
}

inline Vec sign_normalized(Vec v) {
    for (const Rat& x : v) {
        if (x > 0) return v;
        if (x < 0) {
            for (Rat& y : v) y = -y;
            return v;
        }
    }
    return v;
}

}  // namespace detail

inline ValidationReport validate(const PantsGraph& pg, std::size_t g, std::size_t n) {
    auto fail = [](std::string msg) { return ValidationReport{false, std::move(msg)}; };

    for (const auto& [b, w] : pg.edges) {
        bool bok = false, wok = false;
        for (const auto& id : pg.blacks) bok |= (id == b);
        for (const auto& wh : pg.whites) wok |= (wh.id == w);
        if (!bok) return fail("edge references unknown black '" + b + "'");
        if (!wok) return fail("edge references unknown white '" + w + "'");
    }

    std::size_t internal = 0, boundary = 0;
    for (const White& w : pg.whites) {
        std::size_t val = 0;
        for (const auto& [b, wi] : pg.edges) val += (wi == w.id);
        if (w.kind == WhiteKind::internal) {
            ++internal;
            if (val != 2) return fail("internal white '" + w.id + "' has valence " +
                                      std::to_string(val) + ", expected 2");
            if (w.cls.size() != 2 * g)
                return fail("white '" + w.id + "': class length != 2g");
            for (const Rat& x : w.cls)
                if (x.get_den() != 1)
                    return fail("white '" + w.id + "': class is not integral");
        } else {
            ++boundary;
            if (val != 1) return fail("boundary white '" + w.id + "' has valence " +
                                      std::to_string(val) + ", expected 1");
            if (!w.cls.empty()) return fail("boundary white '" + w.id + "' carries a class");
        }
    }
    for (const std::string& b : pg.blacks) {
        std::size_t val = 0;
        for (const auto& [bi, w] : pg.edges) val += (bi == b);
        if (val != 3) return fail("black '" + b + "' has valence " + std::to_string(val) +
                                  ", expected 3");
    }

    if (pg.blacks.size() != 2 * g - 2 + n)
        return fail("expected " + std::to_string(2 * g - 2 + n) + " black vertices, found " +
                    std::to_string(pg.blacks.size()));
    if (internal != 3 * g - 3 + n)
        return fail("expected " + std::to_string(3 * g - 3 + n) + " internal whites, found " +
                    std::to_string(internal));
    if (boundary != n)
        return fail("expected " + std::to_string(n) + " boundary whites, found " +
                    std::to_string(boundary));

    // connectivity over blacks + whites
    const std::size_t nb = pg.blacks.size(), nw = pg.whites.size();
    std::vector<bool> seen(nb + nw, false);
    std::deque<std::size_t> queue;
    if (nb + nw > 0) {
        seen[0] = true;
        queue.push_back(0);
    }
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (const auto& [b, w] : pg.edges) {
            std::size_t bi = detail::black_index(pg, b);
            std::size_t wi = nb + detail::white_index(pg, w);
            if (v == bi && !seen[wi]) {
                seen[wi] = true;
                queue.push_back(wi);
            }
            if (v == wi && !seen[bi]) {
                seen[bi] = true;
                queue.push_back(bi);
            }
        }
    }
    for (bool s : seen)
        if (!s) return fail("graph is not connected");

    // first Betti number
    if (pg.edges.size() + 1 != nb + nw + g)
        return fail("first Betti number != g");

    // classes pairwise orthogonal, isotropic span of dim <= g
    Mat jh = symplectic_form(g);
    std::vector<Vec> classes;
    for (const White& w : pg.whites)
        if (w.kind == WhiteKind::internal) classes.push_back(w.cls);
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            Vec jy = jh.apply(classes[j]);
            Rat acc = 0;
            for (std::size_t t = 0; t < jy.size(); ++t) acc += classes[i][t] * jy[t];
            if (acc != 0) return fail("curve classes are not pairwise orthogonal");
        }
    if (g > 0) {
        Subspace span(2 * g, classes);
        if (span.dim() > g) return fail("span of curve classes exceeds dimension g");
    }
    return {};
}

inline ValidationReport validate(const PantsGraph& pg) {
    return validate(pg, pg.genus, pg.boundary);
}

// ---------------------------------------------------------------------------
// Handlebody invariant: <gamma> in H_1(S) together with the monodromy
// filtration (centered -1) of the Picard-Lefschetz operator. Constant on
// A-move classes.
// ---------------------------------------------------------------------------

struct HandlebodyInvariant {
    Subspace span;
    Filtration monodromy_on_h;

    bool operator==(const HandlebodyInvariant& o) const {
        return span == o.span && monodromy_on_h == o.monodromy_on_h;
    }
    bool operator!=(const HandlebodyInvariant& o) const { return !(*this == o); }
};

inline HandlebodyInvariant handlebody_invariant(const PantsGraph& pg, const SurfaceModel& s) {
    ValidationReport r = validate(pg);
    if (!r.ok) throw invalid_graph("handlebody_invariant: " + r.diagnostic);
    if (s.genus() != pg.genus) throw dimension_mismatch("handlebody_invariant: genus mismatch");
    CurveSystem cs;
    for (const White& w : pg.whites)
        if (w.kind == WhiteKind::internal) cs.curves.push_back({w.id, w.cls});
    SurfaceModel closed(pg.genus, 0);
    NilpotentOperator n = picard_lefschetz(closed, cs);
    Subspace span(2 * pg.genus, cs.classes());
    return {span, monodromy_filtration(n, -1)};
}

// ---------------------------------------------------------------------------
// A-moves. The internal white `white_id` spans a 4-legged genus-0
// configuration between its two (distinct) black endpoints; the move
// re-pairs the four legs and replaces the curve class.
// ---------------------------------------------------------------------------

enum class AMovePairing { cross_first, cross_second };

namespace detail {

struct MoveConfig {
    std::size_t wedge_p, wedge_q;          // edge indices of the moved white
    std::vector<std::size_t> legs_p, legs_q;  // other edge indices at p and q
};

inline MoveConfig move_config(const PantsGraph& pg, const std::string& white_id) {
    const White& w = pg.white(white_id);
    if (w.kind != WhiteKind::internal) throw invalid_move("A-move: white is not internal");
    std::vector<std::size_t> wedges;
    for (std::size_t e = 0; e < pg.edges.size(); ++e)
        if (pg.edges[e].second == white_id) wedges.push_back(e);
    if (wedges.size() != 2) throw invalid_move("A-move: white does not have valence 2");
    const std::string& p = pg.edges[wedges[0]].first;
    const std::string& q = pg.edges[wedges[1]].first;
    if (p == q)
        throw invalid_move("A-move: white '" + white_id +
                           "' is a loop at a single black vertex");
    MoveConfig cfg{wedges[0], wedges[1], {}, {}};
    for (std::size_t e = 0; e < pg.edges.size(); ++e) {
        if (e == cfg.wedge_p || e == cfg.wedge_q) continue;
        if (pg.edges[e].first == p) cfg.legs_p.push_back(e);
        if (pg.edges[e].first == q) cfg.legs_q.push_back(e);
    }
    if (cfg.legs_p.size() != 2 || cfg.legs_q.size() != 2)
        throw invalid_move("A-move: endpoints are not trivalent");
    // deterministic leg order: by (white id, edge index)
    auto legkey = [&](std::size_t e) { return std::make_pair(pg.edges[e].second, e); };
    auto cmp = [&](std::size_t a, std::size_t b) { return legkey(a) < legkey(b); };
    std::sort(cfg.legs_p.begin(), cfg.legs_p.end(), cmp);
    std::sort(cfg.legs_q.begin(), cfg.legs_q.end(), cmp);
    return cfg;
}

inline Vec leg_class(const PantsGraph& pg, std::size_t edge, std::size_t g) {
    const White& w = pg.white(pg.edges[edge].second);
    if (w.kind == WhiteKind::boundary) return Vec(2 * g, Rat(0));
    return w.cls;
}

}  // namespace detail

inline PantsGraph a_move(const PantsGraph& pg, const std::string& white_id,
                         AMovePairing pairing, const Vec& new_class) {
    ValidationReport r = validate(pg);
    if (!r.ok) throw invalid_graph("a_move: input graph invalid: " + r.diagnostic);
    const std::size_t g = pg.genus;
    if (new_class.size() != 2 * g) throw invalid_move("a_move: class length != 2g");
    if (!detail::integral_primitive_or_zero(new_class))
        throw invalid_move("a_move: class not integral primitive-or-zero");
    detail::MoveConfig cfg = detail::move_config(pg, white_id);

    Mat jh = symplectic_form(g);
    auto pairing_of = [&](const Vec& x, const Vec& y) {
        Vec jy = jh.apply(y);
        Rat acc = 0;
        for (std::size_t t = 0; t < jy.size(); ++t) acc += x[t] * jy[t];
        return acc;
    };

    const Vec& old_class = pg.white(white_id).cls;
    std::vector<Vec> retained;
    for (const White& w : pg.whites)
        if (w.kind == WhiteKind::internal && w.id != white_id) retained.push_back(w.cls);
    for (const Vec& c : retained)
        if (pairing_of(new_class, c) != 0)
            throw invalid_move("a_move: new class intersects a retained curve");

    std::vector<Vec> span_old_gens = retained;
    span_old_gens.push_back(old_class);
    std::vector<Vec> permitted;  // span(old class + legs' classes)
    permitted.push_back(old_class);
    for (std::size_t e : cfg.legs_p) permitted.push_back(detail::leg_class(pg, e, g));
    for (std::size_t e : cfg.legs_q) permitted.push_back(detail::leg_class(pg, e, g));
    if (!Subspace(2 * g, permitted).contains(new_class))
        throw invalid_move("a_move: new class is not in the span of the configuration");

    std::vector<Vec> span_new_gens = retained;
    span_new_gens.push_back(new_class);
    if (Subspace(2 * g, span_new_gens) != Subspace(2 * g, span_old_gens))
        throw invalid_move("a_move: move does not preserve the span of the curve system");

    PantsGraph out = pg;
    out.whites[detail::white_index(out, white_id)].cls = new_class;
    // re-pair legs: cross_first exchanges legs_p[1] <-> legs_q[0],
    // cross_second exchanges legs_p[1] <-> legs_q[1].
    std::size_t from = cfg.legs_p[1];
    std::size_t to = pairing == AMovePairing::cross_first ? cfg.legs_q[0] : cfg.legs_q[1];
    std::swap(out.edges[from].first, out.edges[to].first);

    ValidationReport rr = validate(out);
    if (!rr.ok) throw invalid_move("a_move: result invalid: " + rr.diagnostic);
    return out;
}

// ---------------------------------------------------------------------------
// Homology-neutral insertions and deletions of a curve system.
// ---------------------------------------------------------------------------

struct CurveEdit {
    enum class Kind { insert, remove } kind;
    Curve curve;  // for remove, only the label is consulted
};

/// Accepts the edit only if the span <gamma> in H_1(S) is unchanged.
inline CurveSystem homology_neutral_edit(const SurfaceModel& s, const CurveSystem& cs,
                                         const CurveEdit& edit) {
    CurveSystem out = cs;
    if (edit.kind == CurveEdit::Kind::insert) {
        out.curves.push_back(edit.curve);
    } else {
        auto it = std::find_if(out.curves.begin(), out.curves.end(),
                               [&](const Curve& c) { return c.label == edit.curve.label; });
        if (it == out.curves.end())
            throw error("homology_neutral_edit: no curve labeled '" + edit.curve.label + "'");
        out.curves.erase(it);
    }
    validate_curve_system(s, out);
    SpanInfo before = span_and_isotropy(s, cs);
    SpanInfo after = span_and_isotropy(s, out);
    if (before.span_in_h != after.span_in_h)
        throw invalid_move("homology_neutral_edit: edit changes the span of the system");
    return out;
}

// ---------------------------------------------------------------------------
// Labeled-isomorphism canonical form and bounded A-move reachability.
// ---------------------------------------------------------------------------

/// Canonical encoding: minimal over black permutations of the sorted list of
/// white signatures (kind, sign-normalized class, multiset of incident black
/// indices). Exponential in the black count, fine at desk scale.
inline std::string canonical_form(const PantsGraph& pg) {
    const std::size_t nb = pg.blacks.size();
    std::vector<std::size_t> perm(nb);
    for (std::size_t i = 0; i < nb; ++i) perm[i] = i;

    std::string best;
    bool first = true;
    do {
        std::vector<std::size_t> pos(nb);  // pos[original index] = new index
        for (std::size_t i = 0; i < nb; ++i) pos[perm[i]] = i;
        std::vector<std::string> rows;
        for (const White& w : pg.whites) {
            std::vector<std::size_t> inc;
            for (const auto& [b, wi] : pg.edges)
                if (wi == w.id) inc.push_back(pos[detail::black_index(pg, b)]);
            std::sort(inc.begin(), inc.end());
            std::ostringstream os;
            os << (w.kind == WhiteKind::internal ? 'i' : 'b') << '[';
            for (const Rat& x : detail::sign_normalized(w.cls)) os << x.get_str() << ',';
            os << "]@";
            for (std::size_t t : inc) os << t << ',';
            rows.push_back(os.str());
        }
        std::sort(rows.begin(), rows.end());
        std::string enc = std::to_string(pg.genus) + ";" + std::to_string(pg.boundary) + ";";
        for (const std::string& row : rows) enc += row + "|";
        if (first || enc < best) {
            best = std::move(enc);
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

namespace detail {

/// Candidate classes for the curve created by re-pairing: signed sums of the
/// leg classes grouped at one black vertex, filtered through the a_move
/// preconditions.
inline std::vector<PantsGraph> a_move_neighbors(const PantsGraph& pg) {
    std::vector<PantsGraph> out;
    const std::size_t g = pg.genus;
    for (const White& w : pg.whites) {
        if (w.kind != WhiteKind::internal) continue;
        MoveConfig cfg;
        try {
            cfg = move_config(pg, w.id);
        } catch (const invalid_move&) {
            continue;
        }
        Vec lp0 = leg_class(pg, cfg.legs_p[0], g), lp1 = leg_class(pg, cfg.legs_p[1], g);
        Vec lq0 = leg_class(pg, cfg.legs_q[0], g), lq1 = leg_class(pg, cfg.legs_q[1], g);
        for (AMovePairing pairing : {AMovePairing::cross_first, AMovePairing::cross_second}) {
            // cross_first groups {p0,q0} / {p1,q1}; cross_second {p0,q1} / {p1,q0}
            const Vec& qa = pairing == AMovePairing::cross_first ? lq0 : lq1;
            const Vec& qb = pairing == AMovePairing::cross_first ? lq1 : lq0;
            std::set<std::vector<std::string>> seen;
            std::vector<Vec> cands;
            for (int s1 : {1, -1})
                for (int s2 : {1, -1}) {
                    Vec c1(2 * g, Rat(0)), c2(2 * g, Rat(0));
                    for (std::size_t t = 0; t < 2 * g; ++t) {
                        c1[t] = Rat(s1) * lp0[t] + Rat(s2) * qa[t];
                        c2[t] = Rat(s1) * lp1[t] + Rat(s2) * qb[t];
                    }
                    cands.push_back(std::move(c1));
                    cands.push_back(std::move(c2));
                }
            for (const Vec& cand : cands) {
                if (!integral_primitive_or_zero(cand)) continue;
                std::vector<std::string> key;
                for (const Rat& x : sign_normalized(cand)) key.push_back(x.get_str());
                if (!seen.insert(key).second) continue;
                try {
                    out.push_back(a_move(pg, w.id, pairing, cand));
                } catch (const invalid_move&) {
                } catch (const invalid_graph&) {
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const PantsGraph& a, const PantsGraph& b) {
        return canonical_form(a) < canonical_form(b);
    });
    return out;
}

}  // namespace detail

struct ReachOutcome {
    bool reachable = false;
    std::size_t moves = 0;  // meaningful when reachable
};

/// Breadth-first search over A-move rewrites, graphs compared up to labeled
/// isomorphism; deterministic by canonical frontier ordering.
inline ReachOutcome a_move_reachable(const PantsGraph& pg1, const PantsGraph& pg2,
                                     std::size_t bound) {
    ValidationReport r1 = validate(pg1), r2 = validate(pg2);
    if (!r1.ok) throw invalid_graph("a_move_reachable: first graph: " + r1.diagnostic);
    if (!r2.ok) throw invalid_graph("a_move_reachable: second graph: " + r2.diagnostic);
    if (pg1.genus != pg2.genus || pg1.boundary != pg2.boundary)
        throw error("a_move_reachable: (g,n) mismatch");

    std::string target = canonical_form(pg2);
    std::set<std::string> visited;
    std::deque<std::pair<PantsGraph, std::size_t>> frontier;
    visited.insert(canonical_form(pg1));
    frontier.emplace_back(pg1, 0);
    if (canonical_form(pg1) == target) return {true, 0};

    while (!frontier.empty()) {
        auto [pg, depth] = frontier.front();
        frontier.pop_front();
        if (depth == bound) continue;
        for (const PantsGraph& next : detail::a_move_neighbors(pg)) {
            std::string key = canonical_form(next);
            if (!visited.insert(key).second) continue;
            if (key == target) return {true, depth + 1};
            frontier.emplace_back(next, depth + 1);
        }
    }
    return {false, 0};
}

/// S-moves change the handlebody; the artifact keeps them only as a marker.
[[noreturn]] inline PantsGraph s_move(const PantsGraph&) {
    throw error("s_move: changes the handlebody invariant; no rewrite rule is provided");
}

}  // namespace wfilt
