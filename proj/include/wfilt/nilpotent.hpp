// Weight filtrations of nilpotent endomorphisms: the unique filtration with
// N W_k ⊆ W_{k-2} and N^k : Gr_k ≅ Gr_{-k}, its recentered (monodromy) form,
// graded operators, and relative weight filtrations of nilpotent endomorphisms
// of filtered spaces: verifier, constructors for the decidable cases,
// certified non-existence, and a bounded lattice search.
#pragma once

#include "filtration.hpp"

#include <set>
#include <variant>

namespace wfilt {

struct non_nilpotent : error {
    using error::error;
};

struct lattice_overflow : error {
    using error::error;
};

/// Square matrix certified nilpotent at construction. nilpotency_index is the
/// smallest m with N^{m+1} = 0, so index 0 means the zero map.
class NilpotentOperator {
public:
    explicit NilpotentOperator(Mat m) : m_(std::move(m)) {
        if (!m_.is_square()) throw dimension_mismatch("NilpotentOperator: not square");
        Mat p = m_;  // N^e starting at e = 1
        std::size_t e = 1;
        while (!p.is_zero()) {
            p = p * m_;
            ++e;
            if (e > m_.rows() + 1) throw non_nilpotent("NilpotentOperator: matrix is not nilpotent");
        }
        index_ = e - 1;  // N^{index_+1} = 0, N^{index_} != 0
    }

    const Mat& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    std::size_t nilpotency_index() const { return index_; }
    bool is_zero() const { return m_.is_zero(); }

private:
    Mat m_;
    std::size_t index_;
};

inline bool preserves(const Mat& n, const Filtration& w) {
    if (n.cols() != w.ambient()) throw dimension_mismatch("preserves: ambient mismatch");
    for (long m : w.jumps())
        if (!w.at(m).contains(image_of(n, w.at(m)))) return false;
    return true;
}

// ---------------------------------------------------------------------------
// The weight filtration W(N), centered at 0. Recursive construction from the
// uniqueness proof: W_{m} = V, W_{m-1} = ker N^m, W_{-m} = im N^m, W_{-m-1} = 0,
// and the middle steps pull back from the weight filtration of the operator
// induced on ker N^m / im N^m.
// ---------------------------------------------------------------------------

namespace detail {

inline Filtration weight_filtration_rec(const Mat& n) {
    const std::size_t d = n.rows();
    std::map<long, Subspace> steps;
    if (d == 0) return Filtration(0, steps);

    NilpotentOperator op(n);  // re-certifies nilpotency of induced operators
    const long m = static_cast<long>(op.nilpotency_index());
    if (m == 0) {
        steps.emplace(0, Subspace::full(d));
        return Filtration(d, steps);
    }
    Mat nm = n.pow(static_cast<std::size_t>(m));
    Subspace ker_nm = kernel(nm);
    Subspace im_nm = image(nm);
    Subquotient sq(ker_nm, im_nm);
    Filtration inner = weight_filtration_rec(sq.induce(n));

    steps.emplace(m, Subspace::full(d));
    for (long k = -m; k <= m - 1; ++k) steps.emplace(k, sq.preimage_subspace(inner.at(k)));
    return Filtration(d, steps);
}

}  // namespace detail

/// W(N): jumps symmetric about 0.
inline Filtration weight_filtration(const NilpotentOperator& n) {
    return detail::weight_filtration_rec(n.matrix());
}

/// W(N) reindexed to be centered at the given weight: M_k := W(N)_{k-center}.
inline Filtration monodromy_filtration(const NilpotentOperator& n, long center) {
    return weight_filtration(n).shifted(center);
}

/// Both defining clauses of the weight filtration, checked directly:
/// N W_k ⊆ W_{k-2} and N^k : Gr_{center+k} → Gr_{center-k} bijective.
inline bool verify_weight_axioms(const NilpotentOperator& n, const Filtration& w,
                                 long center = 0) {
    const Mat& N = n.matrix();
    if (w.ambient() != n.dim()) throw dimension_mismatch("verify_weight_axioms");
    if (w.ambient() == 0) return true;
    for (long k : w.jumps())
        if (!w.at(k - 2).contains(image_of(N, w.at(k)))) return false;
    long top = w.highest() - center;
    long bot = center - w.lowest();
    long reach = std::max(top, bot);
    for (long k = 0; k <= reach; ++k) {
        Subquotient hi(w.at(center + k), w.at(center + k - 1));
        Subquotient lo(w.at(center - k), w.at(center - k - 1));
        if (hi.dim() != lo.dim()) return false;
        if (k == 0 || hi.dim() == 0) continue;
        Mat nk = N.pow(static_cast<std::size_t>(k));
        Mat induced(lo.dim(), hi.dim());
        std::vector<Vec> reps = hi.representatives();
        for (std::size_t j = 0; j < reps.size(); ++j) {
            Vec img = nk.apply(reps[j]);
            if (!w.at(center - k).contains(img)) return false;
            Vec q = lo.project(img);
            for (std::size_t i = 0; i < lo.dim(); ++i) induced.at(i, j) = q[i];
        }
        if (rank(induced) != hi.dim()) return false;
    }
    return true;
}

/// N_m = Gr^W_m N on each nonzero graded quotient; requires n(W_m) ⊆ W_m.
inline std::map<long, NilpotentOperator> graded_operators(const NilpotentOperator& n,
                                                          const Filtration& w) {
    if (!preserves(n.matrix(), w))
        throw non_invariant_subspace("graded_operators: operator does not preserve filtration");
    std::map<long, NilpotentOperator> out;
    for (long m : w.jumps()) {
        Subquotient sq(w.at(m), w.at(m - 1));
        if (sq.dim() == 0) continue;
        out.emplace(m, NilpotentOperator(sq.induce(n.matrix())));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Relative weight filtrations.
// ---------------------------------------------------------------------------

/// Verification report. clause 0 = ok. clause 1: N M_k ⊄ M_{k-2}, witness is an
/// ambient vector of M_k whose image escapes. clause 2: the filtration induced
/// by M on Gr^W_{graded_weight} differs from the reindexed weight filtration at
/// step `weight`; witness is an ambient lift in the symmetric difference.
struct RelativeDiagnostics {
    bool ok = true;
    int clause = 0;
    long weight = 0;
    long graded_weight = 0;
    Vec witness;
    std::string message;
};

inline RelativeDiagnostics verify_relative_diag(const NilpotentOperator& n, const Filtration& w,
                                                const Filtration& m) {
    const Mat& N = n.matrix();
    if (w.ambient() != n.dim() || m.ambient() != n.dim())
        throw dimension_mismatch("verify_relative: ambient mismatch");
    if (!preserves(N, w))
        throw non_invariant_subspace("verify_relative: operator does not preserve W");

    // Clause 1: N M_k ⊆ M_{k-2}.
    for (long k : m.jumps()) {
        Subspace mk = m.at(k), lower = m.at(k - 2);
        for (const Vec& b : mk.basis()) {
            Vec img = N.apply(b);
            if (!lower.contains(img)) {
                RelativeDiagnostics d;
                d.ok = false;
                d.clause = 1;
                d.weight = k;
                d.witness = b;
                d.message = "N M_" + std::to_string(k) + " not contained in M_" +
                            std::to_string(k - 2);
                return d;
            }
        }
    }

    // Clause 2: M induces the reindexed weight filtration on every Gr^W_m0.
    for (long m0 : w.jumps()) {
        Subquotient grw(w.at(m0), w.at(m0 - 1));
        if (grw.dim() == 0) continue;
        NilpotentOperator nm(grw.induce(N));
        Filtration expected = monodromy_filtration(nm, m0);
        std::map<long, Subspace> got_steps;
        long lo = std::min(expected.lowest(), m.lowest());
        long hi = std::max(expected.highest(), m.highest());
        for (long k = lo; k <= hi; ++k)
            got_steps.emplace(k, grw.project_subspace(intersect(m.at(k), w.at(m0))));
        Filtration got(grw.dim(), got_steps);
        if (got != expected) {
            RelativeDiagnostics d;
            d.ok = false;
            d.clause = 2;
            d.graded_weight = m0;
            for (long k = lo; k <= hi; ++k) {
                Subspace a = got.at(k), b = expected.at(k);
                if (a == b) continue;
                d.weight = k;
                const Subspace& big = a.dim() >= b.dim() ? a : b;
                const Subspace& small = a.dim() >= b.dim() ? b : a;
                for (const Vec& v : big.basis())
                    if (!small.contains(v)) {
                        d.witness = grw.lift(v);
                        break;
                    }
                break;
            }
            d.message = "induced filtration on Gr^W_" + std::to_string(m0) +
                        " differs from the reindexed weight filtration at step " +
                        std::to_string(d.weight);
            return d;
        }
    }
    return RelativeDiagnostics{};
}

inline bool verify_relative(const NilpotentOperator& n, const Filtration& w,
                            const Filtration& m) {
    return verify_relative_diag(n, w, m).ok;
}

struct RwfExists {
    Filtration filtration;
};
struct RwfCertifiedNonexistent {
    long weight;       // step k of the forced candidate where N M_k ⊄ M_{k-2}
    Vec witness;       // vector of M_k whose image escapes M_{k-2}
    Filtration forced; // the unique candidate that failed
};
struct RwfInconclusive {
    std::size_t depth;
};
using RelativeWFOutcome = std::variant<RwfExists, RwfCertifiedNonexistent, RwfInconclusive>;

inline const Filtration* rwf_filtration(const RelativeWFOutcome& o) {
    if (auto* e = std::get_if<RwfExists>(&o)) return &e->filtration;
    return nullptr;
}

namespace detail {

/// Closure of {0, V, W_m} under sum, intersection, N-image and N-preimage,
/// iterated `depth` times, capped at 512 distinct subspaces.
inline std::set<Subspace> lattice_closure(const Mat& n, const Filtration& w,
                                          std::size_t depth) {
    constexpr std::size_t kCap = 512;
    std::set<Subspace> lat;
    lat.insert(Subspace::zero(w.ambient()));
    lat.insert(Subspace::full(w.ambient()));
    for (long m : w.jumps()) lat.insert(w.at(m));
    for (std::size_t round = 0; round < depth; ++round) {
        std::vector<Subspace> cur(lat.begin(), lat.end());
        std::size_t before = lat.size();
        for (const Subspace& s : cur) {
            lat.insert(image_of(n, s));
            lat.insert(preimage_of(n, s));
        }
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                auto [meet, join] = meet_join(cur[i], cur[j]);
                lat.insert(meet);
                lat.insert(join);
            }
        if (lat.size() > kCap)
            throw lattice_overflow("lattice closure exceeded 512 subspaces");
        if (lat.size() == before) break;
    }
    return lat;
}

}  // namespace detail

/// Decision procedure for the relative weight filtration of n on (V, w):
///  (a) if n drops w by 2, the filtration is w itself;
///  (b) if w has a single jump, it is the recentered weight filtration;
///  (c) if every graded operator vanishes, the candidate is forced to be w;
///      verification then either confirms it or certifies non-existence with
///      a witness against the forced candidate;
///  (d) otherwise search candidates over the subspace lattice generated from
///      the W-steps. Search exhaustion is reported as Inconclusive, never as
///      non-existence.
inline RelativeWFOutcome construct_relative(const NilpotentOperator& n, const Filtration& w,
                                            std::size_t depth = 3) {
    const Mat& N = n.matrix();
    if (w.ambient() != n.dim()) throw dimension_mismatch("construct_relative");
    if (!preserves(N, w))
        throw non_invariant_subspace("construct_relative: operator does not preserve W");

    // (a) strict case
    bool strict = true;
    for (long m : w.jumps())
        if (!w.at(m - 2).contains(image_of(N, w.at(m)))) {
            strict = false;
            break;
        }
    if (strict) return RwfExists{w};

    // (b) single-weight case
    if (w.steps().size() == 1) return RwfExists{monodromy_filtration(n, w.highest())};

    // (c) forced-graded case: all N_m = 0 forces M = W by pullback.
    auto ops = graded_operators(n, w);
    bool all_zero = true;
    for (const auto& [m, op] : ops)
        if (op.nilpotency_index() != 0) {
            all_zero = false;
            break;
        }
    if (all_zero) {
        RelativeDiagnostics d = verify_relative_diag(n, w, w);
        if (d.ok) return RwfExists{w};
        return RwfCertifiedNonexistent{d.weight, d.witness, w};
    }

    // (d) bounded lattice search
    std::set<Subspace> lat = detail::lattice_closure(N, w, depth);

    struct GradedTarget {
        long m0;
        Subquotient grw;
        Filtration expected;
    };
    std::vector<GradedTarget> targets;
    long klo = 0, khi = 0;
    bool first = true;
    for (long m0 : w.jumps()) {
        Subquotient grw(w.at(m0), w.at(m0 - 1));
        if (grw.dim() == 0) continue;
        NilpotentOperator nm(grw.induce(N));
        Filtration expected = monodromy_filtration(nm, m0);
        if (first) {
            klo = expected.lowest();
            khi = expected.highest();
            first = false;
        } else {
            klo = std::min(klo, expected.lowest());
            khi = std::max(khi, expected.highest());
        }
        targets.push_back(GradedTarget{m0, std::move(grw), std::move(expected)});
    }

    // Admissible lattice members per step.
    std::vector<std::vector<Subspace>> admissible;
    for (long k = klo; k <= khi; ++k) {
        std::vector<Subspace> lk;
        for (const Subspace& s : lat) {
            bool good = true;
            for (const GradedTarget& t : targets) {
                if (t.grw.project_subspace(intersect(s, w.at(t.m0))) != t.expected.at(k)) {
                    good = false;
                    break;
                }
            }
            if (good) lk.push_back(s);
        }
        if (lk.empty()) return RwfInconclusive{depth};
        admissible.push_back(std::move(lk));
    }

    // Ordered DFS over nested chains; candidates verified in canonical order.
    std::vector<Subspace> chain;
    RelativeWFOutcome result = RwfInconclusive{depth};
    bool found = false;
    auto dfs = [&](auto&& self, std::size_t idx) -> void {
        if (found) return;
        if (idx == admissible.size()) {
            std::map<long, Subspace> steps;
            for (std::size_t i = 0; i < chain.size(); ++i)
                steps.emplace(klo + static_cast<long>(i), chain[i]);
            steps.emplace(khi + 1, Subspace::full(w.ambient()));
            Filtration cand(w.ambient(), steps);
            if (verify_relative(n, w, cand)) {
                result = RwfExists{cand};
                found = true;
            }
            return;
        }
        for (const Subspace& s : admissible[idx]) {
            if (!chain.empty() && !s.contains(chain.back())) continue;
            chain.push_back(s);
            self(self, idx + 1);
            chain.pop_back();
            if (found) return;
        }
    };
    dfs(dfs, 0);
    return result;
}

/// The curve-system formula M_{-2} = im N + W_{-2}, M_{-1} = ker N + W_{-2},
/// M_0 = V, for filtrations with jumps inside {-2, -1} (top step full) and an
/// operator with N² = 0 killing W_{-2}.
inline Filtration relative_wf_curve_formula(const FilteredSpace& v, const NilpotentOperator& n) {
    const Filtration& w = v.filtration;
    if (w.ambient() != n.dim()) throw dimension_mismatch("relative_wf_curve_formula");
    for (long j : w.jumps())
        if (j != -2 && j != -1)
            throw error("relative_wf_curve_formula: filtration must jump only at -2, -1");
    if (w.at(-1) != Subspace::full(w.ambient()))
        throw error("relative_wf_curve_formula: W_{-1} must be the full space");
    const Mat& N = n.matrix();
    if (!(N * N).is_zero()) throw error("relative_wf_curve_formula: N^2 != 0");
    Subspace wm2 = w.at(-2);
    if (!image_of(N, wm2).is_zero())
        throw error("relative_wf_curve_formula: N does not kill W_{-2}");

    Subspace im = image(N);
    Subspace ker = kernel(N);
    std::map<long, Subspace> steps;
    steps.emplace(-2, sum(im, wm2));
    steps.emplace(-1, sum(ker, wm2));
    steps.emplace(0, Subspace::full(w.ambient()));
    return Filtration(w.ambient(), steps);
}

}  // namespace wfilt
