// Increasing filtrations of finite-dimensional rational vector spaces and
// their calculus: graded pieces, tensor / Hom / dual filtrations, filtrations
// induced on subspaces and quotients, strictness of filtered maps, and
// two-filtration bigradings.
//
// Conventions: a filtration stores only its jump weights. Weights below the
// lowest recorded jump give the zero subspace, weights at or above the highest
// give the full space; the top recorded step must therefore be the full space
// (exhaustive and separated). Decreasing filtrations are handled by callers
// via index raising, F^m := F_{-m}.
#pragma once

#include "linalg.hpp"

#include <map>
#include <utility>

namespace wfilt {

class Filtration {
public:
    /// Normalizes to jump-only form and validates nesting/exhaustiveness.
    Filtration(std::size_t ambient, const std::map<long, Subspace>& steps)
        : ambient_(ambient), zero_(Subspace::zero(ambient)) {
        Subspace prev = zero_;
        for (const auto& [w, s] : steps) {
            if (s.ambient() != ambient_)
                throw dimension_mismatch("Filtration: step ambient mismatch");
            if (!s.contains(prev)) throw error("Filtration: steps not nested");
            if (s != prev) steps_.emplace(w, s);
            prev = s;
        }
        if (!prev.is_full()) throw error("Filtration: top step is not the full space");
    }

    static Filtration single_jump(std::size_t ambient, long weight) {
        std::map<long, Subspace> s;
        s.emplace(weight, Subspace::full(ambient));
        return Filtration(ambient, s);
    }

    std::size_t ambient() const { return ambient_; }
    const std::map<long, Subspace>& steps() const { return steps_; }

    /// F_m: the step at the largest jump <= m, or zero below all jumps.
    const Subspace& at(long m) const {
        auto it = steps_.upper_bound(m);
        if (it == steps_.begin()) return zero_;
        return std::prev(it)->second;
    }

    std::vector<long> jumps() const {
        std::vector<long> j;
        j.reserve(steps_.size());
        for (const auto& [w, s] : steps_) j.push_back(w);
        return j;
    }
    long lowest() const { return steps_.empty() ? 0 : steps_.begin()->first; }
    long highest() const { return steps_.empty() ? 0 : steps_.rbegin()->first; }

    Filtration shifted(long k) const {
        std::map<long, Subspace> s;
        for (const auto& [w, sub] : steps_) s.emplace(w + k, sub);
        return Filtration(ambient_, s);
    }

    bool operator==(const Filtration& o) const {
        return ambient_ == o.ambient_ && steps_ == o.steps_;
    }
    bool operator!=(const Filtration& o) const { return !(*this == o); }

private:
    std::size_t ambient_;
    Subspace zero_;  // shared below-lowest step, so at() can return a reference
    std::map<long, Subspace> steps_;
};

struct FilteredSpace {
    Filtration filtration;

    explicit FilteredSpace(Filtration f) : filtration(std::move(f)) {}
    FilteredSpace(std::size_t ambient, const std::map<long, Subspace>& steps)
        : filtration(ambient, steps) {}

    std::size_t dim() const { return filtration.ambient(); }
    const Subspace& at(long m) const { return filtration.at(m); }

    /// One-dimensional space concentrated in a single weight.
    static FilteredSpace line(long weight) {
        return FilteredSpace(Filtration::single_jump(1, weight));
    }

    bool operator==(const FilteredSpace& o) const { return filtration == o.filtration; }
};

/// Gr_m: dimension plus deterministic representative vectors (pivot-complement
/// convention inside F_m over F_{m-1}).
struct GradedPiece {
    long weight;
    std::size_t dim;
    std::vector<Vec> representatives;
};

inline GradedPiece gr(const FilteredSpace& fs, long m) {
    Subquotient q(fs.at(m), fs.at(m - 1));
    return {m, q.dim(), q.representatives()};
}

/// All nonzero graded dimensions; their sum is dim(fs).
inline std::map<long, std::size_t> gr_dims(const FilteredSpace& fs) {
    std::map<long, std::size_t> out;
    std::size_t prev = 0;
    for (const auto& [w, s] : fs.filtration.steps()) {
        if (s.dim() > prev) out[w] = s.dim() - prev;
        prev = s.dim();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor, Hom and dual filtrations.
// ---------------------------------------------------------------------------

/// F_m(V ⊗ W) = sum over j+k=m of F_j V ⊗ F_k W, on Kronecker coordinates.
inline FilteredSpace tensor_filtration(const FilteredSpace& a, const FilteredSpace& b) {
    const std::size_t n = a.dim() * b.dim();
    std::map<long, Subspace> steps;
    if (a.dim() == 0 || b.dim() == 0) return FilteredSpace(Filtration(n, steps));
    const long lo = a.filtration.lowest() + b.filtration.lowest();
    const long hi = a.filtration.highest() + b.filtration.highest();
    for (long m = lo; m <= hi; ++m) {
        std::vector<Vec> gens;
        for (long j : a.filtration.jumps()) {
            Subspace fa = a.at(j);
            Subspace fb = b.at(m - j);
            for (const Vec& u : fa.basis())
                for (const Vec& v : fb.basis()) gens.push_back(kron_vec(u, v));
        }
        steps.emplace(m, Subspace(n, std::move(gens)));
    }
    return FilteredSpace(Filtration(n, steps));
}

/// F_m Hom(V,W) = { φ : φ(F_k V) ⊆ F_{m+k} W for all k }, with φ flattened
/// row-major as a (dim W) x (dim V) matrix.
inline FilteredSpace hom_filtration(const FilteredSpace& a, const FilteredSpace& b) {
    const std::size_t da = a.dim(), db = b.dim();
    const std::size_t n = da * db;
    std::map<long, Subspace> steps;
    if (n == 0) return FilteredSpace(Filtration(n, steps));
    const long lo = b.filtration.lowest() - a.filtration.highest();
    const long hi = b.filtration.highest() - a.filtration.lowest();
    for (long m = lo; m <= hi; ++m) {
        std::vector<Vec> constraints;
        for (long k : a.filtration.jumps()) {
            Subspace fa = a.at(k);
            Mat d = annihilator(b.at(m + k));
            for (const Vec& u : fa.basis())
                for (std::size_t t = 0; t < d.rows(); ++t) {
                    Vec row(n, Rat(0));
                    for (std::size_t r = 0; r < db; ++r) {
                        if (d.at(t, r) == 0) continue;
                        for (std::size_t c = 0; c < da; ++c) row[r * da + c] = d.at(t, r) * u[c];
                    }
                    constraints.push_back(std::move(row));
                }
        }
        Subspace fm = constraints.empty() ? Subspace::full(n)
                                          : kernel(Mat::from_rows(constraints));
        steps.emplace(m, fm);
    }
    return FilteredSpace(Filtration(n, steps));
}

/// Dual = Hom into a one-dimensional space of weight 0, so that
/// Gr_m(V*) ≅ (Gr_{-m} V)*.
inline FilteredSpace dual_filtration(const FilteredSpace& a) {
    return hom_filtration(a, FilteredSpace::line(0));
}

// ---------------------------------------------------------------------------
// Filtrations induced on subspaces and quotients.
// ---------------------------------------------------------------------------

/// F on sub (in sub coordinates: the canonical basis of sub) and on the
/// quotient (pivot-complement coordinates of ambient over sub).
inline std::pair<FilteredSpace, FilteredSpace> induced_filtrations(const FilteredSpace& fs,
                                                                   const Subspace& sub) {
    if (sub.ambient() != fs.dim()) throw dimension_mismatch("induced_filtrations");
    Subquotient quot(Subspace::full(fs.dim()), sub);
    std::map<long, Subspace> on_sub, on_quot;
    for (const auto& [m, fm] : fs.filtration.steps()) {
        Subspace cap = intersect(fm, sub);
        std::vector<Vec> sub_coords;
        for (const Vec& v : cap.basis()) sub_coords.push_back(sub.coords(v));
        on_sub.emplace(m, Subspace(sub.dim(), std::move(sub_coords)));
        on_quot.emplace(m, quot.project_subspace(fm));
    }
    return {FilteredSpace(Filtration(sub.dim(), on_sub)),
            FilteredSpace(Filtration(fs.dim() - sub.dim(), on_quot))};
}

/// dim Gr_m(sub) + dim Gr_m(quotient) == dim Gr_m(fs) for every m. Exposed as
/// a check rather than assumed.
inline bool induced_gr_additive(const FilteredSpace& fs, const Subspace& sub) {
    auto [on_sub, on_quot] = induced_filtrations(fs, sub);
    auto total = gr_dims(fs);
    auto gs = gr_dims(on_sub);
    auto gq = gr_dims(on_quot);
    std::map<long, std::size_t> combined = gs;
    for (const auto& [m, d] : gq) combined[m] += d;
    return combined == total;
}

/// The two ways of filtering the image of w in V/u: restricting the quotient
/// filtration to p(w) versus pushing forward the filtration induced on w.
/// Requires the genuine subquotient configuration u ⊆ w; without it the two
/// routes differ already in dimension 2.
inline bool subquotient_agreement(const FilteredSpace& fs, const Subspace& u,
                                  const Subspace& w) {
    if (u.ambient() != fs.dim() || w.ambient() != fs.dim())
        throw dimension_mismatch("subquotient_agreement");
    if (!w.contains(u))
        throw error("subquotient_agreement: quotient kernel u must lie inside w");
    Subquotient quot(Subspace::full(fs.dim()), u);
    Subspace pw = quot.project_subspace(w);
    for (long m : fs.filtration.jumps()) {
        Subspace fm = fs.at(m);
        Subspace route1 = intersect(quot.project_subspace(fm), pw);
        Subspace route2 = quot.project_subspace(intersect(fm, w));
        if (route1 != route2) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Filtered maps and strictness.
// ---------------------------------------------------------------------------

/// A linear map with f(F_m source) ⊆ F_{m+shift} target, validated at
/// construction.
class FilteredMap {
public:
    FilteredMap(Mat map, FilteredSpace source, FilteredSpace target, long shift = 0)
        : map_(std::move(map)), src_(std::move(source)), tgt_(std::move(target)), shift_(shift) {
        if (map_.cols() != src_.dim() || map_.rows() != tgt_.dim())
            throw dimension_mismatch("FilteredMap: shape mismatch");
        for (long m : src_.filtration.jumps())
            if (!tgt_.at(m + shift_).contains(image_of(map_, src_.at(m))))
                throw error("FilteredMap: not filtration-preserving at weight " +
                            std::to_string(m));
    }

    const Mat& map() const { return map_; }
    const FilteredSpace& source() const { return src_; }
    const FilteredSpace& target() const { return tgt_; }
    long shift() const { return shift_; }

private:
    Mat map_;
    FilteredSpace src_, tgt_;
    long shift_;
};

namespace detail {

/// Exactness of 0 → Gr_m ker f → Gr_m V1 → Gr_{m+s} V2 → Gr_{m+s} coker f → 0
/// for every m, with induced filtrations on kernel and cokernel.
inline bool strict_via_graded(const FilteredMap& f) {
    const Mat& M = f.map();
    const FilteredSpace& V1 = f.source();
    const FilteredSpace& V2 = f.target();
    const long s = f.shift();

    Subspace K = kernel(M);
    Subspace I = image(M);
    auto [onK, unusedq] = induced_filtrations(V1, K);
    (void)unusedq;
    Subquotient cokerq(Subspace::full(V2.dim()), I);
    std::map<long, Subspace> cokerSteps;
    for (const auto& [m, fm] : V2.filtration.steps())
        cokerSteps.emplace(m, cokerq.project_subspace(fm));
    FilteredSpace coker(Filtration(cokerq.dim(), cokerSteps));

    long lo = V1.filtration.lowest();
    long hi = V1.filtration.highest();
    if (!V2.filtration.steps().empty()) {
        lo = std::min(lo, V2.filtration.lowest() - s);
        hi = std::max(hi, V2.filtration.highest() - s);
    }
    for (long m = lo; m <= hi; ++m) {
        Subquotient grK(onK.at(m), onK.at(m - 1));          // K coordinates
        Subquotient grB(V1.at(m), V1.at(m - 1));            // ambient V1
        Subquotient grC(V2.at(m + s), V2.at(m + s - 1));    // ambient V2
        Subquotient grD(coker.at(m + s), coker.at(m + s - 1));  // coker coordinates

        // alpha: Gr ker -> Gr V1
        Mat alpha(grB.dim(), grK.dim());
        {
            std::vector<Vec> reps = grK.representatives();
            for (std::size_t j = 0; j < reps.size(); ++j) {
                Vec amb = K.from_coords(reps[j]);
                Vec q = grB.project(amb);
                for (std::size_t i = 0; i < grB.dim(); ++i) alpha.at(i, j) = q[i];
            }
        }
        // beta: Gr V1 -> Gr V2
        Mat beta(grC.dim(), grB.dim());
        {
            std::vector<Vec> reps = grB.representatives();
            for (std::size_t j = 0; j < reps.size(); ++j) {
                Vec q = grC.project(M.apply(reps[j]));
                for (std::size_t i = 0; i < grC.dim(); ++i) beta.at(i, j) = q[i];
            }
        }
        // gamma: Gr V2 -> Gr coker
        Mat gamma(grD.dim(), grC.dim());
        {
            std::vector<Vec> reps = grC.representatives();
            for (std::size_t j = 0; j < reps.size(); ++j) {
                Vec q = grD.project(cokerq.project(reps[j]));
                for (std::size_t i = 0; i < grD.dim(); ++i) gamma.at(i, j) = q[i];
            }
        }

        if (rank(alpha) != grK.dim()) return false;                      // injective
        Subspace imA = image(alpha), kerB = kernel(beta);
        if (!(kerB.contains(imA) && imA.dim() == kerB.dim())) return false;
        Subspace imB = image(beta), kerC = kernel(gamma);
        if (!(kerC.contains(imB) && imB.dim() == kerC.dim())) return false;
        if (rank(gamma) != grD.dim()) return false;                      // surjective
    }
    return true;
}

}  // namespace detail

/// Strictness: f(W_m V1) = W_{m+shift} V2 ∩ im f for all m. Also computed via
/// the equivalent four-term graded exactness criterion; the two routes must
/// agree.
inline bool strictness(const FilteredMap& f) {
    const FilteredSpace& V1 = f.source();
    const FilteredSpace& V2 = f.target();
    Subspace im = image(f.map());
    bool direct = true;
    long lo = V1.filtration.lowest();
    long hi = V1.filtration.highest();
    if (!V2.filtration.steps().empty()) {
        lo = std::min(lo, V2.filtration.lowest() - f.shift());
        hi = std::max(hi, V2.filtration.highest() - f.shift());
    }
    for (long m = lo - 1; m <= hi && direct; ++m) {
        Subspace lhs = intersect(V2.at(m + f.shift()), im);
        Subspace rhs = image_of(f.map(), V1.at(m));
        if (lhs != rhs) direct = false;
    }
    bool graded = detail::strict_via_graded(f);
    if (direct != graded)
        throw std::logic_error("strictness: direct and graded criteria disagree");
    return direct;
}

// ---------------------------------------------------------------------------
// Two-filtration bigradings.
// ---------------------------------------------------------------------------

using BigradedTable = std::map<std::pair<long, long>, std::size_t>;

namespace detail {

/// dim Gr^F_m Gr^G_n V over all (m,n), computed by inducing F on each
/// G-graded quotient.
inline BigradedTable bigraded_one_order(const Filtration& f, const Filtration& g) {
    BigradedTable table;
    FilteredSpace gspace{g};
    for (long n : g.jumps()) {
        Subquotient grG(g.at(n), g.at(n - 1));
        if (grG.dim() == 0) continue;
        std::map<long, Subspace> induced;
        for (const auto& [m, fm] : f.steps())
            induced.emplace(m, grG.project_subspace(intersect(fm, g.at(n))));
        FilteredSpace onGr(Filtration(grG.dim(), induced));
        for (const auto& [m, d] : gr_dims(onGr))
            if (d > 0) table[{m, n}] = d;
    }
    return table;
}

}  // namespace detail

/// Table (m,k) -> dim Gr^F_m Gr^G_k, computed in both orders; the orders must
/// agree entrywise.
inline BigradedTable bigraded_dims(const FilteredSpace& fs, const Filtration& second) {
    if (second.ambient() != fs.dim()) throw dimension_mismatch("bigraded_dims");
    BigradedTable fg = detail::bigraded_one_order(fs.filtration, second);
    BigradedTable gf = detail::bigraded_one_order(second, fs.filtration);
    BigradedTable gf_swapped;
    for (const auto& [mk, d] : gf) gf_swapped[{mk.second, mk.first}] = d;
    if (fg != gf_swapped)
        throw std::logic_error("bigraded_dims: computation orders disagree");
    return fg;
}

}  // namespace wfilt
