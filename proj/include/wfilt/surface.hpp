// Surface homology models: symplectic H_1(S) with its intersection form, the
// punctured extension H_1(S') with its two-step weight filtration, curve
// systems given by homology classes, Picard-Lefschetz operators, and the
// A / H_0 / B decomposition with its grading element xi.
//
// Basis convention: a_1..a_g, b_1..b_g, then n-1 puncture classes e_1..e_{n-1}
// (one relation among the n punctures is already quotiented out). Curve
// classes are caller-supplied lifted vectors; only the homological necessary
// conditions are machine-checked.
#pragma once

#include "nilpotent.hpp"

namespace wfilt {

struct invalid_curve_system : error {
    using error::error;
};

class SurfaceModel {
public:
    SurfaceModel(std::size_t genus, std::size_t punctures)
        : genus_(genus), punctures_(punctures), j_(dim(), dim()) {
        for (std::size_t i = 0; i < genus_; ++i) {
            j_.at(i, genus_ + i) = 1;
            j_.at(genus_ + i, i) = -1;
        }
        // puncture rows and columns stay zero
    }

    std::size_t genus() const { return genus_; }
    std::size_t punctures() const { return punctures_; }
    std::size_t h_dim() const { return 2 * genus_; }
    std::size_t dim() const {
        return 2 * genus_ + (punctures_ > 0 ? punctures_ - 1 : 0);
    }
    bool stable() const {
        return 2 < 2 * genus_ + punctures_;
    }
    const Mat& intersection_form() const { return j_; }

    Rat pair(const Vec& x, const Vec& y) const {
        Vec jy = j_.apply(y);
        Rat acc = 0;
        for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * jy[i];
        return acc;
    }

    std::size_t a_index(std::size_t i) const { return i; }               // 0-based
    std::size_t b_index(std::size_t i) const { return genus_ + i; }
    std::size_t e_index(std::size_t i) const { return 2 * genus_ + i; }

    Vec basis_vec(std::size_t idx) const {
        Vec v(dim(), Rat(0));
        v[idx] = 1;
        return v;
    }

private:
    std::size_t genus_, punctures_;
    Mat j_;
};

/// Standard symplectic form on Q^{2g} alone (the H-part).
inline Mat symplectic_form(std::size_t g) {
    Mat j(2 * g, 2 * g);
    for (std::size_t i = 0; i < g; ++i) {
        j.at(i, g + i) = 1;
        j.at(g + i, i) = -1;
    }
    return j;
}

struct Curve {
    std::string label;
    Vec cls;  // lifted class in H_1(S'), integer entries
};

struct CurveSystem {
    std::vector<Curve> curves;

    std::vector<Vec> classes() const {
        std::vector<Vec> out;
        out.reserve(curves.size());
        for (const Curve& c : curves) out.push_back(c.cls);
        return out;
    }
};

namespace detail {

inline bool integral_primitive_or_zero(const Vec& v) {
    mpz_class g = 0;
    for (const Rat& x : v) {
        if (x.get_den() != 1) return false;
        g = gcd(g, mpz_class(x.get_num()));
    }
    return g == 0 || g == 1;
}

}  // namespace detail

/// Homological validity: classes live in the model, are integral and
/// primitive-or-zero, and pairwise intersection numbers vanish. Geometric
/// realizability stays the caller's responsibility.
inline void validate_curve_system(const SurfaceModel& s, const CurveSystem& cs) {
    for (const Curve& c : cs.curves) {
        if (c.cls.size() != s.dim())
            throw invalid_curve_system("curve '" + c.label + "': class has wrong length");
        if (!detail::integral_primitive_or_zero(c.cls))
            throw invalid_curve_system("curve '" + c.label + "': class not primitive or zero");
    }
    for (std::size_t i = 0; i < cs.curves.size(); ++i)
        for (std::size_t j = i + 1; j < cs.curves.size(); ++j)
            if (s.pair(cs.curves[i].cls, cs.curves[j].cls) != 0)
                throw invalid_curve_system("curves '" + cs.curves[i].label + "' and '" +
                                           cs.curves[j].label + "' intersect");
}

/// H_1(S') with W_{-2} spanned by the puncture classes and W_{-1} everything;
/// a single jump at -1 when there is at most one puncture.
inline FilteredSpace punctured_homology(std::size_t g, std::size_t n) {
    SurfaceModel s(g, n);
    if (!(s.stable() || n == 0)) throw error("punctured_homology: unstable (g,n)");
    std::map<long, Subspace> steps;
    if (n >= 2) {
        std::vector<Vec> punct;
        for (std::size_t i = 0; i + 1 < n; ++i) punct.push_back(s.basis_vec(s.e_index(i)));
        steps.emplace(-2, Subspace(s.dim(), std::move(punct)));
    }
    steps.emplace(-1, Subspace::full(s.dim()));
    return FilteredSpace(Filtration(s.dim(), steps));
}

/// N_gamma : x -> sum_j <c_j, x> c_j. Certified: squares to zero, preserves
/// the weight filtration, kills W_{-2}, and is symplectically compatible on
/// the H-part.
inline NilpotentOperator picard_lefschetz(const SurfaceModel& s, const CurveSystem& cs) {
    validate_curve_system(s, cs);
    const std::size_t n = s.dim();
    Mat N(n, n);
    for (const Curve& c : cs.curves) {
        Vec jrow(n, Rat(0));  // c^T J
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l)
                if (s.intersection_form().at(l, k) != 0)
                    jrow[k] += c.cls[l] * s.intersection_form().at(l, k);
        for (std::size_t r = 0; r < n; ++r) {
            if (c.cls[r] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) N.at(r, k) += c.cls[r] * jrow[k];
        }
    }
    if (!(N * N).is_zero()) throw std::logic_error("picard_lefschetz: N^2 != 0");
    if (s.punctures() >= 2) {
        FilteredSpace w = punctured_homology(s.genus(), s.punctures());
        if (!image_of(N, w.at(-2)).is_zero())
            throw std::logic_error("picard_lefschetz: N does not kill W_{-2}");
    }
    // <Nx,y> + <x,Ny> = 0 on the H-part
    Mat k = N.transpose() * s.intersection_form() + s.intersection_form() * N;
    for (std::size_t i = 0; i < s.h_dim(); ++i)
        for (std::size_t j = 0; j < s.h_dim(); ++j)
            if (k.at(i, j) != 0)
                throw std::logic_error("picard_lefschetz: not in the symplectic algebra");
    return NilpotentOperator(std::move(N));
}

struct SpanInfo {
    Subspace span_in_h;
    bool isotropic;
    bool lagrangian_in_h;
};

/// <gamma> inside H_1(S), with the isotropy and Lagrangian (rationality
/// criterion) flags.
inline SpanInfo span_and_isotropy(const SurfaceModel& s, const CurveSystem& cs) {
    validate_curve_system(s, cs);
    std::vector<Vec> hparts;
    for (const Curve& c : cs.curves) hparts.emplace_back(c.cls.begin(), c.cls.begin() + s.h_dim());
    Subspace span(s.h_dim(), std::move(hparts));
    Mat jh = symplectic_form(s.genus());
    bool iso = true;
    for (std::size_t i = 0; i < span.dim() && iso; ++i)
        for (std::size_t j = i; j < span.dim() && iso; ++j) {
            Vec jy = jh.apply(span.basis()[j]);
            Rat acc = 0;
            for (std::size_t t = 0; t < jy.size(); ++t) acc += span.basis()[i][t] * jy[t];
            if (acc != 0) iso = false;
        }
    return {span, iso, span.dim() == s.genus()};
}

/// The bounding-pair model: genus g with a pair of points, one on each side.
/// The twist-difference operator sends x to <c,x> e, c = a_1; it is nonzero
/// but acts trivially on both weight graded quotients.
inline std::pair<FilteredSpace, NilpotentOperator> bounding_pair_model(std::size_t g) {
    if (g < 1) throw error("bounding_pair_model: genus must be >= 1");
    SurfaceModel s(g, 2);
    FilteredSpace w = punctured_homology(g, 2);
    Mat N(s.dim(), s.dim());
    Vec c = s.basis_vec(s.a_index(0));
    for (std::size_t k = 0; k < s.dim(); ++k) {
        Rat coeff = 0;  // <c, basis_k>
        for (std::size_t l = 0; l < s.dim(); ++l) coeff += c[l] * s.intersection_form().at(l, k);
        N.at(s.e_index(0), k) = coeff;
    }
    return {w, NilpotentOperator(std::move(N))};
}

/// A = Gr^M_0, H_0 = Gr^M_{-1}, B = Gr^M_{-2} of the H-part monodromy
/// filtration (centered -1), realized by pivot-complement lifts, together with
/// the grading element xi acting as +1 on A, 0 on H_0, -1 on B.
struct ABDecomposition {
    Subspace A, H0, B;
    Mat xi;                      // on the H-part
    Filtration monodromy_on_h;   // centered -1
};

inline ABDecomposition ab_decomposition(const SurfaceModel& s, const CurveSystem& cs) {
    validate_curve_system(s, cs);
    const std::size_t h = s.h_dim();
    std::vector<Curve> hcurves;
    for (const Curve& c : cs.curves)
        hcurves.push_back({c.label, Vec(c.cls.begin(), c.cls.begin() + h)});
    SurfaceModel closed(s.genus(), 0);
    NilpotentOperator nh = picard_lefschetz(closed, CurveSystem{hcurves});
    Filtration m = monodromy_filtration(nh, -1);

    Subspace b = m.at(-2);
    Subspace ker = m.at(-1);
    Subspace aSpan(h, Subquotient(Subspace::full(h), ker).representatives());
    Subspace h0Span(h, Subquotient(ker, b).representatives());

    Mat t(h, h);  // columns: A reps, H0 reps, B basis
    std::size_t col = 0;
    auto put = [&](const std::vector<Vec>& cols) {
        for (const Vec& v : cols) {
            for (std::size_t r = 0; r < h; ++r) t.at(r, col) = v[r];
            ++col;
        }
    };
    put(aSpan.basis());
    put(h0Span.basis());
    put(b.basis());
    Mat d(h, h);
    for (std::size_t i = 0; i < aSpan.dim(); ++i) d.at(i, i) = 1;
    for (std::size_t i = 0; i < b.dim(); ++i) {
        std::size_t idx = aSpan.dim() + h0Span.dim() + i;
        d.at(idx, idx) = -1;
    }
    Mat xi = t * d * inverse(t);
    return {aSpan, h0Span, b, std::move(xi), std::move(m)};
}

/// xi acts on Gr^M_k of H^{tensor n} as the scalar k+n under this library's
/// steps-{0,-1,-2} normalization; true iff the induced action is scalar with
/// that eigenvalue on every graded piece.
inline bool xi_eigenvalue_check(const ABDecomposition& dec, std::size_t tensor_power) {
    if (tensor_power < 1 || tensor_power > 3)
        throw error("xi_eigenvalue_check: tensor power must be 1..3");
    FilteredSpace hm(dec.monodromy_on_h);
    FilteredSpace ten = hm;
    Mat xi_n = dec.xi;
    for (std::size_t p = 1; p < tensor_power; ++p) {
        xi_n = kronecker(xi_n, Mat::identity(hm.dim())) +
               kronecker(Mat::identity(ten.dim()), dec.xi);
        ten = tensor_filtration(ten, hm);
    }
    for (const auto& [k, d] : gr_dims(ten)) {
        Subquotient sq(ten.at(k), ten.at(k - 1));
        Mat induced = sq.induce(xi_n);
        Mat expected = Mat::identity(d).scaled(Rat(k + static_cast<long>(tensor_power)));
        if (induced != expected) return false;
    }
    return true;
}

/// The symplectic Lie algebra {X : X^T J + J X = 0} as a subspace of
/// End(Q^n) flattened row-major (the hom_filtration convention).
inline Subspace symplectic_algebra(const Mat& j) {
    const std::size_t n = j.rows();
    std::vector<Vec> constraints;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = 0; jj < n; ++jj) {
            Vec row(n * n, Rat(0));
            // (X^T J + J X)_{i,jj} = sum_k X_{k,i} J_{k,jj} + J_{i,k} X_{k,jj}
            for (std::size_t k = 0; k < n; ++k) {
                row[k * n + i] += j.at(k, jj);
                row[k * n + jj] += j.at(i, k);
            }
            constraints.push_back(std::move(row));
        }
    return kernel(Mat::from_rows(constraints));
}

/// Gr^M dimension profile of sp(H) for the monodromy filtration of the curve
/// system, via the Hom-filtration on End(H) restricted to sp(H).
inline std::map<long, std::size_t> sp_graded_dims(const SurfaceModel& s, const CurveSystem& cs) {
    ABDecomposition dec = ab_decomposition(s, cs);
    FilteredSpace hm(dec.monodromy_on_h);
    FilteredSpace end = hom_filtration(hm, hm);
    Subspace sp = symplectic_algebra(symplectic_form(s.genus()));
    auto [on_sp, on_quot] = induced_filtrations(end, sp);
    (void)on_quot;
    return gr_dims(on_sp);
}

}  // namespace wfilt
