// Exact rational linear algebra on dense matrices: canonical row-echelon
// subspaces, sums, intersections, kernels, preimages, and induced maps on
// subquotients. Everything is immutable after construction and safe to use
// from concurrent contexts.
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wfilt {

using Rat = mpq_class;
using Vec = std::vector<Rat>;

/// Domain errors (bad preconditions, invalid models). CLI maps these to exit 1.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_mismatch : error {
    using error::error;
};

struct non_invariant_subspace : error {
    using error::error;
};

/// Malformed textual input (bad rational literal, schema violation). Exit 2.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse "p/q" or "p" with arbitrary-precision integers; denominator > 0.
inline Rat rat_parse(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw parse_error("bad rational literal: '" + s + "'");
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw parse_error("bad rational literal: '" + s + "'");
    if (q.get_den() == 0) throw parse_error("zero denominator: '" + s + "'");
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool vec_is_zero(const Vec& v) {
    for (const Rat& x : v)
        if (x != 0) return false;
    return true;
}

inline Vec vec_scaled(const Vec& v, const Rat& c) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
    return out;
}

inline void vec_axpy(Vec& dst, const Rat& c, const Vec& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
}

// ---------------------------------------------------------------------------
// Mat: dense rational matrix acting on column vectors, x -> M x.
// ---------------------------------------------------------------------------

class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    Mat(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries)) {
        if (e_.size() != rows_ * cols_) throw dimension_mismatch("entry count != rows*cols");
    }
    /// Row-of-rows constructor, mostly for tests and JSON decoding.
    static Mat from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return Mat();
        Mat m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw dimension_mismatch("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }
    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static Mat zero(std::size_t r, std::size_t c) { return Mat(r, c); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    Vec row(std::size_t i) const {
        Vec v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }
    Vec col(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    bool is_zero() const { return vec_is_zero(e_); }
    bool is_square() const { return rows_ == cols_; }

    Vec apply(const Vec& x) const {
        if (x.size() != cols_) throw dimension_mismatch("Mat::apply: size mismatch");
        Vec y(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) y[i] += at(i, j) * x[j];
        return y;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw dimension_mismatch("Mat::operator*: inner dims");
        Mat p(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                if (at(i, k) == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) p.at(i, j) += at(i, k) * o.at(k, j);
            }
        return p;
    }
    Mat operator+(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("Mat::operator+");
        Mat s = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] += o.e_[i];
        return s;
    }
    Mat operator-(const Mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw dimension_mismatch("Mat::operator-");
        Mat s = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) s.e_[i] -= o.e_[i];
        return s;
    }
    Mat scaled(const Rat& c) const {
        Mat s = *this;
        for (Rat& x : s.e_) x *= c;
        return s;
    }
    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }
    Mat pow(std::size_t k) const {
        if (!is_square()) throw dimension_mismatch("Mat::pow: not square");
        Mat acc = identity(rows_);
        for (std::size_t i = 0; i < k; ++i) acc = acc * *this;
        return acc;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> e_;
};

/// Kronecker product acting on x ⊗ y stacked as x-major blocks.
inline Mat kronecker(const Mat& a, const Mat& b) {
    Mat k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return k;
}

inline Vec kron_vec(const Vec& u, const Vec& v) {
    Vec w(u.size() * v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) w[i * v.size() + j] = u[i] * v[j];
    return w;
}

// ---------------------------------------------------------------------------
// Row reduction. In-place Gauss-Jordan to reduced row-echelon form; returns
// pivot columns. The RREF of a generating set is the unique canonical basis
// of its row space, so Subspace equality is plain structural equality.
// ---------------------------------------------------------------------------

inline std::vector<std::size_t> rref_in_place(std::vector<Vec>& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rat inv = 1 / rows[r][c];
        for (std::size_t j = c; j < ncols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

// ---------------------------------------------------------------------------
// Subspace: canonical representative of a linear subspace of Q^n. basis rows
// are in reduced row-echelon form with strictly increasing pivot columns, so
// two Subspaces are equal iff their representations are identical.
// ---------------------------------------------------------------------------

class Subspace {
public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
    Subspace(std::size_t ambient, std::vector<Vec> generators) : ambient_(ambient) {
        for (const Vec& g : generators)
            if (g.size() != ambient_) throw dimension_mismatch("generator length != ambient");
        pivots_ = rref_in_place(generators);
        basis_ = std::move(generators);
    }

    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }
    static Subspace full(std::size_t ambient) {
        std::vector<Vec> rows(ambient, Vec(ambient, Rat(0)));
        for (std::size_t i = 0; i < ambient; ++i) rows[i][i] = 1;
        return Subspace(ambient, std::move(rows));
    }
    static Subspace span_of(std::vector<Vec> generators) {
        if (generators.empty()) throw error("span_of: cannot infer ambient from empty set");
        return Subspace(generators[0].size(), std::move(generators));
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<Vec>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    bool is_zero() const { return basis_.empty(); }
    bool is_full() const { return basis_.size() == ambient_; }

    /// v minus its pivot-elimination against the basis; zero iff v lies here.
    Vec reduce(Vec v) const {
        if (v.size() != ambient_) throw dimension_mismatch("Subspace::reduce");
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rat& c = v[pivots_[i]];
            if (c != 0) {
                Rat f = c;  // basis rows have unit pivots
                for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * basis_[i][j];
            }
        }
        return v;
    }

    bool contains(const Vec& v) const { return vec_is_zero(reduce(v)); }
    bool contains(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw dimension_mismatch("Subspace::contains");
        for (const Vec& b : other.basis_)
            if (!contains(b)) return false;
        return true;
    }

    /// Expansion coefficients of a member vector in the canonical basis.
    Vec coords(const Vec& v) const {
        if (!contains(v)) throw error("Subspace::coords: vector not in subspace");
        Vec c(basis_.size());
        for (std::size_t i = 0; i < basis_.size(); ++i) c[i] = v[pivots_[i]];
        return c;
    }

    Vec from_coords(const Vec& c) const {
        if (c.size() != basis_.size()) throw dimension_mismatch("Subspace::from_coords");
        Vec v(ambient_, Rat(0));
        for (std::size_t i = 0; i < basis_.size(); ++i) vec_axpy(v, c[i], basis_[i]);
        return v;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    /// Lexicographic order on (ambient, dim, entries); used for canonical sorting.
    bool operator<(const Subspace& o) const {
        if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
        if (basis_.size() != o.basis_.size()) return basis_.size() < o.basis_.size();
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) {
                int c = cmp(basis_[i][j], o.basis_[i][j]);
                if (c != 0) return c < 0;
            }
        return false;
    }

private:
    std::size_t ambient_;
    std::vector<Vec> basis_;
    std::vector<std::size_t> pivots_;
};

/// Canonical subspace spanned by arbitrary generators (ragged input rejected).
inline Subspace echelonize(std::size_t ambient, std::vector<Vec> vectors) {
    return Subspace(ambient, std::move(vectors));
}

inline Subspace sum(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw dimension_mismatch("sum: ambient mismatch");
    std::vector<Vec> gen = a.basis();
    gen.insert(gen.end(), b.basis().begin(), b.basis().end());
    return Subspace(a.ambient(), std::move(gen));
}

/// Zassenhaus: row-reduce [A|A; B|0]; left block spans a+b, rows vanishing on
/// the left carry a basis of a∩b on the right.
inline std::pair<Subspace, Subspace> meet_join(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient()) throw dimension_mismatch("meet_join: ambient mismatch");
    const std::size_t n = a.ambient();
    std::vector<Vec> work;
    for (const Vec& r : a.basis()) {
        Vec w(2 * n, Rat(0));
        for (std::size_t j = 0; j < n; ++j) w[j] = w[n + j] = r[j];
        work.push_back(std::move(w));
    }
    for (const Vec& r : b.basis()) {
        Vec w(2 * n, Rat(0));
        for (std::size_t j = 0; j < n; ++j) w[j] = r[j];
        work.push_back(std::move(w));
    }
    rref_in_place(work);
    std::vector<Vec> sum_gen, meet_gen;
    for (const Vec& w : work) {
        Vec left(w.begin(), w.begin() + n), right(w.begin() + n, w.end());
        if (vec_is_zero(left))
            meet_gen.push_back(std::move(right));
        else
            sum_gen.push_back(std::move(left));
    }
    return {Subspace(n, std::move(meet_gen)), Subspace(n, std::move(sum_gen))};
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    return meet_join(a, b).first;
}

/// Nullspace of M as a canonical Subspace of the domain.
inline Subspace kernel(const Mat& m) {
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    std::vector<std::size_t> piv = rref_in_place(rows);
    std::vector<bool> is_piv(m.cols(), false);
    for (std::size_t p : piv) is_piv[p] = true;
    std::vector<Vec> gens;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (is_piv[c]) continue;
        Vec v(m.cols(), Rat(0));
        v[c] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -rows[i][c];
        gens.push_back(std::move(v));
    }
    return Subspace(m.cols(), std::move(gens));
}

/// Column space of M, expressed in the codomain.
inline Subspace image(const Mat& m) {
    std::vector<Vec> gens;
    gens.reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) gens.push_back(m.col(j));
    return Subspace(m.rows(), std::move(gens));
}

/// Matrix D with ker D = s: one constraint row per complement dimension.
inline Mat annihilator(const Subspace& s) {
    std::vector<Vec> rows = s.basis();
    Mat bs = rows.empty() ? Mat::zero(0, s.ambient()) : Mat::from_rows(rows);
    Subspace orth = kernel(bs);  // {x : Bs x = 0}, dim = ambient - dim s
    // y in s  <=>  d.y = 0 for every d orthogonal to s (dot product is
    // non-degenerate over Q).
    if (orth.dim() == 0) return Mat::zero(0, s.ambient());
    return Mat::from_rows(orth.basis());
}

inline Subspace image_of(const Mat& f, const Subspace& s) {
    if (s.ambient() != f.cols()) throw dimension_mismatch("image_of: domain mismatch");
    std::vector<Vec> gens;
    gens.reserve(s.dim());
    for (const Vec& b : s.basis()) gens.push_back(f.apply(b));
    return Subspace(f.rows(), std::move(gens));
}

inline Subspace preimage_of(const Mat& f, const Subspace& s) {
    if (s.ambient() != f.rows()) throw dimension_mismatch("preimage_of: codomain mismatch");
    Mat d = annihilator(s);
    if (d.rows() == 0) return Subspace::full(f.cols());
    return kernel(d * f);
}

struct ImageKernelPreimage {
    Subspace image_of_sub;
    Subspace kernel_of_map;
    Subspace preimage_of_sub;
};

/// (f(s), ker f, f^{-1}(s)) in one call; s must live in both domain and
/// codomain, so f must be square here.
inline ImageKernelPreimage image_kernel_preimage(const Mat& f, const Subspace& s) {
    if (f.cols() != s.ambient() || f.rows() != s.ambient())
        throw dimension_mismatch("image_kernel_preimage: ambient mismatch");
    return {image_of(f, s), kernel(f), preimage_of(f, s)};
}

// ---------------------------------------------------------------------------
// Subquotient sub/smaller with the pivot-complement representative basis:
// coordinates w.r.t. sub's canonical basis, representatives chosen at the
// non-pivot positions of smaller-in-sub coordinates. Deterministic, so
// induced matrices are reproducible fixtures.
// ---------------------------------------------------------------------------

class Subquotient {
public:
    Subquotient(Subspace sub, Subspace smaller)
        : sub_(std::move(sub)), smaller_coords_(sub_.dim()) {
        if (smaller.ambient() != sub_.ambient())
            throw dimension_mismatch("Subquotient: ambient mismatch");
        if (!sub_.contains(smaller))
            throw non_invariant_subspace("Subquotient: smaller not contained in sub");
        std::vector<Vec> cgens;
        cgens.reserve(smaller.dim());
        for (const Vec& b : smaller.basis()) cgens.push_back(sub_.coords(b));
        smaller_coords_ = Subspace(sub_.dim(), std::move(cgens));
        std::vector<bool> is_piv(sub_.dim(), false);
        for (std::size_t p : smaller_coords_.pivots()) is_piv[p] = true;
        for (std::size_t i = 0; i < sub_.dim(); ++i)
            if (!is_piv[i]) comp_.push_back(i);
    }

    std::size_t dim() const { return comp_.size(); }
    const Subspace& sub() const { return sub_; }

    /// Representative ambient vectors of the quotient basis.
    std::vector<Vec> representatives() const {
        std::vector<Vec> reps;
        reps.reserve(comp_.size());
        for (std::size_t i : comp_) reps.push_back(sub_.basis()[i]);
        return reps;
    }

    /// Quotient coordinates of v ∈ sub.
    Vec project(const Vec& v) const {
        Vec c = smaller_coords_.reduce(sub_.coords(v));
        Vec q(comp_.size());
        for (std::size_t i = 0; i < comp_.size(); ++i) q[i] = c[comp_[i]];
        return q;
    }

    /// Ambient representative of quotient coordinates.
    Vec lift(const Vec& q) const {
        if (q.size() != comp_.size()) throw dimension_mismatch("Subquotient::lift");
        Vec c(sub_.dim(), Rat(0));
        for (std::size_t i = 0; i < comp_.size(); ++i) c[comp_[i]] = q[i];
        return sub_.from_coords(c);
    }

    /// Subspace of quotient coordinates spanned by the images of members of s.
    Subspace project_subspace(const Subspace& s) const {
        std::vector<Vec> gens;
        for (const Vec& b : s.basis()) {
            if (!sub_.contains(b)) throw non_invariant_subspace("project_subspace: not in sub");
            gens.push_back(project(b));
        }
        return Subspace(dim(), std::move(gens));
    }

    /// Full preimage in sub of a subspace of quotient coordinates.
    Subspace preimage_subspace(const Subspace& q) const {
        if (q.ambient() != dim()) throw dimension_mismatch("preimage_subspace");
        std::vector<Vec> gens;
        for (const Vec& b : smaller_coords_.basis()) gens.push_back(sub_.from_coords(b));
        for (const Vec& b : q.basis()) gens.push_back(lift(b));
        return Subspace(sub_.ambient(), std::move(gens));
    }

    /// Matrix of the endomorphism induced by f on sub/smaller. Requires
    /// f(sub) ⊆ sub and f(smaller) ⊆ smaller.
    Mat induce(const Mat& f) const {
        if (f.cols() != sub_.ambient() || f.rows() != sub_.ambient())
            throw dimension_mismatch("Subquotient::induce: shape");
        for (const Vec& b : sub_.basis())
            if (!sub_.contains(f.apply(b)))
                throw non_invariant_subspace("induce: f does not preserve sub");
        for (std::size_t i = 0; i < smaller_coords_.dim(); ++i) {
            Vec amb = sub_.from_coords(smaller_coords_.basis()[i]);
            Vec img = f.apply(amb);
            Vec c = smaller_coords_.reduce(sub_.coords(img));
            if (!vec_is_zero(c))
                throw non_invariant_subspace("induce: f does not preserve smaller");
        }
        Mat m(dim(), dim());
        std::vector<Vec> reps = representatives();
        for (std::size_t j = 0; j < reps.size(); ++j) {
            Vec q = project(f.apply(reps[j]));
            for (std::size_t i = 0; i < dim(); ++i) m.at(i, j) = q[i];
        }
        return m;
    }

private:
    Subspace sub_;
    Subspace smaller_coords_;        // smaller, in sub coordinates
    std::vector<std::size_t> comp_;  // complement positions = quotient basis
};

inline Mat induce_on_subquotient(const Mat& f, const Subspace& sub, const Subspace& smaller) {
    return Subquotient(sub, smaller).induce(f);
}

/// Solve M x = b exactly; nullopt when inconsistent.
inline std::optional<Vec> solve(const Mat& m, const Vec& b) {
    if (b.size() != m.rows()) throw dimension_mismatch("solve: rhs size");
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Vec r = m.row(i);
        r.push_back(b[i]);
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> piv = rref_in_place(rows);
    Vec x(m.cols(), Rat(0));
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == m.cols()) return std::nullopt;  // pivot in augmented column
        x[piv[i]] = rows[i][m.cols()];
    }
    return x;
}

/// Inverse of a square invertible matrix; throws on singular input.
inline Mat inverse(const Mat& m) {
    if (!m.is_square()) throw dimension_mismatch("inverse: not square");
    const std::size_t n = m.rows();
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) {
        Vec r = m.row(i);
        r.resize(2 * n, Rat(0));
        r[n + i] = 1;
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> piv = rref_in_place(rows);
    if (piv.size() != n || piv.back() != n - 1) throw error("inverse: singular matrix");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = rows[i][n + j];
    return inv;
}

inline std::size_t rank(const Mat& m) {
    std::vector<Vec> rows;
    rows.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
    return rref_in_place(rows).size();
}

}  // namespace wfilt
