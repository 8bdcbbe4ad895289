// Representation-dimension arithmetic: free Lie algebra graded dimensions
// (Witt / Moebius formula), gl_g irreducible dimensions (hook content), the
// closed [k,k] and [k,k,1] dimension formulas, the one-irrep codimension
// bound against dim Gr^M_2 sp(H) = g(g+1)/2, and assorted structural
// dimensions (Johnson image, Magnus targets).
#pragma once

#include "linalg.hpp"

#include <numeric>

namespace wfilt {

using Count = mpz_class;

/// Weakly decreasing positive parts; a gl_g highest weight when length <= g.
struct Partition {
    std::vector<unsigned> parts;

    Partition(std::initializer_list<unsigned> p) : parts(p) { check(); }
    explicit Partition(std::vector<unsigned> p) : parts(std::move(p)) { check(); }

    std::size_t length() const { return parts.size(); }
    unsigned boxes() const { return std::accumulate(parts.begin(), parts.end(), 0u); }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < parts.size(); ++i)
            s += (i ? "," : "") + std::to_string(parts[i]);
        return s + "]";
    }

private:
    void check() const {
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] == 0) throw error("Partition: zero part");
            if (i > 0 && parts[i] > parts[i - 1]) throw error("Partition: parts not decreasing");
        }
    }
};

inline int moebius(unsigned n) {
    int mu = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

/// dim of the degree-m piece of the free Lie algebra on r generators:
/// (1/m) sum_{d|m} mu(d) r^{m/d}.
inline Count witt_dim(unsigned rank, unsigned degree) {
    if (rank < 1 || degree < 1) throw error("witt_dim: rank and degree must be >= 1");
    mpz_class acc = 0;
    for (unsigned d = 1; d <= degree; ++d) {
        if (degree % d) continue;
        mpz_class power;
        mpz_ui_pow_ui(power.get_mpz_t(), rank, degree / d);
        acc += moebius(d) * power;
    }
    mpz_class q, r;
    mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), acc.get_mpz_t(), degree);
    if (r != 0) throw std::logic_error("witt_dim: necklace sum not divisible by degree");
    return q;
}

inline Count binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

/// Hook content formula: dim V_lambda(gl_g) = prod (g + j - i) / hook(i,j).
inline Count gl_irrep_dim(const Partition& lambda, unsigned g) {
    if (lambda.length() > g)
        throw error("gl_irrep_dim: partition longer than g rows");
    std::vector<unsigned> conj;  // column lengths
    if (!lambda.parts.empty()) {
        conj.assign(lambda.parts[0], 0);
        for (unsigned p : lambda.parts)
            for (unsigned j = 0; j < p; ++j) ++conj[j];
    }
    mpq_class dim = 1;
    for (std::size_t i = 0; i < lambda.parts.size(); ++i)
        for (std::size_t j = 0; j < lambda.parts[i]; ++j) {
            long content = static_cast<long>(g) + static_cast<long>(j) - static_cast<long>(i);
            unsigned hook = (lambda.parts[i] - j) + (conj[j] - i) - 1;
            mpq_class factor(content, hook);
            factor.canonicalize();
            dim *= factor;
        }
    dim.canonicalize();
    if (dim.get_den() != 1) throw std::logic_error("gl_irrep_dim: non-integral product");
    return dim.get_num();
}

namespace detail {

inline mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline mpz_class squared_rising(unsigned g, unsigned k) {
    // prod_{j=0}^{k-2} (g+j)^2, empty product for k = 1
    mpz_class p = 1;
    for (unsigned j = 0; j + 2 <= k; ++j) p *= mpz_class(g + j) * mpz_class(g + j);
    return p;
}

}  // namespace detail

/// dim V_[k,k] = (g-1)(g+k-1) prod_{j=0}^{k-2}(g+j)^2 / (k!(k+1)!).
inline Count dim_kk_formula(unsigned g, unsigned k) {
    if (g < 2 || k < 1) throw error("dim_kk_formula: need g >= 2, k >= 1");
    mpq_class v(mpz_class(g - 1) * mpz_class(g + k - 1) * detail::squared_rising(g, k),
                detail::factorial(k) * detail::factorial(k + 1));
    v.canonicalize();
    if (v.get_den() != 1) throw std::logic_error("dim_kk_formula: non-integral value");
    return v.get_num();
}

/// dim V_[k,k,1] = (g-1)(g-2)(g+k-1) prod_{j=0}^{k-2}(g+j)^2 / ((k-1)!(k+2)!).
inline Count dim_kk1_formula(unsigned g, unsigned k) {
    if (g < 3 || k < 1) throw error("dim_kk1_formula: need g >= 3, k >= 1");
    mpq_class v(mpz_class(g - 1) * mpz_class(g - 2) * mpz_class(g + k - 1) *
                    detail::squared_rising(g, k),
                detail::factorial(k - 1) * detail::factorial(k + 2));
    v.canonicalize();
    if (v.get_den() != 1) throw std::logic_error("dim_kk1_formula: non-integral value");
    return v.get_num();
}

/// [k,k] for m = 2k, [k,k,1] for m = 2k-1.
inline Partition theorem_partition(unsigned m) {
    if (m < 1) throw error("theorem_partition: m >= 1");
    unsigned k = (m + 1) / 2;
    if (m % 2 == 0) return Partition{k, k};
    return Partition{k, k, 1};
}

/// One-irrep lower bound for the codimension: dim V_{lambda(m)} - g(g+1)/2.
/// A lower bound only; values <= 0 mean the single irreducible does not
/// suffice, not that the codimension vanishes.
inline mpz_class codim_bound(unsigned g, unsigned m) {
    if (g < 3 || m < 1) throw error("codim_bound: need g >= 3, m >= 1");
    unsigned k = (m + 1) / 2;
    Count d = (m % 2 == 0) ? dim_kk_formula(g, k) : dim_kk1_formula(g, k);
    return d - mpz_class(g) * mpz_class(g + 1) / 2;
}

/// Smallest m covered by the extension theorem's table at genus g.
inline unsigned theorem_threshold(unsigned g) {
    if (g < 3) throw error("theorem_threshold: table starts at g = 3");
    if (g == 3) return 4;
    if (g <= 6) return 2;
    return 1;
}

/// (g,m) pairs inside the theorem's table where the one-irrep bound is not
/// positive. Emitted, never hidden.
inline std::vector<std::pair<unsigned, unsigned>> single_irrep_insufficient(unsigned g_max,
                                                                            unsigned m_max) {
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned g = 3; g <= g_max; ++g)
        for (unsigned m = theorem_threshold(g); m <= m_max; ++m)
            if (codim_bound(g, m) <= 0) out.emplace_back(g, m);
    return out;
}

/// Structural dimensions used around the extension theorem: the Johnson image
/// Lambda^3 H, the Magnus targets Hom(A, L_2(A)) and Hom(A, L_3(A)),
/// Hom(V, Lambda^2 V) for the rank-g free group, and Lambda^2 Hom(A, L_2(A)).
struct StructuralDims {
    Count lambda3_h;
    Count hom_a_l2;
    Count hom_a_l3;
    Count hom_v_lambda2;
    Count lambda2_hom_a_l2;
};

inline StructuralDims structural_dims(unsigned g) {
    if (g < 2) throw error("structural_dims: g >= 2");
    StructuralDims d;
    d.lambda3_h = binomial(2 * g, 3);
    d.hom_a_l2 = mpz_class(g) * witt_dim(g, 2);
    d.hom_a_l3 = mpz_class(g) * witt_dim(g, 3);
    d.hom_v_lambda2 = mpz_class(g) * mpz_class(g) * mpz_class(g - 1) / 2;
    Count h = d.hom_a_l2;
    d.lambda2_hom_a_l2 = h * (h - 1) / 2;
    return d;
}

}  // namespace wfilt
