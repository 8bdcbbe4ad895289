#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wfilt/surface.hpp>

#include "oracles.hpp"

using namespace wfilt;

namespace {

Vec v(std::initializer_list<long> xs) {
    Vec out;
    for (long x : xs) out.push_back(Rat(x));
    return out;
}

std::map<long, std::size_t> dims(std::initializer_list<std::pair<long, std::size_t>> xs) {
    return std::map<long, std::size_t>(xs.begin(), xs.end());
}

CurveSystem curves(const SurfaceModel& s, std::initializer_list<std::size_t> a_indices) {
    CurveSystem cs;
    std::size_t t = 0;
    for (std::size_t i : a_indices)
        cs.curves.push_back({"c" + std::to_string(t++), s.basis_vec(s.a_index(i))});
    return cs;
}

}  // namespace

TEST_CASE("surface model and intersection form") {
    SurfaceModel s(2, 3);
    CHECK(s.dim() == 6);
    CHECK(s.h_dim() == 4);
    CHECK(s.pair(s.basis_vec(s.a_index(0)), s.basis_vec(s.b_index(0))) == Rat(1));
    CHECK(s.pair(s.basis_vec(s.b_index(0)), s.basis_vec(s.a_index(0))) == Rat(-1));
    CHECK(s.pair(s.basis_vec(s.a_index(0)), s.basis_vec(s.b_index(1))) == Rat(0));
    // puncture classes pair to zero with everything
    for (std::size_t i = 0; i < s.dim(); ++i)
        CHECK(s.pair(s.basis_vec(s.e_index(0)), s.basis_vec(i)) == Rat(0));
}

TEST_CASE("punctured homology weight filtration") {
    SUBCASE("closed genus 2") {
        FilteredSpace h = punctured_homology(2, 0);
        CHECK(h.dim() == 4);
        CHECK(h.filtration.jumps() == std::vector<long>{-1});
    }
    SUBCASE("genus 1 with two punctures") {
        FilteredSpace h = punctured_homology(1, 2);
        CHECK(h.dim() == 3);
        CHECK(gr_dims(h) == dims({{-1, 2}, {-2, 1}}));
    }
    SUBCASE("genus 0 with four punctures is pure of weight -2") {
        FilteredSpace h = punctured_homology(0, 4);
        CHECK(h.dim() == 3);
        CHECK(gr_dims(h) == dims({{-2, 3}}));
    }
    SUBCASE("unstable shapes rejected") {
        CHECK_THROWS_AS(punctured_homology(0, 2), error);
        CHECK_NOTHROW(punctured_homology(1, 0));
    }
}

TEST_CASE("picard-lefschetz operator") {
    SUBCASE("empty curve system gives the zero operator") {
        SurfaceModel s(2, 0);
        NilpotentOperator n = picard_lefschetz(s, CurveSystem{});
        CHECK(n.matrix().is_zero());
    }
    SUBCASE("genus 2 closed, gamma = {a1}") {
        SurfaceModel s(2, 0);
        NilpotentOperator n = picard_lefschetz(s, curves(s, {0}));
        // N(b1) = a1, everything else killed
        CHECK(n.matrix().apply(s.basis_vec(s.b_index(0))) == s.basis_vec(s.a_index(0)));
        for (std::size_t i : {s.a_index(0), s.a_index(1), s.b_index(1)})
            CHECK(vec_is_zero(n.matrix().apply(s.basis_vec(i))));
    }
    SUBCASE("genus 1, two punctures, gamma = {a}") {
        SurfaceModel s(1, 2);
        NilpotentOperator n = picard_lefschetz(s, curves(s, {0}));
        CHECK(n.matrix().apply(s.basis_vec(s.b_index(0))) == s.basis_vec(s.a_index(0)));
        CHECK(vec_is_zero(n.matrix().apply(s.basis_vec(s.a_index(0)))));
        CHECK(vec_is_zero(n.matrix().apply(s.basis_vec(s.e_index(0)))));
    }
    SUBCASE("intersecting curves rejected") {
        SurfaceModel s(1, 0);
        CurveSystem bad;
        bad.curves.push_back({"a", s.basis_vec(s.a_index(0))});
        bad.curves.push_back({"b", s.basis_vec(s.b_index(0))});
        CHECK_THROWS_AS(picard_lefschetz(s, bad), invalid_curve_system);
    }
    SUBCASE("structural properties on random disjoint systems") {
        oracle::Rng rng(5150);
        int built = 0;
        for (int trial = 0; trial < 200 && built < 40; ++trial) {
            std::size_t g = static_cast<std::size_t>(oracle::rand_int(rng, 1, 3));
            std::size_t punct = static_cast<std::size_t>(oracle::rand_int(rng, 0, 3));
            SurfaceModel s(g, punct);
            if (!s.stable() && punct != 0) continue;
            // random subset of disjoint a-curves with random puncture lifts
            CurveSystem cs;
            for (std::size_t i = 0; i < g; ++i) {
                if (oracle::rand_int(rng, 0, 1) == 0) continue;
                Vec c = s.basis_vec(s.a_index(i));
                if (punct >= 2)
                    c[s.e_index(0)] = Rat(oracle::rand_int(rng, -1, 1));
                cs.curves.push_back({"c" + std::to_string(i), c});
            }
            NilpotentOperator n = picard_lefschetz(s, cs);
            const Mat& N = n.matrix();
            CHECK((N * N).is_zero());
            CHECK(span_and_isotropy(s, cs).isotropic);
            // im N inside span(gamma) + W_{-2}, and every class is in ker N
            std::vector<Vec> genspan;
            for (const Curve& c : cs.curves) genspan.push_back(c.cls);
            for (std::size_t i = 0; i + 1 < punct; ++i)
                genspan.push_back(s.basis_vec(s.e_index(i)));
            Subspace big(s.dim(), genspan);
            CHECK(big.contains(image(N)));
            for (const Curve& c : cs.curves) CHECK(vec_is_zero(N.apply(c.cls)));
            ++built;
        }
        CHECK(built == 40);
    }
}

TEST_CASE("span and isotropy") {
    SUBCASE("full a-basis is Lagrangian") {
        for (std::size_t g : {1u, 2u, 3u}) {
            SurfaceModel s(g, 0);
            CurveSystem cs;
            for (std::size_t i = 0; i < g; ++i) cs.curves.push_back({"a", s.basis_vec(s.a_index(i))});
            SpanInfo info = span_and_isotropy(s, cs);
            CHECK(info.span_in_h.dim() == g);
            CHECK(info.isotropic);
            CHECK(info.lagrangian_in_h);
        }
    }
    SUBCASE("single curve is isotropic but not Lagrangian") {
        SurfaceModel s(2, 0);
        SpanInfo info = span_and_isotropy(s, curves(s, {0}));
        CHECK(info.span_in_h.dim() == 1);
        CHECK(info.isotropic);
        CHECK_FALSE(info.lagrangian_in_h);
    }
    SUBCASE("separating curve spans nothing") {
        SurfaceModel s(2, 0);
        CurveSystem cs;
        cs.curves.push_back({"sep", Vec(4, Rat(0))});
        SpanInfo info = span_and_isotropy(s, cs);
        CHECK(info.span_in_h.dim() == 0);
    }
}

TEST_CASE("bounding pair model") {
    for (std::size_t g : {1u, 2u}) {
        auto [space, op] = bounding_pair_model(g);
        SurfaceModel s(g, 2);
        CHECK(space.dim() == 2 * g + 1);
        CHECK(op.matrix().apply(s.basis_vec(s.b_index(0))) == s.basis_vec(s.e_index(0)));
        for (std::size_t i = 0; i < s.dim(); ++i)
            if (i != s.b_index(0)) CHECK(vec_is_zero(op.matrix().apply(s.basis_vec(i))));
        auto ops = graded_operators(op, space.filtration);
        for (const auto& [m, gop] : ops) CHECK(gop.matrix().is_zero());
    }
}

TEST_CASE("bounding pair model needs genus at least 1") {
    CHECK_THROWS_AS(bounding_pair_model(0), error);
}

TEST_CASE("AB decomposition") {
    SurfaceModel s(2, 0);

    SUBCASE("gamma = {a1, a2}: A and B both of rank 2") {
        ABDecomposition dec = ab_decomposition(s, curves(s, {0, 1}));
        CHECK(dec.A.dim() == 2);
        CHECK(dec.H0.dim() == 0);
        CHECK(dec.B.dim() == 2);
        // xi acts as +1 on A, -1 on B
        for (const Vec& a : dec.A.basis()) CHECK(dec.xi.apply(a) == a);
        for (const Vec& b : dec.B.basis()) CHECK(dec.xi.apply(b) == vec_scaled(b, Rat(-1)));
    }
    SUBCASE("gamma = {a1}: dims (1,2,1)") {
        ABDecomposition dec = ab_decomposition(s, curves(s, {0}));
        CHECK(dec.A.dim() == 1);
        CHECK(dec.H0.dim() == 2);
        CHECK(dec.B.dim() == 1);
        for (const Vec& h : dec.H0.basis()) CHECK(vec_is_zero(dec.xi.apply(h)));
    }
    SUBCASE("empty system: everything is H0") {
        ABDecomposition dec = ab_decomposition(s, CurveSystem{});
        CHECK(dec.A.dim() == 0);
        CHECK(dec.B.dim() == 0);
        CHECK(dec.H0.dim() == 4);
        CHECK(dec.xi.is_zero());
    }
    SUBCASE("dim A = dim B = rank, dim H0 = 2g - 2 rank, and B is the span") {
        oracle::Rng rng(8844);
        for (int trial = 0; trial < 20; ++trial) {
            std::size_t g = static_cast<std::size_t>(oracle::rand_int(rng, 1, 3));
            SurfaceModel sg(g, 0);
            std::size_t r = static_cast<std::size_t>(oracle::rand_int(rng, 0, static_cast<long>(g)));
            CurveSystem cs;
            for (std::size_t i = 0; i < r; ++i) cs.curves.push_back({"a", sg.basis_vec(sg.a_index(i))});
            ABDecomposition dec = ab_decomposition(sg, cs);
            CHECK(dec.A.dim() == r);
            CHECK(dec.B.dim() == r);
            CHECK(dec.H0.dim() == 2 * g - 2 * r);
            CHECK(dec.B == span_and_isotropy(sg, cs).span_in_h);
        }
    }
}

TEST_CASE("xi eigenvalues on tensor powers") {
    SurfaceModel s(2, 0);
    for (auto system : {curves(s, {0}), curves(s, {0, 1})}) {
        ABDecomposition dec = ab_decomposition(s, system);
        for (std::size_t n = 1; n <= 3; ++n) CHECK(xi_eigenvalue_check(dec, n));
    }
    // spot values: Gr^M_0 of H itself has eigenvalue 1, Gr^M_{-2} eigenvalue -1,
    // and B (tensor) B sits in Gr_{-4} of H (tensor) H with eigenvalue -2
    ABDecomposition dec = ab_decomposition(s, curves(s, {0, 1}));
    FilteredSpace hm(dec.monodromy_on_h);
    Subquotient top(hm.at(0), hm.at(-1));
    Mat ind = top.induce(dec.xi);
    CHECK(ind == Mat::identity(top.dim()));
    Subquotient bot(hm.at(-2), hm.at(-3));
    CHECK(bot.induce(dec.xi) == Mat::identity(bot.dim()).scaled(Rat(-1)));

    FilteredSpace t2 = tensor_filtration(hm, hm);
    Mat xi2 = kronecker(dec.xi, Mat::identity(4)) + kronecker(Mat::identity(4), dec.xi);
    Subquotient bb(t2.at(-4), t2.at(-5));
    CHECK(bb.induce(xi2) == Mat::identity(bb.dim()).scaled(Rat(-2)));
}

TEST_CASE("symplectic algebra bigrading") {
    SUBCASE("sp has the right dimension") {
        for (std::size_t g : {1u, 2u, 3u}) {
            Subspace sp = symplectic_algebra(symplectic_form(g));
            CHECK(sp.dim() == g * (2 * g + 1));
        }
    }
    SUBCASE("g=2, gamma={a1}: profile (1,2,4,2,1) with Gr_0 = gl(A) + sp(H0)") {
        SurfaceModel s(2, 0);
        auto profile = sp_graded_dims(s, curves(s, {0}));
        CHECK(profile == dims({{2, 1}, {1, 2}, {0, 4}, {-1, 2}, {-2, 1}}));
        // Gr_0: gl_1 + sp_2 = 1 + 3
        CHECK(profile.at(0) == 1 + 3);
        // Gr_2 = r(r+1)/2 for rank r = 1
        CHECK(profile.at(2) == 1);
    }
    SUBCASE("Lagrangian systems: Gr_2 has dimension g(g+1)/2") {
        for (std::size_t g : {2u, 3u}) {
            SurfaceModel s(g, 0);
            CurveSystem cs;
            for (std::size_t i = 0; i < g; ++i) cs.curves.push_back({"a", s.basis_vec(s.a_index(i))});
            auto profile = sp_graded_dims(s, cs);
            CHECK(profile.at(2) == g * (g + 1) / 2);
        }
    }
    SUBCASE("xi lies in the symplectic algebra for the worked systems") {
        SurfaceModel s(2, 0);
        for (auto system : {curves(s, {0}), curves(s, {0, 1})}) {
            ABDecomposition dec = ab_decomposition(s, system);
            Vec flat(16);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) flat[i * 4 + j] = dec.xi.at(i, j);
            CHECK(symplectic_algebra(symplectic_form(2)).contains(flat));
        }
    }
}
