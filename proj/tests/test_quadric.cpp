// Reduced quadratic spaces, Lagrangian enumeration, the quadric-surface
// parametrization and flags, the special-lattice chain and the superspecial
// dichotomy.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "gl4/quadric.hpp"
#include "gl4/residue.hpp"

using namespace gl4;

namespace {

// random lattice with p M <= A <= p^{-1} M
PLattice random_wide_band(const RingCtxPtr& ctx, std::mt19937_64& rng) {
    const RingContext& R = *ctx;
    Mat G(8, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j)
            G.at(i, j) = R.from_int(static_cast<long long>(rng() % 27));
        G.at(4 + i, i) = R.from_int(9);
    }
    return PLattice::make(ctx, G, -1);
}

std::vector<PLattice> sample_dieudonne_h0(const ExteriorSpace& V, int want,
                                          std::mt19937_64& rng) {
    std::vector<PLattice> out;
    PLattice M = V.iso.standard_M();
    out.push_back(M);
    while (static_cast<int>(out.size()) < want) {
        PLattice A = random_wide_band(V.ctx, rng);
        if (lat_height(A, M) != 0) continue;
        if (!is_dieudonne(V.iso, A)) continue;
        bool dup = false;
        for (auto& B : out)
            if (B == A) dup = true;
        if (!dup) out.push_back(std::move(A));
    }
    return out;
}

std::string point_key(const RingContext& F, const std::vector<RElem>& pt) {
    std::string s;
    for (const RElem& x : pt) s += F.to_string(x) + ",";
    return s;
}

}  // namespace

TEST_CASE("reduced space of a type-2 lattice: anisotropic plane") {
    for (long p : {3L, 5L}) {
        QSpace Q = QSpace::make(p, 12);
        OmegaSpace O = OmegaSpace::make(Q, standard_vertex(Q));
        CHECK(O.d == 1);
        CHECK(O.gram.rows == 2);
        CHECK(isotropic_point_count(O, 1) == 0);
        CHECK(lagrangians(O, 1).empty());
        // over the quadratic extension the plane splits into two lines ...
        std::vector<Mat> two = lagrangians(O, 2);
        REQUIRE(two.size() == 2);
        // ... and Frobenius swaps them
        RingCtxPtr F2 = RingContext::make(p, 1, 2);
        Mat img = mat_frobenius(*F2, two[0]);
        HowellResult h = howell(*F2, img);
        CHECK(h.h == two[1]);
        CHECK(howell(*F2, mat_frobenius(*F2, two[1])).h == two[0]);
    }
}

TEST_CASE("reduced space of a type-4 lattice: elliptic quadric") {
    for (long p : {3L, 5L, 7L}) {
        QSpace Q = QSpace::make(p, 12);
        VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
        OmegaSpace O = OmegaSpace::make(Q, L4);
        CHECK(O.d == 2);
        CHECK(O.gram.rows == 4);
        CHECK(isotropic_point_count(O, 1) == static_cast<int>(p * p + 1));
        CHECK(lagrangians(O, 1).empty());  // no rational line on an elliptic quadric
    }
    // regression: Lagrangian count over the splitting extension at p = 3
    QSpace Q = QSpace::make(3, 12);
    VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
    OmegaSpace O = OmegaSpace::make(Q, L4);
    CHECK(lagrangians(O, 2).size() == 20);  // 2(q + 1) ruling lines at q = 9
}

TEST_CASE("psi lands on the quadric: exhaustive identity and bijectivity") {
    QuadricContext C = QuadricContext::make(3, 1);
    const RingContext& F = *C.field;
    CHECK(F.mul(C.delta, C.delta) == C.D);

    // polynomial identity Q(psi) = 0, exhaustively over all of F_9^4 with
    // both arguments nonzero
    std::vector<RElem> elems = residue_elems(F);
    int checked = 0;
    for (const RElem& a : elems)
        for (const RElem& b : elems) {
            if (F.is_zero(a) && F.is_zero(b)) continue;
            for (const RElem& c : elems)
                for (const RElem& d : elems) {
                    if (F.is_zero(c) && F.is_zero(d)) continue;
                    std::vector<RElem> pt = psi(C, {a, b}, {c, d});
                    if (F.is_zero(quadric_eval(C, pt))) ++checked;
                }
        }
    CHECK(checked == 80 * 80);

    // injectivity on P^1 x P^1 and exact image
    std::set<std::string> img;
    for (const auto& P : proj_points(C.field, 2))
        for (const auto& Cpt : proj_points(C.field, 2))
            img.insert(point_key(F, psi(C, P, Cpt)));
    CHECK(img.size() == 100);
    std::vector<std::vector<RElem>> pts = quadric_points(C);
    CHECK(pts.size() == 100);  // (q + 1)^2 at q = 9
    for (const auto& pt : pts) CHECK(img.contains(point_key(F, pt)));
}

TEST_CASE("psi identity over the bigger field") {
    QuadricContext C = QuadricContext::make(3, 2);
    const RingContext& F = *C.field;
    CHECK(F.mul(C.delta, C.delta) == C.D);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto rnd = [&] {
            std::vector<u64> c(4);
            for (auto& x : c) x = rng() % 3;
            return F.from_coords(c);
        };
        std::vector<RElem> ab{rnd(), rnd()}, cd{rnd(), rnd()};
        if ((F.is_zero(ab[0]) && F.is_zero(ab[1])) ||
            (F.is_zero(cd[0]) && F.is_zero(cd[1])))
            continue;
        CHECK(F.is_zero(quadric_eval(C, psi(C, ab, cd))));
    }
}

TEST_CASE("plus and minus flags, Frobenius interchange") {
    for (int s : {1, 2}) {
        QuadricContext C = QuadricContext::make(3, s);
        const RingContext& F = *C.field;
        auto [plus, minus] = x_lambda_points(C);
        std::size_t expect = 1;
        for (int k = 0; k < 2 * s; ++k) expect *= 3;
        expect += 1;  // p^{2s} + 1
        CHECK(plus.size() == expect);
        CHECK(minus.size() == expect);

        std::set<std::string> minus_keys;
        for (const Flag& f : minus) minus_keys.insert(flag_key(F, f));
        auto in_plane = [&](const Flag& f) {
            Mat v(1, 4);
            for (int j = 0; j < 4; ++j) v.at(0, j) = f.point[static_cast<std::size_t>(j)];
            Mat stacked = mat_stack(f.plane, v);
            return howell(F, stacked).rank == 2;
        };
        for (const Flag& f : plus) {
            CHECK(F.is_zero(quadric_eval(C, f.point)));
            CHECK(in_plane(f));
            // every point of the plane is on the quadric (totally isotropic)
            for (const RElem& t : residue_elems(F)) {
                std::vector<RElem> w(4);
                for (int j = 0; j < 4; ++j)
                    w[static_cast<std::size_t>(j)] =
                        F.add(f.plane.at(0, j), F.mul(t, f.plane.at(1, j)));
                CHECK(F.is_zero(quadric_eval(C, w)));
            }
            // Frobenius maps the plus flag to a minus flag
            Flag im{proj_frobenius(F, f.point), howell(F, mat_frobenius(F, f.plane)).h};
            CHECK(minus_keys.contains(flag_key(F, im)));
        }
    }
}

TEST_CASE("chain, vertex extraction and the superspecial dichotomy") {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    QSpace Q = QSpace::make(3, 12);

    // worked example: superspecial, d = 1, the standard type-2 lattice
    SpecialLattice L0 = very_special_of(V, V.iso.standard_M());
    CHECK(is_superspecial(V, L0));
    ChainResult cr = chain_and_lambda(V, Q, L0);
    CHECK(cr.d == 1);
    CHECK(cr.lambda.type == 2);
    CHECK(cr.lambda.lat == standard_type2(Q));
    CHECK(cr.lambda.dual == phi_fixed_part(V, Q, L0.L));
    CHECK(quotient_length(cr.top, L0.L) == 1);

    // sampled height-0 lattices over the degree-2 unramified extension: the
    // reduction of every type-2 window has exactly p^2 + 1 rational points
    // and all of them are superspecial, so d = 1 throughout here; the
    // generic stratum only shows up over larger residue fields (below)
    std::mt19937_64 rng(2024);
    for (const PLattice& A : sample_dieudonne_h0(V, 8, rng)) {
        SpecialLattice L = very_special_of(V, A);
        CHECK(is_superspecial(V, L));
        ChainResult c = chain_and_lambda(V, Q, L);
        CHECK(c.d == 1);
        CHECK(c.lambda.type == 2);
        CHECK(c.lambda.dual == phi_fixed_part(V, Q, L.L));
    }

    // degree-4 extension: Lagrangian planes of a type-4 reduction lift to
    // special lattices realizing both strata
    RingCtxPtr ctx4 = RingContext::make(3, 12, 4);
    ExteriorSpace V4 = ExteriorSpace::make(ctx4);
    VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
    int ss_count = 0, generic_count = 0;
    for (const SpecialLattice& L : specials_of_vertex(V4, Q, L4, 10)) {
        bool ss = is_superspecial(V4, L);
        ChainResult c = chain_and_lambda(V4, Q, L);
        CHECK((c.d == 1) == ss);
        CHECK(c.lambda.type == 2 * c.d);
        CHECK(c.lambda.dual == phi_fixed_part(V4, Q, L.L));
        if (ss) {
            ++ss_count;
        } else {
            CHECK(c.lambda.lat == L4.lat);  // generic: the window is recovered
            ++generic_count;
        }
    }
    CHECK(ss_count > 0);
    CHECK(generic_count > 0);

    // a generic lattice has a well-defined orientation and a verified
    // Dieudonne preimage on its plus side
    SpecialLattice Lgen = specials_of_vertex(V4, Q, L4, 10).back();
    REQUIRE_FALSE(is_superspecial(V4, Lgen));
    Orientation o = orient_of(V4, Lgen.L);
    PLattice Lp = o == Orientation::plus ? Lgen.L : phi_bar(V4, Lgen.L);
    PLattice A4 = dieudonne_of(V4, SpecialLattice{Lp, Orientation::plus});
    CHECK(lat_height(A4, V4.iso.standard_M()) == 0);
    CHECK(is_dieudonne(V4.iso, A4));
    CHECK(very_special_of(V4, A4).L == Lp);

    // non-special input is rejected
    CHECK_THROWS_AS(
        (void)chain_and_lambda(V, Q, SpecialLattice{V.standard_V().scaled_by(1), Orientation::unknown}),
        domain_error);
}
