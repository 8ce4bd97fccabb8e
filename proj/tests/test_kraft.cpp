// Cyclic F/V words, word modules, the BT_1 predicate, the supersingular
// (4, 2, 2) filter and the Ekedahl-Oort stratum labeler.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gl4/kraft.hpp"

using namespace gl4;

TEST_CASE("canonical rotation and simplicity") {
    CHECK(CyclicWord::make("VVF") == CyclicWord::make("VFV"));
    CHECK(CyclicWord::make("VVF") == CyclicWord::make("FVV"));
    CHECK(CyclicWord::make("VVF").letters == "FVV");

    CHECK(CyclicWord::make("F").simple());
    CHECK(CyclicWord::make("V").simple());
    CHECK(CyclicWord::make("FV").simple());
    CHECK_FALSE(CyclicWord::make("FF").simple());
    CHECK_FALSE(CyclicWord::make("FFFF").simple());
    CHECK_FALSE(CyclicWord::make("FVFV").simple());
    CHECK(CyclicWord::make("FFVV").simple());

    CHECK_THROWS_AS((void)CyclicWord::make(""), domain_error);
    CHECK_THROWS_AS((void)CyclicWord::make("FX"), domain_error);
}

TEST_CASE("simple word lists and counts") {
    auto w1 = simple_words(1);
    REQUIRE(w1.size() == 2);
    CHECK(w1[0].letters == "F");
    CHECK(w1[1].letters == "V");

    auto w2 = simple_words(2);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0].letters == "FV");

    auto w4 = simple_words(4);
    REQUIRE(w4.size() == 3);
    CHECK(w4[0].letters == "FFFV");
    CHECK(w4[1].letters == "FFVV");
    CHECK(w4[2].letters == "FVVV");

    // aperiodic binary necklace counts (1/n) sum_{d | n} mu(d) 2^{n/d}
    int expect[] = {0, 2, 1, 2, 3, 6, 9, 18, 30};
    for (int n = 1; n <= 8; ++n) CHECK(simple_words(n).size() == static_cast<std::size_t>(expect[n]));

    CHECK_THROWS_AS((void)simple_words(0), domain_error);
    CHECK_THROWS_AS((void)simple_words(13), domain_error);
}

TEST_CASE("word modules: dimensions and ranks") {
    RingCtxPtr F3 = RingContext::make(3, 1, 1);

    DieudonneTriple fv = module_of_word(F3, CyclicWord::make("FV"));
    CHECK(fv.dim() == 2);
    CHECK(rank_f(fv) == 1);
    CHECK(rank_v(fv) == 1);
    CHECK(f_nilpotent(fv));
    CHECK(v_nilpotent(fv));

    DieudonneTriple ffvv = module_of_word(F3, CyclicWord::make("FFVV"));
    CHECK(ffvv.dim() == 4);
    CHECK(rank_f(ffvv) == 2);
    CHECK(rank_v(ffvv) == 2);
    CHECK(f_nilpotent(ffvv));
    CHECK(v_nilpotent(ffvv));

    // FFFV has three F letters: dim F(M) = 3
    DieudonneTriple fffv = module_of_word(F3, CyclicWord::make("FFFV"));
    CHECK(rank_f(fffv) == 3);

    // the one-letter word F gives a bijective (etale) F
    DieudonneTriple f = module_of_word(F3, CyclicWord::make("F"));
    CHECK(rank_f(f) == 1);
    CHECK_FALSE(f_nilpotent(f));

    // rank of F counts the F letters, for every simple word up to length 6
    for (int n = 1; n <= 6; ++n)
        for (const CyclicWord& w : simple_words(n)) {
            DieudonneTriple t = module_of_word(F3, w);
            CHECK(t.dim() == n);
            int fs = 0;
            for (char c : w.letters) fs += c == 'F';
            CHECK(rank_f(t) == fs);
            CHECK(rank_v(t) == n - fs);
        }
}

TEST_CASE("BT_1 predicate") {
    for (int m : {1, 2}) {
        RingCtxPtr F = RingContext::make(3, 1, m);
        // every simple-word module is BT_1, exhaustively to length 8
        for (int n = 1; n <= 8; ++n)
            for (const CyclicWord& w : simple_words(n))
                CHECK(is_bt1(module_of_word(F, w)));

        // direct sums of BT_1 triples are BT_1
        DieudonneTriple a = module_of_word(F, CyclicWord::make("FV"));
        DieudonneTriple b = module_of_word(F, CyclicWord::make("FFV"));
        CHECK(is_bt1(triple_sum(a, b)));
        CHECK(is_bt1(triple_sum(a, a)));

        // F = V = 0 on one dimension is not BT_1 (Ker F = M, Im V = 0)
        DieudonneTriple zero{F, Mat(1, 1), Mat(1, 1)};
        CHECK_FALSE(is_bt1(zero));
    }
}

TEST_CASE("the supersingular (4, 2, 2) filter") {
    for (int m : {1, 2}) {
        RingCtxPtr F = RingContext::make(3, 1, m);
        auto classes = classify_ss_42(F);
        REQUIRE(classes.size() == 2);
        // sorted scan order: [FFVV] before [FV, FV]
        REQUIRE(classes[0].size() == 1);
        CHECK(classes[0][0].letters == "FFVV");
        REQUIRE(classes[1].size() == 2);
        CHECK(classes[1][0].letters == "FV");
        CHECK(classes[1][1].letters == "FV");
    }
}

TEST_CASE("Ekedahl-Oort stratum of Dieudonne lattices") {
    // the standard lattice is superspecial
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    CHECK(eo_stratum(V, V.iso.standard_M()) == EOStratum::superspecial_stratum);

    // shifted copies of M inside the band are still superspecial
    QSpace Q = QSpace::make(3, 12);
    VertexLattice L2 = standard_vertex(Q);
    for (const SpecialLattice& L : specials_of_vertex(V, Q, L2, 2)) {
        Orientation o = orient_of(V, L.L);
        PLattice Lp = o == Orientation::plus ? L.L : phi_bar(V, L.L);
        PLattice A = dieudonne_of(V, SpecialLattice{Lp, Orientation::plus});
        CHECK(eo_stratum(V, A) == EOStratum::superspecial_stratum);
    }

    // a generic point over the degree-4 extension lands in the open stratum
    RingCtxPtr ctx4 = RingContext::make(3, 12, 4);
    ExteriorSpace V4 = ExteriorSpace::make(ctx4);
    VertexLattice L4 = type4_containing(Q, L2).front();
    int generic_seen = 0;
    for (const SpecialLattice& L : specials_of_vertex(V4, Q, L4, 8)) {
        if (is_superspecial(V4, L)) continue;
        Orientation o = orient_of(V4, L.L);
        PLattice Lp = o == Orientation::plus ? L.L : phi_bar(V4, L.L);
        PLattice A = dieudonne_of(V4, SpecialLattice{Lp, Orientation::plus});
        CHECK(eo_stratum(V4, A) == EOStratum::generic_stratum);
        ++generic_seen;
    }
    CHECK(generic_seen > 0);

    // domain errors
    CHECK_THROWS_AS((void)eo_stratum(V, V.iso.standard_M().scaled_by(1)), domain_error);
}
