#include "gl4/verify.hpp"

#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gl4/enumerate.hpp"
#include "gl4/kraft.hpp"
#include "gl4/residue.hpp"

namespace gl4 {

namespace {

struct check_fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void req(bool ok, const std::string& msg) {
    if (!ok) throw check_fail(msg);
}

std::string num(long long v) { return std::to_string(v); }

RElem random_elem(const RingContext& R, std::mt19937_64& rng) {
    long long pn = 1;
    for (int i = 0; i < R.N; ++i) pn *= R.p;
    std::vector<u64> c(static_cast<std::size_t>(R.m));
    for (auto& x : c) x = rng() % static_cast<u64>(pn);
    return R.from_coords(c);
}

Mat random_row(const RingContext& R, int n, std::mt19937_64& rng) {
    Mat v(1, n);
    for (int j = 0; j < n; ++j) v.at(0, j) = random_elem(R, rng);
    return v;
}

/// Full-rank lattice with bounded elementary structure: diagonal p-powers
/// at scale -1 followed by a few unit row operations.
PLattice random_lattice(const RingCtxPtr& ctx, int n, std::mt19937_64& rng) {
    const RingContext& R = *ctx;
    Mat G(n, n);
    for (int i = 0; i < n; ++i)
        G.at(i, i) = R.mul_pow_p(R.one(), static_cast<int>(rng() % 3));
    for (int t = 0; t < 2 * n; ++t) {
        int i = static_cast<int>(rng() % static_cast<u64>(n));
        int j = static_cast<int>(rng() % static_cast<u64>(n));
        if (i == j) continue;
        RElem c = R.from_int(static_cast<long long>(1 + rng() % 8));
        for (int k = 0; k < n; ++k)
            G.at(i, k) = R.add(G.at(i, k), R.mul(c, G.at(j, k)));
    }
    return PLattice::make(ctx, std::move(G), -1);
}

using CheckFn = std::function<std::string(const VerifyConfig&)>;
using Suite = std::vector<std::pair<std::string, CheckFn>>;

// ---------------------------------------------------------------- rings

Suite rings_suite() {
    return {
        {"rings/galois-frobenius",
         [](const VerifyConfig& cfg) {
             RingCtxPtr ctx = RingContext::make(cfg.p, cfg.N, cfg.m);
             const RingContext& R = *ctx;
             std::mt19937_64 rng(11);
             for (int t = 0; t < 100; ++t) {
                 RElem x = random_elem(R, rng);
                 req(R.frobenius_pow(x, R.m) == x, "sigma^m != id");
                 RElem xp = R.pow(x, R.p);
                 RElem d = R.sub(R.frobenius(x), xp);
                 req(R.is_zero(d) || R.valuation(d) >= 1,
                     "sigma is not a Frobenius lift");
             }
             return "sigma^" + num(R.m) + " = id and sigma = x^p mod p on GR(" +
                    num(R.p) + "^" + num(R.N) + ", " + num(R.m) + ")";
         }},
        {"rings/hensel-sqrt",
         [](const VerifyConfig&) {
             for (long p : {3L, 5L, 7L}) {
                 RingCtxPtr ctx = RingContext::make(p, 12, 2);
                 const RingContext& R = *ctx;
                 RElem D = R.from_int(default_nonsquare(p));
                 RElem u = hensel_sqrt(R, D);
                 req(R.mul(u, u) == D, "u^2 != Delta");
                 req(R.frobenius(u) == R.neg(u), "sigma(u) != -u");
             }
             return "u^2 = Delta with sigma(u) = -u at p = 3, 5, 7";
         }},
        {"rings/legendre-nonsquare",
         [](const VerifyConfig&) {
             for (long p : {3L, 5L, 7L}) {
                 long D = default_nonsquare(p);
                 req(legendre(D, p) == -1, "nonsquare has Legendre +1");
                 int squares = 0;
                 for (long a = 1; a < p; ++a) squares += legendre(a, p) == 1;
                 req(squares == static_cast<int>((p - 1) / 2),
                     "square count is not (p-1)/2");
             }
             return "default nonsquares 2, 2, 3 confirmed at p = 3, 5, 7";
         }},
        {"rings/hilbert-symbol",
         [](const VerifyConfig&) {
             for (long p : {3L, 5L, 7L})
                 req(hilbert_symbol(p, default_nonsquare(p), p) == -1,
                     "(p, nonsquare)_p != -1");
             std::mt19937_64 rng(13);
             for (int t = 0; t < 200; ++t) {
                 long p = 3;
                 long long na = static_cast<long long>(rng() % 400) - 200;
                 long long nb = static_cast<long long>(rng() % 400) - 200;
                 if (na == 0 || nb == 0) continue;
                 PRat a = PRat::from_int(na, p), b = PRat::from_int(nb, p);
                 req(hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p),
                     "Hilbert symbol is not symmetric");
                 req(hilbert_symbol(a, PRat::from_int(-na, p), p) == 1,
                     "(a, -a)_p != 1");
             }
             return "(p, u)_p = -1 anchors and (a, -a) = 1, symmetry on 200 samples";
         }},
        {"rings/precision-arith",
         [](const VerifyConfig& cfg) {
             RingCtxPtr ctx = RingContext::make(cfg.p, cfg.N, cfg.m);
             const RingContext& R = *ctx;
             std::mt19937_64 rng(17);
             for (int t = 0; t < 100; ++t) {
                 RElem x = random_elem(R, rng);
                 if (R.is_zero(x)) continue;
                 int k = static_cast<int>(rng() % 4);
                 RElem y = R.mul_pow_p(x, k);
                 req(R.mul_pow_p(R.divide_exact_p(y, k), k) == y,
                     "p-shift round trip fails");
                 req(R.valuation(y) == std::min(R.N, R.valuation(x) + k),
                     "valuation is not additive in p-powers");
             }
             return "p-power shifts and valuations agree on 100 samples";
         }},
    };
}

// ------------------------------------------------------------- lattices

Suite lattices_suite() {
    return {
        {"lattices/howell-unique",
         [](const VerifyConfig& cfg) {
             RingCtxPtr ctx = RingContext::make(cfg.p, cfg.N, 1);
             std::mt19937_64 rng(19);
             for (int t = 0; t < 30; ++t) {
                 PLattice A = random_lattice(ctx, 6, rng);
                 // generator scramble: stack a sum of rows on top
                 const RingContext& R = *ctx;
                 Mat G(7, 6);
                 for (int j = 0; j < 6; ++j) {
                     G.at(0, j) = R.add(A.gens().at(0, j), A.gens().at(1, j));
                     for (int i = 0; i < 6; ++i) G.at(i + 1, j) = A.gens().at(i, j);
                 }
                 req(PLattice::make(ctx, G, A.scale()) == A,
                     "scrambled generators changed the canonical key");
             }
             return "canonical keys are generator-independent, 30 lattices";
         }},
        {"lattices/dual-involution",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             std::mt19937_64 rng(23);
             for (int t = 0; t < 30; ++t) {
                 PLattice A = random_lattice(Q.ctx, 6, rng);
                 req(qs_dual(Q, qs_dual(Q, A)) == A, "dual of dual differs");
             }
             return "L-dual-dual = L under the fixed Gram, 30 lattices";
         }},
        {"lattices/sum-intersect-dual",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             std::mt19937_64 rng(29);
             for (int t = 0; t < 20; ++t) {
                 PLattice A = random_lattice(Q.ctx, 6, rng);
                 PLattice B = random_lattice(Q.ctx, 6, rng);
                 req(qs_dual(Q, lat_sum(A, B)) ==
                         lat_intersect(qs_dual(Q, A), qs_dual(Q, B)),
                     "(A + B)-dual != A-dual intersect B-dual");
             }
             return "(A + B)-dual = A-dual cap B-dual, 20 pairs";
         }},
        {"lattices/quotient-length",
         [](const VerifyConfig& cfg) {
             RingCtxPtr ctx = RingContext::make(cfg.p, cfg.N, 1);
             std::mt19937_64 rng(31);
             for (int t = 0; t < 20; ++t) {
                 PLattice A = random_lattice(ctx, 4, rng);
                 PLattice B = lat_intersect(A, random_lattice(ctx, 4, rng));
                 PLattice C = B.scaled_by(1);
                 req(quotient_length(A, C) ==
                         quotient_length(A, B) + quotient_length(B, C),
                     "length is not additive along a chain");
                 req(quotient_length(B, C) == 4, "length of B / pB != 4");
             }
             return "length additivity on 20 chains A >= B >= pB";
         }},
        {"lattices/membership",
         [](const VerifyConfig& cfg) {
             RingCtxPtr ctx = RingContext::make(cfg.p, cfg.N, 1);
             const RingContext& R = *ctx;
             std::mt19937_64 rng(37);
             for (int t = 0; t < 20; ++t) {
                 PLattice A = random_lattice(ctx, 5, rng);
                 MembershipTester in_A(A);
                 Mat c = random_row(R, 5, rng);
                 Mat v = mat_mul(R, c, A.gens());
                 req(in_A.contains_row(v, A.scale()), "combination left the lattice");
                 Mat e1(1, 5);
                 e1.at(0, 0) = R.one();
                 req(!in_A.contains_row(e1, -5), "deep vector reported inside");
             }
             return "membership matches generator combinations, 20 lattices";
         }},
    };
}

// ------------------------------------------------------------ isocrystal

Suite isocrystal_suite() {
    return {
        {"isocrystal/f-squared-is-p",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             const RingContext& R = *ctx;
             Isocrystal iso = Isocrystal::make(ctx);
             Mat sq = mat_mul(R, iso.PF, iso.PF);
             req(sq == mat_mul_pow_p(R, mat_identity(R, 4), 1), "PF^2 != p");
             return "F^2 = p sigma^2 on the basepoint (PF^2 = p)";
         }},
        {"isocrystal/standard-dieudonne",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             Isocrystal iso = Isocrystal::make(ctx);
             PLattice M = iso.standard_M();
             req(is_dieudonne(iso, M), "standard lattice fails the predicate");
             req(lat_height(M, M) == 0, "height of M against itself");
             req(quotient_length(M, F_inv_p(iso, M)) == 2, "dim M / M_1 != 2");
             return "standard M is Dieudonne with dim M / M_1 = 2";
         }},
        {"isocrystal/height-shift",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             Isocrystal iso = Isocrystal::make(ctx);
             PLattice M = iso.standard_M();
             for (int d : {-2, -1, 1, 2}) {
                 PLattice A = shift_height(iso, M, d);
                 req(lat_height(A, M) == d, "shifted height mismatch");
                 req(is_dieudonne(iso, A), "shifted lattice not Dieudonne");
             }
             return "isogeny shifts realize heights -2..2";
         }},
        {"isocrystal/non-dieudonne-reject",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             const RingContext& R = *ctx;
             Isocrystal iso = Isocrystal::make(ctx);
             Mat G = mat_identity(R, 4);
             G.at(3, 3) = R.mul_pow_p(R.one(), 1);
             req(!is_dieudonne(iso, PLattice::make(ctx, G, 0)),
                 "skew lattice accepted");
             return "non-F-stable lattice is rejected";
         }},
    };
}

// -------------------------------------------------------------- exterior

Suite exterior_suite() {
    return {
        {"exterior/hodge-involution",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             const RingContext& R = *ctx;
             ExteriorSpace V = ExteriorSpace::make(ctx);
             std::mt19937_64 rng(41);
             for (int k = 0; k < 6; ++k) {
                 Mat x(1, 6);
                 x.at(0, k) = R.one();
                 auto [s, e] = hodge_star(V, x, 0);
                 auto [b, be] = hodge_star_dual(V, s, e);
                 req(b == x && be == 0, "basis star-star != id");
             }
             for (int t = 0; t < 25; ++t) {
                 Mat x = random_row(R, 6, rng);
                 auto [s, e] = hodge_star(V, x, 0);
                 auto [b, be] = hodge_star_dual(V, s, e);
                 req(b == x && be == 0, "star-star != id");
                 Mat tt = random_row(R, 6, rng);
                 SElem cross = pairing_cross(V, x, 0, tt, 0);
                 req(s_equal_mod(R, cross, pairing_t(V, s, e, tt, 0), R.N - 4),
                     "{x, t} != [x*, t]_1");
             }
             return "star-star = id and {x,t} = [x*,t]_1, basis + 25 random";
         }},
        {"exterior/composition-form",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             const RingContext& R = *ctx;
             ExteriorSpace V = ExteriorSpace::make(ctx);
             for (int a = 0; a < 6; ++a)
                 for (int b = a; b < 6; ++b) {
                     Mat x(1, 6), y(1, 6);
                     x.at(0, a) = R.one();
                     y.at(0, b) = R.one();
                     EndoPair Ex = special_endo(V, x, 0);
                     EndoPair Ey = special_endo(V, y, 0);
                     SMat t1 = s_mat_mul(R, s_from_mat(R, Ey.to_dual, Ey.e_to_dual),
                                         s_from_mat(R, Ex.to_elem, Ex.e_to_elem));
                     SMat t2 = s_mat_mul(R, s_from_mat(R, Ex.to_dual, Ex.e_to_dual),
                                         s_from_mat(R, Ey.to_elem, Ey.e_to_elem));
                     SElem pr = pairing_x(V, x, 0, y, 0);
                     for (int i = 0; i < 4; ++i)
                         for (int j = 0; j < 4; ++j)
                             req(s_equal_mod(R, s_add(R, t1.at(i, j), t2.at(i, j)),
                                             i == j ? pr : SElem{}, R.N - 4),
                                 "anticommutator != [x, y] id");
                 }
             return "x~ o y~ + y~ o x~ = [x,y] id on all 21 basis pairs";
         }},
        {"exterior/slope-zero-basis",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             const RingContext& R = *ctx;
             ExteriorSpace V = ExteriorSpace::make(ctx);
             Mat Y = y_basis(V);
             for (int i = 0; i < 6; ++i) {
                 Mat yi(1, 6);
                 for (int j = 0; j < 6; ++j) yi.at(0, j) = Y.at(i, j);
                 auto [img, e] = phi(V, yi, 0);  // p^{-1} * (p y_i) = y_i
                 req(e == -1 && img == mat_mul_pow_p(R, yi, 1), "Phi(y_i) != y_i");
             }
             return "Phi fixes y_1..y_6 pointwise";
         }},
        {"exterior/wedge-round-trip",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             ExteriorSpace V = ExteriorSpace::make(ctx);
             PLattice M = V.iso.standard_M();
             SpecialLattice L0 = very_special_of(V, M);
             req(dieudonne_of(V, L0) == M, "round trip fails on M");
             bool rejected = false;
             try {
                 (void)dieudonne_of(V, phi_bar(V, L0));
             } catch (const domain_error&) {
                 rejected = true;
             }
             req(rejected, "minus orientation accepted");
             return "dieudonne_of(very_special_of(M)) = M; minus side rejected";
         }},
        {"exterior/self-dual-special",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             ExteriorSpace V = ExteriorSpace::make(ctx);
             SpecialLattice L0 = very_special_of(V, V.iso.standard_M());
             req(lat_dual(L0.L, V.gram_x) == L0.L, "L_0 not self-dual");
             req(quotient_length(lat_sum(L0.L, phi_bar(V, L0.L)), L0.L) == 1,
                 "wedge length-1 condition fails");
             return "L_0 is self-dual with length-1 Phi step";
         }},
        {"exterior/stabilizer-oracle",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             ExteriorSpace V = ExteriorSpace::make(ctx);
             PLattice M = V.iso.standard_M();
             PLattice bound = PLattice::standard(ctx, 6, -2);
             req(endo_transporter(V, bound, M, dual_std(M), M, dual_std(M)) ==
                     wedge2(V, M),
                 "stabilizer grid != wedge2(M)");
             return "transporter of M x M* reproduces wedge2(M)";
         }},
    };
}

// ---------------------------------------------------------------- qspace

Suite qspace_suite() {
    return {
        {"qspace/hasse-minus-one",
         [](const VerifyConfig&) {
             for (long p : {3L, 5L, 7L})
                 req(hasse_invariant(fixed_space_form(p)) == -1,
                     "Hasse invariant != -1");
             return "Hasse invariant -1 at p = 3, 5, 7";
         }},
        {"qspace/det-minus-one",
         [](const VerifyConfig&) {
             for (long p : {3L, 5L, 7L})
                 req(det_class(fixed_space_form(p)) == square_class(-1, p),
                     "determinant class != -1");
             return "det class = class(-1) at p = 3, 5, 7";
         }},
        {"qspace/vertex-standard",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             auto [ok, type] = is_vertex(Q, standard_type2(Q));
             req(ok && type == 2, "standard type-2 lattice rejected");
             auto [span_ok, t2] = is_vertex(Q, PLattice::standard(Q.ctx, 6));
             req(!span_ok, "orthogonal-basis span accepted as vertex");
             (void)t2;
             return "standard vertex has type 2; basis span is not a vertex";
         }},
        {"qspace/unit-scaling",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             const RingContext& R = *Q.ctx;
             PLattice L = standard_type2(Q);
             std::mt19937_64 rng(43);
             for (int t = 0; t < 10; ++t) {
                 Mat G = L.gens();
                 RElem u = R.from_int(static_cast<long long>(1 + rng() % (Q.ctx->p - 1)));
                 for (int i = 0; i < 6; ++i)
                     for (int j = 0; j < 6; ++j) G.at(i, j) = R.mul(u, G.at(i, j));
                 auto [ok, type] = is_vertex(Q, PLattice::make(Q.ctx, G, L.scale()));
                 req(ok && type == 2, "unit scaling broke the vertex predicate");
             }
             return "vertex predicate invariant under unit scaling";
         }},
        {"qspace/square-class-reps",
         [](const VerifyConfig&) {
             req(square_class_rep(square_class(-1, 3), 3) == 2, "rep(-1) at p=3");
             req(square_class_rep(square_class(-1, 5), 5) == 1, "rep(-1) at p=5");
             req(square_class_rep(square_class(-1, 7), 7) == 3, "rep(-1) at p=7");
             return "class(-1) reps 2, 1, 3 at p = 3, 5, 7";
         }},
    };
}

// ----------------------------------------------------------------- graph

Suite graph_suite() {
    return {
        {"graph/int1",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             auto ups = type4_containing(Q, standard_vertex(Q));
             long expect = cfg.p * cfg.p + 1;
             req(static_cast<long>(ups.size()) == expect, "type-4 count off");
             return num(static_cast<long long>(ups.size())) + " = p^2+1";
         }},
        {"graph/int2",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             auto ups = type4_containing(Q, standard_vertex(Q));
             auto downs = type2_inside(Q, ups.front());
             long expect = cfg.p * cfg.p + 1;
             req(static_cast<long>(downs.size()) == expect, "type-2 count off");
             return num(static_cast<long long>(downs.size())) + " = p^2+1";
         }},
        {"graph/reciprocity",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             VertexLattice L2 = standard_vertex(Q);
             auto ups = type4_containing(Q, L2);
             int hits = 0;
             for (std::size_t i = 0; i < 3; ++i)
                 for (const VertexLattice& d : type2_inside(Q, ups[i]))
                     hits += d.lat == L2.lat;
             req(hits == 3, "seed missing from a down set");
             return "seed recovered below each of 3 type-4 neighbors";
         }},
        {"graph/ball-radius-1",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             IntersectionGraph g = build_graph(Q, standard_vertex(Q), 1);
             long expect = cfg.p * cfg.p + 1;
             req(static_cast<long>(g.nodes.size()) == expect + 1, "node count");
             req(static_cast<long>(g.edges.size()) == expect, "edge count");
             return num(expect + 1) + " nodes, " + num(expect) + " edges";
         }},
        {"graph/determinism",
         [](const VerifyConfig& cfg) {
             QSpace Q = QSpace::make(cfg.p, cfg.N);
             int r = cfg.radius;
             IntersectionGraph a = build_graph(Q, standard_vertex(Q), r);
             IntersectionGraph b = build_graph(Q, standard_vertex(Q), r, Exec::parallel);
             req(graph_to_json(Q, a) == graph_to_json(Q, b), "JSON bytes differ");
             req(graph_to_dot(a) == graph_to_dot(b), "DOT bytes differ");
             return "serial and parallel radius-" + num(r) + " balls byte-identical";
         }},
    };
}

// --------------------------------------------------------------- quadric

Suite quadric_suite() {
    return {
        {"quadric/psi-on-quadric",
         [](const VerifyConfig&) {
             QuadricContext C = QuadricContext::make(3, 1);
             const RingContext& F = *C.field;
             std::mt19937_64 rng(47);
             int checked = 0;
             while (checked < 200) {
                 auto rnd = [&] {
                     std::vector<u64> c{rng() % 3, rng() % 3};
                     return F.from_coords(c);
                 };
                 std::vector<RElem> ab{rnd(), rnd()}, cd{rnd(), rnd()};
                 if ((F.is_zero(ab[0]) && F.is_zero(ab[1])) ||
                     (F.is_zero(cd[0]) && F.is_zero(cd[1])))
                     continue;
                 req(F.is_zero(quadric_eval(C, psi(C, ab, cd))), "Q(psi) != 0");
                 ++checked;
             }
             return "Q(psi) = 0 on 200 samples over F_9";
         }},
        {"quadric/psi-bijection",
         [](const VerifyConfig&) {
             QuadricContext C = QuadricContext::make(3, 1);
             const RingContext& F = *C.field;
             std::set<std::string> img;
             auto key = [&](const std::vector<RElem>& pt) {
                 std::string s;
                 for (const RElem& x : pt) s += F.to_string(x) + ",";
                 return s;
             };
             for (const auto& P : proj_points(C.field, 2))
                 for (const auto& Cpt : proj_points(C.field, 2))
                     img.insert(key(psi(C, P, Cpt)));
             req(img.size() == 100, "image size != 100");
             req(quadric_points(C).size() == 100, "quadric point count != 100");
             return "psi bijects P^1 x P^1(F_9) onto the 100 quadric points";
         }},
        {"quadric/x-lambda-count",
         [](const VerifyConfig&) {
             QuadricContext C = QuadricContext::make(3, 1);
             auto [plus, minus] = x_lambda_points(C);
             req(plus.size() == 10 && minus.size() == 10, "flag family size != 10");
             return "10 plus and 10 minus flags over F_9";
         }},
        {"quadric/lagrangian-count",
         [](const VerifyConfig&) {
             QSpace Q = QSpace::make(3, 12);
             VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
             OmegaSpace O = OmegaSpace::make(Q, L4);
             req(isotropic_point_count(O, 1) == 10, "rational point count != 10");
             req(lagrangians(O, 1).empty(), "rational line on an elliptic quadric");
             req(lagrangians(O, 2).size() == 20, "ruling count != 2(q+1)");
             return "0 rational lines, 10 points, 20 rulings over F_81-split";
         }},
        {"quadric/chain-worked-example",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             ExteriorSpace V = ExteriorSpace::make(ctx);
             QSpace Q = QSpace::make(3, 12);
             SpecialLattice L0 = very_special_of(V, V.iso.standard_M());
             ChainResult c = chain_and_lambda(V, Q, L0);
             req(c.d == 1 && c.lambda.type == 2, "worked example d/type");
             req(c.lambda.lat == standard_type2(Q), "Lambda_L != standard vertex");
             req(c.lambda.dual == phi_fixed_part(V, Q, L0.L), "dual != fixed part");
             return "chain of L_0 gives d = 1 and the standard type-2 vertex";
         }},
        {"quadric/superspecial-dichotomy",
         [](const VerifyConfig&) {
             QSpace Q = QSpace::make(3, 12);
             VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
             RingCtxPtr ctx4 = RingContext::make(3, 12, 4);
             ExteriorSpace V4 = ExteriorSpace::make(ctx4);
             int ss = 0, gen = 0;
             for (const SpecialLattice& L : specials_of_vertex(V4, Q, L4, 8)) {
                 bool s = is_superspecial(V4, L);
                 ChainResult c = chain_and_lambda(V4, Q, L);
                 req((c.d == 1) == s, "d and superspecial disagree");
                 req(c.lambda.type == 2 * c.d, "type != 2d");
                 (s ? ss : gen)++;
             }
             req(ss > 0 && gen > 0, "a stratum is missing");
             return "both strata over F_81: " + num(ss) + " superspecial, " +
                    num(gen) + " generic, d matches throughout";
         }},
    };
}

// ----------------------------------------------------------------- kraft

Suite kraft_suite() {
    return {
        {"kraft/simple-words",
         [](const VerifyConfig&) {
             int expect[] = {0, 2, 1, 2, 3, 6, 9, 18, 30};
             for (int n = 1; n <= 8; ++n)
                 req(static_cast<int>(simple_words(n).size()) == expect[n],
                     "aperiodic class count at length " + num(n));
             auto w4 = simple_words(4);
             req(w4[0].letters == "FFFV" && w4[1].letters == "FFVV" &&
                     w4[2].letters == "FVVV",
                 "length-4 list");
             return "counts 2,1,2,3,6,9,18,30 for lengths 1..8";
         }},
        {"kraft/bt1-words",
         [](const VerifyConfig&) {
             RingCtxPtr F = RingContext::make(3, 1, 2);
             for (int n = 1; n <= 8; ++n)
                 for (const CyclicWord& w : simple_words(n))
                     req(is_bt1(module_of_word(F, w)), "word module not BT_1");
             return "every simple-word module to length 8 is BT_1";
         }},
        {"kraft/two-classes",
         [](const VerifyConfig&) {
             RingCtxPtr F = RingContext::make(3, 1, 1);
             auto classes = classify_ss_42(F);
             req(classes.size() == 2, "class count");
             req(classes[0].size() == 1 && classes[0][0].letters == "FFVV",
                 "first class");
             req(classes[1].size() == 2 && classes[1][0].letters == "FV" &&
                     classes[1][1].letters == "FV",
                 "second class");
             return "FFVV (dim F^2 = 1) | FV+FV (dim F^2 = 0)";
         }},
        {"kraft/eo-standard",
         [](const VerifyConfig&) {
             RingCtxPtr ctx = RingContext::make(3, 12, 2);
             ExteriorSpace V = ExteriorSpace::make(ctx);
             req(eo_stratum(V, V.iso.standard_M()) ==
                     EOStratum::superspecial_stratum,
                 "standard lattice not superspecial");
             return "standard M lies in the (FV)^2 stratum";
         }},
        {"kraft/eo-generic",
         [](const VerifyConfig&) {
             QSpace Q = QSpace::make(3, 12);
             VertexLattice L4 = type4_containing(Q, standard_vertex(Q)).front();
             RingCtxPtr ctx4 = RingContext::make(3, 12, 4);
             ExteriorSpace V4 = ExteriorSpace::make(ctx4);
             for (const SpecialLattice& L : specials_of_vertex(V4, Q, L4, 8)) {
                 if (is_superspecial(V4, L)) continue;
                 Orientation o = orient_of(V4, L.L);
                 PLattice Lp = o == Orientation::plus ? L.L : phi_bar(V4, L.L);
                 PLattice A = dieudonne_of(V4, SpecialLattice{Lp, Orientation::plus});
                 req(eo_stratum(V4, A) == EOStratum::generic_stratum,
                     "generic point not in the FFVV stratum");
                 return "a generic F_81 point lies in the FFVV stratum";
             }
             throw check_fail("no generic lattice found");
         }},
    };
}

Suite suite_for(const std::string& name) {
    if (name == "rings") return rings_suite();
    if (name == "lattices") return lattices_suite();
    if (name == "isocrystal") return isocrystal_suite();
    if (name == "exterior") return exterior_suite();
    if (name == "qspace") return qspace_suite();
    if (name == "graph") return graph_suite();
    if (name == "quadric") return quadric_suite();
    if (name == "kraft") return kraft_suite();
    throw domain_error("unknown verification suite: " + name);
}

}  // namespace

const std::vector<std::string>& verify_suites() {
    static const std::vector<std::string> names{
        "rings", "lattices", "isocrystal", "exterior",
        "qspace", "graph",    "quadric",    "kraft"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite,
                                   const VerifyConfig& cfg) {
    std::vector<CheckResult> out;
    for (auto& [name, fn] : suite_for(suite)) {
        CheckResult r;
        r.name = name;
        try {
            r.detail = fn(cfg);
            r.pass = true;
        } catch (const precision_error&) {
            throw;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_check(const CheckResult& r) {
    return r.name + (r.pass ? " PASS " : " FAIL ") + r.detail;
}

}  // namespace gl4
