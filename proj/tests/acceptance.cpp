// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// fails.  Each criterion carries its own runtime budget; exceeding the budget
// is a failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gl4/enumerate.hpp"
#include "gl4/kraft.hpp"

using namespace gl4;

namespace {

struct check_fail : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void req(bool ok, const std::string& msg) {
    if (!ok) throw check_fail(msg);
}

Mat random_row(const RingContext& R, int n, std::mt19937_64& rng) {
    long long pn = 1;
    for (int i = 0; i < R.N; ++i) pn *= R.p;
    Mat v(1, n);
    for (int j = 0; j < n; ++j) {
        std::vector<u64> c(static_cast<std::size_t>(R.m));
        for (auto& x : c) x = rng() % static_cast<u64>(pn);
        v.at(0, j) = R.from_coords(c);
    }
    return v;
}

// shared across criteria 6, 7, 9, 10
std::vector<PLattice> g_band;

const std::vector<PLattice>& band(const ExteriorSpace& V) {
    if (g_band.empty()) g_band = enumerate_band_dieudonne(V.iso);
    return g_band;
}

// ---------------------------------------------------------------- criteria

std::string c1_counting() {
    for (long p : {3L, 5L, 7L}) {
        QSpace Q = QSpace::make(p, 12);
        VertexLattice L2 = standard_vertex(Q);
        auto ups = type4_containing(Q, L2);
        long expect = p * p + 1;
        std::set<std::string> up_keys;
        for (const VertexLattice& u : ups) up_keys.insert(u.lat.key());
        req(static_cast<long>(up_keys.size()) == expect, "type4 count at p=" + std::to_string(p));
        // reciprocity on every up-edge of the seed
        for (const VertexLattice& u : ups) {
            bool found = false;
            for (const VertexLattice& d : type2_inside(Q, u))
                found = found || d.lat == L2.lat;
            req(found, "missing reciprocity type4 -> type2");
        }
        auto downs = type2_inside(Q, ups.front());
        std::set<std::string> down_keys;
        for (const VertexLattice& d : downs) down_keys.insert(d.lat.key());
        req(static_cast<long>(down_keys.size()) == expect, "type2 count at p=" + std::to_string(p));
        for (const VertexLattice& d : downs) {
            bool found = false;
            for (const VertexLattice& u : type4_containing(Q, d))
                found = found || u.lat == ups.front().lat;
            req(found, "missing reciprocity type2 -> type4");
        }
    }
    return "10/26/50 distinct lattices with reciprocity at p = 3, 5, 7";
}

std::string c2_invariants() {
    for (long p : {3L, 5L, 7L}) {
        req(hasse_invariant(fixed_space_form(p)) == -1, "Hasse invariant != -1");
        req(det_class(fixed_space_form(p)) == square_class(-1, p),
            "determinant class != -1");
    }
    return "Hasse = -1 and det = -1 at p = 3, 5, 7";
}

std::string c3_hodge_star() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    const RingContext& R = *ctx;
    ExteriorSpace V = ExteriorSpace::make(ctx);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Mat x(1, 6), t(1, 6);
            x.at(0, i) = R.one();
            t.at(0, j) = R.one();
            auto [sx, se] = hodge_star(V, x, 0);
            auto [bx, be] = hodge_star_dual(V, sx, se);
            req(bx == x && be == 0, "basis involution");
            req(s_equal_mod(R, pairing_cross(V, x, 0, t, 0),
                            pairing_t(V, sx, se, t, 0), R.N - 4),
                "basis pairing identity");
        }
    std::mt19937_64 rng(211);
    for (int k = 0; k < 100; ++k) {
        Mat x = random_row(R, 6, rng);
        Mat t = random_row(R, 6, rng);
        auto [sx, se] = hodge_star(V, x, 0);
        auto [bx, be] = hodge_star_dual(V, sx, se);
        req(bx == x && be == 0, "random involution");
        req(s_equal_mod(R, pairing_cross(V, x, 0, t, 0),
                        pairing_t(V, sx, se, t, 0), R.N - 4),
            "random pairing identity");
    }
    return "involution and pairing identity: 36 basis pairs + 100 random";
}

std::string c4_composition() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    const RingContext& R = *ctx;
    ExteriorSpace V = ExteriorSpace::make(ctx);
    auto check_pair = [&](const Mat& x, const Mat& y) {
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
    };
    for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
            Mat x(1, 6), y(1, 6);
            x.at(0, a) = R.one();
            y.at(0, b) = R.one();
            check_pair(x, y);
        }
    std::mt19937_64 rng(223);
    for (int k = 0; k < 100; ++k)
        check_pair(random_row(R, 6, rng), random_row(R, 6, rng));
    return "21 basis pairs + 100 random pairs";
}

std::string c5_slope_zero() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    const RingContext& R = *ctx;
    ExteriorSpace V = ExteriorSpace::make(ctx);
    Mat Y = y_basis(V);
    for (int i = 0; i < 6; ++i) {
        Mat yi(1, 6);
        for (int j = 0; j < 6; ++j) yi.at(0, j) = Y.at(i, j);
        auto [img, e] = phi(V, yi, 0);  // scale -1: p^{-1} (p y_i) = y_i
        req(e == -1 && img == mat_mul_pow_p(R, yi, 1), "Phi(y_i) != y_i");
    }
    return "Phi fixes y_1..y_6 at p = 3, m = 2";
}

std::string c6_round_trip() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    PLattice M = V.iso.standard_M();
    req(dieudonne_of(V, very_special_of(V, M)) == M, "worked example M");
    for (const PLattice& A : band(V)) {
        SpecialLattice L = very_special_of(V, A);
        req(is_special(V, L.L), "forward image not special");
        req(dieudonne_of(V, L) == A, "round trip failed at " + A.key());
    }
    return "identity on M and all " + std::to_string(band(V).size()) +
           " band lattices; images special";
}

std::string c7_stabilizers() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    PLattice bound = PLattice::standard(ctx, 6, -2);
    const auto& all = band(V);
    int n = 0;
    for (std::size_t i = 0; i < all.size(); i += all.size() / 20) {
        const PLattice& A = all[i];
        PLattice As = dual_std(A);
        PLattice S = wedge2(V, A);
        req(endo_transporter(V, bound, A, As, A, As) == S, "stabilizer != wedge2(A)");
        PLattice A1 = F_inv_p(V.iso, A);
        PLattice Q1 = dual_std(F_inv(V.iso, A));
        PLattice L1 = wedge2(V, A1).scaled_by(-1);
        req(endo_transporter(V, bound, A1, Q1, A1, Q1) == L1,
            "filtration grid != (1/p) wedge2(A_1)");
        req(endo_transporter(V, bound, A1, Q1, A, As) == lat_sum(L1, S),
            "cross grid != sum");
        ++n;
    }
    req(n >= 20, "fewer than 20 lattices sampled");
    return "three oracles on " + std::to_string(n) + " lattices";
}

std::string c8_quadric() {
    QuadricContext C = QuadricContext::make(3, 1);
    const RingContext& F = *C.field;
    std::set<std::vector<std::array<u64, 4>>> img;
    auto key = [](const std::vector<RElem>& pt) {
        std::vector<std::array<u64, 4>> k;
        for (const RElem& x : pt) k.push_back(x.c);
        return k;
    };
    for (const auto& P : proj_points(C.field, 2))
        for (const auto& Cd : proj_points(C.field, 2)) {
            std::vector<RElem> pt = psi(C, P, Cd);
            req(F.is_zero(quadric_eval(C, pt)), "Q(psi) != 0");
            img.insert(key(pt));
        }
    req(img.size() == 100, "psi image size != 100");
    req(quadric_points(C).size() == 100, "quadric point count != 100");
    auto [plus, minus] = x_lambda_points(C);
    req(plus.size() == 10 && minus.size() == 10, "|X_Lambda(F_9)| != 10");
    return "Q(psi) = 0, 100-point bijection, 10 = p^2 + 1 flags";
}

std::string c9_chain() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    QSpace Q = QSpace::make(3, 12);
    for (const PLattice& A : band(V)) {
        SpecialLattice L = very_special_of(V, A);
        ChainResult c = chain_and_lambda(V, Q, L);
        req(c.d >= 1 && c.d <= 2, "chain depth out of range");
        // L^(1) = L + Phi-bar(L), each step of length 1, so length(top/L) = d
        req(quotient_length(c.top, L.L) == c.d, "chain steps not length 1");
        auto [ok, type] = is_vertex(Q, c.lambda.lat);
        req(ok && type == 2 * c.d, "Lambda_L is not a vertex of type 2d");
        req(c.lambda.dual == phi_fixed_part(V, Q, L.L),
            "Lambda_L-dual != Phi-fixed part");
    }
    return "d <= 2, type 2d and fixed-part duals on all " +
           std::to_string(band(V).size()) + " lattices";
}

std::string c10_dichotomy() {
    RingCtxPtr ctx = RingContext::make(3, 12, 2);
    ExteriorSpace V = ExteriorSpace::make(ctx);
    QSpace Q = QSpace::make(3, 12);
    int ss = 0;
    for (const PLattice& A : band(V)) {
        SpecialLattice L = very_special_of(V, A);
        bool s = is_superspecial(V, L);
        req(s == (chain_and_lambda(V, Q, L).d == 1), "disagrees with d = 1");
        req(s == (eo_stratum(V, A) == EOStratum::superspecial_stratum),
            "disagrees with eo_stratum");
        ss += s;
    }
    return "agreement on all " + std::to_string(band(V).size()) +
           " lattices (" + std::to_string(ss) + " superspecial)";
}

std::string c11_kraft() {
    RingCtxPtr F = RingContext::make(3, 1, 1);
    auto classes = classify_ss_42(F);
    req(classes.size() == 2, "class count != 2");
    req(classes[0].size() == 1 && classes[0][0].letters == "FFVV", "FFVV class");
    req(classes[1].size() == 2 && classes[1][0].letters == "FV" &&
            classes[1][1].letters == "FV",
        "(FV)^2 class");
    req(simple_words(4).size() == 3, "simple_words(4) != 3");
    return "exactly {FFVV} and {FV, FV}; 3 simple words of length 4";
}

std::string c12_graph() {
    QSpace Q = QSpace::make(3, 12);
    IntersectionGraph g = build_graph(Q, standard_vertex(Q), 2);
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& [k4, k2] : g.edges) {
        req(g.nodes.at(k4).type == 4 && g.nodes.at(k2).type == 2,
            "edge endpoints are not type-4/type-2");
        adj[k4].push_back(k2);
        adj[k2].push_back(k4);
    }
    // connected: BFS from the seed reaches every node
    std::set<std::string> seen{g.seed_key};
    std::vector<std::string> frontier{g.seed_key};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        for (const std::string& k : frontier)
            for (const std::string& nb : adj[k])
                if (seen.insert(nb).second) next.push_back(nb);
        frontier = std::move(next);
    }
    req(seen.size() == g.nodes.size(), "graph is not connected");
    int interior = 0;
    for (const auto& [k, node] : g.nodes)
        if (node.distance < g.radius) {
            req(adj[k].size() == 10, "interior node of degree != 10");
            ++interior;
        }
    req(interior > 0, "no interior nodes");
    IntersectionGraph g2 = build_graph(Q, standard_vertex(Q), 2);
    req(graph_to_json(Q, g) == graph_to_json(Q, g2) &&
            graph_to_dot(g) == graph_to_dot(g2),
        "export not byte-identical");
    return std::to_string(g.nodes.size()) + " nodes, bipartite, connected, " +
           std::to_string(interior) + " interior nodes of degree 10";
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        double budget_s;
        std::function<std::string()> fn;
    };
    const std::vector<Criterion> criteria{
        {1, 10, c1_counting},   {2, 600, c2_invariants}, {3, 600, c3_hodge_star},
        {4, 600, c4_composition}, {5, 600, c5_slope_zero}, {6, 60, c6_round_trip},
        {7, 120, c7_stabilizers}, {8, 600, c8_quadric},    {9, 600, c9_chain},
        {10, 600, c10_dichotomy}, {11, 1, c11_kraft},      {12, 30, c12_graph},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = true;
        try {
            detail = c.fn();
        } catch (const std::exception& e) {
            pass = false;
            detail = e.what();
        }
        double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        if (pass && dt > c.budget_s) {
            pass = false;
            detail = "over budget (" + std::to_string(dt) + " s > " +
                     std::to_string(c.budget_s) + " s)";
        }
        std::printf("criterion %2d %s %s [%.1f s]\n", c.id,
                    pass ? "PASS" : "FAIL", detail.c_str(), dt);
        std::fflush(stdout);
        failures += !pass;
    }
    return failures == 0 ? 0 : 1;
}
