#include "gl4/kraft.hpp"

#include <algorithm>

namespace gl4 {

namespace {

std::string least_rotation(const std::string& s) {
    std::string best = s;
    for (std::size_t k = 1; k < s.size(); ++k) {
        std::string rot = s.substr(k) + s.substr(0, k);
        if (rot < best) best = rot;
    }
    return best;
}

/// Canonical rank-trimmed row span over the residue field.
Mat row_span(const RingContext& R, const Mat& M) {
    HowellResult h = howell(R, M);
    Mat out(h.rank, M.cols);
    for (int i = 0; i < h.rank; ++i)
        for (int j = 0; j < M.cols; ++j) out.at(i, j) = h.h.at(i, j);
    return out;
}

/// Matrix of F^k for the sigma-linear map v -> sigma(v) A.
Mat semilinear_power(const RingContext& R, const Mat& A, int k, bool inverse) {
    Mat P = A;
    for (int i = 1; i < k; ++i) {
        Mat twisted = inverse ? mat_frobenius_inv(R, P) : mat_frobenius(R, P);
        P = mat_mul(R, twisted, A);
    }
    return P;
}

void assert_fv_zero(const DieudonneTriple& t, const char* who) {
    const RingContext& R = *t.field;
    // F(V(v)) = v sigma(V_map) F_map, V(F(v)) = v sigma^{-1}(F_map) V_map
    if (!mat_is_zero(R, mat_mul(R, mat_frobenius(R, t.V_map), t.F_map)) ||
        !mat_is_zero(R, mat_mul(R, mat_frobenius_inv(R, t.F_map), t.V_map)))
        throw inconsistency_error(std::string(who) + ": F V and V F must vanish");
}

}  // namespace

CyclicWord CyclicWord::make(std::string_view w) {
    if (w.empty()) throw domain_error("CyclicWord: empty word");
    for (char c : w)
        if (c != 'F' && c != 'V')
            throw domain_error("CyclicWord: letters must be F or V");
    return CyclicWord{least_rotation(std::string(w))};
}

bool CyclicWord::simple() const {
    const std::size_t n = letters.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool periodic = true;
        for (std::size_t i = d; i < n && periodic; ++i)
            if (letters[i] != letters[i - d]) periodic = false;
        if (periodic) return false;
    }
    return true;
}

std::vector<CyclicWord> simple_words(int n) {
    if (n < 1 || n > 12) throw domain_error("simple_words: length out of range");
    std::vector<CyclicWord> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::string s(static_cast<std::size_t>(n), 'F');
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s[static_cast<std::size_t>(i)] = 'V';
        if (least_rotation(s) != s) continue;  // one representative per class
        CyclicWord w{s};
        if (w.simple()) out.push_back(std::move(w));
    }
    std::sort(out.begin(), out.end());
    return out;
}

DieudonneTriple module_of_word(const RingCtxPtr& field, const CyclicWord& w) {
    const RingContext& R = *field;
    const int n = w.length();
    DieudonneTriple t{field, Mat(n, n), Mat(n, n)};
    for (int i = 0; i < n; ++i) {
        int next = (i + 1) % n;
        if (w.letters[static_cast<std::size_t>(i)] == 'F')
            t.F_map.at(i, next) = R.one();  // F(e_i) = e_{i+1}, V(e_{i+1}) = 0
        else
            t.V_map.at(next, i) = R.one();  // V(e_{i+1}) = e_i, F(e_i) = 0
    }
    assert_fv_zero(t, "module_of_word");
    return t;
}

DieudonneTriple triple_sum(const DieudonneTriple& a, const DieudonneTriple& b) {
    if (a.field->p != b.field->p || a.field->m != b.field->m)
        throw domain_error("triple_sum: mismatched fields");
    const int n = a.dim(), m = b.dim();
    DieudonneTriple t{a.field, Mat(n + m, n + m), Mat(n + m, n + m)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            t.F_map.at(i, j) = a.F_map.at(i, j);
            t.V_map.at(i, j) = a.V_map.at(i, j);
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            t.F_map.at(n + i, n + j) = b.F_map.at(i, j);
            t.V_map.at(n + i, n + j) = b.V_map.at(i, j);
        }
    return t;
}

bool is_bt1(const DieudonneTriple& t) {
    const RingContext& R = *t.field;
    // Ker(F) = sigma^{-1}(left kernel of F_map), Im(V) = row span of V_map
    Mat ker_f = row_span(R, mat_frobenius_inv(R, kernel_mod(R, t.F_map, 1)));
    Mat im_v = row_span(R, t.V_map);
    if (!(ker_f == im_v)) return false;
    Mat ker_v = row_span(R, mat_frobenius(R, kernel_mod(R, t.V_map, 1)));
    Mat im_f = row_span(R, t.F_map);
    return ker_v == im_f;
}

int rank_f(const DieudonneTriple& t) { return howell(*t.field, t.F_map).rank; }
int rank_v(const DieudonneTriple& t) { return howell(*t.field, t.V_map).rank; }

bool f_nilpotent(const DieudonneTriple& t) {
    return mat_is_zero(*t.field, semilinear_power(*t.field, t.F_map, t.dim(), false));
}

bool v_nilpotent(const DieudonneTriple& t) {
    return mat_is_zero(*t.field, semilinear_power(*t.field, t.V_map, t.dim(), true));
}

std::vector<std::vector<CyclicWord>> classify_ss_42(const RingCtxPtr& field) {
    // catalog of simple words of length <= 4, in sorted order
    std::vector<CyclicWord> catalog;
    for (int n = 1; n <= 4; ++n)
        for (CyclicWord& w : simple_words(n)) catalog.push_back(std::move(w));

    std::vector<std::vector<CyclicWord>> out;
    std::vector<CyclicWord> pick;
    auto rec = [&](auto&& self, std::size_t from, int remaining) -> void {
        if (remaining == 0) {
            DieudonneTriple t = module_of_word(field, pick[0]);
            for (std::size_t i = 1; i < pick.size(); ++i)
                t = triple_sum(t, module_of_word(field, pick[i]));
            if (rank_f(t) == 2 && rank_v(t) == 2 && f_nilpotent(t) &&
                v_nilpotent(t))
                out.push_back(pick);
            return;
        }
        for (std::size_t i = from; i < catalog.size(); ++i) {
            if (catalog[i].length() > remaining) continue;
            pick.push_back(catalog[i]);
            self(self, i, remaining - catalog[i].length());
            pick.pop_back();
        }
    };
    rec(rec, 0, 4);
    std::sort(out.begin(), out.end());

    if (out.size() != 2)
        throw inconsistency_error("classify_ss_42: expected exactly two classes");
    return out;
}

EOStratum eo_stratum(const ExteriorSpace& V, const PLattice& A) {
    const RingContext& R = *V.ctx;
    if (lat_height(A, V.iso.standard_M()) != 0)
        throw domain_error("eo_stratum: height-0 lattice required");
    if (!is_dieudonne(V.iso, A))
        throw domain_error("eo_stratum: not a Dieudonne lattice");

    // coefficient matrices of F and V = p F^{-1} on the basis rows of A;
    // p PF^{-1} = PF since PF^2 = p
    SMat Gi = s_mat_inverse(R, s_from_mat(R, A.gens(), A.scale()));
    SMat Fc = s_mat_mul(R, s_from_mat(R, mat_mul(R, mat_frobenius(R, A.gens()), V.iso.PF),
                                      A.scale()),
                        Gi);
    SMat Vc = s_mat_mul(
        R,
        s_from_mat(R, mat_frobenius_inv(R, mat_mul(R, A.gens(), V.iso.PF)), A.scale()),
        Gi);

    RingCtxPtr field = RingContext::make(R.p, 1, R.m);
    const RingContext& F = *field;
    auto reduce = [&](const SMat& C) {
        Mat out(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const SElem& x = C.at(i, j);
                if (x.zero || x.e >= 1) continue;
                if (x.e < 0)
                    throw inconsistency_error("eo_stratum: F does not preserve A");
                RElem r = R.reduce_mod_p_pow(x.u, 1);
                std::vector<u64> digs(static_cast<std::size_t>(R.m));
                for (int k = 0; k < R.m; ++k)
                    digs[static_cast<std::size_t>(k)] = r.c[static_cast<std::size_t>(k)];
                out.at(i, j) = F.from_coords(digs);
            }
        return out;
    };
    DieudonneTriple t{field, reduce(Fc), reduce(Vc)};

    // full profile of the classification Lemma
    assert_fv_zero(t, "eo_stratum");
    if (!is_bt1(t)) throw inconsistency_error("eo_stratum: reduction is not BT_1");
    if (rank_f(t) != 2 || rank_v(t) != 2 || !f_nilpotent(t) || !v_nilpotent(t))
        throw inconsistency_error("eo_stratum: reduction fails the (4,2,2) profile");

    // discriminator: dim F^2(M) is 0 for (FV)^2 and 1 for FFVV
    int r2 = howell(F, semilinear_power(F, t.F_map, 2, false)).rank;
    EOStratum verdict;
    if (r2 == 0)
        verdict = EOStratum::superspecial_stratum;
    else if (r2 == 1)
        verdict = EOStratum::generic_stratum;
    else
        throw inconsistency_error("eo_stratum: profile matches neither word class");

    // geometric cross-check
    bool ss = is_superspecial(V, very_special_of(V, A));
    if (ss != (verdict == EOStratum::superspecial_stratum))
        throw inconsistency_error("eo_stratum: disagrees with the superspecial test");
    return verdict;
}

}  // namespace gl4
