// Combinatorial classification of BT_1 group schemes by cyclic F/V words:
// simple words, the cyclic-basis Dieudonne triple of a word, the BT_1
// kernel/image predicate, the (height 4, dimension 2, supersingular) filter,
// and the Ekedahl-Oort stratum of a height-0 Dieudonne lattice.

#pragma once

#include <string>
#include <string_view>

#include "gl4/quadric.hpp"

namespace gl4 {

/// A word over {F, V} up to cyclic rotation, stored as the lexicographically
/// least rotation.
struct CyclicWord {
    std::string letters;

    /// Validates the alphabet and canonicalizes; throws domain_error on any
    /// character outside {F, V} or an empty word.
    static CyclicWord make(std::string_view w);

    int length() const { return static_cast<int>(letters.size()); }

    /// Aperiodic: no proper period divides the word.
    bool simple() const;

    auto operator<=>(const CyclicWord&) const = default;
};

/// All aperiodic rotation classes of length n, canonical and sorted.
/// Requires 1 <= n <= 12.
std::vector<CyclicWord> simple_words(int n);

/// A triple (M, F, V) over the field GR(p, 1, m): F is sigma-linear and V is
/// sigma^{-1}-linear, both in the row convention F(v) = sigma(v) F_map,
/// V(v) = sigma^{-1}(v) V_map.
struct DieudonneTriple {
    RingCtxPtr field;
    Mat F_map;
    Mat V_map;

    int dim() const { return F_map.rows; }
};

/// The cyclic-basis triple of a word: letter i = F gives F(e_i) = e_{i+1}
/// and V(e_{i+1}) = 0; letter i = V gives V(e_{i+1}) = e_i and F(e_i) = 0.
/// The relations F V = 0 = V F are asserted.
DieudonneTriple module_of_word(const RingCtxPtr& field, const CyclicWord& w);

/// Block direct sum.
DieudonneTriple triple_sum(const DieudonneTriple& a, const DieudonneTriple& b);

/// Ker(F) = Im(V) and Ker(V) = Im(F), computed by rank and canonical row
/// spans with the semilinear twists applied.
bool is_bt1(const DieudonneTriple& t);

int rank_f(const DieudonneTriple& t);
int rank_v(const DieudonneTriple& t);
bool f_nilpotent(const DieudonneTriple& t);
bool v_nilpotent(const DieudonneTriple& t);

/// All multisets of simple words of total length 4 whose direct-sum triple
/// satisfies dim F(M) = dim V(M) = 2 with F and V nilpotent; the result is
/// exactly {[FFVV], [FV, FV]} and this is asserted.
std::vector<std::vector<CyclicWord>> classify_ss_42(const RingCtxPtr& field);

enum class EOStratum { superspecial_stratum, generic_stratum };

/// The Ekedahl-Oort stratum of a height-0 Dieudonne lattice: reduces
/// (A / pA, F mod p, V mod p) with V = p F^{-1}, checks the BT_1 and
/// (4, 2, 2, nilpotent) profile, and discriminates (FV)^2 from FFVV by
/// dim F^2(M) (0 versus 1; anything else is an inconsistency).  The verdict
/// is cross-checked against is_superspecial of the very special lattice.
EOStratum eo_stratum(const ExteriorSpace& V, const PLattice& A);

}  // namespace gl4
