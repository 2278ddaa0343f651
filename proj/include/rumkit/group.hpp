#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace rumkit {

// Free coordinates are arbitrary-size so that window arithmetic can never
// overflow no matter how large a truncation the user asks for.
using BigInt = boost::multiprecision::cpp_int;

// Gamma = Z^r x Z_{n_1} x ... x Z_{n_m}.
struct GroupSpec {
    int free_rank = 0;
    std::vector<long long> torsion_orders;  // each >= 2

    int torsion_count() const { return static_cast<int>(torsion_orders.size()); }
    bool is_finite() const { return free_rank == 0; }
    // Number of elements for finite groups (product of torsion orders).
    long long finite_order() const;
    // Throws std::invalid_argument on negative rank or torsion order < 2.
    void validate() const;
    bool operator==(const GroupSpec&) const = default;
};

struct GroupElement {
    std::vector<BigInt> free;        // length = free_rank
    std::vector<long long> torsion;  // canonically reduced into [0, n_j)

    bool operator==(const GroupElement&) const = default;
};

// Strict weak order on elements (free lexicographic, then torsion); used for
// map keys and deterministic support ordering.
bool elem_less(const GroupElement& a, const GroupElement& b);
struct ElemLess {
    bool operator()(const GroupElement& a, const GroupElement& b) const { return elem_less(a, b); }
};

GroupElement elem_zero(const GroupSpec& spec);
bool elem_is_zero(const GroupElement& a);
// Componentwise sum, torsion reduced mod n_j. Throws on spec mismatch.
GroupElement elem_add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
// Additive inverse, torsion canonically reduced.
GroupElement elem_neg(const GroupSpec& spec, const GroupElement& a);
// Builds a canonically reduced element from raw coordinates.
GroupElement make_element(const GroupSpec& spec, std::vector<BigInt> free, std::vector<long long> torsion);
std::string elem_to_string(const GroupElement& a);

// One circle coordinate of a character, stored as a turn in [0,1).
// Grid points, CLI fractions, and torsion angles are exact rationals; turns
// that arrive as raw doubles keep only the double.
struct Turn {
    double value = 0.0;
    bool exact = false;
    long long num = 0;  // reduced, 0 <= num < den
    long long den = 1;

    static Turn from_fraction(long long num, long long den);
    // Wraps into [0,1); promotes to an exact fraction when a denominator
    // <= 1024 reproduces the double exactly.
    static Turn from_double(double v);
};
bool turn_less(const Turn& a, const Turn& b);
bool turn_equal(const Turn& a, const Turn& b);

// A point of the dual group: omega_i = exp(2 pi i t_i), zeta_j = exp(2 pi i k_j / n_j).
struct Character {
    std::vector<Turn> free_turns;        // length r
    std::vector<long long> torsion_indices;  // k_j in [0, n_j)
};

// chi(gamma) = prod_i exp(2 pi i t_i gamma_i) * prod_j exp(2 pi i k_j gamma_j / n_j).
// Quarter-turn factors are evaluated exactly. Throws on spec mismatch.
std::complex<double> char_eval(const GroupSpec& spec, const Character& chi, const GroupElement& gamma);

// All prod(n_j) characters with the given free turns fixed to 0, lexicographic
// in torsion indices.
std::vector<Character> enumerate_torsion_dual(const GroupSpec& spec);

// N^r * prod(n_j) characters: free turns i/N for i in [0,N) (exact fractions),
// free-major order, crossed with the full torsion dual.
std::vector<Character> sample_dual_grid(const GroupSpec& spec, long long grid);

bool char_conforms(const GroupSpec& spec, const Character& chi);
std::string char_to_string(const Character& chi);

}  // namespace rumkit
