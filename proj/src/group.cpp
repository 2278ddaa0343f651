#include "rumkit/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rumkit {

namespace {

long long floor_mod(long long x, long long n) {
    long long r = x % n;
    return r < 0 ? r + n : r;
}

// Exact unit-circle value for a reduced fraction num/den in [0,1).
// Quarter turns come out as exact constants so that symbol matrices evaluated
// at +-1, +-i carry no trig rounding.
std::complex<double> unit_from_fraction(long long num, long long den) {
    if (num == 0) return {1.0, 0.0};
    if (4 % den == 0) {
        long long q = num * (4 / den);  // position in quarter turns
        switch (q) {
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            case 3: return {0.0, -1.0};
        }
    }
    double angle = 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
    return std::polar(1.0, angle);
}

}  // namespace

long long GroupSpec::finite_order() const {
    if (!is_finite()) throw std::logic_error("finite_order on infinite group");
    long long n = 1;
    for (long long o : torsion_orders) n *= o;
    return n;
}

void GroupSpec::validate() const {
    if (free_rank < 0) throw std::invalid_argument("group: free_rank must be non-negative");
    for (long long o : torsion_orders) {
        if (o < 2) throw std::invalid_argument("group: torsion orders must be >= 2");
        if (o > 1000000000LL) throw std::invalid_argument("group: torsion order too large");
    }
}

bool elem_less(const GroupElement& a, const GroupElement& b) {
    if (a.free != b.free) {
        return std::lexicographical_compare(a.free.begin(), a.free.end(), b.free.begin(), b.free.end());
    }
    return a.torsion < b.torsion;
}

GroupElement elem_zero(const GroupSpec& spec) {
    GroupElement e;
    e.free.assign(spec.free_rank, BigInt(0));
    e.torsion.assign(spec.torsion_orders.size(), 0);
    return e;
}

bool elem_is_zero(const GroupElement& a) {
    for (const auto& x : a.free)
        if (x != 0) return false;
    for (long long k : a.torsion)
        if (k != 0) return false;
    return true;
}

static void check_conform(const GroupSpec& spec, const GroupElement& a, const char* who) {
    if (static_cast<int>(a.free.size()) != spec.free_rank ||
        a.torsion.size() != spec.torsion_orders.size()) {
        throw std::invalid_argument(std::string(who) + ": group element does not match spec");
    }
}

GroupElement elem_add(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
    check_conform(spec, a, "elem_add");
    check_conform(spec, b, "elem_add");
    GroupElement out;
    out.free.reserve(a.free.size());
    for (size_t i = 0; i < a.free.size(); ++i) out.free.push_back(a.free[i] + b.free[i]);
    out.torsion.reserve(a.torsion.size());
    for (size_t j = 0; j < a.torsion.size(); ++j)
        out.torsion.push_back(floor_mod(a.torsion[j] + b.torsion[j], spec.torsion_orders[j]));
    return out;
}

GroupElement elem_neg(const GroupSpec& spec, const GroupElement& a) {
    check_conform(spec, a, "elem_neg");
    GroupElement out;
    out.free.reserve(a.free.size());
    for (const auto& x : a.free) out.free.push_back(-x);
    out.torsion.reserve(a.torsion.size());
    for (size_t j = 0; j < a.torsion.size(); ++j)
        out.torsion.push_back(floor_mod(-a.torsion[j], spec.torsion_orders[j]));
    return out;
}

GroupElement make_element(const GroupSpec& spec, std::vector<BigInt> free, std::vector<long long> torsion) {
    GroupElement e{std::move(free), std::move(torsion)};
    check_conform(spec, e, "make_element");
    for (size_t j = 0; j < e.torsion.size(); ++j)
        e.torsion[j] = floor_mod(e.torsion[j], spec.torsion_orders[j]);
    return e;
}

std::string elem_to_string(const GroupElement& a) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.free.size(); ++i) os << (i ? "," : "") << a.free[i];
    os << ";";
    for (size_t j = 0; j < a.torsion.size(); ++j) os << (j ? "," : "") << a.torsion[j];
    os << ")";
    return os.str();
}

Turn Turn::from_fraction(long long num, long long den) {
    if (den <= 0) throw std::invalid_argument("Turn: denominator must be positive");
    long long g = std::gcd(std::abs(num), den);
    num /= g;
    den /= g;
    num %= den;
    if (num < 0) num += den;
    Turn t;
    t.exact = true;
    t.num = num;
    t.den = den;
    t.value = static_cast<double>(num) / static_cast<double>(den);
    return t;
}

Turn Turn::from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("Turn: non-finite value");
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0;  // guard against floor rounding at 1-ulp below 1
    for (long long den = 1; den <= 1024; ++den) {
        double scaled = v * static_cast<double>(den);
        double r = std::round(scaled);
        if (scaled == r && r / static_cast<double>(den) == v) {
            return from_fraction(static_cast<long long>(r), den);
        }
    }
    Turn t;
    t.value = v;
    return t;
}

bool turn_less(const Turn& a, const Turn& b) {
    if (a.exact && b.exact) {
        // Cross-multiply exactly; denominators stay small enough for int64.
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    return a.value < b.value;
}

bool turn_equal(const Turn& a, const Turn& b) {
    if (a.exact && b.exact) return a.num == b.num && a.den == b.den;
    return a.value == b.value;
}

bool char_conforms(const GroupSpec& spec, const Character& chi) {
    if (static_cast<int>(chi.free_turns.size()) != spec.free_rank) return false;
    if (chi.torsion_indices.size() != spec.torsion_orders.size()) return false;
    for (size_t j = 0; j < chi.torsion_indices.size(); ++j)
        if (chi.torsion_indices[j] < 0 || chi.torsion_indices[j] >= spec.torsion_orders[j]) return false;
    return true;
}

std::complex<double> char_eval(const GroupSpec& spec, const Character& chi, const GroupElement& gamma) {
    if (!char_conforms(spec, chi)) throw std::invalid_argument("char_eval: character does not match spec");
    check_conform(spec, gamma, "char_eval");
    std::complex<double> out{1.0, 0.0};
    for (int i = 0; i < spec.free_rank; ++i) {
        const Turn& t = chi.free_turns[i];
        const BigInt& g = gamma.free[i];
        if (g == 0 || (t.exact && t.num == 0)) continue;
        if (t.exact) {
            // (num * g) mod den stays exact in big-int arithmetic.
            BigInt r = (BigInt(t.num) * g) % t.den;
            if (r < 0) r += t.den;
            out *= unit_from_fraction(r.convert_to<long long>(), t.den);
        } else {
            double frac = std::fmod(t.value * g.convert_to<double>(), 1.0);
            if (frac < 0) frac += 1.0;
            out *= std::polar(1.0, 2.0 * std::numbers::pi * frac);
        }
    }
    for (size_t j = 0; j < spec.torsion_orders.size(); ++j) {
        long long n = spec.torsion_orders[j];
        long long r = floor_mod(chi.torsion_indices[j] * gamma.torsion[j], n);
        if (r == 0) continue;
        long long g = std::gcd(r, n);
        out *= unit_from_fraction(r / g, n / g);
    }
    return out;
}

std::vector<Character> enumerate_torsion_dual(const GroupSpec& spec) {
    std::vector<Character> out;
    const size_t m = spec.torsion_orders.size();
    Character chi;
    chi.free_turns.assign(spec.free_rank, Turn::from_fraction(0, 1));
    chi.torsion_indices.assign(m, 0);
    while (true) {
        out.push_back(chi);
        // lexicographic increment, first index slowest
        int j = static_cast<int>(m) - 1;
        for (; j >= 0; --j) {
            if (++chi.torsion_indices[j] < spec.torsion_orders[j]) break;
            chi.torsion_indices[j] = 0;
        }
        if (j < 0) break;
    }
    return out;
}

std::vector<Character> sample_dual_grid(const GroupSpec& spec, long long grid) {
    if (grid < 1) throw std::invalid_argument("sample_dual_grid: grid must be >= 1");
    std::vector<Character> torsion_part = enumerate_torsion_dual(spec);
    if (spec.free_rank == 0) return torsion_part;

    std::vector<Character> out;
    std::vector<long long> idx(spec.free_rank, 0);
    while (true) {
        std::vector<Turn> turns;
        turns.reserve(spec.free_rank);
        for (long long i : idx) turns.push_back(Turn::from_fraction(i, grid));
        for (const Character& tk : torsion_part) {
            Character chi;
            chi.free_turns = turns;
            chi.torsion_indices = tk.torsion_indices;
            out.push_back(std::move(chi));
        }
        int a = spec.free_rank - 1;
        for (; a >= 0; --a) {
            if (++idx[a] < grid) break;
            idx[a] = 0;
        }
        if (a < 0) break;
    }
    return out;
}

std::string char_to_string(const Character& chi) {
    std::ostringstream os;
    for (size_t i = 0; i < chi.free_turns.size(); ++i) {
        if (i) os << ",";
        const Turn& t = chi.free_turns[i];
        if (t.exact)
            os << t.num << "/" << t.den;
        else
            os << t.value;
    }
    os << ";";
    for (size_t j = 0; j < chi.torsion_indices.size(); ++j) os << (j ? "," : "") << chi.torsion_indices[j];
    return os.str();
}

}  // namespace rumkit
