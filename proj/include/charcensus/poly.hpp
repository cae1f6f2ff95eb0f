// Exact integer-polynomial arithmetic: discriminants by subresultant PRS,
// Sturm real-root counts, factorization mod p (distinct-degree plus
// Cantor-Zassenhaus / Artin-Schreier splitting), quadratic Hensel lifting,
// and irreducibility certification over Q.
#ifndef CHARCENSUS_POLY_HPP
#define CHARCENSUS_POLY_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "charcensus/bigint.hpp"

namespace charcensus {

// Monic census targets are degree 2..8; plain arithmetic works for any degree.
inline constexpr int kMaxDegree = 8;

class IntPolynomial {
  public:
    IntPolynomial() = default;
    // Coefficients lowest degree first; trailing zeros are trimmed.
    explicit IntPolynomial(std::vector<Zint> coeffs);
    static IntPolynomial from_strings(const std::vector<std::string>& dec);
    static IntPolynomial zero() { return IntPolynomial(); }
    static IntPolynomial x_power(int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == Zint(1); }
    const Zint& coeff(int i) const;             // 0 outside [0, degree]
    const std::vector<Zint>& coeffs() const { return c_; }
    const Zint& leading() const { return c_.back(); }

    Zint eval(const Zint& x) const;
    IntPolynomial derivative() const;
    std::vector<std::string> to_strings() const;
    std::string pretty() const;                 // human-readable, e.g. "x^2 - 3*x + 1"

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator-(const IntPolynomial& a);
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.c_ == b.c_; }

    // Division by a monic divisor; exact in Z[x].
    static void divmod_monic(const IntPolynomial& a, const IntPolynomial& b,
                             IntPolynomial& quot, IntPolynomial& rem);
    // True (and sets quot) iff b divides a exactly over Z.
    static bool try_exact_divide(const IntPolynomial& a, const IntPolynomial& b, IntPolynomial& quot);

    Zint content() const;
    IntPolynomial primitive_part() const;

  private:
    std::vector<Zint> c_;
    void trim();
};

// gcd in Z[x] up to sign, primitive; for the squarefree test gcd(f, f').
IntPolynomial poly_gcd(const IntPolynomial& a, const IntPolynomial& b);

// Resultant of two nonzero polynomials by the subresultant PRS (integer
// arithmetic throughout, no rational coefficients).
Zint resultant(const IntPolynomial& a, const IntPolynomial& b);

// (-1)^{n(n-1)/2} Res(f, f') / lc(f).  Errors on degree < 1.
Zint discriminant(const IntPolynomial& f);

// Number of distinct real roots via a Sturm chain.  Errors on non-squarefree
// input; the message carries gcd(f, f').
int count_real_roots(const IntPolynomial& f);
bool is_totally_real(const IntPolynomial& f);

// ---- arithmetic over F_p ---------------------------------------------------

// Dense polynomial over F_p, p < 2^63; coefficients lowest degree first in [0, p).
struct ModPolynomial {
    std::uint64_t p = 0;
    std::vector<std::uint64_t> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    void trim();
    static ModPolynomial reduce(const IntPolynomial& f, std::uint64_t p);
    IntPolynomial lift() const;              // representatives in [0, p)
    bool operator==(const ModPolynomial& o) const { return p == o.p && c == o.c; }
    bool operator<(const ModPolynomial& o) const;  // (degree, coeff tuple) order
    std::string pretty() const;
};

ModPolynomial mod_add(const ModPolynomial& a, const ModPolynomial& b);
ModPolynomial mod_sub(const ModPolynomial& a, const ModPolynomial& b);
ModPolynomial mod_mul(const ModPolynomial& a, const ModPolynomial& b);
void mod_divmod(const ModPolynomial& a, const ModPolynomial& b, ModPolynomial& q, ModPolynomial& r);
ModPolynomial mod_gcd(ModPolynomial a, ModPolynomial b);          // monic gcd
ModPolynomial mod_pow_x(const ModPolynomial& f, const Zint& e);   // x^e mod f
ModPolynomial mod_powmod(const ModPolynomial& base, const Zint& e, const ModPolynomial& f);
ModPolynomial mod_make_monic(ModPolynomial f);

struct ModPFactorization {
    std::uint64_t p = 0;
    std::vector<std::pair<ModPolynomial, int>> factors;  // (irreducible monic, multiplicity)
};

// Full factorization of a monic polynomial over F_p.  Equal-degree splitting
// is randomized (Cantor-Zassenhaus for odd p, trace splitting for p = 2) with
// the given seed; factors come back sorted, so the result is canonical.
ModPFactorization factor_mod_p(const IntPolynomial& f, std::uint64_t p, std::uint64_t seed = 0x5eedbea7u);

// ---- Hensel lifting and irreducibility -------------------------------------

// Quadratic Hensel lifting: from f = g*h (mod p) with gcd(g, h) = 1 in F_p[x]
// to f = G*H (mod p^k), G = g and H = h (mod p).  All inputs monic.
// Throws ValidationError when g, h are not coprime mod p.
std::pair<IntPolynomial, IntPolynomial> hensel_lift(const IntPolynomial& f,
                                                    const IntPolynomial& g,
                                                    const IntPolynomial& h,
                                                    std::uint64_t p, unsigned k);

// Irreducibility in Q[x] for monic f of degree <= 8: an irreducible image mod
// a good prime certifies directly; otherwise Hensel lifting past the
// Landau-Mignotte bound plus factor-subset recombination decides.
bool is_irreducible_over_Q(const IntPolynomial& f, std::uint64_t seed = 0x5eedbea7u);

// Test-support oracle: |disc| from numerically computed roots (Durand-Kerner),
// rounded to the nearest integer.  Independent of the subresultant path.
double discriminant_float_oracle(const IntPolynomial& f);

}  // namespace charcensus

#endif
