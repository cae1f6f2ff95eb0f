// The number field K = Q[x]/(chi): maximal order by Pohst-Zassenhaus Round-2,
// field discriminant and index, splitting types of rational primes, exact
// class number / regulator for real quadratic K, and a partial-Euler-product
// estimator for the residue combination h*R/sqrt(disc).
#ifndef CHARCENSUS_NUMBERFIELD_HPP
#define CHARCENSUS_NUMBERFIELD_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "charcensus/latmat.hpp"
#include "charcensus/poly.hpp"

namespace charcensus {

// Integral basis of an order in K, rows = basis elements over the power basis
// {1, gamma, ..., gamma^(n-1)}, scaled by a common denominator.
struct OrderBasis {
    int n = 0;
    Zint den{1};
    ZMat mat;  // n x n, HNF (upper triangular, positive diagonal, reduced)

    // [O : Z[gamma]] = den^n / det(mat); exact positive integer for orders
    // containing Z[gamma].
    Zint index_in_power_order() const;
};

enum class ResidueSource { ExactQuadratic, EulerEstimate, UserSupplied };

struct FieldInvariants {
    int n = 0;
    Zint disc_chi{0};
    Zint disc_K{0};
    Zint index{1};
    std::vector<std::pair<Zint, int>> index_factorization;  // primes with S_p = v_p(index) > 0
    int r1 = 0, r2 = 0;
    double residue_combination = 0.0;  // h_K * R_K / sqrt(|disc_K|)
    double residue_spread = 0.0;       // estimator uncertainty; 0 for exact paths
    ResidueSource residue_source = ResidueSource::EulerEstimate;
    std::optional<Zint> h_K;
    std::optional<double> R_K;
};

struct SplittingType {
    Zint p{0};
    std::vector<std::pair<int, int>> primes_above;  // (e_i, f_i), sorted
};

// Multiplication-by-element matrices for an order; cached by consumers.
struct OrderArithmetic {
    int n = 0;
    OrderBasis basis;
    std::vector<ZMat> mult;  // mult[i] = matrix of multiplication by basis element i
    ZMat gamma;              // matrix of multiplication by gamma
    ZRow one;                // coordinates of 1

    // coordinates of (x * y) for coordinate vectors x, y
    ZRow multiply(const ZRow& x, const ZRow& y) const;
};

// Structure constants and action matrices of the order; verifies ring closure.
OrderArithmetic order_arithmetic(const IntPolynomial& chi, const OrderBasis& basis);

// Maximal order of Q[x]/(chi) for monic irreducible chi of degree 2..8.
// Round-2 enlargement at every prime whose square divides disc(chi).
std::pair<OrderBasis, FieldInvariants> maximal_order(const IntPolynomial& chi);

// Splitting of p in O_K.  Dedekind when p does not divide the index; otherwise
// the finite algebra O/pO is decomposed into local components by idempotent
// lifting.
SplittingType splitting_type(const IntPolynomial& chi, const OrderBasis& maximal,
                             const Zint& p, std::uint64_t seed = 0x5eedbea7u);

// Exact class number and regulator of the real quadratic field with
// fundamental discriminant D: regulator from the continued fraction of the
// standard quadratic surd, class number from cycles of reduced indefinite
// forms (narrow count corrected by the fundamental-unit norm).
struct QuadraticInvariants {
    Zint h{0};
    double R = 0.0;
    int unit_norm = 0;       // -1 or +1
    Zint unit_a{0}, unit_b{0}, unit_den{1};  // fundamental unit (a + b sqrt(D)) / den
    int cf_period = 0;
};
QuadraticInvariants quadratic_invariants(const Zint& D);

// Partial Euler product for lim_{s->1} zeta_K(s)/zeta(s) over primes <= bound,
// geometric-mean smoothed between bound and bound/2; converted to
// h*R/sqrt(disc) by dividing 2^(n-1).  Returns (estimate, spread).
// Heuristic: the product converges only conditionally; exact or user-supplied
// values are preferred whenever available.
std::pair<double, double> residue_estimate(const IntPolynomial& chi, const OrderBasis& maximal,
                                           const FieldInvariants& inv, std::uint32_t prime_bound);

bool is_fundamental_discriminant(const Zint& D);

}  // namespace charcensus

#endif
