// Exact counts of n x n integer matrices with a fixed irreducible
// characteristic polynomial and Frobenius norm <= T: a divisor-method fast
// path for n = 2, a pruned depth-first enumerator for n = 3..4, and a naive
// full-box reference oracle.  Boundary matrices with norm exactly T are
// included; T is compared through floor(T^2) against exact integer norm
// squares so no floating comparison happens at the boundary.
#ifndef CHARCENSUS_CENSUS_HPP
#define CHARCENSUS_CENSUS_HPP

#include <cstdint>
#include <string>

#include "charcensus/poly.hpp"

namespace charcensus {

enum class Enumerator { Auto, N2Divisor, GenericDfs, Naive };

std::string to_string(Enumerator e);
Enumerator enumerator_from_string(const std::string& s);

struct CensusResult {
    std::uint64_t count = 0;
    double T = 0.0;
    std::string enumerator;
    double seconds = 0.0;
    std::uint64_t checksum = 0;  // FNV-1a over (coeffs, T, enumerator)
};

// floor(T^2) with a one-ulp nudge so integer T stays exact.
std::int64_t norm_bound_sq(double T);

// n = 2 divisor method: for each admissible diagonal the off-diagonal pairs
// biject with divisors of the determinant defect, which is factored through
// an SPF table plus Miller-Rabin/Pollard-rho.
CensusResult count_n2(const IntPolynomial& chi, double T, int threads = 1);

// n = 3..4: diagonal first (last diagonal entry from the trace), then
// off-diagonal pairs with running norm pruning; the final pair is pinned by
// the second characteristic coefficient; full coefficient check at leaves.
CensusResult count_generic(const IntPolynomial& chi, double T, int threads = 1);

// Full-box reference: every entry in [-T, T], ball-pruned, characteristic
// polynomial checked at leaves.  Guarded by (2T+1)^(n^2) <= 2e10.
CensusResult naive_reference(const IntPolynomial& chi, double T);

CensusResult run_census(const IntPolynomial& chi, double T, Enumerator which, int threads = 1);

}  // namespace charcensus

#endif
