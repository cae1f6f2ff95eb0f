// Integer factorization support: smallest-prime-factor tables, deterministic
// Miller-Rabin for 64-bit inputs, Brent-cycle Pollard rho, divisor
// enumeration, and a prime sieve for Euler-product scans.
#ifndef CHARCENSUS_INTFACTOR_HPP
#define CHARCENSUS_INTFACTOR_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "charcensus/bigint.hpp"

namespace charcensus {

bool is_prime_u64(std::uint64_t n);

// Primes up to and including `limit`.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

// Smallest-prime-factor table usable for instant factorization below its bound.
class SpfTable {
  public:
    explicit SpfTable(std::uint32_t bound = (1u << 20));
    std::uint32_t bound() const { return static_cast<std::uint32_t>(spf_.size()) - 1; }
    std::uint32_t spf(std::uint32_t n) const { return spf_[n]; }
    void factor_small(std::uint64_t n, std::vector<std::pair<std::uint64_t, int>>& out) const;

  private:
    std::vector<std::uint32_t> spf_;
};

// Factorization of a u64, sorted by prime.  Uses the SPF table when the value
// (or its cofactor) fits, otherwise trial division by small primes and then
// Miller-Rabin plus Pollard rho on what is left.
std::vector<std::pair<std::uint64_t, int>> factor_u64(std::uint64_t n, const SpfTable& spf);

// All positive divisors (unsorted) from a prime factorization.
std::vector<std::uint64_t> divisors_from_factorization(
    const std::vector<std::pair<std::uint64_t, int>>& fac);

// Factor an arbitrary-precision integer: trial division up to `trial_bound`,
// then 64-bit rho on the cofactor.  Throws ScaleGuardError when a composite
// cofactor exceeds 64 bits (caller should offer a config override).
std::vector<std::pair<Zint, int>> factor_Zint(const Zint& n, std::uint32_t trial_bound = 1000000);

}  // namespace charcensus

#endif
