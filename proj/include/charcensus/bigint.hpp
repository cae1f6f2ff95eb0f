// Thin value-type wrappers around GMP integers and rationals.
//
// Everything downstream (polynomial arithmetic, order lattices, conductor
// quotients) works over exact Z or Q; these wrappers keep the GMP C API out
// of the algorithm code.
#ifndef CHARCENSUS_BIGINT_HPP
#define CHARCENSUS_BIGINT_HPP

#include <gmp.h>

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>

namespace charcensus {

class Zint {
  public:
    Zint() { mpz_init(z_); }
    Zint(long v) { mpz_init_set_si(z_, v); }            // NOLINT(google-explicit-constructor)
    Zint(int v) : Zint(static_cast<long>(v)) {}         // NOLINT(google-explicit-constructor)
    explicit Zint(unsigned long v) { mpz_init_set_ui(z_, v); }
    explicit Zint(const std::string& dec) {
        if (mpz_init_set_str(z_, dec.c_str(), 10) != 0) {
            mpz_clear(z_);
            throw std::invalid_argument("Zint: bad decimal string '" + dec + "'");
        }
    }
    Zint(const Zint& o) { mpz_init_set(z_, o.z_); }
    Zint(Zint&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Zint& operator=(const Zint& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Zint& operator=(Zint&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Zint() { mpz_clear(z_); }

    mpz_srcptr raw() const { return z_; }
    mpz_ptr raw() { return z_; }

    friend Zint operator+(const Zint& a, const Zint& b) { Zint r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend Zint operator-(const Zint& a, const Zint& b) { Zint r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend Zint operator*(const Zint& a, const Zint& b) { Zint r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    friend Zint operator-(const Zint& a) { Zint r; mpz_neg(r.z_, a.z_); return r; }
    Zint& operator+=(const Zint& o) { mpz_add(z_, z_, o.z_); return *this; }
    Zint& operator-=(const Zint& o) { mpz_sub(z_, z_, o.z_); return *this; }
    Zint& operator*=(const Zint& o) { mpz_mul(z_, z_, o.z_); return *this; }

    // Floor division / Euclidean remainder (remainder sign follows divisor=0+).
    friend Zint operator/(const Zint& a, const Zint& b) { Zint r; mpz_fdiv_q(r.z_, a.z_, b.z_); return r; }
    friend Zint operator%(const Zint& a, const Zint& b) { Zint r; mpz_fdiv_r(r.z_, a.z_, b.z_); return r; }

    friend bool operator==(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) != 0; }
    friend bool operator<(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Zint& a, const Zint& b) { return mpz_cmp(a.z_, b.z_) >= 0; }
    bool operator==(long v) const { return mpz_cmp_si(z_, v) == 0; }
    bool operator!=(long v) const { return mpz_cmp_si(z_, v) != 0; }

    bool is_zero() const { return mpz_sgn(z_) == 0; }
    int sgn() const { return mpz_sgn(z_); }
    bool is_odd() const { return mpz_odd_p(z_) != 0; }
    bool fits_slong() const { return mpz_fits_slong_p(z_) != 0; }
    long to_long() const {
        if (!fits_slong()) throw std::overflow_error("Zint: does not fit a long");
        return mpz_get_si(z_);
    }
    std::uint64_t to_u64() const {
        if (mpz_sgn(z_) < 0 || mpz_sizeinbase(z_, 2) > 64) throw std::overflow_error("Zint: does not fit u64");
        std::uint64_t lo = mpz_getlimbn(z_, 0);
        return lo;
    }
    double to_double() const { return mpz_get_d(z_); }
    // log of |x|, usable far beyond double range.
    double log_abs() const {
        long e = 0;
        double m = mpz_get_d_2exp(&e, z_);
        if (m < 0) m = -m;
        return std::log(m) + static_cast<double>(e) * 0.6931471805599453094;
    }

    std::string str() const {
        char* s = mpz_get_str(nullptr, 10, z_);
        std::string out(s);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(s, out.size() + 1);
        return out;
    }

    friend Zint abs(const Zint& a) { Zint r; mpz_abs(r.z_, a.z_); return r; }
    friend Zint gcd(const Zint& a, const Zint& b) { Zint r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
    friend Zint lcm(const Zint& a, const Zint& b) { Zint r; mpz_lcm(r.z_, a.z_, b.z_); return r; }
    // Exact quotient; undefined unless b | a.
    friend Zint divexact(const Zint& a, const Zint& b) { Zint r; mpz_divexact(r.z_, a.z_, b.z_); return r; }
    friend bool divides(const Zint& b, const Zint& a) { return mpz_divisible_p(a.z_, b.z_) != 0; }
    friend Zint pow(const Zint& a, unsigned long e) { Zint r; mpz_pow_ui(r.z_, a.z_, e); return r; }
    friend Zint isqrt(const Zint& a) { Zint r; mpz_sqrt(r.z_, a.z_); return r; }
    friend bool is_perfect_square(const Zint& a) { return mpz_perfect_square_p(a.z_) != 0; }
    friend Zint mod_pow(const Zint& b, const Zint& e, const Zint& m) {
        Zint r;
        mpz_powm(r.z_, b.z_, e.z_, m.z_);
        return r;
    }
    // 2 = certainly prime, 1 = probably, 0 = composite.
    int probab_prime(int reps = 32) const { return mpz_probab_prime_p(z_, reps); }
    std::uint64_t mod_u64(std::uint64_t m) const {
        Zint mm;
        mpz_set_ui(mm.z_, static_cast<unsigned long>(m));
        Zint r = *this % mm;
        return r.to_u64();
    }
    // p-adic valuation of a nonzero value.
    friend unsigned long pval(const Zint& a, const Zint& p) {
        Zint dummy;
        return mpz_remove(dummy.z_, a.z_, p.z_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Zint& a);

  private:
    mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Zint& a);

class Rat {
  public:
    Rat() { mpq_init(q_); }
    Rat(long v) {                                       // NOLINT(google-explicit-constructor)
        mpq_init(q_);
        mpq_set_si(q_, v, 1);
    }
    Rat(const Zint& num) {                              // NOLINT(google-explicit-constructor)
        mpq_init(q_);
        mpq_set_z(q_, num.raw());
    }
    Rat(const Zint& num, const Zint& den) {
        if (den.is_zero()) throw std::domain_error("Rat: zero denominator");
        mpq_init(q_);
        mpz_set(mpq_numref(q_), num.raw());
        mpz_set(mpq_denref(q_), den.raw());
        mpq_canonicalize(q_);
    }
    Rat(const Rat& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rat(Rat&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero()) throw std::domain_error("Rat: division by zero");
        Rat r;
        mpq_div(r.q_, a.q_, b.q_);
        return r;
    }
    friend Rat operator-(const Rat& a) { Rat r; mpq_neg(r.q_, a.q_); return r; }
    Rat& operator+=(const Rat& o) { mpq_add(q_, q_, o.q_); return *this; }
    Rat& operator-=(const Rat& o) { mpq_sub(q_, q_, o.q_); return *this; }
    Rat& operator*=(const Rat& o) { mpq_mul(q_, q_, o.q_); return *this; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) == 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) != 0; }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    int sgn() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }
    Zint num() const { Zint r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
    Zint den() const { Zint r; mpz_set(r.raw(), mpq_denref(q_)); return r; }
    Zint to_Zint() const {
        if (!is_integer()) throw std::domain_error("Rat: not an integer: " + str());
        return num();
    }
    double to_double() const { return mpq_get_d(q_); }
    std::string str() const { return is_integer() ? num().str() : num().str() + "/" + den().str(); }

    friend std::ostream& operator<<(std::ostream& os, const Rat& a);

  private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& a);

}  // namespace charcensus

#endif
