// Archimedean constants and the assembled growth-law prediction: the leading
// coefficient combines the residue combination h*R/sqrt(disc), inverse zeta
// values, the unit-ball volume in dimension n(n-1)/2, and the orthogonal-group
// volume 2^n pi^(n(n+1)/4) / prod Gamma(i/2); the count grows like
// coefficient * T^(n(n-1)/2).
#ifndef CHARCENSUS_ASYMPTOTIC_HPP
#define CHARCENSUS_ASYMPTOTIC_HPP

#include <vector>

#include "charcensus/numberfield.hpp"
#include "charcensus/orbital.hpp"

namespace charcensus {

// zeta(s) for integer s >= 2: closed forms for even s through 8,
// Euler-Maclaurin tail summation otherwise (absolute error well under 1e-14).
double zeta_value(int s);
double zeta_euler_maclaurin(int s);  // exposed for cross-checking the closed forms

// Gamma(i/2) for i >= 1, exact recurrences from Gamma(1/2) = sqrt(pi).
double gamma_half_integer(int i);

// Volume of the unit ball in R^m.
double unit_ball_volume(int m);

// vol of the real orthogonal group in the normalization used by the
// archimedean volume computation: 2^n pi^(n(n+1)/4) / prod_{i<=n} Gamma(i/2).
double orthogonal_group_volume(int n);

struct ArchimedeanConstants {
    int n = 0;
    double ball_volume = 0.0;        // w in dimension n(n-1)/2
    double gamma_product = 0.0;      // prod_{i=1}^n Gamma(i/2)
    std::vector<double> zeta_values; // zeta(2), ..., zeta(n)
    double orthogonal_volume = 0.0;
};
ArchimedeanConstants archimedean_constants(int n);

enum class Branch { Case1, Case2 };

struct Prediction {
    int n = 0;
    Branch branch = Branch::Case1;
    double leading = 0.0;      // coefficient of T^(n(n-1)/2)
    int exponent = 0;          // n(n-1)/2
    Rat euler_product{0};      // exact product of orbital / p^serre
    double value = 0.0;        // leading * T^exponent
    double T = 0.0;
};

// Leading coefficient without the Euler product or the T power:
// residue_combination * prod_{i=2..n} zeta(i)^-1 * 2^(n-1) * w * pi^(n(n+1)/4)
//   / prod_{i=1..n} Gamma(i/2).
// residue_combination = h_K R_K / sqrt(|disc_K|); base field is the rationals.
double c_t_coefficient(int n, double residue_combination);

// The comparison-literature constant
//   2^(n-1) h R w / ( sqrt(disc_chi) * prod_{k=2}^n Lambda(k/2) ),
// Lambda(s) = pi^-s Gamma(s) zeta(2s); equal to c_t_coefficient when the
// power order is maximal (disc_chi = disc_K).  Serves as an exact algebraic
// cross-check of the constant assembly.
double ems_constant(int n, double h, double R, double disc_chi);

// Exact-rational Euler product of orbital/p^serre over the given local data;
// all primes off the index contribute 1.
Rat euler_product(const std::vector<LocalGammaData>& locals);

// Assemble the prediction at radius T.  Branch Case2 adds n-1 to the Euler
// product before scaling.  Case2 with the rational base field is rejected --
// every nontrivial extension of the rationals ramifies, so only Case1 can
// occur -- unless allow_case2_formal permits formula-evaluation mode.
Prediction predict(int n, const FieldInvariants& inv, const std::vector<LocalGammaData>& locals,
                   Branch branch, double T, bool allow_case2_formal = false);

}  // namespace charcensus

#endif
