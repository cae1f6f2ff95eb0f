#include "charcensus/asymptotic.hpp"

#include <cmath>

#include "charcensus/errors.hpp"

namespace charcensus {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Bernoulli numbers B_2, B_4, ..., B_12 for the Euler-Maclaurin tail.
constexpr double kBernoulli[] = {1.0 / 6,  -1.0 / 30, 1.0 / 42,
                                 -1.0 / 30, 5.0 / 66,  -691.0 / 2730};

}  // namespace

double zeta_euler_maclaurin(int s) {
    if (s < 2) throw ValidationError("zeta: argument must be >= 2");
    const int N = 24;
    long double sum = 0.0L;
    for (int k = 1; k < N; ++k) sum += std::pow(static_cast<long double>(k), -static_cast<long double>(s));
    long double Nl = static_cast<long double>(N);
    sum += std::pow(Nl, 1.0L - s) / (s - 1.0L);
    sum += 0.5L * std::pow(Nl, -static_cast<long double>(s));
    // sum_j B_2j / (2j)! * (s)(s+1)...(s+2j-2) * N^(-s-2j+1)
    long double rising = static_cast<long double>(s);  // (s)_{2j-1}, built incrementally
    long double fact = 2.0L;                           // (2j)!
    for (int j = 1; j <= 6; ++j) {
        sum += static_cast<long double>(kBernoulli[j - 1]) / fact * rising *
               std::pow(Nl, -static_cast<long double>(s) - 2 * j + 1);
        rising *= (s + 2 * j - 1);
        rising *= (s + 2 * j);
        fact *= (2 * j + 1);
        fact *= (2 * j + 2);
    }
    return static_cast<double>(sum);
}

double zeta_value(int s) {
    switch (s) {
        case 2: return kPi * kPi / 6.0;
        case 4: return std::pow(kPi, 4) / 90.0;
        case 6: return std::pow(kPi, 6) / 945.0;
        case 8: return std::pow(kPi, 8) / 9450.0;
        default: return zeta_euler_maclaurin(s);
    }
}

double gamma_half_integer(int i) {
    if (i < 1) throw ValidationError("gamma_half_integer: i must be >= 1");
    if (i % 2 == 0) {
        double g = 1.0;
        for (int k = 2; k < i / 2 + 1; ++k) g *= (k - 1);
        return g;  // (i/2 - 1)!
    }
    double g = std::sqrt(kPi);
    for (int k = 1; k <= (i - 1) / 2; ++k) g *= (k - 0.5);
    return g;  // Gamma(1/2 + (i-1)/2)
}

double unit_ball_volume(int m) {
    if (m < 0) throw ValidationError("unit_ball_volume: negative dimension");
    if (m == 0) return 1.0;
    return std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
}

double orthogonal_group_volume(int n) {
    double g = 1.0;
    for (int i = 1; i <= n; ++i) g *= gamma_half_integer(i);
    return std::pow(2.0, n) * std::pow(kPi, n * (n + 1) / 4.0) / g;
}

ArchimedeanConstants archimedean_constants(int n) {
    ArchimedeanConstants c;
    c.n = n;
    c.ball_volume = unit_ball_volume(n * (n - 1) / 2);
    c.gamma_product = 1.0;
    for (int i = 1; i <= n; ++i) c.gamma_product *= gamma_half_integer(i);
    for (int i = 2; i <= n; ++i) c.zeta_values.push_back(zeta_value(i));
    c.orthogonal_volume = orthogonal_group_volume(n);
    return c;
}

double c_t_coefficient(int n, double residue_combination) {
    if (n < 2) throw ValidationError("c_t_coefficient: n must be >= 2");
    if (!(residue_combination > 0.0))
        throw ValidationError("c_t_coefficient: residue combination h*R/sqrt(disc) is missing or non-positive");
    double zinv = 1.0;
    for (int i = 2; i <= n; ++i) zinv /= zeta_value(i);
    double gprod = 1.0;
    for (int i = 1; i <= n; ++i) gprod *= gamma_half_integer(i);
    double w = unit_ball_volume(n * (n - 1) / 2);
    return residue_combination * zinv * std::pow(2.0, n - 1) * w *
           std::pow(kPi, n * (n + 1) / 4.0) / gprod;
}

double ems_constant(int n, double h, double R, double disc_chi) {
    if (n < 2) throw ValidationError("ems_constant: n must be >= 2");
    double w = unit_ball_volume(n * (n - 1) / 2);
    double lambda_prod = 1.0;
    for (int k = 2; k <= n; ++k) {
        // Lambda(k/2) = pi^(-k/2) Gamma(k/2) zeta(k)
        lambda_prod *= std::pow(kPi, -k / 2.0) * gamma_half_integer(k) * zeta_value(k);
    }
    return std::pow(2.0, n - 1) * h * R * w / (std::sqrt(disc_chi) * lambda_prod);
}

Rat euler_product(const std::vector<LocalGammaData>& locals) {
    Rat e(1);
    for (const auto& d : locals) {
        if (d.serre == 0) continue;  // factor is exactly 1
        Rat denom(pow(d.p, static_cast<unsigned>(d.serre)));
        e *= Rat(d.orbital) / denom;
    }
    return e;
}

Prediction predict(int n, const FieldInvariants& inv, const std::vector<LocalGammaData>& locals,
                   Branch branch, double T, bool allow_case2_formal) {
    if (branch == Branch::Case2 && !allow_case2_formal) {
        throw ValidationError(
            "predict: the unramified-Galois branch cannot occur over the rationals "
            "(every nontrivial extension of Q ramifies); use case1, or enable "
            "allow_case2_formal to evaluate the formula with supplied invariants");
    }
    Prediction out;
    out.n = n;
    out.branch = branch;
    out.exponent = n * (n - 1) / 2;
    out.euler_product = euler_product(locals);
    out.T = T;
    double c = c_t_coefficient(n, inv.residue_combination);
    Rat scaled = out.euler_product;
    if (branch == Branch::Case2) scaled += Rat(Zint(static_cast<long>(n - 1)));
    out.leading = c * scaled.to_double();
    out.value = out.leading * std::pow(T, out.exponent);
    return out;
}

}  // namespace charcensus
