#include <cstdint>

#include "charcensus/census.hpp"
#include "charcensus/errors.hpp"
#include "doctest.h"

using namespace charcensus;

namespace {

IntPolynomial P(std::initializer_list<long> lowest_first) {
    std::vector<Zint> c;
    for (long v : lowest_first) c.emplace_back(v);
    return IntPolynomial(std::move(c));
}

}  // namespace

TEST_CASE("pinned counts for x^2-3x+1") {
    CHECK(count_n2(P({1, -3, 1}), 5.0).count == 8);
    CHECK(naive_reference(P({1, -3, 1}), 5.0).count == 8);
    CHECK(count_n2(P({1, -3, 1}), 1.0).count == 0);  // trace 3 forces a^2+d^2 >= 5
    CHECK(count_n2(P({1, -3, 1}), 0.0).count == 0);
    CHECK(naive_reference(P({1, -3, 1}), 0.0).count == 0);
}

TEST_CASE("n2 divisor method matches the naive oracle on a quadratic panel, T <= 30") {
    const std::initializer_list<long> panel[] = {
        {1, -3, 1}, {1, -11, 1}, {-1, -5, 1}, {3, -7, 1}, {1, -4, 1},
    };
    for (const auto& coeffs : panel) {
        IntPolynomial chi = P(coeffs);
        for (int T = 0; T <= 30; ++T) {
            CAPTURE(chi.pretty());
            CAPTURE(T);
            CHECK(count_n2(chi, T).count == naive_reference(chi, T).count);
        }
    }
}

TEST_CASE("generic DFS matches the naive oracle on cubics, T <= 6") {
    for (const auto& coeffs :
         {std::initializer_list<long>{1, -2, -1, 1}, {-1, -4, 0, 1}}) {
        IntPolynomial chi = P(coeffs);
        for (int T = 0; T <= 6; ++T) {
            CAPTURE(chi.pretty());
            CAPTURE(T);
            CHECK(count_generic(chi, T).count == naive_reference(chi, T).count);
        }
    }
}

TEST_CASE("quartic smoke check against the naive oracle") {
    IntPolynomial chi = P({1, 0, 0, 0, 1});  // x^4 + 1
    // the naive box guard trips above T = 1 for 16 entries
    for (int T = 0; T <= 1; ++T)
        CHECK(count_generic(chi, T).count == naive_reference(chi, T).count);
    CHECK(count_generic(chi, 2.0).count >= count_generic(chi, 1.0).count);
}

TEST_CASE("regression pins for x^2-11x+1") {
    // trace 11 forces diagonal norm at least 61, so small radii are empty
    CHECK(naive_reference(P({1, -11, 1}), 6.0).count == 0);
    CHECK(count_n2(P({1, -11, 1}), 6.0).count == 0);
    CHECK(count_n2(P({1, -11, 1}), 9.0).count == naive_reference(P({1, -11, 1}), 9.0).count);
    CHECK(count_n2(P({1, -11, 1}), 20.0).count > 0);
}

TEST_CASE("counts are monotone in T") {
    IntPolynomial chi = P({1, -11, 1});
    std::uint64_t prev = 0;
    for (int T = 0; T <= 40; T += 4) {
        std::uint64_t c = count_n2(chi, T).count;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("parallel partitioned runs equal the serial count bit-exactly") {
    IntPolynomial chi = P({1, -3, 1});
    std::uint64_t serial = count_n2(chi, 2000.0, 1).count;
    for (int threads : {2, 3, 8}) CHECK(count_n2(chi, 2000.0, threads).count == serial);
    IntPolynomial cubic = P({1, -2, -1, 1});
    std::uint64_t s3 = count_generic(cubic, 5.0, 1).count;
    for (int threads : {2, 5}) CHECK(count_generic(cubic, 5.0, threads).count == s3);
}

TEST_CASE("transpose pairing: count = symmetric + 2 * asymmetric pairs") {
    // transpose preserves both the characteristic polynomial and the norm, so
    // non-symmetric solutions pair off
    IntPolynomial chi = P({1, -3, 1});
    std::int64_t B2 = norm_bound_sq(12.0);
    std::uint64_t sym = 0, total = 0;
    for (std::int64_t a = -12; a <= 12; ++a)
        for (std::int64_t b = -12; b <= 12; ++b)
            for (std::int64_t c = -12; c <= 12; ++c)
                for (std::int64_t d = -12; d <= 12; ++d) {
                    if (a + d != 3 || a * d - b * c != 1) continue;
                    if (a * a + b * b + c * c + d * d > B2) continue;
                    ++total;
                    if (b == c) ++sym;
                }
    CHECK(total == count_n2(chi, 12.0).count);
    CHECK((total - sym) % 2 == 0);
    CHECK(total % 2 == 0);  // symmetric solutions also pair under (b,c) -> (-b,-c)
}

TEST_CASE("guards and validation") {
    CHECK_THROWS_AS(count_n2(P({1, -2, 1}), 5.0), ValidationError);        // reducible
    CHECK_THROWS_AS(count_n2(P({1, -2, -1, 1}), 5.0), ValidationError);    // wrong degree
    CHECK_THROWS_AS(count_generic(P({1, -3, 1}), 5.0), ValidationError);   // degree 2
    CHECK_THROWS_AS(naive_reference(P({1, -2, -1, 1}), 50.0), ScaleGuardError);
    CHECK_THROWS_AS(run_census(P({1, 0, 0, 0, 0, 1}), 3.0, Enumerator::Auto), ValidationError);
}

TEST_CASE("norm bound squared handles boundaries") {
    CHECK(norm_bound_sq(5.0) == 25);
    CHECK(norm_bound_sq(0.0) == 0);
    CHECK(norm_bound_sq(2.5) == 6);       // 6.25 -> 6
    CHECK(norm_bound_sq(1000000.0) == 1000000000000LL);
}

TEST_CASE("checksums distinguish queries") {
    auto a = count_n2(P({1, -3, 1}), 5.0);
    auto b = count_n2(P({1, -3, 1}), 6.0);
    auto c = count_n2(P({1, -11, 1}), 5.0);
    CHECK(a.checksum != b.checksum);
    CHECK(a.checksum != c.checksum);
    CHECK(a.checksum == count_n2(P({1, -3, 1}), 5.0).checksum);
}
