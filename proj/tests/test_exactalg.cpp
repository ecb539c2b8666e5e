#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "swfh/error.hpp"
#include "swfh/exactalg.hpp"

using namespace swfh;

namespace {

std::vector<BigInt> ints(std::initializer_list<long> xs)
{
    std::vector<BigInt> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long bound)
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    std::uniform_int_distribution<int> sparse(0, 2);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (sparse(rng) != 0)
                m.at(i, j) = dist(rng);
    return m;
}

std::vector<std::vector<mpz_class>> to_rows(const IntMatrix& m)
{
    std::vector<std::vector<mpz_class>> out;
    for (std::size_t i = 0; i < m.rows(); ++i)
        out.push_back(m.row(i));
    return out;
}

BigInt det(IntMatrix m)
{
    // Integer determinant by cofactor expansion; only used on small squares.
    std::size_t n = m.rows();
    if (n == 0)
        return 1;
    if (n == 1)
        return m.at(0, 0);
    BigInt total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0)
            continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0, k = 0; c < n; ++c)
                if (c != j)
                    minor.at(r - 1, k++) = m.at(r, c);
        BigInt term = m.at(0, j) * det(minor);
        total += (j % 2 == 0) ? term : BigInt(-term);
    }
    return total;
}

}  // namespace

TEST_CASE("smith normal form examples")
{
    CHECK(smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}})).invariant_factors == ints({1, 6}));
    CHECK(smith_normal_form(IntMatrix(2, 3)).invariant_factors.empty());
    CHECK(smith_normal_form(IntMatrix::from_rows({{2}})).invariant_factors == ints({2}));
    CHECK(smith_normal_form(IntMatrix(0, 0)).invariant_factors.empty());
    CHECK(smith_normal_form(IntMatrix(0, 4)).invariant_factors.empty());
}

TEST_CASE("rank examples")
{
    auto two = IntMatrix::from_rows({{2}});
    CHECK(rank(two, Ring::rationals()) == 1);
    CHECK(rank(two, Ring::prime_field(2)) == 0);
    CHECK(rank(IntMatrix::from_rows({{2, 0}, {0, 3}}), Ring::prime_field(3)) == 1);
    CHECK(rank(IntMatrix(3, 0), Ring::integers()) == 0);
}

TEST_CASE("invalid rings")
{
    CHECK_THROWS_AS(Ring::prime_field(4), Error);
    CHECK_THROWS_AS(Ring::prime_field(1), Error);
    CHECK_THROWS_AS(Ring::parse("f:9"), Error);
    CHECK_THROWS_AS(Ring::parse("r"), Error);
    try {
        Ring::prime_field(15);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidRing);
    }
    CHECK(Ring::parse("f:7") == Ring::prime_field(7));
    CHECK(Ring::parse("z") == Ring::integers());
    CHECK(Ring::parse("q") == Ring::rationals());
}

TEST_CASE("cokernel examples")
{
    auto c = cokernel_invariants(IntMatrix::from_rows({{3}}));
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == ints({3}));

    c = cokernel_invariants(IntMatrix(1, 0));
    CHECK(c.free_rank == 1);
    CHECK(c.torsion.empty());

    c = cokernel_invariants(IntMatrix::from_rows({{1, 0}, {0, 4}}));
    CHECK(c.free_rank == 0);
    CHECK(c.torsion == ints({4}));
}

TEST_CASE("primes")
{
    CHECK(is_prime(BigInt(2)));
    CHECK(is_prime(BigInt(9973)));
    CHECK_FALSE(is_prime(BigInt(1)));
    CHECK_FALSE(is_prime(BigInt(91)));
    CHECK(prime_divisors(BigInt(-360)) == ints({2, 3, 5}));
    CHECK(prime_divisors(BigInt(0)).empty());
    CHECK(prime_divisors(BigInt(1)).empty());
    // 1000003 * 1000033: beyond trial division.
    CHECK(prime_divisors(BigInt("1000036000099")) == ints({1000003, 1000033}));
}

TEST_CASE("property: snf transforms, divisibility and ranks on random matrices")
{
    std::mt19937_64 rng(0x5eed);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        std::size_t c = std::uniform_int_distribution<std::size_t>(0, 6)(rng);
        IntMatrix m = random_matrix(rng, r, c, trial % 3 == 0 ? 60 : 6);
        SmithForm s = smith_normal_form(m);

        IntMatrix d = IntMatrix::diagonal(r, c, s.invariant_factors);
        CHECK(s.left * m * s.right == d);
        CHECK(s.left * s.left_inverse == IntMatrix::identity(r));
        CHECK(s.right * s.right_inverse == IntMatrix::identity(c));
        if (r <= 5) {
            BigInt dl = det(s.left);
            CHECK(abs(dl) == 1);
        }
        for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
            CHECK(s.invariant_factors[i] > 0);
            if (i + 1 < s.invariant_factors.size())
                CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
        }

        // Ranks agree with the invariant factors and with the oracle.
        CHECK(rank(m, Ring::rationals()) == s.invariant_factors.size());
        CHECK(rank_over_q(m) == oracle::rank_q(to_rows(m)));
        for (std::uint64_t p : {2, 3, 5, 7, 11}) {
            std::size_t expect = 0;
            for (const auto& f : s.invariant_factors)
                if (f % static_cast<unsigned long>(p) != 0)
                    ++expect;
            CHECK(rank(m, Ring::prime_field(p)) == expect);
        }

        // Cokernel: Z^r modulo the column span.
        auto ck = cokernel_invariants(m);
        std::size_t units = 0;
        for (const auto& f : s.invariant_factors)
            units += f == 1 ? 1 : 0;
        CHECK(ck.free_rank == r - s.invariant_factors.size());
        CHECK(ck.torsion.size() == s.invariant_factors.size() - units);
    }
}

TEST_CASE("property: left kernels")
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
        std::size_t c = std::uniform_int_distribution<std::size_t>(0, 5)(rng);
        IntMatrix m = random_matrix(rng, r, c, 5);
        IntMatrix k = left_kernel(m);
        CHECK(k.rows() == r - rank_over_q(m));
        CHECK((k * m).is_zero());
        // A Z-basis of a saturated sublattice: its own cokernel is free.
        if (k.rows() > 0)
            CHECK(cokernel_invariants(k.transposed()).torsion.empty());

        for (std::uint64_t p : {2, 3, 7}) {
            auto kp = left_kernel_mod_p(m, p);
            CHECK(kp.size() == r - rank_mod_p(m, p));
            for (const auto& v : kp) {
                std::vector<BigInt> w(v.begin(), v.end());
                for (const auto& x : row_times(w, m))
                    CHECK(reduce_mod(x, p) == 0);
            }
        }
    }
}

TEST_CASE("property: cohomology presentations of random two-step complexes")
{
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 400 && checked < 150; ++trial) {
        std::size_t a = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        std::size_t b = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
        std::size_t c = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
        IntMatrix out = random_matrix(rng, b, c, 4);
        // in = x * K with K a kernel basis so that in * out = 0.
        IntMatrix k = left_kernel(out);
        IntMatrix x = random_matrix(rng, a, k.rows(), 3);
        IntMatrix in = x * k;
        if (k.rows() == 0)
            in = IntMatrix(a, b);
        ++checked;

        auto pr = present_cohomology(in, out);
        CHECK((pr.cocycle_basis * out).is_zero());
        std::size_t expect_rank = b - rank_over_q(out) - rank_over_q(in);
        CHECK(pr.free_rank() == expect_rank);
        for (const auto& t : pr.torsion())
            CHECK(t >= 2);
        // from_classes picks cocycles whose classes are the unit vectors.
        IntMatrix round = pr.from_classes * pr.to_classes;
        for (std::size_t i = 0; i < round.rows(); ++i)
            for (std::size_t j = 0; j < round.cols(); ++j) {
                BigInt want = i == j ? 1 : 0;
                if (j < pr.relations.size())
                    CHECK((round.at(i, j) - want) % pr.relations[j] == 0);
                else
                    CHECK(round.at(i, j) == want);
            }
        // Coboundaries map to zero classes.
        IntMatrix image = in * pr.to_classes;
        for (std::size_t i = 0; i < image.rows(); ++i)
            for (std::size_t j = 0; j < image.cols(); ++j) {
                if (j < pr.relations.size())
                    CHECK(image.at(i, j) % pr.relations[j] == 0);
                else
                    CHECK(image.at(i, j) == 0);
            }
    }
    CHECK(checked > 100);
}
