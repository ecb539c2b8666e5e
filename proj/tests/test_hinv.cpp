#include <doctest.h>

#include <algorithm>
#include <random>

#include "fuzz.hpp"
#include "oracle.hpp"
#include "swfh/corpus.hpp"
#include "swfh/hinv.hpp"

using namespace swfh;

namespace {

Rational q(long a, long b = 1)
{
    Rational r(a, b);
    r.canonicalize();
    return r;
}

bool contains(const std::vector<std::uint64_t>& xs, std::uint64_t p)
{
    return std::find(xs.begin(), xs.end(), p) != xs.end();
}

}  // namespace

TEST_CASE("h-invariant examples")
{
    for (int ell = 0; ell <= 2; ++ell)
        for (int h = 0; h <= 3; ++h)
            for (const Ring& r : {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(7)})
                CHECK(h_invariants(sphere(ell, h), r) == HPair{h, h});

    Complex x = xab(0, 1, 2, 3);
    CHECK(h_invariants(x, Ring::integers()) == HPair{1, 2});
    CHECK(h_invariants(x, Ring::prime_field(3)) == HPair{2, 2});
    CHECK(h_invariants(x, Ring::prime_field(2)) == HPair{1, 1});
    CHECK(h_invariants(x, Ring::rationals()) == HPair{1, 1});
}

TEST_CASE("scan limits and the degree override")
{
    CohomologyEngine e(xab(0, 1, 2, 3));
    CHECK(scan_limit(e) == 4);  // ceil((4 + 3 - 0) / 2)
    HOptions wide;
    wide.max_degree = 12;
    CHECK(scan_limit(e, wide) == 6);
    CHECK(h_invariants(e, Ring::integers(), wide) == HPair{1, 2});
    HOptions narrow;
    narrow.max_degree = 4;
    try {
        h_invariants(e, Ring::integers(), narrow);
        FAIL("expected a scan-cap error");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::ScanCap);
    }
}

TEST_CASE("prime profile examples")
{
    HReport r = prime_profile(xab(0, 1, 2, 3));
    CHECK(r.z == HPair{1, 2});
    CHECK(r.exceptional_primes == std::vector<std::uint64_t>{3});
    CHECK(r.hp(3) == 2);
    CHECK(r.hp(2) == 1);
    CHECK(r.hp(5) == 1);
    CHECK(r.hp(1000003) == 1);
    CHECK(r.h0() == 1);
    CHECK(r.jump_order == 3);
    CHECK(r.restriction_indices.size() == 5);
    CHECK(r.restriction_indices[1] == 3);
    CHECK(r.consistent());

    r = prime_profile(sphere(1, 2));
    CHECK(r.exceptional_primes.empty());
    CHECK(r.consistent());

    r = prime_profile(xab(0, 1, 1, 0));
    CHECK(r.jump_order == 0);
    CHECK(r.h0() == 2);
    CHECK(r.z == HPair{2, 2});
    for (const auto& [p, h] : r.fields)
        CHECK(h == HPair{2, 2});
    CHECK(r.exceptional_primes.empty());

    r = prime_profile(xab(0, 2, 5, 7));
    CHECK(r.exceptional_primes == std::vector<std::uint64_t>{7});
    CHECK(r.z == HPair{2, 3});
}

TEST_CASE("property: profile identities on fuzzed complexes")
{
    auto sample = fuzz::random_complexes(80, 3);
    for (const auto& c : bundled_corpus())
        sample.push_back(c);
    for (const auto& c : sample) {
        CohomologyEngine e(c);
        HReport r = prime_profile(e);
        CHECK(r.weak_equals_h0);
        CHECK(r.max_p() <= r.z.strong);
        CHECK(r.weak_le_strong);
        CHECK(r.field_flavors_agree);
        CHECK(r.z.weak == r.h0());
        CHECK(r.q.weak == r.q.strong);
        // A class of finite order k is divisible by every prime not dividing
        // k, so only divisors of a nonzero jump order can attain the maximum.
        if (sgn(r.jump_order) != 0)
            for (const auto& [p, h] : r.fields)
                if (h.weak == r.z.strong)
                    CHECK(r.jump_order % static_cast<unsigned long>(p) == 0);
        if (oracle::supported(c)) {
            auto m = oracle::from_complex(c);
            CHECK(oracle::h_pair(m, -1) == std::pair<int, int>{r.z.weak, r.z.strong});
            CHECK(oracle::h_pair(m, 0) == std::pair<int, int>{r.q.weak, r.q.strong});
            for (long p : {2L, 3L, 5L})
                CHECK(oracle::h_pair(m, p).first == r.hp(static_cast<std::uint64_t>(p)));
        }
    }
}

TEST_CASE("a zero jump order does not force every prime to attain")
{
    // b = 0, a = 3: h_p = h + 1 except at p = 3.
    HReport r = prime_profile(xab(0, 1, 3, 0));
    CHECK(r.h0() == 2);
    CHECK(r.z == HPair{2, 2});
    CHECK(r.hp(3) == 1);
    CHECK(r.hp(2) == 2);
    CHECK(r.exceptional_primes == std::vector<std::uint64_t>{3});
    CHECK(r.jump_order == 0);
    CHECK(r.strong_equals_max_p);
    CHECK_FALSE(r.jump_primes_consistent);
    auto m = oracle::from_complex(xab(0, 1, 3, 0));
    CHECK(oracle::h_pair(m, 3) == std::pair<int, int>{1, 1});
    CHECK(oracle::h_pair(m, 0) == std::pair<int, int>{2, 2});
}

TEST_CASE("the Z-strong invariant can exceed every h^p")
{
    // a = -2, b = 4: the relative group in degree 5 is Z/4 and the
    // obstruction is twice its generator, so no prime field sees the jump.
    Complex c = xab(2, 1, -2, 4);
    HReport r = prime_profile(c);
    CHECK(r.z == HPair{1, 2});
    CHECK(r.restriction_indices[1] == 2);
    for (const auto& [p, h] : r.fields)
        CHECK(h.weak == 1);
    CHECK(r.max_p() == 1);
    CHECK_FALSE(r.strong_equals_max_p);
    CohomologyEngine e(c);
    CHECK(e.cohomology_at(5, Ring::integers()).to_string() == "Z/2");
    auto m = oracle::from_complex(c);
    CHECK(oracle::h_pair(m, -1) == std::pair<int, int>{1, 2});
    for (long p : {2L, 3L, 5L, 7L})
        CHECK(oracle::h_pair(m, p) == std::pair<int, int>{1, 1});
}

TEST_CASE("property: non-candidate primes behave like characteristic zero")
{
    std::mt19937_64 rng(99);
    std::vector<std::uint64_t> pool = {7, 11, 13, 17, 19, 23, 29, 31, 37, 101, 1009, 65537};
    for (const auto& c : fuzz::random_complexes(40, 17)) {
        CohomologyEngine e(c);
        HReport r = prime_profile(e);
        std::uint64_t p = pool[rng() % pool.size()];
        if (contains(r.candidates, p))
            continue;
        Ring f = Ring::prime_field(p);
        CHECK(h_invariants(e, f) == HPair{r.h0(), r.h0()});
        for (int n = c.min_degree() - 1; n <= c.d_max() + 3; ++n)
            CHECK(rank(e.cochain_matrix(n), f) == rank(e.cochain_matrix(n), Ring::rationals()));
    }
}

TEST_CASE("verify suites")
{
    for (const auto& s : property_suites())
        CHECK_FALSE(s.empty());

    std::vector<Complex> one = {xab(0, 1, 2, 3)};
    auto rep = verify_properties(one, {}, {"stability"});
    CHECK(rep.passed());
    CHECK_FALSE(rep.results.empty());

    // Field additivity on a square.
    Complex sq = smash(xab(0, 1, 2, 3), xab(0, 1, 2, 3));
    CHECK(h_invariants(sq, Ring::prime_field(3)).weak == 4);

    std::vector<Complex> pair = {xab(0, 1, 2, 3), xab(0, 1, 2, 5)};
    rep = verify_properties(pair, {}, {"additivity", "subadditivity", "strictness"});
    CHECK(rep.passed());

    rep = verify_properties(bundled_corpus(), bundled_maps(), {"monotonicity", "coefficients", "fields", "uct", "tate"});
    CHECK(rep.passed());
    for (const auto& res : rep.results)
        CHECK_MESSAGE(res.pass, res.suite << " " << res.subject << " " << res.detail);
}

TEST_CASE("verify rejects broken maps")
{
    auto s = std::make_shared<const Complex>(sphere(0, 1));
    CochainMap bad(s, s);
    bad.set("t", "t", 1);
    std::vector<NamedMap> maps = {{"bad", bad}};
    try {
        verify_properties({}, maps, {"monotonicity"});
        FAIL("expected a validation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Validation);
    }
}

TEST_CASE("manifold report examples")
{
    auto m = manifold_report(sphere(0, 0), q(0));
    CHECK(m.z_weak == 0);
    CHECK(m.z_strong == 0);
    CHECK(m.q_weak == 0);
    CHECK(m.d == 0);
    CHECK(m.fr == 0);

    m = manifold_report(sphere(0, 2), q(3, 4));
    CHECK(m.z_weak == q(5, 4));
    CHECK(m.z_strong == q(5, 4));
    CHECK(m.other_primes == q(5, 4));
    for (const auto& [p, v] : m.fields)
        CHECK(v == q(5, 4));
    CHECK(m.d == q(5, 2));

    m = manifold_report(xab(0, 1, 2, 3), q(0));
    CHECK(m.d == 2);
    CHECK(m.fr == 2);
    CHECK(m.z_strong == 2);
    CHECK(m.fields.at(3) == 2);
}

TEST_CASE("froyshov examples")
{
    for (long b2 : {0L, 1L, 4L, 9L}) {
        auto r = froyshov_check(q(0), q(-b2), BigInt(b2));
        CHECK(r.satisfied);
        CHECK(r.slack == 0);
    }
    auto r = froyshov_check(q(0), q(0), BigInt(9));
    CHECK_FALSE(r.satisfied);
    CHECK(r.slack == q(-9, 8));

    r = froyshov_check(q(5, 4), q(2), BigInt(8));
    CHECK(r.satisfied);
    CHECK(r.slack == 0);
}

TEST_CASE("property: froyshov agrees with direct evaluation")
{
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<long> num(-40, 40), den(1, 12), b(0, 20);
    for (int i = 0; i < 200; ++i) {
        Rational h = q(num(rng), den(rng));
        Rational c = q(num(rng), den(rng));
        long b2 = b(rng);
        Rational slack = h - (c + b2) / 8;
        auto r = froyshov_check(h, c, BigInt(b2));
        CHECK(r.slack == slack);
        CHECK(r.satisfied == (slack >= 0));
    }
}

TEST_CASE("rational text")
{
    CHECK(format_rational(q(3, 4)) == "3/4");
    CHECK(format_rational(q(-2)) == "-2");
    CHECK(parse_rational("6/8") == q(3, 4));
    CHECK(parse_rational("-5") == q(-5));
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("0.5"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}
