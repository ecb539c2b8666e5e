// Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
// Criterion 8 (duality) is reported but does not affect the exit status.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "fuzz.hpp"
#include "oracle.hpp"
#include "swfh/corpus.hpp"
#include "swfh/dual.hpp"
#include "swfh/hinv.hpp"

using namespace swfh;

namespace {

struct Outcome {
    bool pass = true;
    std::size_t checks = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok && pass) {
            pass = false;
            first_failure = what;
        }
        if (!ok)
            pass = false;
    }
};

std::string pair_text(const HPair& h)
{
    return "(" + std::to_string(h.weak) + "," + std::to_string(h.strong) + ")";
}

const std::vector<Ring>& base_rings()
{
    static const std::vector<Ring> r = {Ring::integers(), Ring::rationals(), Ring::prime_field(2),
                                        Ring::prime_field(3), Ring::prime_field(5)};
    return r;
}

std::vector<Complex> fuzzed()
{
    static const std::vector<Complex> corpus = fuzz::random_complexes(500, 20240601);
    return corpus;
}

std::size_t divisible(const std::vector<BigInt>& xs, std::uint64_t p)
{
    std::size_t k = 0;
    for (const auto& x : xs)
        k += (x % static_cast<unsigned long>(p) == 0) ? 1 : 0;
    return k;
}

// The h_p formula for X_{a,b}: h + 1 exactly when p | b and p does not divide a.
int xab_expected(int h, long a, long b, std::uint64_t p)
{
    bool b_in = p == 0 ? b == 0 : b % static_cast<long>(p) == 0;
    bool a_in = p == 0 ? a == 0 : a % static_cast<long>(p) == 0;
    return (b_in && !a_in) ? h + 1 : h;
}

Outcome spheres()
{
    Outcome o;
    for (int ell = 0; ell <= 3; ++ell)
        for (int h = 0; h <= 4; ++h) {
            CohomologyEngine e(sphere(ell, h));
            for (const Ring& r : base_rings()) {
                HPair got = h_invariants(e, r);
                o.expect(got == HPair{h, h}, "sphere(" + std::to_string(ell) + "," + std::to_string(h) + ") over " +
                                                 r.name() + " gave " + pair_text(got));
            }
        }
    return o;
}

Outcome xab_table()
{
    Outcome o;
    const std::vector<long> primes = {2, 3, 5, 7, 11, 13};
    const std::vector<std::pair<int, int>> shapes = {{0, 1}, {1, 1}, {0, 2}};
    for (long a : primes)
        for (long b : primes) {
            if (a == b)
                continue;
            for (auto [ell, h] : shapes) {
                Complex c = xab(ell, h, a, b);
                HReport r = prime_profile(c);
                std::string tag = c.name();
                o.expect(r.z == HPair{h, h + 1}, tag + " Z row " + pair_text(r.z));
                o.expect(r.q == HPair{xab_expected(h, a, b, 0), xab_expected(h, a, b, 0)}, tag + " Q row");
                std::set<std::uint64_t> ps = {2, 3, 5, 7, 11, 13, 17, 19};
                for (const auto& [p, pair] : r.fields)
                    ps.insert(p);
                for (auto p : ps) {
                    int want = xab_expected(h, a, b, p);
                    int got = p <= 5 || r.fields.count(p) ? r.hp(p) : h_invariants(c, Ring::prime_field(p)).weak;
                    if (!r.fields.count(p))
                        o.expect(h_invariants(c, Ring::prime_field(p)) == HPair{want, want},
                                 tag + " direct f:" + std::to_string(p));
                    o.expect(got == want, tag + " f:" + std::to_string(p) + " gave " + std::to_string(got));
                }
                std::vector<std::uint64_t> excp = {static_cast<std::uint64_t>(b)};
                o.expect(r.exceptional_primes == excp, tag + " exceptional primes");
            }
        }
    return o;
}

Outcome strictness()
{
    Outcome o;
    Complex a = xab(0, 1, 2, 3);
    Complex b = xab(0, 1, 2, 5);
    int s = h_invariants(smash(a, b), Ring::integers()).strong;
    int sum = h_invariants(a, Ring::integers()).strong + h_invariants(b, Ring::integers()).strong;
    o.expect(s == 3, "smash strong = " + std::to_string(s));
    o.expect(sum == 4, "sum of strong = " + std::to_string(sum));
    return o;
}

Outcome stability()
{
    Outcome o;
    for (const auto& c : bundled_corpus()) {
        CohomologyEngine base(c);
        std::vector<Ring> rings = base_rings();
        for (auto p : candidate_primes(base))
            if (p > 5)
                rings.push_back(Ring::prime_field(p));
        std::map<Ring, HPair> before;
        for (const auto& r : rings)
            before[r] = h_invariants(base, r);
        for (int l = 0; l <= 1; ++l)
            for (int m = 1; m <= 2; ++m) {
                CohomologyEngine e(smash(c, sphere(l, m)));
                for (const auto& r : rings) {
                    HPair got = h_invariants(e, r);
                    HPair want{before[r].weak + m, before[r].strong + m};
                    o.expect(got == want, c.name() + " ^ sphere(" + std::to_string(l) + "," + std::to_string(m) +
                                              ") over " + r.name() + " gave " + pair_text(got));
                }
            }
    }
    return o;
}

struct CoefficientCounts {
    std::size_t weak_h0 = 0, strong_max = 0, finite = 0, jump = 0;
    std::string jump_example, strong_example;
};

std::string describe(const Complex& c, const HReport& r)
{
    std::ostringstream os;
    os << c.name() << ": jump_order " << r.jump_order << ", h0 " << r.h0() << ", Z " << pair_text(r.z);
    for (const auto& [p, h] : r.fields)
        os << ", h^" << p << " " << h.weak;
    return os.str();
}

Outcome coefficients(CoefficientCounts& counts)
{
    Outcome o;
    for (const auto& c : fuzzed()) {
        HReport r = prime_profile(c);
        bool finite = r.exceptional_primes.size() <= r.candidates.size();
        for (auto p : r.exceptional_primes)
            finite = finite && std::find(r.candidates.begin(), r.candidates.end(), p) != r.candidates.end();
        counts.weak_h0 += r.weak_equals_h0 ? 0 : 1;
        counts.strong_max += r.strong_equals_max_p ? 0 : 1;
        counts.finite += finite ? 0 : 1;
        counts.jump += r.jump_primes_consistent ? 0 : 1;
        if (!r.jump_primes_consistent && counts.jump_example.empty())
            counts.jump_example = describe(c, r);
        if (!r.strong_equals_max_p && counts.strong_example.empty())
            counts.strong_example = describe(c, r);
        o.expect(r.weak_equals_h0, c.name() + " weak != h0");
        o.expect(r.strong_equals_max_p, c.name() + " strong != max_p");
        o.expect(finite, c.name() + " exceptional primes outside the candidate set");
        o.expect(r.jump_primes_consistent, c.name() + " attaining primes vs jump order");
    }
    return o;
}

Outcome uct()
{
    Outcome o;
    for (const auto& c : fuzzed()) {
        CohomologyEngine e(c);
        std::set<std::uint64_t> primes = {2, 3, 5, 7};
        for (auto p : candidate_primes(e))
            primes.insert(p);
        for (int n = c.min_degree() - 1; n <= e.stabilization_bound(); ++n) {
            auto z = e.cohomology_at(n, Ring::integers());
            auto z1 = e.cohomology_at(n + 1, Ring::integers());
            o.expect(e.cohomology_at(n, Ring::rationals()).rank == z.rank, c.name() + " Q rank");
            for (auto p : primes) {
                std::size_t want = z.rank + divisible(z.torsion, p) + divisible(z1.torsion, p);
                o.expect(e.cohomology_at(n, Ring::prime_field(p)).rank == want,
                         c.name() + " degree " + std::to_string(n) + " f:" + std::to_string(p));
            }
        }
    }
    return o;
}

Outcome localization()
{
    Outcome o;
    for (const auto& c : bundled_corpus()) {
        CohomologyEngine e(c);
        std::size_t even = *c.ell() % 2 == 0 ? 1 : 0;
        for (const Ring& f : {Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3), Ring::prime_field(5)}) {
            StableTate st = e.stable_tate(f);
            o.expect(st.even == even && st.odd == 1 - even && st.u_isomorphism, c.name() + " over " + f.name());
        }
    }
    return o;
}

Outcome duality()
{
    Outcome o;
    for (const auto& c : bundled_corpus()) {
        DualityReport r = duality_check(c);
        o.expect(r.passed(), c.name());
    }
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    std::vector<Complex> examples;
    for (int ell = 0; ell <= 3; ++ell)
        for (int h = 0; h <= 4; ++h)
            examples.push_back(sphere(ell, h));
    const std::vector<long> primes = {2, 3, 5, 7, 11, 13};
    for (long a : primes)
        for (long b : primes)
            if (a != b)
                for (auto [ell, h] : std::vector<std::pair<int, int>>{{0, 1}, {1, 1}, {0, 2}})
                    examples.push_back(xab(ell, h, a, b));
    examples.push_back(xab(0, 1, 2, 3));
    examples.push_back(xab(0, 1, 2, 5));

    for (const auto& c : examples) {
        if (c.size() > 10 || !oracle::supported(c))
            continue;
        auto m = oracle::from_complex(c);
        CohomologyEngine e(c);
        for (int n = c.min_degree() - 1; n <= c.d_max() + 3; ++n) {
            o.expect(e.cohomology_at(n, Ring::rationals()).rank == oracle::dim_q(m, n),
                     c.name() + " dim_Q H^" + std::to_string(n));
            for (long p : {2L, 3L, 5L})
                o.expect(e.cohomology_at(n, Ring::prime_field(static_cast<std::uint64_t>(p))).rank ==
                             oracle::dim_fp(m, n, p),
                         c.name() + " dim_F" + std::to_string(p) + " H^" + std::to_string(n));
        }
        for (int k = 0; k <= e.scan_limit(); ++k) {
            o.expect(e.restriction_image(k, Ring::integers()).index == oracle::restriction_index(m, k),
                     c.name() + " index at k=" + std::to_string(k));
            o.expect(e.restriction_image(k, Ring::rationals()).nonzero() == (oracle::restriction_index(m, k) != 0),
                     c.name() + " Q image at k=" + std::to_string(k));
            for (long p : {2L, 3L, 5L, 7L, 11L, 13L})
                o.expect(e.restriction_image(k, Ring::prime_field(static_cast<std::uint64_t>(p))).nonzero() ==
                             oracle::restriction_nonzero_mod(m, k, p),
                         c.name() + " F" + std::to_string(p) + " image at k=" + std::to_string(k));
        }
    }
    return o;
}

Outcome froyshov()
{
    Outcome o;
    for (long b2 = 0; b2 <= 12; ++b2) {
        FroyshovResult r = froyshov_check(Rational(0), Rational(-b2), BigInt(b2));
        o.expect(r.satisfied && r.slack == 0, "diagonal b2=" + std::to_string(b2));
    }
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-60, 60), den(1, 16), b(0, 24);
    for (int i = 0; i < 100; ++i) {
        Rational h(num(rng), den(rng)), c(num(rng), den(rng));
        h.canonicalize();
        c.canonicalize();
        long b2 = b(rng);
        Rational direct = h - (c + Rational(b2)) / 8;
        FroyshovResult r = froyshov_check(h, c, BigInt(b2));
        o.expect(r.slack == direct && r.satisfied == (direct >= 0), "random input " + std::to_string(i));
    }
    return o;
}

}  // namespace

int main()
{
    set_transform_checks(true);
    CoefficientCounts counts;
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
        bool primary;
    };
    std::vector<Criterion> criteria = {
        {1, "sphere identities", spheres, true},
        {2, "X_{a,b} table", xab_table, true},
        {3, "strict subadditivity", strictness, true},
        {4, "stability", stability, true},
        {5, "coefficient structure (500 fuzzed)", [&] { return coefficients(counts); }, true},
        {6, "UCT cross-check", uct, true},
        {7, "localization", localization, true},
        {8, "duality (experimental)", duality, false},
        {9, "oracle equivalence", oracle_equivalence, true},
        {10, "Froyshov arithmetic", froyshov, true},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.title << "  [" << o.checks
                  << " checks, " << std::fixed << std::setprecision(2) << secs << "s"
                  << (c.primary ? "" : ", informational") << "]";
        if (!o.pass)
            std::cout << "  first failure: " << o.first_failure;
        std::cout << '\n';
        if (c.id == 5 && !o.pass)
            std::cout << "      weak!=h0 " << counts.weak_h0 << ", strong!=max_p " << counts.strong_max
                      << ", non-candidate exceptional " << counts.finite << ", jump-order mismatch " << counts.jump
                      << "\n      jump-order example: " << counts.jump_example
                      << "\n      strong!=max_p example: " << counts.strong_example << '\n';
        if (c.primary && !o.pass)
            ++failed;
    }
    std::cout << (failed == 0 ? "all primary criteria passed" : std::to_string(failed) + " primary criteria failed")
              << '\n';
    return failed == 0 ? 0 : 1;
}
