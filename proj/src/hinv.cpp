#include "swfh/hinv.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "swfh/dual.hpp"
#include "swfh/error.hpp"

namespace swfh {

int scan_limit(const CohomologyEngine& e, const HOptions& opt)
{
    if (!opt.max_degree)
        return e.scan_limit();
    int bound = e.stabilization_bound();
    if (*opt.max_degree <= bound)
        throw Error(ErrorKind::ScanCap, "--max-degree " + std::to_string(*opt.max_degree) +
                                            " does not exceed the stabilization bound " + std::to_string(bound));
    return std::max(0, (*opt.max_degree - e.ell()) / 2);
}

HPair h_invariants(const CohomologyEngine& e, const Ring& ring, const HOptions& opt)
{
    int limit = scan_limit(e, opt);
    std::optional<int> weak, strong;
    for (int k = 0; k <= limit && !strong; ++k) {
        RestrictionImage img = e.restriction_image(k, ring);
        if (!weak && img.nonzero())
            weak = k;
        if (img.surjective())
            strong = k;
    }
    if (!weak || !strong)
        throw Error(ErrorKind::Internal, "restriction never became surjective within the scan limit");
    return {*weak, *strong};
}

HPair h_invariants(const Complex& c, const Ring& ring) { return h_invariants(CohomologyEngine(c), ring); }

std::vector<std::uint64_t> candidate_primes(const CohomologyEngine& e, const HOptions& opt)
{
    const Complex& c = e.complex();
    std::set<BigInt> primes;
    int top = std::max(e.stabilization_bound() + 3, opt.max_degree.value_or(0) + 1);
    for (int n = c.min_degree() - 1; n <= top; ++n)
        for (const auto& d : smith_normal_form(e.cochain_matrix(n), {false, false, false}).invariant_factors)
            for (const auto& p : prime_divisors(d))
                primes.insert(p);
    int limit = scan_limit(e, opt);
    for (int k = 0; k <= limit; ++k)
        for (const auto& p : prime_divisors(e.restriction_image(k, Ring::integers()).index))
            primes.insert(p);
    std::vector<std::uint64_t> out;
    for (const auto& p : primes) {
        if (!p.fits_ulong_p() || p >= BigInt(1) << 63)
            throw Error(ErrorKind::Internal, "candidate prime " + p.get_str() + " exceeds 2^63");
        out.push_back(p.get_ui());
    }
    return out;
}

int HReport::hp(std::uint64_t p) const
{
    auto it = fields.find(p);
    return it == fields.end() ? h0() : it->second.weak;
}

int HReport::max_p() const
{
    int m = h0();
    for (const auto& [p, pair] : fields)
        m = std::max(m, pair.weak);
    return m;
}

HReport prime_profile(const CohomologyEngine& e, const HOptions& opt)
{
    HReport r;
    r.z = h_invariants(e, Ring::integers(), opt);
    r.q = h_invariants(e, Ring::rationals(), opt);
    r.candidates = candidate_primes(e, opt);

    std::set<std::uint64_t> primes(r.candidates.begin(), r.candidates.end());
    primes.insert({2, 3, 5});
    std::vector<std::pair<std::uint64_t, std::future<HPair>>> jobs;
    for (auto p : primes)
        jobs.emplace_back(p, std::async(std::launch::async, [&e, &opt, p] {
                              return h_invariants(e, Ring::prime_field(p), opt);
                          }));
    for (auto& [p, job] : jobs)
        r.fields[p] = job.get();

    int limit = scan_limit(e, opt);
    for (int k = 0; k <= limit; ++k)
        r.restriction_indices.push_back(e.restriction_image(k, Ring::integers()).index);
    r.jump_order = r.z.strong > 0 ? r.restriction_indices[static_cast<std::size_t>(r.z.strong - 1)] : BigInt(0);

    for (auto p : r.candidates)
        if (r.fields.at(p).weak != r.h0())
            r.exceptional_primes.push_back(p);

    r.weak_equals_h0 = r.z.weak == r.h0();
    r.strong_equals_max_p = r.z.strong == r.max_p();
    r.weak_le_strong = r.z.weak <= r.z.strong && r.q.weak <= r.q.strong;
    r.field_flavors_agree = r.q.weak == r.q.strong;
    for (const auto& [p, pair] : r.fields)
        if (pair.weak > pair.strong || pair.weak != pair.strong)
            r.field_flavors_agree = false;

    // Primes attaining the Z-strong value are exactly the prime divisors of the
    // jump order, or every prime when it is zero.
    if (sgn(r.jump_order) == 0) {
        r.jump_primes_consistent = r.h0() == r.z.strong;
        for (const auto& [p, pair] : r.fields)
            if (pair.weak != r.z.strong)
                r.jump_primes_consistent = false;
    } else {
        std::vector<std::uint64_t> attaining;
        for (const auto& [p, pair] : r.fields)
            if (pair.weak == r.z.strong)
                attaining.push_back(p);
        std::vector<std::uint64_t> divisors;
        for (const auto& p : prime_divisors(r.jump_order))
            divisors.push_back(p.get_ui());
        // Divisors of the jump order are candidates, so both lists cover every
        // prime that could attain the maximum.
        r.jump_primes_consistent = r.h0() < r.z.strong && attaining == divisors;
    }
    return r;
}

HReport prime_profile(const Complex& c) { return prime_profile(CohomologyEngine(c)); }

// ---------------------------------------------------------------------------
// Property suites

bool PropertyReport::passed() const
{
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.pass; });
}

const std::vector<std::string>& property_suites()
{
    static const std::vector<std::string> names{"coefficients", "fields",     "stability",    "additivity",
                                                "subadditivity", "strictness", "monotonicity", "uct",
                                                "tate"};
    return names;
}

namespace {

std::string pair_text(const HPair& p) { return "(" + std::to_string(p.weak) + "," + std::to_string(p.strong) + ")"; }

std::set<std::uint64_t> union_primes(const HReport& a, const HReport& b)
{
    std::set<std::uint64_t> s;
    for (const auto& [p, v] : a.fields)
        s.insert(p);
    for (const auto& [p, v] : b.fields)
        s.insert(p);
    return s;
}

struct Subject {
    const Complex* c;
    std::shared_ptr<CohomologyEngine> engine;
    HReport report;
};

void check_stability(const Subject& s, std::vector<PropertyResult>& out)
{
    for (int m : {1, 2})
        for (int l : {0, 1}) {
            Complex sm = smash(*s.c, sphere(l, m));
            HReport r = prime_profile(sm);
            std::ostringstream why;
            bool ok = r.z.weak == s.report.z.weak + m && r.z.strong == s.report.z.strong + m &&
                      r.q.weak == s.report.q.weak + m && r.q.strong == s.report.q.strong + m;
            if (!ok)
                why << "Z " << pair_text(s.report.z) << "->" << pair_text(r.z) << " Q " << pair_text(s.report.q)
                    << "->" << pair_text(r.q) << " ";
            for (auto p : union_primes(s.report, r)) {
                if (r.hp(p) != s.report.hp(p) + m) {
                    ok = false;
                    why << "F_" << p << " " << s.report.hp(p) << "->" << r.hp(p) << " ";
                }
            }
            out.push_back({"stability", s.c->name() + " ^ sphere(" + std::to_string(l) + "," + std::to_string(m) + ")",
                           ok, ok ? "all invariants shift by " + std::to_string(m) : why.str()});
        }
}

}  // namespace

PropertyReport verify_properties(const std::vector<Complex>& complexes, const std::vector<NamedMap>& maps,
                                 const std::set<std::string>& suites)
{
    for (const auto& s : suites)
        if (std::find(property_suites().begin(), property_suites().end(), s) == property_suites().end())
            throw Error(ErrorKind::Syntax, "unknown property suite '" + s + "'");

    std::vector<Subject> subjects;
    for (const auto& c : complexes) {
        auto e = std::make_shared<CohomologyEngine>(c);
        subjects.push_back({&c, e, prime_profile(*e)});
    }
    auto wants = [&](const char* name) { return suites.count(name) > 0; };

    PropertyReport rep;
    auto& out = rep.results;
    for (const auto& s : subjects) {
        const std::string& name = s.c->name();
        if (wants("coefficients")) {
            out.push_back({"coefficients", name, s.report.weak_equals_h0,
                           "h_w(Z)=" + std::to_string(s.report.z.weak) + " h^0=" + std::to_string(s.report.h0())});
            out.push_back({"coefficients", name, s.report.strong_equals_max_p,
                           "h_s(Z)=" + std::to_string(s.report.z.strong) + " max_p=" + std::to_string(s.report.max_p())});
            out.push_back({"coefficients", name, s.report.jump_primes_consistent,
                           "jump order " + s.report.jump_order.get_str()});
        }
        if (wants("fields"))
            out.push_back({"fields", name, s.report.field_flavors_agree && s.report.weak_le_strong,
                           "weak = strong over every field, weak <= strong over Z"});
        if (wants("stability"))
            check_stability(s, out);
        if (wants("uct")) {
            const CohomologyEngine& e = *s.engine;
            bool ok = true;
            std::string why;
            for (int n = s.c->min_degree(); n <= e.stabilization_bound() + 1; ++n) {
                CohomologyGroup z = e.cohomology_at(n, Ring::integers());
                CohomologyGroup z1 = e.cohomology_at(n + 1, Ring::integers());
                if (e.cohomology_at(n, Ring::rationals()).rank != z.rank) {
                    ok = false;
                    why += " Q@" + std::to_string(n);
                }
                for (auto p : union_primes(s.report, s.report)) {
                    BigInt pz(std::to_string(p));
                    std::size_t expect = z.rank;
                    for (const auto& t : z.torsion)
                        expect += mpz_divisible_p(t.get_mpz_t(), pz.get_mpz_t()) ? 1 : 0;
                    for (const auto& t : z1.torsion)
                        expect += mpz_divisible_p(t.get_mpz_t(), pz.get_mpz_t()) ? 1 : 0;
                    if (e.cohomology_at(n, Ring::prime_field(p)).rank != expect) {
                        ok = false;
                        why += " F_" + std::to_string(p) + "@" + std::to_string(n);
                    }
                }
            }
            out.push_back({"uct", name, ok, ok ? "dimension identity holds" : "mismatch at" + why});
        }
        if (wants("tate")) {
            bool ok = true;
            int ell = *s.c->ell();
            std::vector<Ring> rings{Ring::rationals()};
            for (const auto& [p, v] : s.report.fields)
                rings.push_back(Ring::prime_field(p));
            for (const auto& r : rings) {
                StableTate st = s.engine->stable_tate(r);
                std::size_t want_even = ell % 2 == 0 ? 1 : 0;
                if (!st.u_isomorphism || st.even != want_even || st.odd != 1 - want_even)
                    ok = false;
            }
            out.push_back({"tate", name, ok, "stable rank one in the parity of ell"});
        }
    }

    bool pairs = wants("additivity") || wants("subadditivity") || wants("strictness");
    if (pairs) {
        bool strict_seen = false;
        std::string strict_witness;
        for (std::size_t i = 0; i < subjects.size(); ++i)
            for (std::size_t j = i; j < subjects.size(); ++j) {
                const Subject& a = subjects[i];
                const Subject& b = subjects[j];
                if (a.c->size() * b.c->size() > 64)
                    continue;
                HReport r = prime_profile(smash(*a.c, *b.c));
                std::string subject = a.c->name() + " ^ " + b.c->name();
                if (wants("additivity")) {
                    bool ok = r.q.weak == a.report.q.weak + b.report.q.weak;
                    std::string why;
                    for (auto p : union_primes(r, a.report))
                        if (r.hp(p) != a.report.hp(p) + b.report.hp(p)) {
                            ok = false;
                            why += " F_" + std::to_string(p);
                        }
                    for (auto p : b.report.fields)
                        if (r.hp(p.first) != a.report.hp(p.first) + b.report.hp(p.first)) {
                            ok = false;
                            why += " F_" + std::to_string(p.first);
                        }
                    out.push_back({"additivity", subject, ok, ok ? "field invariants add" : "fails at" + why});
                }
                int sum = a.report.z.strong + b.report.z.strong;
                if (wants("subadditivity"))
                    out.push_back({"subadditivity", subject, r.z.strong <= sum,
                                   std::to_string(r.z.strong) + " <= " + std::to_string(sum)});
                if (r.z.strong < sum && !strict_seen) {
                    strict_seen = true;
                    strict_witness = subject + ": " + std::to_string(r.z.strong) + " < " + std::to_string(sum);
                }
            }
        if (wants("strictness"))
            out.push_back({"strictness", "corpus", strict_seen,
                           strict_seen ? strict_witness : "no pair with strict Z-subadditivity"});
    }

    if (wants("monotonicity")) {
        for (const auto& nm : maps) {
            const CochainMap& f = nm.map;
            auto problems = f.problems();
            if (!problems.empty())
                throw Error(ErrorKind::Validation, "invalid cochain map " + nm.name + ": " + problems.front());
            BigInt deg = fixed_degree(f);
            if (sgn(deg) == 0) {
                out.push_back({"monotonicity", nm.name, true, "fixed degree 0, no constraint"});
                continue;
            }
            HReport src = prime_profile(f.source());
            HReport tgt = prime_profile(f.target());
            bool unit = abs(deg) == 1;
            bool ok = tgt.z.weak <= src.z.weak && tgt.q.weak <= src.q.weak;
            if (unit)
                ok = ok && tgt.z.strong <= src.z.strong && tgt.q.strong <= src.q.strong;
            for (auto p : union_primes(src, tgt)) {
                if (mpz_divisible_ui_p(deg.get_mpz_t(), p))
                    continue;
                if (tgt.hp(p) > src.hp(p))
                    ok = false;
            }
            out.push_back({"monotonicity", nm.name, ok,
                           "degree " + deg.get_str() + ": target " + pair_text(tgt.z) + " source " + pair_text(src.z)});
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Manifold conventions

ManifoldReport manifold_report(const Complex& c, const Rational& n)
{
    HReport r = prime_profile(c);
    ManifoldReport m;
    m.n = n;
    m.z_weak = Rational(r.z.weak) - n;
    m.z_strong = Rational(r.z.strong) - n;
    m.q_weak = Rational(r.q.weak) - n;
    m.q_strong = Rational(r.q.strong) - n;
    for (const auto& [p, pair] : r.fields)
        m.fields[p] = Rational(pair.weak) - n;
    m.other_primes = Rational(r.h0()) - n;
    m.d = 2 * m.z_weak;
    m.fr = Rational(2 * r.hp(2)) - 2 * n;
    m.h_km = -(Rational(r.h0()) - n);
    try {
        HPair hom = homological_h(c, Ring::rationals());
        if (hom.strong == r.h0()) {
            m.h_km = -(Rational(hom.strong) - n);
            m.h_km_from_dual = true;
        }
    } catch (const Error&) {
    }
    m.d.canonicalize();
    m.fr.canonicalize();
    m.h_km.canonicalize();
    return m;
}

FroyshovResult froyshov_check(const Rational& h, const Rational& c1_sq, const BigInt& b2)
{
    if (sgn(b2) < 0)
        throw Error(ErrorKind::Validation, "b2 must be non-negative");
    Rational slack = h - (c1_sq + Rational(b2)) / 8;
    slack.canonicalize();
    return {sgn(slack) >= 0, slack};
}

std::string format_rational(const Rational& r)
{
    Rational x = r;
    x.canonicalize();
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& text)
{
    auto bad = [&] { return Error(ErrorKind::Syntax, "not a rational number: '" + text + "'"); };
    auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto is_int = [](const std::string& s, bool sign) {
        std::size_t i = (sign && !s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i >= s.size())
            return false;
        return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    if (!is_int(num, true) || !is_int(den, false))
        throw bad();
    BigInt d(den);
    if (sgn(d) == 0)
        throw bad();
    BigInt nn(num[0] == '+' ? num.substr(1) : num);
    Rational r(nn, d);
    r.canonicalize();
    return r;
}

}  // namespace swfh
