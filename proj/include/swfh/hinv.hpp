#pragma once

// h-invariants, prime profiles, property suites and the manifold conventions.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "swfh/cohomology.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

struct HPair {
    int weak = 0;
    int strong = 0;
    friend bool operator==(const HPair&, const HPair&) = default;
};

struct HOptions {
    /// Highest degree to scan; must exceed the stabilization bound.
    std::optional<int> max_degree;
};

/// Number of restriction steps k = 0..limit that a scan inspects.
int scan_limit(const CohomologyEngine& e, const HOptions& opt = {});

HPair h_invariants(const CohomologyEngine& e, const Ring& ring, const HOptions& opt = {});
HPair h_invariants(const Complex& c, const Ring& ring);

/// Primes at which some computed invariant may differ from characteristic 0.
std::vector<std::uint64_t> candidate_primes(const CohomologyEngine& e, const HOptions& opt = {});

struct HReport {
    HPair z;
    HPair q;
    /// Candidate primes and the small primes 2, 3, 5.
    std::map<std::uint64_t, HPair> fields;
    std::vector<std::uint64_t> candidates;
    std::vector<std::uint64_t> exceptional_primes;
    BigInt jump_order = 0;
    /// Z-restriction index m_k for k = 0..scan limit.
    std::vector<BigInt> restriction_indices;

    bool weak_equals_h0 = false;
    bool strong_equals_max_p = false;
    bool jump_primes_consistent = false;
    bool weak_le_strong = false;
    bool field_flavors_agree = false;

    int h0() const { return q.weak; }
    /// h^p, falling back to h^0 for non-candidate primes.
    int hp(std::uint64_t p) const;
    int max_p() const;
    bool consistent() const
    {
        return weak_equals_h0 && strong_equals_max_p && jump_primes_consistent && weak_le_strong && field_flavors_agree;
    }
};

HReport prime_profile(const CohomologyEngine& e, const HOptions& opt = {});
HReport prime_profile(const Complex& c);

// ---------------------------------------------------------------------------
// Property suites

struct PropertyResult {
    std::string suite;
    std::string subject;
    bool pass;
    std::string detail;
};

struct PropertyReport {
    std::vector<PropertyResult> results;
    bool passed() const;
};

struct NamedMap {
    std::string name;
    CochainMap map;
};

/// Known suite names, in execution order.
const std::vector<std::string>& property_suites();

PropertyReport verify_properties(const std::vector<Complex>& complexes, const std::vector<NamedMap>& maps,
                                 const std::set<std::string>& suites);

// ---------------------------------------------------------------------------
// Manifold conventions

struct ManifoldReport {
    Rational n;
    Rational z_weak, z_strong;
    Rational q_weak, q_strong;
    std::map<std::uint64_t, Rational> fields;
    /// Value of h^p - n at every prime not listed in `fields`.
    Rational other_primes;
    Rational d;
    Rational fr;
    Rational h_km;
    bool h_km_from_dual = false;
};

ManifoldReport manifold_report(const Complex& c, const Rational& n);

struct FroyshovResult {
    bool satisfied;
    Rational slack;
};

FroyshovResult froyshov_check(const Rational& h, const Rational& c1_sq, const BigInt& b2);

std::string format_rational(const Rational& r);
/// Accepts "p" or "p/q"; throws Error(Syntax).
Rational parse_rational(const std::string& text);

}  // namespace swfh
