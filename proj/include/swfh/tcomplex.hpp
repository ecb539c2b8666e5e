#pragma once

// Cochain model of a semi-free circle complex: a finite complex of free graded
// Z[u]-modules, |u| = 2, whose generators are split into Tower generators
// (fixed cells) and Free generators (free orbits).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "swfh/error.hpp"
#include "swfh/exactalg.hpp"

namespace swfh {

enum class GenKind { Tower, Free };

struct Generator {
    std::string id;
    GenKind kind;
    int degree;
};

struct DiffEntry {
    std::string source;
    std::string target;
    BigInt coeff;
};

/// Admissible: Free->Tower entries are forbidden (the tower part is a quotient).
/// Coadmissible: Tower->Free entries are forbidden (the tower part is a sub).
enum class Variance { Admissible, Coadmissible };

/// A monomial u^power * gen inside one degree.
struct BasisElement {
    std::size_t gen;
    int power;
};

enum class Part { All, Tower, Free };

class Complex {
public:
    /// Sparse row of the differential: target index -> coefficient.
    using Row = std::map<std::size_t, BigInt>;

    Complex() = default;
    explicit Complex(Variance variance) : variance_(variance) {}

    /// Throws Error(Validation) on a duplicate id.
    std::size_t add_generator(const std::string& id, GenKind kind, int degree);
    /// Adds coeff to the entry source -> target; zero sums are dropped.
    /// Unknown ids throw Error(Validation). No admissibility checks here.
    void add_diff(const std::string& source, const std::string& target, const BigInt& coeff);
    void add_diff(std::size_t source, std::size_t target, const BigInt& coeff);

    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_[i]; }
    const Row& diff(std::size_t i) const { return diff_[i]; }
    std::optional<std::size_t> index_of(const std::string& id) const;
    bool has_id(const std::string& id) const { return index_of(id).has_value(); }

    /// Entries ordered by (source, target) declaration index.
    std::vector<DiffEntry> diff_entries() const;

    /// Largest generator degree; 0 for the empty complex.
    int d_max() const;
    int min_degree() const;
    bool has_tower() const;

    Variance variance() const { return variance_; }
    bool fragment() const { return fragment_; }
    void set_fragment(bool f) { fragment_ = f; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    /// Fixed sphere degree; set by validation.
    std::optional<int> ell() const { return ell_; }
    void set_ell(std::optional<int> e) { ell_ = e; }

    /// Implied u-power of an entry between generators; nullopt when the
    /// degree difference has the wrong parity.
    std::optional<int> entry_power(std::size_t source, std::size_t target) const;

    /// Monomials of total degree n restricted to a part, in declaration order.
    std::vector<BasisElement> basis(int n, Part part = Part::All) const;
    /// Matrix of delta from degree n to degree n+1 (rows = source monomials).
    IntMatrix cochain_matrix(int n, Part part = Part::All) const;

    /// Canonical text key for memo tables and equality tests.
    std::string fingerprint() const;

private:
    Variance variance_ = Variance::Admissible;
    std::vector<Generator> gens_;
    std::vector<Row> diff_;
    std::map<std::string, std::size_t> ids_;
    bool fragment_ = false;
    std::optional<int> ell_;
    std::string name_;
};

std::string basis_label(const Complex& c, const BasisElement& e);

// ---------------------------------------------------------------------------
// Validation

enum class Rule {
    ZeroCoefficient,
    Parity,
    FreeToTower,
    TowerToFree,
    TowerPower,
    DeltaSquared,
    FixedSphere,
    FreeTorsion,
};

const char* rule_name(Rule r);

struct Violation {
    Rule rule;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::optional<int> ell;
    int d_max = 0;

    bool admissible() const { return violations.empty(); }
    bool has(Rule r) const;
    std::string summary() const;
};

/// Checks every rule; fragments skip the fixed-sphere rule.
ValidationReport validate(const Complex& c);
/// Per-entry rules only (parity, kinds, tower powers).
std::vector<Violation> entry_violations(const Complex& c);

/// Validates, records ell, and throws Error(kind) with the report summary on failure.
Complex validated(Complex c, ErrorKind kind = ErrorKind::Validation);

// ---------------------------------------------------------------------------
// Constructors

Complex sphere(int ell, int h);
Complex free_summand(int n);
Complex point();
Complex wedge(const Complex& a, const Complex& b);
Complex smash(const Complex& a, const Complex& b);

struct AttachmentCochain {
    int dim = 2;
    std::vector<std::pair<std::string, BigInt>> coeffs;
};

Complex attach_free_cell(const Complex& a, const AttachmentCochain& c);
Complex xab(int ell, int h, const BigInt& a, const BigInt& b);

// ---------------------------------------------------------------------------
// Cochain maps

/// A Z[u]-linear map B(source) -> B(target) of the same total degree. It
/// stands for a space map in the opposite direction.
class CochainMap {
public:
    CochainMap(std::shared_ptr<const Complex> source, std::shared_ptr<const Complex> target);

    static CochainMap identity(std::shared_ptr<const Complex> c);

    void set(const std::string& source_id, const std::string& target_id, const BigInt& coeff);
    void set(std::size_t source, std::size_t target, const BigInt& coeff);

    const Complex& source() const { return *source_; }
    const Complex& target() const { return *target_; }
    std::shared_ptr<const Complex> source_ptr() const { return source_; }
    std::shared_ptr<const Complex> target_ptr() const { return target_; }
    const Complex::Row& image(std::size_t source_gen) const { return rows_[source_gen]; }

    /// Empty when the map is valid.
    std::vector<std::string> problems() const;

private:
    std::shared_ptr<const Complex> source_;
    std::shared_ptr<const Complex> target_;
    std::vector<Complex::Row> rows_;
};

/// outer o inner; inner.target must equal outer.source.
CochainMap compose(const CochainMap& outer, const CochainMap& inner);

/// Induced map on the degree-ell fixed cohomology Z -> Z.
BigInt fixed_degree(const CochainMap& f);

/// Generator of the fixed cohomology at degree ell as a tower cocycle, sign
/// fixed by declaration order; and the matching coordinate functional at
/// degree ell + 2k. Both act on the tower-part basis.
std::vector<BigInt> fixed_class_cocycle(const Complex& c);
std::vector<BigInt> fixed_functional(const Complex& c, int k);

}  // namespace swfh
