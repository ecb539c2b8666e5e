#pragma once

// Exact integer and prime-field linear algebra.
//
// Everything here is arbitrary precision (GMP) or exact modular arithmetic;
// there is no floating point anywhere in the library.

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace swfh {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Coefficient ring tag: Z, Q or a prime field F_p.
class Ring {
public:
    enum class Kind { Integers, Rationals, PrimeField };

    static Ring integers() { return Ring(Kind::Integers, 0); }
    static Ring rationals() { return Ring(Kind::Rationals, 0); }
    /// Throws Error(InvalidRing) unless p is a prime below 2^63.
    static Ring prime_field(std::uint64_t p);
    /// Parses the command-line spelling: `z`, `q`, `f:<p>`.
    static Ring parse(std::string_view text);

    Kind kind() const { return kind_; }
    bool is_field() const { return kind_ != Kind::Integers; }
    std::uint64_t characteristic() const { return p_; }
    std::string name() const;

    friend bool operator==(const Ring&, const Ring&) = default;
    friend auto operator<=>(const Ring&, const Ring&) = default;

private:
    Ring(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

/// Dense integer matrix with row and column labels.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);

    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(std::size_t rows, std::size_t cols, const std::vector<BigInt>& diag);

    std::size_t rows() const { return row_labels_.size(); }
    std::size_t cols() const { return col_labels_.size(); }
    const std::vector<std::string>& row_labels() const { return row_labels_; }
    const std::vector<std::string>& col_labels() const { return col_labels_; }

    BigInt& at(std::size_t r, std::size_t c) { return data_[r * cols() + c]; }
    const BigInt& at(std::size_t r, std::size_t c) const { return data_[r * cols() + c]; }

    bool is_zero() const;
    IntMatrix transposed() const;
    /// Rows [begin, end) as a new matrix.
    IntMatrix row_block(std::size_t begin, std::size_t end) const;
    /// Columns [begin, end) as a new matrix.
    IntMatrix col_block(std::size_t begin, std::size_t end) const;
    std::vector<BigInt> row(std::size_t r) const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    /// Entry-wise equality; labels are ignored.
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<BigInt> data_;
};

/// Row vector times matrix.
std::vector<BigInt> row_times(const std::vector<BigInt>& v, const IntMatrix& m);
/// Matrix times column vector.
std::vector<BigInt> times_column(const IntMatrix& m, const std::vector<BigInt>& v);
BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b);

struct SmithForm {
    /// Nonzero invariant factors d_1 | d_2 | ... | d_r, all positive.
    std::vector<BigInt> invariant_factors;
    /// left * m * right equals the padded diagonal. Empty when not requested.
    IntMatrix left;
    IntMatrix right;
    IntMatrix left_inverse;
    IntMatrix right_inverse;

    std::size_t rank() const { return invariant_factors.size(); }
};

struct SmithOptions {
    bool left = true;
    bool right = true;
    bool inverses = true;
};

/// Smallest-absolute-value pivoting, ties broken by (row, column).
SmithForm smith_normal_form(const IntMatrix& m, SmithOptions options = {});

/// Rank over Q (for Z and Q) or of the reduction mod p.
std::size_t rank(const IntMatrix& m, const Ring& ring);

struct CokernelInvariants {
    std::size_t free_rank = 0;
    /// Invariant factors >= 2.
    std::vector<BigInt> torsion;
};

/// Cokernel of m viewed as a map Z^cols -> Z^rows.
CokernelInvariants cokernel_invariants(const IntMatrix& m);

/// Rank over Q by fraction-free elimination.
std::size_t rank_over_q(const IntMatrix& m);

/// Rows form a Z-basis of {v : v * m = 0}.
IntMatrix left_kernel(const IntMatrix& m);

using ModVector = std::vector<std::uint64_t>;

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p);
/// A basis of {v in F_p^rows : v * m = 0}.
std::vector<ModVector> left_kernel_mod_p(const IntMatrix& m, std::uint64_t p);
std::uint64_t reduce_mod(const BigInt& x, std::uint64_t p);

bool is_prime(const BigInt& n);
/// Distinct prime divisors of |n| in increasing order; empty for 0 and +-1.
std::vector<BigInt> prime_divisors(const BigInt& n);

/// Cohomology at the middle of Z^a --in--> Z^b --out--> Z^c, with maps acting
/// on row vectors (v -> v * m).
struct CohomologyPresentation {
    /// Rows are a Z-basis of the cocycles.
    IntMatrix cocycle_basis;
    /// b x k: cocycle z has class coordinates z * to_classes. The first
    /// `relations.size()` coordinates are read modulo the matching entry.
    IntMatrix to_classes;
    /// k x b: row i is a cocycle whose class has coordinate vector e_i.
    IntMatrix from_classes;
    std::vector<BigInt> relations;

    std::size_t free_rank() const { return to_classes.cols() - relations.size(); }
    std::vector<BigInt> torsion() const;
    /// Column of to_classes giving the i-th free coordinate.
    std::vector<BigInt> free_functional(std::size_t i) const;
    std::vector<BigInt> free_generator(std::size_t i) const;
};

CohomologyPresentation present_cohomology(const IntMatrix& in, const IntMatrix& out);

/// When enabled, every smith_normal_form call re-multiplies its transforms and
/// throws Error(Internal) on mismatch. Tests switch this on.
void set_transform_checks(bool enabled);
bool transform_checks_enabled();

}  // namespace swfh
