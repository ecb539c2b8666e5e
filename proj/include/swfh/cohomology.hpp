#pragma once

// Degreewise Borel cohomology of an admissible complex, the u-action, and
// restriction to the fixed tower.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "swfh/exactalg.hpp"
#include "swfh/tcomplex.hpp"

namespace swfh {

struct CohomologyGroup {
    Ring ring = Ring::integers();
    /// Free rank over Z, dimension over a field.
    std::size_t rank = 0;
    /// Invariant factors >= 2 (Z only).
    std::vector<BigInt> torsion;

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    std::string to_string() const;
    friend bool operator==(const CohomologyGroup&, const CohomologyGroup&) = default;
};

/// Image of H^{ell+2k} -> H^{ell+2k}(fixed part) = ring. Over Z the image is
/// index * Z; over a field index is 1 (full) or 0.
struct RestrictionImage {
    int k = 0;
    Ring ring = Ring::integers();
    BigInt index = 0;

    bool nonzero() const { return sgn(index) != 0; }
    bool surjective() const { return index == 1; }
};

struct FiniteTower {
    int start;
    int length;
    friend auto operator<=>(const FiniteTower&, const FiniteTower&) = default;
};

struct TowerDecomposition {
    int infinite_start = 0;
    /// Sorted by (start, length); repeated entries are multiplicities.
    std::vector<FiniteTower> finite;
};

/// Dimensions beyond the stabilization bound, indexed by degree parity.
struct StableTate {
    Ring ring = Ring::rationals();
    int from_degree = 0;
    std::size_t even = 0;
    std::size_t odd = 0;
    bool u_isomorphism = false;
};

/// Memoizing evaluator bound to one validated complex. Safe to share between
/// threads.
class CohomologyEngine {
public:
    explicit CohomologyEngine(Complex c);

    const Complex& complex() const { return c_; }
    int stabilization_bound() const { return c_.d_max(); }
    int ell() const;
    /// Largest k that an h-invariant scan needs to look at.
    int scan_limit() const;

    const IntMatrix& cochain_matrix(int n) const;
    /// Matrix of u^r from degree n to degree n + 2r.
    IntMatrix u_matrix(int n, int r = 1) const;

    CohomologyGroup cohomology_at(int n, const Ring& ring) const;
    RestrictionImage restriction_image(int k, const Ring& ring) const;

    /// Rank of u^r : H^n -> H^{n+2r} over a field.
    std::size_t u_rank(int n, int r, const Ring& field) const;
    TowerDecomposition tower_decomposition(const Ring& field) const;
    StableTate stable_tate(const Ring& field) const;

private:
    const std::vector<BigInt>& functional(int k) const;
    const IntMatrix& integral_kernel(int n) const;

    Complex c_;
    mutable std::mutex mu_;
    mutable std::map<int, IntMatrix> matrices_;
    mutable std::map<int, IntMatrix> kernels_;
    mutable std::map<int, std::vector<BigInt>> functionals_;
    mutable std::map<std::pair<int, Ring>, CohomologyGroup> groups_;
    mutable std::map<std::pair<int, Ring>, RestrictionImage> images_;
};

IntMatrix cochain_matrix(const Complex& c, int n);
CohomologyGroup cohomology_at(const Complex& c, int n, const Ring& ring);
RestrictionImage restriction_image(const Complex& c, int k, const Ring& ring);
int stabilization_bound(const Complex& c);
TowerDecomposition tower_decomposition(const Complex& c, const Ring& field);
StableTate stable_tate(const Complex& c, const Ring& field);

}  // namespace swfh
