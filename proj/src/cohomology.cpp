#include "swfh/cohomology.hpp"

#include <algorithm>

#include "swfh/error.hpp"

namespace swfh {

std::string CohomologyGroup::to_string() const
{
    if (ring.is_field())
        return std::to_string(rank);
    std::string s;
    if (rank > 0)
        s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (const auto& t : torsion) {
        if (!s.empty())
            s += "+";
        s += "Z/" + t.get_str();
    }
    return s.empty() ? "0" : s;
}

namespace {

BigInt gcd_of(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

IntMatrix mod_rows_to_matrix(const std::vector<ModVector>& rows, std::size_t cols)
{
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (rows[r][c] != 0)
                m.at(r, c) = BigInt(std::to_string(rows[r][c]));
    return m;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom)
{
    IntMatrix m(top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < top.cols(); ++c)
            m.at(r, c) = top.at(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < bottom.cols(); ++c)
            m.at(top.rows() + r, c) = bottom.at(r, c);
    return m;
}

}  // namespace

CohomologyEngine::CohomologyEngine(Complex c) : c_(std::move(c))
{
    if (!c_.ell() && !c_.fragment())
        c_ = validated(std::move(c_));
}

int CohomologyEngine::ell() const
{
    if (!c_.ell())
        throw Error(ErrorKind::Validation, "complex has no fixed sphere");
    return *c_.ell();
}

int CohomologyEngine::scan_limit() const
{
    int span = c_.d_max() + 3 - ell();
    return std::max(0, (span + 1) / 2);
}

const IntMatrix& CohomologyEngine::cochain_matrix(int n) const
{
    {
        std::lock_guard lock(mu_);
        auto it = matrices_.find(n);
        if (it != matrices_.end())
            return it->second;
    }
    IntMatrix m = c_.cochain_matrix(n);
    std::lock_guard lock(mu_);
    return matrices_.emplace(n, std::move(m)).first->second;
}

const IntMatrix& CohomologyEngine::integral_kernel(int n) const
{
    {
        std::lock_guard lock(mu_);
        auto it = kernels_.find(n);
        if (it != kernels_.end())
            return it->second;
    }
    IntMatrix k = left_kernel(cochain_matrix(n));
    std::lock_guard lock(mu_);
    return kernels_.emplace(n, std::move(k)).first->second;
}

const std::vector<BigInt>& CohomologyEngine::functional(int k) const
{
    {
        std::lock_guard lock(mu_);
        auto it = functionals_.find(k);
        if (it != functionals_.end())
            return it->second;
    }
    std::vector<BigInt> w = fixed_functional(c_, k);
    std::lock_guard lock(mu_);
    return functionals_.emplace(k, std::move(w)).first->second;
}

IntMatrix CohomologyEngine::u_matrix(int n, int r) const
{
    auto src = c_.basis(n);
    auto dst = c_.basis(n + 2 * r);
    std::vector<int> pos(c_.size(), -1);
    for (std::size_t i = 0; i < dst.size(); ++i)
        pos[dst[i].gen] = static_cast<int>(i);
    IntMatrix m(src.size(), dst.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        m.at(i, static_cast<std::size_t>(pos[src[i].gen])) = 1;
    return m;
}

CohomologyGroup CohomologyEngine::cohomology_at(int n, const Ring& ring) const
{
    auto key = std::make_pair(n, ring);
    {
        std::lock_guard lock(mu_);
        auto it = groups_.find(key);
        if (it != groups_.end())
            return it->second;
    }
    const IntMatrix& in = cochain_matrix(n - 1);
    const IntMatrix& out = cochain_matrix(n);
    CohomologyGroup g;
    g.ring = ring;
    std::size_t dim = out.rows();
    if (ring.kind() == Ring::Kind::Integers) {
        SmithForm s = smith_normal_form(in, {false, false, false});
        g.rank = dim - rank_over_q(out) - s.rank();
        for (const auto& d : s.invariant_factors)
            if (d > 1)
                g.torsion.push_back(d);
    } else {
        g.rank = dim - rank(out, ring) - rank(in, ring);
    }
    std::lock_guard lock(mu_);
    groups_.emplace(key, g);
    return g;
}

RestrictionImage CohomologyEngine::restriction_image(int k, const Ring& ring) const
{
    if (k < 0)
        throw Error(ErrorKind::Validation, "restriction index must be non-negative");
    if (c_.variance() != Variance::Admissible)
        throw Error(ErrorKind::Validation, "restriction needs an admissible complex");
    auto key = std::make_pair(k, ring);
    {
        std::lock_guard lock(mu_);
        auto it = images_.find(key);
        if (it != images_.end())
            return it->second;
    }
    int N = ell() + 2 * k;
    auto basis = c_.basis(N);
    const std::vector<BigInt>& w = functional(k);
    // Lift the tower functional to the whole degree-N basis.
    std::vector<BigInt> lifted(basis.size());
    std::size_t t = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c_.gen(basis[i].gen).kind == GenKind::Tower)
            lifted[i] = w[t++];

    RestrictionImage img;
    img.k = k;
    img.ring = ring;
    if (ring.kind() == Ring::Kind::PrimeField) {
        std::uint64_t p = ring.characteristic();
        BigInt pz(std::to_string(p));
        for (const auto& v : left_kernel_mod_p(cochain_matrix(N), p)) {
            BigInt s = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0 && sgn(lifted[i]) != 0)
                    s += BigInt(std::to_string(v[i])) * lifted[i];
            if (!mpz_divisible_p(s.get_mpz_t(), pz.get_mpz_t())) {
                img.index = 1;
                break;
            }
        }
    } else {
        const IntMatrix& ker = integral_kernel(N);
        BigInt m = 0;
        for (std::size_t r = 0; r < ker.rows(); ++r)
            m = gcd_of(m, dot(ker.row(r), lifted));
        img.index = ring.kind() == Ring::Kind::Integers ? m : BigInt(sgn(m) != 0 ? 1 : 0);
    }
    std::lock_guard lock(mu_);
    images_.emplace(key, img);
    return img;
}

std::size_t CohomologyEngine::u_rank(int n, int r, const Ring& field) const
{
    if (!field.is_field())
        throw Error(ErrorKind::InvalidRing, "u-rank needs a field");
    int m = n + 2 * r;
    const IntMatrix& boundaries = cochain_matrix(m - 1);
    IntMatrix cycles;
    if (field.kind() == Ring::Kind::PrimeField)
        cycles = mod_rows_to_matrix(left_kernel_mod_p(cochain_matrix(n), field.characteristic()), cochain_matrix(n).rows());
    else
        cycles = integral_kernel(n);
    if (cycles.rows() == 0)
        return 0;
    IntMatrix pushed = cycles * u_matrix(n, r);
    return rank(stack(pushed, boundaries), field) - rank(boundaries, field);
}

TowerDecomposition CohomologyEngine::tower_decomposition(const Ring& field) const
{
    if (!field.is_field())
        throw Error(ErrorKind::InvalidRing, "tower decomposition needs a field");
    int lo = c_.min_degree();
    int dmax = c_.d_max();
    auto top_for = [&](int n) { return ((dmax + 2 - n) % 2 == 0) ? dmax + 2 : dmax + 3; };
    auto R = [&](int n, int r) -> long {
        if (n < lo)
            return 0;
        return static_cast<long>(u_rank(n, r, field));
    };
    auto S = [&](int n, int r) { return R(n, r) - R(n - 2, r + 1); };

    TowerDecomposition td;
    int infinite = 0;
    std::map<int, long> alive;
    for (int n = lo; n <= dmax + 3; ++n) {
        int top = top_for(n);
        int span = (top - n) / 2;
        long inf_here = S(n, span);
        if (inf_here < 0)
            throw Error(ErrorKind::Internal, "tower reconstruction: negative multiplicity");
        if (inf_here > 0) {
            infinite += static_cast<int>(inf_here);
            td.infinite_start = n;
            for (int m = n; m <= dmax + 3; m += 2)
                alive[m] += inf_here;
        }
        for (int L = 1; L <= span; ++L) {
            long mult = S(n, L - 1) - S(n, L);
            if (mult < 0)
                throw Error(ErrorKind::Internal, "tower reconstruction: negative multiplicity");
            for (long i = 0; i < mult; ++i)
                td.finite.push_back({n, L});
            for (int j = 0; j < L; ++j)
                alive[n + 2 * j] += mult;
        }
    }
    if (infinite != 1)
        throw Error(ErrorKind::Internal, "tower reconstruction: " + std::to_string(infinite) + " infinite towers");
    for (int n = lo; n <= dmax + 3; ++n)
        if (static_cast<long>(cohomology_at(n, field).rank) != alive[n])
            throw Error(ErrorKind::Internal, "tower reconstruction does not match dimension in degree " + std::to_string(n));
    std::sort(td.finite.begin(), td.finite.end());
    return td;
}

StableTate CohomologyEngine::stable_tate(const Ring& field) const
{
    if (!field.is_field())
        throw Error(ErrorKind::InvalidRing, "stable values need a field");
    StableTate st;
    st.ring = field;
    st.from_degree = c_.d_max() + 1;
    st.u_isomorphism = true;
    for (int n = st.from_degree; n <= st.from_degree + 1; ++n) {
        std::size_t d = cohomology_at(n, field).rank;
        if (n % 2 == 0)
            st.even = d;
        else
            st.odd = d;
        if (cohomology_at(n + 2, field).rank != d || u_rank(n, 1, field) != d)
            st.u_isomorphism = false;
    }
    return st;
}

IntMatrix cochain_matrix(const Complex& c, int n) { return c.cochain_matrix(n); }

CohomologyGroup cohomology_at(const Complex& c, int n, const Ring& ring)
{
    return CohomologyEngine(c).cohomology_at(n, ring);
}

RestrictionImage restriction_image(const Complex& c, int k, const Ring& ring)
{
    return CohomologyEngine(c).restriction_image(k, ring);
}

int stabilization_bound(const Complex& c) { return c.d_max(); }

TowerDecomposition tower_decomposition(const Complex& c, const Ring& field)
{
    return CohomologyEngine(c).tower_decomposition(field);
}

StableTate stable_tate(const Complex& c, const Ring& field) { return CohomologyEngine(c).stable_tate(field); }

}  // namespace swfh
