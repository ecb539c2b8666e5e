#include "swfh/exactalg.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <optional>
#include <utility>

#include "swfh/error.hpp"

namespace swfh {

namespace {

std::atomic<bool> g_transform_checks{false};

std::vector<std::string> numbered_labels(std::size_t n)
{
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        labels.push_back(std::to_string(i));
    return labels;
}

}  // namespace

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidRing: return "invalid-ring";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::AttachmentNotClosed: return "attachment-not-closed";
    case ErrorKind::WedgeFixedPart: return "wedge-fixed-part";
    case ErrorKind::SmashModel: return "smash-model";
    case ErrorKind::HypothesisViolation: return "hypothesis-violation";
    case ErrorKind::FixedSphereMismatch: return "fixed-sphere-mismatch";
    case ErrorKind::ExperimentalModule: return "experimental-module";
    case ErrorKind::ScanCap: return "scan-cap";
    case ErrorKind::Io: return "io";
    case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

void set_transform_checks(bool enabled) { g_transform_checks.store(enabled); }
bool transform_checks_enabled() { return g_transform_checks.load(); }

// ---------------------------------------------------------------------------
// Ring

Ring Ring::prime_field(std::uint64_t p)
{
    if (p >= (std::uint64_t{1} << 63) || !is_prime(BigInt(std::to_string(p))))
        throw Error(ErrorKind::InvalidRing, "not a prime below 2^63: " + std::to_string(p));
    return Ring(Kind::PrimeField, p);
}

Ring Ring::parse(std::string_view text)
{
    if (text == "z" || text == "Z")
        return integers();
    if (text == "q" || text == "Q")
        return rationals();
    if (text.size() > 2 && (text.substr(0, 2) == "f:" || text.substr(0, 2) == "F:")) {
        auto digits = text.substr(2);
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec == std::errc() && ptr == digits.data() + digits.size())
            return prime_field(p);
    }
    throw Error(ErrorKind::InvalidRing, "unknown ring '" + std::string(text) + "' (use z, q or f:<p>)");
}

std::string Ring::name() const
{
    switch (kind_) {
    case Kind::Integers: return "z";
    case Kind::Rationals: return "q";
    case Kind::PrimeField: return "f:" + std::to_string(p_);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : row_labels_(numbered_labels(rows)), col_labels_(numbered_labels(cols)), data_(rows * cols)
{
}

IntMatrix::IntMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      data_(row_labels_.size() * col_labels_.size())
{
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows)
{
    std::size_t ncols = rows.size() == 0 ? 0 : rows.begin()->size();
    IntMatrix m(rows.size(), ncols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != ncols)
            throw Error(ErrorKind::Internal, "ragged matrix literal");
        std::size_t c = 0;
        for (long v : row)
            m.at(r, c++) = v;
        ++r;
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(std::size_t rows, std::size_t cols, const std::vector<BigInt>& diag)
{
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i)
        m.at(i, i) = diag[i];
    return m;
}

bool IntMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::transposed() const
{
    IntMatrix t(col_labels_, row_labels_);
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            t.at(c, r) = at(r, c);
    return t;
}

IntMatrix IntMatrix::row_block(std::size_t begin, std::size_t end) const
{
    std::vector<std::string> labels(row_labels_.begin() + begin, row_labels_.begin() + end);
    IntMatrix b(std::move(labels), col_labels_);
    for (std::size_t r = begin; r < end; ++r)
        for (std::size_t c = 0; c < cols(); ++c)
            b.at(r - begin, c) = at(r, c);
    return b;
}

IntMatrix IntMatrix::col_block(std::size_t begin, std::size_t end) const
{
    std::vector<std::string> labels(col_labels_.begin() + begin, col_labels_.begin() + end);
    IntMatrix b(row_labels_, std::move(labels));
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c = begin; c < end; ++c)
            b.at(r, c - begin) = at(r, c);
    return b;
}

std::vector<BigInt> IntMatrix::row(std::size_t r) const
{
    return {data_.begin() + r * cols(), data_.begin() + (r + 1) * cols()};
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorKind::Internal, "matrix product shape mismatch");
    IntMatrix p(a.row_labels(), b.col_labels());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const BigInt& x = a.at(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                if (sgn(b.at(k, j)) != 0)
                    p.at(i, j) += x * b.at(k, j);
        }
    return p;
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
    return a.rows() == b.rows() && a.cols() == b.cols() && a.data_ == b.data_;
}

std::vector<BigInt> row_times(const std::vector<BigInt>& v, const IntMatrix& m)
{
    std::vector<BigInt> out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m.at(i, j)) != 0)
                out[j] += v[i] * m.at(i, j);
    }
    return out;
}

std::vector<BigInt> times_column(const IntMatrix& m, const std::vector<BigInt>& v)
{
    std::vector<BigInt> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m.at(i, j)) != 0 && sgn(v[j]) != 0)
                out[i] += m.at(i, j) * v[j];
    return out;
}

BigInt dot(const std::vector<BigInt>& a, const std::vector<BigInt>& b)
{
    BigInt s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using Dense = std::vector<std::vector<BigInt>>;

Dense to_dense(const IntMatrix& m)
{
    Dense d(m.rows(), std::vector<BigInt>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            d[r][c] = m.at(r, c);
    return d;
}

IntMatrix from_dense(const Dense& d, std::size_t rows, std::size_t cols)
{
    IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = d[r][c];
    return m;
}

Dense dense_identity(std::size_t n)
{
    Dense d(n, std::vector<BigInt>(n));
    for (std::size_t i = 0; i < n; ++i)
        d[i][i] = 1;
    return d;
}

void add_row_multiple(Dense& d, std::size_t target, std::size_t source, const BigInt& q)
{
    auto& t = d[target];
    const auto& s = d[source];
    for (std::size_t j = 0; j < t.size(); ++j)
        if (sgn(s[j]) != 0)
            t[j] += q * s[j];
}

void add_col_multiple(Dense& d, std::size_t target, std::size_t source, const BigInt& q)
{
    for (auto& row : d)
        if (sgn(row[source]) != 0)
            row[target] += q * row[source];
}

void swap_cols(Dense& d, std::size_t a, std::size_t b)
{
    for (auto& row : d)
        std::swap(row[a], row[b]);
}

class SmithReducer {
public:
    SmithReducer(const IntMatrix& m, SmithOptions opt)
        : rows_(m.rows()), cols_(m.cols()), opt_(opt), a_(to_dense(m))
    {
        if (opt_.left) {
            left_ = dense_identity(rows_);
            if (opt_.inverses)
                left_inv_ = dense_identity(rows_);
        }
        if (opt_.right) {
            right_ = dense_identity(cols_);
            if (opt_.inverses)
                right_inv_ = dense_identity(cols_);
        }
    }

    SmithForm run()
    {
        std::size_t limit = std::min(rows_, cols_);
        std::size_t t = 0;
        for (; t < limit; ++t) {
            auto pivot = smallest_in_submatrix(t);
            if (!pivot)
                break;
            bring_to(t, pivot->first, pivot->second);
            reduce_at(t);
            if (sgn(a_[t][t]) < 0)
                negate_row(t);
        }

        SmithForm out;
        for (std::size_t i = 0; i < t; ++i)
            out.invariant_factors.push_back(a_[i][i]);
        if (opt_.left) {
            out.left = from_dense(left_, rows_, rows_);
            if (opt_.inverses)
                out.left_inverse = from_dense(left_inv_, rows_, rows_);
        }
        if (opt_.right) {
            out.right = from_dense(right_, cols_, cols_);
            if (opt_.inverses)
                out.right_inverse = from_dense(right_inv_, cols_, cols_);
        }
        return out;
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> smallest_in_submatrix(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        BigInt best_abs;
        for (std::size_t i = t; i < rows_; ++i)
            for (std::size_t j = t; j < cols_; ++j) {
                if (sgn(a_[i][j]) == 0)
                    continue;
                BigInt v = abs(a_[i][j]);
                if (!best || v < best_abs) {
                    best = {i, j};
                    best_abs = v;
                }
            }
        return best;
    }

    void bring_to(std::size_t t, std::size_t i, std::size_t j)
    {
        if (i != t)
            swap_row(t, i);
        if (j != t)
            swap_col(t, j);
    }

    void reduce_at(std::size_t t)
    {
        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows_; ++i) {
                if (sgn(a_[i][t]) == 0)
                    continue;
                BigInt q = a_[i][t] / a_[t][t];
                if (sgn(q) != 0)
                    add_row(i, t, -q);
                if (sgn(a_[i][t]) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols_; ++j) {
                if (sgn(a_[t][j]) == 0)
                    continue;
                BigInt q = a_[t][j] / a_[t][t];
                if (sgn(q) != 0)
                    add_col(j, t, -q);
                if (sgn(a_[t][j]) != 0)
                    clean = false;
            }
            if (!clean) {
                // Remainders are strictly smaller than the pivot; the smallest
                // one in row t or column t becomes the new pivot.
                std::optional<std::pair<std::size_t, std::size_t>> best;
                BigInt best_abs;
                auto consider = [&](std::size_t i, std::size_t j) {
                    if (sgn(a_[i][j]) == 0)
                        return;
                    BigInt v = abs(a_[i][j]);
                    if (!best || v < best_abs || (v == best_abs && std::pair(i, j) < *best)) {
                        best = {i, j};
                        best_abs = v;
                    }
                };
                for (std::size_t i = t + 1; i < rows_; ++i)
                    consider(i, t);
                for (std::size_t j = t + 1; j < cols_; ++j)
                    consider(t, j);
                bring_to(t, best->first, best->second);
                continue;
            }
            auto bad = first_non_multiple(t);
            if (!bad)
                return;
            add_row(t, *bad, 1);
        }
    }

    std::optional<std::size_t> first_non_multiple(std::size_t t) const
    {
        for (std::size_t i = t + 1; i < rows_; ++i)
            for (std::size_t j = t + 1; j < cols_; ++j)
                if (sgn(a_[i][j]) != 0 && !mpz_divisible_p(a_[i][j].get_mpz_t(), a_[t][t].get_mpz_t()))
                    return i;
        return std::nullopt;
    }

    // row_i += q * row_j
    void add_row(std::size_t i, std::size_t j, const BigInt& q)
    {
        add_row_multiple(a_, i, j, q);
        if (opt_.left) {
            add_row_multiple(left_, i, j, q);
            if (opt_.inverses)
                add_col_multiple(left_inv_, j, i, -q);
        }
    }

    // col_i += q * col_j
    void add_col(std::size_t i, std::size_t j, const BigInt& q)
    {
        add_col_multiple(a_, i, j, q);
        if (opt_.right) {
            add_col_multiple(right_, i, j, q);
            if (opt_.inverses)
                add_row_multiple(right_inv_, j, i, -q);
        }
    }

    void swap_row(std::size_t i, std::size_t j)
    {
        std::swap(a_[i], a_[j]);
        if (opt_.left) {
            std::swap(left_[i], left_[j]);
            if (opt_.inverses)
                swap_cols(left_inv_, i, j);
        }
    }

    void swap_col(std::size_t i, std::size_t j)
    {
        swap_cols(a_, i, j);
        if (opt_.right) {
            swap_cols(right_, i, j);
            if (opt_.inverses)
                std::swap(right_inv_[i], right_inv_[j]);
        }
    }

    void negate_row(std::size_t i)
    {
        for (auto& x : a_[i])
            x = -x;
        if (opt_.left) {
            for (auto& x : left_[i])
                x = -x;
            if (opt_.inverses)
                for (auto& row : left_inv_)
                    row[i] = -row[i];
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    SmithOptions opt_;
    Dense a_;
    Dense left_;
    Dense left_inv_;
    Dense right_;
    Dense right_inv_;
};

void check_smith(const IntMatrix& m, const SmithForm& s, SmithOptions opt)
{
    for (std::size_t i = 0; i < s.invariant_factors.size(); ++i) {
        if (sgn(s.invariant_factors[i]) <= 0)
            throw Error(ErrorKind::Internal, "smith: non-positive invariant factor");
        if (i > 0 && !mpz_divisible_p(s.invariant_factors[i].get_mpz_t(), s.invariant_factors[i - 1].get_mpz_t()))
            throw Error(ErrorKind::Internal, "smith: divisibility chain broken");
    }
    if (!opt.left || !opt.right)
        return;
    IntMatrix d = IntMatrix::diagonal(m.rows(), m.cols(), s.invariant_factors);
    if (!(s.left * m * s.right == d))
        throw Error(ErrorKind::Internal, "smith: left * m * right is not the diagonal form");
    if (opt.inverses) {
        if (!(s.left * s.left_inverse == IntMatrix::identity(m.rows())) ||
            !(s.right * s.right_inverse == IntMatrix::identity(m.cols())))
            throw Error(ErrorKind::Internal, "smith: transform inverse mismatch");
    }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m, SmithOptions options)
{
    SmithForm s = SmithReducer(m, options).run();
    if (transform_checks_enabled())
        check_smith(m, s, options);
    return s;
}

CokernelInvariants cokernel_invariants(const IntMatrix& m)
{
    SmithForm s = smith_normal_form(m, {false, false, false});
    CokernelInvariants out;
    out.free_rank = m.rows() - s.rank();
    for (const auto& d : s.invariant_factors)
        if (d > 1)
            out.torsion.push_back(d);
    return out;
}

IntMatrix left_kernel(const IntMatrix& m)
{
    SmithForm s = smith_normal_form(m, {true, false, false});
    return s.left.row_block(s.rank(), m.rows());
}

std::size_t rank_over_q(const IntMatrix& m)
{
    Dense a = to_dense(m);
    std::size_t rows = m.rows();
    std::size_t cols = m.cols();
    std::size_t r = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(a[piv][c]) == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[r], a[piv]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                BigInt v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

std::vector<BigInt> CohomologyPresentation::torsion() const
{
    std::vector<BigInt> out;
    for (const auto& d : relations)
        if (d > 1)
            out.push_back(d);
    return out;
}

std::vector<BigInt> CohomologyPresentation::free_functional(std::size_t i) const
{
    std::size_t col = relations.size() + i;
    std::vector<BigInt> w(to_classes.rows());
    for (std::size_t r = 0; r < w.size(); ++r)
        w[r] = to_classes.at(r, col);
    return w;
}

std::vector<BigInt> CohomologyPresentation::free_generator(std::size_t i) const
{
    return from_classes.row(relations.size() + i);
}

CohomologyPresentation present_cohomology(const IntMatrix& in, const IntMatrix& out)
{
    if (in.cols() != out.rows())
        throw Error(ErrorKind::Internal, "present_cohomology: shape mismatch");
    std::size_t b = out.rows();
    SmithForm s1 = smith_normal_form(out, {true, false, true});
    std::size_t r = s1.rank();
    CohomologyPresentation p;
    p.cocycle_basis = s1.left.row_block(r, b);
    IntMatrix to_kernel = s1.left_inverse.col_block(r, b);
    IntMatrix boundaries = in * to_kernel;
    SmithForm s2 = smith_normal_form(boundaries, {false, true, true});
    p.relations = s2.invariant_factors;
    p.to_classes = to_kernel * s2.right;
    p.from_classes = s2.right_inverse * p.cocycle_basis;
    return p;
}

// ---------------------------------------------------------------------------
// Prime fields

std::uint64_t reduce_mod(const BigInt& x, std::uint64_t p)
{
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), BigInt(std::to_string(p)).get_mpz_t());
    return std::stoull(r.get_str());
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    while (e) {
        if (e & 1)
            r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + (p - b); }

using ModDense = std::vector<ModVector>;

ModDense to_mod(const IntMatrix& m, std::uint64_t p, std::size_t extra_identity)
{
    ModDense d(m.rows(), ModVector(m.cols() + extra_identity, 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (sgn(m.at(r, c)) != 0)
                d[r][c] = reduce_mod(m.at(r, c), p);
        if (extra_identity)
            d[r][m.cols() + r] = 1;
    }
    return d;
}

// Row echelon form on the first `cols` columns; returns the rank.
std::size_t echelon_mod(ModDense& d, std::size_t cols, std::uint64_t p)
{
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < d.size(); ++c) {
        std::size_t piv = r;
        while (piv < d.size() && d[piv][c] == 0)
            ++piv;
        if (piv == d.size())
            continue;
        std::swap(d[r], d[piv]);
        std::uint64_t inv = inv_mod(d[r][c], p);
        for (auto& x : d[r])
            x = mul_mod(x, inv, p);
        for (std::size_t i = r + 1; i < d.size(); ++i) {
            std::uint64_t f = d[i][c];
            if (f == 0)
                continue;
            for (std::size_t j = c; j < d[i].size(); ++j)
                if (d[r][j] != 0)
                    d[i][j] = sub_mod(d[i][j], mul_mod(f, d[r][j], p), p);
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t rank_mod_p(const IntMatrix& m, std::uint64_t p)
{
    ModDense d = to_mod(m, p, 0);
    return echelon_mod(d, m.cols(), p);
}

std::vector<ModVector> left_kernel_mod_p(const IntMatrix& m, std::uint64_t p)
{
    ModDense d = to_mod(m, p, m.rows());
    std::size_t r = echelon_mod(d, m.cols(), p);
    std::vector<ModVector> kernel;
    for (std::size_t i = r; i < d.size(); ++i)
        kernel.emplace_back(d[i].begin() + static_cast<std::ptrdiff_t>(m.cols()), d[i].end());
    return kernel;
}

std::size_t rank(const IntMatrix& m, const Ring& ring)
{
    if (ring.kind() == Ring::Kind::PrimeField)
        return rank_mod_p(m, ring.characteristic());
    return rank_over_q(m);
}

// ---------------------------------------------------------------------------
// Primes

bool is_prime(const BigInt& n)
{
    if (n < 2)
        return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

BigInt pollard_rho(const BigInt& n)
{
    if (mpz_even_p(n.get_mpz_t()))
        return 2;
    for (unsigned long c = 1;; ++c) {
        BigInt x = 2, y = 2, d = 1;
        auto f = [&](const BigInt& v) {
            BigInt r = v * v + c;
            mpz_mod(r.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t());
            return r;
        };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            BigInt diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n)
            return d;
    }
}

void factor_into(BigInt n, std::vector<BigInt>& out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<BigInt> prime_divisors(const BigInt& value)
{
    BigInt n = abs(value);
    std::vector<BigInt> out;
    if (n <= 1)
        return out;
    for (unsigned long p = 2; p < 10000 && BigInt(p) * p <= n; ++p) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out.emplace_back(p);
            while (mpz_divisible_ui_p(n.get_mpz_t(), p))
                n /= p;
        }
    }
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace swfh
