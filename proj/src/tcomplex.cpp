#include "swfh/tcomplex.hpp"

#include <algorithm>
#include <sstream>

#include "swfh/error.hpp"

namespace swfh {

namespace {

bool same_parity(int a, int b) { return ((a - b) % 2) == 0; }

std::string unique_id(const Complex& c, const std::string& base)
{
    if (!c.has_id(base))
        return base;
    for (int i = 2;; ++i) {
        std::string id = base + "_" + std::to_string(i);
        if (!c.has_id(id))
            return id;
    }
}

std::vector<int> positions(const Complex& c, const std::vector<BasisElement>& basis)
{
    std::vector<int> pos(c.size(), -1);
    for (std::size_t i = 0; i < basis.size(); ++i)
        pos[basis[i].gen] = static_cast<int>(i);
    return pos;
}

bool in_part(const Generator& g, Part part)
{
    switch (part) {
    case Part::All: return true;
    case Part::Tower: return g.kind == GenKind::Tower;
    case Part::Free: return g.kind == GenKind::Free;
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------------------
// Complex

std::size_t Complex::add_generator(const std::string& id, GenKind kind, int degree)
{
    if (id.empty())
        throw Error(ErrorKind::Validation, "empty generator id");
    if (ids_.count(id))
        throw Error(ErrorKind::Validation, "duplicate generator id '" + id + "'");
    ids_[id] = gens_.size();
    gens_.push_back({id, kind, degree});
    diff_.emplace_back();
    return gens_.size() - 1;
}

void Complex::add_diff(const std::string& source, const std::string& target, const BigInt& coeff)
{
    auto s = index_of(source);
    auto t = index_of(target);
    if (!s)
        throw Error(ErrorKind::Validation, "unknown generator '" + source + "'");
    if (!t)
        throw Error(ErrorKind::Validation, "unknown generator '" + target + "'");
    add_diff(*s, *t, coeff);
}

void Complex::add_diff(std::size_t source, std::size_t target, const BigInt& coeff)
{
    if (sgn(coeff) == 0)
        return;
    auto& row = diff_[source];
    BigInt& v = row[target];
    v += coeff;
    if (sgn(v) == 0)
        row.erase(target);
}

std::optional<std::size_t> Complex::index_of(const std::string& id) const
{
    auto it = ids_.find(id);
    if (it == ids_.end())
        return std::nullopt;
    return it->second;
}

std::vector<DiffEntry> Complex::diff_entries() const
{
    std::vector<DiffEntry> out;
    for (std::size_t s = 0; s < gens_.size(); ++s)
        for (const auto& [t, c] : diff_[s])
            out.push_back({gens_[s].id, gens_[t].id, c});
    return out;
}

int Complex::d_max() const
{
    if (gens_.empty())
        return 0;
    int d = gens_.front().degree;
    for (const auto& g : gens_)
        d = std::max(d, g.degree);
    return d;
}

int Complex::min_degree() const
{
    if (gens_.empty())
        return 0;
    int d = gens_.front().degree;
    for (const auto& g : gens_)
        d = std::min(d, g.degree);
    return d;
}

bool Complex::has_tower() const
{
    return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.kind == GenKind::Tower; });
}

std::optional<int> Complex::entry_power(std::size_t source, std::size_t target) const
{
    int diff = gens_[source].degree + 1 - gens_[target].degree;
    if (diff % 2 != 0)
        return std::nullopt;
    return diff / 2;
}

std::vector<BasisElement> Complex::basis(int n, Part part) const
{
    std::vector<BasisElement> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const auto& g = gens_[i];
        if (in_part(g, part) && g.degree <= n && same_parity(g.degree, n))
            out.push_back({i, (n - g.degree) / 2});
    }
    return out;
}

IntMatrix Complex::cochain_matrix(int n, Part part) const
{
    auto rows = basis(n, part);
    auto cols = basis(n + 1, part);
    std::vector<std::string> row_labels, col_labels;
    for (const auto& e : rows)
        row_labels.push_back(basis_label(*this, e));
    for (const auto& e : cols)
        col_labels.push_back(basis_label(*this, e));
    IntMatrix m(std::move(row_labels), std::move(col_labels));
    auto pos = positions(*this, cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (const auto& [t, c] : diff_[rows[r].gen]) {
            if (pos[t] < 0)
                continue;
            auto j = entry_power(rows[r].gen, t);
            if (!j || *j < 0)
                continue;
            m.at(r, static_cast<std::size_t>(pos[t])) += c;
        }
    }
    return m;
}

std::string Complex::fingerprint() const
{
    std::ostringstream os;
    os << (variance_ == Variance::Admissible ? 'A' : 'C') << (fragment_ ? 'f' : '-') << '|';
    for (const auto& g : gens_)
        os << g.id << ':' << (g.kind == GenKind::Tower ? 'T' : 'F') << ':' << g.degree << ';';
    os << '|';
    for (const auto& e : diff_entries())
        os << e.source << '>' << e.target << ':' << e.coeff.get_str() << ';';
    return os.str();
}

std::string basis_label(const Complex& c, const BasisElement& e)
{
    const auto& id = c.gen(e.gen).id;
    if (e.power == 0)
        return id;
    if (e.power == 1)
        return "u*" + id;
    return "u^" + std::to_string(e.power) + "*" + id;
}

// ---------------------------------------------------------------------------
// Validation

const char* rule_name(Rule r)
{
    switch (r) {
    case Rule::ZeroCoefficient: return "zero-coefficient";
    case Rule::Parity: return "parity";
    case Rule::FreeToTower: return "free-to-tower forbidden";
    case Rule::TowerToFree: return "tower-to-free forbidden";
    case Rule::TowerPower: return "tower-power";
    case Rule::DeltaSquared: return "delta-squared";
    case Rule::FixedSphere: return "fixed-sphere";
    case Rule::FreeTorsion: return "free-torsion";
    }
    return "?";
}

bool ValidationReport::has(Rule r) const
{
    return std::any_of(violations.begin(), violations.end(), [r](const Violation& v) { return v.rule == r; });
}

std::string ValidationReport::summary() const
{
    std::string s;
    for (const auto& v : violations) {
        if (!s.empty())
            s += "; ";
        s += rule_name(v.rule);
        s += ": ";
        s += v.detail;
    }
    return s;
}

std::vector<Violation> entry_violations(const Complex& c)
{
    std::vector<Violation> out;
    for (std::size_t s = 0; s < c.size(); ++s) {
        const auto& gs = c.gen(s);
        for (const auto& [t, coeff] : c.diff(s)) {
            const auto& gt = c.gen(t);
            std::string pair = gs.id + " -> " + gt.id;
            if (sgn(coeff) == 0)
                out.push_back({Rule::ZeroCoefficient, pair});
            auto j = c.entry_power(s, t);
            if (!j || *j < 0) {
                out.push_back({Rule::Parity, pair + " (degrees " + std::to_string(gs.degree) + ", " +
                                                 std::to_string(gt.degree) + ")"});
                continue;
            }
            if (gs.kind == GenKind::Free && gt.kind == GenKind::Tower && c.variance() == Variance::Admissible)
                out.push_back({Rule::FreeToTower, pair});
            if (gs.kind == GenKind::Tower && gt.kind == GenKind::Free && c.variance() == Variance::Coadmissible)
                out.push_back({Rule::TowerToFree, pair});
            if (gs.kind == GenKind::Tower && gt.kind == GenKind::Tower && *j != 0)
                out.push_back({Rule::TowerPower, pair + " has u-power " + std::to_string(*j)});
        }
    }
    return out;
}

namespace {

// Cohomology of the plain Z-complex spanned by the tower generators.
struct FixedCohomology {
    std::map<int, CokernelInvariants> nonzero;
};

IntMatrix fixed_matrix(const Complex& c, int n)
{
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c.gen(i).kind != GenKind::Tower)
            continue;
        if (c.gen(i).degree == n)
            rows.push_back(i);
        if (c.gen(i).degree == n + 1)
            cols.push_back(i);
    }
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < cols.size(); ++k) {
            auto it = c.diff(rows[r]).find(cols[k]);
            if (it != c.diff(rows[r]).end())
                m.at(r, k) = it->second;
        }
    return m;
}

FixedCohomology fixed_cohomology(const Complex& c)
{
    FixedCohomology out;
    if (!c.has_tower())
        return out;
    int lo = c.min_degree(), hi = c.d_max();
    for (int n = lo; n <= hi; ++n) {
        IntMatrix in = fixed_matrix(c, n - 1);
        IntMatrix outm = fixed_matrix(c, n);
        std::size_t dim = in.cols();
        if (dim == 0)
            continue;
        // H^n = ker(out) / im(in); ker has rank dim - rank(out).
        std::size_t rk_out = smith_normal_form(outm, {false, false, false}).rank();
        CokernelInvariants coker = cokernel_invariants(in.transposed());
        CokernelInvariants h;
        h.free_rank = dim - rk_out - (dim - coker.free_rank);
        h.torsion = coker.torsion;
        if (h.free_rank != 0 || !h.torsion.empty())
            out.nonzero[n] = h;
    }
    return out;
}

std::optional<int> sphere_degree(const FixedCohomology& f)
{
    if (f.nonzero.size() != 1)
        return std::nullopt;
    const auto& [n, h] = *f.nonzero.begin();
    if (h.free_rank == 1 && h.torsion.empty())
        return n;
    return std::nullopt;
}

}  // namespace

ValidationReport validate(const Complex& c)
{
    ValidationReport rep;
    rep.d_max = c.d_max();
    rep.violations = entry_violations(c);
    bool entries_ok = rep.violations.empty();

    for (std::size_t g = 0; g < c.size(); ++g) {
        std::map<std::size_t, BigInt> sq;
        for (const auto& [h, c1] : c.diff(g))
            for (const auto& [k, c2] : c.diff(h))
                sq[k] += c1 * c2;
        for (const auto& [k, v] : sq)
            if (sgn(v) != 0)
                rep.violations.push_back({Rule::DeltaSquared, "delta^2(" + c.gen(g).id + ") has " + v.get_str() +
                                                                  " on " + c.gen(k).id});
    }

    FixedCohomology fixed = fixed_cohomology(c);
    rep.ell = sphere_degree(fixed);
    if (!rep.ell && !c.fragment()) {
        std::string detail = "fixed part cohomology is not Z in a single degree:";
        if (fixed.nonzero.empty())
            detail += " it vanishes";
        for (const auto& [n, h] : fixed.nonzero) {
            detail += " H^" + std::to_string(n) + " rank " + std::to_string(h.free_rank);
            for (const auto& t : h.torsion)
                detail += " Z/" + t.get_str();
        }
        rep.violations.push_back({Rule::FixedSphere, detail});
    }

    if (entries_ok) {
        for (int n = rep.d_max + 1; n <= rep.d_max + 2; ++n) {
            IntMatrix in = c.cochain_matrix(n - 1, Part::Free);
            IntMatrix outm = c.cochain_matrix(n, Part::Free);
            std::size_t dim = in.cols();
            std::size_t rk_out = rank_over_q(outm);
            CokernelInvariants coker = cokernel_invariants(in.transposed());
            std::size_t free_rank = dim - rk_out - (dim - coker.free_rank);
            if (free_rank != 0 || !coker.torsion.empty())
                rep.violations.push_back({Rule::FreeTorsion, "free part has cohomology in degree " + std::to_string(n)});
        }
    }
    return rep;
}

Complex validated(Complex c, ErrorKind kind)
{
    ValidationReport rep = validate(c);
    if (!rep.admissible())
        throw Error(kind, rep.summary());
    c.set_ell(rep.ell);
    return c;
}

// ---------------------------------------------------------------------------
// Constructors

Complex sphere(int ell, int h)
{
    if (ell < 0 || h < 0)
        throw Error(ErrorKind::HypothesisViolation, "sphere needs ell >= 0 and h >= 0");
    Complex c;
    c.set_name("sphere(" + std::to_string(ell) + "," + std::to_string(h) + ")");
    c.add_generator("t", GenKind::Tower, ell);
    for (int i = 1; i <= h; ++i) {
        c.add_generator("x" + std::to_string(i), GenKind::Free, ell + 2 * i - 1);
        c.add_generator("y" + std::to_string(i), GenKind::Free, ell + 2 * i);
    }
    if (h >= 1)
        c.add_diff("t", "x1", 1);
    for (int i = 1; i <= h; ++i) {
        std::string y = "y" + std::to_string(i);
        c.add_diff(y, "x" + std::to_string(i), 1);
        if (i < h)
            c.add_diff(y, "x" + std::to_string(i + 1), 1);
    }
    return validated(std::move(c));
}

Complex free_summand(int n)
{
    if (n < 0)
        throw Error(ErrorKind::HypothesisViolation, "free summand needs n >= 0");
    Complex c;
    c.set_name("free(" + std::to_string(n) + ")");
    c.set_fragment(true);
    c.add_generator("xf", GenKind::Free, n);
    c.add_generator("yf", GenKind::Free, n + 1);
    c.add_diff("yf", "xf", 1);
    return validated(std::move(c));
}

Complex point()
{
    Complex c;
    c.set_name("point");
    c.set_fragment(true);
    return c;
}

Complex wedge(const Complex& a, const Complex& b)
{
    if (a.variance() != b.variance())
        throw Error(ErrorKind::Validation, "wedge of complexes with different variance");
    bool a_class = sphere_degree(fixed_cohomology(a)).has_value();
    bool b_class = sphere_degree(fixed_cohomology(b)).has_value();
    if (a_class && b_class)
        throw Error(ErrorKind::WedgeFixedPart, "both wedge summands carry a fixed sphere class");

    Complex c(a.variance());
    c.set_name("wedge(" + a.name() + "," + b.name() + ")");
    for (const auto& g : a.generators())
        c.add_generator(g.id, g.kind, g.degree);
    std::vector<std::size_t> remap;
    for (const auto& g : b.generators())
        remap.push_back(c.add_generator(unique_id(c, g.id), g.kind, g.degree));
    for (std::size_t s = 0; s < a.size(); ++s)
        for (const auto& [t, v] : a.diff(s))
            c.add_diff(s, t, v);
    for (std::size_t s = 0; s < b.size(); ++s)
        for (const auto& [t, v] : b.diff(s))
            c.add_diff(remap[s], remap[t], v);
    bool a_frag = a.fragment() && !a_class;
    bool b_frag = b.fragment() && !b_class;
    c.set_fragment(a_frag && b_frag);
    return validated(std::move(c), ErrorKind::WedgeFixedPart);
}

Complex smash(const Complex& a, const Complex& b)
{
    if (a.variance() != b.variance())
        throw Error(ErrorKind::SmashModel, "smash of complexes with different variance");
    Complex c(a.variance());
    c.set_name("smash(" + a.name() + "," + b.name() + ")");
    std::vector<std::size_t> idx(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            const auto& g = a.gen(i);
            const auto& h = b.gen(j);
            GenKind kind = (g.kind == GenKind::Tower && h.kind == GenKind::Tower) ? GenKind::Tower : GenKind::Free;
            idx[i * b.size() + j] = c.add_generator(unique_id(c, g.id + "." + h.id), kind, g.degree + h.degree);
        }
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::size_t src = idx[i * b.size() + j];
            for (const auto& [t, v] : a.diff(i))
                c.add_diff(src, idx[t * b.size() + j], v);
            int sign = (a.gen(i).degree % 2 == 0) ? 1 : -1;
            for (const auto& [t, v] : b.diff(j))
                c.add_diff(src, idx[i * b.size() + t], sign * v);
        }
    c.set_fragment(a.fragment() || b.fragment());
    return validated(std::move(c), ErrorKind::SmashModel);
}

Complex attach_free_cell(const Complex& a, const AttachmentCochain& att)
{
    int n = att.dim;
    if (n < 2)
        throw Error(ErrorKind::HypothesisViolation, "attachment dimension must be at least 2, got " + std::to_string(n));
    if (a.variance() != Variance::Admissible)
        throw Error(ErrorKind::Validation, "attachment needs an admissible complex");

    Complex c;
    c.set_name(a.name().empty() ? std::string("attach") : "attach(" + a.name() + ")");
    for (const auto& g : a.generators())
        c.add_generator(g.id, g.kind, g.degree);
    for (std::size_t s = 0; s < a.size(); ++s)
        for (const auto& [t, v] : a.diff(s))
            c.add_diff(s, t, v);
    std::size_t P = c.add_generator(unique_id(c, "P"), GenKind::Free, n + 1);
    std::size_t Q = c.add_generator(unique_id(c, "Q"), GenKind::Free, n + 2);
    c.add_diff(Q, P, 1);

    std::vector<BigInt> cg(a.size());
    for (const auto& [id, v] : att.coeffs) {
        auto g = a.index_of(id);
        if (!g)
            throw Error(ErrorKind::Validation, "attachment targets unknown generator '" + id + "'");
        int d = a.gen(*g).degree;
        if (d < n || !same_parity(d, n))
            throw Error(ErrorKind::Validation, "attachment coefficient on '" + id + "' (degree " + std::to_string(d) +
                                                   ") is illegal for a cell of dimension " + std::to_string(n));
        cg[*g] += v;
    }
    for (std::size_t g = 0; g < a.size(); ++g)
        c.add_diff(g, P, cg[g]);

    // delta^2(w) picks up s_w u^J P; cancel it with -s_w u^(J-1) Q.
    for (std::size_t w = 0; w < a.size(); ++w) {
        BigInt s = 0;
        for (const auto& [g, v] : a.diff(w))
            s += v * cg[g];
        if (sgn(s) == 0)
            continue;
        int J = (a.gen(w).degree + 1 - n) / 2;
        if (J < 1)
            throw Error(ErrorKind::AttachmentNotClosed,
                        "obstruction " + s.get_str() + "*P on delta^2(" + a.gen(w).id + ") is not divisible by u");
        c.add_diff(w, Q, -s);
    }
    c.set_fragment(a.fragment());
    return validated(std::move(c));
}

Complex xab(int ell, int h, const BigInt& a, const BigInt& b)
{
    if (ell < 0 || h < 0 || ell + 2 * h < 2)
        throw Error(ErrorKind::HypothesisViolation, "xab needs ell + 2h >= 2");
    int n = ell + 2 * h;
    Complex base = wedge(sphere(ell, h), free_summand(n));
    AttachmentCochain att;
    att.dim = n;
    att.coeffs.push_back({h == 0 ? std::string("t") : "y" + std::to_string(h), a});
    att.coeffs.push_back({"xf", b});
    Complex c = attach_free_cell(base, att);
    c.set_name("xab(" + std::to_string(ell) + "," + std::to_string(h) + "," + a.get_str() + "," + b.get_str() + ")");
    return c;
}

// ---------------------------------------------------------------------------
// Cochain maps

CochainMap::CochainMap(std::shared_ptr<const Complex> source, std::shared_ptr<const Complex> target)
    : source_(std::move(source)), target_(std::move(target)), rows_(source_->size())
{
}

CochainMap CochainMap::identity(std::shared_ptr<const Complex> c)
{
    CochainMap f(c, c);
    for (std::size_t i = 0; i < c->size(); ++i)
        f.set(i, i, 1);
    return f;
}

void CochainMap::set(const std::string& source_id, const std::string& target_id, const BigInt& coeff)
{
    auto s = source_->index_of(source_id);
    auto t = target_->index_of(target_id);
    if (!s || !t)
        throw Error(ErrorKind::Validation, "cochain map names unknown generator '" + (s ? target_id : source_id) + "'");
    set(*s, *t, coeff);
}

void CochainMap::set(std::size_t source, std::size_t target, const BigInt& coeff)
{
    if (sgn(coeff) == 0)
        rows_[source].erase(target);
    else
        rows_[source][target] = coeff;
}

std::vector<std::string> CochainMap::problems() const
{
    std::vector<std::string> out;
    const Complex& S = *source_;
    const Complex& T = *target_;
    for (std::size_t g = 0; g < S.size(); ++g)
        for (const auto& [t, v] : rows_[g]) {
            const auto& gs = S.gen(g);
            const auto& gt = T.gen(t);
            std::string pair = gs.id + " -> " + gt.id;
            int d = gs.degree - gt.degree;
            if (d < 0 || d % 2 != 0)
                out.push_back("parity: " + pair);
            else if (gs.kind == GenKind::Free && gt.kind == GenKind::Tower)
                out.push_back("free-to-tower forbidden: " + pair);
            else if (gs.kind == GenKind::Tower && gt.kind == GenKind::Tower && d != 0)
                out.push_back("tower-power: " + pair);
        }
    if (!out.empty())
        return out;
    for (std::size_t g = 0; g < S.size(); ++g) {
        std::map<std::size_t, BigInt> lhs, rhs;
        for (const auto& [h, c1] : S.diff(g))
            for (const auto& [k, c2] : rows_[h])
                lhs[k] += c1 * c2;
        for (const auto& [k, c1] : rows_[g])
            for (const auto& [m, c2] : T.diff(k))
                rhs[m] += c1 * c2;
        std::erase_if(lhs, [](const auto& kv) { return sgn(kv.second) == 0; });
        std::erase_if(rhs, [](const auto& kv) { return sgn(kv.second) == 0; });
        if (lhs != rhs)
            out.push_back("does not commute with delta at " + S.gen(g).id);
    }
    return out;
}

CochainMap compose(const CochainMap& outer, const CochainMap& inner)
{
    if (inner.target().fingerprint() != outer.source().fingerprint())
        throw Error(ErrorKind::Validation, "cochain maps are not composable");
    CochainMap f(inner.source_ptr(), outer.target_ptr());
    for (std::size_t g = 0; g < inner.source().size(); ++g) {
        std::map<std::size_t, BigInt> acc;
        for (const auto& [k, c1] : inner.image(g))
            for (const auto& [m, c2] : outer.image(k))
                acc[m] += c1 * c2;
        for (const auto& [m, v] : acc)
            f.set(g, m, v);
    }
    return f;
}

std::vector<BigInt> fixed_class_cocycle(const Complex& c)
{
    if (!c.ell())
        throw Error(ErrorKind::Validation, "complex has no fixed sphere");
    int ell = *c.ell();
    CohomologyPresentation p = present_cohomology(c.cochain_matrix(ell - 1, Part::Tower), c.cochain_matrix(ell, Part::Tower));
    if (p.free_rank() != 1)
        throw Error(ErrorKind::Internal, "fixed cohomology at degree ell is not rank one");
    std::vector<BigInt> z = p.free_generator(0);
    auto first = std::find_if(z.begin(), z.end(), [](const BigInt& x) { return sgn(x) != 0; });
    if (first != z.end() && sgn(*first) < 0)
        for (auto& x : z)
            x = -x;
    return z;
}

namespace {

std::vector<BigInt> shift_by_u(const Complex& c, const std::vector<BigInt>& z, int from, int k, Part part)
{
    auto src = c.basis(from, part);
    auto dst = c.basis(from + 2 * k, part);
    auto pos = positions(c, dst);
    std::vector<BigInt> out(dst.size());
    for (std::size_t i = 0; i < src.size(); ++i)
        out[static_cast<std::size_t>(pos[src[i].gen])] = z[i];
    return out;
}

}  // namespace

std::vector<BigInt> fixed_functional(const Complex& c, int k)
{
    if (!c.ell())
        throw Error(ErrorKind::Validation, "complex has no fixed sphere");
    int N = *c.ell() + 2 * k;
    CohomologyPresentation p = present_cohomology(c.cochain_matrix(N - 1, Part::Tower), c.cochain_matrix(N, Part::Tower));
    if (p.free_rank() != 1 || !p.torsion().empty())
        throw Error(ErrorKind::Internal, "fixed cohomology at degree " + std::to_string(N) + " is not Z");
    std::vector<BigInt> w = p.free_functional(0);
    BigInt v = dot(shift_by_u(c, fixed_class_cocycle(c), *c.ell(), k, Part::Tower), w);
    if (abs(v) != 1)
        throw Error(ErrorKind::Internal, "u-power of the fixed class is not a generator");
    if (sgn(v) < 0)
        for (auto& x : w)
            x = -x;
    return w;
}

BigInt fixed_degree(const CochainMap& f)
{
    const Complex& S = f.source();
    const Complex& T = f.target();
    if (!S.ell() || !T.ell() || *S.ell() != *T.ell())
        throw Error(ErrorKind::FixedSphereMismatch, "cochain map between complexes with different fixed spheres");
    int ell = *S.ell();
    std::vector<BigInt> z = fixed_class_cocycle(S);
    auto sb = S.basis(ell, Part::Tower);
    auto tb = T.basis(ell, Part::Tower);
    auto pos = positions(T, tb);
    std::vector<BigInt> image(tb.size());
    for (std::size_t i = 0; i < sb.size(); ++i) {
        if (sgn(z[i]) == 0)
            continue;
        for (const auto& [t, v] : f.image(sb[i].gen)) {
            if (T.gen(t).kind != GenKind::Tower)
                continue;
            image[static_cast<std::size_t>(pos[t])] += z[i] * v;
        }
    }
    return dot(image, fixed_functional(T, 0));
}

}  // namespace swfh
