#include "swfh/dual.hpp"

#include <algorithm>

#include "swfh/cohomology.hpp"
#include "swfh/error.hpp"

namespace swfh {

Complex dualize(const Complex& c)
{
    Complex d(c.variance() == Variance::Admissible ? Variance::Coadmissible : Variance::Admissible);
    d.set_name(c.name().empty() ? std::string("dual") : "dual(" + c.name() + ")");
    for (const auto& g : c.generators()) {
        std::string id = g.id;
        if (id.size() > 1 && id.back() == '*')
            id.pop_back();
        else
            id += "*";
        d.add_generator(id, g.kind, -g.degree);
    }
    for (std::size_t s = 0; s < c.size(); ++s)
        for (const auto& [t, v] : c.diff(s)) {
            int sign = (c.gen(t).degree % 2 == 0) ? -1 : 1;
            d.add_diff(t, s, sign * v);
        }
    d.set_fragment(c.fragment());
    return validated(std::move(d));
}

namespace {

BigInt gcd_of(const BigInt& a, const BigInt& b)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Index of the image of H^N(D) in its localization, which is identified with
// H^{N'}(D) for the first stable N' of the same parity.
BigInt localization_index(const CohomologyEngine& e, int N, const Ring& ring)
{
    int stable = e.complex().d_max() + 1;
    int target = N >= stable ? N : N + 2 * ((stable - N + 1) / 2);
    int r = (target - N) / 2;
    if (ring.is_field())
        return e.u_rank(N, r, ring) > 0 ? 1 : 0;
    CohomologyPresentation p = present_cohomology(e.cochain_matrix(target - 1), e.cochain_matrix(target));
    if (p.free_rank() != 1 || !p.torsion().empty())
        throw Error(ErrorKind::ExperimentalModule, "dual complex is not Z in stable degree " + std::to_string(target));
    std::vector<BigInt> w = p.free_functional(0);
    IntMatrix pushed = left_kernel(e.cochain_matrix(N)) * e.u_matrix(N, r);
    BigInt m = 0;
    for (std::size_t i = 0; i < pushed.rows(); ++i)
        m = gcd_of(m, dot(pushed.row(i), w));
    return m;
}

HPair raw_from_dual(const Complex& c, const Complex& d, const Ring& ring)
{
    if (!c.ell())
        throw Error(ErrorKind::Validation, "complex has no fixed sphere");
    int ell = *c.ell();
    CohomologyEngine e(d);
    int stable = d.d_max() + 1;
    int start = -c.d_max() - 2;
    if (((start + ell) % 2) != 0)
        --start;
    std::optional<int> weak_n, strong_n;
    for (int N = start; N <= stable + 1 && !strong_n; N += 2) {
        BigInt m = localization_index(e, N, ring);
        if (!weak_n && sgn(m) != 0)
            weak_n = N;
        if (m == 1)
            strong_n = N;
    }
    if (!weak_n || !strong_n)
        throw Error(ErrorKind::ExperimentalModule, "localization never became surjective");
    return {(-*weak_n - ell) / 2, (-*strong_n - ell) / 2};
}

}  // namespace

HPair homological_h_raw(const Complex& c, const Ring& ring) { return raw_from_dual(c, dualize(c), ring); }

int dual_calibration_offset()
{
    static const int offset = [] {
        std::optional<int> found;
        const Ring rings[] = {Ring::integers(), Ring::rationals(), Ring::prime_field(2), Ring::prime_field(3)};
        for (int ell = 0; ell <= 4; ++ell)
            for (int h = 0; h <= 4; ++h) {
                Complex s = sphere(ell, h);
                Complex d = dualize(s);
                for (const auto& ring : rings) {
                    HPair raw = raw_from_dual(s, d, ring);
                    for (int v : {h - raw.weak, h - raw.strong}) {
                        if (!found)
                            found = v;
                        else if (*found != v)
                            throw Error(ErrorKind::ExperimentalModule,
                                        "dual calibration is not constant on spheres (sphere(" + std::to_string(ell) +
                                            "," + std::to_string(h) + ") over " + ring.name() + ")");
                    }
                }
            }
        return *found;
    }();
    return offset;
}

HPair homological_h(const Complex& c, const Ring& ring)
{
    int off = dual_calibration_offset();
    HPair raw = homological_h_raw(c, ring);
    return {raw.weak + off, raw.strong + off};
}

int dual_cohomological_h(const Complex& c, const Ring& field)
{
    if (!field.is_field())
        throw Error(ErrorKind::InvalidRing, "dual cohomological h needs a field");
    Complex d = dualize(c);
    TowerDecomposition td = CohomologyEngine(d).tower_decomposition(field);
    int ell = *c.ell();
    return (td.infinite_start + ell) / 2;
}

bool DualityReport::passed() const
{
    return chain && std::all_of(fields.begin(), fields.end(), [](const DualityFieldRow& r) { return r.identity && r.sum_zero; });
}

DualityReport duality_check(const Complex& c)
{
    int off = dual_calibration_offset();
    HReport rep = prime_profile(c);
    DualityReport out;
    std::vector<Ring> rings{Ring::rationals()};
    for (const auto& [p, pair] : rep.fields)
        rings.push_back(Ring::prime_field(p));
    for (const auto& ring : rings) {
        DualityFieldRow row;
        row.ring = ring;
        row.cohomological = ring.kind() == Ring::Kind::Rationals ? rep.q.weak : rep.fields.at(ring.characteristic()).weak;
        row.homological = homological_h(c, ring);
        row.dual_cohomological = dual_cohomological_h(c, ring);
        row.identity = row.homological.weak == row.cohomological && row.homological.strong == row.cohomological;
        row.sum_zero = row.cohomological + row.dual_cohomological + off == 0;
        out.fields.push_back(row);
    }
    out.z_homological = homological_h(c, Ring::integers());
    out.h0 = rep.h0();
    out.z_strong = rep.z.strong;
    out.min_p = rep.h0();
    for (const auto& [p, pair] : rep.fields)
        out.min_p = std::min(out.min_p, pair.weak);
    out.chain = out.z_homological.strong <= out.z_homological.weak && out.z_homological.weak == out.h0 &&
                out.h0 <= out.z_strong;
    out.strong_equals_min_p = out.z_homological.strong == out.min_p;
    return out;
}

}  // namespace swfh
