#include "swfh/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swfh/bcx.hpp"
#include "swfh/cohomology.hpp"
#include "swfh/corpus.hpp"
#include "swfh/dual.hpp"
#include "swfh/hinv.hpp"

namespace swfh {

int exit_code(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::Syntax: return 3;
    case ErrorKind::Validation: return 4;
    case ErrorKind::AttachmentNotClosed: return 5;
    case ErrorKind::WedgeFixedPart: return 6;
    case ErrorKind::SmashModel: return 7;
    case ErrorKind::InvalidRing: return 8;
    case ErrorKind::HypothesisViolation: return 9;
    case ErrorKind::FixedSphereMismatch: return 10;
    case ErrorKind::ExperimentalModule: return 11;
    case ErrorKind::Io: return 12;
    case ErrorKind::Internal: return 13;
    case ErrorKind::ScanCap: return 14;
    }
    return 13;
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : s_(text) {}

    Complex parse()
    {
        Complex c = expr();
        skip();
        if (pos_ != s_.size())
            fail("trailing input");
        return c;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw Error(ErrorKind::Syntax, "expression: " + msg + " at column " + std::to_string(pos_ + 1));
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char ch)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == ch) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char ch)
    {
        if (!accept(ch))
            fail(std::string("expected '") + ch + "'");
    }

    std::string ident()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '.' || s_[pos_] == '*'))
            ++pos_;
        if (start == pos_)
            fail("expected a name");
        return s_.substr(start, pos_ - start);
    }

    BigInt integer()
    {
        skip();
        std::size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+'))
            ++pos_;
        std::size_t digits = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (digits == pos_)
            fail("expected an integer");
        std::string t = s_.substr(start, pos_ - start);
        return BigInt(t[0] == '+' ? t.substr(1) : t);
    }

    int small_int()
    {
        BigInt v = integer();
        if (!v.fits_sint_p() || abs(v) > 100000)
            fail("integer out of range");
        return static_cast<int>(v.get_si());
    }

    Complex expr()
    {
        std::string name = ident();
        if (name == "point") {
            if (accept('('))
                expect(')');
            return point();
        }
        expect('(');
        Complex c;
        if (name == "sphere") {
            int l = small_int();
            expect(',');
            int h = small_int();
            c = sphere(l, h);
        } else if (name == "free") {
            c = free_summand(small_int());
        } else if (name == "wedge" || name == "smash") {
            Complex a = expr();
            expect(',');
            Complex b = expr();
            c = name == "wedge" ? wedge(a, b) : smash(a, b);
        } else if (name == "suspend") {
            Complex a = expr();
            expect(',');
            int l = small_int();
            expect(',');
            int m = small_int();
            c = smash(a, sphere(l, m));
        } else if (name == "xab") {
            int l = small_int();
            expect(',');
            int h = small_int();
            expect(',');
            BigInt a = integer();
            expect(',');
            BigInt b = integer();
            c = xab(l, h, a, b);
        } else if (name == "attach") {
            Complex base = expr();
            expect(',');
            AttachmentCochain att;
            att.dim = small_int();
            while (accept(',')) {
                std::string id = ident();
                expect('=');
                att.coeffs.push_back({id, integer()});
            }
            c = attach_free_cell(base, att);
        } else if (name == "load") {
            skip();
            std::string path;
            if (accept('"')) {
                std::size_t end = s_.find('"', pos_);
                if (end == std::string::npos)
                    fail("unterminated string");
                path = s_.substr(pos_, end - pos_);
                pos_ = end + 1;
            } else {
                std::size_t end = s_.find(')', pos_);
                if (end == std::string::npos)
                    fail("expected ')'");
                path = s_.substr(pos_, end - pos_);
                while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back())))
                    path.pop_back();
                pos_ = end;
            }
            c = load_bcx(path).complex;
        } else {
            fail("unknown constructor '" + name + "'");
        }
        expect(')');
        return c;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

Complex evaluate_expression(const std::string& text) { return ExprParser(text).parse(); }

Complex load_input(const std::string& arg)
{
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec))
        return load_bcx(arg).complex;
    if (arg.find('(') == std::string::npos && (arg.find('/') != std::string::npos || arg.ends_with(".bcx")))
        throw Error(ErrorKind::Io, "no such file '" + arg + "'");
    return evaluate_expression(arg);
}

// ---------------------------------------------------------------------------
// Commands

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_primes(const std::vector<std::uint64_t>& ps)
{
    if (ps.empty())
        return "-";
    std::string s;
    for (auto p : ps)
        s += (s.empty() ? "" : ",") + std::to_string(p);
    return s;
}

struct Sink {
    std::ostream& out;
    std::string path;
    std::ostringstream buffer;

    // Output is held back until the command succeeds.
    std::ostream& stream() { return buffer; }
    void flush()
    {
        if (path.empty()) {
            out << buffer.str();
            return;
        }
        std::ofstream f(path);
        if (!f)
            throw Error(ErrorKind::Io, "cannot write '" + path + "'");
        f << buffer.str();
    }
};

HOptions options_from(const std::optional<int>& max_degree)
{
    HOptions opt;
    opt.max_degree = max_degree;
    return opt;
}

void print_cohomology(std::ostream& os, const Complex& c, const Ring& ring, const HOptions& opt)
{
    CohomologyEngine e(c);
    int top = e.stabilization_bound() + 3;
    if (opt.max_degree) {
        if (*opt.max_degree <= e.stabilization_bound())
            throw Error(ErrorKind::ScanCap, "--max-degree " + std::to_string(*opt.max_degree) +
                                                " does not exceed the stabilization bound " +
                                                std::to_string(e.stabilization_bound()));
        top = *opt.max_degree;
    }
    os << "name\t" << c.name() << '\n';
    os << "ring\t" << ring.name() << '\n';
    os << "stabilization_bound\t" << e.stabilization_bound() << '\n';
    os << "degree\tgroup\n";
    for (int n = std::min(c.min_degree(), 0); n <= top; ++n)
        os << n << '\t' << e.cohomology_at(n, ring).to_string() << '\n';
    if (c.ell()) {
        os << "k\tdegree\trestriction\n";
        int limit = scan_limit(e, opt);
        for (int k = 0; k <= limit; ++k) {
            RestrictionImage img = e.restriction_image(k, ring);
            std::string v = ring.is_field() ? (img.nonzero() ? "full" : "zero") : img.index.get_str();
            os << k << '\t' << *c.ell() + 2 * k << '\t' << v << '\n';
        }
    }
}

void print_hinv(std::ostream& os, const Complex& c, const std::optional<Ring>& ring, const HOptions& opt,
                const std::optional<Rational>& manifold)
{
    CohomologyEngine e(c);
    os << "name\t" << c.name() << '\n';
    os << "ell\t" << e.ell() << '\n';
    os << "stabilization_bound\t" << e.stabilization_bound() << '\n';
    if (ring) {
        HPair h = h_invariants(e, *ring, opt);
        os << "ring\th_weak\th_strong\n";
        os << ring->name() << '\t' << h.weak << '\t' << h.strong << '\n';
        return;
    }
    HReport r = prime_profile(e, opt);
    os << "ring\th_weak\th_strong\n";
    os << "z\t" << r.z.weak << '\t' << r.z.strong << '\n';
    os << "q\t" << r.q.weak << '\t' << r.q.strong << '\n';
    for (const auto& [p, pair] : r.fields)
        os << "f:" << p << '\t' << pair.weak << '\t' << pair.strong << '\n';
    os << "f:other\t" << r.h0() << '\t' << r.h0() << '\n';
    os << "candidate_primes\t" << join_primes(r.candidates) << '\n';
    os << "exceptional_primes\t" << join_primes(r.exceptional_primes) << '\n';
    os << "jump_order\t" << r.jump_order.get_str() << '\n';
    std::string idx;
    for (const auto& m : r.restriction_indices)
        idx += (idx.empty() ? "" : ",") + m.get_str();
    os << "restriction_indices\t" << idx << '\n';
    os << "weak_equals_h0\t" << yes_no(r.weak_equals_h0) << '\n';
    os << "strong_equals_max_p\t" << yes_no(r.strong_equals_max_p) << '\n';
    os << "jump_primes_consistent\t" << yes_no(r.jump_primes_consistent) << '\n';
    if (manifold) {
        ManifoldReport m = manifold_report(c, *manifold);
        os << "manifold_n\t" << format_rational(m.n) << '\n';
        os << "manifold_ring\th_weak\th_strong\n";
        os << "z\t" << format_rational(m.z_weak) << '\t' << format_rational(m.z_strong) << '\n';
        os << "q\t" << format_rational(m.q_weak) << '\t' << format_rational(m.q_strong) << '\n';
        for (const auto& [p, v] : m.fields)
            os << "f:" << p << '\t' << format_rational(v) << '\t' << format_rational(v) << '\n';
        os << "f:other\t" << format_rational(m.other_primes) << '\t' << format_rational(m.other_primes) << '\n';
        os << "d\t" << format_rational(m.d) << '\n';
        os << "Fr\t" << format_rational(m.fr) << '\n';
        os << "h_KM\t" << format_rational(m.h_km) << (m.h_km_from_dual ? "\tdual" : "\th0") << '\n';
    }
}

void print_duality(std::ostream& os, const Complex& c)
{
    DualityReport d = duality_check(c);
    os << "name\t" << c.name() << '\n';
    os << "calibration_offset\t" << dual_calibration_offset() << '\n';
    os << "ring\th_coh\th_hom_weak\th_hom_strong\th_dual\tidentity\tsum_zero\n";
    for (const auto& r : d.fields)
        os << r.ring.name() << '\t' << r.cohomological << '\t' << r.homological.weak << '\t' << r.homological.strong
           << '\t' << r.dual_cohomological << '\t' << yes_no(r.identity) << '\t' << yes_no(r.sum_zero) << '\n';
    os << "z_hom\t" << d.z_homological.weak << '\t' << d.z_homological.strong << '\n';
    os << "chain\t" << d.z_homological.strong << " <= " << d.z_homological.weak << " = " << d.h0
       << " <= " << d.z_strong << '\t' << yes_no(d.chain) << '\n';
    os << "z_hom_strong_vs_min_p\t" << d.z_homological.strong << '\t' << d.min_p << '\t'
       << (d.strong_equals_min_p ? "agree" : "differ") << '\n';
}

std::set<std::string> parse_suites(const std::string& list)
{
    std::set<std::string> out;
    if (list.empty() || list == "all") {
        out.insert(property_suites().begin(), property_suites().end());
        return out;
    }
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.insert(item);
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Borel cohomology and h-invariants of circle complexes"};
    app.name("swfh");
    app.require_subcommand(1);

    std::string input, input2, ring_text, output, manifold, suite_text, expression;
    std::optional<int> max_degree;
    std::vector<std::string> attach_terms;
    std::vector<std::string> inputs;
    int attach_dim = 2, susp_l = 0, susp_m = 1;
    bool check = false;

    auto add_output = [&](CLI::App* sub) { sub->add_option("--output,-o", output, "Write to a file instead of stdout"); };
    auto add_ring = [&](CLI::App* sub) { sub->add_option("--ring,-r", ring_text, "z, q or f:<p>"); };
    auto add_max = [&](CLI::App* sub) {
        sub->add_option("--max-degree", max_degree, "Scan cap; must exceed the stabilization bound");
    };

    auto* build = app.add_subcommand("build", "Evaluate a construction expression to BCX");
    build->add_option("expression", expression)->required();
    add_output(build);

    auto* coh = app.add_subcommand("cohomology", "Per-degree cohomology groups");
    coh->add_option("input", input, "BCX file or expression")->required();
    add_ring(coh);
    add_max(coh);
    add_output(coh);

    auto* hinv = app.add_subcommand("hinv", "h-invariants and prime profile");
    hinv->add_option("input", input, "BCX file or expression")->required();
    add_ring(hinv);
    add_max(hinv);
    hinv->add_option("--manifold", manifold, "n=p/q formal desuspension");
    add_output(hinv);

    auto* sm = app.add_subcommand("smash", "Smash product of two complexes");
    sm->add_option("a", input)->required();
    sm->add_option("b", input2)->required();
    add_output(sm);

    auto* wd = app.add_subcommand("wedge", "Wedge of two complexes");
    wd->add_option("a", input)->required();
    wd->add_option("b", input2)->required();
    add_output(wd);

    auto* sus = app.add_subcommand("suspend", "Smash with sphere(l,m)");
    sus->add_option("input", input)->required();
    sus->add_option("l", susp_l, "Trivial suspension degree")->check(CLI::NonNegativeNumber);
    sus->add_option("m", susp_m, "Complex suspension degree")->check(CLI::NonNegativeNumber);
    add_output(sus);

    auto* att = app.add_subcommand("attach", "Attach a free cell");
    att->add_option("input", input)->required();
    att->add_option("n", attach_dim, "Cell dimension (>= 2)")->required();
    att->add_option("coefficients", attach_terms, "id=coeff pairs");
    add_output(att);

    auto* du = app.add_subcommand("dual", "Dual complex, or the duality report with --check");
    du->add_option("input", input)->required();
    du->add_flag("--check", check, "Print homological invariants and duality checks");
    add_output(du);

    auto* ver = app.add_subcommand("verify", "Run property suites");
    ver->add_option("inputs", inputs, "Extra BCX files or expressions");
    ver->add_option("--suite", suite_text, "Comma-separated suites (default all)");
    add_output(ver);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return ExitUsage;
    }

    Sink sink{out, output, {}};
    try {
        std::ostream& os = sink.stream();
        std::optional<Ring> ring;
        if (!ring_text.empty())
            ring = Ring::parse(ring_text);
        HOptions opt = options_from(max_degree);
        int status = ExitOk;

        if (build->parsed()) {
            os << serialize_bcx(evaluate_expression(expression));
        } else if (coh->parsed()) {
            print_cohomology(os, load_input(input), ring.value_or(Ring::integers()), opt);
        } else if (hinv->parsed()) {
            std::optional<Rational> n;
            if (!manifold.empty()) {
                if (manifold.rfind("n=", 0) != 0)
                    throw Error(ErrorKind::Syntax, "--manifold expects n=p/q");
                n = parse_rational(manifold.substr(2));
            }
            print_hinv(os, load_input(input), ring, opt, n);
        } else if (sm->parsed()) {
            os << serialize_bcx(smash(load_input(input), load_input(input2)));
        } else if (wd->parsed()) {
            os << serialize_bcx(wedge(load_input(input), load_input(input2)));
        } else if (sus->parsed()) {
            os << serialize_bcx(smash(load_input(input), sphere(susp_l, susp_m)));
        } else if (att->parsed()) {
            AttachmentCochain ac;
            ac.dim = attach_dim;
            for (const auto& term : attach_terms) {
                auto eq = term.find('=');
                if (eq == std::string::npos || eq == 0)
                    throw Error(ErrorKind::Syntax, "attachment term '" + term + "' is not id=coeff");
                std::string coeff = term.substr(eq + 1);
                if (coeff.empty() || coeff.find_first_not_of("+-0123456789") != std::string::npos ||
                    coeff.find_first_of("0123456789") == std::string::npos)
                    throw Error(ErrorKind::Syntax, "bad coefficient in '" + term + "'");
                ac.coeffs.push_back({term.substr(0, eq), BigInt(coeff[0] == '+' ? coeff.substr(1) : coeff)});
            }
            os << serialize_bcx(attach_free_cell(load_input(input), ac));
        } else if (du->parsed()) {
            Complex c = load_input(input);
            if (check) {
                print_duality(os, c);
            } else {
                os << serialize_bcx(dualize(c));
            }
        } else if (ver->parsed()) {
            std::vector<Complex> complexes = bundled_corpus();
            for (const auto& in : inputs)
                complexes.push_back(load_input(in));
            PropertyReport rep = verify_properties(complexes, bundled_maps(), parse_suites(suite_text));
            std::size_t passed = 0;
            for (const auto& r : rep.results) {
                os << (r.pass ? "PASS" : "FAIL") << '\t' << r.suite << '\t' << r.subject << '\t' << r.detail << '\n';
                passed += r.pass ? 1 : 0;
            }
            os << "summary\t" << passed << " passed\t" << rep.results.size() - passed << " failed\n";
            if (!rep.passed())
                status = ExitPropertyFail;
        }
        sink.flush();
        return status;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "error (internal): " << e.what() << '\n';
        return exit_code(ErrorKind::Internal);
    }
}

}  // namespace swfh
