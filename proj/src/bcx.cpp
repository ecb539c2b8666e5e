#include "swfh/bcx.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "swfh/error.hpp"
#include "swfh/hinv.hpp"

namespace swfh {

namespace {

const char* kHeader = "bcx 1 koszul-left";

std::vector<std::string> split_words(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> words;
    std::string w;
    while (is >> w)
        words.push_back(w);
    return words;
}

bool parse_int(const std::string& s, BigInt& out)
{
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size())
        return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9')
            return false;
    out = BigInt(s[0] == '+' ? s.substr(1) : s);
    return true;
}

}  // namespace

BcxDocument parse_bcx(const std::string& text)
{
    BcxDocument doc;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool header = false;
    bool any_diff = false;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto fail = [&](ErrorKind kind, const std::string& msg) {
        return Error(kind, "line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        auto words = split_words(line);
        if (words.empty())
            continue;
        if (!header) {
            std::string joined;
            for (const auto& w : words)
                joined += (joined.empty() ? "" : " ") + w;
            if (joined != kHeader)
                throw fail(ErrorKind::Syntax, "expected header '" + std::string(kHeader) + "'");
            header = true;
            continue;
        }
        const std::string& kw = words[0];
        if (kw == "meta") {
            if (words.size() < 3)
                throw fail(ErrorKind::Syntax, "meta needs a key and a value");
            const std::string& key = words[1];
            std::istringstream rest(line);
            std::string skip, value;
            rest >> skip >> skip;
            std::getline(rest, value);
            value = value.substr(value.find_first_not_of(" \t"));
            value = value.substr(0, value.find_last_not_of(" \t\r") + 1);
            if (key == "name")
                doc.complex.set_name(value);
            else if (key == "n")
                try {
                    doc.n = parse_rational(value);
                } catch (const Error& e) {
                    throw fail(ErrorKind::Syntax, e.what());
                }
            else if (key == "fragment") {
                if (value != "0" && value != "1")
                    throw fail(ErrorKind::Syntax, "fragment must be 0 or 1");
                doc.complex.set_fragment(value == "1");
            } else if (key == "variance") {
                if (any_diff || doc.complex.size() > 0)
                    throw fail(ErrorKind::Syntax, "variance must precede generators");
                if (value != "admissible" && value != "coadmissible")
                    throw fail(ErrorKind::Syntax, "variance must be admissible or coadmissible");
                Complex c(value == "admissible" ? Variance::Admissible : Variance::Coadmissible);
                c.set_name(doc.complex.name());
                c.set_fragment(doc.complex.fragment());
                doc.complex = c;
            } else
                throw fail(ErrorKind::Syntax, "unknown meta key '" + key + "'");
        } else if (kw == "generator") {
            if (words.size() != 4)
                throw fail(ErrorKind::Syntax, "expected 'generator <id> <tower|free> <degree>'");
            GenKind kind;
            if (words[2] == "tower")
                kind = GenKind::Tower;
            else if (words[2] == "free")
                kind = GenKind::Free;
            else
                throw fail(ErrorKind::Syntax, "generator kind must be tower or free");
            BigInt deg;
            if (!parse_int(words[3], deg) || !deg.fits_sint_p())
                throw fail(ErrorKind::Syntax, "bad degree '" + words[3] + "'");
            if (doc.complex.has_id(words[1]))
                throw fail(ErrorKind::Validation, "duplicate generator id '" + words[1] + "'");
            doc.complex.add_generator(words[1], kind, static_cast<int>(deg.get_si()));
        } else if (kw == "diff") {
            if (words.size() != 4)
                throw fail(ErrorKind::Syntax, "expected 'diff <source> <target> <coeff>'");
            auto s = doc.complex.index_of(words[1]);
            auto t = doc.complex.index_of(words[2]);
            if (!s)
                throw fail(ErrorKind::Validation, "unknown generator '" + words[1] + "'");
            if (!t)
                throw fail(ErrorKind::Validation, "unknown generator '" + words[2] + "'");
            BigInt coeff;
            if (!parse_int(words[3], coeff))
                throw fail(ErrorKind::Syntax, "bad coefficient '" + words[3] + "'");
            if (sgn(coeff) == 0)
                throw fail(ErrorKind::Validation, "zero coefficient on " + words[1] + " -> " + words[2]);
            if (!seen.insert({*s, *t}).second)
                throw fail(ErrorKind::Validation, "duplicate diff entry " + words[1] + " -> " + words[2]);
            Complex probe(doc.complex.variance());
            probe.add_generator("s", doc.complex.gen(*s).kind, doc.complex.gen(*s).degree);
            probe.add_generator(*s == *t ? "s2" : "t", doc.complex.gen(*t).kind, doc.complex.gen(*t).degree);
            probe.add_diff(0, 1, coeff);
            auto bad = entry_violations(probe);
            if (!bad.empty())
                throw fail(ErrorKind::Validation, std::string(rule_name(bad.front().rule)) + ": " + words[1] + " -> " +
                                                      words[2]);
            doc.complex.add_diff(*s, *t, coeff);
            any_diff = true;
        } else {
            throw fail(ErrorKind::Syntax, "unknown directive '" + kw + "'");
        }
    }
    if (!header)
        throw Error(ErrorKind::Syntax, "line " + std::to_string(lineno) + ": missing header");
    doc.complex = validated(std::move(doc.complex));
    return doc;
}

std::string serialize_bcx(const Complex& c, const std::optional<Rational>& n)
{
    std::ostringstream os;
    os << kHeader << '\n';
    if (!c.name().empty())
        os << "meta name " << c.name() << '\n';
    if (n)
        os << "meta n " << format_rational(*n) << '\n';
    if (c.variance() == Variance::Coadmissible)
        os << "meta variance coadmissible\n";
    if (c.fragment())
        os << "meta fragment 1\n";
    for (const auto& g : c.generators())
        os << "generator " << g.id << ' ' << (g.kind == GenKind::Tower ? "tower" : "free") << ' ' << g.degree << '\n';
    for (const auto& e : c.diff_entries())
        os << "diff " << e.source << ' ' << e.target << ' ' << e.coeff.get_str() << '\n';
    return os.str();
}

BcxDocument load_bcx(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_bcx(ss.str());
}

void save_bcx(const std::string& path, const Complex& c, const std::optional<Rational>& n)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << serialize_bcx(c, n);
    if (!out)
        throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace swfh
