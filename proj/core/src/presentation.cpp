#include "cyclo2/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace cyclo2 {

PresentationError::PresentationError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column)
{
}

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos;
    int line;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool done()
    {
        skip_ws();
        return pos >= s.size();
    }
    int col() const { return int(pos) + 1; }
    [[noreturn]] void fail(const std::string& msg) const { throw PresentationError(msg, line, col()); }
    bool eat(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string ident()
    {
        skip_ws();
        std::size_t b = pos;
        while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        if (b == pos)
            fail("expected a name or number");
        return s.substr(b, pos - b);
    }
    long integer()
    {
        skip_ws();
        std::size_t b = pos;
        if (pos < s.size() && s[pos] == '-')
            ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (b == pos || (pos == b + 1 && s[b] == '-'))
            fail("expected an integer");
        return std::stol(s.substr(b, pos - b));
    }
};

bool is_number(const std::string& t)
{
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

struct RawRelation {
    std::string text;
    int line;
};

std::vector<Mono> parse_poly(Cursor& c, const std::map<std::string, std::size_t>& names, std::size_t n)
{
    std::vector<Mono> terms;
    auto parse_side = [&]() {
        do {
            Mono m(n, 0);
            bool zero = false;
            do {
                c.skip_ws();
                int col = c.col();
                std::string t = c.ident();
                if (is_number(t)) {
                    long v = std::stol(t);
                    if (v % 2 == 0)
                        zero = true;
                    continue;
                }
                auto it = names.find(t);
                if (it == names.end())
                    throw PresentationError("undeclared generator '" + t + "'", c.line, col);
                long e = 1;
                if (c.eat('^')) {
                    e = c.integer();
                    if (e < 0)
                        c.fail("negative exponent");
                }
                m[it->second] = uint16_t(m[it->second] + e);
            } while (c.eat('*'));
            if (!zero)
                terms.push_back(m);
        } while (c.eat('+'));
    };
    parse_side();
    if (c.eat('='))
        parse_side();
    if (!c.done())
        c.fail("unexpected character '" + std::string(1, c.s[c.pos]) + "'");
    return terms;
}

}  // namespace

AlgebraPresentation parse_presentation(const std::string& text)
{
    AlgebraPresentation p;
    std::map<std::string, std::size_t> names;
    std::vector<RawRelation> raw;
    std::string section;
    bool graded = true;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        Cursor c{line, 0, lineno};
        if (c.done())
            continue;
        if (line[c.pos] == '[') {
            auto close = line.find(']', c.pos);
            if (close == std::string::npos)
                c.fail("unterminated section header");
            section = line.substr(c.pos + 1, close - c.pos - 1);
            if (section != "generators" && section != "relations" && section != "options")
                c.fail("unknown section '" + section + "'");
            c.pos = close + 1;
            if (!c.done())
                c.fail("trailing text after section header");
            continue;
        }
        if (section.empty())
            c.fail("content before any section header");
        if (section == "generators") {
            int col = c.col();
            std::string name = c.ident();
            if (is_number(name) || !std::isalpha(static_cast<unsigned char>(name[0])))
                throw PresentationError("generator names must start with a letter", lineno, col);
            if (names.count(name))
                throw PresentationError("duplicate generator '" + name + "'", lineno, col);
            Generator g;
            g.name = name;
            g.degree = int(c.integer());
            if (!c.done())
            {
                g.augmentation = int(c.integer());
                g.augmentation_declared = true;
            }
            if (!c.done())
                c.fail("unexpected text after generator");
            names[name] = p.generators.size();
            p.generators.push_back(g);
        }
        else if (section == "relations") {
            raw.push_back({line, lineno});
        }
        else {
            std::string key = c.ident();
            if (!c.eat('='))
                c.fail("expected '='");
            int col = c.col();
            std::string val = c.ident();
            if (key != "graded")
                throw PresentationError("unknown option '" + key + "'", lineno, 1);
            if (val == "true")
                graded = true;
            else if (val == "false")
                graded = false;
            else
                throw PresentationError("expected true or false", lineno, col);
            if (!c.done())
                c.fail("unexpected text after option");
        }
    }
    p.mode = graded ? GradingMode::graded : GradingMode::ungraded;
    for (const auto& r : raw) {
        Cursor c{r.text, 0, r.line};
        auto terms = parse_poly(c, names, p.generators.size());
        Poly poly = poly_normalize(terms);
        if (graded && !poly.empty()) {
            auto deg = [&](const Mono& m) {
                int d = 0;
                for (std::size_t i = 0; i < m.size(); ++i)
                    d += m[i] * p.generators[i].degree;
                return d;
            };
            int d0 = deg(poly[0]);
            for (const auto& m : poly)
                if (deg(m) != d0)
                    throw PresentationError("relation is not homogeneous in internal degree", r.line, 1);
        }
        p.relations.push_back(poly);
    }
    return p;
}

AlgebraPresentation load_presentation(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw PresentationError("cannot open " + path, 0, 0);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_presentation(ss.str());
}

}  // namespace cyclo2
