#include "leibniz/io.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

namespace leibniz {

ParseError::ParseError(const std::string& source, long l, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(l) + ": " + what), line(l) {}

namespace {

std::vector<std::string> words(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    std::istringstream is(s);
    std::vector<std::string> w;
    for (std::string t; is >> t;) w.push_back(t);
    return w;
}

long parse_index(const std::string& s, const std::string& source, long line, const std::string& field) {
    std::size_t pos = 0;
    long v = -1;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || v < 0) throw ParseError(source, line, "field '" + field + "': bad index '" + s + "'");
    return v;
}

}  // namespace

Algebra parse_algebra(std::istream& in, const std::string& source) {
    long lineno = 0;
    bool header = false;
    long dim = -1;
    std::vector<std::string> labels;
    Metadata md;
    Tensor t;
    std::set<std::tuple<long, long, long>> seen;
    auto need_dim = [&](const std::string& what) {
        if (dim < 0) throw ParseError(source, lineno, what + " before 'dim'");
    };
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto w = words(line);
        if (w.empty()) continue;
        const std::string& key = w[0];
        if (!header) {
            if (key != "leibniz-algebra" || w.size() != 2)
                throw ParseError(source, lineno, "expected header 'leibniz-algebra 1'");
            if (w[1] != "1") throw ParseError(source, lineno, "unsupported format version '" + w[1] + "'");
            header = true;
        } else if (key == "dim") {
            if (dim >= 0) throw ParseError(source, lineno, "duplicate 'dim'");
            if (w.size() != 2) throw ParseError(source, lineno, "'dim' takes one value");
            dim = parse_index(w[1], source, lineno, "dim");
            if (dim < 1) throw ParseError(source, lineno, "dim must be >= 1");
            t = Tensor(static_cast<std::size_t>(dim));
        } else if (key == "labels") {
            need_dim("'labels'");
            if (static_cast<long>(w.size()) - 1 != dim)
                throw ParseError(source, lineno, "expected " + std::to_string(dim) + " labels, got " +
                                                     std::to_string(w.size() - 1));
            labels.assign(w.begin() + 1, w.end());
        } else if (key == "family") {
            if (w.size() != 3) throw ParseError(source, lineno, "'family' takes an id and n");
            md.family = w[1];
            md.n = parse_index(w[2], source, lineno, "family n");
        } else if (key == "param") {
            if (w.size() != 3) throw ParseError(source, lineno, "'param' takes a name and a value");
            try {
                md.params.emplace_back(w[1], Rational::parse(w[2]));
            } catch (const std::invalid_argument& e) {
                throw ParseError(source, lineno, "field 'param " + w[1] + "': " + e.what());
            }
        } else if (key == "entry") {
            need_dim("'entry'");
            if (w.size() != 5) throw ParseError(source, lineno, "'entry' takes i j k coefficient");
            long i = parse_index(w[1], source, lineno, "i"), j = parse_index(w[2], source, lineno, "j"),
                 k = parse_index(w[3], source, lineno, "k");
            for (long x : {i, j, k})
                if (x >= dim)
                    throw ParseError(source, lineno, "index " + std::to_string(x) + " out of range for dim " +
                                                         std::to_string(dim));
            if (!seen.insert({i, j, k}).second)
                throw ParseError(source, lineno, "duplicate entry " + w[1] + " " + w[2] + " " + w[3]);
            try {
                t.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
                    Rational::parse(w[4]);
            } catch (const std::invalid_argument& e) {
                throw ParseError(source, lineno, "field 'coefficient': " + std::string(e.what()));
            }
        } else {
            throw ParseError(source, lineno, "unknown record '" + key + "'");
        }
    }
    if (!header) throw ParseError(source, lineno, "empty input, expected header 'leibniz-algebra 1'");
    if (dim < 0) throw ParseError(source, lineno, "missing 'dim'");
    return Algebra(std::move(t), labels, md);
}

Algebra parse_algebra_string(const std::string& text) {
    std::istringstream is(text);
    return parse_algebra(is, "<string>");
}

std::string format_algebra(const Algebra& a) {
    std::ostringstream os;
    os << "leibniz-algebra 1\n";
    os << "dim " << a.dim() << "\n";
    os << "labels";
    for (const auto& l : a.labels()) os << ' ' << l;
    os << "\n";
    const auto& md = a.metadata();
    if (!md.family.empty()) {
        os << "family " << md.family << ' ' << md.n << "\n";
        for (const auto& [k, v] : md.params) os << "param " << k << ' ' << v.str() << "\n";
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (const auto& [k, c] : a.product(i, j)) os << "entry " << i << ' ' << j << ' ' << k << ' ' << c.str() << "\n";
    return os.str();
}

Algebra read_algebra_file(const std::string& path) {
    if (path == "-") return parse_algebra(std::cin, "<stdin>");
    std::ifstream f(path);
    if (!f) throw IoError("cannot open '" + path + "'");
    return parse_algebra(f, path);
}

void write_algebra_file(const Algebra& a, const std::string& path) {
    if (path == "-") {
        std::cout << format_algebra(a) << std::flush;
        return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot write '" + path + "'");
    f << format_algebra(a);
    if (!f) throw IoError("write failed for '" + path + "'");
}

}  // namespace leibniz
