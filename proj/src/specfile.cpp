#include "shiftlab/specfile.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace shiftlab {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line.substr(0, line.find('#')));
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

int parse_int(const std::string& s, int line_no, const std::string& what) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (...) {
        throw parse_error(line_no, what + " expects an integer, got '" + s + "'");
    }
}

struct Parser {
    std::vector<std::vector<std::string>> lines; // tokenized
    std::vector<int> line_no;                    // 1-based source lines
    std::size_t pos = 0;

    explicit Parser(const std::string& text) {
        std::istringstream in(text);
        std::string raw;
        int n = 0;
        while (std::getline(in, raw)) {
            ++n;
            auto toks = tokenize(raw);
            if (toks.empty()) continue;
            lines.push_back(std::move(toks));
            line_no.push_back(n);
        }
    }

    bool done() const { return pos >= lines.size(); }
    const std::vector<std::string>& peek() const { return lines[pos]; }
    int here() const { return done() ? (line_no.empty() ? 1 : line_no.back()) : line_no[pos]; }
};

int symbol_ordinal(const Alphabet& alphabet, const std::string& s, int line_no) {
    auto idx = alphabet.find(s);
    if (!idx) throw parse_error(line_no, "unknown symbol '" + s + "'");
    return *idx;
}

Mat parse_matrix(Parser& p, const Alphabet& alphabet, const std::string& which) {
    const int n = alphabet.size();
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        if (p.done())
            throw parse_error(p.here(), which + " expects " + std::to_string(n) + " rows");
        const auto& toks = p.peek();
        const int ln = p.here();
        if (static_cast<int>(toks.size()) != n)
            throw parse_error(ln, which + " row " + std::to_string(i + 1) + " expects " +
                                      std::to_string(n) + " entries");
        for (int j = 0; j < n; ++j) {
            int v = parse_int(toks[static_cast<std::size_t>(j)], ln, which + " entry");
            if (v != 0 && v != 1)
                throw parse_error(ln, which + " entries must be 0 or 1");
            m(i, j) = v;
        }
        ++p.pos;
    }
    return m;
}

} // namespace

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

SpecFile parse_spec_text(const std::string& text) {
    SpecFile out;
    out.source = text;
    out.digest_hex = "fnv1a64:" + fnv1a64_hex(text);

    Parser p(text);
    if (p.done()) throw parse_error(1, "empty spec");
    if (p.peek()[0] != "dim" || p.peek().size() != 2)
        throw parse_error(p.here(), "spec must start with 'dim D'");
    const int d = parse_int(p.peek()[1], p.here(), "dim");
    if (d < 1 || d > 4) throw parse_error(p.here(), "dimension must be between 1 and 4");
    out.spec.dimension = d;
    ++p.pos;

    if (p.done() || p.peek()[0] != "symbols" || p.peek().size() < 2)
        throw parse_error(p.here(), "'dim' must be followed by 'symbols s1 s2 ...'");
    {
        std::vector<std::string> syms(p.peek().begin() + 1, p.peek().end());
        try {
            out.spec.alphabet = Alphabet(std::move(syms));
        } catch (const spec_error& e) {
            throw parse_error(p.here(), e.what());
        }
        ++p.pos;
    }

    std::optional<Mat> hmat, vmat;
    while (!p.done()) {
        const auto toks = p.peek();
        const int ln = p.here();
        ++p.pos;
        if (toks[0] == "forbid") {
            if (toks.size() < 2) throw parse_error(ln, "'forbid' expects a kind");
            const std::string& kind = toks[1];
            if (kind == "h" || kind == "v") {
                const int axis = kind == "v" ? 1 : 0;
                if (axis >= d) throw parse_error(ln, "'forbid v' needs dimension >= 2");
                if (toks.size() < 4)
                    throw parse_error(ln, "'forbid " + kind + "' expects at least two symbols");
                std::vector<Coords> support;
                std::vector<int> cells;
                for (std::size_t k = 2; k < toks.size(); ++k) {
                    Coords c(static_cast<std::size_t>(d), 0);
                    c[axis] = static_cast<int>(k - 2);
                    support.push_back(std::move(c));
                    cells.push_back(symbol_ordinal(out.spec.alphabet, toks[k], ln));
                }
                out.spec.forbidden.emplace_back(std::move(support), std::move(cells));
            } else if (kind == "rect") {
                if (d != 2) throw parse_error(ln, "'forbid rect' needs dimension 2");
                if (toks.size() != 4) throw parse_error(ln, "'forbid rect' expects W and H");
                const int w = parse_int(toks[2], ln, "rect width");
                const int h = parse_int(toks[3], ln, "rect height");
                if (w < 1 || h < 1) throw parse_error(ln, "rect extents must be positive");
                RectBlock b(Coords{w, h}, std::vector<int>(static_cast<std::size_t>(w) * h, 0));
                for (int r = 0; r < h; ++r) {
                    if (p.done()) throw parse_error(p.here(), "rect expects " + std::to_string(h) + " rows");
                    const auto& row = p.peek();
                    const int rln = p.here();
                    if (static_cast<int>(row.size()) != w)
                        throw parse_error(rln, "rect row expects " + std::to_string(w) + " symbols");
                    for (int x = 0; x < w; ++x)
                        b.cell({x, h - 1 - r}) =
                            symbol_ordinal(out.spec.alphabet, row[static_cast<std::size_t>(x)], rln);
                    ++p.pos;
                }
                out.spec.forbidden.push_back(b.as_pattern());
            } else {
                throw parse_error(ln, "unknown forbid kind '" + kind + "'");
            }
        } else if (toks[0] == "hmatrix" || toks[0] == "vmatrix") {
            if (d != 2) throw parse_error(ln, "adjacency matrices need dimension 2");
            if (toks.size() != 1) throw parse_error(ln, "'" + toks[0] + "' takes no arguments");
            auto& slot = toks[0] == "hmatrix" ? hmat : vmat;
            if (slot) throw parse_error(ln, "duplicate " + toks[0]);
            slot = parse_matrix(p, out.spec.alphabet, toks[0]);
        } else {
            throw parse_error(ln, "unknown directive '" + toks[0] + "'");
        }
    }

    if (hmat.has_value() != vmat.has_value())
        throw parse_error(p.here(), "hmatrix and vmatrix must be given together");
    if (hmat) {
        MultiGraph g;
        g.vertices = out.spec.alphabet;
        g.axes = {*hmat, *vmat};
        g.validate();
        if (!out.spec.forbidden.empty()) {
            if (!out.spec.is_one_step())
                throw spec_error(
                    "adjacency matrices can only accompany nearest-neighbour forbid lines");
            MultiGraph from_patterns = graph_from_one_step(out.spec);
            if (!(from_patterns.axes[0] == g.axes[0]) || !(from_patterns.axes[1] == g.axes[1]))
                throw spec_error("adjacency matrices disagree with the forbid lines");
        } else {
            out.spec = spec_from_graph(g);
        }
        out.graph = std::move(g);
    }
    out.spec.validate();
    return out;
}

SpecFile parse_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spec_error("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

std::string print_spec(const ShiftSpec& spec) {
    spec.validate();
    std::ostringstream out;
    out << "dim " << spec.dimension << "\n";
    out << "symbols";
    for (const auto& s : spec.alphabet.symbols) out << ' ' << s;
    out << "\n";

    if (spec.dimension == 2 && spec.is_one_step()) {
        MultiGraph g = graph_from_one_step(spec);
        for (int axis = 0; axis < 2; ++axis) {
            out << (axis == 0 ? "hmatrix" : "vmatrix") << "\n";
            for (int i = 0; i < g.size(); ++i) {
                for (int j = 0; j < g.size(); ++j) out << (j ? " " : "") << g.axes[axis](i, j);
                out << "\n";
            }
        }
        return out.str();
    }

    for (const auto& pat : spec.forbidden) {
        if (auto axis = pat.domino_axis(); axis && *axis <= 1) {
            out << "forbid " << (*axis == 0 ? 'h' : 'v') << ' '
                << spec.alphabet.name(pat.cells[0]) << ' ' << spec.alphabet.name(pat.cells[1])
                << "\n";
            continue;
        }
        Coords ext = pat.bounding_extents();
        long long full = 1;
        for (int e : ext) full *= e;
        if (spec.dimension != 2 || static_cast<long long>(pat.support.size()) != full)
            throw spec_error("only full rectangular patterns can be printed");
        RectBlock b(ext, std::vector<int>(static_cast<std::size_t>(full), 0));
        for (std::size_t k = 0; k < pat.support.size(); ++k)
            b.cell(pat.support[k]) = pat.cells[k];
        out << "forbid rect " << ext[0] << ' ' << ext[1] << "\n";
        for (int y = ext[1] - 1; y >= 0; --y) {
            for (int x = 0; x < ext[0]; ++x)
                out << (x ? " " : "") << spec.alphabet.name(b.cell({x, y}));
            out << "\n";
        }
    }
    return out.str();
}

namespace {

std::vector<std::string> render_grid(const Coords& extents, const Alphabet& alphabet,
                                     const std::vector<int>& cells,
                                     std::size_t (*index)(const Coords&, const Coords&)) {
    if (extents.size() > 2) throw spec_error("ascii rendering supports at most two axes");
    const int w = extents.empty() ? 0 : extents[0];
    const int h = extents.size() == 2 ? extents[1] : 1;
    std::size_t pad = 1;
    for (int s : cells) pad = std::max(pad, alphabet.name(s).size());
    std::vector<std::string> out;
    for (int y = h - 1; y >= 0; --y) {
        std::string row;
        for (int x = 0; x < w; ++x) {
            Coords v = extents.size() == 2 ? Coords{x, y} : Coords{x};
            std::string name = alphabet.name(cells[index(extents, v)]);
            name.resize(pad, ' ');
            if (x) row += ' ';
            row += name;
        }
        while (!row.empty() && row.back() == ' ') row.pop_back();
        out.push_back(std::move(row));
    }
    return out;
}

std::size_t rect_index(const Coords& extents, const Coords& v) {
    std::size_t idx = 0, stride = 1;
    for (std::size_t i = 0; i < extents.size(); ++i) {
        idx += static_cast<std::size_t>(v[i]) * stride;
        stride *= static_cast<std::size_t>(extents[i]);
    }
    return idx;
}

} // namespace

std::vector<std::string> render_ascii(const TorusConfig& t, const Alphabet& alphabet) {
    return render_grid(t.periods, alphabet, t.cells, &rect_index);
}

std::vector<std::string> render_ascii(const RectBlock& b, const Alphabet& alphabet) {
    return render_grid(b.extents, alphabet, b.cells, &rect_index);
}

} // namespace shiftlab
