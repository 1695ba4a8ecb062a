#include "knotcert/knotio.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

#include "knotcert/diagram_builder.hpp"

namespace knotcert {

namespace {

struct Scanner {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    bool try_lit(const std::string& lit) {
        skip_ws();
        if (s.compare(pos, lit.size(), lit) == 0) {
            pos += lit.size();
            return true;
        }
        return false;
    }
    void expect_lit(const std::string& lit) {
        if (!try_lit(lit)) throw SyntaxError("expected '" + lit + "'", pos);
    }
    std::uint64_t expect_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw SyntaxError("expected an integer", pos);
        std::uint64_t v = 0;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
            if (v > 0xFFFFFFFFULL) throw SyntaxError("integer too large", start);
            ++pos;
        }
        return v;
    }
};

// next edge label along the knot (1-based, cyclic)
std::uint32_t next_edge(std::uint32_t e, std::uint32_t two_n) { return e % two_n + 1; }

}  // namespace

KnotDiagram parse_pd(const std::string& text) {
    Scanner sc{text};
    sc.expect_lit("PD");
    sc.expect_lit("[");
    KnotDiagram d;
    bool first = true;
    while (true) {
        if (sc.try_lit("]")) break;
        if (!first) {
            // commas between crossings are optional but canonical
            sc.try_lit(",");
        }
        if (sc.try_lit("]")) break;
        sc.expect_lit("X");
        sc.expect_lit("(");
        Crossing c;
        c.a = static_cast<std::uint32_t>(sc.expect_uint());
        sc.expect_lit(",");
        c.b = static_cast<std::uint32_t>(sc.expect_uint());
        sc.expect_lit(",");
        c.c = static_cast<std::uint32_t>(sc.expect_uint());
        sc.expect_lit(",");
        c.d = static_cast<std::uint32_t>(sc.expect_uint());
        sc.expect_lit(")");
        d.crossings.push_back(c);
        first = false;
    }
    if (sc.try_lit("loops")) {
        sc.expect_lit("=");
        d.num_loops = static_cast<std::uint32_t>(sc.expect_uint());
    }
    if (!sc.eof()) throw SyntaxError("unexpected trailing input", sc.pos);

    // Edge labels are positive integers; range against 1..2n is reported by
    // validate so the CLI can list every problem at once.
    for (const Crossing& c : d.crossings)
        for (std::uint32_t v : {c.a, c.b, c.c, c.d})
            if (v < 1) throw LabelRangeError("edge labels must be positive integers");
    // Cache signs where the structure permits.
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        try {
            d.crossings[i].sign = crossing_roles(d, i).sign;
        } catch (const Error&) {
            d.crossings[i].sign = 0;
        }
    }
    return d;
}

CrossingRoles crossing_roles(const KnotDiagram& d, std::size_t index) {
    const Crossing& c = d.crossings.at(index);
    std::uint32_t two_n = static_cast<std::uint32_t>(2 * d.crossings.size());
    if (c.c != next_edge(c.a, two_n))
        throw InvalidDiagram("under-strand does not continue at crossing " + std::to_string(index));
    std::uint32_t over_in;
    if (d.crossings.size() == 1) {
        // 1-crossing diagram: labels repeat; the over-strand re-enters with
        // the edge that just left as the under-strand output.
        if (c.d == c.c)
            over_in = c.d;
        else if (c.b == c.c)
            over_in = c.b;
        else
            throw InvalidDiagram("kink crossing does not reuse its own edges");
    } else {
        bool b_in = next_edge(c.b, two_n) == c.d;
        bool d_in = next_edge(c.d, two_n) == c.b;
        if (b_in == d_in)
            throw InvalidDiagram("over-strand does not continue at crossing " + std::to_string(index));
        over_in = b_in ? c.b : c.d;
    }
    CrossingRoles r;
    r.under_in = c.a;
    r.under_out = c.c;
    r.over_in = over_in;
    r.over_out = (over_in == c.b) ? c.d : c.b;
    r.sign = (over_in == c.d) ? +1 : -1;
    return r;
}

int crossing_sign(const KnotDiagram& d, std::size_t index) { return crossing_roles(d, index).sign; }

ValidationReport validate(const KnotDiagram& d) {
    ValidationReport rep;
    auto issue = [&rep](const std::string& code, const std::string& msg) {
        rep.issues.push_back(ValidationIssue{code, msg});
    };

    const std::size_t n = d.crossings.size();
    if (n == 0) {
        if (d.num_loops < 1) issue("empty-needs-loop", "empty diagram must carry >= 1 loop");
        if (d.num_loops > 1)
            issue("multi-component", "more than one crossing-free loop; only knots are supported");
        rep.ok = rep.issues.empty();
        return rep;
    }
    if (d.num_loops != 0)
        issue("loops-with-crossings", "crossing-free loops beside crossings form a link, not a knot");

    const std::uint32_t two_n = static_cast<std::uint32_t>(2 * n);
    std::map<std::uint32_t, int> count;
    for (const Crossing& c : d.crossings)
        for (std::uint32_t v : {c.a, c.b, c.c, c.d}) ++count[v];
    bool labels_ok = true;
    for (std::uint32_t e = 1; e <= two_n; ++e)
        if (!count.count(e)) count[e] = 0;
    for (const auto& [e, k] : count)
        if (k != 2) {
            issue("label-multiplicity", "edge label " + std::to_string(e) + " appears " +
                                            std::to_string(k) + " times, expected 2");
            labels_ok = false;
        }
    for (const auto& [e, k] : count)
        if (e < 1 || e > two_n) {
            issue("label-range",
                  "edge label " + std::to_string(e) + " outside 1.." + std::to_string(two_n));
            labels_ok = false;
        }
    if (!labels_ok) {
        rep.ok = false;
        return rep;
    }

    // Strand continuation and per-edge role balance. With sequential labels
    // each edge must enter exactly one crossing (as under-in or over-in);
    // the successor map e -> e+1 then chains all edges into a single curve.
    std::vector<int> in_role(two_n + 1, 0);
    bool structure_ok = true;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            CrossingRoles r = crossing_roles(d, i);
            ++in_role[r.under_in];
            ++in_role[r.over_in];
        } catch (const InvalidDiagram& e) {
            issue("strand-continuation", e.what());
            structure_ok = false;
        }
    }
    if (structure_ok) {
        for (std::uint32_t e = 1; e <= two_n; ++e)
            if (in_role[e] != 1)
                issue("role-balance", "edge " + std::to_string(e) + " enters " +
                                          std::to_string(in_role[e]) + " crossings, expected 1");
    }

    rep.ok = rep.issues.empty();
    return rep;
}

std::string render(const KnotDiagram& d) {
    std::ostringstream os;
    os << "PD[";
    for (std::size_t i = 0; i < d.crossings.size(); ++i) {
        const Crossing& c = d.crossings[i];
        if (i) os << ",";
        os << "X(" << c.a << "," << c.b << "," << c.c << "," << c.d << ")";
    }
    os << "]";
    if (d.crossings.empty()) os << " loops=" << d.num_loops;
    return os.str();
}

std::string canonical_bytes(const KnotDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.ok) {
        std::string msg = "canonical_bytes requires a valid diagram";
        if (!rep.issues.empty()) msg += ": " + rep.issues.front().message;
        throw InvalidDiagram(msg);
    }
    KnotDiagram canon = d;
    if (!canon.crossings.empty()) {
        // Valid diagrams carry labels 1..2n in traversal order already, so
        // relabeling from the lowest label is the identity; sorting the
        // crossing list fixes the remaining order freedom.
        std::sort(canon.crossings.begin(), canon.crossings.end(),
                  [](const Crossing& x, const Crossing& y) {
                      return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
                  });
    }
    return render(canon);
}

KnotDiagram parse_braid(const std::string& text) {
    Scanner sc{text};
    sc.expect_lit("strands");
    sc.expect_lit("=");
    std::uint64_t strands = sc.expect_uint();
    if (strands < 1) throw SyntaxError("strands must be >= 1", sc.pos);

    struct BraidLetter {
        std::uint32_t index;  // 1-based position i of s_i
        int sign;
    };
    std::vector<BraidLetter> letters;
    while (!sc.eof()) {
        std::size_t at = sc.pos;
        sc.expect_lit("s");
        std::uint64_t i = sc.expect_uint();
        if (i < 1 || i >= strands)
            throw SyntaxError("braid generator s" + std::to_string(i) + " needs 1 <= i < strands",
                              at);
        int sign = +1;
        if (sc.try_lit("^")) {
            sc.expect_lit("-1");
            sign = -1;
        }
        letters.push_back(BraidLetter{static_cast<std::uint32_t>(i), sign});
    }

    // Closure components = cycles of the underlying permutation.
    std::vector<std::uint32_t> perm(strands);
    for (std::uint32_t j = 0; j < strands; ++j) perm[j] = j;
    for (const BraidLetter& l : letters) std::swap(perm[l.index - 1], perm[l.index]);
    std::vector<bool> seen(strands, false);
    std::size_t cycles = 0;
    for (std::uint32_t j = 0; j < strands; ++j) {
        if (seen[j]) continue;
        ++cycles;
        std::uint32_t k = j;
        while (!seen[k]) {
            seen[k] = true;
            k = perm[k];
        }
    }
    if (cycles != 1)
        throw MultiComponentError("braid closure has " + std::to_string(cycles) +
                                  " components; a knot needs exactly 1");

    DiagramBuilder builder;
    std::vector<DiagramBuilder::Port> top(strands), dangling(strands);
    for (std::uint32_t j = 0; j < strands; ++j) {
        DiagramBuilder::Port anchor = builder.add_anchor();
        top[j] = DiagramBuilder::Port{anchor.node, 0};
        dangling[j] = DiagramBuilder::Port{anchor.node, 1};
    }
    for (const BraidLetter& l : letters) {
        std::uint32_t c = builder.add_crossing();
        std::uint32_t i = l.index - 1;
        if (l.sign > 0) {
            // over-strand from upper-right to lower-left
            builder.connect(dangling[i], builder.crossing_port(c, 0));
            builder.connect(dangling[i + 1], builder.crossing_port(c, 3));
            dangling[i] = builder.crossing_port(c, 1);
            dangling[i + 1] = builder.crossing_port(c, 2);
        } else {
            builder.connect(dangling[i], builder.crossing_port(c, 1));
            builder.connect(dangling[i + 1], builder.crossing_port(c, 0));
            dangling[i] = builder.crossing_port(c, 2);
            dangling[i + 1] = builder.crossing_port(c, 3);
        }
    }
    for (std::uint32_t j = 0; j < strands; ++j) builder.connect(dangling[j], top[j]);
    return builder.orient();
}

}  // namespace knotcert
