#include "knotcert/present.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace knotcert {

std::size_t GroupPresentation::length() const {
    std::size_t symbols = generators.size();
    for (const Word& w : relators) symbols += w.size();
    return symbols;
}

std::string generator_name(std::size_t index) {
    // a..z, then aa, ab, ... (spreadsheet style)
    std::string name;
    std::size_t i = index;
    while (true) {
        name.insert(name.begin(), static_cast<char>('a' + i % 26));
        if (i < 26) break;
        i = i / 26 - 1;
    }
    return name;
}

GroupPresentation wirtinger(const KnotDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.ok) {
        std::string msg = "wirtinger requires a valid diagram";
        if (!rep.issues.empty()) msg += ": " + rep.issues.front().message;
        throw InvalidDiagram(msg);
    }

    GroupPresentation p;
    p.kind = PresentationKind::wirtinger;
    const std::size_t n = d.crossings.size();
    if (n == 0) {
        p.generators.push_back(generator_name(0));
        return p;
    }

    const std::uint32_t two_n = static_cast<std::uint32_t>(2 * n);
    // Arcs are maximal over-strands: they break exactly after each under-in
    // edge. arc_start[e] marks edges that begin an arc (under-out edges).
    std::vector<bool> breaks_after(two_n + 1, false);
    for (std::size_t i = 0; i < n; ++i) breaks_after[d.crossings[i].a] = true;

    std::vector<std::uint32_t> arc_of(two_n + 1, 0);  // arc id by lowest edge, assigned later
    // Walk edges 1..2n, carrying the current arc start.
    // First find an edge that starts an arc.
    std::uint32_t first_start = 0;
    for (std::uint32_t e = 1; e <= two_n; ++e) {
        std::uint32_t prev = (e == 1) ? two_n : e - 1;
        if (breaks_after[prev]) {
            first_start = e;
            break;
        }
    }
    // n >= 1 crossings guarantee at least one under-in, hence one break.
    std::vector<std::vector<std::uint32_t>> arcs;  // arc -> edges
    std::uint32_t e = first_start;
    std::vector<std::uint32_t> current;
    for (std::uint32_t step = 0; step < two_n; ++step) {
        current.push_back(e);
        if (breaks_after[e]) {
            arcs.push_back(current);
            current.clear();
        }
        e = e % two_n + 1;
    }

    // Index arcs by their lowest edge label, ascending.
    std::vector<std::size_t> order(arcs.size());
    std::vector<std::uint32_t> lowest(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i)
        lowest[i] = *std::min_element(arcs[i].begin(), arcs[i].end());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&lowest](std::size_t x, std::size_t y) { return lowest[x] < lowest[y]; });
    for (std::size_t rank = 0; rank < order.size(); ++rank)
        for (std::uint32_t edge : arcs[order[rank]]) arc_of[edge] = static_cast<std::uint32_t>(rank);

    for (std::size_t i = 0; i < arcs.size(); ++i) p.generators.push_back(generator_name(i));

    for (std::size_t i = 0; i < n; ++i) {
        CrossingRoles r = crossing_roles(d, i);
        WirtingerRelation wr;
        wr.out = arc_of[r.under_out];
        wr.in = arc_of[r.under_in];
        wr.over = arc_of[r.over_in];
        if (arc_of[r.over_in] != arc_of[r.over_out])
            throw InvalidDiagram("over-strand edges fall in different arcs");
        wr.sign = r.sign;
        p.wirtinger_data.push_back(wr);
        // g_out . g_over^e . g_in^-1 . g_over^-e
        p.relators.push_back(Word({Letter{wr.out, +1}, Letter{wr.over, wr.sign},
                                   Letter{wr.in, -1}, Letter{wr.over, -wr.sign}}));
    }
    return p;
}

IntLaurentMatrix fox_matrix(const GroupPresentation& p) {
    if (p.kind != PresentationKind::wirtinger)
        throw NotWirtinger("fox_matrix requires a Wirtinger presentation");
    const std::size_t rows = p.relators.size();
    const std::size_t cols = p.generators.size();
    IntLaurentMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        // Fox derivative of the reduced word, abelianized g_i -> t:
        // d(x^+1)/dx contributes t^s, d(x^-1)/dx contributes -t^(s-1),
        // where s is the exponent sum of the prefix before the letter.
        int s = 0;
        for (const Letter& l : p.relators[r].letters()) {
            LaurentPoly contrib = (l.exp > 0) ? LaurentPoly::term(1, s) : LaurentPoly::term(-1, s - 1);
            m.at(r, l.gen) = m.at(r, l.gen) + contrib;
            s += l.exp;
        }
    }
    return m;
}

IntPolynomial normalize_alexander(const LaurentPoly& det) {
    if (det.is_zero()) return IntPolynomial();
    IntPolynomial p = det.to_poly_shifted();
    if (p.coeffs().back() < 0) p = -p;
    return p;
}

IntPolynomial alexander(const KnotDiagram& d) {
    GroupPresentation p = wirtinger(d);
    const std::size_t n = p.relators.size();
    if (n == 0) return IntPolynomial::constant(1);
    IntLaurentMatrix fox = fox_matrix(p);
    // One relator is redundant and one column is struck: the determinant of
    // the remaining minor is the Alexander polynomial up to units.
    IntLaurentMatrix minor = fox.without_row_col(n - 1, 0);
    LaurentPoly det = minor.determinant();
    IntPolynomial out = normalize_alexander(det);
    if (out.is_zero()) throw InvalidDiagram("Alexander determinant vanished; diagram is not a knot");
    return out;
}

std::string print_presentation(const GroupPresentation& p) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.generators.size(); ++i) {
        if (i) out += ",";
        out += p.generators[i];
    }
    out += " | ";
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
        if (r) out += ", ";
        const Word& w = p.relators[r];
        if (w.empty()) {
            out += "1";
            continue;
        }
        for (std::size_t i = 0; i < w.letters().size(); ++i) {
            if (i) out += " ";
            std::string name = p.generators[w.letters()[i].gen];
            if (w.letters()[i].exp < 0)
                for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
            out += name;
        }
    }
    out += ">";
    return out;
}

}  // namespace knotcert
