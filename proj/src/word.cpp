#include "knotcert/word.hpp"

namespace knotcert {

void Word::reduce() {
    std::vector<Letter> out;
    for (const Letter& l : letters_) {
        if (!out.empty() && out.back().gen == l.gen && out.back().exp == -l.exp)
            out.pop_back();
        else
            out.push_back(l);
    }
    letters_ = std::move(out);
}

Word Word::inverse() const {
    std::vector<Letter> inv;
    inv.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        inv.push_back(Letter{it->gen, -it->exp});
    return Word(std::move(inv));
}

Word Word::concat(const Word& o) const {
    std::vector<Letter> all = letters_;
    all.insert(all.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(all));
}

int Word::exponent_sum(std::uint32_t gen) const {
    int s = 0;
    for (const Letter& l : letters_)
        if (l.gen == gen) s += l.exp;
    return s;
}

}  // namespace knotcert
