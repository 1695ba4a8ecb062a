#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace knotcert {

// One letter of a group word: generator index and exponent +1/-1.
struct Letter {
    std::uint32_t gen;
    int exp;  // +1 or -1
    bool operator==(const Letter&) const = default;
};

// A freely reduced word in the generators of a presentation.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) { reduce(); }

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    bool operator==(const Word&) const = default;

    Word inverse() const;
    Word concat(const Word& o) const;
    // Exponent sum of a given generator.
    int exponent_sum(std::uint32_t gen) const;

private:
    void reduce();
    std::vector<Letter> letters_;
};

}  // namespace knotcert
