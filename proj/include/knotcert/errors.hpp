#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace knotcert {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical/grammatical problem in PD or braid text. Carries the byte offset
// of the offending token.
class SyntaxError : public Error {
public:
    SyntaxError(const std::string& msg, std::size_t position)
        : Error(msg + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// An edge label outside 1..2n for an n-crossing diagram.
class LabelRangeError : public Error {
public:
    explicit LabelRangeError(const std::string& msg) : Error(msg) {}
};

class InvalidDiagram : public Error {
public:
    explicit InvalidDiagram(const std::string& msg) : Error(msg) {}
};

// Braid closure has more than one component.
class MultiComponentError : public Error {
public:
    explicit MultiComponentError(const std::string& msg) : Error(msg) {}
};

class NotWirtinger : public Error {
public:
    explicit NotWirtinger(const std::string& msg) : Error(msg) {}
};

class ModulusMismatch : public Error {
public:
    explicit ModulusMismatch(const std::string& msg) : Error(msg) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

class OutOfSupportedRange : public Error {
public:
    explicit OutOfSupportedRange(const std::string& msg) : Error(msg) {}
};

class ZeroPolynomialModP : public Error {
public:
    explicit ZeroPolynomialModP(const std::string& msg) : Error(msg) {}
};

class TooFewGenerators : public Error {
public:
    explicit TooFewGenerators(const std::string& msg) : Error(msg) {}
};

class InfeasibleEnumeration : public Error {
public:
    explicit InfeasibleEnumeration(const std::string& msg) : Error(msg) {}
};

class FactorizationTooLarge : public Error {
public:
    explicit FactorizationTooLarge(const std::string& msg) : Error(msg) {}
};

class BudgetExhausted : public Error {
public:
    explicit BudgetExhausted(const std::string& msg) : Error(msg) {}
};

class ArityMismatch : public Error {
public:
    explicit ArityMismatch(const std::string& msg) : Error(msg) {}
};

}  // namespace knotcert
