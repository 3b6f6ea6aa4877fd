#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace holo {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input: ring specs, element encodings, edge lists, function files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A documented precondition was violated (characteristic 2, non-unit inverse, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t needed, std::uint64_t budget)
        : Error("search budget exceeded: needs more than " + std::to_string(budget) +
                " candidates (at least " + std::to_string(needed) + ")"),
          needed_(needed), budget_(budget) {}

    std::uint64_t needed() const noexcept { return needed_; }
    std::uint64_t budget() const noexcept { return budget_; }

private:
    std::uint64_t needed_;
    std::uint64_t budget_;
};

/// The tree dynamics reached a frontier vertex whose incoming increment has no extension.
class DeadEnd : public Error {
public:
    DeadEnd(std::uint32_t vertex, std::string increment)
        : Error("dead end at vertex " + std::to_string(vertex) +
                ": no local solution for incoming increment " + increment),
          vertex_(vertex), increment_(std::move(increment)) {}

    std::uint32_t vertex() const noexcept { return vertex_; }
    const std::string& increment() const noexcept { return increment_; }

private:
    std::uint32_t vertex_;
    std::string increment_;
};

}  // namespace holo
