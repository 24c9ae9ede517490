#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace glocal {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
        : Error(make_message(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string make_message(std::size_t offset, const std::vector<std::string>& expected,
                                    const std::string& detail) {
        std::string msg = "syntax error at offset " + std::to_string(offset) + ": " + detail;
        if (!expected.empty()) {
            msg += " (expected one of:";
            for (const auto& e : expected) msg += " " + e;
            msg += ")";
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownVertex : public Error {
public:
    explicit UnknownVertex(const std::string& name) : Error("unknown vertex '" + name + "'") {}
};

class PointNotFacet : public Error {
public:
    explicit PointNotFacet(const std::string& what) : Error("point is not a facet: " + what) {}
};

class UnknownState : public Error {
public:
    explicit UnknownState(const std::string& name) : Error("unknown state '" + name + "'") {}
};

class InvalidModel : public Error {
public:
    InvalidModel(const std::string& kind, std::vector<std::string> problems)
        : Error(make_message(kind, problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string make_message(const std::string& kind, const std::vector<std::string>& problems) {
        std::string msg = "invalid " + kind + ":";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
    }

    std::vector<std::string> problems_;
};

/// Precondition of the undefined-to-true transformation: the formula must be undefined at the point.
class AlreadyDefined : public Error {
public:
    using Error::Error;
};

/// Precondition of distinguishing-formula synthesis: the points must not be bisimilar.
class Bisimilar : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class UnknownFixture : public Error {
public:
    explicit UnknownFixture(const std::string& id) : Error("unknown fixture '" + id + "'") {}
};

class InvalidParam : public Error {
public:
    using Error::Error;
};

class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace glocal
