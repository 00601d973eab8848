#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace bentpart {

/* Base of every error raised by the library. */
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/* Operand outside an operation's domain (mismatched spaces, c = 0, m not dividing n, ...). */
class DomainError : public Error {
   public:
    using Error::Error;
};

/* Exact arithmetic would overflow its coefficient type. */
class ArithmeticError : public Error {
   public:
    using Error::Error;
};

/* A verification route cannot run on this instance (budget or size cap). */
class RouteRefused : public Error {
   public:
    RouteRefused(std::string route, const std::string& why)
        : Error("route '" + route + "' refused: " + why), route_(std::move(route)) {}
    const std::string& route() const noexcept { return route_; }

   private:
    std::string route_;
};

/* A construction was refused because a named hypothesis failed. */
class PreconditionRefused : public Error {
   public:
    PreconditionRefused(std::string condition, const std::string& detail)
        : Error("precondition '" + condition + "' failed: " + detail), condition_(std::move(condition)) {}
    const std::string& condition() const noexcept { return condition_; }

   private:
    std::string condition_;
};

/* Malformed input file or configuration. */
class ParseError : public Error {
   public:
    using Error::Error;
};

/* An internal identity that must hold did not (implementation bug or wrong witnesses). */
class InvariantViolation : public Error {
   public:
    using Error::Error;
};

}  // namespace bentpart
