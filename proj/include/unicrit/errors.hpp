#pragma once

#include <stdexcept>
#include <string>

namespace unicrit {

// Error categories double as CLI exit codes: usage=2, budget=3, dynamics=4.
enum class ErrorKind { usage = 2, budget = 3, dynamics = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(ErrorKind::usage, msg) {}
};

class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(ErrorKind::budget, msg) {}
};

// Escape, critical collision, failed pressure bracket, ambiguous branch
// selection: the input violated a dynamical precondition rather than a
// usage or resource limit.
class DynamicsError : public Error {
public:
    explicit DynamicsError(const std::string& msg) : Error(ErrorKind::dynamics, msg) {}
};

}  // namespace unicrit
