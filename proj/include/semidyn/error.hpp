#pragma once

#include <stdexcept>
#include <string>

namespace semidyn {

// Every throwing path in the library uses Error with a stable machine-readable
// code ("ZeroVector", "BudgetExceeded", ...). The CLI prints the code on stderr.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw Error(code, what);
}

} // namespace semidyn
