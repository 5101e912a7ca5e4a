#pragma once

#include <stdexcept>
#include <string>
#include <vector>

// Error taxonomy shared by all modules. Each class maps to one failure
// category so callers (and the CLI exit-code logic) can dispatch on type.
namespace amt {

// Input value outside the mathematical domain of an operation
// (non-positive frequency, time outside the protocol interval, ...).
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Structurally invalid argument: empty grid, dimension mismatch,
// non-monotone time grid, too few levels, and similar.
class argument_error : public std::invalid_argument {
public:
    explicit argument_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An operator violates a required structural property
// (non-Hermitian input, parity-mixing matrix where none is allowed).
class structure_error : public std::runtime_error {
public:
    explicit structure_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A finite-difference step so small the result would be pure rounding noise.
class step_size_error : public std::runtime_error {
public:
    explicit step_size_error(const std::string& msg) : std::runtime_error(msg) {}
};

// An integrator failed its own quality monitor (norm drift past tolerance).
class integration_error : public std::runtime_error {
public:
    explicit integration_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A requested ratio has a vanishing denominator (e.g. leakage fraction
// when no excited population exists).
class undefined_ratio_error : public std::runtime_error {
public:
    explicit undefined_ratio_error(const std::string& msg) : std::runtime_error(msg) {}
};

// File system failure; carries the offending path in the message.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Aggregated configuration validation failure: collects every violation so
// a bad run config is reported once, with the full list.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid configuration (" + std::to_string(v.size()) + " problem" +
                          (v.size() == 1 ? "" : "s") + "):";
        for (const auto& s : v) out += "\n  - " + s;
        return out;
    }
    std::vector<std::string> violations_;
};

}  // namespace amt
