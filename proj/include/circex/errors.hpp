#pragma once

#include <stdexcept>
#include <string>

namespace circex {

// Process exit codes shared by the CLI and the batch runner.
enum class ExitCode : int {
    Ok = 0,
    Usage = 1,
    Data = 2,
    Provider = 3,
    PartialFailure = 4,
};

// Base for errors that should terminate a command with a specific exit code.
class Error : public std::runtime_error {
public:
    Error(ExitCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}

    ExitCode exit_code() const noexcept { return code_; }

private:
    ExitCode code_;
};

// Bad flags, unreadable config, mutually exclusive options.
class UsageError : public Error {
public:
    explicit UsageError(std::string message)
        : Error(ExitCode::Usage, std::move(message)) {}
};

// Malformed or inconsistent input data (manuals, corpora, samples, fixtures).
class DataError : public Error {
public:
    explicit DataError(std::string message)
        : Error(ExitCode::Data, std::move(message)) {}
};

enum class ProviderFailure {
    Auth,             // bad or missing credentials, never retried
    Timeout,          // request deadline exceeded, retryable
    Transport,        // connection/rate-limit/server error, retryable
    ExhaustedRetries, // retry budget spent, carries the last failure
    AllItemsFailed,   // a whole batch produced no verdicts
};

class ProviderError : public Error {
public:
    ProviderError(ProviderFailure kind, std::string message)
        : Error(ExitCode::Provider, std::move(message)), kind_(kind) {}

    ProviderFailure kind() const noexcept { return kind_; }

    bool retryable() const noexcept {
        return kind_ == ProviderFailure::Timeout || kind_ == ProviderFailure::Transport;
    }

private:
    ProviderFailure kind_;
};

} // namespace circex
