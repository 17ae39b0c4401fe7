// errors.hpp - error hierarchy shared by the library and the CLI
#pragma once

#include <stdexcept>
#include <string>

namespace swiptlab {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg, int exit_code = 1)
        : std::runtime_error(msg), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

// bad command line (unknown flag, malformed range, unknown figure id)
class UsageError : public Error {
public:
    explicit UsageError(const std::string& msg) : Error(msg, 2) {}
};

// bad config file or key value
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg, 3) {}
};

// a computation left its supported domain (non-finite input, failed fit, ...)
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& msg) : Error(msg, 4) {}
};

// interference cancellation impossible for the requested rates/powers:
// p1 - p2*(2^(2*R1)-1) <= 0, so no SNR makes the far message decodable
class SicInfeasibleError : public NumericalError {
public:
    explicit SicInfeasibleError(const std::string& msg) : NumericalError(msg) {}
};

}  // namespace swiptlab
