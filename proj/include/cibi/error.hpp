#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cibi {

enum class Errc {
    ZeroInverse,
    ZeroOperand,
    NotInvertible,
    DimensionMismatch,
    Singular,
    Inconsistent,
    ParameterError,
    Undecodable,
    WeightError,
    RangeError,
    RetryLimitExceeded,
    StateReuse,
    ChannelError,
    ProtocolViolation,
    CostGuard,
    MalformedEnvelope,
    VersionMismatch,
    TruncatedInput,
};

std::string_view errc_name(Errc code) noexcept;

// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace cibi
