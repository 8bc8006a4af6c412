#include "cibi/error.hpp"

namespace cibi {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::ZeroOperand: return "ZeroOperand";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::Singular: return "Singular";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::ParameterError: return "ParameterError";
    case Errc::Undecodable: return "Undecodable";
    case Errc::WeightError: return "WeightError";
    case Errc::RangeError: return "RangeError";
    case Errc::RetryLimitExceeded: return "RetryLimitExceeded";
    case Errc::StateReuse: return "StateReuse";
    case Errc::ChannelError: return "ChannelError";
    case Errc::ProtocolViolation: return "ProtocolViolation";
    case Errc::CostGuard: return "CostGuard";
    case Errc::MalformedEnvelope: return "MalformedEnvelope";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedInput: return "TruncatedInput";
    }
    return "Unknown";
}

} // namespace cibi
