#include "imark/error.hpp"

namespace imark {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::EmptySet: return "EmptySet";
        case Errc::InvalidSubtraction: return "InvalidSubtraction";
        case Errc::InvalidDivisor: return "InvalidDivisor";
        case Errc::Overflow: return "Overflow";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::ResourceLimit: return "ResourceLimit";
        case Errc::CorruptFile: return "CorruptFile";
        case Errc::SpecMismatch: return "SpecMismatch";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace imark
