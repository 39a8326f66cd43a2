#include "relspin/types.hpp"

#include <cmath>

namespace relspin {

std::string to_string(OperatorKind kind) {
    switch (kind) {
    case OperatorKind::Wigner: return "wigner";
    case OperatorKind::NormalizedPL: return "pl";
    }
    return "unknown";
}

OperatorKind parse_operator_kind(const std::string& text) {
    if (text == "wigner") return OperatorKind::Wigner;
    if (text == "pl") return OperatorKind::NormalizedPL;
    throw DomainError("unknown operator kind '" + text + "' (expected wigner|pl)");
}

void require_positive_mass(double mass) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("mass must be positive and finite");
}

}  // namespace relspin
