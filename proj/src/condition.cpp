#include "narm/condition.hpp"

#include <charconv>
#include <cstdio>

namespace narm {

std::string format_real(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    std::string text(buf, end);
    if (text.find_first_of(".eEn") == std::string::npos) {
        text += ".0";
    }
    return text;
}

std::string payload_attribute(const ConditionPayload& payload) {
    if (const auto* cat = std::get_if<CategoricalEquals>(&payload)) {
        return cat->value;
    }
    // ".." keeps labels comma-free so flow CSV rows stay three plain columns.
    if (const auto* ii = std::get_if<IntegerInterval>(&payload)) {
        return "[" + std::to_string(ii->lo) + ".." + std::to_string(ii->hi) + "]";
    }
    const auto& ri = std::get<RealInterval>(payload);
    return "[" + format_real(ri.lo) + ".." + format_real(ri.hi) + "]";
}

}  // namespace narm
