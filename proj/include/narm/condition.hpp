#pragma once

#include <cstdint>
#include <string>
#include <variant>

namespace narm {

// Payload of a single rule condition. Categorical features test equality
// against one domain value; numeric features test closed-interval membership.
struct CategoricalEquals {
    std::string value;
    bool operator==(const CategoricalEquals&) const = default;
};

struct IntegerInterval {
    std::int64_t lo{};
    std::int64_t hi{};
    bool operator==(const IntegerInterval&) const = default;
};

struct RealInterval {
    double lo{};
    double hi{};
    bool operator==(const RealInterval&) const = default;
};

using ConditionPayload = std::variant<CategoricalEquals, IntegerInterval, RealInterval>;

// Shortest decimal form that parses back to exactly the same double. The
// result always carries a '.' or an exponent so integer-valued and
// real-valued interval bounds stay distinguishable in serialized archives.
std::string format_real(double value);

// Attribute part of a "feature_attribute" label: the bare value for a
// categorical payload, "[lo..hi]" for an interval payload.
std::string payload_attribute(const ConditionPayload& payload);

}  // namespace narm
