#pragma once

#include <stdexcept>
#include <string>

namespace hsc {

struct DuplicateNode : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NodeOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BadEdgeSize : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct WeightOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EigenNoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidPartition : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InvalidWeights : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

} // namespace hsc
