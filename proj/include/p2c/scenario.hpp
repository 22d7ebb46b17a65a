#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "p2c/protocol.hpp"

namespace p2c {

/// Ordered JSON event log, one compact object per line:
/// {"action","actor","inputs","result","step"}.
struct Transcript {
    std::vector<std::string> lines;

    std::string str() const;
};

inline constexpr std::string_view scenario_names[] = {"basic", "offline", "anonymous", "tamper"};

/// Runs one multi-actor flow against fresh ledger and filestore state.
/// `approve` is consulted by the customer's signing device before paying.
/// Throws Error("unknown_scenario").
Transcript run_scenario(std::string_view name, RandomSource& rng, const ApprovalCallback& approve);

} // namespace p2c
