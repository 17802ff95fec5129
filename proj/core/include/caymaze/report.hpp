#pragma once

#include <string>

#include "caymaze/group.hpp"
#include "caymaze/simulator.hpp"

namespace caymaze {

enum class ReportFormat { Text, Json };

// JSON fields, in order: verdict, U, T_state, T_quotient, T_pair, holonomy,
// holonomy_order, visited_count, steps_used. Unavailable values are null.
std::string emit_report(const ExplorationReport& report,
                        const GroupBackend& backend, ReportFormat format);

}  // namespace caymaze
