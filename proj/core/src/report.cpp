#include "caymaze/report.hpp"

#include <json.hpp>
#include <sstream>

namespace caymaze {

namespace {

using json = nlohmann::ordered_json;

json order_to_json(const HolonomyOrder& o) {
    switch (o.kind) {
        case HolonomyOrder::Kind::Finite:
            return o.order;
        case HolonomyOrder::Kind::Infinite:
            return "infinite";
        case HolonomyOrder::Kind::CapExceeded:
            return "cap-exceeded";
    }
    return nullptr;
}

}  // namespace

std::string emit_report(const ExplorationReport& report,
                        const GroupBackend& backend, ReportFormat format) {
    if (format == ReportFormat::Json) {
        json j;
        j["verdict"] = to_string(report.verdict);
        j["U"] = report.preperiod;
        j["T_state"] =
            report.state_period ? json(*report.state_period) : json(nullptr);
        j["T_quotient"] = report.quotient_period ? json(*report.quotient_period)
                                                 : json(nullptr);
        j["T_pair"] =
            report.pair_period ? json(*report.pair_period) : json(nullptr);
        j["holonomy"] = report.holonomy ? json(backend.render(*report.holonomy))
                                        : json(nullptr);
        j["holonomy_order"] = report.holonomy_order
                                  ? order_to_json(*report.holonomy_order)
                                  : json(nullptr);
        j["visited_count"] = report.visited_count;
        j["steps_used"] = report.steps_used;
        return j.dump();
    }

    std::ostringstream os;
    os << "verdict: " << to_string(report.verdict) << "\n";
    os << "U (preperiod): " << report.preperiod << "\n";
    auto line = [&os](const char* name, const std::optional<long long>& v) {
        os << name << ": ";
        if (v)
            os << *v;
        else
            os << "-";
        os << "\n";
    };
    line("T_state", report.state_period);
    line("T_quotient", report.quotient_period);
    line("T_pair", report.pair_period);
    os << "holonomy: "
       << (report.holonomy ? backend.render(*report.holonomy) : "-") << "\n";
    os << "holonomy order: ";
    if (!report.holonomy_order)
        os << "-";
    else
        switch (report.holonomy_order->kind) {
            case HolonomyOrder::Kind::Finite:
                os << report.holonomy_order->order;
                break;
            case HolonomyOrder::Kind::Infinite:
                os << "infinite";
                break;
            case HolonomyOrder::Kind::CapExceeded:
                os << "cap-exceeded";
                break;
        }
    os << "\n";
    os << "visited vertices: " << report.visited_count << "\n";
    os << "steps used: " << report.steps_used << "\n";
    return os.str();
}

}  // namespace caymaze
