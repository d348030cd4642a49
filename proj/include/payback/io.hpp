#pragma once

#include <optional>
#include <string>
#include <vector>

#include "payback/cashflow.hpp"
#include "payback/metrics.hpp"

#include <nlohmann/json_fwd.hpp>

namespace payback {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProjectFile {
    std::string name;
    std::vector<Event> events;  // raw, pre-normalization
};

// CSV lines `time,amount` (optional header) or JSON
// {"name": ..., "events": [{"t": ..., "c": ...}]}. Numbers are rational
// literals: `p/q`, decimal, or integer. JSON numeric values must be integers;
// non-integer amounts go in strings so they stay exact.
ProjectFile parse_events(const std::string& path);
ProjectFile parse_events_text(const std::string& text, const std::string& name);

// CSV `time,factor` per line, both rational literals.
std::vector<std::pair<Rational, Rational>> parse_discount_table(const std::string& path);

nlohmann::json extended_time_to_json(const ExtendedTime& t);
ExtendedTime extended_time_from_json(const nlohmann::json& j);

nlohmann::json metric_report_to_json(const MetricReport& report);
nlohmann::json project_events_json(const Project& x);

}  // namespace payback
