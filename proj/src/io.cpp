#include "payback/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace payback {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Rational parse_field(const std::string& text, std::size_t line_number) {
    try {
        return parse_rational(text);
    } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(line_number) + ": " + e.what());
    }
}

Rational json_rational(const nlohmann::json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(BigInt(v.get<long long>()));
    throw ParseError(
        "JSON numbers must be integers or rational strings (floating point is not exact)");
}

ProjectFile parse_json_events(const std::string& text, const std::string& fallback_name) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("JSON parse error: ") + e.what());
    }
    ProjectFile file;
    file.name = j.value("name", fallback_name);
    if (!j.contains("events") || !j["events"].is_array()) {
        throw ParseError("JSON input needs an \"events\" array");
    }
    for (const auto& entry : j["events"]) {
        Rational t, c;
        if (entry.is_array() && entry.size() == 2) {
            t = json_rational(entry[0]);
            c = json_rational(entry[1]);
        } else if (entry.is_object() && entry.contains("t") && entry.contains("c")) {
            t = json_rational(entry["t"]);
            c = json_rational(entry["c"]);
        } else {
            throw ParseError("event entries must be {\"t\":...,\"c\":...} or [t, c]");
        }
        if (t < 0) throw ParseError("negative event time " + to_string(t));
        file.events.push_back(Event{t, c});
    }
    return file;
}

ProjectFile parse_csv_events(const std::string& text, const std::string& name) {
    ProjectFile file;
    file.name = name;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto comma = trimmed.find(',');
        if (comma == std::string::npos) {
            throw ParseError("line " + std::to_string(line_number) + ": expected `time,amount`");
        }
        std::string first = trimmed.substr(0, comma);
        std::string second = trimmed.substr(comma + 1);
        if (line_number == 1) {
            // Optional header: skip when the first field is not numeric.
            try {
                (void)parse_rational(first);
            } catch (const std::invalid_argument&) {
                continue;
            }
        }
        Rational t = parse_field(first, line_number);
        Rational c = parse_field(second, line_number);
        if (t < 0) {
            throw ParseError("line " + std::to_string(line_number) + ": negative event time " +
                             to_string(t));
        }
        file.events.push_back(Event{t, c});
    }
    return file;
}

}  // namespace

ProjectFile parse_events_text(const std::string& text, const std::string& name) {
    auto first_char = text.find_first_not_of(" \t\r\n");
    if (first_char != std::string::npos && text[first_char] == '{') {
        return parse_json_events(text, name);
    }
    return parse_csv_events(text, name);
}

ProjectFile parse_events(const std::string& path) {
    std::string name = std::filesystem::path(path).stem().string();
    return parse_events_text(read_file(path), name);
}

std::vector<std::pair<Rational, Rational>> parse_discount_table(const std::string& path) {
    std::string text = read_file(path);
    std::vector<std::pair<Rational, Rational>> entries;
    std::istringstream in(text);
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '#') continue;
        auto comma = trimmed.find(',');
        if (comma == std::string::npos) {
            throw ParseError("line " + std::to_string(line_number) + ": expected `time,factor`");
        }
        if (line_number == 1) {
            try {
                (void)parse_rational(trimmed.substr(0, comma));
            } catch (const std::invalid_argument&) {
                continue;  // header
            }
        }
        entries.emplace_back(parse_field(trimmed.substr(0, comma), line_number),
                             parse_field(trimmed.substr(comma + 1), line_number));
    }
    return entries;
}

nlohmann::json extended_time_to_json(const ExtendedTime& t) {
    if (t.is_finite()) {
        return {{"finite", true}, {"value", to_string(t.finite_value())}};
    }
    return {{"finite", false}};
}

ExtendedTime extended_time_from_json(const nlohmann::json& j) {
    if (!j.contains("finite")) throw ParseError("extended time JSON needs \"finite\"");
    if (!j["finite"].get<bool>()) return ExtendedTime::infinity();
    return ExtendedTime(parse_rational(j.at("value").get<std::string>()));
}

nlohmann::json metric_report_to_json(const MetricReport& report) {
    nlohmann::json j;
    j["kind"] = to_string(report.kind);
    j["value"] = extended_time_to_json(report.value);
    nlohmann::json points = nlohmann::json::array();
    for (const Rational& p : report.breakeven_points) points.push_back(to_string(p));
    j["breakeven_points"] = points;
    if (report.acceptable) j["acceptable"] = *report.acceptable;
    return j;
}

nlohmann::json project_events_json(const Project& x) {
    nlohmann::json events = nlohmann::json::array();
    for (const Event& e : x.events()) {
        events.push_back({{"t", to_string(e.time)}, {"c", to_string(e.amount)}});
    }
    return events;
}

}  // namespace payback
