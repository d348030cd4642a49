#include <cctype>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "payback/axioms.hpp"
#include "payback/cashflow.hpp"
#include "payback/discount.hpp"
#include "payback/io.hpp"
#include "payback/metrics.hpp"

namespace {

using namespace payback;

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDiscountMiss = 3;

struct DiscountOptions {
    std::optional<std::string> rate;
    std::optional<std::string> table_path;

    void attach(CLI::App* cmd) {
        auto* r = cmd->add_option("--rate", rate, "Exponential discount rate (rational literal)");
        auto* t = cmd->add_option("--discount-table", table_path,
                                  "CSV `time,factor` table of exact discount factors");
        r->excludes(t);
    }

    std::optional<DiscountFunction> build() const {
        if (rate) return DiscountFunction::exponential(parse_rational(*rate));
        if (table_path) return DiscountFunction::table(parse_discount_table(*table_path));
        return std::nullopt;
    }
};

MetricKind kind_from_name(const std::string& name) {
    if (name == "last") return MetricKind::LAST_BREAKEVEN;
    if (name == "first") return MetricKind::FIRST_BREAKEVEN;
    if (name == "modified") return MetricKind::MODIFIED;
    if (name == "discounted") return MetricKind::DISCOUNTED_LAST;
    throw CLI::ValidationError("--metric", "unknown metric: " + name);
}

ExtendedTime metric_value(const Project& x, MetricKind kind, const DiscountFunction* alpha) {
    switch (kind) {
        case MetricKind::LAST_BREAKEVEN: return payback_period(x);
        case MetricKind::FIRST_BREAKEVEN: return first_breakeven(x);
        case MetricKind::MODIFIED: return modified_payback(x);
        case MetricKind::DISCOUNTED_LAST:
            if (!alpha) {
                throw CLI::ValidationError("--metric",
                                           "discounted metric needs --rate or --discount-table");
            }
            return discounted_payback(x, *alpha);
    }
    throw std::logic_error("unknown metric kind");
}

MetricReport compute_report(const Project& x, MetricKind kind, const DiscountFunction* alpha,
                            const std::optional<Rational>& mapp) {
    MetricReport report{kind, metric_value(x, kind, alpha), {}, std::nullopt};
    switch (kind) {
        case MetricKind::LAST_BREAKEVEN:
        case MetricKind::FIRST_BREAKEVEN:
            report.breakeven_points = breakeven_points(x);
            break;
        case MetricKind::DISCOUNTED_LAST:
            report.breakeven_points = breakeven_points(discount_stream(x, *alpha));
            break;
        case MetricKind::MODIFIED: {
            // Break-evens of the modified stream: one lump outflow, then the
            // inflows.
            std::vector<Event> modified;
            Rational total_outflow = 0;
            for (const Event& e : x.events()) {
                if (e.amount < 0) total_outflow -= e.amount;
                else modified.push_back(e);
            }
            modified.push_back(Event{0, -total_outflow});
            report.breakeven_points = breakeven_points(make_project(modified));
            break;
        }
    }
    if (mapp) report.acceptable = report.value <= ExtendedTime(*mapp);
    return report;
}

std::vector<MetricKind> selected_kinds(const std::string& metric, bool have_alpha) {
    if (metric == "all") {
        std::vector<MetricKind> kinds = {MetricKind::LAST_BREAKEVEN, MetricKind::FIRST_BREAKEVEN,
                                         MetricKind::MODIFIED};
        if (have_alpha) kinds.push_back(MetricKind::DISCOUNTED_LAST);
        return kinds;
    }
    return {kind_from_name(metric)};
}

void print_report_text(const MetricReport& report) {
    std::cout << to_string(report.kind) << " = " << report.value.str();
    std::cout << "  breakevens = [";
    for (std::size_t i = 0; i < report.breakeven_points.size(); ++i) {
        if (i) std::cout << ", ";
        std::cout << to_string(report.breakeven_points[i]);
    }
    std::cout << "]";
    if (report.acceptable) {
        std::cout << "  acceptable = " << (*report.acceptable ? "yes" : "no");
    }
    std::cout << "\n";
}

int cmd_analyze(const std::string& path, const std::string& metric,
                const DiscountOptions& discount, const std::optional<std::string>& mapp_text,
                bool as_json) {
    ProjectFile file = parse_events(path);
    Project x = make_project(file.events);
    auto alpha = discount.build();
    std::optional<Rational> mapp;
    if (mapp_text) mapp = parse_rational(*mapp_text);

    std::vector<MetricReport> reports;
    for (MetricKind kind : selected_kinds(metric, alpha.has_value())) {
        reports.push_back(compute_report(x, kind, alpha ? &*alpha : nullptr, mapp));
    }

    if (as_json) {
        nlohmann::json j;
        j["name"] = file.name;
        j["events"] = project_events_json(x);
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : reports) jr.push_back(metric_report_to_json(r));
        j["reports"] = jr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "project " << file.name << ": " << x.size() << " event"
                  << (x.size() == 1 ? "" : "s") << ", terminal balance "
                  << to_string(terminal_value(x)) << "\n";
        for (const auto& r : reports) print_report_text(r);
    }
    return 0;
}

int cmd_portfolio(const std::vector<std::string>& paths, const std::string& metric,
                  const DiscountOptions& discount, const std::optional<std::string>& mapp_text,
                  bool as_json) {
    auto alpha = discount.build();
    std::optional<Rational> mapp;
    if (mapp_text) mapp = parse_rational(*mapp_text);
    if (metric == "all") {
        throw CLI::ValidationError("--metric", "portfolio needs a single metric");
    }
    MetricKind kind = kind_from_name(metric);

    std::vector<ProjectFile> files;
    std::vector<Project> projects;
    std::vector<MetricReport> reports;
    Project pool;
    ExtendedTime bound(Rational(0));
    for (const auto& path : paths) {
        files.push_back(parse_events(path));
        projects.push_back(make_project(files.back().events));
        reports.push_back(compute_report(projects.back(), kind, alpha ? &*alpha : nullptr, mapp));
        bound = max(bound, reports.back().value);
        pool = add(pool, projects.back());
    }
    MetricReport pool_report = compute_report(pool, kind, alpha ? &*alpha : nullptr, mapp);
    bool max_rule_holds = pool_report.value <= bound;

    if (as_json) {
        nlohmann::json j;
        nlohmann::json components = nlohmann::json::array();
        for (std::size_t i = 0; i < files.size(); ++i) {
            nlohmann::json c;
            c["name"] = files[i].name;
            c["events"] = project_events_json(projects[i]);
            c["report"] = metric_report_to_json(reports[i]);
            components.push_back(c);
        }
        j["components"] = components;
        j["pool"] = metric_report_to_json(pool_report);
        j["max_rule_bound"] = extended_time_to_json(bound);
        j["max_rule_holds"] = max_rule_holds;
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < files.size(); ++i) {
            std::cout << files[i].name << ": " << to_string(kind) << " = "
                      << reports[i].value.str() << "\n";
        }
        std::cout << "pool: " << to_string(kind) << " = " << pool_report.value.str() << "\n";
        std::cout << "max_rule_bound = " << bound.str() << "\n";
        std::cout << "max_rule_holds = " << (max_rule_holds ? "true" : "false") << "\n";
    }
    if (!max_rule_holds) {
        std::cerr << "warning: pool " << to_string(kind) << " exceeds the max of its components"
                  << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& path, const DiscountOptions& discount, bool as_json) {
    ProjectFile file = parse_events(path);
    Project x = make_project(file.events);
    auto alpha = discount.build();

    std::vector<MetricReport> reports;
    for (MetricKind kind : selected_kinds("all", alpha.has_value())) {
        reports.push_back(compute_report(x, kind, alpha ? &*alpha : nullptr, std::nullopt));
    }

    if (as_json) {
        nlohmann::json j;
        j["name"] = file.name;
        j["events"] = project_events_json(x);
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& r : reports) jr.push_back(metric_report_to_json(r));
        j["reports"] = jr;
        nlohmann::json points = nlohmann::json::array();
        for (const Rational& p : breakeven_points(x)) points.push_back(to_string(p));
        j["breakeven_points"] = points;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "project " << file.name << "\n";
        for (const auto& r : reports) print_report_text(r);
    }
    return 0;
}

PaybackFunctional functional_from_name(const std::string& raw,
                                       const std::optional<DiscountFunction>& alpha) {
    std::string name;
    for (char c : raw) name.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(c)));
    if (name == "DISCOUNTED_LAST_BE" || name == "DISCOUNTED") {
        if (!alpha) {
            throw CLI::ValidationError("FUNCTIONAL",
                                       "discounted functional needs --rate or --discount-table");
        }
        return discounted_functional(*alpha);
    }
    try {
        return builtin(name);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("FUNCTIONAL", e.what());
    }
}

int cmd_axioms(const std::string& functional_name, const std::string& axiom,
               std::uint64_t trials, std::uint64_t seed, const DiscountOptions& discount,
               bool as_json) {
    auto alpha = discount.build();
    PaybackFunctional F = functional_from_name(functional_name, alpha);

    // Exact table for the alpha checks when none was supplied.
    DiscountFunction alpha_for_checks = alpha.value_or(DiscountFunction::table({
        {0, 1}, {1, Rational(1, 2)}, {2, Rational(1, 4)}, {3, Rational(1, 8)},
        {4, Rational(3, 2)}, {5, 2}, {6, 1}, {8, Rational(2, 3)}, {10, Rational(1, 16)},
    }));

    std::vector<AxiomReport> reports;
    auto want = [&axiom](const char* name) { return axiom == "all" || axiom == name; };
    if (want("comp")) reports.push_back(check_comp(F, trials, seed));
    if (want("acons")) reports.push_back(check_acons(F, trials, seed + 1));
    if (want("mon")) reports.push_back(check_mon(F, trials, seed + 2));
    if (want("lsc")) reports.push_back(lsc_suite(F, std::max<std::uint64_t>(trials / 10, 1), seed + 3));
    if (want("alpha-comp")) reports.push_back(check_alpha_comp(F, alpha_for_checks, trials, seed + 4));
    if (want("alpha-mon")) reports.push_back(check_alpha_mon(F, alpha_for_checks, trials, seed + 5));
    if (reports.empty()) {
        throw CLI::ValidationError("--axiom", "unknown axiom: " + axiom);
    }

    bool any_violation = false;
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : reports) {
            j.push_back(report_to_json(r));
            if (r.applicable && r.violation_count > 0) any_violation = true;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::cout << F.name << " " << to_string(r.axiom) << ": ";
            if (!r.applicable) {
                std::cout << "not applicable\n";
                continue;
            }
            std::cout << r.trials << " trials, " << r.violation_count << " violation"
                      << (r.violation_count == 1 ? "" : "s");
            if (r.largest_safe_delta) {
                std::cout << ", largest safe delta " << to_string(*r.largest_safe_delta);
            }
            std::cout << "\n";
            for (const Witness& w : r.violations) {
                std::cout << "  witness";
                if (!w.params.empty()) std::cout << " (" << w.params << ")";
                std::cout << ": expected " << w.expected_relation << ", observed";
                for (const auto& o : w.observed) std::cout << " " << o.str();
                std::cout << "\n";
            }
            if (r.violation_count > 0) any_violation = true;
        }
    }

    // Violations of the payback period itself are a regression; rival
    // functionals are expected to exhibit theirs.
    bool regression = (F.name == "LAST_BE" || F.name == "DISCOUNTED_LAST_BE") && any_violation;
    return regression ? kExitViolation : 0;
}

int cmd_plot_data(const std::string& path, const DiscountOptions& discount) {
    ProjectFile file = parse_events(path);
    Project x = make_project(file.events);
    if (auto alpha = discount.build()) x = discount_stream(x, *alpha);

    std::cout << "t,balance_before,balance_at\n";
    Rational before = 0;
    for (const Event& e : x.events()) {
        Rational at = before + e.amount;
        std::cout << to_string(e.time) << "," << to_string(before) << "," << to_string(at)
                  << "\n";
        before = at;
    }
    Rational past = x.is_zero() ? Rational(1) : x.events().back().time + 1;
    std::cout << to_string(past) << "," << to_string(before) << "," << to_string(before) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact payback-period analytics for nonconventional cash flows"};
    app.require_subcommand(1);

    std::string path;
    std::vector<std::string> paths;
    std::string metric = "all";
    std::string portfolio_metric = "last";
    std::optional<std::string> mapp;
    bool as_json = false;
    std::string functional;
    std::string axiom = "all";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;

    auto* analyze = app.add_subcommand("analyze", "Metrics for one cash flow file");
    analyze->add_option("FILE", path, "CSV or JSON cash flow file")->required();
    analyze->add_option("--metric", metric, "last|first|modified|discounted|all");
    analyze->add_option("--mapp", mapp, "Maximum acceptable payback period");
    analyze->add_flag("--json", as_json, "Emit JSON");
    DiscountOptions analyze_discount;
    analyze_discount.attach(analyze);

    auto* portfolio = app.add_subcommand("portfolio", "Pool several projects and check the max rule");
    portfolio->add_option("FILES", paths, "Cash flow files")->required()->expected(-1);
    portfolio->add_option("--metric", portfolio_metric, "last|first|modified|discounted");
    portfolio->add_option("--mapp", mapp, "Maximum acceptable payback period");
    portfolio->add_flag("--json", as_json, "Emit JSON");
    DiscountOptions portfolio_discount;
    portfolio_discount.attach(portfolio);

    auto* compare = app.add_subcommand("compare", "All metrics side by side");
    compare->add_option("FILE", path, "CSV or JSON cash flow file")->required();
    compare->add_flag("--json", as_json, "Emit JSON");
    DiscountOptions compare_discount;
    compare_discount.attach(compare);

    auto* axioms = app.add_subcommand("axioms", "Run axiom suites against a functional");
    axioms->add_option("FUNCTIONAL", functional,
                       "last-be|first-be|modified|const-zero|obs3-restricted|discounted")
        ->required();
    axioms->add_option("--axiom", axiom, "comp|acons|mon|lsc|alpha-comp|alpha-mon|all");
    axioms->add_option("--trials", trials, "Trials per axiom");
    axioms->add_option("--seed", seed, "64-bit RNG seed");
    axioms->add_flag("--json", as_json, "Emit JSON");
    DiscountOptions axioms_discount;
    axioms_discount.attach(axioms);

    auto* plot = app.add_subcommand("plot-data", "CSV step series of the balance");
    plot->add_option("FILE", path, "CSV or JSON cash flow file")->required();
    DiscountOptions plot_discount;
    plot_discount.attach(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(path, metric, analyze_discount, mapp, as_json);
        if (portfolio->parsed()) {
            return cmd_portfolio(paths, portfolio_metric, portfolio_discount, mapp, as_json);
        }
        if (compare->parsed()) return cmd_compare(path, compare_discount, as_json);
        if (axioms->parsed()) {
            return cmd_axioms(functional, axiom, trials, seed, axioms_discount, as_json);
        }
        if (plot->parsed()) return cmd_plot_data(path, plot_discount);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const payback::DiscountError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDiscountMiss;
    } catch (const payback::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const payback::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
