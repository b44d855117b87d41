#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

namespace qjackson::cli {

namespace {

const std::vector<std::string> kSuites{"core", "mg", "da", "gus", "lemmas", "asymptotics"};

std::set<std::string> expand_suites(const std::vector<std::string>& in) {
    if (in.empty()) throw ConfigError("--suites must name at least one suite");
    std::set<std::string> out;
    for (const auto& s : in) {
        if (s == "all") {
            out.insert(kSuites.begin(), kSuites.end());
        } else if (std::find(kSuites.begin(), kSuites.end(), s) != kSuites.end()) {
            out.insert(s);
        } else {
            throw ConfigError("unknown suite '" + s + "' (expected core, mg, da, gus, lemmas, asymptotics or all)");
        }
    }
    return out;
}

void validate(const RunConfig& c) {
    expand_suites(c.suites);
    for (int n : c.n_values)
        if (n < 1 || n > kMaxDim) throw ConfigError("--n values must lie in 1.." + std::to_string(kMaxDim));
    if (!(c.q > 0.0 && c.q < 1.0)) throw ConfigError("--q must lie in (0, 1)");
    if (c.trials < 1) throw ConfigError("--trials must be at least 1");
    if (c.workers < 1) throw ConfigError("--workers must be at least 1");
    if (c.cutoff && *c.cutoff < 1) throw ConfigError("--cutoff must be at least 1");
    for (double t : {c.tols.lattice, c.tols.lattice_high, c.tols.recurrence, c.tols.algebra, c.tols.asymptotic})
        if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
}

}  // namespace

std::optional<RunConfig> parse_config(int argc, const char* const* argv) {
    RunConfig c;
    CLI::App app{"Randomized verification of multidimensional Jackson integral identities"};
    app.set_config("--config", "", "flat key=value file; keys are the long flag names")->check(CLI::ExistingFile);
    app.allow_config_extras(false);

    std::string format = "text";
    std::optional<double> tol, tol_high;
    std::uint64_t seed = 0;
    app.add_option("--suites", c.suites, "core, mg, da, gus, lemmas, asymptotics or all")->delimiter(',');
    app.add_option("--n", c.n_values, "dimensions to run (default: all a check supports)")->delimiter(',');
    app.add_option("--q", c.q, "base q in (0,1)");
    app.add_option("--seed", seed, "run seed");
    app.add_option("--trials", c.trials, "randomized draws per check and dimension");
    app.add_option("--tol", tol, "tolerance for lattice-sum identities at every n");
    app.add_option("--tol-high", tol_high, "tolerance for lattice-sum identities at n >= 3");
    app.add_option("--tol-recurrence", c.tols.recurrence, "tolerance for recurrences");
    app.add_option("--tol-algebra", c.tols.algebra, "tolerance for exact algebraic identities");
    app.add_option("--tol-asymptotic", c.tols.asymptotic, "final deviation allowed in asymptotic checks");
    app.add_option("--cutoff", c.cutoff, "fixed lattice cutoff; sums that have not converged at it are reported");
    app.add_option("--report", c.report_path, "write the report here instead of stdout");
    app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--workers", c.workers, "threads running checks concurrently");
    app.add_flag("--timing", c.timing, "record elapsed_ms (makes reports run-dependent)");
    app.add_flag("--list", c.list_only, "print the planned check ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return std::nullopt;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    c.seed = seed;
    if (tol) c.tols.lattice = c.tols.lattice_high = *tol;
    if (tol_high) c.tols.lattice_high = *tol_high;
    c.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
    validate(c);
    return c;
}

std::vector<PlannedCheck> plan(const RunConfig& cfg) {
    const auto suites = expand_suites(cfg.suites);
    std::vector<PlannedCheck> out;
    for (const auto& info : registered_checks()) {
        if (!suites.count(info.suite)) continue;
        std::vector<std::string> ids;
        if (info.dims.empty()) {
            ids.push_back(info.name);
        } else {
            for (int n : info.dims)
                if (cfg.n_values.empty() || std::find(cfg.n_values.begin(), cfg.n_values.end(), n) != cfg.n_values.end())
                    ids.push_back(info.name + ".n" + std::to_string(n));
        }
        for (const auto& id : ids)
            for (int t = 0; t < cfg.trials; ++t) out.push_back({id, t});
    }
    std::sort(out.begin(), out.end(), [](const PlannedCheck& a, const PlannedCheck& b) {
        return a.check_id != b.check_id ? a.check_id < b.check_id : a.trial < b.trial;
    });
    return out;
}

QContext context_for(const RunConfig& cfg) {
    QContext ctx;
    ctx.q = cfg.q;
    ctx.workers = 1;  // parallelism is across checks
    if (cfg.cutoff) {
        ctx.lattice_cutoff = *cfg.cutoff;
        ctx.adaptive = false;
    }
    ctx.validate();
    return ctx;
}

std::vector<CheckReport> run_checks(const RunConfig& cfg, const std::vector<PlannedCheck>& checks) {
    const QContext ctx = context_for(cfg);
    std::vector<CheckReport> out(checks.size());
    std::vector<std::exception_ptr> errors(checks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < checks.size();) {
            try {
                const auto& c = checks[k];
                out[k] = check_identity(c.check_id, ctx, trial_seed(cfg.seed, c.check_id, c.trial), cfg.tols);
                out[k].trial = c.trial;
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const int threads = std::min<int>(cfg.workers, static_cast<int>(std::max<std::size_t>(checks.size(), 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

int exit_code(const std::vector<CheckReport>& reports) {
    bool not_converged = false;
    for (const auto& r : reports) {
        if (r.status == CheckStatus::Fail || r.status == CheckStatus::Error) return kFail;
        if (r.status == CheckStatus::NotConverged) not_converged = true;
    }
    return not_converged ? kNotConverged : kPass;
}

std::string render(const RunConfig& cfg, const std::vector<CheckReport>& reports) {
    switch (cfg.format) {
        case Format::Json: return reports_to_json(reports, cfg.timing);
        case Format::Csv: return reports_to_csv(reports, cfg.timing);
        case Format::Text: return reports_to_text(reports);
    }
    return {};
}

int run(int argc, const char* const* argv) {
    RunConfig cfg;
    std::vector<PlannedCheck> checks;
    try {
        auto parsed = parse_config(argc, argv);
        if (!parsed) return kPass;
        cfg = *parsed;
        checks = plan(cfg);
        if (checks.empty()) throw ConfigError("no checks match the selected suites and dimensions");
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    if (cfg.list_only) {
        for (const auto& c : checks) std::cout << c.check_id << '#' << c.trial << '\n';
        return kPass;
    }

    std::vector<CheckReport> reports;
    try {
        reports = run_checks(cfg, checks);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    const std::string body = render(cfg, reports);
    if (cfg.report_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(cfg.report_path, std::ios::binary);
        if (!(f << body)) {
            std::cerr << "cannot write report to " << cfg.report_path << '\n';
            return kConfig;
        }
    }

    std::map<CheckStatus, int> counts;
    for (const auto& r : reports) ++counts[r.status];
    std::cerr << reports.size() << " checks: " << counts[CheckStatus::Pass] << " pass, " << counts[CheckStatus::Fail]
              << " fail, " << counts[CheckStatus::NotConverged] << " not converged, " << counts[CheckStatus::Error]
              << " error\n";
    return exit_code(reports);
}

}  // namespace qjackson::cli
