/*
   Copyright 2026 The rro authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// rro: robust rank-order two-sample test with Monte-Carlo, normal and exact
// reference distributions; distribution fitting; simulation study runner.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "io.hpp"
#include "rro/errors.hpp"
#include "rro/exact_null.hpp"
#include "rro/family.hpp"
#include "rro/fit.hpp"
#include "rro/mc_engine.hpp"
#include "rro/simulation.hpp"
#include "rro/version.hpp"

using nlohmann::ordered_json;

namespace rro::cli {
namespace {

// JSON has no infinities; non-finite values are written as strings.
ordered_json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

ordered_json optional_number(const std::optional<double>& v) {
    return v ? number(*v) : ordered_json(nullptr);
}

ordered_json named_params(const dist::DistributionFamily& family, std::span<const double> p) {
    ordered_json out = ordered_json::object();
    const auto names = family.parameter_names();
    for (std::size_t i = 0; i < names.size() && i < p.size(); ++i) out[names[i]] = p[i];
    return out;
}

ordered_json su_params(const dist::JohnsonSUParams& p) {
    return {{"lambda", p.lambda}, {"gamma", p.gamma}, {"delta", p.delta}, {"xi", p.xi}};
}

ordered_json moments_json(const SampleMoments& m) {
    return {{"mean", m.mean}, {"median", m.median}, {"sd", m.sd}, {"skewness", m.skewness}};
}

ordered_json moments_json(const std::optional<dist::DistributionMoments>& m) {
    if (!m) return nullptr;
    return {{"mean", number(m->mean)},
            {"median", number(m->median)},
            {"sd", number(m->sd)},
            {"skewness", number(m->skewness)}};
}

ordered_json input_json(const std::string& role, const InputFile& f) {
    return {{"role", role}, {"path", f.path}, {"sha256", f.sha256}, {"values", f.values.size()}};
}

ordered_json manifest(const std::string& command, ordered_json options, std::uint64_t seed,
                      ordered_json inputs) {
    return {{"tool", "rro"},
            {"version", kVersion},
            {"command", command},
            {"options", std::move(options)},
            {"seed", seed},
            {"inputs", std::move(inputs)}};
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("RRO_SEED")) {
        std::uint64_t v = 0;
        const std::string text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc() || ptr != text.data() + text.size()) {
            throw UsageError("RRO_SEED is not an unsigned integer: '" + text + "'");
        }
        return v;
    }
    return 0;
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) throw InputError("cannot write '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// test

struct TestOptions {
    std::string x_path;
    std::string y_path;
    std::string method = "mc";
    std::string tail = "two";
    double alpha = 0.05;
    std::size_t mc_samples = kDefaultReplicates;
    std::optional<std::uint64_t> seed;
    std::string family = "johnson-su";
    bool smoothed_p = false;
    std::string format = "text";
    bool paper_constraints = false;
    unsigned workers = 1;
    double exact_cap = kDefaultEnumerationCap;
};

ordered_json result_json(const TestResult& r, const dist::DistributionFamily* family) {
    ordered_json j;
    j["method"] = std::string(to_string(r.method));
    j["tail"] = std::string(to_string(r.tail));
    j["alpha"] = r.alpha;
    j["statistic"] = number(r.statistic.value);
    j["degenerate"] = r.statistic.degenerate;
    j["p_left"] = r.p_left;
    j["p_right"] = r.p_right;
    j["p_two"] = r.p_two;
    j["p_value"] = r.p_value();
    j["reject"] = r.rejects();
    j["critical_left"] = optional_number(r.critical_left);
    j["critical_right"] = optional_number(r.critical_right);
    j["null_cardinality"] = r.null_cardinality;
    if (r.seed) j["mc_seed"] = *r.seed;
    if (r.fits && family) {
        j["fits"] = {{"family", r.fits->family},
                     {"shift", r.fits->shift},
                     {"params_x", named_params(*family, r.fits->params_x)},
                     {"params_y_aligned", named_params(*family, r.fits->params_y_aligned)},
                     {"log_likelihood_x", r.fits->log_likelihood_x},
                     {"log_likelihood_y", r.fits->log_likelihood_y}};
    }
    return j;
}

std::string critical_text(const std::optional<double>& v) {
    if (!v) return "-";
    if (!std::isfinite(*v)) return format_number(*v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", *v);
    return buf;
}

int cmd_test(const TestOptions& o) {
    const std::optional<Tail> tail = parse_tail(o.tail);
    if (!tail) throw UsageError("unknown tail '" + o.tail + "'");
    const std::uint64_t seed = resolve_seed(o.seed);
    const InputFile fx = read_values(o.x_path);
    const InputFile fy = read_values(o.y_path);
    const Sample x(fx.values);
    const Sample y(fy.values);
    const auto family = dist::make_family(o.family, o.paper_constraints);
    if (!family) throw UsageError("unknown family '" + o.family + "'");

    McTestOptions mc;
    mc.replicates = o.mc_samples;
    mc.seed = seed;
    mc.workers = o.workers;
    mc.estimator = o.smoothed_p ? PValueEstimator::smoothed : PValueEstimator::plain;

    std::vector<TestResult> results;
    ordered_json skipped = ordered_json::array();
    const bool all = o.method == "all";
    if (all || o.method == "mc") results.push_back(rro_mc_test(x, y, *family, mc, o.alpha, *tail));
    if (all || o.method == "normal") results.push_back(rro_normal_test(x, y, o.alpha, *tail));
    if (o.method == "exact") {
        results.push_back(rro_exact_test(x, y, o.alpha, *tail, o.exact_cap));
    } else if (all) {
        const double patterns = interleaving_count(x.size(), y.size());
        if (patterns <= o.exact_cap) {
            results.push_back(rro_exact_test(x, y, o.alpha, *tail, o.exact_cap));
        } else {
            skipped.push_back({{"method", "exact"},
                               {"reason", "C(m+n, m) = " + format_number(patterns) +
                                              " interleavings exceeds the cap " +
                                              format_number(o.exact_cap)}});
        }
    }

    if (o.format == "json") {
        ordered_json options{{"method", o.method},
                             {"tail", o.tail},
                             {"alpha", o.alpha},
                             {"mc_samples", o.mc_samples},
                             {"family", o.family},
                             {"smoothed_p", o.smoothed_p},
                             {"paper_constraints", o.paper_constraints},
                             {"exact_cap", o.exact_cap}};
        ordered_json report;
        report["manifest"] = manifest("test", std::move(options), seed,
                                      {input_json("x", fx), input_json("y", fy)});
        report["samples"] = {{"x", moments_json(sample_moments(fx.values))},
                             {"y", moments_json(sample_moments(fy.values))}};
        report["results"] = ordered_json::array();
        for (const TestResult& r : results) report["results"].push_back(result_json(r, family.get()));
        report["skipped"] = skipped;
        std::cout << report.dump(2) << "\n";
        return kExitOk;
    }

    std::printf("robust rank-order test: m=%zu n=%zu tail=%s alpha=%s seed=%llu\n", x.size(),
                y.size(), o.tail.c_str(), format_number(o.alpha).c_str(),
                static_cast<unsigned long long>(seed));
    std::printf("statistic U = %s%s\n", format_number(results.front().statistic.value).c_str(),
                results.front().statistic.degenerate ? " (complete separation)" : "");
    std::printf("%-7s %-12s %-12s %-12s %-14s %-14s %-8s %s\n", "method", "p_left", "p_right",
                "p_two", "crit_left", "crit_right", "reject", "null_size");
    for (const TestResult& r : results) {
        std::printf("%-7s %-12.6g %-12.6g %-12.6g %-14s %-14s %-8s %zu\n",
                    std::string(to_string(r.method)).c_str(), r.p_left, r.p_right, r.p_two,
                    critical_text(r.critical_left).c_str(),
                    critical_text(r.critical_right).c_str(), r.rejects() ? "yes" : "no",
                    r.null_cardinality);
    }
    for (const TestResult& r : results) {
        if (!r.fits) continue;
        std::printf("fitted %s parents (Y aligned by shift %s):\n", r.fits->family.c_str(),
                    format_number(r.fits->shift).c_str());
        const auto names = family->parameter_names();
        for (const auto* side : {&r.fits->params_x, &r.fits->params_y_aligned}) {
            std::printf("  %s:", side == &r.fits->params_x ? "X" : "Y");
            for (std::size_t i = 0; i < names.size(); ++i) {
                std::printf(" %s=%s", names[i].c_str(), format_number((*side)[i]).c_str());
            }
            std::printf("\n");
        }
    }
    for (const auto& s : skipped) {
        std::printf("skipped %s: %s\n", s["method"].get<std::string>().c_str(),
                    s["reason"].get<std::string>().c_str());
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// fit

struct FitCmdOptions {
    std::string input;
    std::string family = "johnson-su";
    std::string format = "text";
    bool paper_constraints = false;
};

int cmd_fit(const FitCmdOptions& o) {
    const auto family = dist::make_family(o.family, o.paper_constraints);
    if (!family) throw UsageError("unknown family '" + o.family + "'");
    const InputFile f = read_values(o.input, family->parameter_dimension());
    const Sample data(f.values);
    const dist::FitResult fit = dist::fit_mle(*family, data);
    const SampleMoments sm = sample_moments(f.values);
    const auto fm = family->analytic_moments(fit.params);

    if (o.format == "json") {
        ordered_json report;
        report["manifest"] =
            manifest("fit",
                     {{"family", o.family}, {"paper_constraints", o.paper_constraints}}, 0,
                     {input_json("input", f)});
        report["family"] = family->name();
        report["parameters"] = named_params(*family, fit.params);
        report["log_likelihood"] = fit.log_likelihood;
        report["evaluations"] = fit.evaluations;
        report["start"] = named_params(*family, fit.start);
        report["start_log_likelihood"] = fit.start_log_likelihood;
        report["sample_moments"] = moments_json(sm);
        report["fitted_moments"] = moments_json(fm);
        std::cout << report.dump(2) << "\n";
        return kExitOk;
    }
    std::printf("%s fit to %zu values from %s\n", family->name().c_str(), data.size(),
                f.path.c_str());
    const auto names = family->parameter_names();
    for (std::size_t i = 0; i < names.size(); ++i) {
        std::printf("  %-8s %s\n", names[i].c_str(), format_number(fit.params[i]).c_str());
    }
    std::printf("log-likelihood %s (start %s, %zu evaluations)\n",
                format_number(fit.log_likelihood).c_str(),
                format_number(fit.start_log_likelihood).c_str(), fit.evaluations);
    std::printf("%-9s %-12s %-12s\n", "moment", "sample", "fitted");
    const auto row = [](const char* name, double s, std::optional<double> d) {
        std::printf("%-9s %-12.6g %s\n", name, s, d ? format_number(*d).c_str() : "-");
    };
    row("mean", sm.mean, fm ? std::optional<double>(fm->mean) : std::nullopt);
    row("median", sm.median, fm ? std::optional<double>(fm->median) : std::nullopt);
    row("sd", sm.sd, fm ? std::optional<double>(fm->sd) : std::nullopt);
    row("skewness", sm.skewness, fm ? std::optional<double>(fm->skewness) : std::nullopt);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateOptions {
    std::string set;
    std::size_t pairs = 5000;
    std::optional<std::size_t> mc_samples;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string sizes;
    std::string alphas;
    unsigned workers = 1;
    bool retain_p = false;
};

const char* method_label(Method m) { return m == Method::mc ? "RRO-MC" : "RRO-N"; }

// Percentages are count/N * 100; ten significant digits drop the round-off tail.
std::string csv_percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Decades 100, 1000, ... up to `top`, plus `top` itself.
std::vector<std::size_t> decade_sweep(std::size_t top) {
    std::vector<std::size_t> out;
    for (std::size_t b = 100; b < top; b *= 10) out.push_back(b);
    out.push_back(top);
    return out;
}

ordered_json parent_target_json(const sim::ParentSpec& p) {
    ordered_json j = ordered_json::object();
    if (p.moments) {
        j["median"] = p.moments->median;
        j["sd"] = p.moments->sd;
        j["skewness"] = p.moments->skewness;
    }
    j["dispersion_doubled"] = p.dispersion_doubled;
    return j;
}

int cmd_simulate(const SimulateOptions& o) {
    const std::uint64_t seed = resolve_seed(o.seed);
    const std::size_t mc = o.mc_samples.value_or(kDefaultReplicates);
    std::vector<sim::SimulationConfig> configs;
    try {
        configs = sim::preset_configs(o.set, o.pairs, mc, seed);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> sizes;
    if (!o.sizes.empty()) sizes = parse_sizes(o.sizes);
    std::optional<std::vector<double>> alphas;
    if (!o.alphas.empty()) alphas = parse_alphas(o.alphas);
    for (sim::SimulationConfig& c : configs) {
        if (sizes) c.size_pairs = *sizes;
        if (alphas) c.alphas = *alphas;
        if (!c.mc_sweep.empty() && o.mc_samples) {
            c.mc_sweep = decade_sweep(*o.mc_samples);
            c.mc_replicates = *o.mc_samples;
        }
        c.workers = o.workers;
        c.retain_p_values = o.retain_p;
        try {
            sim::validate(c);
        } catch (const DomainError& e) {
            throw UsageError(e.what());
        }
    }

    std::ostringstream csv;
    csv << "set_id,skew,m,n,method,alpha,metric_name,metric_value,band_low,band_high,"
           "pair_count,mc_replicates,seed\n";
    ordered_json options{{"set", o.set}, {"pairs", o.pairs}, {"mc_samples", mc}};
    if (sizes) options["sizes"] = o.sizes;
    if (alphas) options["alphas"] = o.alphas;
    ordered_json summary;
    summary["manifest"] = manifest("simulate", std::move(options), seed, ordered_json::array());
    summary["set_id"] = o.set;
    summary["columns"] = {"set_id", "skew", "m", "n", "method", "alpha", "metric_name",
                          "metric_value", "band_low", "band_high", "pair_count", "mc_replicates",
                          "seed"};
    summary["runs"] = ordered_json::array();

    std::size_t row_count = 0;
    for (const sim::SimulationConfig& c : configs) {
        std::fprintf(stderr, "set %s (%s): %zu size pairs x %zu pairs\n", c.set_id.c_str(),
                     std::string(sim::to_string(c.skew)).c_str(), c.size_pairs.size(),
                     c.pair_count);
        const sim::SimulationResult r = sim::run_simulation_set(c);
        ordered_json run;
        run["skew"] = std::string(sim::to_string(c.skew));
        run["tail"] = std::string(to_string(c.tail));
        run["parent_1"] = {{"target", parent_target_json(c.parent_1)},
                           {"params", su_params(r.parent_1)}};
        run["parent_2"] = {{"target", parent_target_json(c.parent_2)},
                           {"params", su_params(r.parent_2)}};
        run["effect_size_target"] = optional_number(c.effect_size_target);
        run["median_shift"] = optional_number(r.median_shift);
        run["rows"] = ordered_json::array();
        for (const sim::MetricRow& row : r.rows) {
            const std::size_t b = row.method == Method::mc ? row.mc_replicates : 0;
            csv << c.set_id << ',' << sim::to_string(c.skew) << ',' << row.m << ',' << row.n
                << ',' << method_label(row.method) << ',' << format_number(row.alpha) << ','
                << row.metric_name << ',' << csv_percent(row.metric_value) << ','
                << csv_percent(row.band.low) << ',' << csv_percent(row.band.high) << ','
                << c.pair_count << ',' << b << ',' << seed << '\n';
            run["rows"].push_back({{"set_id", c.set_id},
                                   {"skew", std::string(sim::to_string(c.skew))},
                                   {"m", row.m},
                                   {"n", row.n},
                                   {"method", method_label(row.method)},
                                   {"alpha", row.alpha},
                                   {"metric_name", row.metric_name},
                                   {"metric_value", row.metric_value},
                                   {"band_low", row.band.low},
                                   {"band_high", row.band.high},
                                   {"pair_count", c.pair_count},
                                   {"mc_replicates", b},
                                   {"seed", seed},
                                   {"rejections", row.rejections}});
            ++row_count;
        }
        if (o.retain_p) {
            run["p_values"] = ordered_json::array();
            for (const auto& p : r.p_values) {
                run["p_values"].push_back({{"m", p.m},
                                           {"n", p.n},
                                           {"method", method_label(p.method)},
                                           {"mc_replicates", p.mc_replicates},
                                           {"values", p.p_values}});
            }
        }
        summary["runs"].push_back(std::move(run));
    }

    const std::filesystem::path dir(o.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw InputError("cannot create output directory '" + o.out + "'");
    const std::string stem = "set_" + o.set;
    write_text_file(dir / (stem + ".csv"), csv.str());
    write_text_file(dir / (stem + ".json"), summary.dump(2) + "\n");
    std::printf("wrote %s and %s (%zu rows)\n", (dir / (stem + ".csv")).string().c_str(),
                (dir / (stem + ".json")).string().c_str(), row_count);
    return kExitOk;
}

}  // namespace
}  // namespace rro::cli

int main(int argc, char** argv) {
    using namespace rro::cli;
    CLI::App app{"Robust rank-order two-sample test with Monte-Carlo null distributions"};
    app.set_version_flag("--version", rro::kVersion);
    app.require_subcommand(1);

    TestOptions test;
    CLI::App* t = app.add_subcommand("test", "Run the test on two samples");
    t->add_option("--x", test.x_path, "File with sample X, one value per line")->required();
    t->add_option("--y", test.y_path, "File with sample Y, one value per line")->required();
    t->add_option("--method", test.method, "Reference distribution")
        ->check(CLI::IsMember({"mc", "normal", "exact", "all"}));
    t->add_option("--tail", test.tail, "Alternative")->check(CLI::IsMember({"left", "right", "two"}));
    t->add_option("--alpha", test.alpha, "Significance level")->check(CLI::Range(0.0, 1.0));
    t->add_option("--mc-samples", test.mc_samples, "Monte-Carlo replicates")
        ->check(CLI::Range(static_cast<std::size_t>(rro::kMinReplicates),
                           static_cast<std::size_t>(100000000)));
    t->add_option("--seed", test.seed, "Master seed (default: $RRO_SEED, else 0)");
    t->add_option("--family", test.family, "Parent family")
        ->check(CLI::IsMember({"johnson-su", "normal"}));
    t->add_flag("--smoothed-p", test.smoothed_p, "Use (k+1)/(B+1) Monte-Carlo p-values");
    t->add_option("--format", test.format)->check(CLI::IsMember({"text", "json"}));
    t->add_flag("--paper-constraints", test.paper_constraints,
                "Restrict Johnson SU fits to gamma > 0");
    t->add_option("--workers", test.workers, "Threads for Monte-Carlo replicates (0: all cores)");
    t->add_option("--exact-cap", test.exact_cap, "Largest C(m+n, m) enumerated exactly")
        ->check(CLI::PositiveNumber);

    FitCmdOptions fit;
    CLI::App* f = app.add_subcommand("fit", "Fit a parent distribution by maximum likelihood");
    f->add_option("--input", fit.input, "File with one value per line")->required();
    f->add_option("--family", fit.family)->check(CLI::IsMember({"johnson-su", "normal"}));
    f->add_option("--format", fit.format)->check(CLI::IsMember({"text", "json"}));
    f->add_flag("--paper-constraints", fit.paper_constraints,
                "Restrict Johnson SU fits to gamma > 0");

    SimulateOptions simulate;
    CLI::App* s = app.add_subcommand("simulate", "Run a simulation set and write CSV/JSON grids");
    s->add_option("--set", simulate.set, "Simulation set")
        ->required()
        ->check(CLI::IsMember(rro::sim::preset_set_ids()));
    s->add_option("--pairs", simulate.pairs, "Sample pairs per size")->check(CLI::Range(100, 100000000));
    s->add_option("--mc-samples", simulate.mc_samples,
                  "Monte-Carlo replicates (set 8: largest count of the sweep)")
        ->check(CLI::Range(static_cast<std::size_t>(rro::kMinReplicates),
                           static_cast<std::size_t>(100000000)));
    s->add_option("--seed", simulate.seed, "Master seed (default: $RRO_SEED, else 0)");
    s->add_option("--out", simulate.out, "Output directory");
    s->add_option("--sizes", simulate.sizes, "Size pairs, e.g. \"15,15;20,40\"");
    s->add_option("--alphas", simulate.alphas, "Significance levels, e.g. \"0.01,0.05\"");
    s->add_option("--workers", simulate.workers, "Worker threads (0: all cores)");
    s->add_flag("--retain-p", simulate.retain_p, "Include every p-value in the JSON summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*t) return cmd_test(test);
        if (*f) return cmd_fit(fit);
        if (*s) return cmd_simulate(simulate);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const rro::FitError& e) {
        std::cerr << "fit failed: " << e.what() << "\n  best point:";
        for (double v : e.best_point()) std::cerr << ' ' << format_number(v);
        std::cerr << "\n  best value: " << format_number(e.best_value())
                  << "\n  evaluations: " << e.evaluations() << "\n";
        return kExitFit;
    } catch (const rro::CalibrationError& e) {
        std::cerr << "calibration failed: " << e.what() << "\n";
        return kExitFit;
    } catch (const rro::EnumerationCapExceeded& e) {
        std::cerr << "exact enumeration refused: " << e.what() << "\n";
        return kExitCap;
    } catch (const rro::DomainError& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
