// charcensus: exact integer-matrix censuses under a fixed characteristic
// polynomial, together with the predicted growth law and its local data.
//
// Subcommands: analyze, predict, census, compare, oracle, fit.
// Exit codes: 0 success, 2 validation error, 3 infeasible-scale guard.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "charcensus/errors.hpp"
#include "charcensus/report.hpp"

using namespace charcensus;
using nlohmann::json;

namespace {

IntPolynomial parse_poly_arg(const std::string& arg) {
    json j;
    try {
        j = json::parse(arg);
    } catch (const json::exception&) {
        throw ValidationError("--poly must be a JSON array of decimal strings, e.g. '[\"1\",\"-3\",\"1\"]'");
    }
    if (!j.is_array()) throw ValidationError("--poly must be a JSON array");
    std::vector<std::string> coeffs;
    for (const auto& c : j) {
        if (c.is_string())
            coeffs.push_back(c.get<std::string>());
        else if (c.is_number_integer())
            coeffs.push_back(std::to_string(c.get<long long>()));
        else
            throw ValidationError("--poly entries must be strings or integers");
    }
    return IntPolynomial::from_strings(coeffs);
}

std::vector<double> parse_T_list(const std::string& arg) {
    std::vector<double> out;
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (...) {
            throw ValidationError("--T expects a comma-separated list of radii");
        }
    }
    if (out.empty()) throw ValidationError("--T list is empty");
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw ValidationError("cannot write " + out_path);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"integer-matrix census with a fixed characteristic polynomial"};
    app.require_subcommand(1);
    // global flags (--seed/--threads/--out/--config) remain usable after the
    // subcommand name
    app.fallthrough();

    std::string config_path, poly_arg, t_arg, out_arg, enum_arg, samples_arg, prime_arg;
    std::uint64_t seed_arg = 0;
    bool seed_set = false, threads_set = false;
    int threads_arg = 1;
    int serre_arg = -1;

    app.add_option("--config", config_path, "JSON config file")->expected(1);
    app.add_option("--seed", seed_arg, "RNG seed for randomized factor splitting")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--threads", threads_arg, "worker threads for the census")
        ->each([&](const std::string&) { threads_set = true; });
    app.add_option("--out", out_arg, "output path (tables) / run-log path (compare)");

    auto add_poly = [&](CLI::App* cmd) { cmd->add_option("--poly", poly_arg, "polynomial, JSON coefficient array"); };
    CLI::App* cmd_analyze = app.add_subcommand("analyze", "field invariants and local data as JSON");
    add_poly(cmd_analyze);
    CLI::App* cmd_predict = app.add_subcommand("predict", "growth-law table as CSV");
    add_poly(cmd_predict);
    cmd_predict->add_option("--T", t_arg, "comma-separated radii");
    CLI::App* cmd_census = app.add_subcommand("census", "exact count at one radius, JSON");
    add_poly(cmd_census);
    cmd_census->add_option("--T", t_arg, "radius");
    cmd_census->add_option("--enumerator", enum_arg, "auto|n2|generic|naive");
    CLI::App* cmd_compare = app.add_subcommand("compare", "count vs prediction CSV + run log");
    add_poly(cmd_compare);
    cmd_compare->add_option("--T", t_arg, "comma-separated radii");
    cmd_compare->add_option("--enumerator", enum_arg, "auto|n2|generic|naive");
    CLI::App* cmd_oracle = app.add_subcommand("oracle", "local orbital data at one prime, JSON");
    add_poly(cmd_oracle);
    cmd_oracle->add_option("--prime", prime_arg, "prime p");
    CLI::App* cmd_fit = app.add_subcommand("fit", "q-polynomial fit of oracle samples");
    cmd_fit->add_option("--samples", samples_arg, "JSON: {\"serre\": S, \"samples\": [[p, value], ...]}");
    cmd_fit->add_option("--serre", serre_arg, "Serre invariant of the family");
    for (auto* sc : {cmd_analyze, cmd_predict, cmd_census, cmd_compare, cmd_oracle, cmd_fit})
        sc->fallthrough();

    try {
        app.parse(argc, argv);

        RunConfig cfg;
        if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
        if (!poly_arg.empty()) {
            cfg.polynomial = parse_poly_arg(poly_arg);
            cfg.have_polynomial = true;
        }
        if (!t_arg.empty()) cfg.T_values = parse_T_list(t_arg);
        if (!enum_arg.empty()) cfg.enumerator = enumerator_from_string(enum_arg);
        if (seed_set) cfg.seed = seed_arg;
        if (threads_set) {
            if (threads_arg < 1 || threads_arg > 512) throw ValidationError("--threads must be in 1..512");
            cfg.threads = threads_arg;
        }
        if (!out_arg.empty()) cfg.out_path = out_arg;

        if (*cmd_analyze) {
            auto a = analyze(cfg);
            emit(analysis_to_json(a).dump(2) + "\n", cfg.out_path);
        } else if (*cmd_predict) {
            if (cfg.T_values.empty()) throw ValidationError("predict: no radii given (--T)");
            emit(predict_csv(cfg), cfg.out_path);
        } else if (*cmd_census) {
            if (cfg.T_values.size() != 1) throw ValidationError("census: exactly one radius expected (--T)");
            if (!cfg.have_polynomial) throw ValidationError("census: no polynomial supplied");
            if (!is_irreducible_over_Q(cfg.polynomial, cfg.seed))
                throw ValidationError("census: polynomial is reducible over Q");
            CensusResult r = run_census(cfg.polynomial, cfg.T_values[0], cfg.enumerator, cfg.threads);
            json j;
            j["count"] = r.count;
            j["T"] = r.T;
            j["enumerator"] = r.enumerator;
            j["seconds"] = r.seconds;
            j["checksum"] = r.checksum;
            emit(j.dump(2) + "\n", cfg.out_path);
        } else if (*cmd_compare) {
            if (cfg.T_values.empty()) throw ValidationError("compare: no radii given (--T)");
            auto outcome = compare_run(cfg);
            std::cout << outcome.csv;
            std::string log = cfg.out_path.empty() ? "charcensus-runs.jsonl" : cfg.out_path;
            append_run_log(log, outcome.report);
        } else if (*cmd_oracle) {
            if (prime_arg.empty()) throw ValidationError("oracle: no prime given (--prime)");
            Zint p(prime_arg);
            if (p.probab_prime() == 0) throw ValidationError("oracle: " + prime_arg + " is not prime");
            auto a = analyze(cfg);
            if (!a.have_order) throw ValidationError("oracle: maximal order unavailable");
            auto d = orbital_integral(a.chi, a.order, a.inv, p, cfg.orbital_overrides);
            emit(oracle_to_json(d).dump(2) + "\n", cfg.out_path);
        } else if (*cmd_fit) {
            if (samples_arg.empty()) throw ValidationError("fit: no samples given (--samples)");
            json j;
            try {
                j = json::parse(samples_arg);
            } catch (const json::exception&) {
                std::ifstream f(samples_arg);
                if (!f) throw ValidationError("fit: --samples is neither JSON nor a readable file");
                f >> j;
            }
            int serre = serre_arg >= 0 ? serre_arg : j.value("serre", -1);
            if (serre < 0) throw ValidationError("fit: missing serre invariant (--serre or samples key)");
            if (!j.contains("samples") || !j["samples"].is_array())
                throw ValidationError("fit: samples key must be an array of [p, value] pairs");
            std::vector<std::pair<Zint, Zint>> samples;
            for (const auto& row : j["samples"]) {
                if (!row.is_array() || row.size() != 2) throw ValidationError("fit: each sample is [p, value]");
                auto znum = [](const json& v) {
                    return v.is_string() ? Zint(v.get<std::string>())
                                         : Zint(static_cast<long>(v.get<long long>()));
                };
                samples.emplace_back(znum(row[0]), znum(row[1]));
            }
            emit(fit_to_json(samples, serre).dump(2) + "\n", cfg.out_path);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ValidationError& e) {
        json err{{"error", "validation"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const ScaleGuardError& e) {
        json err{{"error", "infeasible-scale"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"error", "internal"}, {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
