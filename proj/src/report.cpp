#include "charcensus/report.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "charcensus/errors.hpp"
#include "charcensus/intfactor.hpp"

namespace charcensus {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& known, const char* where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : known)
            if (it.key() == k) ok = true;
        if (!ok) throw ValidationError(std::string("config: unknown key '") + it.key() + "' in " + where);
    }
}

Zint zint_from_json(const json& v, const char* what) {
    if (v.is_string()) return Zint(v.get<std::string>());
    if (v.is_number_integer()) return Zint(static_cast<long>(v.get<long long>()));
    throw ValidationError(std::string("config: ") + what + " must be an integer or decimal string");
}

IntPolynomial poly_from_json(const json& v) {
    if (!v.is_array() || v.empty())
        throw ValidationError("config: polynomial must be a nonempty array of decimal strings, lowest degree first");
    std::vector<std::string> s;
    for (const auto& c : v) {
        if (c.is_string())
            s.push_back(c.get<std::string>());
        else if (c.is_number_integer())
            s.push_back(std::to_string(c.get<long long>()));
        else
            throw ValidationError("config: polynomial coefficients must be strings or integers");
    }
    return IntPolynomial::from_strings(s);
}

std::string fmt_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    reject_unknown_keys(j,
                        {"polynomial", "T", "enumerator", "threads", "seed", "out", "branch",
                         "allow_case2_formal", "residue_prime_bound", "field_invariants",
                         "orbital_overrides"},
                        "top level");
    if (j.contains("polynomial")) {
        cfg.polynomial = poly_from_json(j["polynomial"]);
        cfg.have_polynomial = true;
    }
    if (j.contains("T")) {
        if (!j["T"].is_array()) throw ValidationError("config: T must be an array of radii");
        for (const auto& t : j["T"]) cfg.T_values.push_back(t.get<double>());
    }
    if (j.contains("enumerator")) cfg.enumerator = enumerator_from_string(j["enumerator"].get<std::string>());
    if (j.contains("threads")) {
        cfg.threads = j["threads"].get<int>();
        if (cfg.threads < 1 || cfg.threads > 512) throw ValidationError("config: threads must be in 1..512");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("allow_case2_formal")) cfg.allow_case2_formal = j["allow_case2_formal"].get<bool>();
    if (j.contains("residue_prime_bound")) {
        cfg.residue_prime_bound = j["residue_prime_bound"].get<std::uint32_t>();
        if (cfg.residue_prime_bound < 1000)
            throw ValidationError("config: residue_prime_bound must be at least 1000");
    }
    if (j.contains("branch")) {
        std::string b = j["branch"].get<std::string>();
        if (b == "auto") {
            cfg.branch = Branch::Case1;
            cfg.branch_explicit = false;
        } else if (b == "case1") {
            cfg.branch = Branch::Case1;
            cfg.branch_explicit = true;
        } else if (b == "case2") {
            cfg.branch = Branch::Case2;
            cfg.branch_explicit = true;
        } else {
            throw ValidationError("config: branch must be auto|case1|case2");
        }
    }
    if (j.contains("field_invariants")) {
        const json& f = j["field_invariants"];
        reject_unknown_keys(f, {"disc_K", "index", "h_K", "R_K", "branch"}, "field_invariants");
        if (f.contains("disc_K")) cfg.ov_disc_K = zint_from_json(f["disc_K"], "disc_K");
        if (f.contains("index")) cfg.ov_index = zint_from_json(f["index"], "index");
        if (f.contains("h_K")) cfg.ov_h_K = zint_from_json(f["h_K"], "h_K");
        if (f.contains("R_K")) cfg.ov_R_K = f["R_K"].get<double>();
        if (f.contains("branch")) {
            std::string b = f["branch"].get<std::string>();
            if (b == "case1")
                cfg.branch = Branch::Case1;
            else if (b == "case2")
                cfg.branch = Branch::Case2;
            else
                throw ValidationError("config: field_invariants.branch must be case1|case2");
            cfg.branch_explicit = true;
        }
    }
    if (j.contains("orbital_overrides")) {
        if (!j["orbital_overrides"].is_array())
            throw ValidationError("config: orbital_overrides must be an array of {p, value}");
        for (const auto& o : j["orbital_overrides"]) {
            reject_unknown_keys(o, {"p", "value"}, "orbital_overrides");
            Zint p = zint_from_json(o.at("p"), "override prime");
            Zint v = zint_from_json(o.at("value"), "override value");
            cfg.orbital_overrides[p.str()] = v;
        }
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("config: cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: JSON parse error: ") + e.what());
    }
    return from_json(j);
}

namespace {

const char* residue_source_name(ResidueSource s) {
    switch (s) {
        case ResidueSource::ExactQuadratic: return "exact-quadratic";
        case ResidueSource::EulerEstimate: return "euler-estimate";
        case ResidueSource::UserSupplied: return "user-supplied";
    }
    return "?";
}

}  // namespace

AnalysisResult analyze(const RunConfig& cfg) {
    if (!cfg.have_polynomial) throw ValidationError("analyze: no polynomial supplied");
    const IntPolynomial& chi = cfg.polynomial;
    int n = chi.degree();
    if (!chi.is_monic()) throw ValidationError("analyze: polynomial must be monic");
    if (n < 2 || n > kMaxDegree) throw ValidationError("analyze: degree must be between 2 and 8");
    if (!is_irreducible_over_Q(chi, cfg.seed)) throw ValidationError("analyze: polynomial is reducible over Q");

    AnalysisResult out;
    out.chi = chi;
    if (!(chi.coeff(0) == Zint(1)))
        out.warnings.push_back("prediction requires constant term 1; analysis proceeds");
    if (!is_totally_real(chi))
        out.warnings.push_back("field is not totally real; the growth law is evaluated formally");

    bool computed = false;
    try {
        auto [order, inv] = maximal_order(chi);
        out.order = order;
        out.have_order = true;
        out.inv = inv;
        computed = true;
    } catch (const ScaleGuardError& e) {
        if (!cfg.ov_disc_K || !cfg.ov_index) throw;
        out.warnings.push_back(std::string("maximal order not computed (") + e.what() +
                               "); using supplied field invariants");
    }
    if (cfg.ov_disc_K) out.inv.disc_K = *cfg.ov_disc_K;
    if (cfg.ov_index) {
        out.inv.index = *cfg.ov_index;
        out.inv.index_factorization = factor_Zint(out.inv.index);
    }
    if (!computed) {
        out.inv.n = n;
        out.inv.disc_chi = discriminant(chi);
        out.inv.r1 = count_real_roots(chi);
        out.inv.r2 = (n - out.inv.r1) / 2;
    }
    if (out.inv.disc_chi != out.inv.index * out.inv.index * out.inv.disc_K)
        throw ValidationError("analyze: disc_K and index contradict disc(chi) = index^2 * disc_K");

    // residue combination h*R/sqrt|disc_K|
    if (cfg.ov_h_K && cfg.ov_R_K) {
        out.inv.h_K = *cfg.ov_h_K;
        out.inv.R_K = *cfg.ov_R_K;
        out.inv.residue_combination =
            cfg.ov_h_K->to_double() * (*cfg.ov_R_K) / std::sqrt(std::fabs(out.inv.disc_K.to_double()));
        out.inv.residue_spread = 0.0;
        out.inv.residue_source = ResidueSource::UserSupplied;
    } else if (n == 2 && out.inv.disc_K > Zint(0)) {
        auto q = quadratic_invariants(out.inv.disc_K);
        out.inv.h_K = q.h;
        out.inv.R_K = q.R;
        out.inv.residue_combination = q.h.to_double() * q.R / std::sqrt(out.inv.disc_K.to_double());
        out.inv.residue_spread = 0.0;
        out.inv.residue_source = ResidueSource::ExactQuadratic;
    } else {
        if (!out.have_order)
            throw ValidationError(
                "analyze: no maximal order and no supplied h_K/R_K; cannot form the residue combination");
        auto [est, spread] = residue_estimate(chi, out.order, out.inv, cfg.residue_prime_bound);
        out.inv.residue_combination = est;
        out.inv.residue_spread = spread;
        out.inv.residue_source = ResidueSource::EulerEstimate;
        out.warnings.push_back(
            "residue combination from a conditionally convergent Euler product; "
            "prefer exact or user-supplied values");
    }

    // local data at index primes (all other primes contribute the factor 1)
    for (const auto& [p, e] : out.inv.index_factorization) {
        if (out.have_order) {
            out.locals.push_back(orbital_integral(chi, out.order, out.inv, p, cfg.orbital_overrides));
        } else {
            auto it = cfg.orbital_overrides.find(p.str());
            if (it == cfg.orbital_overrides.end())
                throw ValidationError("analyze: no maximal order available; supply orbital_overrides for p = " +
                                      p.str());
            LocalGammaData d;
            d.p = p;
            d.serre = e;
            d.orbital = it->second;
            d.source = OrbitalSource::UserSupplied;
            out.locals.push_back(std::move(d));
        }
    }
    return out;
}

json analysis_to_json(const AnalysisResult& a) {
    json j;
    j["polynomial"] = a.chi.to_strings();
    j["disc_chi"] = a.inv.disc_chi.str();
    j["disc_K"] = a.inv.disc_K.str();
    j["index"] = a.inv.index.str();
    j["signature"] = {{"r1", a.inv.r1}, {"r2", a.inv.r2}};
    json res;
    res["combination"] = a.inv.residue_combination;
    res["source"] = residue_source_name(a.inv.residue_source);
    res["spread"] = a.inv.residue_spread;
    if (a.inv.h_K) res["h_K"] = a.inv.h_K->str();
    if (a.inv.R_K) res["R_K"] = *a.inv.R_K;
    j["residue"] = res;
    j["locals"] = json::array();
    for (const auto& d : a.locals) j["locals"].push_back(oracle_to_json(d));
    j["warnings"] = a.warnings;
    return j;
}

json oracle_to_json(const LocalGammaData& d) {
    json j;
    j["p"] = d.p.str();
    j["serre"] = d.serre;
    j["orbital"] = d.orbital.str();
    j["source"] = to_string(d.source);
    json split = json::array();
    for (auto [e, f] : d.splitting.primes_above) split.push_back({e, f});
    j["splitting"] = split;
    return j;
}

std::string predict_csv(const RunConfig& cfg) {
    AnalysisResult a = analyze(cfg);
    int n = a.chi.degree();
    std::ostringstream os;
    os << "T,C_T,euler_product,prediction\n";
    for (double T : cfg.T_values) {
        Prediction pr = predict(n, a.inv, a.locals, cfg.branch, T, cfg.allow_case2_formal);
        double ct = c_t_coefficient(n, a.inv.residue_combination) * std::pow(T, pr.exponent);
        os << fmt_double(T) << "," << fmt_double(ct) << "," << pr.euler_product.str() << ","
           << fmt_double(pr.value) << "\n";
    }
    return os.str();
}

CompareOutcome compare_run(const RunConfig& cfg) {
    AnalysisResult a = analyze(cfg);
    int n = a.chi.degree();
    CompareOutcome out;
    std::ostringstream csv;
    csv << "T,count,prediction,ratio,seconds\n";

    json body;
    body["version"] = kVersion;
    body["seed"] = cfg.seed;
    body["polynomial"] = a.chi.to_strings();
    body["invariants"] = analysis_to_json(a);
    body["branch"] = cfg.branch == Branch::Case2 ? "case2" : "case1";
    body["rows"] = json::array();

    // wall-clock readings stay outside the hashed body so identical configs
    // reproduce identical body hashes
    json row_seconds = json::array();
    for (double T : cfg.T_values) {
        Prediction pr = predict(n, a.inv, a.locals, cfg.branch, T, cfg.allow_case2_formal);
        json row;
        row["T"] = T;
        row["prediction"] = pr.value;
        std::string count_s = "error", ratio_s = "undefined", secs_s = "";
        try {
            CensusResult c = run_census(a.chi, T, cfg.enumerator, cfg.threads);
            count_s = std::to_string(c.count);
            secs_s = fmt_double(c.seconds);
            row_seconds.push_back(c.seconds);
            row["count"] = c.count;
            row["enumerator"] = c.enumerator;
            row["checksum"] = c.checksum;
            if (pr.value > 0.0) {
                double ratio = static_cast<double>(c.count) / pr.value;
                ratio_s = fmt_double(ratio);
                row["ratio"] = ratio;
            } else {
                row["ratio"] = "undefined";
            }
        } catch (const ScaleGuardError& e) {
            row["error"] = e.what();
            row_seconds.push_back(nullptr);
        }
        body["rows"].push_back(row);
        csv << fmt_double(T) << "," << count_s << "," << fmt_double(pr.value) << "," << ratio_s << ","
            << secs_s << "\n";
    }
    out.csv = csv.str();
    json meta;
    auto now = std::chrono::system_clock::now().time_since_epoch();
    meta["timestamp_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
    meta["row_seconds"] = row_seconds;
    out.report["meta"] = meta;
    out.report["body"] = body;
    out.report["body_hash"] = json_body_hash(body);
    return out;
}

void append_run_log(const std::string& path, const json& report) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw ValidationError("run log: cannot open " + path);
    out << report.dump() << "\n";
}

json fit_to_json(const std::vector<std::pair<Zint, Zint>>& samples, int serre) {
    IntPolynomial fit = fit_q_polynomial(samples, serre);
    json j;
    j["serre"] = serre;
    j["samples"] = json::array();
    for (const auto& [p, v] : samples) j["samples"].push_back({p.str(), v.str()});
    j["fit"] = fit.to_strings();
    j["monic"] = true;
    j["degree"] = fit.degree();
    return j;
}

std::uint64_t json_body_hash(const json& body) {
    std::string s = body.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace charcensus
