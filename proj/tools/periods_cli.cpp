// Batch scenario runner: configures field and dimension scenarios, executes
// the verification suites and the multiplicity calculator, manages the disk
// cache, and emits deterministic reports (byte-identical across reruns of the
// same configuration).
#include <CLI11.hpp>
#include <json.hpp>

#include "periods/cache.hpp"
#include "periods/lparam.hpp"
#include "periods/verifier.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace periods;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::trunc);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + name);
}

ordered_json default_verify_config() {
    ordered_json cfg;
    cfg["p"] = 3;
    cfg["f"] = 1;
    cfg["seed"] = 0;
    cfg["jobs"] = ordered_json::array();
    auto job = [&](std::initializer_list<std::pair<std::string, ordered_json>> kv) {
        ordered_json j;
        for (auto& [k, v] : kv) j[k] = v;
        cfg["jobs"].push_back(j);
    };
    job({{"type", "jacquet"}, {"dim_x", 1}, {"dim_v", 1}, {"b", 1}, {"chi_pick", 0}});
    job({{"type", "jacquet"}, {"dim_x", 1}, {"dim_v", 2}, {"b", 1}, {"chi_pick", 0}});
    job({{"type", "jacquet"}, {"dim_x", 2}, {"dim_v", 1}, {"b", 1}, {"chi_pick", 0}});
    job({{"type", "transfer"}, {"dim_x", 1}, {"dim_v", 1}, {"b", 1}, {"chi_pick", 0}});
    job({{"type", "transfer"}, {"dim_x", 1}, {"dim_v", 2}, {"b", 1}, {"chi_pick", 0}});
    job({{"type", "stratification"}, {"n", 1}});
    job({{"type", "stratification"}, {"n", 2}});
    job({{"type", "filtration"}, {"n", 1}, {"chi_exponent", 0}});
    job({{"type", "filtration"}, {"n", 2}, {"chi_exponent", 0}});
    return cfg;
}

WeilModel model_from_job(const ExtensionContext& ctx, int dim_x, int dim_v, int chi_pick) {
    auto chi_v = ctx.character_family(dim_v % 2).at(chi_pick);
    auto chi_w = ctx.character_family(0).at(chi_pick);
    return build_weil_model(ctx, dim_x, build_space(ctx, 1, dim_v), chi_v, chi_w);
}

void apply_tolerance(VerificationReport& rep, double tol) {
    for (auto& c : rep.checks)
        if (c.residual > tol) c.pass = false;
}

/// Serialized element-code list of a unitary group, cached and cross-checked
/// against the closed-form group order.
std::string unitary_codes_payload(const ExtensionContext& ctx, int eps, int dim) {
    auto model = enumerate_unitary_group(build_space(ctx, eps, dim));
    ordered_json j;
    j["order"] = model.size();
    j["elems"] = ordered_json::array();
    for (auto& m : model.elems) j["elems"].push_back(m.a);
    return j.dump();
}

int run_verify(const std::string& config_path, int seed, double tolerance,
               const std::string& out_dir, const std::string& format,
               const std::string& cache_dir) {
    ordered_json cfg = config_path.empty()
                           ? default_verify_config()
                           : ordered_json::parse(read_file(config_path));
    if (seed >= 0) cfg["seed"] = seed;
    if (!cfg.contains("seed")) cfg["seed"] = 0;
    int p = cfg.at("p").get<int>();
    int f = cfg.value("f", 1);
    ExtensionContext ctx(p, f); // rejects p = 2, non-prime p, oversized fields

    // warm and validate the group-model cache for the dimensions in play
    if (!cache_dir.empty()) {
        DiskCache cache(cache_dir);
        for (auto& job : cfg.at("jobs")) {
            std::string type = job.at("type").get<std::string>();
            if (type == "jacquet" || type == "transfer") {
                int dv = job.at("dim_v").get<int>();
                cached_payload(cache, group_cache_key(ctx, 1, dv, "isometry-full"),
                               [&] { return unitary_codes_payload(ctx, 1, dv); });
            }
        }
        for (auto& note : cache.corruption_log())
            std::cerr << "cache: " << note << "\n";
    }

    std::vector<VerificationReport> reports;
    for (auto& job : cfg.at("jobs")) {
        std::string type = job.at("type").get<std::string>();
        if (type == "jacquet" || type == "transfer") {
            int dim_x = job.at("dim_x").get<int>();
            int dim_v = job.at("dim_v").get<int>();
            int b = job.value("b", 1);
            auto model = model_from_job(ctx, dim_x, dim_v, job.value("chi_pick", 0));
            EMatrix B = emat_identity(dim_x);
            for (int i = 0; i < dim_x; ++i) B.at(i, i) = b;
            reports.push_back(type == "jacquet" ? verify_jacquet_isomorphism(model, B)
                                                : verify_period_transfer(model, B));
        } else if (type == "stratification") {
            reports.push_back(verify_rank_stratification(ctx, job.at("n").get<int>()));
        } else if (type == "filtration") {
            MultiplicativeCharacter chi{MultiplicativeCharacter::Domain::EUnits,
                                        job.value("chi_exponent", 0)};
            reports.push_back(verify_linear_filtration(ctx, job.at("n").get<int>(), chi));
        } else {
            throw std::runtime_error("unknown job type: " + type);
        }
        apply_tolerance(reports.back(), tolerance);
    }

    bool all_pass = !reports.empty();
    for (auto& r : reports) all_pass = all_pass && r.pass();

    std::ostringstream text;
    text << "verification scenario: p=" << p << " f=" << f << " seed=" << cfg["seed"]
         << " tolerance=" << tolerance << "\n\n";
    for (auto& r : reports) text << r.to_text() << "\n";
    text << (all_pass ? "OVERALL: PASS" : "OVERALL: FAIL") << "\n";

    ordered_json jout;
    jout["schema_version"] = 1;
    jout["config"] = cfg;
    jout["tolerance"] = tolerance;
    jout["reports"] = ordered_json::array();
    for (auto& r : reports) jout["reports"].push_back(ordered_json::parse(r.to_json()));
    jout["pass"] = all_pass;

    write_file(out_dir, "verify_report.txt", text.str());
    write_file(out_dir, "verify_report.json", jout.dump(2) + "\n");
    std::cout << (format == "json" ? jout.dump(2) + "\n" : text.str());
    return all_pass ? 0 : 1;
}

ordered_json multiplicity_json(const MultiplicityReport& rep) {
    ordered_json j;
    j["value"] = rep.value;
    j["conditions"] = ordered_json::array();
    for (auto& c : rep.conditions)
        j["conditions"].push_back(ordered_json{{"name", c.name}, {"holds", c.holds}});
    j["statements"] = rep.statements;
    return j;
}

int run_mult(const std::string& config_path, const std::string& out_dir,
             const std::string& format) {
    auto input = parameter_from_json(read_file(config_path));
    ordered_json jout;
    jout["schema_version"] = 1;
    jout["parameter"] = ordered_json::parse(parameter_to_json(input));
    auto sg = component_group(input.phi);
    jout["component_group"] = ordered_json{{"basis", sg.basis},
                                           {"symplectic_part", (int)sg.i_set.size()},
                                           {"pairs", (int)sg.j_pairs.size()}};
    if (!input.phi.odd_parity) {
        jout["shalika_plus"] = multiplicity_json(mult_shalika(input.phi, input.eta, +1));
        jout["shalika_minus"] = multiplicity_json(mult_shalika(input.phi, input.eta, -1));
        jout["linear"] = multiplicity_json(mult_linear_glE(input.phi, input.eta));
        jout["fj_even_plus"] =
            multiplicity_json(mult_fj_even(input.phi, input.eta, input.eps, +1));
        jout["fj_even_minus"] =
            multiplicity_json(mult_fj_even(input.phi, input.eta, input.eps, -1));
    } else {
        jout["fj_odd_plus_plus"] =
            multiplicity_json(mult_fj_odd(input.phi, input.eta, +1, +1));
        jout["fj_odd_minus_plus"] =
            multiplicity_json(mult_fj_odd(input.phi, input.eta, -1, +1));
        jout["fj_odd_plus_minus"] =
            multiplicity_json(mult_fj_odd(input.phi, input.eta, +1, -1));
    }

    std::ostringstream text;
    text << "multiplicity report\n";
    for (auto& [key, value] : jout.items())
        if (value.is_object() && value.contains("value"))
            text << "  " << key << " = " << value["value"] << "\n";

    write_file(out_dir, "mult_report.txt", text.str());
    write_file(out_dir, "mult_report.json", jout.dump(2) + "\n");
    std::cout << (format == "json" ? jout.dump(2) + "\n" : text.str());
    return 0;
}

int run_census(const std::string& config_path, const std::string& out_dir,
               const std::string& format) {
    auto input = parameter_from_json(read_file(config_path));
    auto census = packet_census(input.phi, input.eps);
    write_file(out_dir, "census.csv", census.to_csv());
    write_file(out_dir, "census.json", census.to_json() + "\n");
    std::cout << (format == "json" ? census.to_json() + "\n" : census.to_csv());
    return 0;
}

int run_cache(const std::string& action, const std::string& key, const std::string& cache_dir) {
    DiskCache cache(cache_dir);
    if (action == "list") {
        auto entries = cache.list();
        std::cout << "cache root: " << cache.root() << " (" << entries.size()
                  << " entries)\n";
        for (auto& e : entries)
            std::cout << (e.valid ? "  ok      " : "  CORRUPT ") << e.file << "  " << e.key
                      << "\n";
        return 0;
    }
    if (action == "evict") {
        if (key == "all") {
            std::cout << "evicted " << cache.evict_all() << " entries\n";
        } else if (!key.empty()) {
            std::cout << (cache.evict(key) ? "evicted\n" : "no such entry\n");
        } else {
            std::cerr << "cache evict requires --key KEY or --key all\n";
            return 2;
        }
        return 0;
    }
    if (action == "validate") {
        auto survey = cache.validate();
        int bad = 0;
        for (auto& e : survey)
            if (!e.valid) ++bad;
        std::cout << "validated " << survey.size() << " entries, evicted " << bad
                  << " corrupt\n";
        for (auto& note : cache.corruption_log()) std::cout << "  " << note << "\n";
        return bad == 0 ? 0 : 1;
    }
    std::cerr << "unknown cache action: " << action << " (expected list|evict|validate)\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field verification workbench for unitary period problems"};
    app.require_subcommand(1);

    std::string config_path, out_dir = ".", format = "text";
    std::string cache_dir = DiskCache::default_root();
    int seed = -1;
    double tolerance = 1e-6;

    auto* verify = app.add_subcommand("verify", "run verification jobs from a config");
    verify->add_option("--config", config_path, "scenario config JSON (default: full suite)");
    verify->add_option("--seed", seed, "seed recorded in the report (default 0)");
    verify->add_option("--tolerance", tolerance, "residual tolerance for PASS")
        ->check(CLI::Range(1e-12, 1.0));
    verify->add_option("--out", out_dir, "report output directory");
    verify->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--cache-dir", cache_dir, "cache root (or env PERIODS_CACHE_DIR)");

    auto* mult = app.add_subcommand("mult", "multiplicity formulas for one parameter");
    mult->add_option("--config", config_path, "parameter JSON")->required();
    mult->add_option("--out", out_dir, "report output directory");
    mult->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "text"}));

    auto* census = app.add_subcommand("census", "packet census for one parameter");
    census->add_option("--config", config_path, "parameter JSON")->required();
    census->add_option("--out", out_dir, "report output directory");
    census->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* cache_cmd = app.add_subcommand("cache", "cache administration");
    std::string cache_action, cache_key;
    cache_cmd->add_option("action", cache_action, "list | evict | validate")->required();
    cache_cmd->add_option("--key", cache_key, "entry key for evict (or 'all')");
    cache_cmd->add_option("--cache-dir", cache_dir, "cache root (or env PERIODS_CACHE_DIR)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed())
            return run_verify(config_path, seed, tolerance, out_dir, format, cache_dir);
        if (mult->parsed()) return run_mult(config_path, out_dir, format);
        if (census->parsed()) return run_census(config_path, out_dir, format);
        if (cache_cmd->parsed()) return run_cache(cache_action, cache_key, cache_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
