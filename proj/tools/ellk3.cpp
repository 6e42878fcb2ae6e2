// Command line front end: classify singular fibres of a Weierstrass model,
// scan coefficient families over small finite fields, run the named theorem
// verifications, and evaluate lattice discriminants.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ellk3/verify.hpp"

using namespace ellk3;
using nlohmann::json;

namespace {

int run_classify(const std::string& path, uint32_t ext, bool as_json) {
    auto mf = parse_model_file(path);
    if (!mf.fq) {
        std::cerr << "classify expects a positive-characteristic model "
                     "(reduce characteristic-0 models first)\n";
        return 2;
    }
    auto rep = classify_all(*mf.fq, ext);
    auto k3 = is_k3(*mf.fq);
    if (as_json) {
        json j;
        j["characteristic"] = mf.characteristic;
        j["ext"] = mf.ext;
        j["k3"] = k3.ok;
        j["k3_reason"] = k3.reason;
        j["sum_v_delta"] = rep.sum_v_delta;
        j["complete"] = rep.complete;
        j["euler_ok"] = rep.euler_ok;
        j["configuration"] = rep.config;
        j["fibres"] = json::array();
        for (auto& f : rep.fibres) {
            json e;
            e["place"] = f.place.str(mf.param);
            e["type"] = f.type.str();
            e["v_delta"] = f.v_delta;
            e["components"] = f.components;
            e["wild_defect"] = f.wild_defect;
            e["reductions"] = f.minimality_reductions;
            j["fibres"].push_back(e);
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "place | type | v(Delta) | components | wild defect\n";
    std::cout << rep.summary(mf.param);
    if (!rep.complete)
        std::cout << "warning: Delta keeps an unsplit factor of degree " << rep.unsplit_degree
                  << " over the searched extension; raise --ext to split it\n";
    std::cout << (k3.ok ? "K3: yes" : "K3: no (" + k3.reason + ")") << "\n";
    std::cout << "configuration: [";
    for (size_t i = 0; i < rep.config.size(); ++i)
        std::cout << (i ? ", " : "") << rep.config[i];
    std::cout << "]\n";
    return 0;
}

std::pair<uint32_t, uint32_t> parse_field_spec(const std::string& s) {
    auto caret = s.find('^');
    if (caret == std::string::npos) return {uint32_t(std::stoul(s)), 1};
    return {uint32_t(std::stoul(s.substr(0, caret))),
            uint32_t(std::stoul(s.substr(caret + 1)))};
}

int run_scan(const std::string& family, const std::string& field_spec, bool exhaustive,
             uint32_t jobs, uint64_t sample, const std::string& out_dir, bool as_json) {
    auto [p, k] = parse_field_spec(field_spec);
    const FiniteField& F = FiniteField::get(p, k);
    ScanOptions opts;
    opts.jobs = jobs;
    opts.exhaustive = exhaustive;
    opts.sample = sample;
    auto rep = scan_family(parse_scan_family(family), F, opts);
    std::filesystem::create_directories(out_dir);
    auto write_witness = [&](const char* tag, const std::optional<ScanWitness>& w) {
        if (!w) return std::string();
        std::string path = out_dir + "/witness_" + family + "_" + tag + ".model";
        std::ofstream f(path);
        f << "# scan witness: " << w->type.str() << " at " << w->place << ", tuple "
          << w->index << "\n";
        f << w->model_text;
        return path;
    };
    std::string mw = write_witness("mult", rep.mult_witness);
    std::string sw = write_witness("star", rep.star_witness);
    if (as_json) {
        json j;
        j["family"] = family;
        j["field"] = field_spec;
        j["exhaustive"] = rep.exhaustive;
        j["total"] = rep.total;
        j["tested"] = rep.tested;
        j["degenerate_skipped"] = rep.skipped_degenerate;
        j["max_multiplicative"] = rep.max_multiplicative;
        j["max_additive_star"] = rep.max_additive_star;
        if (!mw.empty()) j["mult_witness"] = mw;
        if (!sw.empty()) j["star_witness"] = sw;
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << rep.summary();
    if (!mw.empty()) std::cout << "multiplicative witness written to " << mw << "\n";
    if (!sw.empty()) std::cout << "additive witness written to " << sw << "\n";
    return 0;
}

int run_verify(const std::string& which, const std::string& model_path,
               const std::string& out_dir) {
    std::vector<VerifyResult> results;
    if (which == "thm20") {
        results.push_back(verify_thm20_odd());
        results.push_back(verify_thm20_char2());
    } else if (which == "prop19") {
        results.push_back(verify_prop19_char2());
    } else if (which == "thm15star") {
        results.push_back(verify_thm15star());
        results.push_back(verify_prop14star());
    } else if (which == "prop14star") {
        results.push_back(verify_prop14star());
    } else if (which == "congruences") {
        for (auto sc : {CongruenceScenario::I20_odd_char,
                        CongruenceScenario::I15star_far_odd_char}) {
            auto proof = congruence_proof(sc);
            VerifyResult r;
            r.name = sc == CongruenceScenario::I20_odd_char ? "congruence_i20"
                                                            : "congruence_i15star";
            r.verdict = proof.all_excluded ? Verdict::pass : Verdict::fail;
            r.transcript = proof.transcript;
            results.push_back(std::move(r));
        }
    } else if (which == "corollary") {
        results.push_back(verify_corollary_bad_reduction(model_path));
    } else {
        std::cerr << "unknown verification '" << which
                  << "' (expected thm20 | prop19 | thm15star | prop14star | congruences | "
                     "corollary)\n";
        return 2;
    }
    std::filesystem::create_directories(out_dir);
    bool all_pass = true;
    for (const auto& r : results) {
        std::string path = out_dir + "/" + r.name + ".txt";
        std::ofstream f(path);
        f << r.transcript;
        std::cout << r.name << ": " << verdict_str(r.verdict) << "  (transcript: " << path
                  << ")\n";
        if (r.verdict == Verdict::fail || r.verdict == Verdict::inconclusive) all_pass = false;
    }
    return all_pass ? 0 : 1;
}

int run_lattice(const std::string& path, bool as_json) {
    auto cfg = parse_lattice_config_file(path);
    auto d = shioda_tate_discr(cfg);
    auto primes = artin_compatible_primes(d);
    if (as_json) {
        json j;
        j["discr"] = d.value.str();
        j["up_to_even_p_power"] = d.up_to_even_p_power;
        j["artin_compatible_primes"] = primes;
        if (cfg.mw_rank == 1) j["height"] = height_pairing(cfg).str();
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "|discr| = " << d.value.str() << " (up to p^{2k})\n";
    if (cfg.mw_rank == 1)
        std::cout << "height <P,P> = " << height_pairing(cfg).str() << "\n";
    if (primes.empty()) {
        std::cout << "artin: incompatible for every p\n";
    } else {
        std::cout << "artin: compatible only for";
        for (uint32_t p : primes) {
            auto c = artin_compatible(d, p);
            std::cout << " p=" << p << " (sigma0=" << c.sigma0 << ")";
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"singular fibres of elliptic surfaces over P^1: classification, "
                 "scans, and maximal-fibre verifications"};
    app.require_subcommand(1);

    std::string model_path, family, field_spec = "2^1", out_dir = "transcripts";
    std::string config_path, which;
    uint32_t ext = 8, jobs = 1;
    uint64_t sample = 1000000;
    bool exhaustive = false, as_json = false;

    auto* classify = app.add_subcommand("classify", "classify all singular fibres of a model");
    classify->add_option("model", model_path, "model file")->required();
    classify->add_option("--ext", ext, "search roots of Delta up to GF(p^ext)");
    classify->add_flag("--json", as_json, "machine-readable output");

    auto* scan = app.add_subcommand("scan", "enumerate a coefficient family and record maxima");
    scan->add_option("--family", family, "case_i | case_ii | case_iii | case_ii_star | case_iii_star")
        ->required();
    scan->add_option("--field", field_spec, "coefficient field, e.g. 2 or 2^2");
    scan->add_flag("--exhaustive", exhaustive, "force exhaustive enumeration");
    scan->add_option("--jobs", jobs, "worker threads");
    scan->add_option("--sample", sample, "tuples when sampling");
    scan->add_option("--out", out_dir, "directory for witness files");
    scan->add_flag("--json", as_json, "machine-readable output");

    auto* verify = app.add_subcommand("verify", "run a named maximal-fibre verification");
    verify->add_option("name", which, "thm20 | prop19 | thm15star | prop14star | congruences | corollary")
        ->required();
    verify->add_option("--model", model_path, "external model file (corollary)");
    verify->add_option("--out", out_dir, "directory for transcripts");

    auto* lattice = app.add_subcommand("lattice", "discriminant of a fibre configuration");
    lattice->add_option("--config", config_path, "lattice configuration file")->required();
    lattice->add_flag("--json", as_json, "machine-readable output");

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify->parsed()) return run_classify(model_path, ext, as_json);
        if (scan->parsed())
            return run_scan(family, field_spec, exhaustive, jobs, sample, out_dir, as_json);
        if (verify->parsed()) return run_verify(which, model_path, out_dir);
        if (lattice->parsed()) return run_lattice(config_path, as_json);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
