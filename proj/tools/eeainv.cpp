// eeainv: synthesize, simulate, verify, trace, count and estimate the
// reversible modular-inversion circuit.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "eea/estimate.hpp"
#include "eea/numeric.hpp"
#include "eea/synth.hpp"
#include "json.hpp"

using namespace eea;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

mpz_class pick_modulus(uint64_t p, int n) {
    if (p && n) throw UsageError("give either --prime or --n, not both");
    if (p) {
        if (p < 5 || !is_prime(p)) throw UsageError("modulus must be an odd prime >= 5");
        return mpz_class(std::to_string(p));
    }
    if (n < 3) throw UsageError("n must be at least 3");
    if (n > 4096) throw UsageError("n must be at most 4096");
    return largest_prime_below_pow2(n);
}

uint64_t small_prime(uint64_t p) {
    if (p == 0) throw UsageError("--prime is required");
    if (p < 5 || !is_prime(p)) throw UsageError(std::to_string(p) + " is not an odd prime >= 5");
    return p;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void print_counts(const ResourceReport& r, int inversion_width, bool per_block, bool json) {
    if (json) {
        nlohmann::json j;
        j["toffoli"] = r.total.toffoli;
        j["cnot"] = r.total.cnot;
        j["x"] = r.total.x;
        j["width"] = r.width;
        j["inversion_width"] = inversion_width;
        if (per_block)
            for (const auto& [k, v] : r.per_block)
                j["per_block"][k] = {{"toffoli", v.toffoli}, {"cnot", v.cnot}, {"x", v.x}};
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << "toffoli\t" << r.total.toffoli << "\ncnot\t" << r.total.cnot << "\nx\t"
              << r.total.x << "\nwidth\t" << r.width << "\ninversion_width\t" << inversion_width
              << '\n';
    if (per_block) {
        std::cout << "block\ttoffoli\tcnot\tx\n";
        for (const auto& [k, v] : r.per_block)
            std::cout << k << '\t' << v.toffoli << '\t' << v.cnot << '\t' << v.x << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reversible modular inversion: synthesis, verification and resource estimates"};
    app.require_subcommand(1);

    uint64_t p = 0, x = 0;
    int n = 0;
    std::string out, format = "text", circuit_path;
    bool all = false, oracle = false, per_block = false, use_model = false, use_circuit = false,
         ecdlp = false;
    uint64_t cap = 1u << 13;
    int windows = 0;

    auto* synth = app.add_subcommand("synth", "write the lowered circuit and a manifest");
    synth->add_option("--prime", p, "odd prime modulus");
    synth->add_option("--n", n, "bit size; uses the largest prime below 2^n");
    synth->add_option("--out", out, "circuit path; the manifest goes to <out>.manifest.json");
    synth->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* simulate = app.add_subcommand("simulate", "run a circuit file on one input");
    simulate->add_option("--circuit", circuit_path, "circuit file (text or json)")->required();
    simulate->add_option("--prime", p, "modulus the circuit was built for")->required();
    simulate->add_option("--x", x, "input value")->required();

    auto* verify = app.add_subcommand("verify", "simulate inputs and check the inverse");
    verify->add_option("--prime", p, "odd prime modulus")->required();
    auto* all_opt = verify->add_flag("--all", all, "every x in [1, p-1] (default)");
    verify->add_option("--x", x, "single input")->excludes(all_opt);
    verify->add_flag("--oracle", oracle, "also cross-check against the step model");
    verify->add_option("--cap", cap, "largest modulus allowed (default 8192)");

    auto* trace = app.add_subcommand("trace", "per-step state trace as TSV");
    trace->add_option("--prime", p, "odd prime modulus")->required();
    trace->add_option("--x", x, "input value")->required();
    auto* model_flag = trace->add_flag("--model", use_model, "trace the step model (default)");
    trace->add_flag("--circuit", use_circuit, "decode the simulated circuit")->excludes(model_flag);

    auto* model_trace = app.add_subcommand("model-trace", "step-model trace as TSV");
    model_trace->add_option("--prime", p, "odd prime modulus")->required();
    model_trace->add_option("--x", x, "input value")->required();

    auto* cnt = app.add_subcommand("count", "stream the circuit and count gates");
    cnt->add_option("--n", n, "bit size; uses the largest prime below 2^n");
    cnt->add_option("--prime", p, "odd prime modulus");
    cnt->add_flag("--per-block", per_block, "per-block table");
    cnt->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* est = app.add_subcommand("estimate", "closed-form widths and gate counts");
    est->add_option("--n", n, "bit size (omit for the full comparison table)");
    est->add_flag("--ecdlp", ecdlp, "ECDLP roll-up");
    est->add_option("--windows", windows, "window size w (default 2 ceil(log2 n))");
    est->add_option("--format", format, "text, tsv or json")
        ->check(CLI::IsMember({"text", "tsv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (synth->parsed()) {
            InversionSynth s(pick_modulus(p, n));
            Circuit c = lower(s.build());
            std::string text = format == "json" ? serialize_json(c) : serialize(c);
            if (out.empty()) {
                std::cout << text;
            } else {
                write_text(out, text);
                write_text(out + ".manifest.json", manifest_json(s) + "\n");
                std::cerr << "wrote " << out << " (" << c.gates.size() << " gates, width "
                          << c.width << ")\n";
            }
            return kOk;
        }

        if (simulate->parsed()) {
            InversionSynth s(small_prime(p));
            const QubitLayout& L = s.layout();
            if (x < 1 || x >= p) throw UsageError("x must lie in [1, p-1]");
            std::string text = read_text(circuit_path);
            Circuit c = text.find_first_not_of(" \t\r\n") != std::string::npos &&
                                text[text.find_first_not_of(" \t\r\n")] == '{'
                            ? parse_json(text)
                            : parse(text);
            if (c.width != L.width()) throw UsageError("circuit width does not match the modulus");
            Simulator sim(c.width);
            set_input(L, sim, 0, x);
            sim.run(c);
            uint64_t got = read_output(L, sim, 0);
            bool clean = auxiliaries_clean(L, sim, 0);
            std::cout << "output\t" << got << "\nclean\t" << (clean ? "yes" : "no") << '\n';
            return clean ? kOk : kFail;
        }

        if (verify->parsed()) {
            small_prime(p);
            if (cap != (1u << 13)) std::cerr << "warning: modulus cap raised to " << cap << '\n';
            if (p > cap) throw UsageError("modulus above the verification cap");
            std::vector<uint64_t> xs;
            if (x) {
                if (x >= p) throw UsageError("x must lie in [1, p-1]");
                xs.push_back(x);
            } else {
                for (uint64_t v = 1; v < p; ++v) xs.push_back(v);
            }
            InversionSynth s(p);
            Circuit c = s.build();
            VerifyResult r = verify_inputs(s, c, xs);
            uint64_t model_bad = 0;
            if (oracle)
                for (uint64_t v : xs)
                    if (run_inversion(ProblemInstance(p, v), s.schedule().steps) != *egcd_inverse(v, p))
                        ++model_bad;
            for (const auto& f : r.failures)
                std::cout << "FAIL x=" << f.x << " got=" << f.got << " want=" << f.want
                          << " input_kept=" << f.input_kept << " clean=" << f.clean << '\n';
            if (xs.size() == 1 && r.failures.empty())
                std::cout << "x=" << xs[0] << " inverse=" << *egcd_inverse(xs[0], p) << '\n';
            std::cout << (r.checked - r.failures.size()) << "/" << r.checked << " pass";
            if (oracle) std::cout << ", model oracle mismatches " << model_bad;
            std::cout << '\n';
            return r.failures.empty() && model_bad == 0 ? kOk : kFail;
        }

        if (trace->parsed() || model_trace->parsed()) {
            ProblemInstance inst(small_prime(p), x);
            if (use_circuit) {
                InversionSynth s(p);
                std::cout << trace_tsv(circuit_trace(s, x));
            } else {
                std::cout << trace_tsv(classical_trace(inst));
            }
            return kOk;
        }

        if (cnt->parsed()) {
            if (!p && n > 512) throw UsageError("count streams at most n = 512");
            InversionSynth s(pick_modulus(p, n));
            GateCounter gc;
            s.emit(gc);
            print_counts(gc.report(s.layout().width()), s.layout().inversion_width(), per_block,
                         format == "json");
            return kOk;
        }

        if (est->parsed()) {
            if (!n) {
                auto rows = table_report();
                std::cout << (format == "json" ? report_json(rows) + "\n" : report_tsv(rows));
                return kOk;
            }
            if (n < 8) throw UsageError("estimates need n >= 8");
            if (est->count("--windows") && windows < 1) throw UsageError("window size must be >= 1");
            nlohmann::json j;
            j["n"] = n;
            j["inversion_width"] = inversion_width(n);
            j["inversion_toffoli_leading"] = inversion_toffoli_leading(n);
            j["inversion_cnot_leading"] = inversion_cnot_leading(n);
            j["inversion_coefficient"] = inversion_coefficient();
            if (auto r = reference_counts(n))
                j["reference"] = {{"toffoli", r->toffoli}, {"cnot", r->cnot}};
            for (const auto& b : per_block_breakdown(n))
                j["per_block"][b.block] = {{"coefficient", b.coeff}, {"toffoli", b.toffoli}};
            if (ecdlp) {
                EcdlpTotals t = ecdlp_totals(n, windows ? std::optional<int>(windows) : std::nullopt);
                j["ecdlp"] = {{"qubits", ecdlp_width(n)},
                              {"qubit_constant_fitted", ecdlp_width_constant},
                              {"window", t.window},
                              {"window_count", t.window_count},
                              {"point_addition_toffoli", t.point_addition_cost},
                              {"toffoli_leading", t.toffoli_leading},
                              {"lookup_toffoli_per_window", t.lookup_per_window}};
                if (auto w = reference_ecdlp_width(n)) j["ecdlp"]["reference_qubits"] = *w;
            }
            if (format == "json") {
                std::cout << j.dump(2) << '\n';
                return kOk;
            }
            std::printf("model\tinversion_width\t%d\n", inversion_width(n));
            std::printf("model\tinversion_toffoli\t%.6e\n", inversion_toffoli_leading(n));
            std::printf("model\tinversion_cnot\t%.6e\n", inversion_cnot_leading(n));
            if (auto r = reference_counts(n)) {
                std::printf("reference\tinversion_toffoli\t%.2e\n", r->toffoli);
                std::printf("reference\tinversion_cnot\t%.2e\n", r->cnot);
            }
            for (const auto& b : per_block_breakdown(n))
                std::printf("model\tblock_%s\t%.6e\n", b.block.c_str(), b.toffoli);
            if (ecdlp) {
                const auto& e = j["ecdlp"];
                std::printf("model\tecdlp_qubits\t%d\t(constant %d fitted)\n", ecdlp_width(n),
                            ecdlp_width_constant);
                if (auto w = reference_ecdlp_width(n)) std::printf("reference\tecdlp_qubits\t%d\n", *w);
                std::printf("model\twindow\t%d\n", e["window"].get<int>());
                std::printf("model\twindow_count\t%.4f\n", e["window_count"].get<double>());
                std::printf("model\tpoint_addition_toffoli\t%.6e\n",
                            e["point_addition_toffoli"].get<double>());
                std::printf("model\tecdlp_toffoli\t%.6e\n", e["toffoli_leading"].get<double>());
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
