// tm2net: compile Turing machines into generalized shifts, nonlinear
// dynamical automata and recurrent networks, and run or cross-check them.
//
// Exit codes: 0 ok, 1 input error, 2 I/O error, 3 level mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tm2net/error.hpp"
#include "tm2net/gshift.hpp"
#include "tm2net/machine.hpp"
#include "tm2net/nda.hpp"
#include "tm2net/network.hpp"
#include "tm2net/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitIo = 2;
constexpr int kExitMismatch = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw IoError("cannot write '" + path + "'");
}

std::optional<std::size_t> digit_bound_from_env() {
    const char* raw = std::getenv("TM2NET_DIGIT_BOUND");
    if (!raw || !*raw) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (*end != '\0' || v == 0) throw tm2net::Error(tm2net::ErrorCode::OutOfRange, "TM2NET_DIGIT_BOUND must be a positive integer");
    return static_cast<std::size_t>(v);
}

tm2net::TuringMachine load_machine(const std::string& path) { return tm2net::parse_tm(read_file(path)); }

int cmd_compile(const std::string& machine_file, const std::string& target, const std::string& out,
                const std::string& format) {
    const tm2net::TuringMachine m = load_machine(machine_file);
    if (target == "gs") {
        write_output(out, tm2net::dump_gshift(tm2net::build_gshift(m)));
        return kExitOk;
    }
    const tm2net::Nda nda = tm2net::build_nda(m);
    if (target == "nda") {
        write_output(out, format == "csv" ? tm2net::export_nda_csv(nda) : tm2net::export_nda_json(nda));
        return kExitOk;
    }
    const tm2net::Network net = tm2net::build_network(nda);
    write_output(out, format == "csv" ? tm2net::export_weights_csv(net) : tm2net::export_network(net));
    (out.empty() || out == "-" ? std::cerr : std::cout) << net.size() << " units\n";
    return kExitOk;
}

int cmd_run(const std::string& machine_file, const std::string& word, tm2net::RunOptions opts,
            const std::string& trace_path, const std::string& format) {
    const tm2net::TuringMachine m = load_machine(machine_file);
    const auto input = tm2net::parse_word(m, word);
    opts.digit_bound = digit_bound_from_env();
    const tm2net::RunReport r = tm2net::run_level(m, input, opts);
    if (!trace_path.empty()) write_output(trace_path, r.trace_csv);
    if (format == "json") {
        nlohmann::json j;
        j["level"] = tm2net::to_string(r.level);
        j["mode"] = r.mode == tm2net::NumericMode::Exact ? "exact" : "float64";
        j["steps"] = r.steps;
        j["halted"] = r.halted;
        if (r.final_config) {
            j["state"] = m.state_name(r.final_config->state);
            j["tape"] = tm2net::format_tape(m, *r.final_config);
            j["dotted"] = tm2net::format_dotted(m, *r.final_config);
        }
        j["point"] = {r.final_point.x.to_string(), r.final_point.y.to_string()};
        if (r.final_float_point) {
            j["float_point"] = {r.final_float_point->first, r.final_float_point->second};
            j["first_divergence"] = r.first_divergence ? nlohmann::json(*r.first_divergence) : nlohmann::json();
            j["first_cell_divergence"] =
                r.first_cell_divergence ? nlohmann::json(*r.first_cell_divergence) : nlohmann::json();
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << tm2net::format_report(m, r);
    }
    return kExitOk;
}

int cmd_compare(const std::string& machine_file, const std::string& word, std::size_t max_steps,
                const std::string& fault_cell) {
    const tm2net::TuringMachine m = load_machine(machine_file);
    const auto input = tm2net::parse_word(m, word);
    std::optional<tm2net::FaultInjection> fault;
    if (!fault_cell.empty()) {
        std::size_t i = 0, j = 0;
        char comma = 0;
        std::istringstream is(fault_cell);
        if (!(is >> i >> comma >> j) || comma != ',' || i >= m.n_states() * m.n_symbols() || j >= m.n_symbols())
            throw tm2net::Error(tm2net::ErrorCode::OutOfRange, "--inject-fault expects 'i,j' naming a cell");
        fault = tm2net::FaultInjection{{i, j}};
    }
    const tm2net::CompareResult r = tm2net::compare_levels(m, input, max_steps, fault);
    if (r.ok()) {
        std::cout << "all levels agree for " << r.steps << " steps (" << (r.halted ? "halted" : "timeout") << ")\n";
        return kExitOk;
    }
    const auto& mm = *r.mismatch;
    std::cout << "mismatch at step " << mm.step << ": " << mm.level_a << " = " << mm.value_a << ", " << mm.level_b
              << " = " << mm.value_b << '\n';
    return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compile Turing machines to recurrent networks and cross-check every level"};
    app.require_subcommand(1);

    std::string machine_file;
    std::string word;
    std::string out;
    std::string target = "net";
    std::string format;
    std::string level = "tm";
    std::string mode = "exact";
    std::string trace_path;
    std::string fault_cell;
    std::size_t max_steps = 1000;

    auto* compile = app.add_subcommand("compile", "Write the GS table, NDA or network for a machine");
    compile->add_option("machine", machine_file, "Machine description file")->required();
    compile->add_option("--target", target, "gs|nda|net")->check(CLI::IsMember({"gs", "nda", "net"}));
    compile->add_option("--out", out, "Output path (default stdout)");
    compile->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    auto* run = app.add_subcommand("run", "Run one level from the machine's initial configuration");
    run->add_option("machine", machine_file, "Machine description file")->required();
    run->add_option("input", word, "Input word (characters, or space-separated symbols)");
    run->add_option("--level", level, "tm|gs|nda|net")->check(CLI::IsMember({"tm", "gs", "nda", "net"}));
    run->add_option("--mode", mode, "exact|float64 (net level)")->check(CLI::IsMember({"exact", "float64"}));
    run->add_option("--max-steps", max_steps, "Step limit");
    run->add_option("--trace", trace_path, "Write the per-step trace as CSV");
    run->add_option("--format", format, "json|csv: report as JSON (csv keeps the text report)")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* compare = app.add_subcommand("compare", "Run all four levels in lockstep and check they agree");
    compare->add_option("machine", machine_file, "Machine description file")->required();
    compare->add_option("input", word, "Input word");
    compare->add_option("--max-steps", max_steps, "Step limit");
    compare->add_option("--inject-fault", fault_cell, "Perturb the branch of cell 'i,j' (testing)")->group("");

    auto* info = app.add_subcommand("info", "Print machine shape, unit counts, h and weight summary");
    info->add_option("machine", machine_file, "Machine description file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*compile) return cmd_compile(machine_file, target, out, format);
        if (*run) {
            tm2net::RunOptions opts;
            opts.level = *tm2net::parse_level(level);
            opts.mode = *tm2net::parse_mode(mode);
            opts.max_steps = max_steps;
            return cmd_run(machine_file, word, opts, trace_path, format);
        }
        if (*compare) return cmd_compare(machine_file, word, max_steps, fault_cell);
        if (*info) {
            std::cout << tm2net::machine_info(load_machine(machine_file));
            return kExitOk;
        }
    } catch (const IoError& e) {
        std::cerr << "tm2net: " << e.what() << '\n';
        return kExitIo;
    } catch (const tm2net::Error& e) {
        std::cerr << "tm2net: " << machine_file << ": " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
