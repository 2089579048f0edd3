#include "tm2net/pipeline.hpp"

#include <map>
#include <set>
#include <sstream>

#include "tm2net/error.hpp"
#include "tm2net/gshift.hpp"
#include "tm2net/network.hpp"

namespace tm2net {

const char* to_string(Level level) noexcept {
    switch (level) {
        case Level::Tm: return "tm";
        case Level::Gs: return "gs";
        case Level::Nda: return "nda";
        case Level::Net: return "net";
    }
    return "?";
}

std::optional<Level> parse_level(std::string_view text) {
    for (Level l : {Level::Tm, Level::Gs, Level::Nda, Level::Net})
        if (text == to_string(l)) return l;
    return std::nullopt;
}

std::optional<NumericMode> parse_mode(std::string_view text) {
    if (text == "exact") return NumericMode::Exact;
    if (text == "float64") return NumericMode::Float64;
    return std::nullopt;
}

namespace {

std::string point_text(const SymbologramPoint& p) { return "(" + p.x.to_string() + ", " + p.y.to_string() + ")"; }

// CSV rows shared by the symbolic levels: the encoded point, the partition
// cell and the readable configuration.
std::string symbolic_trace_csv(const TuringMachine& m, const std::vector<DottedSequence>& configs, bool halted) {
    const Partition p = build_partition(m);
    std::ostringstream os;
    os << "step,c_x,c_y,active_cell_i,active_cell_j,halted,configuration\n";
    for (std::size_t t = 0; t < configs.size(); ++t) {
        const SymbologramPoint pt = encode(m, configs[t]);
        const CellIndex c = p.cell_of(dod_of(configs[t]));
        const bool last_halted = halted && t + 1 == configs.size();
        os << t << ',' << pt.x << ',' << pt.y << ',' << c.i << ',' << c.j << ',' << (last_halted ? 1 : 0) << ','
           << format_dotted(m, configs[t]) << '\n';
    }
    return os.str();
}

std::vector<DottedSequence> run_gs(const GeneralizedShift& g, DottedSequence c, std::size_t max_steps, bool& halted) {
    std::vector<DottedSequence> out{std::move(c)};
    halted = false;
    while (true) {
        DottedSequence next = gs_step(g, out.back());
        if (next == out.back()) {
            halted = true;
            break;
        }
        if (out.size() - 1 >= max_steps) break;
        out.push_back(std::move(next));
    }
    return out;
}

void fill_from_configs(const TuringMachine& m, RunReport& r, const std::vector<DottedSequence>& configs, bool halted) {
    r.steps = configs.size() - 1;
    r.halted = halted;
    r.final_config = configs.back();
    r.final_point = encode(m, configs.back());
    r.trace_csv = symbolic_trace_csv(m, configs, halted);
}

}  // namespace

RunReport run_level(const TuringMachine& m, std::span<const SymbolId> input, const RunOptions& opts) {
    RunReport r;
    r.level = opts.level;
    r.mode = opts.level == Level::Net ? opts.mode : NumericMode::Exact;
    const DottedSequence c0 = initial_config(m, input);

    switch (opts.level) {
        case Level::Tm: {
            const TmTrace t = run_tm(m, c0, opts.max_steps);
            fill_from_configs(m, r, t.configs, t.status == RunStatus::Halted);
            break;
        }
        case Level::Gs: {
            bool halted = false;
            const auto configs = run_gs(build_gshift(m), c0, opts.max_steps, halted);
            fill_from_configs(m, r, configs, halted);
            break;
        }
        case Level::Nda: {
            const NdaTrace t = run_nda(build_nda(m), encode(m, c0), opts.max_steps);
            r.steps = t.steps();
            r.halted = t.status == RunStatus::Halted;
            r.final_point = t.points.back();
            r.final_config = decode(m, r.final_point, opts.digit_bound);
            r.trace_csv = orbit_csv(t);
            break;
        }
        case Level::Net: {
            const Network net = build_network(build_nda(m));
            const SymbologramPoint p0 = encode(m, c0);
            const auto exact = run_network(net, initial_state(net, p0), opts.max_steps);
            r.final_point = {exact.final_state.activation[net.mcl_x()], exact.final_state.activation[net.mcl_y()]};
            if (r.mode == NumericMode::Exact) {
                r.steps = exact.steps();
                r.halted = exact.status == RunStatus::Halted;
                r.final_config = decode(m, r.final_point, opts.digit_bound);
                r.trace_csv = trace_csv(exact);
                break;
            }
            const auto approx = run_network(net, initial_float_state(net, p0), opts.max_steps);
            r.steps = approx.steps();
            r.halted = approx.status == RunStatus::Halted;
            r.final_float_point = {approx.final_state.activation[net.mcl_x()],
                                   approx.final_state.activation[net.mcl_y()]};
            r.trace_csv = trace_csv(approx);
            const std::size_t common = std::min(exact.records.size(), approx.records.size());
            for (std::size_t t = 0; t < common; ++t) {
                const auto& e = exact.records[t];
                const auto& f = approx.records[t];
                if (!r.first_divergence && (f.c_x != e.c_x.to_double() || f.c_y != e.c_y.to_double()))
                    r.first_divergence = t;
                if (!r.first_cell_divergence && f.active != e.active) r.first_cell_divergence = t;
            }
            if (exact.records.size() != approx.records.size()) {
                if (!r.first_divergence) r.first_divergence = common;
                if (!r.first_cell_divergence) r.first_cell_divergence = common;
            }
            break;
        }
    }
    return r;
}

std::string format_report(const TuringMachine& m, const RunReport& r) {
    std::ostringstream os;
    os << "level: " << to_string(r.level) << " (" << (r.mode == NumericMode::Exact ? "exact" : "float64") << ")\n";
    os << "status: " << (r.halted ? "halted" : "timeout") << " after " << r.steps << " steps\n";
    if (r.final_config) {
        os << "state: " << m.state_name(r.final_config->state) << '\n';
        os << "tape: " << format_tape(m, *r.final_config) << '\n';
        os << "dotted: " << format_dotted(m, *r.final_config) << '\n';
    }
    if (r.final_float_point) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", r.final_float_point->first, r.final_float_point->second);
        os << "point: " << buf << '\n';
        os << "exact point: " << point_text(r.final_point) << '\n';
        if (r.first_divergence)
            os << "first divergence from exact: step " << *r.first_divergence << '\n';
        else
            os << "first divergence from exact: none\n";
        if (r.first_cell_divergence)
            os << "first branch-selection divergence: step " << *r.first_cell_divergence << '\n';
        else
            os << "first branch-selection divergence: none\n";
    } else {
        os << "point: " << point_text(r.final_point) << '\n';
    }
    return os.str();
}

CompareResult compare_levels(const TuringMachine& m, std::span<const SymbolId> input, std::size_t max_steps,
                             const std::optional<FaultInjection>& fault) {
    const GeneralizedShift g = build_gshift(m);
    Nda nda = build_nda(m);
    if (fault) {
        Branch b = nda.branch(fault->cell);
        const Rational cols(static_cast<std::int64_t>(nda.partition().columns()));
        b.a_x += Rational(1) / (Rational(4) * cols * cols);
        nda = nda.with_branch(fault->cell, std::move(b));
    }
    const Network net = build_network(nda);

    DottedSequence tm = initial_config(m, input);
    DottedSequence gs = tm;
    SymbologramPoint pt = encode(m, tm);
    ExactState ns = initial_state(net, pt);

    CompareResult result;
    auto fail = [&](std::size_t step, const char* a, std::string va, const char* b, std::string vb) {
        result.steps = step;
        result.mismatch = Mismatch{step, a, b, std::move(va), std::move(vb)};
        return result;
    };

    for (std::size_t t = 0;; ++t) {
        const SymbologramPoint tm_pt = encode(m, tm);
        const SymbologramPoint net_pt{ns.activation[net.mcl_x()], ns.activation[net.mcl_y()]};
        if (gs != tm) return fail(t, "tm", format_dotted(m, tm), "gs", format_dotted(m, gs));
        if (pt != tm_pt) return fail(t, "tm", point_text(tm_pt), "nda", point_text(pt));
        if (net_pt != tm_pt) return fail(t, "tm", point_text(tm_pt), "net", point_text(net_pt));

        const bool tm_halted = m.is_halt(tm.state);
        DottedSequence gs_next = gs_step(g, gs);
        SymbologramPoint nda_next;
        try {
            nda_next = nda_step(nda, pt);
        } catch (const Error& e) {
            return fail(t + 1, "tm", tm_halted ? "halted" : point_text(encode(m, tm_step(m, tm))), "nda", e.what());
        }
        ExactState net_next = net_step(net, ns);
        const SymbologramPoint net_next_pt{net_next.activation[net.mcl_x()], net_next.activation[net.mcl_y()]};

        const bool gs_halted = gs_next == gs;
        const bool nda_halted = nda_next == pt;
        const bool net_halted = net_next_pt == net_pt;
        auto flag = [](bool h) { return std::string(h ? "halted" : "running"); };
        if (gs_halted != tm_halted) return fail(t, "tm", flag(tm_halted), "gs", flag(gs_halted));
        if (nda_halted != tm_halted) return fail(t, "tm", flag(tm_halted), "nda", flag(nda_halted));
        if (net_halted != tm_halted) return fail(t, "tm", flag(tm_halted), "net", flag(net_halted));

        if (tm_halted) {
            result.steps = t;
            result.halted = true;
            return result;
        }
        if (t >= max_steps) {
            result.steps = t;
            return result;
        }
        tm = tm_step(m, tm);
        gs = std::move(gs_next);
        pt = std::move(nda_next);
        ns = std::move(net_next);
    }
}

std::string machine_info(const TuringMachine& m) {
    const std::size_t nq = m.n_states();
    const std::size_t ns = m.n_symbols();
    const Network net = build_network(build_nda(m));

    std::ostringstream os;
    os << "n_q: " << nq << '\n';
    os << "n_s: " << ns << '\n';
    os << "cells: " << nq * ns * ns << ", MCL: 2, BSL: " << ns + ns * nq << ", LTL: " << 2 * ns * ns * nq
       << ", bias: 1, total: " << unit_count(nq, ns) << '\n';
    os << "BSL_x: " << nq * ns << ", BSL_y: " << ns << '\n';
    os << "h: " << net.h() << '\n';

    std::map<std::string, std::set<Rational>> by_class;
    for (const Edge& e : net.edges()) {
        const std::string cls = std::string(to_string(net.units()[e.from].kind)) + "->" + to_string(net.units()[e.to].kind);
        by_class[cls].insert(e.weight);
    }
    std::set<Rational> all;
    for (const Edge& e : net.edges()) all.insert(e.weight);
    os << "weights: " << net.edges().size() << " nonzero, " << all.size() << " distinct values\n";
    for (const auto& [cls, values] : by_class) {
        os << "  " << cls << ':';
        for (const Rational& v : values) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

}  // namespace tm2net
