#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>

#include "tm2net/encode.hpp"
#include "tm2net/machine.hpp"
#include "tm2net/nda.hpp"

namespace tm2net {

enum class Level { Tm, Gs, Nda, Net };
enum class NumericMode { Exact, Float64 };

const char* to_string(Level level) noexcept;
std::optional<Level> parse_level(std::string_view text);
std::optional<NumericMode> parse_mode(std::string_view text);

struct RunOptions {
    Level level = Level::Tm;
    NumericMode mode = NumericMode::Exact;
    std::size_t max_steps = 1000;
    std::optional<std::size_t> digit_bound;
};

struct RunReport {
    Level level = Level::Tm;
    NumericMode mode = NumericMode::Exact;
    std::size_t steps = 0;
    bool halted = false;
    /// Decoded (or, for tm/gs, symbolic) final configuration; exact mode only.
    std::optional<DottedSequence> final_config;
    /// Exact final point; in float mode, the exact run's final point.
    SymbologramPoint final_point;
    std::optional<std::pair<double, double>> final_float_point;
    /// Float mode: first step whose MCL pair differs from the correctly rounded
    /// exact value, and first step whose selected cell differs.
    std::optional<std::size_t> first_divergence;
    std::optional<std::size_t> first_cell_divergence;
    std::string trace_csv;
};

RunReport run_level(const TuringMachine& m, std::span<const SymbolId> input, const RunOptions& opts);
std::string format_report(const TuringMachine& m, const RunReport& r);

/// Replaces one NDA branch (and hence the network built from it) with a
/// perturbed copy, to check that compare_levels notices.
struct FaultInjection {
    CellIndex cell;
};

struct Mismatch {
    std::size_t step = 0;
    std::string level_a;
    std::string level_b;
    std::string value_a;
    std::string value_b;
};

struct CompareResult {
    std::size_t steps = 0;
    bool halted = false;
    std::optional<Mismatch> mismatch;
    bool ok() const { return !mismatch; }
};

/// Runs TM, GS, NDA and exact network in lockstep from the same initial
/// configuration and checks encoded states and halting agree at every step.
CompareResult compare_levels(const TuringMachine& m, std::span<const SymbolId> input, std::size_t max_steps,
                             const std::optional<FaultInjection>& fault = std::nullopt);

/// Shape, unit breakdown, h and weight-set summary.
std::string machine_info(const TuringMachine& m);

}  // namespace tm2net
