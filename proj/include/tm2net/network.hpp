#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tm2net/encode.hpp"
#include "tm2net/nda.hpp"
#include "tm2net/rational.hpp"

namespace tm2net {

enum class UnitKind : std::uint8_t { MclX, MclY, BslX, BslY, LtlX, LtlY, Bias };
enum class Activation : std::uint8_t { Heaviside, Ramp, ConstantOne };

const char* to_string(UnitKind kind) noexcept;
const char* to_string(Activation fn) noexcept;

struct Unit {
    UnitKind kind = UnitKind::Bias;
    std::size_t i = 0;  // BSL_x index or LTL column
    std::size_t j = 0;  // BSL_y index or LTL row
    Activation activation = Activation::ConstantOne;
    friend bool operator==(const Unit&, const Unit&) = default;
};

struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
    Rational weight;
    friend bool operator==(const Edge&, const Edge&) = default;
};

struct NetworkMeta {
    std::size_t n_states = 0;
    std::size_t n_symbols = 0;
    Rational h;
    std::vector<std::string> states;
    std::vector<std::string> symbols;
    friend bool operator==(const NetworkMeta&, const NetworkMeta&) = default;
};

/// Number of units: 2 MCL + (n_s + n_s·n_q) BSL + 2·n_s²·n_q LTL + 1 bias.
std::size_t unit_count(std::size_t n_states, std::size_t n_symbols);

/// Canonical unit layout for a machine shape: MCL_x, MCL_y, BSL_x(0..m-1),
/// BSL_y(0..n-1), then LTL_x/LTL_y interleaved per cell in row-major cell
/// order, and the bias unit last.
std::vector<Unit> canonical_units(std::size_t n_states, std::size_t n_symbols);

/// First-order recurrent network of Heaviside/Ramp units with a sparse
/// weighted adjacency. Immutable once constructed; the constructor enforces
/// the architecture's unit counts, wiring pattern and weight value set.
class Network {
public:
    Network(NetworkMeta meta, std::vector<Unit> units, std::vector<Edge> edges);

    const NetworkMeta& meta() const { return meta_; }
    const Rational& h() const { return meta_.h; }
    const std::vector<Unit>& units() const { return units_; }
    /// Nonzero weights sorted by (to, from).
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t size() const { return units_.size(); }

    /// Entry (from, to) of the adjacency matrix; zero when absent.
    Rational weight(std::size_t from, std::size_t to) const;
    std::span<const Edge> incoming(std::size_t to) const;
    std::span<const double> incoming_float(std::size_t to) const;

    std::size_t columns() const { return meta_.n_states * meta_.n_symbols; }
    std::size_t rows() const { return meta_.n_symbols; }

    std::size_t mcl_x() const { return 0; }
    std::size_t mcl_y() const { return 1; }
    std::size_t bsl_x(std::size_t i) const { return 2 + i; }
    std::size_t bsl_y(std::size_t j) const { return 2 + columns() + j; }
    std::size_t ltl_x(const CellIndex& c) const { return 2 + columns() + rows() + 2 * (c.i * rows() + c.j); }
    std::size_t ltl_y(const CellIndex& c) const { return ltl_x(c) + 1; }
    std::size_t bias() const { return units_.size() - 1; }

    friend bool operator==(const Network& a, const Network& b) {
        return a.meta_ == b.meta_ && a.units_ == b.units_ && a.edges_ == b.edges_;
    }

private:
    void validate() const;

    NetworkMeta meta_;
    std::vector<Unit> units_;
    std::vector<Edge> edges_;
    std::vector<double> float_weights_;  // parallel to edges_
    std::vector<std::size_t> offsets_;   // CSR offsets into edges_ by target
};

/// ρ: compiles an NDA into a network. h is the smallest value allowed by the
/// inhibition bound, 2·max(a + λ) over all branches and both axes.
Network build_network(const Nda& n);

/// Activation vector in exact (Rational) or float (double) arithmetic. The
/// bias unit stays at 1. `selected` is the cell whose LTL pair received full
/// branch-selection excitation during the step that produced this state.
template <typename Scalar>
struct NetState {
    std::vector<Scalar> activation;
    std::optional<CellIndex> selected;
};

using ExactState = NetState<Rational>;
using FloatState = NetState<double>;

/// State with only the MCL pair (and the bias unit) set.
ExactState initial_state(const Network& net, const SymbologramPoint& p);
FloatState initial_float_state(const Network& net, const SymbologramPoint& p);

/// One iteration, layered: BSL from the current MCL, then LTL from MCL, BSL
/// and bias, then MCL from the LTL sums.
ExactState net_step(const Network& net, const ExactState& s);
FloatState net_step(const Network& net, const FloatState& s);

inline constexpr double kFloatHaltTolerance = 1e-9;

/// True iff one iteration leaves the MCL pair unchanged (exactly, or within
/// kFloatHaltTolerance per coordinate in float mode).
bool is_halted(const Network& net, const ExactState& s);
bool is_halted(const Network& net, const FloatState& s);

/// Sum of branch-selection input B_x^i + B_y^j reaching the LTL pair of
/// `cell`, from the BSL activations held in `s`.
Rational selection_input(const Network& net, const ExactState& s, const CellIndex& cell);

template <typename Scalar>
struct NetStepRecord {
    Scalar c_x{};
    Scalar c_y{};
    std::optional<CellIndex> active;  // LTL pair selected when stepping from this state
    std::string bsl_pattern;          // e.g. "110000|100"
    bool halted = false;
};

template <typename Scalar>
struct NetTrace {
    std::vector<NetStepRecord<Scalar>> records;
    NetState<Scalar> final_state;
    RunStatus status = RunStatus::Timeout;
    std::size_t steps() const { return records.empty() ? 0 : records.size() - 1; }
};

NetTrace<Rational> run_network(const Network& net, const ExactState& s0, std::size_t max_steps);
NetTrace<double> run_network(const Network& net, const FloatState& s0, std::size_t max_steps);

/// JSON document with meta, units and the sparse weight list; rationals as
/// "num/den" strings.
std::string export_network(const Network& net);
/// Inverse of export_network. Throws Error(MalformedDocument),
/// Error(InconsistentNetwork) or Error(WeightOffValueSet).
Network import_network(const std::string& document);

/// Sparse weight list as CSV: from,to,value.
std::string export_weights_csv(const Network& net);

template <typename Scalar>
std::string trace_csv(const NetTrace<Scalar>& trace);

}  // namespace tm2net
