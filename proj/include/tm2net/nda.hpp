#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tm2net/encode.hpp"
#include "tm2net/gshift.hpp"
#include "tm2net/machine.hpp"
#include "tm2net/rational.hpp"

namespace tm2net {

/// Bi-index (i, j) of a partition cell, 0-based. i runs over the
/// n_q·n_s x-intervals, j over the n_s y-intervals.
struct CellIndex {
    std::size_t i = 0;
    std::size_t j = 0;
    friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Rectangular partition of [0,1)² into half-open cells. Cells are ordered
/// lexicographically by enumeration index: i = γ_q(q)·n_s + γ_s(X), j = γ_s(Z).
class Partition {
public:
    Partition(std::size_t n_states, std::size_t n_symbols);

    std::size_t n_states() const { return n_states_; }
    std::size_t n_symbols() const { return n_symbols_; }
    std::size_t columns() const { return x_.size() - 1; }
    std::size_t rows() const { return y_.size() - 1; }
    std::size_t cell_count() const { return columns() * rows(); }

    /// Interval endpoints ξ_0 < … < ξ_m = 1 and η_0 < … < η_n = 1.
    const std::vector<Rational>& x_endpoints() const { return x_; }
    const std::vector<Rational>& y_endpoints() const { return y_; }

    CellIndex cell_of(const DodTriple& t) const;
    DodTriple triple_of(const CellIndex& c) const;
    std::size_t flat(const CellIndex& c) const { return c.i * rows() + c.j; }

private:
    std::size_t n_states_;
    std::size_t n_symbols_;
    std::vector<Rational> x_;
    std::vector<Rational> y_;
};

/// One affine branch Φ^{i,j}(x, y) = (a_x + λ_x·x, a_y + λ_y·y).
struct Branch {
    Rational a_x;
    Rational a_y;
    Rational lambda_x{1};
    Rational lambda_y{1};
    DodTriple triple;
    std::optional<Action> action;  // empty for halt cells

    SymbologramPoint apply(const SymbologramPoint& p) const {
        return {a_x + lambda_x * p.x, a_y + lambda_y * p.y};
    }
    bool is_identity() const {
        return a_x.is_zero() && a_y.is_zero() && lambda_x == Rational(1) && lambda_y == Rational(1);
    }
};

class Nda {
public:
    explicit Nda(const TuringMachine& m);

    const TuringMachine& machine() const { return machine_; }
    const Partition& partition() const { return partition_; }
    const Branch& branch(const CellIndex& c) const { return branches_.at(partition_.flat(c)); }
    const std::vector<Branch>& branches() const { return branches_; }

    /// Copy with one branch replaced. Used for fault injection.
    Nda with_branch(const CellIndex& c, Branch b) const;

private:
    TuringMachine machine_;
    Partition partition_;
    std::vector<Branch> branches_;  // row-major by flat()
};

Partition build_partition(const TuringMachine& m);

/// Closed-form branch parameters for the shift action on one DoD triple.
Branch derive_branch(const TuringMachine& m, const DodTriple& triple);

Nda build_nda(const TuringMachine& m);

/// Switching rule Θ. Throws Error(OutOfRange) outside [0,1)².
CellIndex theta(const Partition& p, const SymbologramPoint& pt);

SymbologramPoint nda_step(const Nda& n, const SymbologramPoint& pt);

struct NdaTrace {
    std::vector<SymbologramPoint> points;
    std::vector<CellIndex> cells;  // Θ of each point
    RunStatus status = RunStatus::Timeout;
    std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

/// Iterates Φ until a fixed point is reached or max_steps have been taken.
NdaTrace run_nda(const Nda& n, SymbologramPoint p0, std::size_t max_steps);

/// JSON document: partition endpoints and one entry per cell.
std::string export_nda_json(const Nda& n);
/// Per-cell table as CSV: i,j,X,q,Z,F,a_x,a_y,lambda_x,lambda_y.
std::string export_nda_csv(const Nda& n);
/// Orbit rows: step,x,y,cell_i,cell_j with exact "num/den" coordinates.
std::string orbit_csv(const NdaTrace& trace);

}  // namespace tm2net
