#include "tm2net/network.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>

#include "tm2net/error.hpp"

namespace tm2net {

const char* to_string(UnitKind kind) noexcept {
    switch (kind) {
        case UnitKind::MclX: return "MCL_x";
        case UnitKind::MclY: return "MCL_y";
        case UnitKind::BslX: return "BSL_x";
        case UnitKind::BslY: return "BSL_y";
        case UnitKind::LtlX: return "LTL_x";
        case UnitKind::LtlY: return "LTL_y";
        case UnitKind::Bias: return "BIAS";
    }
    return "?";
}

const char* to_string(Activation fn) noexcept {
    switch (fn) {
        case Activation::Heaviside: return "heaviside";
        case Activation::Ramp: return "ramp";
        case Activation::ConstantOne: return "constant";
    }
    return "?";
}

std::size_t unit_count(std::size_t n_states, std::size_t n_symbols) {
    return 2 + n_symbols + n_symbols * n_states + 2 * n_symbols * n_symbols * n_states + 1;
}

std::vector<Unit> canonical_units(std::size_t n_states, std::size_t n_symbols) {
    const std::size_t m = n_states * n_symbols;
    const std::size_t n = n_symbols;
    std::vector<Unit> units;
    units.reserve(unit_count(n_states, n_symbols));
    units.push_back({UnitKind::MclX, 0, 0, Activation::Ramp});
    units.push_back({UnitKind::MclY, 0, 0, Activation::Ramp});
    for (std::size_t i = 0; i < m; ++i) units.push_back({UnitKind::BslX, i, 0, Activation::Heaviside});
    for (std::size_t j = 0; j < n; ++j) units.push_back({UnitKind::BslY, 0, j, Activation::Heaviside});
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            units.push_back({UnitKind::LtlX, i, j, Activation::Ramp});
            units.push_back({UnitKind::LtlY, i, j, Activation::Ramp});
        }
    units.push_back({UnitKind::Bias, 0, 0, Activation::ConstantOne});
    return units;
}

// ---------------------------------------------------------------------------
// Construction and validation

Network::Network(NetworkMeta meta, std::vector<Unit> units, std::vector<Edge> edges)
    : meta_(std::move(meta)), units_(std::move(units)) {
    std::erase_if(edges, [](const Edge& e) { return e.weight.is_zero(); });
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.to, a.from) < std::tie(b.to, b.from); });
    for (std::size_t k = 1; k < edges.size(); ++k)
        if (edges[k].to == edges[k - 1].to && edges[k].from == edges[k - 1].from)
            throw Error(ErrorCode::MalformedDocument, "duplicate weight for edge " + std::to_string(edges[k].from) +
                                                          " -> " + std::to_string(edges[k].to));
    edges_ = std::move(edges);
    validate();

    offsets_.assign(units_.size() + 1, 0);
    for (const Edge& e : edges_) ++offsets_[e.to + 1];
    for (std::size_t u = 0; u < units_.size(); ++u) offsets_[u + 1] += offsets_[u];
    float_weights_.reserve(edges_.size());
    for (const Edge& e : edges_) float_weights_.push_back(e.weight.to_double());
}

void Network::validate() const {
    const std::size_t nq = meta_.n_states;
    const std::size_t ns = meta_.n_symbols;
    if (nq == 0 || ns == 0) throw Error(ErrorCode::InconsistentNetwork, "machine shape must be positive");
    if (meta_.states.size() != nq || meta_.symbols.size() != ns)
        throw Error(ErrorCode::InconsistentNetwork, "state/symbol tables do not match n_q/n_s");
    if (meta_.h.sign() <= 0) throw Error(ErrorCode::InconsistentNetwork, "inhibition bias h must be positive");

    const std::size_t m = nq * ns;
    auto count = [&](UnitKind k) {
        return static_cast<std::size_t>(std::count_if(units_.begin(), units_.end(), [k](const Unit& u) { return u.kind == k; }));
    };
    const bool counts_ok = count(UnitKind::MclX) == 1 && count(UnitKind::MclY) == 1 && count(UnitKind::BslX) == m &&
                           count(UnitKind::BslY) == ns && count(UnitKind::LtlX) == m * ns &&
                           count(UnitKind::LtlY) == m * ns && count(UnitKind::Bias) == 1 &&
                           units_.size() == unit_count(nq, ns);
    if (!counts_ok)
        throw Error(ErrorCode::InconsistentNetwork,
                    "unit counts do not match 2 + n_s + n_s*n_q + 2*n_s^2*n_q + 1 = " +
                        std::to_string(unit_count(nq, ns)) + " for (n_q, n_s) = (" + std::to_string(nq) + ", " +
                        std::to_string(ns) + ")");
    if (units_ != canonical_units(nq, ns))
        throw Error(ErrorCode::InconsistentNetwork, "units are not in canonical layout order");

    const Rational half_h = meta_.h / Rational(2);
    const Rational nsr(static_cast<std::int64_t>(ns));
    const Rational one(1);
    auto off = [](const Edge& e, const std::string& why) {
        return Error(ErrorCode::WeightOffValueSet, "edge " + std::to_string(e.from) + " -> " + std::to_string(e.to) +
                                                       " weight " + e.weight.to_string() + ": " + why);
    };
    auto must_be = [&](const Edge& e, const Rational& expected, const char* what) {
        if (e.weight != expected) throw off(e, std::string("expected ") + what + " = " + expected.to_string());
    };

    // λ and a − h per LTL unit, for the inhibition-bound check.
    std::vector<std::optional<Rational>> lambda(units_.size());
    std::vector<std::optional<Rational>> bias_in(units_.size());

    for (const Edge& e : edges_) {
        if (e.from >= units_.size() || e.to >= units_.size())
            throw Error(ErrorCode::InconsistentNetwork, "edge endpoint out of range");
        const Unit& src = units_[e.from];
        const Unit& dst = units_[e.to];
        const bool dst_ltl = dst.kind == UnitKind::LtlX || dst.kind == UnitKind::LtlY;
        auto structural = [&] {
            return Error(ErrorCode::InconsistentNetwork, std::string("edge ") + to_string(src.kind) + " -> " +
                                                             to_string(dst.kind) + " (" + std::to_string(e.from) +
                                                             " -> " + std::to_string(e.to) + ") is not permitted");
        };

        if ((src.kind == UnitKind::MclX && dst.kind == UnitKind::BslX) ||
            (src.kind == UnitKind::MclY && dst.kind == UnitKind::BslY)) {
            must_be(e, one, "1");
        } else if (src.kind == UnitKind::Bias && dst.kind == UnitKind::BslX) {
            must_be(e, -Rational(static_cast<std::int64_t>(dst.i), static_cast<std::int64_t>(m)), "-xi");
        } else if (src.kind == UnitKind::Bias && dst.kind == UnitKind::BslY) {
            must_be(e, -Rational(static_cast<std::int64_t>(dst.j), static_cast<std::int64_t>(ns)), "-eta");
        } else if ((src.kind == UnitKind::MclX && dst.kind == UnitKind::LtlX) ||
                   (src.kind == UnitKind::MclY && dst.kind == UnitKind::LtlY)) {
            const bool ok = e.weight == one || e.weight == nsr || (src.kind == UnitKind::MclX && e.weight == one / nsr) ||
                            (src.kind == UnitKind::MclY && e.weight == one / nsr);
            if (!ok) throw off(e, "scaling must be one of 1, n_s, 1/n_s");
            lambda[e.to] = e.weight;
        } else if (src.kind == UnitKind::BslX && dst_ltl) {
            if (src.i == dst.i) must_be(e, half_h, "h/2");
            else if (src.i == dst.i + 1) must_be(e, -half_h, "-h/2");
            else throw structural();
        } else if (src.kind == UnitKind::BslY && dst_ltl) {
            if (src.j == dst.j) must_be(e, half_h, "h/2");
            else if (src.j == dst.j + 1) must_be(e, -half_h, "-h/2");
            else throw structural();
        } else if (src.kind == UnitKind::Bias && dst_ltl) {
            bias_in[e.to] = e.weight;
        } else if ((src.kind == UnitKind::LtlX && dst.kind == UnitKind::MclX) ||
                   (src.kind == UnitKind::LtlY && dst.kind == UnitKind::MclY)) {
            must_be(e, one, "1");
        } else {
            throw structural();
        }
    }

    for (std::size_t u = 0; u < units_.size(); ++u) {
        if (units_[u].kind != UnitKind::LtlX && units_[u].kind != UnitKind::LtlY) continue;
        if (!lambda[u]) throw Error(ErrorCode::InconsistentNetwork, "LTL unit " + std::to_string(u) + " has no MCL input");
        // Bias weight is a − h; an absent edge means a = h.
        const Rational a = bias_in[u].value_or(Rational()) + meta_.h;
        if (a + *lambda[u] > half_h)
            throw Error(ErrorCode::WeightOffValueSet,
                        "LTL unit " + std::to_string(u) + " violates h/2 >= a + lambda (a = " + a.to_string() +
                            ", lambda = " + lambda[u]->to_string() + ")");
    }
}

Rational Network::weight(std::size_t from, std::size_t to) const {
    for (const Edge& e : incoming(to))
        if (e.from == from) return e.weight;
    return Rational();
}

std::span<const Edge> Network::incoming(std::size_t to) const {
    return std::span<const Edge>(edges_).subspan(offsets_.at(to), offsets_.at(to + 1) - offsets_.at(to));
}

std::span<const double> Network::incoming_float(std::size_t to) const {
    return std::span<const double>(float_weights_).subspan(offsets_.at(to), offsets_.at(to + 1) - offsets_.at(to));
}

Network build_network(const Nda& n) {
    const TuringMachine& m = n.machine();
    const Partition& p = n.partition();

    Rational max_gain;
    bool first = true;
    for (const Branch& b : n.branches()) {
        for (const Rational& v : {b.a_x + b.lambda_x, b.a_y + b.lambda_y}) {
            if (first || v > max_gain) max_gain = v;
            first = false;
        }
    }
    if (first || max_gain.sign() <= 0)
        throw Error(ErrorCode::DegenerateMachine, "max(a + lambda) must be positive to place the inhibition bias");

    NetworkMeta meta{m.n_states(), m.n_symbols(), Rational(2) * max_gain, m.states(), m.symbols()};
    const Rational& h = meta.h;
    const Rational half_h = h / Rational(2);
    std::vector<Unit> units = canonical_units(m.n_states(), m.n_symbols());

    // Layout helpers mirror Network's accessors, before the network exists.
    const std::size_t cols = p.columns();
    const std::size_t rows = p.rows();
    const std::size_t bias = units.size() - 1;
    auto bsl_x = [&](std::size_t i) { return 2 + i; };
    auto bsl_y = [&](std::size_t j) { return 2 + cols + j; };
    auto ltl_x = [&](std::size_t i, std::size_t j) { return 2 + cols + rows + 2 * (i * rows + j); };

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < cols; ++i) {
        edges.push_back({0, bsl_x(i), Rational(1)});
        edges.push_back({bias, bsl_x(i), -p.x_endpoints()[i]});
    }
    for (std::size_t j = 0; j < rows; ++j) {
        edges.push_back({1, bsl_y(j), Rational(1)});
        edges.push_back({bias, bsl_y(j), -p.y_endpoints()[j]});
    }
    for (std::size_t i = 0; i < cols; ++i) {
        for (std::size_t j = 0; j < rows; ++j) {
            const Branch& b = n.branch({i, j});
            const std::size_t tx = ltl_x(i, j);
            const std::size_t ty = tx + 1;
            for (std::size_t t : {tx, ty}) {
                edges.push_back({bsl_x(i), t, half_h});
                edges.push_back({bsl_y(j), t, half_h});
                // The next BSL unit up the staircase cancels this cell's excitation.
                if (i + 1 < cols) edges.push_back({bsl_x(i + 1), t, -half_h});
                if (j + 1 < rows) edges.push_back({bsl_y(j + 1), t, -half_h});
            }
            edges.push_back({0, tx, b.lambda_x});
            edges.push_back({1, ty, b.lambda_y});
            edges.push_back({bias, tx, b.a_x - h});
            edges.push_back({bias, ty, b.a_y - h});
            edges.push_back({tx, 0, Rational(1)});
            edges.push_back({ty, 1, Rational(1)});
        }
    }
    return Network(std::move(meta), std::move(units), std::move(edges));
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

bool is_zero(const Rational& v) { return v.is_zero(); }
bool is_zero(double v) { return v == 0.0; }

template <typename Scalar>
Scalar heaviside(const Scalar& v) {
    return v < Scalar(0) ? Scalar(0) : Scalar(1);
}

template <typename Scalar>
Scalar ramp(const Scalar& v) {
    return v < Scalar(0) ? Scalar(0) : v;
}

template <typename Scalar>
Scalar weight_at(const Network& net, std::size_t to, std::size_t k) {
    if constexpr (std::is_same_v<Scalar, double>) return net.incoming_float(to)[k];
    else return net.incoming(to)[k].weight;
}

template <typename Scalar>
Scalar to_scalar(const Rational& r) {
    if constexpr (std::is_same_v<Scalar, double>) return r.to_double();
    else return r;
}

// Weighted input of one unit. `bsl_part`, when given, receives the share that
// arrives from branch-selection units.
template <typename Scalar>
Scalar net_input(const Network& net, const std::vector<Scalar>& act, std::size_t to, Scalar* bsl_part = nullptr) {
    Scalar sum{};
    Scalar bsl{};
    const auto in = net.incoming(to);
    for (std::size_t k = 0; k < in.size(); ++k) {
        const Scalar& a = act[in[k].from];
        if (is_zero(a)) continue;
        const UnitKind src = net.units()[in[k].from].kind;
        Scalar contribution = weight_at<Scalar>(net, to, k) * a;
        if (src == UnitKind::BslX || src == UnitKind::BslY) bsl += contribution;
        else sum += contribution;
    }
    if (bsl_part) *bsl_part = bsl;
    return sum + bsl;
}

template <typename Scalar>
NetState<Scalar> step_impl(const Network& net, const NetState<Scalar>& s) {
    NetState<Scalar> next;
    next.activation = s.activation;
    auto& act = next.activation;
    act[net.bias()] = Scalar(1);

    for (std::size_t i = 0; i < net.columns(); ++i) act[net.bsl_x(i)] = heaviside(net_input(net, act, net.bsl_x(i)));
    for (std::size_t j = 0; j < net.rows(); ++j) act[net.bsl_y(j)] = heaviside(net_input(net, act, net.bsl_y(j)));

    const Scalar h = to_scalar<Scalar>(net.h());
    for (std::size_t i = 0; i < net.columns(); ++i) {
        for (std::size_t j = 0; j < net.rows(); ++j) {
            const CellIndex cell{i, j};
            Scalar bsl{};
            act[net.ltl_x(cell)] = ramp(net_input(net, act, net.ltl_x(cell), &bsl));
            act[net.ltl_y(cell)] = ramp(net_input(net, act, net.ltl_y(cell)));
            if (bsl == h) next.selected = cell;
        }
    }

    const Scalar cx = ramp(net_input(net, act, net.mcl_x()));
    const Scalar cy = ramp(net_input(net, act, net.mcl_y()));
    act[net.mcl_x()] = cx;
    act[net.mcl_y()] = cy;
    return next;
}

template <typename Scalar>
NetState<Scalar> initial_impl(const Network& net, const SymbologramPoint& p) {
    NetState<Scalar> s;
    s.activation.assign(net.size(), Scalar(0));
    s.activation[net.mcl_x()] = to_scalar<Scalar>(p.x);
    s.activation[net.mcl_y()] = to_scalar<Scalar>(p.y);
    s.activation[net.bias()] = Scalar(1);
    return s;
}

bool same_point(const Network& net, const ExactState& a, const ExactState& b) {
    return a.activation[net.mcl_x()] == b.activation[net.mcl_x()] &&
           a.activation[net.mcl_y()] == b.activation[net.mcl_y()];
}

bool same_point(const Network& net, const FloatState& a, const FloatState& b) {
    return std::abs(a.activation[net.mcl_x()] - b.activation[net.mcl_x()]) <= kFloatHaltTolerance &&
           std::abs(a.activation[net.mcl_y()] - b.activation[net.mcl_y()]) <= kFloatHaltTolerance;
}

template <typename Scalar>
std::string bsl_pattern(const Network& net, const NetState<Scalar>& s) {
    std::string out;
    for (std::size_t i = 0; i < net.columns(); ++i) out += is_zero(s.activation[net.bsl_x(i)]) ? '0' : '1';
    out += '|';
    for (std::size_t j = 0; j < net.rows(); ++j) out += is_zero(s.activation[net.bsl_y(j)]) ? '0' : '1';
    return out;
}

template <typename Scalar>
NetTrace<Scalar> run_impl(const Network& net, const NetState<Scalar>& s0, std::size_t max_steps) {
    NetTrace<Scalar> trace;
    NetState<Scalar> cur = s0;
    while (true) {
        NetState<Scalar> next = net_step(net, cur);
        NetStepRecord<Scalar> rec;
        rec.c_x = cur.activation[net.mcl_x()];
        rec.c_y = cur.activation[net.mcl_y()];
        rec.active = next.selected;
        rec.bsl_pattern = bsl_pattern(net, next);
        rec.halted = same_point(net, cur, next);
        trace.records.push_back(std::move(rec));
        if (trace.records.back().halted) {
            trace.status = RunStatus::Halted;
            break;
        }
        if (trace.steps() >= max_steps) {
            trace.status = RunStatus::Timeout;
            break;
        }
        cur = std::move(next);
    }
    trace.final_state = std::move(cur);
    return trace;
}

std::string format_scalar(const Rational& v) { return v.to_string(); }
std::string format_scalar(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ExactState initial_state(const Network& net, const SymbologramPoint& p) { return initial_impl<Rational>(net, p); }
FloatState initial_float_state(const Network& net, const SymbologramPoint& p) { return initial_impl<double>(net, p); }

ExactState net_step(const Network& net, const ExactState& s) { return step_impl(net, s); }
FloatState net_step(const Network& net, const FloatState& s) { return step_impl(net, s); }

bool is_halted(const Network& net, const ExactState& s) { return same_point(net, s, net_step(net, s)); }
bool is_halted(const Network& net, const FloatState& s) { return same_point(net, s, net_step(net, s)); }

Rational selection_input(const Network& net, const ExactState& s, const CellIndex& cell) {
    Rational sum;
    for (const Edge& e : net.incoming(net.ltl_x(cell))) {
        const UnitKind k = net.units()[e.from].kind;
        if (k == UnitKind::BslX || k == UnitKind::BslY) sum += e.weight * s.activation[e.from];
    }
    return sum;
}

NetTrace<Rational> run_network(const Network& net, const ExactState& s0, std::size_t max_steps) {
    return run_impl(net, s0, max_steps);
}

NetTrace<double> run_network(const Network& net, const FloatState& s0, std::size_t max_steps) {
    return run_impl(net, s0, max_steps);
}

template <typename Scalar>
std::string trace_csv(const NetTrace<Scalar>& trace) {
    std::ostringstream os;
    os << "step,c_x,c_y,active_cell_i,active_cell_j,halted\n";
    for (std::size_t t = 0; t < trace.records.size(); ++t) {
        const auto& r = trace.records[t];
        os << t << ',' << format_scalar(r.c_x) << ',' << format_scalar(r.c_y) << ',';
        if (r.active) os << r.active->i << ',' << r.active->j;
        else os << ',';
        os << ',' << (r.halted ? 1 : 0) << '\n';
    }
    return os.str();
}

template std::string trace_csv<Rational>(const NetTrace<Rational>&);
template std::string trace_csv<double>(const NetTrace<double>&);

}  // namespace tm2net
