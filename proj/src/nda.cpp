#include "tm2net/nda.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "tm2net/error.hpp"

namespace tm2net {

Partition::Partition(std::size_t n_states, std::size_t n_symbols) : n_states_(n_states), n_symbols_(n_symbols) {
    const auto m = static_cast<std::int64_t>(n_states * n_symbols);
    const auto n = static_cast<std::int64_t>(n_symbols);
    for (std::int64_t i = 0; i <= m; ++i) x_.emplace_back(i, m);
    for (std::int64_t j = 0; j <= n; ++j) y_.emplace_back(j, n);
}

CellIndex Partition::cell_of(const DodTriple& t) const {
    return {t.state.value * n_symbols_ + t.left.value, t.head.value};
}

DodTriple Partition::triple_of(const CellIndex& c) const {
    return {SymbolId{static_cast<std::uint32_t>(c.i % n_symbols_)}, StateId{static_cast<std::uint32_t>(c.i / n_symbols_)},
            SymbolId{static_cast<std::uint32_t>(c.j)}};
}

Partition build_partition(const TuringMachine& m) { return Partition(m.n_states(), m.n_symbols()); }

Branch derive_branch(const TuringMachine& m, const DodTriple& triple) {
    Branch b;
    b.triple = triple;
    b.action = m.delta(triple.state, triple.head);
    if (!b.action) return b;

    const Rational nq(static_cast<std::int64_t>(m.n_states()));
    const Rational ns(static_cast<std::int64_t>(m.n_symbols()));
    const Rational q(triple.state.value);
    const Rational x(triple.left.value);
    const Rational z(triple.head.value);
    const Rational q_next(b.action->next.value);
    const Rational w(b.action->write.value);

    if (b.action->move == Move::Right) {
        // α′: push the written symbol and the new state; β: drop the head symbol.
        b.lambda_x = Rational(1) / ns;
        b.a_x = q_next / nq + w / (nq * ns) - q / (nq * ns);
        b.lambda_y = ns;
        b.a_y = -z;
    } else {
        // α′: pop the state and X, push the new state; β: overwrite the head
        // symbol, then push X in front of it.
        b.lambda_x = ns;
        b.a_x = q_next / nq - ns * q / nq - x / nq;
        b.lambda_y = Rational(1) / ns;
        b.a_y = x / ns + w / (ns * ns) - z / (ns * ns);
    }
    return b;
}

Nda::Nda(const TuringMachine& m) : machine_(m), partition_(build_partition(m)) {
    branches_.resize(partition_.cell_count());
    for (std::size_t i = 0; i < partition_.columns(); ++i)
        for (std::size_t j = 0; j < partition_.rows(); ++j) {
            const CellIndex c{i, j};
            branches_[partition_.flat(c)] = derive_branch(m, partition_.triple_of(c));
        }
}

Nda Nda::with_branch(const CellIndex& c, Branch b) const {
    Nda copy = *this;
    copy.branches_.at(partition_.flat(c)) = std::move(b);
    return copy;
}

Nda build_nda(const TuringMachine& m) { return Nda(m); }

namespace {

std::size_t interval_of(const std::vector<Rational>& endpoints, const Rational& v, const char* axis) {
    if (v.sign() < 0 || v >= endpoints.back())
        throw Error(ErrorCode::OutOfRange, std::string(axis) + " = " + v.to_string() + " is outside [0,1)");
    // Left-closed intervals: the last endpoint <= v names the interval.
    auto it = std::upper_bound(endpoints.begin(), endpoints.end(), v);
    return static_cast<std::size_t>(it - endpoints.begin()) - 1;
}

}  // namespace

CellIndex theta(const Partition& p, const SymbologramPoint& pt) {
    return {interval_of(p.x_endpoints(), pt.x, "x"), interval_of(p.y_endpoints(), pt.y, "y")};
}

SymbologramPoint nda_step(const Nda& n, const SymbologramPoint& pt) {
    return n.branch(theta(n.partition(), pt)).apply(pt);
}

NdaTrace run_nda(const Nda& n, SymbologramPoint p0, std::size_t max_steps) {
    NdaTrace trace;
    trace.cells.push_back(theta(n.partition(), p0));
    trace.points.push_back(std::move(p0));
    while (true) {
        SymbologramPoint next = n.branch(trace.cells.back()).apply(trace.points.back());
        if (next == trace.points.back()) {
            trace.status = RunStatus::Halted;
            break;
        }
        if (trace.steps() >= max_steps) {
            trace.status = RunStatus::Timeout;
            break;
        }
        trace.cells.push_back(theta(n.partition(), next));
        trace.points.push_back(std::move(next));
    }
    return trace;
}

namespace {

nlohmann::json rational_list(const std::vector<Rational>& v) {
    auto out = nlohmann::json::array();
    for (const auto& r : v) out.push_back(r.to_string());
    return out;
}

std::string action_text(const TuringMachine& m, const Branch& b) {
    if (!b.action) return "halt";
    return m.state_name(b.action->next) + " " + m.symbol_name(b.action->write) + " " +
           (b.action->move == Move::Left ? "L" : "R");
}

int dot_shift(const Branch& b) {
    if (!b.action) return 0;
    return b.action->move == Move::Left ? -1 : 1;
}

}  // namespace

std::string export_nda_json(const Nda& n) {
    const TuringMachine& m = n.machine();
    const Partition& p = n.partition();
    nlohmann::json doc;
    doc["format"] = "tm2net-nda/1";
    doc["cell_order"] = "i = gamma_q(q)*n_s + gamma_s(X), j = gamma_s(Z); 0-based; intervals left-closed";
    doc["n_q"] = m.n_states();
    doc["n_s"] = m.n_symbols();
    doc["states"] = m.states();
    doc["symbols"] = m.symbols();
    doc["x_endpoints"] = rational_list(p.x_endpoints());
    doc["y_endpoints"] = rational_list(p.y_endpoints());
    auto cells = nlohmann::json::array();
    for (std::size_t i = 0; i < p.columns(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) {
            const Branch& b = n.branch({i, j});
            cells.push_back({
                {"i", i},
                {"j", j},
                {"triple",
                 {{"X", m.symbol_name(b.triple.left)}, {"q", m.state_name(b.triple.state)},
                  {"Z", m.symbol_name(b.triple.head)}}},
                {"action", action_text(m, b)},
                {"F", dot_shift(b)},
                {"a_x", b.a_x.to_string()},
                {"a_y", b.a_y.to_string()},
                {"lambda_x", b.lambda_x.to_string()},
                {"lambda_y", b.lambda_y.to_string()},
            });
        }
    doc["cells"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string export_nda_csv(const Nda& n) {
    const TuringMachine& m = n.machine();
    const Partition& p = n.partition();
    std::ostringstream os;
    os << "i,j,X,q,Z,F,a_x,a_y,lambda_x,lambda_y\n";
    for (std::size_t i = 0; i < p.columns(); ++i)
        for (std::size_t j = 0; j < p.rows(); ++j) {
            const Branch& b = n.branch({i, j});
            os << i << ',' << j << ',' << m.symbol_name(b.triple.left) << ',' << m.state_name(b.triple.state) << ','
               << m.symbol_name(b.triple.head) << ',' << dot_shift(b) << ',' << b.a_x << ',' << b.a_y << ','
               << b.lambda_x << ',' << b.lambda_y << '\n';
        }
    return os.str();
}

std::string orbit_csv(const NdaTrace& trace) {
    std::ostringstream os;
    os << "step,x,y,cell_i,cell_j\n";
    for (std::size_t t = 0; t < trace.points.size(); ++t)
        os << t << ',' << trace.points[t].x << ',' << trace.points[t].y << ',' << trace.cells[t].i << ','
           << trace.cells[t].j << '\n';
    return os.str();
}

}  // namespace tm2net
