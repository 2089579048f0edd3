#include <sstream>

#include "json.hpp"
#include "tm2net/error.hpp"
#include "tm2net/network.hpp"

namespace tm2net {

namespace {

using nlohmann::json;

UnitKind kind_from_string(const std::string& s) {
    for (UnitKind k : {UnitKind::MclX, UnitKind::MclY, UnitKind::BslX, UnitKind::BslY, UnitKind::LtlX, UnitKind::LtlY,
                       UnitKind::Bias})
        if (s == to_string(k)) return k;
    throw Error(ErrorCode::MalformedDocument, "unknown unit kind '" + s + "'");
}

Activation activation_from_string(const std::string& s) {
    for (Activation a : {Activation::Heaviside, Activation::Ramp, Activation::ConstantOne})
        if (s == to_string(a)) return a;
    throw Error(ErrorCode::MalformedDocument, "unknown activation '" + s + "'");
}

json unit_params(const Network& net, const Unit& u) {
    switch (u.kind) {
        case UnitKind::BslX:
            return {{"i", u.i}, {"threshold", Rational(static_cast<std::int64_t>(u.i),
                                                       static_cast<std::int64_t>(net.columns())).to_string()}};
        case UnitKind::BslY:
            return {{"j", u.j}, {"threshold", Rational(static_cast<std::int64_t>(u.j),
                                                       static_cast<std::int64_t>(net.rows())).to_string()}};
        case UnitKind::LtlX:
        case UnitKind::LtlY:
            return {{"i", u.i}, {"j", u.j}};
        default:
            return json::object();
    }
}

template <typename T>
T field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw Error(ErrorCode::MalformedDocument, std::string("missing field '") + key + "'");
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::MalformedDocument, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

std::string export_network(const Network& net) {
    const NetworkMeta& meta = net.meta();
    json doc;
    doc["format"] = "tm2net-network/1";
    doc["meta"] = {{"n_q", meta.n_states}, {"n_s", meta.n_symbols}, {"h", meta.h.to_string()},
                   {"states", meta.states},  {"symbols", meta.symbols}};
    json units = json::array();
    for (std::size_t id = 0; id < net.size(); ++id) {
        const Unit& u = net.units()[id];
        units.push_back({{"id", id}, {"kind", to_string(u.kind)}, {"activation", to_string(u.activation)},
                         {"params", unit_params(net, u)}});
    }
    doc["units"] = std::move(units);
    json weights = json::array();
    for (const Edge& e : net.edges())
        weights.push_back({{"from", e.from}, {"to", e.to}, {"value", e.weight.to_string()}});
    doc["weights"] = std::move(weights);
    return doc.dump(1) + "\n";
}

Network import_network(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::MalformedDocument, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::MalformedDocument, "network document must be a JSON object");

    const json meta_doc = field<json>(doc, "meta");
    NetworkMeta meta;
    meta.n_states = field<std::size_t>(meta_doc, "n_q");
    meta.n_symbols = field<std::size_t>(meta_doc, "n_s");
    meta.h = Rational::parse(field<std::string>(meta_doc, "h"));
    meta.states = field<std::vector<std::string>>(meta_doc, "states");
    meta.symbols = field<std::vector<std::string>>(meta_doc, "symbols");

    const json unit_docs = field<json>(doc, "units");
    if (!unit_docs.is_array()) throw Error(ErrorCode::MalformedDocument, "'units' must be an array");
    std::vector<Unit> units(unit_docs.size());
    std::vector<bool> seen(unit_docs.size(), false);
    for (const json& ud : unit_docs) {
        const auto id = field<std::size_t>(ud, "id");
        if (id >= units.size() || seen[id])
            throw Error(ErrorCode::MalformedDocument, "unit ids must be dense and unique, got " + std::to_string(id));
        seen[id] = true;
        Unit u;
        u.kind = kind_from_string(field<std::string>(ud, "kind"));
        u.activation = activation_from_string(field<std::string>(ud, "activation"));
        const json params = ud.value("params", json::object());
        if (u.kind == UnitKind::BslX) u.i = field<std::size_t>(params, "i");
        if (u.kind == UnitKind::BslY) u.j = field<std::size_t>(params, "j");
        if (u.kind == UnitKind::LtlX || u.kind == UnitKind::LtlY) {
            u.i = field<std::size_t>(params, "i");
            u.j = field<std::size_t>(params, "j");
        }
        units[id] = u;
    }

    const json weight_docs = field<json>(doc, "weights");
    if (!weight_docs.is_array()) throw Error(ErrorCode::MalformedDocument, "'weights' must be an array");
    std::vector<Edge> edges;
    edges.reserve(weight_docs.size());
    for (const json& wd : weight_docs)
        edges.push_back({field<std::size_t>(wd, "from"), field<std::size_t>(wd, "to"),
                         Rational::parse(field<std::string>(wd, "value"))});

    Network net(std::move(meta), std::move(units), std::move(edges));
    // Stated thresholds must agree with the bias weights they describe.
    for (const json& ud : unit_docs) {
        const json params = ud.value("params", json::object());
        if (!params.contains("threshold")) continue;
        const auto id = ud.at("id").get<std::size_t>();
        const Rational stated = Rational::parse(field<std::string>(params, "threshold"));
        if (stated != -net.weight(net.bias(), id))
            throw Error(ErrorCode::InconsistentNetwork, "unit " + std::to_string(id) + " threshold " +
                                                            stated.to_string() + " disagrees with its bias weight");
    }
    return net;
}

std::string export_weights_csv(const Network& net) {
    std::ostringstream os;
    os << "from,to,value\n";
    for (const Edge& e : net.edges()) os << e.from << ',' << e.to << ',' << e.weight << '\n';
    return os.str();
}

}  // namespace tm2net
