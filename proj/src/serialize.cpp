#include "coarse/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace coarse {

using nlohmann::json;

json space_to_json(const FiniteMetricSpace& s) {
    json j;
    j["n"] = s.size();
    j["scale"] = s.scale;
    if (s.base_point)
        j["base_point"] = *s.base_point;
    else
        j["base_point"] = nullptr;
    j["truncation_radius"] = s.truncation_radius;
    j["labels"] = s.labels;
    // scaled distances, lower-triangular row-major: d(1,0), d(2,0), d(2,1), ...
    std::vector<Dist> dist;
    dist.reserve(s.size() * (s.size() - 1) / 2);
    for (PointId a = 1; a < s.size(); ++a)
        for (PointId b = 0; b < a; ++b) dist.push_back(s.d(a, b));
    j["dist"] = dist;
    if (!s.lattice.empty()) j["lattice"] = s.lattice;
    return j;
}

FiniteMetricSpace space_from_json(const json& j) {
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Dist> dist = j.at("dist").get<std::vector<Dist>>();
    if (dist.size() != n * (n - 1) / 2) throw std::runtime_error("space json: dist size mismatch");
    std::vector<std::uint16_t> tri(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] < 0 || dist[i] > 65535)
            throw std::runtime_error("space json: distance out of storage range");
        tri[i] = static_cast<std::uint16_t>(dist[i]);
    }
    std::optional<PointId> base;
    if (!j.at("base_point").is_null()) base = j.at("base_point").get<PointId>();
    auto s = FiniteMetricSpace::from_triangular(std::move(tri), n, j.at("scale").get<std::int64_t>(),
                                                base, j.at("truncation_radius").get<Dist>());
    s.labels = j.at("labels").get<std::vector<std::string>>();
    if (j.contains("lattice")) s.lattice = j.at("lattice").get<std::vector<std::vector<std::int64_t>>>();
    return s;
}

json combing_to_json(const Combing& c) {
    json j;
    j["base"] = c.base;
    j["horizon"] = c.horizon;
    j["settle"] = c.settle;
    j["table"] = c.table;
    return j;
}

Combing combing_from_json(const json& j, std::shared_ptr<const FiniteMetricSpace> s) {
    Combing c;
    c.space = std::move(s);
    c.base = j.at("base").get<PointId>();
    c.horizon = j.at("horizon").get<int>();
    c.settle = j.at("settle").get<std::vector<int>>();
    c.table = j.at("table").get<std::vector<std::vector<PointId>>>();
    if (c.table.size() != c.space->size() || c.settle.size() != c.space->size())
        throw std::runtime_error("combing json: table size does not match the space");
    return c;
}

static json witness_to_json(const Witness& w) {
    return json{{"kind", w.kind}, {"points", w.points}, {"stages", w.stages}, {"dist", w.dist}};
}

static Witness witness_from_json(const json& j) {
    Witness w;
    w.kind = j.at("kind").get<std::string>();
    w.points = j.at("points").get<std::vector<PointId>>();
    w.stages = j.at("stages").get<std::vector<int>>();
    w.dist = j.at("dist").get<Dist>();
    return w;
}

json audit_to_json(const AuditReport& r) {
    json j;
    j["property"] = r.property;
    j["verdict"] = r.verdict;
    j["collar_excluded"] = r.collar_excluded;
    j["note"] = r.note;
    j["step_table"] = r.step_table;
    j["fellow_table"] = r.fellow_table;
    j["m_table"] = r.m_table;
    j["coh_table"] = r.coh_table;
    json cells = json::array();
    for (const auto& c : r.f_table) cells.push_back({c.r, c.n, c.rho, c.f});
    j["f_table"] = cells;
    json ws = json::array();
    for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
    j["witnesses"] = ws;
    return j;
}

AuditReport audit_from_json(const json& j) {
    AuditReport r;
    r.property = j.at("property").get<std::string>();
    r.verdict = j.at("verdict").get<std::string>();
    r.collar_excluded = j.at("collar_excluded").get<Dist>();
    r.note = j.at("note").get<std::string>();
    r.step_table = j.at("step_table").get<std::vector<std::pair<int, Dist>>>();
    r.fellow_table = j.at("fellow_table").get<std::vector<std::pair<Dist, Dist>>>();
    r.m_table = j.at("m_table").get<std::vector<std::pair<int, Dist>>>();
    r.coh_table = j.at("coh_table").get<std::vector<std::pair<Dist, Dist>>>();
    for (const auto& c : j.at("f_table"))
        r.f_table.push_back({c.at(0).get<Dist>(), c.at(1).get<int>(), c.at(2).get<Dist>(),
                             c.at(3).get<Dist>()});
    for (const auto& w : j.at("witnesses")) r.witnesses.push_back(witness_from_json(w));
    return r;
}

json cohomology_to_json(const CohomologyResult& r) {
    json j;
    j["degrees"] = r.degrees;
    j["betti"] = r.betti;
    j["torsion"] = r.torsion;
    j["top_degree_truncated"] = r.top_degree_truncated;
    return j;
}

json stabilization_to_json(const StabilizationReport& r) {
    json j;
    j["truncations"] = r.truncations;
    j["scales"] = r.scales;
    j["degrees"] = r.degrees;
    json cells = json::array();
    for (const auto& c : r.cells)
        cells.push_back({{"T", c.T}, {"R", c.R}, {"betti", c.betti}});
    j["cells"] = cells;
    j["verdict"] = r.verdict;
    j["pattern_stable"] = r.pattern_stable;
    j["top_nonzero_degree"] = r.top_nonzero_degree;
    return j;
}

json partition_to_json(const ClusterPartition& p) {
    json j;
    j["stage"] = p.stage;
    j["threshold"] = p.threshold;
    j["r_lo"] = p.r_lo;
    j["r_hi"] = p.r_hi;
    j["clusters"] = p.clusters;
    j["representatives"] = p.representatives;
    return j;
}

json nerve_to_json(const NerveGraph& g) {
    json j;
    j["nodes"] = g.nodes;
    j["edges"] = g.edges;
    j["weights"] = g.weights;
    j["node_labels"] = g.node_labels;
    j["edge_threshold"] = g.edge_threshold;
    j["stage"] = g.stage;
    return j;
}

std::string expanding_table_csv(const AuditReport& r) {
    std::ostringstream out;
    out << "r,n,rho,f\n";
    for (const auto& c : r.f_table) out << c.r << "," << c.n << "," << c.rho << "," << c.f << "\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace coarse
