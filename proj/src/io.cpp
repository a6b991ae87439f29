#include "stepkernel/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "stepkernel/tree.hpp"

namespace stepkernel {

double jround(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

namespace {

// Exact rationals come in as strings ("3/2") or JSON integers; anything
// floating-point is ambiguous and rejected.
Rat rat_from_json(const nlohmann::json& v, const char* what) {
    if (v.is_string()) return rat_from_string(v.get<std::string>());
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<long long>()));
    throw std::invalid_argument(std::string(what) +
                                " must be an exact rational string or integer");
}

}  // namespace

StepKernel ParsedKernel::kernel() const {
    if (!symmetric)
        throw std::invalid_argument("this operation needs a symmetric kernel");
    return StepKernel(akernel);
}

ParsedKernel parse_kernel_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("kernel file must be a JSON object");
    if (!j.contains("types") || !j["types"].is_array() || j["types"].empty())
        throw std::invalid_argument("kernel file needs a non-empty \"types\" array");
    if (!j.contains("w") || !j["w"].is_array())
        throw std::invalid_argument("kernel file needs a \"w\" matrix");

    const auto& types = j["types"];
    const int n_raw = static_cast<int>(types.size());
    std::vector<Rat> mu;
    std::vector<std::string> labels;
    bool any_label = false;
    for (const auto& t : types) {
        if (!t.is_object() || !t.contains("mass"))
            throw std::invalid_argument("each type needs a \"mass\"");
        mu.push_back(rat_from_json(t["mass"], "type mass"));
        if (t.contains("label")) {
            if (!t["label"].is_string()) throw std::invalid_argument("labels must be strings");
            labels.push_back(t["label"].get<std::string>());
            any_label = true;
        } else {
            labels.emplace_back();
        }
    }

    const auto& wj = j["w"];
    if (static_cast<int>(wj.size()) != n_raw)
        throw std::invalid_argument("\"w\" must be a square matrix matching \"types\"");
    RatMatrix w(n_raw);
    for (int i = 0; i < n_raw; ++i) {
        if (!wj[i].is_array() || static_cast<int>(wj[i].size()) != n_raw)
            throw std::invalid_argument("\"w\" must be a square matrix matching \"types\"");
        for (const auto& e : wj[i]) w[i].push_back(rat_from_json(e, "matrix entry"));
    }

    bool symmetric = true;
    if (j.contains("symmetric")) {
        if (!j["symmetric"].is_boolean())
            throw std::invalid_argument("\"symmetric\" must be a boolean");
        symmetric = j["symmetric"].get<bool>();
    }

    // Zero-mass types carry no probability and are dropped up front; the
    // remaining masses must be positive and sum to one.
    std::vector<int> keep;
    for (int i = 0; i < n_raw; ++i) {
        if (mu[i] < 0) throw std::invalid_argument("type masses must be nonnegative");
        if (mu[i] != 0) keep.push_back(i);
    }
    if (keep.empty()) throw std::invalid_argument("all types have zero mass");

    std::vector<Rat> mu_kept;
    RatMatrix w_kept(keep.size());
    std::vector<std::string> labels_kept;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        mu_kept.push_back(mu[keep[a]]);
        for (int b : keep) w_kept[a].push_back(w[keep[a]][b]);
        if (any_label) labels_kept.push_back(labels[keep[a]]);
    }

    ParsedKernel out{StepAkernel(std::move(mu_kept), std::move(w_kept), std::move(labels_kept)),
                     symmetric};
    if (symmetric && !out.akernel.is_symmetric())
        throw std::invalid_argument("kernel declared symmetric but w is not");
    return out;
}

ParsedKernel load_kernel_file(const std::string& path) {
    return parse_kernel_json(load_json_file(path));
}

nlohmann::json kernel_to_json(const StepAkernel& A, bool symmetric) {
    nlohmann::json types = nlohmann::json::array();
    for (int i = 0; i < A.n(); ++i) {
        nlohmann::json t;
        t["mass"] = rat_to_string(A.mu[i]);
        if (!A.labels.empty()) t["label"] = A.labels[i];
        types.push_back(t);
    }
    nlohmann::json w = nlohmann::json::array();
    for (int i = 0; i < A.n(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jx = 0; jx < A.n(); ++jx) row.push_back(rat_to_string(A.w[i][jx]));
        w.push_back(row);
    }
    return {{"types", types}, {"w", w}, {"symmetric", symmetric}};
}

Graph parse_graph_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("graph file needs an integer \"n\"");
    int n = j["n"].get<int>();
    std::vector<std::pair<int, int>> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw std::invalid_argument("\"edges\" must be an array");
        for (const auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
                !e[1].is_number_integer())
                throw std::invalid_argument("each edge must be a pair of vertex indices");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return graph_from_edges(n, edges);
}

Graph load_graph_file(const std::string& path) {
    return parse_graph_json(load_json_file(path));
}

nlohmann::json graph_to_json(const Graph& G) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [u, v] : G.edges) edges.push_back(nlohmann::json::array({u, v}));
    return {{"n", G.n}, {"edges", edges}};
}

nlohmann::json ball_to_json(const BallDistribution& d) {
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [code, p] : d.entries) entries[code] = jround(p);
    return {{"depth", d.depth}, {"entries", entries}, {"residual", jround(d.residual)}};
}

BallDistribution parse_ball_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("depth") || !j.contains("entries"))
        throw std::invalid_argument("ball file needs \"depth\" and \"entries\"");
    BallDistribution d;
    d.depth = j["depth"].get<int>();
    for (const auto& [code, p] : j["entries"].items()) {
        RootedTree::parse(code);  // validates the code
        d.entries[code] = p.get<double>();
    }
    d.residual = j.value("residual", 0.0);
    return d;
}

}  // namespace stepkernel
